//! Browser bindings for the support atlas demo page in `www/`.
//!
//! Every export returns a JSON string so the page can stay plain JavaScript.

use serde_json::{json, Value};
use wasm_bindgen::prelude::*;

use support_atlas::io::{summary_table, AtlasRecord};
use support_atlas::{
    apply_transfer, degree_formula, neighbors, support_jump_formula, valid_moves, Partition,
    PartitionGraph, StratumAtlas,
};

/// Largest `n` the page may request statistics for.
pub const MAX_ATLAS_N: u32 = 30;
/// Largest `n` whose full graph is shipped to the page for drawing.
pub const MAX_GRAPH_N: u32 = 14;

fn err(msg: impl ToString) -> JsValue {
    JsValue::from_str(&msg.to_string())
}

/// Strata, jump counts, level-edge matrix and per-stratum summary for `n`.
#[wasm_bindgen]
pub fn atlas_json(n: u32) -> Result<String, JsValue> {
    atlas_value(n).map(|v| v.to_string()).map_err(err)
}

/// Vertices (with support size and degree) and edges (with jump magnitude)
/// of the transfer graph on partitions of `n`.
#[wasm_bindgen]
pub fn graph_json(n: u32) -> Result<String, JsValue> {
    graph_value(n).map(|v| v.to_string()).map_err(err)
}

/// Support data, closed-form degree and every transfer out of one partition,
/// written like `4+2+2+1`.
#[wasm_bindgen]
pub fn inspect_json(partition: &str) -> Result<String, JsValue> {
    inspect_value(partition).map(|v| v.to_string()).map_err(err)
}

fn atlas_value(n: u32) -> Result<Value, String> {
    if n == 0 || n > MAX_ATLAS_N {
        return Err(format!("n must be in 1..={MAX_ATLAS_N}"));
    }
    let atlas = StratumAtlas::compute(n).map_err(|e| e.to_string())?;
    let summary = summary_table(&atlas);
    let mut v = serde_json::to_value(AtlasRecord::from_atlas(&atlas)).map_err(|e| e.to_string())?;
    v["summary_table"] = serde_json::to_value(summary).map_err(|e| e.to_string())?;
    v["level_pairs"] = json!(atlas.level_graph().adjacent_pairs);
    Ok(v)
}

fn graph_value(n: u32) -> Result<Value, String> {
    if n == 0 || n > MAX_GRAPH_N {
        return Err(format!("n must be in 1..={MAX_GRAPH_N} for drawing"));
    }
    let g = PartitionGraph::build(n).map_err(|e| e.to_string())?;
    let nodes: Vec<Value> = g
        .vertices()
        .iter()
        .enumerate()
        .map(|(i, p)| {
            json!({
                "label": p.to_plus_string(),
                "sigma": g.support_size(i),
                "degree": g.degree(i),
            })
        })
        .collect();
    let edges: Vec<Value> = g
        .edges()
        .iter()
        .map(|e| json!([e.u, e.v, e.jump_magnitude]))
        .collect();
    Ok(json!({ "n": n, "nodes": nodes, "edges": edges }))
}

fn inspect_value(text: &str) -> Result<Value, String> {
    let lambda: Partition = text.parse().map_err(|e: support_atlas::AtlasError| e.to_string())?;
    let profile = lambda.support_profile().map_err(|e| e.to_string())?;
    let moves: Vec<Value> = valid_moves(&lambda)
        .into_iter()
        .map(|mv| {
            let mu = apply_transfer(&lambda, mv).expect("generated moves are valid");
            let jump = support_jump_formula(&lambda, mv).expect("generated moves are valid");
            json!({
                "from": mv.source,
                "to": mv.target,
                "result": mu.to_plus_string(),
                "jump": jump,
            })
        })
        .collect();
    Ok(json!({
        "partition": lambda.to_plus_string(),
        "n": lambda.total(),
        "profile": profile,
        "is_staircase": lambda.is_staircase(),
        "conjugate": lambda.conjugate().to_plus_string(),
        "degree_formula": degree_formula(&lambda),
        "neighbor_count": neighbors(&lambda).len(),
        "moves": moves,
    }))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn atlas_payload() {
        let v = atlas_value(6).unwrap();
        assert_eq!(v["strata_counts"], json!([4, 6, 1]));
        assert_eq!(v["jump_counts"]["edges"], 17);
        assert_eq!(v["level_pairs"], json!([[1, 2], [1, 3], [2, 3]]));
        assert!(atlas_value(0).is_err());
        assert!(atlas_value(MAX_ATLAS_N + 1).is_err());
    }

    #[test]
    fn graph_payload() {
        let v = graph_value(6).unwrap();
        assert_eq!(v["nodes"].as_array().unwrap().len(), 11);
        assert_eq!(v["edges"].as_array().unwrap().len(), 17);
        assert_eq!(v["nodes"][0], json!({"label": "6", "sigma": 1, "degree": 1}));
        assert!(graph_value(MAX_GRAPH_N + 1).is_err());
    }

    #[test]
    fn inspect_payload() {
        let v = inspect_value("3+2+1").unwrap();
        assert_eq!(v["degree_formula"], 6);
        assert_eq!(v["neighbor_count"], 6);
        assert_eq!(v["is_staircase"], true);
        let minus_two = v["moves"]
            .as_array()
            .unwrap()
            .iter()
            .find(|m| m["result"] == "3+3")
            .unwrap();
        assert_eq!(minus_two["jump"], -2);
        assert!(inspect_value("3+x").is_err());
        assert!(inspect_value("").is_err());
    }
}
