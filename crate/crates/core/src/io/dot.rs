//! Graphviz export of a transfer graph.

use std::fmt::Write;
use std::str::FromStr;

use crate::transfer::PartitionGraph;
use crate::AtlasError;

const LEVEL_COLORS: [&str; 8] = [
    "#e41a1c", "#377eb8", "#4daf4a", "#984ea3", "#ff7f00", "#ffff33", "#a65628", "#f781bf",
];
const JUMP_COLORS: [&str; 3] = ["#999999", "#1f78b4", "#e31a1c"];

/// What the styling of the exported graph encodes.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum ColorBy {
    /// Vertices filled and clustered by support size.
    #[default]
    Sigma,
    /// Additionally, edges colored and labeled by `|Δσ|`.
    Jump,
}

impl FromStr for ColorBy {
    type Err = AtlasError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "sigma" => Ok(ColorBy::Sigma),
            "jump" => Ok(ColorBy::Jump),
            other => Err(AtlasError::Parse(format!("unknown color mode {other:?}"))),
        }
    }
}

/// Undirected DOT graph; vertex ids are part strings such as `4+3+1`.
pub fn to_dot(graph: &PartitionGraph, color_by: ColorBy) -> String {
    let mut s = String::new();
    let sigma = graph.support_sizes();
    let levels = sigma.iter().copied().max().unwrap_or(0);
    writeln!(s, "graph G{} {{", graph.n()).unwrap();
    writeln!(s, "  node [shape=box, style=filled, fontname=\"Helvetica\"];").unwrap();
    for r in 1..=levels {
        writeln!(s, "  subgraph cluster_sigma_{r} {{").unwrap();
        writeln!(s, "    label=\"support {r}\";").unwrap();
        let color = LEVEL_COLORS[(r as usize - 1) % LEVEL_COLORS.len()];
        for (i, v) in graph.vertices().iter().enumerate() {
            if sigma[i] == r {
                writeln!(
                    s,
                    "    \"{}\" [sigma={r}, fillcolor=\"{color}\"];",
                    v.to_plus_string()
                )
                .unwrap();
            }
        }
        writeln!(s, "  }}").unwrap();
    }
    let verts = graph.vertices();
    for e in graph.edges() {
        let (a, b) = (verts[e.u].to_plus_string(), verts[e.v].to_plus_string());
        match color_by {
            ColorBy::Sigma => writeln!(s, "  \"{a}\" -- \"{b}\";").unwrap(),
            ColorBy::Jump => writeln!(
                s,
                "  \"{a}\" -- \"{b}\" [label=\"{}\", color=\"{}\"];",
                e.jump_magnitude, JUMP_COLORS[e.jump_magnitude as usize]
            )
            .unwrap(),
        }
    }
    s.push_str("}\n");
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn two_vertex_graph() {
        let g = PartitionGraph::build(2).unwrap();
        let dot = to_dot(&g, ColorBy::Jump);
        assert!(dot.starts_with("graph G2 {"));
        assert!(dot.contains("\"1+1\" [sigma=1"));
        assert!(dot.contains("\"2\" -- \"1+1\" [label=\"0\""));
        assert_eq!(dot.matches(" -- ").count(), 1);
        assert!(!to_dot(&g, ColorBy::Sigma).contains("label=\"0\""));
    }
}
