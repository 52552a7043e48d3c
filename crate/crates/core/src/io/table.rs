//! Integer tables and their three text encodings.
//!
//! CSV has a header row, comma separators and no quoting. JSON is an object
//! with `columns` and `rows`. Markdown is a pipe table with right-aligned
//! columns. All three are byte-deterministic.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::atlas::StratumAtlas;
use crate::partition::rho;
use crate::AtlasError;

/// The components table never has fewer stratum columns than this.
pub const MIN_COMPONENT_COLUMNS: u32 = 6;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Csv,
    Json,
    Md,
}

impl FromStr for Format {
    type Err = AtlasError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "csv" => Ok(Format::Csv),
            "json" => Ok(Format::Json),
            "md" | "markdown" => Ok(Format::Md),
            other => Err(AtlasError::Parse(format!("unknown format {other:?}"))),
        }
    }
}

impl fmt::Display for Format {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Format::Csv => "csv",
            Format::Json => "json",
            Format::Md => "md",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Table {
    pub columns: Vec<String>,
    pub rows: Vec<Vec<u64>>,
}

impl Table {
    pub fn new(columns: Vec<String>) -> Self {
        Self {
            columns,
            rows: Vec::new(),
        }
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Csv => self.to_csv(),
            Format::Json => self.to_json(),
            Format::Md => self.to_markdown(),
        }
    }

    pub fn to_csv(&self) -> String {
        let mut w = csv::WriterBuilder::new()
            .quote_style(csv::QuoteStyle::Never)
            .from_writer(Vec::new());
        w.write_record(&self.columns).expect("in-memory write");
        for row in &self.rows {
            w.write_record(row.iter().map(u64::to_string))
                .expect("in-memory write");
        }
        String::from_utf8(w.into_inner().expect("in-memory flush")).expect("ascii output")
    }

    pub fn from_csv(text: &str) -> Result<Self, AtlasError> {
        let parse_err = |e: csv::Error| AtlasError::Parse(e.to_string());
        let mut r = csv::ReaderBuilder::new()
            .has_headers(true)
            .from_reader(text.as_bytes());
        let columns = r
            .headers()
            .map_err(parse_err)?
            .iter()
            .map(str::to_string)
            .collect();
        let mut rows = Vec::new();
        for rec in r.records() {
            let rec = rec.map_err(parse_err)?;
            let row = rec
                .iter()
                .map(|f| {
                    f.parse::<u64>()
                        .map_err(|e| AtlasError::Parse(format!("{f:?}: {e}")))
                })
                .collect::<Result<Vec<_>, _>>()?;
            rows.push(row);
        }
        Ok(Self { columns, rows })
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("table serializes");
        s.push('\n');
        s
    }

    pub fn from_json(text: &str) -> Result<Self, AtlasError> {
        serde_json::from_str(text).map_err(|e| AtlasError::Parse(e.to_string()))
    }

    pub fn to_markdown(&self) -> String {
        let mut s = String::new();
        s.push_str(&format!("| {} |\n", self.columns.join(" | ")));
        let rule: Vec<&str> = self.columns.iter().map(|_| "---:").collect();
        s.push_str(&format!("|{}|\n", rule.join("|")));
        for row in &self.rows {
            let cells: Vec<String> = row.iter().map(u64::to_string).collect();
            s.push_str(&format!("| {} |\n", cells.join(" | ")));
        }
        s
    }

    /// Values of the named column, top to bottom.
    pub fn column(&self, name: &str) -> Option<Vec<u64>> {
        let idx = self.columns.iter().position(|c| c == name)?;
        Some(self.rows.iter().map(|r| r[idx]).collect())
    }
}

fn max_rho(atlases: &[StratumAtlas]) -> u32 {
    atlases.iter().map(|a| rho(a.n)).max().unwrap_or(0)
}

/// `n, a1, ..., aR` with `R = ρ(max n)`; absent strata are 0.
pub fn strata_table(atlases: &[StratumAtlas]) -> Table {
    let width = max_rho(atlases);
    let mut columns = vec!["n".to_string()];
    columns.extend((1..=width).map(|r| format!("a{r}")));
    let mut t = Table::new(columns);
    for a in atlases {
        let mut row = vec![u64::from(a.n)];
        row.extend((1..=width).map(|r| a.stratum_count(r)));
        t.rows.push(row);
    }
    t
}

pub fn jumps_table(atlases: &[StratumAtlas]) -> Table {
    let mut t = Table::new(
        ["n", "j0", "j1", "j2", "edges"]
            .map(String::from)
            .to_vec(),
    );
    for a in atlases {
        let j = a.jump_counts;
        t.rows.push(vec![u64::from(a.n), j.j0, j.j1, j.j2, j.edges]);
    }
    t
}

/// The symmetric level-edge matrix with a leading `r` column.
pub fn level_matrix_table(atlas: &StratumAtlas) -> Table {
    let levels = atlas.rho();
    let mut columns = vec!["r".to_string()];
    columns.extend((1..=levels).map(|s| s.to_string()));
    let mut t = Table::new(columns);
    for r in 1..=levels {
        let mut row = vec![u64::from(r)];
        row.extend((1..=levels).map(|s| atlas.level_edges(r, s)));
        t.rows.push(row);
    }
    t
}

/// `n, c1, ..., c6` (more columns only if some `ρ(n) > 6`).
pub fn components_table(atlases: &[StratumAtlas]) -> Table {
    let width = max_rho(atlases).max(MIN_COMPONENT_COLUMNS);
    let mut columns = vec!["n".to_string()];
    columns.extend((1..=width).map(|r| format!("c{r}")));
    let mut t = Table::new(columns);
    for a in atlases {
        let mut row = vec![u64::from(a.n)];
        row.extend((1..=width).map(|r| a.components(r)));
        t.rows.push(row);
    }
    t
}

pub fn summary_table(atlas: &StratumAtlas) -> Table {
    let mut t = Table::new(
        ["r", "vertices", "internal_edges", "components", "min_deg", "max_deg"]
            .map(String::from)
            .to_vec(),
    );
    for s in &atlas.per_stratum {
        t.rows.push(vec![
            u64::from(s.r),
            s.vertices,
            s.internal_edges,
            s.components,
            s.min_degree,
            s.max_degree,
        ]);
    }
    t
}
