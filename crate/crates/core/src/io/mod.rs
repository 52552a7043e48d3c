//! Deterministic serialization of atlas results: tables (CSV, JSON,
//! Markdown), versioned JSON records and Graphviz DOT.

pub mod dot;
pub mod record;
pub mod table;

pub use dot::{to_dot, ColorBy};
pub use record::{AtlasRecord, SCHEMA_VERSION};
pub use table::{
    components_table, jumps_table, level_matrix_table, strata_table, summary_table, Format,
    Table,
};
