use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::atlas::{JumpCounts, StratumAtlas, StratumSummary};
use crate::AtlasError;

/// Bumped whenever the record layout changes; cached records with another
/// version are ignored.
pub const SCHEMA_VERSION: u32 = 1;

/// Serializable form of a [`StratumAtlas`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AtlasRecord {
    pub schema_version: u32,
    pub n: u32,
    pub strata_counts: Vec<u64>,
    pub jump_counts: JumpCounts,
    pub level_edge_matrix: Vec<Vec<u64>>,
    pub per_stratum: Vec<StratumSummary>,
    /// Seconds since the Unix epoch. Not part of the content hash.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub generated_at: Option<u64>,
}

impl AtlasRecord {
    pub fn from_atlas(atlas: &StratumAtlas) -> Self {
        Self {
            schema_version: SCHEMA_VERSION,
            n: atlas.n,
            strata_counts: atlas.strata_counts.clone(),
            jump_counts: atlas.jump_counts,
            level_edge_matrix: atlas.level_edge_matrix.clone(),
            per_stratum: atlas.per_stratum.clone(),
            generated_at: None,
        }
    }

    pub fn into_atlas(self) -> StratumAtlas {
        StratumAtlas {
            n: self.n,
            strata_counts: self.strata_counts,
            jump_counts: self.jump_counts,
            level_edge_matrix: self.level_edge_matrix,
            per_stratum: self.per_stratum,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("record serializes")
    }

    pub fn from_json(s: &str) -> Result<Self, AtlasError> {
        serde_json::from_str(s).map_err(|e| AtlasError::Parse(e.to_string()))
    }

    /// SHA-256 over the canonical JSON encoding with the timestamp removed.
    pub fn content_hash(&self) -> String {
        let canonical = AtlasRecord {
            generated_at: None,
            ..self.clone()
        };
        let bytes = serde_json::to_vec(&canonical).expect("record serializes");
        Sha256::digest(&bytes)
            .iter()
            .map(|b| format!("{b:02x}"))
            .collect()
    }
}

impl From<&StratumAtlas> for AtlasRecord {
    fn from(atlas: &StratumAtlas) -> Self {
        Self::from_atlas(atlas)
    }
}
