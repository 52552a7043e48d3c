//! Aggregate support statistics over a transfer graph.
//!
//! [`StratumAtlas`] collects, for one `n`, the stratum sizes `a_{n,r}`, the
//! edge counts by jump magnitude, the level-edge matrix and a per-stratum
//! summary (size, internal edges, components, degree range).

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::partition::{enumerate_partitions, rho, triangular};
use crate::transfer::PartitionGraph;
use crate::union_find::DisjointSet;
use crate::AtlasError;

/// Edge counts by `|Δσ|`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct JumpCounts {
    pub j0: u64,
    pub j1: u64,
    pub j2: u64,
    pub edges: u64,
}

impl JumpCounts {
    pub fn by_magnitude(&self, delta: usize) -> u64 {
        match delta {
            0 => self.j0,
            1 => self.j1,
            2 => self.j2,
            _ => 0,
        }
    }
}

/// Statistics for one support stratum `V_{n,r}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StratumSummary {
    pub r: u32,
    pub vertices: u64,
    pub internal_edges: u64,
    pub components: u64,
    /// Component sizes of the induced subgraph, largest first.
    pub component_sizes: Vec<u64>,
    /// Full-graph degrees over the stratum.
    pub min_degree: u64,
    pub max_degree: u64,
}

/// Connected components of one induced stratum subgraph.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComponentReport {
    pub n: u32,
    pub r: u32,
    pub components: u64,
    pub component_sizes: Vec<u64>,
}

/// All per-`n` support statistics.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StratumAtlas {
    pub n: u32,
    /// `a_{n,r}` for `r = 1..=ρ(n)`.
    pub strata_counts: Vec<u64>,
    pub jump_counts: JumpCounts,
    /// Symmetric `ρ(n) × ρ(n)` matrix; entry `[r-1][s-1]` counts edges between
    /// levels `r` and `s`, each undirected edge once.
    pub level_edge_matrix: Vec<Vec<u64>>,
    pub per_stratum: Vec<StratumSummary>,
}

impl StratumAtlas {
    pub fn compute(n: u32) -> Result<Self, AtlasError> {
        Ok(Self::from_graph(&PartitionGraph::build(n)?))
    }

    pub fn from_graph(graph: &PartitionGraph) -> Self {
        let n = graph.n();
        let levels = rho(n) as usize;
        let sigma = graph.support_sizes();

        let mut strata_counts = vec![0u64; levels];
        for &s in sigma {
            strata_counts[s as usize - 1] += 1;
        }

        let mut jump_counts = JumpCounts::default();
        let mut matrix = vec![vec![0u64; levels]; levels];
        for e in graph.edges() {
            match e.jump_magnitude {
                0 => jump_counts.j0 += 1,
                1 => jump_counts.j1 += 1,
                2 => jump_counts.j2 += 1,
                d => unreachable!("support jump of magnitude {d}"),
            }
            let (r, s) = (sigma[e.u] as usize - 1, sigma[e.v] as usize - 1);
            matrix[r][s] += 1;
            if r != s {
                matrix[s][r] += 1;
            }
        }
        jump_counts.edges = graph.edge_count() as u64;

        let per_stratum = (1..=levels as u32)
            .map(|r| {
                let (components, component_sizes) = components_in_stratum(graph, r);
                let degrees = (0..graph.vertex_count())
                    .filter(|&i| sigma[i] == r)
                    .map(|i| graph.degree(i) as u64);
                let (min_degree, max_degree) = degrees
                    .fold(None, |acc: Option<(u64, u64)>, d| {
                        Some(acc.map_or((d, d), |(lo, hi)| (lo.min(d), hi.max(d))))
                    })
                    .unwrap_or((0, 0));
                StratumSummary {
                    r,
                    vertices: strata_counts[r as usize - 1],
                    internal_edges: matrix[r as usize - 1][r as usize - 1],
                    components,
                    component_sizes,
                    min_degree,
                    max_degree,
                }
            })
            .collect();

        Self {
            n,
            strata_counts,
            jump_counts,
            level_edge_matrix: matrix,
            per_stratum,
        }
    }

    pub fn rho(&self) -> u32 {
        self.strata_counts.len() as u32
    }

    /// `a_{n,r}`, zero outside `1..=ρ(n)`.
    pub fn stratum_count(&self, r: u32) -> u64 {
        r.checked_sub(1)
            .and_then(|i| self.strata_counts.get(i as usize))
            .copied()
            .unwrap_or(0)
    }

    /// `e_{n,r,s}`, zero outside the level range.
    pub fn level_edges(&self, r: u32, s: u32) -> u64 {
        let (Some(r), Some(s)) = (r.checked_sub(1), s.checked_sub(1)) else {
            return 0;
        };
        self.level_edge_matrix
            .get(r as usize)
            .and_then(|row| row.get(s as usize))
            .copied()
            .unwrap_or(0)
    }

    /// Component count of `G_n^{[r]}`; zero for an empty stratum.
    pub fn components(&self, r: u32) -> u64 {
        self.stratum(r).map_or(0, |s| s.components)
    }

    pub fn stratum(&self, r: u32) -> Option<&StratumSummary> {
        r.checked_sub(1).and_then(|i| self.per_stratum.get(i as usize))
    }

    pub fn level_graph(&self) -> LevelGraph {
        let levels = self.rho();
        let mut adjacent_pairs = BTreeSet::new();
        let mut self_looped_levels = BTreeSet::new();
        for r in 1..=levels {
            for s in r..=levels {
                if self.level_edges(r, s) == 0 {
                    continue;
                }
                if r == s {
                    self_looped_levels.insert(r);
                } else {
                    adjacent_pairs.insert((r, s));
                }
            }
        }
        LevelGraph {
            n: self.n,
            levels,
            adjacent_pairs,
            self_looped_levels,
        }
    }
}

fn components_in_stratum(graph: &PartitionGraph, r: u32) -> (u64, Vec<u64>) {
    let sigma = graph.support_sizes();
    let members: Vec<usize> = (0..graph.vertex_count()).filter(|&i| sigma[i] == r).collect();
    let mut local = vec![usize::MAX; graph.vertex_count()];
    for (k, &i) in members.iter().enumerate() {
        local[i] = k;
    }
    let mut ds = DisjointSet::new(members.len());
    for e in graph.edges() {
        if sigma[e.u] == r && sigma[e.v] == r {
            ds.union(local[e.u], local[e.v]);
        }
    }
    let sizes: Vec<u64> = ds.component_sizes().into_iter().map(|s| s as u64).collect();
    (sizes.len() as u64, sizes)
}

/// Support levels `1..=ρ(n)` joined when some edge runs between them.
/// Same-level traffic is kept apart in `self_looped_levels`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LevelGraph {
    pub n: u32,
    pub levels: u32,
    pub adjacent_pairs: BTreeSet<(u32, u32)>,
    pub self_looped_levels: BTreeSet<u32>,
}

impl LevelGraph {
    pub fn is_adjacent(&self, r: u32, s: u32) -> bool {
        self.adjacent_pairs.contains(&(r.min(s), r.max(s)))
    }

    /// Whether every consecutive pair `(r, r+1)` is adjacent.
    pub fn has_consecutive_chain(&self) -> bool {
        (1..self.levels).all(|r| self.is_adjacent(r, r + 1))
    }

    pub fn is_connected(&self) -> bool {
        if self.levels == 0 {
            return true;
        }
        let mut ds = DisjointSet::new(self.levels as usize);
        for &(r, s) in &self.adjacent_pairs {
            ds.union(r as usize - 1, s as usize - 1);
        }
        ds.component_sizes().len() == 1
    }
}

/// `a_{n,r}` for `r = 1..=ρ(n)`, from enumeration alone.
pub fn strata_counts(n: u32) -> Result<Vec<u64>, AtlasError> {
    if n == 0 {
        return Err(AtlasError::InvalidN(n));
    }
    let mut counts = vec![0u64; rho(n) as usize];
    for lambda in enumerate_partitions(n) {
        counts[lambda.support_size() - 1] += 1;
    }
    Ok(counts)
}

pub fn jump_counts(n: u32) -> Result<JumpCounts, AtlasError> {
    Ok(StratumAtlas::compute(n)?.jump_counts)
}

pub fn level_edge_matrix(n: u32) -> Result<Vec<Vec<u64>>, AtlasError> {
    Ok(StratumAtlas::compute(n)?.level_edge_matrix)
}

pub fn level_graph(n: u32) -> Result<LevelGraph, AtlasError> {
    Ok(StratumAtlas::compute(n)?.level_graph())
}

pub fn stratum_degree_summary(n: u32) -> Result<Vec<StratumSummary>, AtlasError> {
    Ok(StratumAtlas::compute(n)?.per_stratum)
}

pub fn stratum_components(n: u32, r: u32) -> Result<ComponentReport, AtlasError> {
    if n == 0 {
        return Err(AtlasError::InvalidN(n));
    }
    if r == 0 || r > rho(n) {
        return Err(AtlasError::StratumOutOfRange { n, r, rho: rho(n) });
    }
    let graph = PartitionGraph::build(n)?;
    let (components, component_sizes) = components_in_stratum(&graph, r);
    Ok(ComponentReport {
        n,
        r,
        components,
        component_sizes,
    })
}

/// Atlases for every `n` in `from..=to`, in order of `n`.
pub fn atlas_range(from: u32, to: u32) -> Result<Vec<StratumAtlas>, AtlasError> {
    if from == 0 || from > to {
        return Err(AtlasError::InvalidRange { from, to });
    }
    #[cfg(feature = "parallel")]
    {
        use rayon::prelude::*;
        (from..=to).into_par_iter().map(StratumAtlas::compute).collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        (from..=to).map(StratumAtlas::compute).collect()
    }
}

/// A feature whose first appearance is tracked over `1..=n_max`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Feature {
    /// Some partition has support size `r`.
    SupportSize { r: u32 },
    /// `G_n^{[r]}` has an edge.
    InternalEdge { r: u32 },
    /// Some edge changes support size by `delta`.
    JumpMagnitude { delta: u32 },
    /// Some edge joins levels `r` and `s`.
    LevelCoupling { r: u32, s: u32 },
    /// `G_n^{[r]}` has more than one component.
    Disconnected { r: u32 },
    /// Start of the final run of `n` on which `G_n^{[r]}` is connected and has
    /// at least `min_vertices` vertices.
    ConnectedFrom { r: u32, min_vertices: u64 },
}

impl fmt::Display for Feature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Feature::SupportSize { r } => write!(f, "support size {r}"),
            Feature::InternalEdge { r } => write!(f, "internal edge in stratum {r}"),
            Feature::JumpMagnitude { delta } => write!(f, "jump magnitude {delta}"),
            Feature::LevelCoupling { r, s } => write!(f, "level coupling ({r},{s})"),
            Feature::Disconnected { r } => write!(f, "stratum {r} disconnected"),
            Feature::ConnectedFrom { r, min_vertices } => {
                write!(f, "stratum {r} connected with >= {min_vertices} vertices")
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FirstOccurrence {
    pub feature: Feature,
    /// Smallest `n <= n_max` exhibiting the feature.
    pub first_n: Option<u32>,
    /// Value forced by the triangular-number threshold, where one exists.
    pub predicted: Option<u32>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FirstOccurrenceReport {
    pub n_max: u32,
    pub entries: Vec<FirstOccurrence>,
}

impl FirstOccurrenceReport {
    pub fn first(&self, feature: Feature) -> Option<u32> {
        self.entries
            .iter()
            .find(|e| e.feature == feature)
            .and_then(|e| e.first_n)
    }
}

impl fmt::Display for FirstOccurrenceReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for e in &self.entries {
            match e.first_n {
                Some(n) => write!(f, "{}: n = {n}", e.feature)?,
                None => write!(f, "{}: not found up to n = {}", e.feature, self.n_max)?,
            }
            if let Some(p) = e.predicted {
                write!(f, " (predicted {p})")?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

/// Scans `1..=n_max` for the tracked features.
pub fn first_occurrences(n_max: u32) -> Result<FirstOccurrenceReport, AtlasError> {
    let atlases = atlas_range(1, n_max)?;
    Ok(first_occurrences_in(&atlases))
}

/// Same as [`first_occurrences`] over precomputed atlases for `n = 1, 2, ...`.
pub fn first_occurrences_in(atlases: &[StratumAtlas]) -> FirstOccurrenceReport {
    let n_max = atlases.last().map_or(0, |a| a.n);
    let max_r = rho(n_max).max(1);
    let mut features: Vec<(Feature, Option<u32>)> = Vec::new();
    for r in 1..=max_r {
        features.push((Feature::SupportSize { r }, Some(triangular(r) as u32)));
    }
    for r in 1..=max_r {
        let predicted = if r == 1 { 2 } else { triangular(r) as u32 + 1 };
        features.push((Feature::InternalEdge { r }, Some(predicted)));
    }
    features.push((Feature::JumpMagnitude { delta: 2 }, None));
    for r in 1..=4 {
        features.push((Feature::LevelCoupling { r, s: r + 2 }, None));
    }
    features.push((Feature::Disconnected { r: 3 }, None));
    for min_vertices in [1, 2] {
        for r in 4..=6 {
            features.push((Feature::ConnectedFrom { r, min_vertices }, None));
        }
    }

    let entries = features
        .into_iter()
        .map(|(feature, predicted)| FirstOccurrence {
            feature,
            first_n: scan(atlases, feature),
            predicted,
        })
        .collect();
    FirstOccurrenceReport { n_max, entries }
}

fn scan(atlases: &[StratumAtlas], feature: Feature) -> Option<u32> {
    let holds = |a: &StratumAtlas| match feature {
        Feature::SupportSize { r } => a.stratum_count(r) > 0,
        Feature::InternalEdge { r } => a.level_edges(r, r) > 0,
        Feature::JumpMagnitude { delta } => a.jump_counts.by_magnitude(delta as usize) > 0,
        Feature::LevelCoupling { r, s } => a.level_edges(r, s) > 0,
        Feature::Disconnected { r } => a.components(r) > 1,
        Feature::ConnectedFrom { r, min_vertices } => {
            a.stratum_count(r) >= min_vertices && a.components(r) == 1
        }
    };
    match feature {
        Feature::ConnectedFrom { .. } => {
            // start of the trailing run where the property holds
            let tail = atlases.iter().rev().take_while(|a| holds(a)).count();
            (tail > 0).then(|| atlases[atlases.len() - tail].n)
        }
        _ => atlases.iter().find(|a| holds(a)).map(|a| a.n),
    }
}
