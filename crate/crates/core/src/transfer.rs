//! Elementary transfers and the partition transfer graph.
//!
//! A transfer moves one cell from a part of size `x` to a part of size `y`
//! (`y = 0` opens a new row) and re-sorts. Moves are enumerated over distinct
//! part sizes rather than individual parts: equal parts give equal results.

use std::collections::{BTreeSet, HashMap};

use serde::{Deserialize, Serialize};

use crate::partition::{enumerate_partitions, Part, Partition};
use crate::AtlasError;

/// Move one cell from a part of size `source` onto a part of size `target`.
/// `target == 0` creates a new row of length one.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct TransferMove {
    pub source: Part,
    pub target: Part,
}

impl TransferMove {
    pub const fn new(source: Part, target: Part) -> Self {
        Self { source, target }
    }

    /// Checks the move against `lambda`. Moves with `source == target + 1`
    /// only swap two sizes in the multiset and are rejected as identities.
    pub fn validate(&self, lambda: &Partition) -> Result<(), AtlasError> {
        let Self { source: x, target: y } = *self;
        let reason = if !lambda.contains_size(x) {
            Some("source size not in support")
        } else if y > 0 && !lambda.contains_size(y) {
            Some("target size not in support")
        } else if x == y && lambda.multiplicity(x) < 2 {
            Some("source equals target but occurs once")
        } else if x == y + 1 {
            Some("identity transfer")
        } else {
            None
        };
        match reason {
            Some(reason) => Err(AtlasError::InvalidMove {
                partition: lambda.to_string(),
                from_size: x,
                to_size: y,
                reason,
            }),
            None => Ok(()),
        }
    }
}

/// Applies a valid transfer: removes one `x` and one `y`, inserts `x - 1`
/// and `y + 1`, dropping zeros.
pub fn apply_transfer(lambda: &Partition, mv: TransferMove) -> Result<Partition, AtlasError> {
    mv.validate(lambda)?;
    let TransferMove { source: x, target: y } = mv;
    let mut parts = lambda.parts().to_vec();
    remove_one(&mut parts, x);
    if y > 0 {
        remove_one(&mut parts, y);
    }
    if x > 1 {
        parts.push(x - 1);
    }
    parts.push(y + 1);
    parts.sort_unstable_by(|a, b| b.cmp(a));
    Ok(Partition::from_sorted_unchecked(parts))
}

fn remove_one(parts: &mut Vec<Part>, size: Part) {
    let idx = parts
        .iter()
        .position(|&p| p == size)
        .expect("validated move removes a present size");
    parts.remove(idx);
}

/// Every distinct-size transfer applicable to `lambda` whose result differs
/// from `lambda`.
pub fn valid_moves(lambda: &Partition) -> Vec<TransferMove> {
    let profile = match lambda.block_form() {
        Ok(bf) => bf.blocks,
        Err(_) => return Vec::new(),
    };
    let mut moves = Vec::with_capacity(profile.len() * (profile.len() + 1));
    for src in &profile {
        let x = src.size;
        for y in profile.iter().map(|b| b.size).chain([0]) {
            if (x == 1 && y == 0) || x == y + 1 || (x == y && src.multiplicity < 2) {
                continue;
            }
            moves.push(TransferMove::new(x, y));
        }
    }
    moves
}

/// The deduplicated neighborhood of `lambda` in its transfer graph.
pub fn neighbors(lambda: &Partition) -> BTreeSet<Partition> {
    valid_moves(lambda)
        .into_iter()
        .map(|mv| apply_transfer(lambda, mv).expect("generated moves are valid"))
        .collect()
}

/// Closed-form vertex degree:
/// `r(r-1) + #{i : m_i > 1} + #{i : augmented gap_i > 1}`.
pub fn degree_formula(lambda: &Partition) -> u64 {
    let Ok(sp) = lambda.support_profile() else {
        return 0;
    };
    let r = sp.sigma as u64;
    let repeated = sp.multiplicities.iter().filter(|&&m| m > 1).count() as u64;
    let wide = sp.augmented_gaps.iter().filter(|&&g| g > 1).count() as u64;
    r * r.saturating_sub(1) + repeated + wide
}

/// Change in support size caused by `mv`, from births at `x-1`, `y+1` and
/// deaths at `x`, `y` alone. Always in `-2..=2`.
pub fn support_jump_formula(lambda: &Partition, mv: TransferMove) -> Result<i32, AtlasError> {
    mv.validate(lambda)?;
    let TransferMove { source: x, target: y } = mv;
    let absent = |s: Part| !lambda.contains_size(s);
    let ind = |b: bool| i32::from(b);
    let m_x = lambda.multiplicity(x);
    let jump = if x != y {
        ind(x > 1 && absent(x - 1)) + ind(absent(y + 1))
            - ind(x == y + 2 && absent(x - 1))
            - ind(m_x == 1)
            - ind(y > 0 && lambda.multiplicity(y) == 1)
    } else {
        ind(x > 1 && absent(x - 1)) + ind(absent(x + 1)) - ind(m_x == 2)
    };
    Ok(jump)
}

/// An undirected edge between vertex indices `u < v`, with `|Δσ|`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Edge {
    pub u: usize,
    pub v: usize,
    pub jump_magnitude: u8,
}

/// The transfer graph on all partitions of `n`.
#[derive(Clone, Debug)]
pub struct PartitionGraph {
    n: u32,
    vertices: Vec<Partition>,
    support_sizes: Vec<u32>,
    edges: Vec<Edge>,
    adjacency: Vec<Vec<usize>>,
    index: HashMap<Partition, usize>,
}

impl PartitionGraph {
    /// Materializes `G_n`. Vertices are in reverse-lexicographic order; an
    /// edge's endpoints are stored with the lexicographically larger first.
    pub fn build(n: u32) -> Result<Self, AtlasError> {
        if n == 0 {
            return Err(AtlasError::InvalidN(n));
        }
        let vertices = enumerate_partitions(n);
        let index: HashMap<Partition, usize> = vertices
            .iter()
            .enumerate()
            .map(|(i, p)| (p.clone(), i))
            .collect();
        let support_sizes = vertices.iter().map(|p| p.support_size() as u32).collect::<Vec<_>>();

        let mut adjacency = Vec::with_capacity(vertices.len());
        let mut edges = Vec::new();
        for (i, lambda) in vertices.iter().enumerate() {
            let mut adj: Vec<usize> = neighbors(lambda).iter().map(|mu| index[mu]).collect();
            adj.sort_unstable();
            for &j in adj.iter().filter(|&&j| j > i) {
                edges.push(Edge {
                    u: i,
                    v: j,
                    jump_magnitude: support_sizes[i].abs_diff(support_sizes[j]) as u8,
                });
            }
            adjacency.push(adj);
        }
        Ok(Self {
            n,
            vertices,
            support_sizes,
            edges,
            adjacency,
            index,
        })
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn vertices(&self) -> &[Partition] {
        &self.vertices
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn neighbors_of(&self, i: usize) -> &[usize] {
        &self.adjacency[i]
    }

    pub fn degree(&self, i: usize) -> usize {
        self.adjacency[i].len()
    }

    pub fn support_size(&self, i: usize) -> u32 {
        self.support_sizes[i]
    }

    pub fn support_sizes(&self) -> &[u32] {
        &self.support_sizes
    }

    pub fn index_of(&self, lambda: &Partition) -> Option<usize> {
        self.index.get(lambda).copied()
    }

    /// `σ(to) - σ(from)` along an oriented edge.
    pub fn oriented_jump(&self, from: usize, to: usize) -> i32 {
        self.support_sizes[to] as i32 - self.support_sizes[from] as i32
    }
}

/// Shorthand for [`PartitionGraph::build`].
pub fn build_graph(n: u32) -> Result<PartitionGraph, AtlasError> {
    PartitionGraph::build(n)
}
