//! Integer partitions, their block form and support invariants.
//!
//! A [`Partition`] is stored as its weakly decreasing part sequence. Every
//! other view (block form, support profile, conjugate) is derived from it on
//! demand so that the representations can never disagree.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::AtlasError;

/// Size of a single part.
pub type Part = u32;

/// A partition of `n`: a weakly decreasing sequence of positive parts.
///
/// Equality and ordering are those of the canonical part sequence. The empty
/// partition is the unique partition of zero and is never a graph vertex.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<Part>", into = "Vec<Part>")]
pub struct Partition {
    parts: Vec<Part>,
}

impl Partition {
    /// Builds a partition from parts in any order. Zero parts are rejected.
    pub fn new(mut parts: Vec<Part>) -> Result<Self, AtlasError> {
        if parts.contains(&0) {
            return Err(AtlasError::InvalidPartition(
                "parts must be positive".to_string(),
            ));
        }
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Ok(Self { parts })
    }

    /// Wraps a sequence that is already weakly decreasing and positive.
    pub(crate) fn from_sorted_unchecked(parts: Vec<Part>) -> Self {
        debug_assert!(parts.windows(2).all(|w| w[0] >= w[1]));
        debug_assert!(!parts.contains(&0));
        Self { parts }
    }

    pub fn empty() -> Self {
        Self { parts: Vec::new() }
    }

    pub fn parts(&self) -> &[Part] {
        &self.parts
    }

    pub fn into_parts(self) -> Vec<Part> {
        self.parts
    }

    /// The integer being partitioned.
    pub fn total(&self) -> u32 {
        self.parts.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// Number of parts equal to `size`.
    pub fn multiplicity(&self, size: Part) -> usize {
        // parts are sorted descending, so equal parts are contiguous
        let start = self.parts.partition_point(|&p| p > size);
        let end = self.parts.partition_point(|&p| p >= size);
        end - start
    }

    pub fn contains_size(&self, size: Part) -> bool {
        size > 0 && self.multiplicity(size) > 0
    }

    /// Number of distinct part sizes.
    pub fn support_size(&self) -> usize {
        if self.parts.is_empty() {
            return 0;
        }
        1 + self.parts.windows(2).filter(|w| w[0] != w[1]).count()
    }

    /// The set of distinct part sizes.
    pub fn support(&self) -> BTreeSet<Part> {
        self.parts.iter().copied().collect()
    }

    /// Run-length encoding of the parts.
    pub fn block_form(&self) -> Result<BlockForm, AtlasError> {
        if self.parts.is_empty() {
            return Err(AtlasError::EmptyPartition);
        }
        let mut blocks: Vec<Block> = Vec::new();
        for &p in &self.parts {
            match blocks.last_mut() {
                Some(b) if b.size == p => b.multiplicity += 1,
                _ => blocks.push(Block {
                    size: p,
                    multiplicity: 1,
                }),
            }
        }
        Ok(BlockForm { blocks })
    }

    /// Support, profile, multiplicities, gaps and augmented gaps in one pass.
    pub fn support_profile(&self) -> Result<SupportProfile, AtlasError> {
        let blocks = self.block_form()?.blocks;
        let profile: Vec<Part> = blocks.iter().map(|b| b.size).collect();
        let multiplicities = blocks.iter().map(|b| b.multiplicity).collect();
        let gaps = profile.windows(2).map(|w| w[0] - w[1]).collect();
        let augmented_gaps = profile
            .iter()
            .zip(profile.iter().skip(1).chain(std::iter::once(&0)))
            .map(|(a, b)| a - b)
            .collect();
        Ok(SupportProfile {
            support: profile.iter().copied().collect(),
            sigma: profile.len(),
            profile,
            multiplicities,
            gaps,
            augmented_gaps,
        })
    }

    /// Transpose of the Ferrers diagram.
    pub fn conjugate(&self) -> Partition {
        let width = self.parts.first().copied().unwrap_or(0);
        let parts = (1..=width)
            .map(|col| self.parts.partition_point(|&p| p >= col) as Part)
            .collect();
        Partition { parts }
    }

    /// True iff the parts are `(r, r-1, ..., 2, 1)` for some `r >= 1`.
    pub fn is_staircase(&self) -> bool {
        let r = self.parts.len();
        r > 0
            && self
                .parts
                .iter()
                .enumerate()
                .all(|(i, &p)| p as usize == r - i)
    }

    /// True iff all parts are equal (the support-one shapes `a^b`).
    pub fn is_rectangle(&self) -> bool {
        !self.parts.is_empty() && self.parts.first() == self.parts.last()
    }

    /// Parts joined with `+`, e.g. `4+3+1`. The empty partition renders as `0`.
    pub fn to_plus_string(&self) -> String {
        if self.parts.is_empty() {
            return "0".to_string();
        }
        let strs: Vec<String> = self.parts.iter().map(Part::to_string).collect();
        strs.join("+")
    }
}

impl TryFrom<Vec<Part>> for Partition {
    type Error = AtlasError;

    fn try_from(parts: Vec<Part>) -> Result<Self, Self::Error> {
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(AtlasError::InvalidPartition(
                "parts must be weakly decreasing".to_string(),
            ));
        }
        Partition::new(parts)
    }
}

impl From<Partition> for Vec<Part> {
    fn from(p: Partition) -> Self {
        p.parts
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, ")")
    }
}

/// Parses `4+3+1`, `4,3,1` or `(4,3,1)`.
impl FromStr for Partition {
    type Err = AtlasError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let inner = s.trim().trim_start_matches('(').trim_end_matches(')');
        if inner.is_empty() || inner == "0" {
            return Ok(Partition::empty());
        }
        let parts = inner
            .split(['+', ','])
            .map(|t| {
                t.trim()
                    .parse::<Part>()
                    .map_err(|e| AtlasError::InvalidPartition(format!("{t:?}: {e}")))
            })
            .collect::<Result<Vec<_>, _>>()?;
        Partition::new(parts)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Block {
    pub size: Part,
    pub multiplicity: usize,
}

/// Run-length encoding `s_1^{m_1} ... s_r^{m_r}` with strictly decreasing sizes.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BlockForm {
    pub blocks: Vec<Block>,
}

impl BlockForm {
    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    /// Partial sums `m_1 + ... + m_j` of the multiplicities.
    pub fn multiplicity_partial_sums(&self) -> Vec<usize> {
        self.blocks
            .iter()
            .scan(0, |acc, b| {
                *acc += b.multiplicity;
                Some(*acc)
            })
            .collect()
    }
}

/// Derived support data of a nonempty partition.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SupportProfile {
    pub support: BTreeSet<Part>,
    pub sigma: usize,
    /// Distinct sizes in decreasing order.
    pub profile: Vec<Part>,
    pub multiplicities: Vec<usize>,
    /// `s_i - s_{i+1}` for consecutive sizes.
    pub gaps: Vec<Part>,
    /// The gaps followed by the terminal drop `s_r - 0`.
    pub augmented_gaps: Vec<Part>,
}

/// Every partition of `n` in reverse-lexicographic order, starting at `(n)`.
///
/// `n = 0` yields the single empty partition.
pub fn enumerate_partitions(n: u32) -> Vec<Partition> {
    PartitionIter::new(n).collect()
}

/// Iterator behind [`enumerate_partitions`].
#[derive(Clone, Debug)]
pub struct PartitionIter {
    current: Option<Vec<Part>>,
}

impl PartitionIter {
    pub fn new(n: u32) -> Self {
        let first = if n == 0 { Vec::new() } else { vec![n] };
        Self {
            current: Some(first),
        }
    }
}

impl Iterator for PartitionIter {
    type Item = Partition;

    fn next(&mut self) -> Option<Partition> {
        let cur = self.current.take()?;
        self.current = next_revlex(&cur);
        Some(Partition::from_sorted_unchecked(cur))
    }
}

/// Successor in reverse-lexicographic order: strip trailing ones, decrement
/// the last part above one, then refill greedily with parts no larger than it.
fn next_revlex(parts: &[Part]) -> Option<Vec<Part>> {
    let ones = parts.iter().rev().take_while(|&&p| p == 1).count();
    let idx = parts.len().checked_sub(ones + 1)?;
    let mut next = parts[..idx].to_vec();
    let k = parts[idx] - 1;
    next.push(k);
    let mut rest = ones as Part + 1;
    while rest > 0 {
        let take = rest.min(k);
        next.push(take);
        rest -= take;
    }
    Some(next)
}

/// `T_r = r(r+1)/2`, the smallest total admitting `r` distinct part sizes.
pub fn triangular(r: u32) -> u64 {
    let r = u64::from(r);
    r * (r + 1) / 2
}

/// Largest `r` with `T_r <= n`: the maximum support size among partitions of `n`.
pub fn rho(n: u32) -> u32 {
    let n = u64::from(n);
    // floor((sqrt(8n+1) - 1) / 2), corrected for rounding
    let mut r = ((((8 * n + 1) as f64).sqrt() - 1.0) / 2.0) as u64;
    while triangular(r as u32 + 1) <= n {
        r += 1;
    }
    while r > 0 && triangular(r as u32) > n {
        r -= 1;
    }
    r as u32
}

/// `(r + (n - T_r), r-1, ..., 2, 1)`: a partition of `n` with exactly `r`
/// distinct parts.
pub fn max_support_witness(n: u32, r: u32) -> Result<Partition, AtlasError> {
    let t = triangular(r);
    if r == 0 || t > u64::from(n) {
        return Err(AtlasError::InfeasibleSupport { n, r });
    }
    let extra = n - t as u32;
    let parts = (1..=r).rev().map(|p| if p == r { p + extra } else { p }).collect();
    Ok(Partition::from_sorted_unchecked(parts))
}

/// Number of positive divisors of `n` (`n >= 1`).
pub fn divisor_count(n: u32) -> u32 {
    let n = u64::from(n);
    let mut count = 0;
    let mut d = 1u64;
    while d * d <= n {
        if n % d == 0 {
            count += if d * d == n { 1 } else { 2 };
        }
        d += 1;
    }
    count
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(parts: &[Part]) -> Partition {
        Partition::new(parts.to_vec()).unwrap()
    }

    #[test]
    fn enumeration_small_cases() {
        assert_eq!(enumerate_partitions(0), vec![Partition::empty()]);
        assert_eq!(enumerate_partitions(1), vec![p(&[1])]);
        let five: Vec<String> = enumerate_partitions(5)
            .iter()
            .map(Partition::to_plus_string)
            .collect();
        assert_eq!(
            five,
            ["5", "4+1", "3+2", "3+1+1", "2+2+1", "2+1+1+1", "1+1+1+1+1"]
        );
        assert_eq!(enumerate_partitions(20).len(), 627);
    }

    #[test]
    fn enumeration_is_strictly_decreasing_in_lex_order() {
        let all = enumerate_partitions(12);
        assert_eq!(all.len(), 77);
        assert!(all.windows(2).all(|w| w[0] > w[1]));
    }

    #[test]
    fn block_forms() {
        let bf = p(&[4, 4, 1, 1]).block_form().unwrap();
        assert_eq!(
            bf.blocks,
            vec![
                Block { size: 4, multiplicity: 2 },
                Block { size: 1, multiplicity: 2 }
            ]
        );
        assert_eq!(p(&[3, 2, 1]).block_form().unwrap().len(), 3);
        assert_eq!(
            p(&[5]).block_form().unwrap().blocks,
            vec![Block { size: 5, multiplicity: 1 }]
        );
        assert!(matches!(
            Partition::empty().block_form(),
            Err(AtlasError::EmptyPartition)
        ));
    }

    #[test]
    fn support_profiles() {
        let sp = p(&[4, 4, 1, 1]).support_profile().unwrap();
        assert_eq!(sp.support, BTreeSet::from([1, 4]));
        assert_eq!(sp.sigma, 2);
        assert_eq!(sp.gaps, vec![3]);
        assert_eq!(sp.augmented_gaps, vec![3, 1]);
        assert_eq!(p(&[5, 2, 1]).support_profile().unwrap().sigma, 3);
        let rect = p(&[6, 6, 6]).support_profile().unwrap();
        assert_eq!(rect.sigma, 1);
        assert!(rect.gaps.is_empty());
        assert_eq!(rect.augmented_gaps, vec![6]);
        assert!(Partition::empty().support_profile().is_err());
    }

    #[test]
    fn conjugates() {
        assert_eq!(p(&[3, 1]).conjugate(), p(&[2, 1, 1]));
        assert_eq!(p(&[4, 4, 4]).conjugate(), p(&[3, 3, 3, 3]));
        for lam in enumerate_partitions(12) {
            assert_eq!(lam.conjugate().support_size(), lam.support_size());
            assert_eq!(lam.conjugate().conjugate(), lam);
        }
    }

    #[test]
    fn triangular_and_rho() {
        assert_eq!(triangular(1), 1);
        assert_eq!(triangular(5), 15);
        assert_eq!(triangular(6), 21);
        let expected = [1, 1, 2, 2, 2, 3, 3, 3, 3, 4, 4, 4, 4, 4, 5, 5, 5, 5, 5, 5];
        for (i, &r) in expected.iter().enumerate() {
            assert_eq!(rho(i as u32 + 1), r, "n = {}", i + 1);
        }
        assert_eq!(rho(21), 6);
        assert_eq!(rho(27), 6);
        assert_eq!(rho(28), 7);
        assert_eq!(rho(0), 0);
    }

    #[test]
    fn witnesses() {
        assert_eq!(max_support_witness(6, 3).unwrap(), p(&[3, 2, 1]));
        assert_eq!(max_support_witness(10, 3).unwrap(), p(&[7, 2, 1]));
        assert!(matches!(
            max_support_witness(5, 3),
            Err(AtlasError::InfeasibleSupport { n: 5, r: 3 })
        ));
    }

    #[test]
    fn divisors() {
        assert_eq!(divisor_count(1), 1);
        assert_eq!(divisor_count(12), 6);
        assert_eq!(divisor_count(17), 2);
        assert_eq!(divisor_count(36), 9);
    }

    #[test]
    fn staircases() {
        assert!(p(&[3, 2, 1]).is_staircase());
        assert!(!p(&[4, 2, 1]).is_staircase());
        assert!(p(&[1]).is_staircase());
        assert!(!p(&[2, 1, 1]).is_staircase());
        assert!(!Partition::empty().is_staircase());
    }

    #[test]
    fn parsing_and_display() {
        let lam: Partition = "4+3+1".parse().unwrap();
        assert_eq!(lam, p(&[4, 3, 1]));
        assert_eq!(lam.to_string(), "(4,3,1)");
        assert_eq!("(1,3,4)".parse::<Partition>().unwrap(), lam);
        assert!("4+x".parse::<Partition>().is_err());
        assert!(Partition::new(vec![2, 0]).is_err());
        assert!(Partition::try_from(vec![1, 2]).is_err());
    }

    #[test]
    fn multiplicity_lookup() {
        let lam = p(&[5, 5, 3, 1, 1, 1]);
        assert_eq!(lam.multiplicity(5), 2);
        assert_eq!(lam.multiplicity(1), 3);
        assert_eq!(lam.multiplicity(4), 0);
        assert!(!lam.contains_size(0));
    }
}
