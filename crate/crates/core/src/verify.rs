//! Exhaustive structural checks over `1..=n_max`.
//!
//! Each check compares a closed form or structural claim with an independent
//! computation: neighbor sets from moving cells between individual parts,
//! partition numbers from the pentagonal recurrence, supports recomputed
//! from scratch. Failures are report content; they never abort the run.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::Serialize;

use crate::atlas::StratumAtlas;
use crate::partition::{divisor_count, max_support_witness, rho, triangular, Part, Partition};
use crate::transfer::{
    apply_transfer, degree_formula, support_jump_formula, valid_moves, PartitionGraph,
};
use crate::AtlasError;

/// Oriented jumps must all show up by this `n`.
pub const JUMP_VALUES_HORIZON: u32 = 8;

/// Neighbors of `lambda` found by moving one cell between every ordered pair
/// of individual parts (or onto a new row), without using support data.
pub fn brute_force_neighbors(lambda: &Partition) -> BTreeSet<Partition> {
    let parts = lambda.parts();
    let k = parts.len();
    let mut out = BTreeSet::new();
    for i in 0..k {
        for j in 0..=k {
            if i == j {
                continue;
            }
            let mut next = parts.to_vec();
            next[i] -= 1;
            if j == k {
                next.push(1);
            } else {
                next[j] += 1;
            }
            next.retain(|&p| p > 0);
            let mu = Partition::new(next).expect("positive parts");
            if &mu != lambda {
                out.insert(mu);
            }
        }
    }
    out
}

/// `p(n)` by Euler's pentagonal recurrence.
pub fn partition_number(n: u32) -> u64 {
    let n = n as usize;
    let mut p = vec![0i64; n + 1];
    p[0] = 1;
    for i in 1..=n {
        let mut sum = 0i64;
        for k in 1.. {
            let g1 = k * (3 * k - 1) / 2;
            if g1 > i {
                break;
            }
            let sign = if k % 2 == 1 { 1 } else { -1 };
            sum += sign * p[i - g1];
            let g2 = k * (3 * k + 1) / 2;
            if g2 <= i {
                sum += sign * p[i - g2];
            }
        }
        p[i] = sum;
    }
    p[n] as u64
}

/// Per-size multiplicity table of a partition, indexed by size.
fn multiplicity_table(lambda: &Partition, len: usize) -> Vec<i64> {
    let mut m = vec![0i64; len];
    for &p in lambda.parts() {
        m[p as usize] += 1;
    }
    m
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum CheckId {
    PartitionCount,
    StratumExistence,
    ThresholdStaircase,
    MaxSupportWitness,
    DegreeFormula,
    DegreeFloor,
    MultiplicityUpdate,
    JumpFormula,
    JumpBound,
    JumpValuesRealized,
    AdjacencySymmetry,
    ConjugationSupport,
    ConjugationAutomorphism,
    RectangleStratum,
    SupportOneEdges,
    InternalEdges,
    LevelJumpBound,
    LevelChain,
    JumpMatrixConsistency,
}

impl CheckId {
    pub const ALL: [CheckId; 19] = [
        CheckId::PartitionCount,
        CheckId::StratumExistence,
        CheckId::ThresholdStaircase,
        CheckId::MaxSupportWitness,
        CheckId::DegreeFormula,
        CheckId::DegreeFloor,
        CheckId::MultiplicityUpdate,
        CheckId::JumpFormula,
        CheckId::JumpBound,
        CheckId::JumpValuesRealized,
        CheckId::AdjacencySymmetry,
        CheckId::ConjugationSupport,
        CheckId::ConjugationAutomorphism,
        CheckId::RectangleStratum,
        CheckId::SupportOneEdges,
        CheckId::InternalEdges,
        CheckId::LevelJumpBound,
        CheckId::LevelChain,
        CheckId::JumpMatrixConsistency,
    ];

    pub fn name(self) -> &'static str {
        match self {
            CheckId::PartitionCount => "partition-count",
            CheckId::StratumExistence => "stratum-existence",
            CheckId::ThresholdStaircase => "threshold-staircase",
            CheckId::MaxSupportWitness => "max-support-witness",
            CheckId::DegreeFormula => "degree-formula",
            CheckId::DegreeFloor => "degree-floor",
            CheckId::MultiplicityUpdate => "multiplicity-update",
            CheckId::JumpFormula => "jump-formula",
            CheckId::JumpBound => "jump-bound",
            CheckId::JumpValuesRealized => "jump-values-realized",
            CheckId::AdjacencySymmetry => "adjacency-symmetry",
            CheckId::ConjugationSupport => "conjugation-support",
            CheckId::ConjugationAutomorphism => "conjugation-automorphism",
            CheckId::RectangleStratum => "rectangle-stratum",
            CheckId::SupportOneEdges => "support-one-edges",
            CheckId::InternalEdges => "internal-edges",
            CheckId::LevelJumpBound => "level-jump-bound",
            CheckId::LevelChain => "level-chain",
            CheckId::JumpMatrixConsistency => "jump-matrix-consistency",
        }
    }

    pub fn description(self) -> &'static str {
        match self {
            CheckId::PartitionCount => {
                "enumeration yields p(n) distinct partitions; strata sizes sum to p(n)"
            }
            CheckId::StratumExistence => "V(n,r) is nonempty exactly when T_r <= n",
            CheckId::ThresholdStaircase => "at n = T_r the only support-r partition is the staircase",
            CheckId::MaxSupportWitness => "(r + n - T_r, r-1, ..., 1) has support size r",
            CheckId::DegreeFormula => "closed-form degree equals brute-force neighbor count",
            CheckId::DegreeFloor => {
                "deg >= s(s-1), equality exactly on staircases, +1 above T_s otherwise"
            }
            CheckId::MultiplicityUpdate => "each transfer changes multiplicities at x, y, x-1, y+1 only",
            CheckId::JumpFormula => "support-jump formula equals recomputed support change",
            CheckId::JumpBound => "every edge changes support size by at most 2",
            CheckId::JumpValuesRealized => "oriented jumps -2..=2 all occur for n <= 8",
            CheckId::AdjacencySymmetry => "mu ~ lambda whenever lambda ~ mu",
            CheckId::ConjugationSupport => {
                "conjugation is an involution, preserves support size, maps support to multiplicity partial sums"
            }
            CheckId::ConjugationAutomorphism => "conjugation maps edges to edges",
            CheckId::RectangleStratum => {
                "support one means rectangle; a(n,1) = d(n); self-conjugate rectangles are squares"
            }
            CheckId::SupportOneEdges => "support-one stratum: one edge at n = 2, none for n >= 3",
            CheckId::InternalEdges => "for r >= 2, stratum r has an internal edge iff n > T_r",
            CheckId::LevelJumpBound => "no edges between levels three or more apart",
            CheckId::LevelChain => "level graph contains the chain 1-2-...-rho(n)",
            CheckId::JumpMatrixConsistency => "jump counts equal diagonal sums of the level matrix",
        }
    }
}

impl fmt::Display for CheckId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CheckStatus {
    Pass,
    Fail,
    /// The range never reached a case the check applies to.
    Skipped,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NStatus {
    pub n: u32,
    pub passed: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckResult {
    pub id: CheckId,
    pub description: &'static str,
    pub status: CheckStatus,
    /// Individual assertions evaluated.
    pub cases: u64,
    pub per_n: Vec<NStatus>,
    /// First failure, if any.
    pub counterexample: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub n_max: u32,
    pub passed: bool,
    pub checks: Vec<CheckResult>,
}

impl VerificationReport {
    pub fn check(&self, id: CheckId) -> Option<&CheckResult> {
        self.checks.iter().find(|c| c.id == id)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckResult> {
        self.checks.iter().filter(|c| c.status == CheckStatus::Fail)
    }
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            let tag = match c.status {
                CheckStatus::Pass => "PASS",
                CheckStatus::Fail => "FAIL",
                CheckStatus::Skipped => "SKIP",
            };
            write!(f, "{tag} {:<26} {:>8} cases", c.id.name(), c.cases)?;
            let failed: Vec<String> = c
                .per_n
                .iter()
                .filter(|s| !s.passed)
                .map(|s| s.n.to_string())
                .collect();
            if !failed.is_empty() {
                write!(f, "  failing n: {}", failed.join(","))?;
            }
            writeln!(f, "  -- {}", c.description)?;
            if let Some(cx) = &c.counterexample {
                writeln!(f, "     counterexample: {cx}")?;
            }
        }
        let failed = self.failures().count();
        if failed == 0 {
            writeln!(f, "all checks passed for 1 <= n <= {}", self.n_max)
        } else {
            writeln!(f, "{failed} check(s) failed for 1 <= n <= {}", self.n_max)
        }
    }
}

/// Knobs for [`verify_theorems_with`]. The degree function is swappable so
/// that a deliberately broken formula can be shown to be caught.
#[derive(Clone, Copy)]
pub struct VerifyOptions {
    pub degree_fn: fn(&Partition) -> u64,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        Self {
            degree_fn: degree_formula,
        }
    }
}

impl fmt::Debug for VerifyOptions {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("VerifyOptions").finish_non_exhaustive()
    }
}

pub fn verify_theorems(n_max: u32) -> Result<VerificationReport, AtlasError> {
    verify_theorems_with(n_max, VerifyOptions::default())
}

pub fn verify_theorems_with(
    n_max: u32,
    opts: VerifyOptions,
) -> Result<VerificationReport, AtlasError> {
    if n_max == 0 {
        return Err(AtlasError::InvalidN(n_max));
    }
    #[cfg(feature = "parallel")]
    let per_n: Vec<NOutcome> = {
        use rayon::prelude::*;
        (1..=n_max).into_par_iter().map(|n| check_n(n, &opts)).collect()
    };
    #[cfg(not(feature = "parallel"))]
    let per_n: Vec<NOutcome> = (1..=n_max).map(|n| check_n(n, &opts)).collect();

    let mut checks = Vec::with_capacity(CheckId::ALL.len());
    for id in CheckId::ALL {
        if id == CheckId::JumpValuesRealized {
            checks.push(jump_values_check(&per_n, n_max));
            continue;
        }
        let mut result = CheckResult {
            id,
            description: id.description(),
            status: CheckStatus::Pass,
            cases: 0,
            per_n: Vec::new(),
            counterexample: None,
        };
        for outcome in &per_n {
            let Some(t) = outcome.tallies.get(&id) else {
                continue;
            };
            result.cases += t.cases;
            result.per_n.push(NStatus {
                n: outcome.n,
                passed: t.failure.is_none(),
            });
            if let Some(msg) = &t.failure {
                result.status = CheckStatus::Fail;
                result
                    .counterexample
                    .get_or_insert_with(|| format!("n = {}: {msg}", outcome.n));
            }
        }
        if result.cases == 0 {
            result.status = CheckStatus::Skipped;
        }
        checks.push(result);
    }
    let passed = checks.iter().all(|c| c.status != CheckStatus::Fail);
    Ok(VerificationReport {
        n_max,
        passed,
        checks,
    })
}

fn jump_values_check(per_n: &[NOutcome], n_max: u32) -> CheckResult {
    let id = CheckId::JumpValuesRealized;
    let mut result = CheckResult {
        id,
        description: id.description(),
        status: CheckStatus::Skipped,
        cases: 0,
        per_n: Vec::new(),
        counterexample: None,
    };
    if n_max < JUMP_VALUES_HORIZON {
        return result;
    }
    let mut seen = BTreeSet::new();
    for o in per_n.iter().filter(|o| o.n <= JUMP_VALUES_HORIZON) {
        seen.extend(o.oriented_jumps.iter().copied());
        result.cases += o.oriented_jumps.len() as u64;
    }
    let missing: Vec<i32> = (-2..=2).filter(|d| !seen.contains(d)).collect();
    let ok = missing.is_empty();
    result.status = if ok { CheckStatus::Pass } else { CheckStatus::Fail };
    result.per_n.push(NStatus {
        n: JUMP_VALUES_HORIZON,
        passed: ok,
    });
    if !ok {
        result.counterexample = Some(format!(
            "jump values {missing:?} not realized for n <= {JUMP_VALUES_HORIZON}"
        ));
    }
    result
}

#[derive(Default)]
struct Tally {
    cases: u64,
    failure: Option<String>,
}

struct NOutcome {
    n: u32,
    tallies: BTreeMap<CheckId, Tally>,
    oriented_jumps: BTreeSet<i32>,
}

impl NOutcome {
    /// Records one assertion; the message is only built for the first failure.
    fn record(&mut self, id: CheckId, ok: bool, msg: impl FnOnce() -> String) {
        let t = self.tallies.entry(id).or_default();
        t.cases += 1;
        if !ok && t.failure.is_none() {
            t.failure = Some(msg());
        }
    }
}

fn check_n(n: u32, opts: &VerifyOptions) -> NOutcome {
    let mut out = NOutcome {
        n,
        tallies: BTreeMap::new(),
        oriented_jumps: BTreeSet::new(),
    };
    let graph = PartitionGraph::build(n).expect("n >= 1");
    let atlas = StratumAtlas::from_graph(&graph);
    let vertices = graph.vertices();
    let rho_n = rho(n);
    let t = |r: u32| triangular(r);

    // enumeration and strata
    let pn = partition_number(n);
    let distinct: BTreeSet<&Partition> = vertices.iter().collect();
    let all_valid = vertices.iter().all(|v| v.total() == n);
    out.record(
        CheckId::PartitionCount,
        vertices.len() as u64 == pn && distinct.len() as u64 == pn && all_valid,
        || format!("enumerated {} ({} distinct), p(n) = {pn}", vertices.len(), distinct.len()),
    );
    let strata_sum: u64 = atlas.strata_counts.iter().sum();
    out.record(CheckId::PartitionCount, strata_sum == pn, || {
        format!("strata sum {strata_sum} != p(n) = {pn}")
    });

    for r in 1..=rho_n + 1 {
        let nonempty = vertices.iter().any(|v| v.support_size() as u32 == r);
        let feasible = t(r) <= u64::from(n);
        out.record(CheckId::StratumExistence, nonempty == feasible, || {
            format!("r = {r}: nonempty = {nonempty}, T_r = {}", t(r))
        });
    }
    for v in vertices {
        let s = v.support_size() as u32;
        out.record(
            CheckId::StratumExistence,
            s <= rho_n && t(s) <= u64::from(n),
            || format!("{v} has support {s} > rho = {rho_n}"),
        );
    }

    for r in 1..=rho_n {
        if t(r) == u64::from(n) {
            let members: Vec<&Partition> = vertices
                .iter()
                .filter(|v| v.support_size() as u32 == r)
                .collect();
            out.record(
                CheckId::ThresholdStaircase,
                members.len() == 1 && members[0].is_staircase(),
                || format!("r = {r}: stratum {members:?}"),
            );
        }
        let w = max_support_witness(n, r);
        out.record(
            CheckId::MaxSupportWitness,
            matches!(&w, Ok(w) if w.total() == n && w.support_size() as u32 == r),
            || format!("r = {r}: witness {w:?}"),
        );
    }

    // per-vertex checks
    let size_bound = n as usize + 2;
    for (i, lambda) in vertices.iter().enumerate() {
        let sigma = lambda.support_size() as u64;
        let brute = brute_force_neighbors(lambda);
        let formula = (opts.degree_fn)(lambda);
        out.record(CheckId::DegreeFormula, formula == brute.len() as u64, || {
            format!("lambda = {lambda}: formula {formula}, brute force {}", brute.len())
        });

        let deg = graph.degree(i) as u64;
        let floor = sigma * (sigma - 1);
        let stair = lambda.is_staircase();
        let strict_ok = stair || u64::from(n) <= t(sigma as u32) || deg > floor;
        out.record(
            CheckId::DegreeFloor,
            deg >= floor && ((deg == floor) == stair) && strict_ok,
            || format!("lambda = {lambda}: degree {deg}, floor {floor}, staircase {stair}"),
        );

        let mults = multiplicity_table(lambda, size_bound);
        for mv in valid_moves(lambda) {
            let mu = apply_transfer(lambda, mv).expect("valid move");
            let (x, y) = (mv.source as usize, mv.target as usize);
            let after = multiplicity_table(&mu, size_bound);
            let lemma_ok = (1..size_bound).all(|s| {
                let delta = -i64::from(s == x) - i64::from(y > 0 && s == y)
                    + i64::from(x > 1 && s == x - 1)
                    + i64::from(s == y + 1);
                after[s] == mults[s] + delta
            });
            out.record(CheckId::MultiplicityUpdate, lemma_ok, || {
                format!("lambda = {lambda}, move {x}->{y}: result {mu}")
            });

            let direct = mu.support_size() as i32 - sigma as i32;
            let formula = support_jump_formula(lambda, mv);
            out.record(
                CheckId::JumpFormula,
                formula.as_ref().ok() == Some(&direct) && direct.abs() <= 2,
                || format!("lambda = {lambda}, move {x}->{y}: formula {formula:?}, direct {direct}"),
            );
        }

        for &j in graph.neighbors_of(i) {
            let jump = graph.oriented_jump(i, j);
            out.oriented_jumps.insert(jump);
            let back = graph.neighbors_of(j).binary_search(&i).is_ok();
            out.record(CheckId::AdjacencySymmetry, back, || {
                format!("{lambda} ~ {} but not conversely", vertices[j])
            });
            if i < j {
                let (cu, cv) = (lambda.conjugate(), vertices[j].conjugate());
                let adj = match (graph.index_of(&cu), graph.index_of(&cv)) {
                    (Some(a), Some(b)) => graph.neighbors_of(a).binary_search(&b).is_ok(),
                    _ => false,
                };
                out.record(CheckId::ConjugationAutomorphism, adj, || {
                    format!("{lambda} ~ {} but {cu} !~ {cv}", vertices[j])
                });
            }
        }

        let conj = lambda.conjugate();
        let partial: BTreeSet<Part> = lambda
            .block_form()
            .expect("nonempty")
            .multiplicity_partial_sums()
            .into_iter()
            .map(|m| m as Part)
            .collect();
        out.record(
            CheckId::ConjugationSupport,
            conj.conjugate() == *lambda
                && conj.total() == n
                && conj.support_size() as u64 == sigma
                && conj.support() == partial,
            || format!("lambda = {lambda}, conjugate {conj}, partial sums {partial:?}"),
        );

        if sigma == 1 || lambda.is_rectangle() {
            let square = conj == *lambda;
            let side_square = lambda.len() as u32 == lambda.parts()[0];
            out.record(
                CheckId::RectangleStratum,
                sigma == 1 && lambda.is_rectangle() && square == side_square,
                || format!("lambda = {lambda}: support {sigma}, self-conjugate {square}"),
            );
        }
    }

    let d = u64::from(divisor_count(n));
    out.record(CheckId::RectangleStratum, atlas.stratum_count(1) == d, || {
        format!("a(n,1) = {}, d(n) = {d}", atlas.stratum_count(1))
    });

    for e in graph.edges() {
        out.record(CheckId::JumpBound, e.jump_magnitude <= 2, || {
            format!("{} ~ {} jumps by {}", vertices[e.u], vertices[e.v], e.jump_magnitude)
        });
    }

    // level structure
    let e11 = atlas.level_edges(1, 1);
    let want = u64::from(n == 2);
    out.record(CheckId::SupportOneEdges, e11 == want, || {
        format!("e(n,1,1) = {e11}, expected {want}")
    });
    for r in 2..=rho_n {
        let err = atlas.level_edges(r, r);
        if u64::from(n) > t(r) {
            out.record(CheckId::InternalEdges, err >= 1, || {
                format!("r = {r}: no internal edge above T_r")
            });
        } else {
            let a = atlas.stratum_count(r);
            out.record(CheckId::InternalEdges, a == 1 && err == 0, || {
                format!("r = {r} at n = T_r: a = {a}, internal edges {err}")
            });
        }
    }
    for r in 1..=rho_n {
        for s in r + 3..=rho_n {
            let e = atlas.level_edges(r, s);
            out.record(CheckId::LevelJumpBound, e == 0, || {
                format!("e(n,{r},{s}) = {e}")
            });
        }
    }
    let lg = atlas.level_graph();
    out.record(
        CheckId::LevelChain,
        lg.has_consecutive_chain() && lg.is_connected(),
        || format!("level pairs {:?}", lg.adjacent_pairs),
    );

    let diag = |delta: u32| -> u64 { (1..=rho_n).map(|r| atlas.level_edges(r, r + delta)).sum() };
    let jc = atlas.jump_counts;
    let sums = (diag(0), diag(1), diag(2));
    out.record(
        CheckId::JumpMatrixConsistency,
        (jc.j0, jc.j1, jc.j2) == sums && jc.j0 + jc.j1 + jc.j2 == jc.edges,
        || format!("jumps {jc:?}, diagonal sums {sums:?}"),
    );

    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pentagonal_numbers() {
        let known = [1, 1, 2, 3, 5, 7, 11, 15, 22, 30, 42];
        for (n, &p) in known.iter().enumerate() {
            assert_eq!(partition_number(n as u32), p);
        }
        assert_eq!(partition_number(20), 627);
        assert_eq!(partition_number(25), 1958);
        assert_eq!(partition_number(40), 37_338);
    }

    #[test]
    fn brute_force_small() {
        let lam: Partition = "3+2+1".parse().unwrap();
        assert_eq!(brute_force_neighbors(&lam).len(), 6);
        let one: Partition = "1".parse().unwrap();
        assert!(brute_force_neighbors(&one).is_empty());
    }

    #[test]
    fn small_range_passes() {
        let rep = verify_theorems(12).unwrap();
        assert!(rep.passed, "{rep}");
        assert!(rep.checks.iter().all(|c| c.status == CheckStatus::Pass), "{rep}");
    }

    #[test]
    fn n_max_two_support_one_single_edge() {
        let rep = verify_theorems(2).unwrap();
        assert!(rep.passed, "{rep}");
        let c = rep.check(CheckId::SupportOneEdges).unwrap();
        assert_eq!(c.status, CheckStatus::Pass);
        assert_eq!(
            rep.check(CheckId::JumpValuesRealized).unwrap().status,
            CheckStatus::Skipped
        );
    }

    #[test]
    fn injected_degree_fault_is_caught() {
        fn off_by_one(l: &Partition) -> u64 {
            degree_formula(l) + 1
        }
        let rep = verify_theorems_with(
            5,
            VerifyOptions {
                degree_fn: off_by_one,
            },
        )
        .unwrap();
        assert!(!rep.passed);
        let failed: Vec<CheckId> = rep.failures().map(|c| c.id).collect();
        assert_eq!(failed, vec![CheckId::DegreeFormula]);
        let cx = rep.check(CheckId::DegreeFormula).unwrap().counterexample.clone().unwrap();
        assert_eq!(cx, "n = 1: lambda = (1): formula 1, brute force 0");
        assert!(rep.to_string().contains("FAIL degree-formula"));
    }

    #[test]
    fn zero_is_rejected() {
        assert!(matches!(verify_theorems(0), Err(AtlasError::InvalidN(0))));
    }
}
