//! Exhaustive enumeration of naturally labeled posets and the cross-check
//! sweep of every formula against the rank oracle.

use std::collections::BTreeMap;
use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::formulas::{lower_bound, nilpotent_index, solvable_index_h2};
use crate::lie::{commutator_matrix, LabelOrder, SymbolicMatrix, Variant};
use crate::poset::{build_poset, Poset};
use crate::rank::{exact_rank, randomized_rank, DEFAULT_TRIALS};
use crate::reduction::reduce_to_height2;

pub const DEFAULT_MAX_N: usize = 7;

/// Naturally labeled posets on `{1, ..., n}`, each exactly once.
///
/// A poset on `{1, ..., k}` is its restriction to `{1, ..., k−1}` plus the
/// set of predecessors of `k`, which is a down-set of the restriction; the
/// iterator walks that tree depth first.
pub struct PosetEnumerator {
    n: usize,
    // frames of (predecessor masks of 1..=k, candidate down-sets, next index)
    stack: Vec<(Vec<u64>, Vec<u64>, usize)>,
    emitted_empty: bool,
}

fn down_sets(below: &[u64]) -> Vec<u64> {
    let k = below.len();
    (0u64..1 << k)
        .filter(|&s| (0..k).all(|x| s & (1 << x) == 0 || below[x] & !s == 0))
        .collect()
}

impl PosetEnumerator {
    fn new(n: usize) -> Self {
        let mut stack = Vec::new();
        if n > 0 {
            stack.push((Vec::new(), vec![0], 0));
        }
        PosetEnumerator {
            n,
            stack,
            emitted_empty: false,
        }
    }

    fn to_poset(&self, below: &[u64]) -> Poset {
        let rels: Vec<(usize, usize)> = below
            .iter()
            .enumerate()
            .flat_map(|(j, &mask)| {
                (0..j)
                    .filter(move |&i| mask & (1 << i) != 0)
                    .map(move |i| (i + 1, j + 1))
            })
            .collect();
        build_poset(self.n, &rels).expect("enumerated relations are natural")
    }
}

impl Iterator for PosetEnumerator {
    type Item = Poset;

    fn next(&mut self) -> Option<Poset> {
        if self.n == 0 {
            if self.emitted_empty {
                return None;
            }
            self.emitted_empty = true;
            return Some(Poset::antichain(0));
        }
        loop {
            let (below, cands, idx) = self.stack.last_mut()?;
            if *idx == cands.len() {
                self.stack.pop();
                continue;
            }
            let mut next = below.clone();
            next.push(cands[*idx]);
            *idx += 1;
            if next.len() == self.n {
                return Some(self.to_poset(&next));
            }
            let cands = down_sets(&next);
            self.stack.push((next, cands, 0));
        }
    }
}

pub fn enumerate_posets(n: usize) -> Result<PosetEnumerator> {
    enumerate_posets_bounded(n, DEFAULT_MAX_N)
}

pub fn enumerate_posets_bounded(n: usize, max_n: usize) -> Result<PosetEnumerator> {
    if n > max_n || n > 63 {
        return Err(Error::ResourceBound { n, max: max_n });
    }
    Ok(PosetEnumerator::new(n))
}

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Check {
    /// General nilpotent formula vs nilpotent rank oracle.
    NilpotentFormula,
    /// Index at least `|Rel_E(P)|`.
    LowerBound,
    /// Index at least 1 on a nonzero algebra.
    Positivity,
    /// Index equals `|Rel_E(P)|` for height ≤ 1.
    HeightOne,
    /// Solvable formula vs solvable rank oracle (height ≤ 2).
    SolvableFormula,
    /// Rank, up/down counts and middle-section count across every
    /// reduction step (height ≥ 3).
    Reduction,
    /// Exact and randomized rank agree on both commutator matrices.
    MethodAgreement,
}

impl Check {
    pub const ALL: [Check; 7] = [
        Check::NilpotentFormula,
        Check::LowerBound,
        Check::Positivity,
        Check::HeightOne,
        Check::SolvableFormula,
        Check::Reduction,
        Check::MethodAgreement,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Check::NilpotentFormula => "nilpotent-formula",
            Check::LowerBound => "lower-bound",
            Check::Positivity => "positivity",
            Check::HeightOne => "height-one",
            Check::SolvableFormula => "solvable-formula",
            Check::Reduction => "reduction",
            Check::MethodAgreement => "method-agreement",
        }
    }

    pub fn parse(s: &str) -> Option<Check> {
        Check::ALL.into_iter().find(|c| c.name() == s)
    }
}

#[derive(Clone, Copy, Debug, Serialize)]
#[serde(rename_all = "kebab-case", tag = "mode")]
pub enum OracleMode {
    /// Randomized rank, with an exact spot check on every `spot_check_every`-th
    /// poset (0 disables).
    Randomized {
        trials: u32,
        seed: u64,
        spot_check_every: usize,
    },
    Exact,
}

impl Default for OracleMode {
    fn default() -> Self {
        OracleMode::Randomized {
            trials: DEFAULT_TRIALS,
            seed: 0,
            spot_check_every: 100,
        }
    }
}

#[derive(Clone, Debug)]
pub struct SweepConfig {
    pub checks: Vec<Check>,
    pub oracle: OracleMode,
    pub max_n: usize,
}

impl Default for SweepConfig {
    fn default() -> Self {
        SweepConfig {
            checks: Check::ALL.to_vec(),
            oracle: OracleMode::default(),
            max_n: DEFAULT_MAX_N,
        }
    }
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct Mismatch {
    pub check: Check,
    pub poset: Poset,
    pub formula: i64,
    pub oracle: i64,
}

#[derive(Clone, Debug, Serialize)]
pub struct SweepReport {
    pub n: usize,
    pub poset_count: usize,
    pub oracle: OracleMode,
    pub mismatches: Vec<Mismatch>,
    pub checks_run: BTreeMap<Check, usize>,
    /// Wall time; left out of the JSON so reports are reproducible.
    #[serde(skip)]
    pub elapsed: Duration,
}

impl SweepReport {
    pub fn passed(&self) -> bool {
        self.mismatches.is_empty()
    }
}

#[derive(Default)]
struct Outcome {
    mismatches: Vec<Mismatch>,
    runs: BTreeMap<Check, usize>,
}

impl Outcome {
    fn record(&mut self, check: Check, poset: &Poset, formula: i64, oracle: i64, ok: bool) {
        *self.runs.entry(check).or_default() += 1;
        if !ok {
            self.mismatches.push(Mismatch {
                check,
                poset: poset.clone(),
                formula,
                oracle,
            });
        }
    }
}

struct Oracle {
    mode: OracleMode,
    exact_here: bool,
}

impl Oracle {
    // randomized spot checks are recorded as method-agreement runs
    fn rank(&self, m: &SymbolicMatrix, p: &Poset, out: &mut Outcome) -> Result<usize> {
        match self.mode {
            OracleMode::Exact => Ok(exact_rank(m)?.rank),
            OracleMode::Randomized { trials, seed, .. } => {
                let r = randomized_rank(m, trials, seed).rank;
                if self.exact_here {
                    let e = exact_rank(m)?.rank;
                    out.record(Check::MethodAgreement, p, r as i64, e as i64, r == e);
                }
                Ok(r)
            }
        }
    }

    fn index(&self, p: &Poset, variant: Variant, out: &mut Outcome) -> Result<usize> {
        let m = commutator_matrix(p, variant, LabelOrder::Lexicographic);
        Ok(m.dim() - self.rank(&m, p, out)?)
    }
}

fn check_poset(p: &Poset, checks: &[Check], oracle: &Oracle) -> Result<Outcome> {
    let mut out = Outcome::default();
    let wants = |c: Check| checks.contains(&c);
    let needs_nil = [
        Check::NilpotentFormula,
        Check::LowerBound,
        Check::Positivity,
        Check::HeightOne,
    ]
    .into_iter()
    .any(wants);
    let height = p.height();
    if needs_nil {
        let oracle_index = oracle.index(p, Variant::Nilpotent, &mut out)? as i64;
        let formula = nilpotent_index(p).index as i64;
        let bound = lower_bound(p) as i64;
        if wants(Check::NilpotentFormula) {
            out.record(
                Check::NilpotentFormula,
                p,
                formula,
                oracle_index,
                formula == oracle_index,
            );
        }
        if wants(Check::LowerBound) {
            out.record(
                Check::LowerBound,
                p,
                bound,
                oracle_index,
                oracle_index >= bound && formula >= bound,
            );
        }
        if wants(Check::Positivity) && p.rel_count() > 0 {
            out.record(
                Check::Positivity,
                p,
                formula,
                oracle_index,
                oracle_index >= 1 && formula >= 1,
            );
        }
        if wants(Check::HeightOne) && height <= 1 {
            out.record(
                Check::HeightOne,
                p,
                bound,
                oracle_index,
                oracle_index == bound,
            );
        }
    }
    if wants(Check::SolvableFormula) && height <= 2 {
        let formula = solvable_index_h2(p)?.index as i64;
        let oracle_index = oracle.index(p, Variant::Solvable, &mut out)? as i64;
        out.record(
            Check::SolvableFormula,
            p,
            formula,
            oracle_index,
            formula == oracle_index,
        );
    }
    if wants(Check::Reduction) && height >= 3 {
        let (_, steps) = reduce_to_height2(p);
        for step in &steps {
            let before =
                commutator_matrix(&step.before, Variant::Nilpotent, LabelOrder::Lexicographic);
            let after =
                commutator_matrix(&step.after, Variant::Nilpotent, LabelOrder::Lexicographic);
            let (rb, ra) = (
                oracle.rank(&before, &step.before, &mut out)? as i64,
                oracle.rank(&after, &step.after, &mut out)? as i64,
            );
            let h = step.before.height();
            let mb = step.before.middle_sections_at(h).len() as i64;
            let ma = step.after.middle_sections_at(h).len() as i64;
            let interior_ok = {
                let mut mapped: Vec<usize> = step
                    .before
                    .interior()
                    .into_iter()
                    .map(|q| step.map(q))
                    .collect();
                mapped.sort_unstable();
                mapped == step.after.interior()
                    && step.before.interior().into_iter().all(|q| {
                        let (a, b) = (
                            step.before.up_down(q).unwrap(),
                            step.after.up_down(step.map(q)).unwrap(),
                        );
                        a.d == b.d && a.u == b.u
                    })
            };
            out.record(
                Check::Reduction,
                &step.before,
                rb,
                ra,
                rb == ra && ma < mb && interior_ok,
            );
        }
    }
    if wants(Check::MethodAgreement) {
        let (trials, seed) = match oracle.mode {
            OracleMode::Randomized { trials, seed, .. } => (trials, seed),
            OracleMode::Exact => (DEFAULT_TRIALS, 0),
        };
        for variant in [Variant::Nilpotent, Variant::Solvable] {
            let m = commutator_matrix(p, variant, LabelOrder::Lexicographic);
            let e = exact_rank(&m)?.rank as i64;
            let r = randomized_rank(&m, trials, seed).rank as i64;
            out.record(Check::MethodAgreement, p, r, e, r == e);
        }
    }
    Ok(out)
}

/// Runs the selected checks over every naturally labeled poset on
/// `{1, ..., n}`.
pub fn sweep(n: usize, config: &SweepConfig) -> Result<SweepReport> {
    let start = Instant::now();
    let posets: Vec<Poset> = enumerate_posets_bounded(n, config.max_n)?.collect();
    let outcomes: Vec<Outcome> = posets
        .par_iter()
        .enumerate()
        .map(|(k, p)| {
            let exact_here = match config.oracle {
                OracleMode::Randomized {
                    spot_check_every, ..
                } => spot_check_every > 0 && k % spot_check_every == 0,
                OracleMode::Exact => false,
            };
            let oracle = Oracle {
                mode: config.oracle,
                exact_here,
            };
            check_poset(p, &config.checks, &oracle)
        })
        .collect::<Result<_>>()?;
    let mut mismatches = Vec::new();
    let mut checks_run: BTreeMap<Check, usize> = config.checks.iter().map(|&c| (c, 0)).collect();
    for o in outcomes {
        mismatches.extend(o.mismatches);
        for (c, k) in o.runs {
            *checks_run.entry(c).or_default() += k;
        }
    }
    Ok(SweepReport {
        n,
        poset_count: posets.len(),
        oracle: config.oracle,
        mismatches,
        checks_run,
        elapsed: start.elapsed(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    // every subset of {(i, j) : i < j} that is transitively closed
    fn brute_force_count(n: usize) -> usize {
        let pairs: Vec<(usize, usize)> = (1..=n)
            .flat_map(|i| (i + 1..=n).map(move |j| (i, j)))
            .collect();
        (0u64..1 << pairs.len())
            .filter(|&mask| {
                let has = |a: usize, b: usize| {
                    pairs
                        .iter()
                        .position(|&q| q == (a, b))
                        .is_some_and(|k| mask & (1 << k) != 0)
                };
                pairs
                    .iter()
                    .all(|&(a, b)| !has(a, b) || (b + 1..=n).all(|c| !has(b, c) || has(a, c)))
            })
            .count()
    }

    #[test]
    fn counts_match_brute_force() {
        let expected = [1, 1, 2, 7, 40, 357];
        for (n, &want) in expected.iter().enumerate() {
            let got = enumerate_posets(n).unwrap().count();
            assert_eq!(got, want, "n = {n}");
            assert_eq!(got, brute_force_count(n), "n = {n}");
        }
    }

    #[test]
    fn enumeration_has_no_duplicates() {
        let all: Vec<_> = enumerate_posets(5).unwrap().collect();
        let set: HashSet<_> = all.iter().cloned().collect();
        assert_eq!(set.len(), all.len());
    }

    #[test]
    fn resource_bound() {
        assert!(matches!(
            enumerate_posets(8),
            Err(Error::ResourceBound { n: 8, max: 7 })
        ));
        assert!(enumerate_posets_bounded(8, 8).is_ok());
    }

    #[test]
    fn sweep_n1_is_trivial() {
        let r = sweep(1, &SweepConfig::default()).unwrap();
        assert_eq!(r.poset_count, 1);
        assert!(r.passed());
        assert_eq!(r.checks_run[&Check::Positivity], 0);
    }

    #[test]
    fn sweep_n4_all_checks_pass() {
        let r = sweep(4, &SweepConfig::default()).unwrap();
        assert_eq!(r.poset_count, 40);
        assert!(r.passed(), "{:?}", r.mismatches);
        assert!(r.checks_run[&Check::Reduction] > 0);
    }

    #[test]
    fn sweep_reports_are_deterministic() {
        let cfg = SweepConfig::default();
        let a = serde_json::to_string(&sweep(4, &cfg).unwrap()).unwrap();
        let b = serde_json::to_string(&sweep(4, &cfg).unwrap()).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn check_names_round_trip() {
        for c in Check::ALL {
            assert_eq!(Check::parse(c.name()), Some(c));
        }
    }
}
