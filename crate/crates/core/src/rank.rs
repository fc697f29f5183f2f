//! Generic rank of symbolic commutator matrices and the index
//! `dim g − rank C(g)`.
//!
//! Two independent backends:
//!
//! * [`exact_rank`]: fraction-free (Bareiss) elimination over ℤ[x], where the
//!   symbols of the matrix are the polynomial variables. Every intermediate
//!   entry is a minor, so it stays a polynomial and the divisions are exact.
//! * [`randomized_rank`]: substitute uniform values from `GF(2^61 − 1)` for the
//!   symbols and eliminate numerically. A nonzero minor of degree `d` vanishes
//!   at a random point with probability at most `d / p`, so each trial can only
//!   under-report, and the maximum over trials is reported.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::lie::{commutator_matrix, BasisElement, LabelOrder, SymbolicMatrix, Variant};
use crate::poly::Poly;
use crate::poset::Poset;

/// The Mersenne prime `2^61 − 1` used for randomized evaluation.
pub const MERSENNE_61: u64 = (1 << 61) - 1;

pub const DEFAULT_TRIALS: u32 = 3;

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
#[serde(rename_all = "lowercase", tag = "method")]
pub enum RankMethod {
    Exact,
    Randomized { trials: u32, seed: u64 },
}

impl Default for RankMethod {
    fn default() -> Self {
        RankMethod::Randomized {
            trials: DEFAULT_TRIALS,
            seed: 0,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum MethodKind {
    Exact,
    Randomized,
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct RankResult {
    pub rank: usize,
    pub method: MethodKind,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub trials: Option<u32>,
    #[serde(
        skip_serializing_if = "Option::is_none",
        serialize_with = "serialize_ratio"
    )]
    pub failure_bound: Option<BigRational>,
}

fn serialize_ratio<S: Serializer>(
    r: &Option<BigRational>,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    match r {
        Some(r) => s.serialize_str(&r.to_string()),
        None => s.serialize_none(),
    }
}

/// Pivot rule for the exact backend.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Default)]
pub enum Pivoting {
    /// First nonzero entry of the trailing submatrix, scanning row-major.
    FirstNonzero,
    /// Fewest polynomial terms, then smallest Markowitz count
    /// `(row nonzeros − 1)(column nonzeros − 1)`, then row-major position.
    #[default]
    Sparsest,
}

/// Limits for the exact backend. Exceeding either aborts with
/// [`Error::OverflowUnrepresentable`].
#[derive(Clone, Copy, Debug)]
pub struct ExactBudget {
    pub max_terms: usize,
    pub max_coefficient_bits: u64,
    pub pivoting: Pivoting,
}

impl Default for ExactBudget {
    fn default() -> Self {
        ExactBudget {
            max_terms: 200_000,
            max_coefficient_bits: 4096,
            pivoting: Pivoting::default(),
        }
    }
}

fn choose_pivot(a: &[Vec<Poly>], k: usize, pivoting: Pivoting) -> Option<(usize, usize)> {
    let (nr, nc) = (a.len(), a.first().map_or(0, Vec::len));
    let mut nonzero = (k..nr)
        .flat_map(|i| (k..nc).map(move |j| (i, j)))
        .filter(|&(i, j)| !a[i][j].is_zero());
    match pivoting {
        Pivoting::FirstNonzero => nonzero.next(),
        Pivoting::Sparsest => {
            let row_nnz: Vec<usize> = (0..nr)
                .map(|i| (k..nc).filter(|&j| i >= k && !a[i][j].is_zero()).count())
                .collect();
            let col_nnz: Vec<usize> = (0..nc)
                .map(|j| (k..nr).filter(|&i| j >= k && !a[i][j].is_zero()).count())
                .collect();
            nonzero.min_by_key(|&(i, j)| (a[i][j].len(), (row_nnz[i] - 1) * (col_nnz[j] - 1), i, j))
        }
    }
}

// Connected components of the bipartite row/column incidence graph of the
// nonzero entries. Rank is additive over them.
fn blocks(m: &SymbolicMatrix) -> Vec<(Vec<usize>, Vec<usize>)> {
    let (r, c) = (m.rows(), m.cols());
    let mut parent: Vec<usize> = (0..r + c).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    let mut touched = vec![false; r + c];
    for i in 0..r {
        for j in 0..c {
            if !m.entry(i, j).is_zero() {
                touched[i] = true;
                touched[r + j] = true;
                let (a, b) = (find(&mut parent, i), find(&mut parent, r + j));
                if a != b {
                    parent[a] = b;
                }
            }
        }
    }
    let mut groups: HashMap<usize, (Vec<usize>, Vec<usize>)> = HashMap::new();
    let mut order = Vec::new();
    for x in (0..r + c).filter(|&x| touched[x]) {
        let root = find(&mut parent, x);
        let g = groups.entry(root).or_insert_with(|| {
            order.push(root);
            Default::default()
        });
        if x < r {
            g.0.push(x);
        } else {
            g.1.push(x - r);
        }
    }
    order
        .into_iter()
        .map(|k| groups.remove(&k).unwrap())
        .collect()
}

pub fn exact_rank(m: &SymbolicMatrix) -> Result<RankResult> {
    exact_rank_with_budget(m, ExactBudget::default())
}

pub fn exact_rank_with_budget(m: &SymbolicMatrix, budget: ExactBudget) -> Result<RankResult> {
    let mut rank = 0;
    for (rows, cols) in blocks(m) {
        rank += bareiss_block(m, &rows, &cols, budget)?;
    }
    Ok(RankResult {
        rank,
        method: MethodKind::Exact,
        trials: None,
        failure_bound: None,
    })
}

fn bareiss_block(
    m: &SymbolicMatrix,
    rows: &[usize],
    cols: &[usize],
    budget: ExactBudget,
) -> Result<usize> {
    let mut vars: HashMap<BasisElement, usize> = HashMap::new();
    for &i in rows {
        for &j in cols {
            for (e, _) in m.entry(i, j).terms() {
                let next = vars.len();
                vars.entry(e).or_insert(next);
            }
        }
    }
    let nvars = vars.len();
    let mut a: Vec<Vec<Poly>> = rows
        .iter()
        .map(|&i| {
            cols.iter()
                .map(|&j| Poly::linear(nvars, m.entry(i, j).terms().map(|(e, c)| (vars[&e], c))))
                .collect()
        })
        .collect();
    let (nr, nc) = (rows.len(), cols.len());
    let mut prev = Poly::one(nvars);
    let mut k = 0;
    while k < nr.min(nc) {
        let Some((pi, pj)) = choose_pivot(&a, k, budget.pivoting) else {
            break;
        };
        a.swap(k, pi);
        for row in a.iter_mut() {
            row.swap(k, pj);
        }
        let (done, rest) = a.split_at_mut(k + 1);
        let pivot_row = &done[k];
        let pivot = &pivot_row[k];
        for row in rest.iter_mut() {
            let aik = row[k].clone();
            for (cell, above) in row[k + 1..nc].iter_mut().zip(&pivot_row[k + 1..nc]) {
                let num = pivot.mul(cell).sub(&aik.mul(above));
                let next = num.exact_div(&prev).ok_or_else(|| {
                    Error::OverflowUnrepresentable("fraction-free step was not exact".into())
                })?;
                if next.len() > budget.max_terms {
                    return Err(Error::OverflowUnrepresentable(format!(
                        "entry with {} terms exceeds {}",
                        next.len(),
                        budget.max_terms
                    )));
                }
                if next.max_coefficient_bits() > budget.max_coefficient_bits {
                    return Err(Error::OverflowUnrepresentable(format!(
                        "coefficient exceeds {} bits",
                        budget.max_coefficient_bits
                    )));
                }
                *cell = next;
            }
            row[k] = Poly::zero(nvars);
        }
        prev = pivot.clone();
        k += 1;
    }
    Ok(k)
}

fn mul_mod(a: u64, b: u64) -> u64 {
    ((a as u128 * b as u128) % MERSENNE_61 as u128) as u64
}

fn pow_mod(mut base: u64, mut exp: u64) -> u64 {
    let mut acc = 1;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base);
        }
        base = mul_mod(base, base);
        exp >>= 1;
    }
    acc
}

fn to_field(c: i64) -> u64 {
    c.rem_euclid(MERSENNE_61 as i64) as u64
}

/// Rank of a numeric matrix over `GF(2^61 − 1)`.
pub fn rank_mod_p(mut a: Vec<Vec<u64>>) -> usize {
    let nr = a.len();
    let nc = a.first().map_or(0, Vec::len);
    let mut rank = 0;
    for col in 0..nc {
        let Some(piv) = (rank..nr).find(|&i| a[i][col] != 0) else {
            continue;
        };
        a.swap(rank, piv);
        let inv = pow_mod(a[rank][col], MERSENNE_61 - 2);
        let (done, rest) = a.split_at_mut(rank + 1);
        let pivot_row = &done[rank];
        for row in rest.iter_mut().filter(|row| row[col] != 0) {
            let factor = mul_mod(row[col], inv);
            for (x, &p) in row[col..nc].iter_mut().zip(&pivot_row[col..nc]) {
                *x = (*x + MERSENNE_61 - mul_mod(factor, p)) % MERSENNE_61;
            }
        }
        rank += 1;
        if rank == nr {
            break;
        }
    }
    rank
}

fn trial_rank(m: &SymbolicMatrix, symbols: &[BasisElement], seed: u64, trial: u32) -> usize {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial as u64);
    let values: HashMap<BasisElement, u64> = symbols
        .iter()
        .map(|&e| (e, rng.gen_range(0..MERSENNE_61)))
        .collect();
    let numeric = (0..m.rows())
        .map(|i| {
            (0..m.cols())
                .map(|j| {
                    m.entry(i, j).terms().fold(0, |acc, (e, c)| {
                        (acc + mul_mod(to_field(c), values[&e])) % MERSENNE_61
                    })
                })
                .collect()
        })
        .collect();
    rank_mod_p(numeric)
}

/// Max over `trials` random evaluations. Trial `t` draws its values from the
/// ChaCha stream `t` of `seed`, so adding trials never lowers the result.
pub fn randomized_rank(m: &SymbolicMatrix, trials: u32, seed: u64) -> RankResult {
    let trials = trials.max(1);
    let symbols = m.symbols();
    let rank = (0..trials)
        .into_par_iter()
        .map(|t| trial_rank(m, &symbols, seed, t))
        .max()
        .unwrap_or(0);
    let per_trial = BigRational::new(BigInt::from(m.dim()), BigInt::from(MERSENNE_61));
    let bound = num_traits::pow(per_trial, trials as usize);
    RankResult {
        rank,
        method: MethodKind::Randomized,
        trials: Some(trials),
        failure_bound: Some(bound),
    }
}

pub fn rank(m: &SymbolicMatrix, method: RankMethod) -> Result<RankResult> {
    match method {
        RankMethod::Exact => exact_rank(m),
        RankMethod::Randomized { trials, seed } => Ok(randomized_rank(m, trials, seed)),
    }
}

/// `dim g − rank C(g)`; 0 for the zero-dimensional algebra.
pub fn index_via_rank(poset: &Poset, variant: Variant, method: RankMethod) -> Result<usize> {
    let m = commutator_matrix(poset, variant, LabelOrder::Lexicographic);
    Ok(m.dim() - rank(&m, method)?.rank)
}
