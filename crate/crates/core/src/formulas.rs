//! Closed-form index formulas.
//!
//! Nilpotent case, any height:
//!
//! ```text
//! ind g^≺(P) = |Rel(P)| − 2 Σ_{p ∈ P∖Ext(P)} min(D(P,p), U(P,p))
//! ```
//!
//! Solvable case, height at most two:
//!
//! ```text
//! ind g(P) = |Rel_E(P)| − |P| + 2·C_P + Σ_{p ∈ P∖Ext(P)} UD(P,p)
//! ```
//!
//! with `UD(P,p) = |U(P,p) − D(P,p)|` when `U ≠ D` and `2` otherwise.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::poset::Poset;

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum FormulaKind {
    /// Height ≤ 1: every relation is extremal, index = `|Rel_E(P)|`.
    HeightOne,
    /// Height two, the block-diagonal case.
    HeightTwo,
    /// Height three or more.
    General,
    /// Solvable algebra, height ≤ 2.
    SolvableHeightTwo,
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct MinTerm {
    pub p: usize,
    pub d: usize,
    pub u: usize,
    pub min: usize,
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct UdTerm {
    pub p: usize,
    pub d: usize,
    pub u: usize,
    pub ud: usize,
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Terms {
    Nilpotent {
        rel_count: usize,
        min_terms: Vec<MinTerm>,
    },
    Solvable {
        rel_e: usize,
        elements: usize,
        components: usize,
        ud_terms: Vec<UdTerm>,
    },
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct IndexReport {
    pub index: usize,
    pub formula_used: FormulaKind,
    pub terms: Terms,
}

impl IndexReport {
    /// Recomputes the index from the recorded summands.
    pub fn recompose(&self) -> i64 {
        match &self.terms {
            Terms::Nilpotent {
                rel_count,
                min_terms,
            } => *rel_count as i64 - 2 * min_terms.iter().map(|t| t.min as i64).sum::<i64>(),
            Terms::Solvable {
                rel_e,
                elements,
                components,
                ud_terms,
            } => {
                *rel_e as i64 - *elements as i64
                    + 2 * *components as i64
                    + ud_terms.iter().map(|t| t.ud as i64).sum::<i64>()
            }
        }
    }
}

pub fn nilpotent_index(poset: &Poset) -> IndexReport {
    let min_terms: Vec<MinTerm> = poset
        .interior()
        .into_iter()
        .map(|p| {
            let (d, u) = (poset.below(p).count(), poset.above(p).count());
            MinTerm {
                p,
                d,
                u,
                min: d.min(u),
            }
        })
        .collect();
    let rel_count = poset.rel_count();
    let index = rel_count - 2 * min_terms.iter().map(|t| t.min).sum::<usize>();
    let formula_used = match poset.height() {
        0 | 1 => FormulaKind::HeightOne,
        2 => FormulaKind::HeightTwo,
        _ => FormulaKind::General,
    };
    IndexReport {
        index,
        formula_used,
        terms: Terms::Nilpotent {
            rel_count,
            min_terms,
        },
    }
}

/// `|Rel_E(P)|`, a lower bound for the nilpotent index.
pub fn lower_bound(poset: &Poset) -> usize {
    poset.rel_e().len()
}

fn ud(u: usize, d: usize) -> usize {
    if u != d {
        u.abs_diff(d)
    } else {
        2
    }
}

pub fn solvable_index_h2(poset: &Poset) -> Result<IndexReport> {
    let height = poset.height();
    if height > 2 {
        return Err(Error::HeightTooLarge { height, allowed: 2 });
    }
    let ud_terms: Vec<UdTerm> = poset
        .interior()
        .into_iter()
        .map(|p| {
            let (d, u) = (poset.below(p).count(), poset.above(p).count());
            UdTerm {
                p,
                d,
                u,
                ud: ud(u, d),
            }
        })
        .collect();
    let terms = Terms::Solvable {
        rel_e: poset.rel_e().len(),
        elements: poset.n(),
        components: poset.components(),
        ud_terms,
    };
    let mut report = IndexReport {
        index: 0,
        formula_used: FormulaKind::SolvableHeightTwo,
        terms,
    };
    let value = report.recompose();
    report.index = usize::try_from(value).expect("solvable index formula is nonnegative");
    Ok(report)
}
