//! Height reduction: a poset `P` of height `n ≥ 3` is rewritten into `P₁`
//! with the same commutator-matrix rank, the same interior `P∖Ext(P)` with
//! unchanged up/down counts, and strictly fewer middle sections `M_n`.
//! Iterating reaches height two.
//!
//! With `{p_1 ≺ … ≺ p_{n−1}}` the chosen middle section:
//!
//! * Case 1 (`D_E(P,p_{n−1}) ≥ U_E(P,p_{n−1})`): every interior `q ≺ p_{n−1}`
//!   loses the relation `q ≺ p_{n−1}` and gains a fresh minimal element
//!   `q_{p_{n−1}} ≺ p_{n−1}`; a fresh maximal `p'_{n−1}` is put above every
//!   former predecessor of `p_{n−1}`.
//! * Case 2 (otherwise): the dual surgery at `p_1`.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::poset::{build_poset, Chain, Poset};

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
pub enum Case {
    /// Surgery below the top of the middle section.
    #[serde(rename = "1")]
    One,
    /// Surgery above the bottom of the middle section.
    #[serde(rename = "2")]
    Two,
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct NewElement {
    pub name: String,
    pub label: usize,
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct ReductionStep {
    pub chain: Chain,
    pub case: Case,
    /// `p_{n−1}` in case 1, `p_1` in case 2.
    pub pivot: usize,
    pub pivot_d_e: usize,
    pub pivot_u_e: usize,
    /// `relabel[i - 1]` is the label of old element `i` in `after`.
    pub relabel: Vec<usize>,
    pub new_elements: Vec<NewElement>,
    pub before: Poset,
    pub after: Poset,
    pub before_names: Vec<String>,
    pub after_names: Vec<String>,
}

impl ReductionStep {
    pub fn map(&self, old: usize) -> usize {
        self.relabel[old - 1]
    }
}

pub fn default_names(poset: &Poset) -> Vec<String> {
    poset.elements().map(|p| p.to_string()).collect()
}

pub fn reduce_once(poset: &Poset) -> Result<ReductionStep> {
    reduce_once_named(poset, &default_names(poset))
}

/// `names[i - 1]` is the display name of element `i`; fresh elements are
/// named after it (`5_3` and `5'` for case 1 at 5, `3^5` and `3'` for case
/// 2 at 3).
pub fn reduce_once_named(poset: &Poset, names: &[String]) -> Result<ReductionStep> {
    let height = poset.height();
    if height < 3 {
        return Err(Error::HeightTooSmall {
            height,
            required: 3,
        });
    }
    assert_eq!(names.len(), poset.n(), "one name per element");
    let chain = poset
        .middle_sections()?
        .into_iter()
        .next()
        .expect("a poset of height n has a chain with n + 1 elements");
    let top = *chain.last().unwrap();
    let top_profile = poset.up_down(top)?;
    let case = if top_profile.d_e >= top_profile.u_e {
        Case::One
    } else {
        Case::Two
    };
    let pivot = match case {
        Case::One => top,
        Case::Two => chain[0],
    };
    let pivot_profile = poset.up_down(pivot)?;

    // Relations over nodes: old elements 0..n, then fresh ones.
    let n = poset.n();
    let mut relations: Vec<(usize, usize)> = Vec::new();
    let mut fresh_min: Vec<String> = Vec::new();
    let mut fresh_max: Vec<String> = Vec::new();
    // fresh nodes referenced as (is_min, idx) until labels are fixed
    let mut fresh_rel: Vec<(Node, Node)> = Vec::new();
    let pname = &names[pivot - 1];
    match case {
        Case::One => {
            let split: Vec<usize> = poset
                .below(pivot)
                .filter(|&q| !poset.is_extremal(q))
                .collect();
            relations.extend(
                poset
                    .relations()
                    .filter(|&(a, b)| !(b == pivot && split.contains(&a))),
            );
            for &q in &split {
                fresh_rel.push((Node::Min(fresh_min.len()), Node::Old(pivot)));
                fresh_min.push(format!("{pname}_{}", names[q - 1]));
            }
            for q in poset.below(pivot) {
                fresh_rel.push((Node::Old(q), Node::Max(0)));
            }
            fresh_max.push(format!("{pname}'"));
        }
        Case::Two => {
            let split: Vec<usize> = poset
                .above(pivot)
                .filter(|&q| !poset.is_extremal(q))
                .collect();
            relations.extend(
                poset
                    .relations()
                    .filter(|&(a, b)| !(a == pivot && split.contains(&b))),
            );
            for &q in &split {
                fresh_rel.push((Node::Old(pivot), Node::Max(fresh_max.len())));
                fresh_max.push(format!("{pname}^{}", names[q - 1]));
            }
            for q in poset.above(pivot) {
                fresh_rel.push((Node::Min(0), Node::Old(q)));
            }
            fresh_min.push(format!("{pname}'"));
        }
    }

    // Fresh minimal elements go first, survivors keep their relative order,
    // fresh maximal elements go last; this is a natural labeling.
    let shift = fresh_min.len();
    let label = |node: Node| match node {
        Node::Min(k) => k + 1,
        Node::Old(p) => p + shift,
        Node::Max(k) => shift + n + k + 1,
    };
    let total = shift + n + fresh_max.len();
    let mut generators: Vec<(usize, usize)> = relations
        .iter()
        .map(|&(a, b)| (label(Node::Old(a)), label(Node::Old(b))))
        .collect();
    generators.extend(fresh_rel.iter().map(|&(a, b)| (label(a), label(b))));
    let after = build_poset(total, &generators)?;

    let mut after_names = Vec::with_capacity(total);
    after_names.extend(fresh_min.iter().cloned());
    after_names.extend(names.iter().cloned());
    after_names.extend(fresh_max.iter().cloned());
    let new_elements = fresh_min
        .iter()
        .enumerate()
        .map(|(k, name)| NewElement {
            name: name.clone(),
            label: label(Node::Min(k)),
        })
        .chain(fresh_max.iter().enumerate().map(|(k, name)| NewElement {
            name: name.clone(),
            label: label(Node::Max(k)),
        }))
        .collect();

    Ok(ReductionStep {
        chain,
        case,
        pivot,
        pivot_d_e: pivot_profile.d_e,
        pivot_u_e: pivot_profile.u_e,
        relabel: poset.elements().map(|p| label(Node::Old(p))).collect(),
        new_elements,
        before: poset.clone(),
        after,
        before_names: names.to_vec(),
        after_names,
    })
}

#[derive(Clone, Copy)]
enum Node {
    Old(usize),
    Min(usize),
    Max(usize),
}

/// Applies [`reduce_once`] until the height is at most two.
pub fn reduce_to_height2(poset: &Poset) -> (Poset, Vec<ReductionStep>) {
    let (p, _, steps) = reduce_to_height2_named(poset, &default_names(poset));
    (p, steps)
}

pub fn reduce_to_height2_named(
    poset: &Poset,
    names: &[String],
) -> (Poset, Vec<String>, Vec<ReductionStep>) {
    let mut current = poset.clone();
    let mut current_names = names.to_vec();
    let mut steps = Vec::new();
    while current.height() > 2 {
        let step = reduce_once_named(&current, &current_names).expect("height is at least three");
        current = step.after.clone();
        current_names = step.after_names.clone();
        steps.push(step);
    }
    (current, current_names, steps)
}
