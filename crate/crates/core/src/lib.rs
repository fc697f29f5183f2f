//! Index of nilpotent Lie poset algebras `g^≺(P)` and, for height at most
//! two, of solvable Lie poset algebras `g(P)`.
//!
//! The index is computed two independent ways: from closed-form poset
//! statistics ([`formulas`]) and as `dim g − rank C(g)` where `C(g)` is the
//! symbolic commutator matrix ([`lie`], [`rank`]). [`reduction`] implements
//! the rank-preserving height reduction behind the general formula, and
//! [`verify`] cross-checks everything over all small posets.

pub mod cli;
pub mod error;
pub mod formulas;
pub mod io;
pub mod lie;
mod poly;
pub mod poset;
pub mod rank;
pub mod reduction;
pub mod verify;

pub use error::{Error, Result};
pub use formulas::{lower_bound, nilpotent_index, solvable_index_h2, IndexReport};
pub use lie::{
    bracket, commutator_matrix, BasisElement, LabelOrder, LinearForm, SymbolicMatrix, Variant,
};
pub use poset::{build_poset, Poset, PosetStats, UpDownProfile};
pub use rank::{
    exact_rank, index_via_rank, randomized_rank, ExactBudget, Pivoting, RankMethod, RankResult,
};
pub use reduction::{reduce_once, reduce_to_height2, ReductionStep};
pub use verify::{enumerate_posets, sweep, SweepConfig, SweepReport};
