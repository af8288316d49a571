//! Degree-zero knot contact homology, presented as the cord algebra.
//!
//! Elements are integer sums of *broken words*: alternating sequences of
//! curly entries `{α}` with `α` in the peripheral subgroup and square entries
//! `[x]` with `x` in the knot group. Curly–curly sums reduce to a
//! [`NormalForm`] `(l, g)` in `Z[λ±] ⊕ Zπ`, where the product becomes
//! [`star_mul`] and [`psi`] is the injective ring map to `Zπ`.

mod broken;
mod parse;
mod reduce;
mod relations;
pub mod unknot;

use thiserror::Error;

use crate::group_ring::RingError;
use crate::rewriting::RewriteError;

pub use broken::{BrokenWord, BrokenWordSum, Entry, LaurentMonomial, Style};
pub use parse::parse_broken_sum;
pub use reduce::{cord_embed, laurent_in_ring, phi_hat, psi, reduce, reduce_with, star_mul, NormalForm, Strategy};
pub use relations::{
    check_relations, trefoil_relations, trefoil_relations_in_group_ring, unknot_test, RelationCheck, UnknotVerdict,
};

#[derive(Debug, Error)]
pub enum CordError {
    #[error(transparent)]
    Ring(#[from] RingError),
    #[error("expected a {expected:?} broken word, found {found:?}")]
    Style { expected: Style, found: Style },
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("malformed broken word: {0}")]
    Malformed(String),
    #[error("the unknot test needs the Seifert framing, got {framing}")]
    NotSeifert { framing: i64 },
}

impl From<RewriteError> for CordError {
    fn from(e: RewriteError) -> Self {
        CordError::Ring(RingError::Rewrite(e))
    }
}
