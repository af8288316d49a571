use std::cmp::Ordering;

use serde::{Deserialize, Serialize};

use super::RewriteError;
use crate::word::Letter;

/// Well-order on words used to orient rewrite rules.
///
/// `precedence` lists every letter of the alphabet (generators and inverses),
/// smallest first. The weighted variant compares total weight before falling
/// back to shortlex; weights are parallel to `precedence`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum TermOrder {
    ShortLex {
        precedence: Vec<Letter>,
    },
    WeightedShortLex {
        precedence: Vec<Letter>,
        weights: Vec<u64>,
    },
}

impl TermOrder {
    /// Shortlex with each generator immediately followed by its inverse.
    pub fn shortlex(rank: usize) -> Self {
        TermOrder::ShortLex {
            precedence: interleaved(rank),
        }
    }

    pub fn precedence(&self) -> &[Letter] {
        match self {
            TermOrder::ShortLex { precedence } | TermOrder::WeightedShortLex { precedence, .. } => precedence,
        }
    }

    /// Checks the precedence is a permutation of the `2 * rank` letters and
    /// weights are positive, then returns a compiled comparator.
    pub(super) fn compile(&self, rank: usize) -> Result<CompiledOrder, RewriteError> {
        let prec = self.precedence();
        let size = 2 * rank;
        if prec.len() != size {
            return Err(RewriteError::OrderNotTotal(format!(
                "precedence lists {} letters, alphabet has {size}",
                prec.len()
            )));
        }
        let mut position = vec![usize::MAX; size];
        for (i, l) in prec.iter().enumerate() {
            let r = l.rank();
            if r >= size {
                return Err(RewriteError::OrderNotTotal(format!("letter {} outside the alphabet", l.code())));
            }
            if position[r] != usize::MAX {
                return Err(RewriteError::OrderNotTotal(format!("letter {} listed twice", l.code())));
            }
            position[r] = i;
        }
        let weight = match self {
            TermOrder::ShortLex { .. } => None,
            TermOrder::WeightedShortLex { weights, .. } => {
                if weights.len() != size {
                    return Err(RewriteError::OrderNotTotal(format!(
                        "{} weights for {size} letters",
                        weights.len()
                    )));
                }
                if weights.contains(&0) {
                    return Err(RewriteError::OrderNotTotal("weights must be positive".into()));
                }
                let mut w = vec![0; size];
                for (l, &x) in prec.iter().zip(weights) {
                    w[l.rank()] = x;
                }
                Some(w)
            }
        };
        Ok(CompiledOrder { position, weight })
    }
}

pub(super) fn interleaved(rank: usize) -> Vec<Letter> {
    (0..rank).flat_map(|g| [Letter::gen(g), Letter::inv(g)]).collect()
}

#[derive(Clone, Debug)]
pub(super) struct CompiledOrder {
    position: Vec<usize>,
    weight: Option<Vec<u64>>,
}

impl CompiledOrder {
    fn weight_of(&self, w: &[Letter]) -> u64 {
        match &self.weight {
            Some(t) => w.iter().map(|l| t[l.rank()]).sum(),
            None => 0,
        }
    }

    pub(super) fn cmp(&self, u: &[Letter], v: &[Letter]) -> Ordering {
        self.weight_of(u)
            .cmp(&self.weight_of(v))
            .then(u.len().cmp(&v.len()))
            .then_with(|| {
                u.iter()
                    .map(|l| self.position[l.rank()])
                    .cmp(v.iter().map(|l| self.position[l.rank()]))
            })
    }
}
