//! Word problems in the knot group.
//!
//! A [`Backend`] turns words over a presentation into canonical words. Three
//! kinds exist: a Knuth–Bendix [`RewriteSystem`], the syllable normal form of
//! a torus-knot group reached through a [`TorusMap`], and free abelian groups.
//! An incomplete rewrite system never claims a normal form; equality on it is
//! [`Decision::Undecided`] unless both sides happen to reduce to the same word.

mod kb;
mod order;
mod torus;

use thiserror::Error;

use crate::presentations::{canonical_cyclic, simplify, GroupPresentation, KnotGroup};
use crate::word::Word;

pub use kb::{kb_complete, Completion, KbBudget, RewriteRule, RewriteSystem};
pub use order::TermOrder;
pub use torus::{torus_nf, torus_normal_form, TorusMap, TorusWord};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RewriteError {
    #[error("term order is not total on the alphabet: {0}")]
    OrderNotTotal(String),
    #[error("invalid budget: {0}")]
    Budget(String),
    #[error("word equality undecided within the completion budget")]
    Undecided,
    #[error("p = {p} and q = {q} are not coprime positive integers")]
    NotCoprime { p: u32, q: u32 },
    #[error("invalid torus generator map: {0}")]
    BadTorusMap(String),
    #[error("free abelian backend: {0}")]
    NotAbelian(String),
    #[error("backend alphabet does not match the presentation")]
    AlphabetMismatch,
    #[error("malformed rewrite system: {0}")]
    Malformed(String),
}

/// Three-valued answer of [`Backend::equal`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Decision {
    True,
    False,
    Undecided,
}

impl Decision {
    pub fn as_str(self) -> &'static str {
        match self {
            Decision::True => "true",
            Decision::False => "false",
            Decision::Undecided => "undecided",
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum BackendKind {
    Rewrite(RewriteSystem),
    Torus(TorusMap),
    FreeAbelian { rank: usize },
}

/// A decision procedure for the word problem of one presentation.
#[derive(Clone, Debug, PartialEq)]
pub struct Backend {
    presentation: GroupPresentation,
    kind: BackendKind,
}

impl Backend {
    pub fn rewrite(presentation: GroupPresentation, system: RewriteSystem) -> Result<Self, RewriteError> {
        if system.generators() != presentation.generators() {
            return Err(RewriteError::AlphabetMismatch);
        }
        Ok(Backend {
            presentation,
            kind: BackendKind::Rewrite(system),
        })
    }

    /// Runs completion and wraps the result, complete or not.
    pub fn complete(presentation: GroupPresentation, order: &TermOrder, budget: KbBudget) -> Result<Self, RewriteError> {
        let c = kb_complete(&presentation, order, budget)?;
        Backend::rewrite(presentation, c.into_system())
    }

    pub fn torus(presentation: GroupPresentation, map: TorusMap) -> Result<Self, RewriteError> {
        if map.to_torus.len() != presentation.rank() {
            return Err(RewriteError::AlphabetMismatch);
        }
        Ok(Backend {
            presentation,
            kind: BackendKind::Torus(map),
        })
    }

    /// `Z^rank` on the presentation's generators. Every relator must have
    /// zero exponent sums; that relators generate all commutators is the
    /// caller's claim when `rank > 1`.
    pub fn free_abelian(presentation: GroupPresentation) -> Result<Self, RewriteError> {
        if let Some(i) = presentation
            .exponent_matrix()
            .iter()
            .position(|row| row.iter().any(|&e| e != 0))
        {
            return Err(RewriteError::NotAbelian(format!("relator {i} has nonzero exponent sums")));
        }
        let rank = presentation.rank();
        Ok(Backend {
            presentation,
            kind: BackendKind::FreeAbelian { rank },
        })
    }

    /// The trefoil group `⟨m, a | m a m = a m a⟩` through `x = a m a`,
    /// `y = a m` (so `m = x^-1 y^2`, `a = y^-1 x`).
    pub fn standard_trefoil(presentation: GroupPresentation) -> Result<Self, RewriteError> {
        let (Some(m), Some(a)) = (presentation.generator_index("m"), presentation.generator_index("a")) else {
            return Err(RewriteError::AlphabetMismatch);
        };
        let mut to = vec![Word::identity(); presentation.rank()];
        to[m] = Word::from_codes(&[-1, 2, 2]);
        to[a] = Word::from_codes(&[-2, 1]);
        let from = [
            Word::from_letters(vec![gen(a), gen(m), gen(a)]),
            Word::from_letters(vec![gen(a), gen(m)]),
        ];
        let map = TorusMap::new(&presentation, 2, 3, to, from)?;
        Backend::torus(presentation, map)
    }

    /// Picks a backend for a knot group. The group is first simplified
    /// (the simplified group is returned alongside, since backend words live
    /// in its alphabet). One generator gives `Z`; a certified map to
    /// `T(2, q)` gives the torus backend; otherwise Knuth–Bendix completion
    /// under shortlex within `budget`.
    pub fn auto(k: &KnotGroup, budget: KbBudget) -> Result<(KnotGroup, Backend), RewriteError> {
        let s = simplify(k);
        let pres = s.presentation.clone();
        if pres.rank() == 1 && pres.relators().is_empty() {
            let b = Backend::free_abelian(pres)?;
            return Ok((s, b));
        }
        let qmax = pres.relators().iter().map(Word::len).max().unwrap_or(0).max(3) as u32;
        for q in (3..=qmax).step_by(2) {
            if let Ok(backend) = Backend::torus_two_q(pres.clone(), q) {
                return Ok((s, backend));
            }
        }
        let backend = Backend::complete(pres.clone(), &TermOrder::shortlex(pres.rank()), budget)?;
        Ok((s, backend))
    }

    /// Torus backend through a certified isomorphism onto the `T(2, q)`
    /// group, if one of the supported shape is found.
    pub fn torus_two_q(presentation: GroupPresentation, q: u32) -> Result<Self, RewriteError> {
        if q < 3 || q.is_multiple_of(2) {
            return Err(RewriteError::NotCoprime { p: 2, q });
        }
        match torus::search_two_q(&presentation, q) {
            Some((map, a, b)) if certify_two_q(&presentation, a, b, q) => Backend::torus(presentation, map),
            _ => Err(RewriteError::BadTorusMap(format!("no certified map onto the (2,{q}) torus-knot group"))),
        }
    }

    pub fn presentation(&self) -> &GroupPresentation {
        &self.presentation
    }

    pub fn kind(&self) -> &BackendKind {
        &self.kind
    }

    /// Whether every equality question gets a definite answer.
    pub fn is_decisive(&self) -> bool {
        match &self.kind {
            BackendKind::Rewrite(s) => s.is_confluent(),
            _ => true,
        }
    }

    pub fn describe(&self) -> String {
        match &self.kind {
            BackendKind::Rewrite(s) => format!(
                "rewrite({}, {} rules)",
                if s.is_confluent() { "confluent" } else { "incomplete" },
                s.rules().len()
            ),
            BackendKind::Torus(m) => format!("torus({},{})", m.p, m.q),
            BackendKind::FreeAbelian { rank } => format!("free-abelian({rank})"),
        }
    }

    fn check_alphabet(&self, w: &Word) -> Result<(), RewriteError> {
        match w.max_generator() {
            Some(g) if g >= self.presentation.rank() => Err(RewriteError::AlphabetMismatch),
            _ => Ok(()),
        }
    }

    /// Canonical representative of `w`; idempotent.
    pub fn normalize(&self, w: &Word) -> Result<Word, RewriteError> {
        self.check_alphabet(w)?;
        match &self.kind {
            BackendKind::Rewrite(s) => {
                if !s.is_confluent() {
                    return Err(RewriteError::Undecided);
                }
                Ok(s.reduce(w))
            }
            BackendKind::Torus(m) => Ok(m.pull_back(&m.image(w))),
            BackendKind::FreeAbelian { rank } => {
                let v = w.exponent_vector(*rank);
                let mut out = Word::identity();
                for (g, e) in v.into_iter().enumerate() {
                    out = out.concat(&Word::generator(g).pow(e));
                }
                Ok(out)
            }
        }
    }

    pub fn equal(&self, u: &Word, v: &Word) -> Decision {
        if self.check_alphabet(u).is_err() || self.check_alphabet(v).is_err() {
            return Decision::Undecided;
        }
        match &self.kind {
            BackendKind::Rewrite(s) if !s.is_confluent() => {
                // rules are consequences of the relators, so a common reduct
                // proves equality; anything else is inconclusive
                if s.reduce(u) == s.reduce(v) {
                    Decision::True
                } else {
                    Decision::Undecided
                }
            }
            _ => {
                let (a, b) = (self.normalize(u), self.normalize(v));
                match (a, b) {
                    (Ok(a), Ok(b)) if a == b => Decision::True,
                    (Ok(_), Ok(_)) => Decision::False,
                    _ => Decision::Undecided,
                }
            }
        }
    }

    pub fn is_identity(&self, w: &Word) -> Decision {
        self.equal(w, &Word::identity())
    }
}

fn gen(g: usize) -> crate::word::Letter {
    crate::word::Letter::gen(g)
}

/// The candidate map sends `A, B` to the meridians `a, b` of `T(2, q)` and
/// its inverse sends `y ↦ AB`, `x ↦ (AB)^k A`. Every other generator was
/// solved from a relator, so the inverse composed with the map fixes all
/// generators. The inverse is a homomorphism once `((AB)^k A)^2 = (AB)^q`
/// holds in the presentation; that identity is checked against the relators
/// directly or with a small partial rewriting system (sound either way).
fn certify_two_q(pres: &GroupPresentation, a: usize, b: usize, q: u32) -> bool {
    let k = (q as i64 - 1) / 2;
    let ab = Word::from_letters(vec![gen(a), gen(b)]);
    let x = ab.pow(k).concat(&Word::generator(a));
    let r = x.pow(2).concat(&ab.pow(-(q as i64)));
    let target = canonical_cyclic(&r);
    if target.is_empty() || pres.relators().iter().any(|rel| canonical_cyclic(rel) == target) {
        return true;
    }
    let budget = KbBudget {
        max_rules: 500,
        max_length: 40,
    };
    match kb_complete(pres, &TermOrder::shortlex(pres.rank()), budget) {
        Ok(c) => c.system().reduce(&r).is_empty(),
        Err(_) => false,
    }
}

/// `⟨x, y, c | x² = c, y³ = c, c central⟩` with a weighted order in which
/// `c` is lightest and `x^-1`, `y^-1` are heavy enough to be rewritten away.
/// Completion gives a ten-rule confluent system whose normal forms are the
/// syllable forms of [`torus_normal_form`] for `(2, 3)`.
pub fn trefoil_auxiliary() -> (GroupPresentation, TermOrder) {
    use crate::word::Letter;
    let pres = GroupPresentation::from_text(&["x", "y", "c"], &["x^2 c^-1", "y^3 c^-1", "c x c^-1 x^-1", "c y c^-1 y^-1"])
        .expect("fixed presentation parses");
    let precedence = vec![Letter::gen(2), Letter::inv(2), Letter::gen(0), Letter::inv(0), Letter::gen(1), Letter::inv(1)];
    let order = TermOrder::WeightedShortLex {
        precedence,
        weights: vec![1, 1, 1, 3, 1, 4],
    };
    (pres, order)
}
