//! The integral group ring `Zπ` over a word-problem backend.
//!
//! Elements are finite maps from backend normal forms to nonzero integers,
//! kept in shortlex key order. Any equality question the backend cannot
//! settle aborts the operation instead of merging or separating keys.

mod laurent;

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use thiserror::Error;

use crate::presentations::{KnotGroup, LinkingForm, PeripheralSystem, PresentationError};
use crate::rewriting::{Backend, RewriteError};
use crate::word::Word;

pub use laurent::LaurentPoly;
pub(crate) use laurent::format_terms;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RingError {
    #[error("elements live over different backends")]
    BackendMismatch,
    #[error(transparent)]
    Rewrite(#[from] RewriteError),
    #[error(transparent)]
    Presentation(#[from] PresentationError),
    #[error("linking-number grading needs the Seifert framing (framing is {framing})")]
    NotSeifert { framing: i64 },
}

/// A knot group with a backend: the context every [`GroupRingElement`]
/// points to.
#[derive(Debug)]
pub struct GroupRing {
    backend: Backend,
    peripheral: PeripheralSystem,
    linking: LinkingForm,
}

impl GroupRing {
    /// Checks the peripheral system against the presentation (abelian
    /// invariants) and that the backend is built on the same presentation.
    pub fn new(knot: &KnotGroup, backend: Backend) -> Result<Arc<Self>, RingError> {
        if backend.presentation().generators() != knot.presentation.generators() {
            return Err(RingError::Rewrite(RewriteError::AlphabetMismatch));
        }
        let linking = knot.validate()?;
        Ok(Arc::new(GroupRing {
            backend,
            peripheral: knot.peripheral.clone(),
            linking,
        }))
    }

    pub fn backend(&self) -> &Backend {
        &self.backend
    }

    pub fn peripheral(&self) -> &PeripheralSystem {
        &self.peripheral
    }

    pub fn meridian(&self) -> &Word {
        &self.peripheral.meridian
    }

    pub fn longitude(&self) -> &Word {
        &self.peripheral.longitude
    }

    pub fn format_word(&self, w: &Word) -> String {
        self.backend.presentation().format_word(w)
    }

    /// `λ^a μ^b` as a word.
    pub fn peripheral_word(&self, a: i64, b: i64) -> Word {
        self.peripheral.longitude.pow(a).concat(&self.peripheral.meridian.pow(b))
    }

    /// Linking number with the knot; requires the Seifert framing.
    pub fn lk(&self, w: &Word) -> Result<i64, RingError> {
        if !self.peripheral.is_seifert() {
            return Err(RingError::NotSeifert {
                framing: self.peripheral.framing,
            });
        }
        Ok(self.linking.of(w))
    }
}

/// An element of `Zπ`.
#[derive(Clone)]
pub struct GroupRingElement {
    ring: Arc<GroupRing>,
    terms: BTreeMap<Word, i64>,
}

impl PartialEq for GroupRingElement {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.ring, &other.ring) && self.terms == other.terms
    }
}

impl Eq for GroupRingElement {}

impl fmt::Debug for GroupRingElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GroupRingElement({self})")
    }
}

impl fmt::Display for GroupRingElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms = self.terms.iter().map(|(w, &c)| {
            let m = if w.is_empty() { String::new() } else { self.ring.format_word(w) };
            (m, c)
        });
        write!(f, "{}", format_terms(terms))
    }
}

impl GroupRingElement {
    pub fn zero(ring: &Arc<GroupRing>) -> Self {
        GroupRingElement {
            ring: Arc::clone(ring),
            terms: BTreeMap::new(),
        }
    }

    pub fn one(ring: &Arc<GroupRing>) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(Word::identity(), 1);
        GroupRingElement {
            ring: Arc::clone(ring),
            terms,
        }
    }

    pub fn from_word(ring: &Arc<GroupRing>, w: &Word) -> Result<Self, RingError> {
        Self::from_terms(ring, [(w.clone(), 1)])
    }

    pub fn from_terms(ring: &Arc<GroupRing>, terms: impl IntoIterator<Item = (Word, i64)>) -> Result<Self, RingError> {
        let mut x = GroupRingElement::zero(ring);
        for (w, c) in terms {
            let key = ring.backend.normalize(&w)?;
            x.add_key(key, c);
        }
        Ok(x)
    }

    /// The meridian `μ` as a ring element.
    pub fn mu(ring: &Arc<GroupRing>) -> Result<Self, RingError> {
        Self::from_word(ring, ring.meridian())
    }

    /// The longitude `λ` as a ring element.
    pub fn lambda(ring: &Arc<GroupRing>) -> Result<Self, RingError> {
        Self::from_word(ring, ring.longitude())
    }

    fn add_key(&mut self, key: Word, c: i64) {
        if c == 0 {
            return;
        }
        match self.terms.entry(key) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if *e.get() == 0 {
                    e.remove();
                }
            }
        }
    }

    pub fn ring(&self) -> &Arc<GroupRing> {
        &self.ring
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in shortlex key order.
    pub fn terms(&self) -> impl Iterator<Item = (&Word, i64)> {
        self.terms.iter().map(|(w, &c)| (w, c))
    }

    pub fn coeff(&self, key: &Word) -> i64 {
        self.terms.get(key).copied().unwrap_or(0)
    }

    fn same_ring(&self, other: &Self) -> Result<(), RingError> {
        if Arc::ptr_eq(&self.ring, &other.ring) {
            Ok(())
        } else {
            Err(RingError::BackendMismatch)
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self, RingError> {
        self.same_ring(other)?;
        let mut x = self.clone();
        for (w, &c) in &other.terms {
            x.add_key(w.clone(), c);
        }
        Ok(x)
    }

    pub fn sub(&self, other: &Self) -> Result<Self, RingError> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        self.scale(-1)
    }

    pub fn scale(&self, k: i64) -> Self {
        let mut x = GroupRingElement::zero(&self.ring);
        if k != 0 {
            for (w, &c) in &self.terms {
                x.terms.insert(w.clone(), c * k);
            }
        }
        x
    }

    pub fn mul(&self, other: &Self) -> Result<Self, RingError> {
        self.same_ring(other)?;
        let mut x = GroupRingElement::zero(&self.ring);
        for (u, &a) in &self.terms {
            for (v, &b) in &other.terms {
                let key = self.ring.backend.normalize(&u.concat(v))?;
                x.add_key(key, a * b);
            }
        }
        Ok(x)
    }

    /// `w · self` for a group element `w`.
    pub fn left_mul_word(&self, w: &Word) -> Result<Self, RingError> {
        let mut x = GroupRingElement::zero(&self.ring);
        for (u, &a) in &self.terms {
            x.add_key(self.ring.backend.normalize(&w.concat(u))?, a);
        }
        Ok(x)
    }

    /// `self · w` for a group element `w`.
    pub fn right_mul_word(&self, w: &Word) -> Result<Self, RingError> {
        let mut x = GroupRingElement::zero(&self.ring);
        for (u, &a) in &self.terms {
            x.add_key(self.ring.backend.normalize(&u.concat(w))?, a);
        }
        Ok(x)
    }

    /// `x − μx`: left multiplication by `1 − μ`.
    pub fn one_minus_mu_mul(&self) -> Result<Self, RingError> {
        let mu_x = self.left_mul_word(self.ring.meridian())?;
        self.sub(&mu_x)
    }

    /// Partition of the terms by the linking number of their keys.
    pub fn lk_split(&self) -> Result<BTreeMap<i64, GroupRingElement>, RingError> {
        let mut out: BTreeMap<i64, GroupRingElement> = BTreeMap::new();
        for (w, &c) in &self.terms {
            let level = self.ring.lk(w)?;
            out.entry(level)
                .or_insert_with(|| GroupRingElement::zero(&self.ring))
                .terms
                .insert(w.clone(), c);
        }
        Ok(out)
    }

    /// Pairs `(word text, coefficient)` in key order.
    pub fn to_pairs(&self) -> Vec<(String, i64)> {
        self.terms
            .iter()
            .map(|(w, &c)| (self.ring.format_word(w), c))
            .collect()
    }

    /// Parses [`to_pairs`](Self::to_pairs) output back into an element.
    pub fn from_pairs(ring: &Arc<GroupRing>, pairs: &[(String, i64)]) -> Result<Self, RingError> {
        let pres = ring.backend.presentation();
        let terms = pairs
            .iter()
            .map(|(s, c)| pres.parse_word(s).map(|w| (w, *c)))
            .collect::<Result<Vec<_>, _>>()?;
        Self::from_terms(ring, terms)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rewriting::{BackendKind, Decision};

    fn unknot_ring() -> Arc<GroupRing> {
        let k = KnotGroup::unknot();
        GroupRing::new(&k, Backend::free_abelian(k.presentation.clone()).unwrap()).unwrap()
    }

    fn trefoil_ring() -> Arc<GroupRing> {
        let k = KnotGroup::trefoil();
        GroupRing::new(&k, Backend::standard_trefoil(k.presentation.clone()).unwrap()).unwrap()
    }

    #[test]
    fn commutative_case() {
        let r = unknot_ring();
        let one = GroupRingElement::one(&r);
        let mu = GroupRingElement::mu(&r).unwrap();
        let x = one.sub(&mu).unwrap();
        let y = one.add(&mu).unwrap();
        let mu2 = GroupRingElement::from_word(&r, &Word::generator(0).pow(2)).unwrap();
        assert_eq!(x.mul(&y).unwrap(), one.sub(&mu2).unwrap());
        assert!(x.mul(&GroupRingElement::zero(&r)).unwrap().is_zero());
        assert_eq!(x.to_string(), "1 - m");
    }

    #[test]
    fn one_minus_mu() {
        let r = unknot_ring();
        let one = GroupRingElement::one(&r);
        assert_eq!(one.one_minus_mu_mul().unwrap().to_string(), "1 - m");
        let inv = GroupRingElement::from_word(&r, &Word::generator(0).inverse()).unwrap();
        assert_eq!(inv.one_minus_mu_mul().unwrap().to_string(), "-1 + m^-1");
    }

    #[test]
    fn trefoil_keys_are_distinct() {
        let r = trefoil_ring();
        let a = GroupRingElement::from_word(&r, &Word::generator(1)).unwrap();
        let x = a.one_minus_mu_mul().unwrap();
        assert_eq!(x.len(), 2);
        assert_eq!(r.backend().equal(&Word::generator(1), &Word::from_codes(&[1, 2])), Decision::False);
        assert!(matches!(r.backend().kind(), BackendKind::Torus(_)));
    }

    #[test]
    fn lk_split_levels() {
        let r = unknot_ring();
        let m = Word::generator(0);
        let x = GroupRingElement::from_terms(&r, [(Word::identity(), 1), (m.clone(), -1), (m.pow(2), 1)]).unwrap();
        let split = x.lk_split().unwrap();
        assert_eq!(split.keys().copied().collect::<Vec<_>>(), vec![0, 1, 2]);
        assert_eq!(split[&1].to_string(), "-m");
        assert_eq!(r.lk(&m).unwrap(), 1);
    }

    #[test]
    fn framed_ring_refuses_lk() {
        let k = crate::presentations::reframe(&KnotGroup::trefoil(), 1);
        let r = GroupRing::new(&k, Backend::standard_trefoil(k.presentation.clone()).unwrap()).unwrap();
        assert_eq!(r.lk(&Word::generator(0)), Err(RingError::NotSeifert { framing: 1 }));
    }

    #[test]
    fn mismatched_rings() {
        let (a, b) = (unknot_ring(), unknot_ring());
        let x = GroupRingElement::one(&a);
        let y = GroupRingElement::one(&b);
        assert_eq!(x.add(&y), Err(RingError::BackendMismatch));
    }

    #[test]
    fn pairs_round_trip() {
        let r = trefoil_ring();
        let a = GroupRingElement::from_word(&r, &Word::generator(1)).unwrap();
        let x = a.one_minus_mu_mul().unwrap().scale(3);
        assert_eq!(GroupRingElement::from_pairs(&r, &x.to_pairs()).unwrap(), x);
    }
}
