use std::sync::Arc;

use super::broken::{BrokenWord, BrokenWordSum, LaurentMonomial};
use super::reduce::{psi, reduce, NormalForm};
use super::CordError;
use crate::group_ring::{GroupRing, GroupRingElement};
use crate::presentations::PeripheralSystem;
use crate::rewriting::{Backend, Decision};
use crate::word::Word;

/// Outcome of checking one relation `lhs − rhs` in the cord algebra.
#[derive(Clone, Debug)]
pub struct RelationCheck {
    pub name: String,
    pub reduced: NormalForm,
    pub image: GroupRingElement,
}

impl RelationCheck {
    pub fn holds(&self) -> bool {
        self.reduced.is_zero() && self.image.is_zero()
    }
}

/// Reduces each relation and maps it to the group ring.
pub fn check_relations(ring: &Arc<GroupRing>, relations: &[(String, BrokenWordSum)]) -> Result<Vec<RelationCheck>, CordError> {
    relations
        .iter()
        .map(|(name, s)| {
            let reduced = reduce(ring, s)?;
            let image = psi(&reduced)?;
            Ok(RelationCheck {
                name: name.clone(),
                reduced,
                image,
            })
        })
        .collect()
}

fn trefoil_cord(ring: &GroupRing) -> Result<Word, CordError> {
    let pres = ring.backend().presentation();
    let mer = ring.meridian();
    pres.parse_word_with("a m^-1 a^-1", &[("m", mer)])
        .map_err(|e| CordError::Malformed(format!("trefoil relations need a generator `a`: {e}")))
}

/// The four defining relations of the trefoil cord algebra, written as
/// broken-word sums in the cord `x = {1}[a μ^-1 a^-1]{1}`.
pub fn trefoil_relations(ring: &Arc<GroupRing>) -> Result<Vec<(String, BrokenWordSum)>, CordError> {
    let w = trefoil_cord(ring)?;
    let m = |a, b| LaurentMonomial::new(a, b);
    let one = BrokenWordSum::from_word(BrokenWord::curly(LaurentMonomial::ONE));
    let curly = |a, b| BrokenWordSum::from_word(BrokenWord::curly(m(a, b)));
    let x = BrokenWordSum::from_word(BrokenWord::sandwich(m(0, 0), w, m(0, 0)));

    let r1 = curly(1, 0).mul(&curly(0, 1)).sub(&curly(0, 1).mul(&curly(1, 0)));
    let r2 = curly(1, 6).mul(&x).sub(&x.mul(&curly(1, 6)));
    let r3 = one
        .scale(-1)
        .add(&curly(0, 1))
        .add(&x)
        .sub(&curly(1, 5).mul(&x).mul(&curly(0, -3)).mul(&x).mul(&curly(0, -1)));
    let r4 = one
        .sub(&curly(0, 1))
        .sub(&curly(1, 4).mul(&x).mul(&curly(0, -2)))
        .sub(&curly(1, 5).mul(&x).mul(&curly(0, -2)).mul(&x).mul(&curly(0, -1)));
    Ok(vec![
        ("l m = m l".into(), r1),
        ("l m^6 x = x l m^6".into(), r2),
        ("-1 + m + x - l m^5 x m^-3 x m^-1 = 0".into(), r3),
        ("1 - m - l m^4 x m^-2 - l m^5 x m^-2 x m^-1 = 0".into(), r4),
    ])
}

/// The same four relations evaluated directly in `Zπ` with
/// `x ↦ (1 − μ) a μ^-1 a^-1`.
pub fn trefoil_relations_in_group_ring(ring: &Arc<GroupRing>) -> Result<Vec<(String, GroupRingElement)>, CordError> {
    let w = trefoil_cord(ring)?;
    let x = GroupRingElement::from_word(ring, &w)?.one_minus_mu_mul()?;
    let pw = |a, b| ring.peripheral_word(a, b);
    let g = |a, b| GroupRingElement::from_word(ring, &pw(a, b));
    let one = GroupRingElement::one(ring);

    let r1 = g(1, 1)?.sub(&GroupRingElement::from_word(ring, &pw(0, 1).concat(&pw(1, 0)))?)?;
    let r2 = x.left_mul_word(&pw(1, 6))?.sub(&x.right_mul_word(&pw(1, 6))?)?;
    let xmx = |mid: i64| -> Result<GroupRingElement, CordError> { Ok(x.right_mul_word(&pw(0, mid))?.mul(&x)?) };
    let r3 = one
        .scale(-1)
        .add(&g(0, 1)?)?
        .add(&x)?
        .sub(&xmx(-3)?.left_mul_word(&pw(1, 5))?.right_mul_word(&pw(0, -1))?)?;
    let r4 = one
        .sub(&g(0, 1)?)?
        .sub(&x.left_mul_word(&pw(1, 4))?.right_mul_word(&pw(0, -2))?)?
        .sub(&xmx(-2)?.left_mul_word(&pw(1, 5))?.right_mul_word(&pw(0, -1))?)?;
    Ok(vec![
        ("l m = m l".into(), r1),
        ("l m^6 x = x l m^6".into(), r2),
        ("-1 + m + x - l m^5 x m^-3 x m^-1 = 0".into(), r3),
        ("1 - m - l m^4 x m^-2 - l m^5 x m^-2 x m^-1 = 0".into(), r4),
    ])
}

/// Verdict of [`unknot_test`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum UnknotVerdict {
    /// The longitude is trivial, so the knot is the unknot.
    Unknot,
    /// The longitude is nontrivial.
    Knotted,
    /// The backend could not decide.
    Undecided,
}

impl UnknotVerdict {
    pub fn as_str(self) -> &'static str {
        match self {
            UnknotVerdict::Unknot => "unknot",
            UnknotVerdict::Knotted => "knotted",
            UnknotVerdict::Undecided => "undecided",
        }
    }
}

/// Decides whether `(λ − 1){1}[1]{1}` vanishes, which happens exactly when
/// the Seifert longitude is trivial.
pub fn unknot_test(backend: &Backend, peripheral: &PeripheralSystem) -> Result<UnknotVerdict, CordError> {
    if !peripheral.is_seifert() {
        return Err(CordError::NotSeifert {
            framing: peripheral.framing,
        });
    }
    Ok(match backend.is_identity(&peripheral.longitude) {
        Decision::True => UnknotVerdict::Unknot,
        Decision::False => UnknotVerdict::Knotted,
        Decision::Undecided => UnknotVerdict::Undecided,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presentations::KnotGroup;

    #[test]
    fn trefoil_relations_hold() {
        let k = KnotGroup::trefoil();
        let (k, b) = Backend::auto(&k, Default::default()).unwrap();
        let ring = GroupRing::new(&k, b).unwrap();
        for (name, e) in trefoil_relations_in_group_ring(&ring).unwrap() {
            assert!(e.is_zero(), "{name}: {e}");
        }
        for c in check_relations(&ring, &trefoil_relations(&ring).unwrap()).unwrap() {
            assert!(c.holds(), "{}: {}", c.name, c.image);
        }
    }

    #[test]
    fn verdicts() {
        let t = KnotGroup::trefoil();
        let (t, b) = Backend::auto(&t, Default::default()).unwrap();
        assert_eq!(unknot_test(&b, &t.peripheral).unwrap(), UnknotVerdict::Knotted);
        let u = KnotGroup::unknot();
        let (u, b) = Backend::auto(&u, Default::default()).unwrap();
        assert_eq!(unknot_test(&b, &u.peripheral).unwrap(), UnknotVerdict::Unknot);
        let mut framed = u.peripheral.clone();
        framed.framing = 2;
        assert!(unknot_test(&b, &framed).is_err());
    }
}
