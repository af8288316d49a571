//! The ring `Z[λ±, μ±] / ((λ − 1)(μ − 1))` and its comparison with
//! reduced cord-algebra elements of the unknot.

use super::reduce::NormalForm;
use super::CordError;
use crate::group_ring::LaurentPoly;

/// Canonical representative `f(λ) + g(μ)` with no constant term in `g`.
/// Every monomial satisfies `λ^a μ^b ≡ λ^a + μ^b − 1`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct UnknotQuotient {
    pub f: LaurentPoly,
    pub g: LaurentPoly,
}

impl UnknotQuotient {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn monomial(a: i64, b: i64, c: i64) -> Self {
        let mut q = Self::zero();
        q.add_monomial(a, b, c);
        q
    }

    pub fn add_monomial(&mut self, a: i64, b: i64, c: i64) {
        self.f.add_term(a, c);
        if b != 0 {
            self.g.add_term(b, c);
            self.f.add_term(0, -c);
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        UnknotQuotient {
            f: &self.f + &o.f,
            g: &self.g + &o.g,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.f.is_zero() && self.g.is_zero()
    }

    pub fn format(&self) -> String {
        match (self.f.is_zero(), self.g.is_zero()) {
            (true, true) => "0".into(),
            (false, true) => self.f.format("l"),
            (true, false) => self.g.format("m"),
            (false, false) => format!("{} + ({})", self.f.format("l"), self.g.format("m")),
        }
    }
}

/// Which sign to use for the square summand in [`direct_sum_image`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SquareSign {
    /// `(α, β) ↦ α + (μ − 1) β`
    MuMinusOne,
    /// `(α, β) ↦ α + (1 − μ) β`
    OneMinusMu,
}

/// Sends a reduced unknot element `(α, β)` to the quotient ring, reading
/// each group element of `β` as the power of `μ` given by its linking number.
pub fn direct_sum_image(nf: &NormalForm, sign: SquareSign) -> Result<UnknotQuotient, CordError> {
    let mut q = UnknotQuotient::zero();
    for (k, c) in nf.l.terms() {
        q.add_monomial(k, 0, c);
    }
    let s = match sign {
        SquareSign::MuMinusOne => 1,
        SquareSign::OneMinusMu => -1,
    };
    let ring = nf.g.ring();
    for (w, c) in nf.g.terms() {
        let e = ring.lk(w)?;
        q.add_monomial(0, e + 1, s * c);
        q.add_monomial(0, e, -s * c);
    }
    Ok(q)
}
