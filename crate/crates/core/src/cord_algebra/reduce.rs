use std::sync::Arc;

use super::broken::{BrokenWord, BrokenWordSum, Entry, LaurentMonomial, Style};
use super::CordError;
use crate::group_ring::{GroupRing, GroupRingElement, LaurentPoly};
use crate::word::Word;

/// A reduced cord-algebra element `l(λ)·{1} + {1}[g]{1}` with `l` a Laurent
/// polynomial in `λ` and `g` in the group ring.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NormalForm {
    pub l: LaurentPoly,
    pub g: GroupRingElement,
}

impl NormalForm {
    pub fn zero(ring: &Arc<GroupRing>) -> Self {
        NormalForm {
            l: LaurentPoly::zero(),
            g: GroupRingElement::zero(ring),
        }
    }

    /// The unit `{1}`.
    pub fn one(ring: &Arc<GroupRing>) -> Self {
        NormalForm {
            l: LaurentPoly::one(),
            g: GroupRingElement::zero(ring),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.l.is_zero() && self.g.is_zero()
    }

    pub fn add(&self, o: &Self) -> Result<Self, CordError> {
        Ok(NormalForm {
            l: &self.l + &o.l,
            g: self.g.add(&o.g)?,
        })
    }

    pub fn sub(&self, o: &Self) -> Result<Self, CordError> {
        self.add(&o.scale(-1))
    }

    pub fn scale(&self, k: i64) -> Self {
        NormalForm {
            l: self.l.scale(k),
            g: self.g.scale(k),
        }
    }

    pub fn format(&self) -> String {
        format!("l-part: {}; g-part: {}", self.l.format("l"), self.g)
    }
}

/// How [`reduce_with`] reaches the normal form. Both give the same answer.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Strategy {
    /// Closed formulas: a lone `{λ^a μ^b}` is expanded by telescoping, and any
    /// word with square entries is collapsed in one step.
    #[default]
    Direct,
    /// Local rewriting, always at the leftmost applicable position: curly
    /// entries are pushed into neighbouring square entries, `[x]{1}[y]` is
    /// split into `[xy] − [xμy]`, and a lone `{λ^a μ^b}` lowers `|b|` by one.
    LeftmostFirst,
}

/// `l(λ)` as a group-ring element.
pub fn laurent_in_ring(ring: &Arc<GroupRing>, l: &LaurentPoly) -> Result<GroupRingElement, CordError> {
    let terms = l.terms().map(|(k, c)| (ring.peripheral_word(k, 0), c));
    Ok(GroupRingElement::from_terms(ring, terms)?)
}

fn mono_word(ring: &GroupRing, m: LaurentMonomial) -> Word {
    ring.peripheral_word(m.a, m.b)
}

fn curly_at(w: &BrokenWord, i: usize) -> LaurentMonomial {
    match &w.entries()[i] {
        Entry::Curly(m) => *m,
        Entry::Square(_) => unreachable!("alternation puts curly entries at even positions"),
    }
}

fn square_at(w: &BrokenWord, i: usize) -> &Word {
    match &w.entries()[i] {
        Entry::Square(x) => x,
        Entry::Curly(_) => unreachable!("alternation puts square entries at odd positions"),
    }
}

/// `y1 (1−μ) α1 y2 (1−μ) α2 ... yn` for an alternating run
/// `[y1]{α1}[y2]...[yn]` stored at `entries[from..=to]`.
fn collapse_squares(ring: &Arc<GroupRing>, w: &BrokenWord, from: usize, to: usize) -> Result<GroupRingElement, CordError> {
    let mut acc = GroupRingElement::from_word(ring, square_at(w, from))?;
    let mut i = from + 1;
    while i < to {
        acc = acc.sub(&acc.right_mul_word(ring.meridian())?)?;
        let next = mono_word(ring, curly_at(w, i)).concat(square_at(w, i + 1));
        acc = acc.right_mul_word(&next)?;
        i += 2;
    }
    Ok(acc)
}

fn reduce_word_direct(ring: &Arc<GroupRing>, w: &BrokenWord) -> Result<NormalForm, CordError> {
    let n = w.len();
    if n == 1 {
        let m = curly_at(w, 0);
        // {λ^a μ^b} = {λ^a} ∓ Σ {1}[λ^a μ^i]{1} over 0 ≤ i < b, or b ≤ i < 0
        let (range, sign) = if m.b >= 0 { (0..m.b, -1) } else { (m.b..0, 1) };
        let terms: Vec<(Word, i64)> = range.map(|i| (ring.peripheral_word(m.a, i), sign)).collect();
        return Ok(NormalForm {
            l: LaurentPoly::monomial(m.a, 1),
            g: GroupRingElement::from_terms(ring, terms)?,
        });
    }
    let inner = collapse_squares(ring, w, 1, n - 2)?;
    let g = inner
        .left_mul_word(&mono_word(ring, curly_at(w, 0)))?
        .right_mul_word(&mono_word(ring, curly_at(w, n - 1)))?;
    Ok(NormalForm {
        l: LaurentPoly::zero(),
        g,
    })
}

/// One leftmost rewrite step. `None` means `w` is terminal.
fn local_step(ring: &GroupRing, w: &BrokenWord) -> Option<BrokenWordSum> {
    let e = w.entries();
    let n = e.len();
    let rebuild = |entries: Vec<Entry>| BrokenWord::new(entries).expect("rewrites keep alternation");
    if n == 1 {
        let m = curly_at(w, 0);
        if m.b == 0 {
            return None;
        }
        let (lower, sandwich_left, sign) = if m.b > 0 {
            let lower = LaurentMonomial::new(m.a, m.b - 1);
            (lower, lower, -1)
        } else {
            (LaurentMonomial::new(m.a, m.b + 1), m, 1)
        };
        let mut s = BrokenWordSum::from_word(BrokenWord::curly(lower));
        s.add_term(BrokenWord::sandwich(sandwich_left, Word::identity(), LaurentMonomial::ONE), sign);
        return Some(s);
    }
    let first = curly_at(w, 0);
    if !first.is_one() {
        let mut entries = e.to_vec();
        entries[0] = Entry::Curly(LaurentMonomial::ONE);
        entries[1] = Entry::Square(mono_word(ring, first).concat(square_at(w, 1)));
        return Some(BrokenWordSum::from_word(rebuild(entries)));
    }
    for i in (2..n).step_by(2) {
        let m = curly_at(w, i);
        if !m.is_one() {
            let mut entries = e.to_vec();
            entries[i - 1] = Entry::Square(square_at(w, i - 1).concat(&mono_word(ring, m)));
            entries[i] = Entry::Curly(LaurentMonomial::ONE);
            return Some(BrokenWordSum::from_word(rebuild(entries)));
        }
        if i + 1 < n {
            let x = square_at(w, i - 1);
            let y = square_at(w, i + 1);
            let head = &e[..i - 1];
            let tail = &e[i + 2..];
            let joined = |mid: Word| {
                let mut v = head.to_vec();
                v.push(Entry::Square(mid));
                v.extend_from_slice(tail);
                rebuild(v)
            };
            let mut s = BrokenWordSum::from_word(joined(x.concat(y)));
            s.add_term(joined(x.concat(ring.meridian()).concat(y)), -1);
            return Some(s);
        }
    }
    None
}

fn reduce_local(ring: &Arc<GroupRing>, s: &BrokenWordSum) -> Result<NormalForm, CordError> {
    let mut pending: std::collections::BTreeMap<BrokenWord, i64> = s.terms().map(|(w, c)| (w.clone(), c)).collect();
    let mut l = LaurentPoly::zero();
    let mut g_terms: Vec<(Word, i64)> = Vec::new();
    while let Some((w, c)) = pending.pop_first() {
        if c == 0 {
            continue;
        }
        match local_step(ring, &w) {
            Some(next) => {
                for (v, d) in next.terms() {
                    *pending.entry(v.clone()).or_insert(0) += c * d;
                }
            }
            None if w.len() == 1 => l.add_term(curly_at(&w, 0).a, c),
            None => g_terms.push((square_at(&w, 1).clone(), c)),
        }
    }
    Ok(NormalForm {
        l,
        g: GroupRingElement::from_terms(ring, g_terms)?,
    })
}

fn require_style(s: &BrokenWordSum, want: Style) -> Result<(), CordError> {
    for (w, _) in s.terms() {
        if w.style() != want {
            return Err(CordError::Style {
                expected: want,
                found: w.style(),
            });
        }
    }
    Ok(())
}

/// Normal form of a curly–curly sum using [`Strategy::Direct`].
pub fn reduce(ring: &Arc<GroupRing>, s: &BrokenWordSum) -> Result<NormalForm, CordError> {
    reduce_with(ring, s, Strategy::Direct)
}

pub fn reduce_with(ring: &Arc<GroupRing>, s: &BrokenWordSum, strategy: Strategy) -> Result<NormalForm, CordError> {
    require_style(s, Style::CurlyCurly)?;
    match strategy {
        Strategy::Direct => {
            let mut out = NormalForm::zero(ring);
            for (w, c) in s.terms() {
                out = out.add(&reduce_word_direct(ring, w)?.scale(c))?;
            }
            Ok(out)
        }
        Strategy::LeftmostFirst => reduce_local(ring, s),
    }
}

/// The product on normal forms that matches concatenation of broken words:
/// `(l1, g1) ⋆ (l2, g2) = (l1 l2, l1 g2 + g1 l2 + g1 g2 − g1 μ g2)`.
pub fn star_mul(u: &NormalForm, v: &NormalForm) -> Result<NormalForm, CordError> {
    let ring = u.g.ring();
    let l1 = laurent_in_ring(ring, &u.l)?;
    let l2 = laurent_in_ring(ring, &v.l)?;
    let g1g2 = u.g.mul(&v.g)?;
    let g1mug2 = u.g.right_mul_word(ring.meridian())?.mul(&v.g)?;
    let g = l1.mul(&v.g)?.add(&u.g.mul(&l2)?)?.add(&g1g2)?.sub(&g1mug2)?;
    Ok(NormalForm { l: &u.l * &v.l, g })
}

/// The ring map to `Zπ`: `(l, g) ↦ l(λ) + (1 − μ) g`.
pub fn psi(nf: &NormalForm) -> Result<GroupRingElement, CordError> {
    let ring = nf.g.ring();
    Ok(laurent_in_ring(ring, &nf.l)?.add(&nf.g.one_minus_mu_mul()?)?)
}

/// `(0, x)`, the class of `{1}[x]{1}`.
pub fn cord_embed(x: &GroupRingElement) -> NormalForm {
    NormalForm {
        l: LaurentPoly::zero(),
        g: x.clone(),
    }
}

/// The isomorphism from square–square broken words to `Zπ`:
/// `[x1]{α1}[x2]...[xn] ↦ x1 (1 − μ) α1 x2 ... (1 − μ) α_{n−1} xn`.
pub fn phi_hat(ring: &Arc<GroupRing>, s: &BrokenWordSum) -> Result<GroupRingElement, CordError> {
    require_style(s, Style::SquareSquare)?;
    let mut out = GroupRingElement::zero(ring);
    for (w, c) in s.terms() {
        out = out.add(&collapse_squares(ring, w, 0, w.len() - 1)?.scale(c))?;
    }
    Ok(out)
}
