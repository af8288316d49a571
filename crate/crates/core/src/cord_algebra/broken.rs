use std::collections::BTreeMap;

use super::CordError;
use crate::group_ring::format_terms;
use crate::presentations::GroupPresentation;
use crate::word::Word;

/// `λ^a μ^b`, an element of the peripheral subgroup.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct LaurentMonomial {
    pub a: i64,
    pub b: i64,
}

impl LaurentMonomial {
    pub const ONE: LaurentMonomial = LaurentMonomial { a: 0, b: 0 };
    pub const MU: LaurentMonomial = LaurentMonomial { a: 0, b: 1 };
    pub const LAMBDA: LaurentMonomial = LaurentMonomial { a: 1, b: 0 };

    pub fn new(a: i64, b: i64) -> Self {
        LaurentMonomial { a, b }
    }

    #[allow(clippy::should_implement_trait)]
    pub fn mul(self, o: Self) -> Self {
        LaurentMonomial::new(self.a + o.a, self.b + o.b)
    }

    pub fn is_one(self) -> bool {
        self == Self::ONE
    }

    pub fn format(self) -> String {
        let part = |v: &str, e: i64| match e {
            0 => None,
            1 => Some(v.to_string()),
            _ => Some(format!("{v}^{e}")),
        };
        let parts: Vec<String> = [part("l", self.a), part("m", self.b)].into_iter().flatten().collect();
        if parts.is_empty() {
            "1".into()
        } else {
            parts.join(" ")
        }
    }
}

/// One letter of a broken word.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Entry {
    Curly(LaurentMonomial),
    Square(Word),
}

/// Which kinds of entry a broken word starts and ends with.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Style {
    CurlyCurly,
    SquareSquare,
    CurlySquare,
    SquareCurly,
}

/// A nonempty word whose entries alternate between curly (peripheral) and
/// square (group) letters.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BrokenWord {
    entries: Vec<Entry>,
}

impl BrokenWord {
    pub fn new(entries: Vec<Entry>) -> Result<Self, CordError> {
        if entries.is_empty() {
            return Err(CordError::Malformed("a broken word is nonempty".into()));
        }
        for (i, pair) in entries.windows(2).enumerate() {
            if matches!(pair, [Entry::Curly(_), Entry::Curly(_)] | [Entry::Square(_), Entry::Square(_)]) {
                return Err(CordError::Malformed(format!("entries {i} and {} are of the same kind", i + 1)));
            }
        }
        Ok(BrokenWord { entries })
    }

    pub fn curly(m: LaurentMonomial) -> Self {
        BrokenWord {
            entries: vec![Entry::Curly(m)],
        }
    }

    pub fn square(w: Word) -> Self {
        BrokenWord {
            entries: vec![Entry::Square(w)],
        }
    }

    /// `{α1}[x]{α2}`.
    pub fn sandwich(a1: LaurentMonomial, x: Word, a2: LaurentMonomial) -> Self {
        BrokenWord {
            entries: vec![Entry::Curly(a1), Entry::Square(x), Entry::Curly(a2)],
        }
    }

    pub fn entries(&self) -> &[Entry] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn style(&self) -> Style {
        let first = matches!(self.entries[0], Entry::Curly(_));
        let last = matches!(self.entries[self.entries.len() - 1], Entry::Curly(_));
        match (first, last) {
            (true, true) => Style::CurlyCurly,
            (false, false) => Style::SquareSquare,
            (true, false) => Style::CurlySquare,
            (false, true) => Style::SquareCurly,
        }
    }

    /// Product in the broken-word algebra: touching curly entries (or
    /// touching square entries) merge by multiplication.
    pub fn concat(&self, other: &BrokenWord) -> BrokenWord {
        let mut entries = self.entries.clone();
        let mut rest = other.entries.iter();
        if let Some(first) = rest.next() {
            match (entries.last_mut(), first) {
                (Some(Entry::Curly(a)), Entry::Curly(b)) => *a = a.mul(*b),
                (Some(Entry::Square(x)), Entry::Square(y)) => *x = x.concat(y),
                _ => entries.push(first.clone()),
            }
        }
        entries.extend(rest.cloned());
        BrokenWord { entries }
    }

    pub fn format(&self, pres: &GroupPresentation) -> String {
        self.entries
            .iter()
            .map(|e| match e {
                Entry::Curly(m) => format!("{{{}}}", m.format()),
                Entry::Square(w) => format!("[{}]", pres.format_word(w)),
            })
            .collect()
    }
}

/// A finite integer combination of broken words.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct BrokenWordSum {
    terms: BTreeMap<BrokenWord, i64>,
}

impl BrokenWordSum {
    pub fn zero() -> Self {
        BrokenWordSum::default()
    }

    pub fn from_word(w: BrokenWord) -> Self {
        let mut s = BrokenWordSum::zero();
        s.add_term(w, 1);
        s
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (BrokenWord, i64)>) -> Self {
        let mut s = BrokenWordSum::zero();
        for (w, c) in terms {
            s.add_term(w, c);
        }
        s
    }

    pub fn add_term(&mut self, w: BrokenWord, c: i64) {
        if c == 0 {
            return;
        }
        let e = self.terms.entry(w.clone()).or_insert(0);
        *e += c;
        if *e == 0 {
            self.terms.remove(&w);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&BrokenWord, i64)> {
        self.terms.iter().map(|(w, &c)| (w, c))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut s = self.clone();
        for (w, c) in o.terms() {
            s.add_term(w.clone(), c);
        }
        s
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.scale(-1))
    }

    pub fn scale(&self, k: i64) -> Self {
        BrokenWordSum::from_terms(self.terms().map(|(w, c)| (w.clone(), c * k)))
    }

    /// Bilinear extension of [`BrokenWord::concat`].
    pub fn mul(&self, o: &Self) -> Self {
        let mut s = BrokenWordSum::zero();
        for (u, a) in self.terms() {
            for (v, b) in o.terms() {
                s.add_term(u.concat(v), a * b);
            }
        }
        s
    }

    /// The common style of all terms, if there is one.
    pub fn style(&self) -> Option<Style> {
        let mut it = self.terms.keys().map(BrokenWord::style);
        let first = it.next()?;
        it.all(|s| s == first).then_some(first)
    }

    pub fn format(&self, pres: &GroupPresentation) -> String {
        format_terms(self.terms().map(|(w, c)| (w.format(pres), c)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn alternation_is_enforced() {
        let c = Entry::Curly(LaurentMonomial::ONE);
        let s = Entry::Square(Word::identity());
        assert!(BrokenWord::new(vec![c.clone(), s.clone(), c.clone()]).is_ok());
        assert!(BrokenWord::new(vec![c.clone(), c.clone()]).is_err());
        assert!(BrokenWord::new(vec![]).is_err());
        assert_eq!(BrokenWord::new(vec![s.clone(), c, s]).unwrap().style(), Style::SquareSquare);
    }

    #[test]
    fn concat_merges_touching_entries() {
        let u = BrokenWord::sandwich(LaurentMonomial::ONE, Word::generator(0), LaurentMonomial::MU);
        let v = BrokenWord::sandwich(LaurentMonomial::LAMBDA, Word::generator(1), LaurentMonomial::ONE);
        let w = u.concat(&v);
        assert_eq!(w.len(), 5);
        assert_eq!(w.entries()[2], Entry::Curly(LaurentMonomial::new(1, 1)));
    }

    #[test]
    fn sums_cancel() {
        let w = BrokenWord::curly(LaurentMonomial::MU);
        let s = BrokenWordSum::from_word(w.clone());
        assert!(s.sub(&s).is_zero());
        assert_eq!(s.scale(3).terms().next().unwrap().1, 3);
    }
}
