//! Normal forms in the torus-knot group `⟨x, y | x^p = y^q⟩`.
//!
//! With `c = x^p = y^q` central the group is the amalgamated product
//! `Z *_Z Z`, and every element is uniquely `c^n` times an alternating product
//! of syllables `x^i` (`0 < i < p`) and `y^j` (`0 < j < q`).

use super::RewriteError;
use crate::presentations::GroupPresentation;
use crate::word::{Letter, Word};

pub(crate) const X: usize = 0;
pub(crate) const Y: usize = 1;
pub(crate) const C: usize = 2;

fn gcd(a: u32, b: u32) -> u32 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Syllable normal form: `c^central` followed by `(generator, exponent)`
/// syllables with generators alternating between `x` (0) and `y` (1).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TorusWord {
    pub central: i64,
    pub syllables: Vec<(usize, i64)>,
}

impl TorusWord {
    pub fn is_identity(&self) -> bool {
        self.central == 0 && self.syllables.is_empty()
    }

    /// The word `c^n x^i y^j ...` over the alphabet `x, y, c`.
    pub fn to_word(&self) -> Word {
        let mut w = Word::generator(C).pow(self.central);
        for &(g, e) in &self.syllables {
            w = w.concat(&Word::generator(g).pow(e));
        }
        w
    }
}

/// Computes the syllable normal form of a word over `x, y` (and optionally
/// `c`, read as `x^p`).
pub fn torus_nf(p: u32, q: u32, w: &Word) -> TorusWord {
    let order = [p as i64, q as i64];
    let mut central = 0i64;
    let mut syl: Vec<(usize, i64)> = Vec::new();
    for l in w.letters() {
        let g = l.generator();
        if g == C {
            central += l.exponent();
            continue;
        }
        let (base, e) = match syl.last() {
            Some(&(h, e)) if h == g => {
                syl.pop();
                (g, e)
            }
            _ => (g, 0),
        };
        let total = e + l.exponent();
        central += total.div_euclid(order[base]);
        let r = total.rem_euclid(order[base]);
        if r != 0 {
            syl.push((base, r));
        }
    }
    TorusWord {
        central,
        syllables: syl,
    }
}

/// Normal form as a word over `x, y, c`: `c^n` times alternating syllables.
pub fn torus_normal_form(p: u32, q: u32, w: &Word) -> Result<Word, RewriteError> {
    check_pq(p, q)?;
    if w.max_generator().is_some_and(|g| g > C) {
        return Err(RewriteError::Malformed("torus words use only x, y, c".into()));
    }
    Ok(torus_nf(p, q, w).to_word())
}

pub(crate) fn check_pq(p: u32, q: u32) -> Result<(), RewriteError> {
    if p == 0 || q == 0 || gcd(p, q) != 1 {
        return Err(RewriteError::NotCoprime { p, q });
    }
    Ok(())
}

/// An isomorphism between a presentation and `⟨x, y | x^p = y^q⟩`.
///
/// `to_torus[g]` is the image of generator `g` as a word over `x, y`;
/// `from_torus` expresses `x` and `y` back in the presentation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TorusMap {
    pub p: u32,
    pub q: u32,
    pub to_torus: Vec<Word>,
    pub from_torus: [Word; 2],
}

impl TorusMap {
    /// Validates that relators map to the identity and that `from_torus`
    /// followed by `to_torus` fixes `x` and `y`. That makes the map a
    /// surjective homomorphism; injectivity is the caller's claim unless the
    /// map was produced by [`super::Backend::auto`], which certifies it.
    pub fn new(pres: &GroupPresentation, p: u32, q: u32, to_torus: Vec<Word>, from_torus: [Word; 2]) -> Result<Self, RewriteError> {
        check_pq(p, q)?;
        if to_torus.len() != pres.rank() {
            return Err(RewriteError::BadTorusMap(format!(
                "{} images for {} generators",
                to_torus.len(),
                pres.rank()
            )));
        }
        if to_torus.iter().any(|w| w.max_generator().is_some_and(|g| g > Y)) {
            return Err(RewriteError::BadTorusMap("images must be words in x, y".into()));
        }
        if from_torus.iter().any(|w| w.max_generator().is_some_and(|g| g >= pres.rank())) {
            return Err(RewriteError::BadTorusMap("inverse images leave the presentation".into()));
        }
        let map = TorusMap {
            p,
            q,
            to_torus,
            from_torus,
        };
        for (i, r) in pres.relators().iter().enumerate() {
            if !map.image(r).is_identity() {
                return Err(RewriteError::BadTorusMap(format!("relator {i} does not map to 1")));
            }
        }
        for (g, w) in map.from_torus.iter().enumerate() {
            let back = map.image(w);
            if back != torus_nf(p, q, &Word::generator(g)) {
                return Err(RewriteError::BadTorusMap(format!(
                    "inverse image of {} does not map back",
                    ["x", "y"][g]
                )));
            }
        }
        Ok(map)
    }

    pub fn image(&self, w: &Word) -> TorusWord {
        torus_nf(self.p, self.q, &w.substitute(&self.to_torus))
    }

    /// Canonical word in the presentation: the torus normal form pulled back
    /// through `from_torus`.
    pub fn pull_back(&self, t: &TorusWord) -> Word {
        let [fx, fy] = &self.from_torus;
        let mut w = fx.pow(self.p as i64 * t.central);
        for &(g, e) in &t.syllables {
            w = w.concat(&[fx, fy][g].pow(e));
        }
        w.reduced()
    }
}

/// Meridians `a = y^-k x`, `b = x^-1 y^(k+1)` of `T(2, 2k+1)`; `ab = y` and
/// `(ab)^k a = x`.
fn meridian_pair(q: u32) -> (Word, Word) {
    let k = (q as i64 - 1) / 2;
    let x = Word::generator(X);
    let y = Word::generator(Y);
    let a = y.pow(-k).concat(&x);
    let b = x.inverse().concat(&y.pow(k + 1));
    (a, b)
}

fn propagate(pres: &GroupPresentation, images: &mut [Option<Word>]) {
    loop {
        let mut progress = false;
        for r in pres.relators() {
            let unknown: Vec<usize> = r
                .letters()
                .iter()
                .enumerate()
                .filter(|(_, l)| images[l.generator()].is_none())
                .map(|(i, _)| i)
                .collect();
            let [pos] = unknown[..] else { continue };
            let letters = r.letters();
            let g = letters[pos].generator();
            let rest: Word = letters[pos + 1..].iter().chain(&letters[..pos]).copied().collect();
            let known: Vec<Word> = images.iter().map(|i| i.clone().unwrap_or_default()).collect();
            let u = rest.substitute(&known);
            // g u = 1 or g^-1 u = 1
            let value = if letters[pos].is_inverse() { u } else { u.inverse() };
            images[g] = Some(value.reduced());
            progress = true;
        }
        if !progress {
            return;
        }
    }
}

/// Looks for generators `A`, `B` mapping to the standard meridians of
/// `T(2, q)` such that every other generator is forced by the relators and
/// all relators hold. Returns the map and the indices of `A` and `B`.
pub(crate) fn search_two_q(pres: &GroupPresentation, q: u32) -> Option<(TorusMap, usize, usize)> {
    if q < 3 || q.is_multiple_of(2) {
        return None;
    }
    let n = pres.rank();
    let (a, b) = meridian_pair(q);
    let k = (q as i64 - 1) / 2;
    for i in 0..n {
        for j in 0..n {
            if i == j {
                continue;
            }
            let mut images: Vec<Option<Word>> = vec![None; n];
            images[i] = Some(a.clone());
            images[j] = Some(b.clone());
            propagate(pres, &mut images);
            let Some(images) = images.into_iter().collect::<Option<Vec<Word>>>() else { continue };
            let ab = Word::letter(Letter::gen(i)).concat(&Word::letter(Letter::gen(j)));
            let from = [ab.pow(k).concat(&Word::generator(i)), ab];
            if let Ok(map) = TorusMap::new(pres, 2, q, images, from) {
                return Some((map, i, j));
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(codes: &[i32]) -> Word {
        Word::from_codes(codes)
    }

    #[test]
    fn defining_relations() {
        // x^2 → c and y^4 → c y
        assert_eq!(torus_normal_form(2, 3, &w(&[1, 1])).unwrap(), w(&[3]));
        assert_eq!(torus_normal_form(2, 3, &w(&[2, 2, 2, 2])).unwrap(), w(&[3, 2]));
        assert_eq!(torus_normal_form(2, 3, &w(&[-1])).unwrap(), w(&[-3, 1]));
    }

    #[test]
    fn xy_has_infinite_order() {
        let xy6 = w(&[1, 2]).pow(6);
        let nf = torus_nf(2, 3, &xy6);
        assert_eq!(nf.central, 0);
        assert_eq!(nf.syllables.len(), 12);
        // not central: conjugating by x changes it
        let conj = torus_nf(2, 3, &w(&[1]).concat(&xy6).concat(&w(&[-1])));
        assert_ne!(conj, nf);
    }

    #[test]
    fn not_coprime() {
        assert_eq!(torus_normal_form(2, 4, &w(&[1])), Err(RewriteError::NotCoprime { p: 2, q: 4 }));
    }

    #[test]
    fn standard_trefoil_map_validates() {
        let p = GroupPresentation::from_text(&["m", "a"], &["m a m a^-1 m^-1 a^-1"]).unwrap();
        let to = vec![w(&[-1, 2, 2]), w(&[-2, 1])];
        let from = [p.parse_word("a m a").unwrap(), p.parse_word("a m").unwrap()];
        let map = TorusMap::new(&p, 2, 3, to, from).unwrap();
        // round trip of generators
        for g in 0..2 {
            let back = map.pull_back(&map.image(&Word::generator(g)));
            assert_eq!(map.image(&back), map.image(&Word::generator(g)));
        }
    }

    #[test]
    fn wrong_map_is_rejected() {
        let p = GroupPresentation::from_text(&["m", "a"], &["m a m a^-1 m^-1 a^-1"]).unwrap();
        let to = vec![w(&[1]), w(&[2])];
        let from = [w(&[1]), w(&[2])];
        assert!(matches!(TorusMap::new(&p, 2, 3, to, from), Err(RewriteError::BadTorusMap(_))));
    }

    #[test]
    fn search_finds_trefoil() {
        let p = GroupPresentation::from_text(&["m", "a"], &["m a m a^-1 m^-1 a^-1"]).unwrap();
        assert!(search_two_q(&p, 3).is_some());
        assert!(search_two_q(&p, 5).is_none());
    }
}
