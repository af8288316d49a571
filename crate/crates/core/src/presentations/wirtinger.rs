use super::braid::{parse_braid, BraidWord};
use super::pd::{parse_pd, PlanarDiagram, SignConvention};
use super::{GroupPresentation, KnotGroup, PeripheralSystem, PresentationError};
use crate::word::{Letter, Word};

/// A knot given either as a braid closure or as a planar-diagram code.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Diagram {
    Braid(BraidWord),
    Pd(PlanarDiagram),
}

impl Diagram {
    /// Planar-diagram codes are recognised by `PD`, `X[`, `(` or a `mirror:`
    /// prefix; anything else is read as a braid word.
    pub fn parse(text: &str) -> Result<Self, PresentationError> {
        let t = text.trim();
        let looks_pd = t.is_empty() || t.starts_with("PD") || t.starts_with("mirror:") || t.contains('X') || t.contains('(');
        if looks_pd {
            parse_pd(t).map(Diagram::Pd)
        } else {
            parse_braid(t).map(Diagram::Braid)
        }
    }

    pub fn to_pd(&self) -> PlanarDiagram {
        match self {
            Diagram::Braid(b) => b.to_pd(),
            Diagram::Pd(p) => p.clone(),
        }
    }

    pub fn knot_group(&self) -> Result<KnotGroup, PresentationError> {
        wirtinger(&self.to_pd())
    }
}

struct UnderPass {
    crossing: usize,
    incoming: usize,
}

/// Wirtinger presentation with one generator `x1..xn` per arc, the meridian
/// `x1` and the Seifert longitude.
///
/// Arcs are numbered along the orientation starting where the under-strand of
/// the first crossing leaves it. At an under-pass of sign `ε` below arc `o`
/// the relation is `x_out = o^-ε x_in o^ε`.
pub fn wirtinger(pd: &PlanarDiagram) -> Result<KnotGroup, PresentationError> {
    let n = pd.crossings().len();
    if n == 0 {
        return Ok(KnotGroup::unknot());
    }
    let flip = match pd.convention() {
        SignConvention::RightHanded => 1,
        SignConvention::Mirrored => -1,
    };

    let mut over_arc: Vec<Option<usize>> = vec![None; n];
    let mut sign = vec![0i64; n];
    let mut unders: Vec<UnderPass> = Vec::with_capacity(n);
    let mut arc = 0usize;
    let mut visits = 0usize;
    let (mut c, mut s) = (0usize, 0usize);
    loop {
        let exit = (s + 2) % 4;
        (c, s) = pd.partner(c, exit);
        visits += 1;
        if visits > 2 * n {
            break;
        }
        match s {
            0 => {
                unders.push(UnderPass { crossing: c, incoming: arc });
                if c == 0 {
                    break;
                }
                arc += 1;
            }
            1 | 3 => {
                if over_arc[c].is_some() {
                    return Err(PresentationError::InconsistentOrientation { crossing: c });
                }
                over_arc[c] = Some(arc);
                sign[c] = if s == 3 { flip } else { -flip };
            }
            _ => return Err(PresentationError::InconsistentOrientation { crossing: c }),
        }
    }
    if visits != 2 * n || unders.len() != n || over_arc.iter().any(Option::is_none) {
        let components = pd.components();
        if components > 1 {
            return Err(PresentationError::MultiComponent { components });
        }
        let crossing = over_arc.iter().position(Option::is_none).unwrap_or(0);
        return Err(PresentationError::InconsistentOrientation { crossing });
    }

    let mut relators = Vec::with_capacity(n);
    let mut w = Word::identity();
    for u in &unders {
        let o = over_arc[u.crossing].expect("checked");
        let e = sign[u.crossing];
        let out = (u.incoming + 1) % n;
        let mut r = Word::letter(Letter::inv(out));
        r = r.concat(&Word::generator(o).pow(-e));
        r.push(Letter::gen(u.incoming));
        r = r.concat(&Word::generator(o).pow(e));
        relators.push(r.reduced());
        w = w.concat(&Word::generator(o).pow(e));
    }
    let writhe: i64 = sign.iter().sum();
    let longitude = w.concat(&Word::generator(0).pow(-writhe)).reduced();
    let generators = (1..=n).map(|i| format!("x{i}")).collect();
    Ok(KnotGroup {
        presentation: GroupPresentation::new(generators, relators)?,
        peripheral: PeripheralSystem {
            meridian: Word::generator(0),
            longitude,
            framing: 0,
        },
    })
}

pub(crate) fn canonical_cyclic(r: &Word) -> Word {
    let r = r.cyclically_reduced();
    let mut best = r.clone();
    for cand in [r.clone(), r.inverse()] {
        let l = cand.letters();
        for k in 0..l.len() {
            let rot: Word = l[k..].iter().chain(&l[..k]).copied().collect();
            if rot < best {
                best = rot;
            }
        }
    }
    best
}

fn rotate_to_front(r: &Word, idx: usize) -> Word {
    let l = r.letters();
    l[idx..].iter().chain(&l[..idx]).copied().collect()
}

/// Tietze simplification: repeatedly eliminates a generator that occurs
/// exactly once in some relator, never touching generators of the meridian.
/// Trivial relators and duplicates (up to rotation and inversion) are dropped.
pub fn simplify(k: &KnotGroup) -> KnotGroup {
    let mut gens: Vec<String> = k.presentation.generators().to_vec();
    let mut rels: Vec<Word> = k.presentation.relators().iter().map(Word::cyclically_reduced).collect();
    let mut mer = k.peripheral.meridian.reduced();
    let mut lon = k.peripheral.longitude.reduced();
    loop {
        dedupe(&mut rels);
        let protected: Vec<usize> = mer.letters().iter().map(|l| l.generator()).collect();
        let mut choice: Option<(usize, usize, usize)> = None;
        for (ri, r) in rels.iter().enumerate() {
            for (idx, l) in r.letters().iter().enumerate() {
                let g = l.generator();
                if protected.contains(&g) || r.occurrences(g) != 1 {
                    continue;
                }
                if choice.is_none_or(|(cr, _, _)| r.len() < rels[cr].len()) {
                    choice = Some((ri, idx, g));
                }
            }
        }
        let Some((ri, idx, g)) = choice else { break };
        let r = rotate_to_front(&rels.remove(ri), idx);
        let head = r.letters()[0];
        let rest: Word = r.letters()[1..].iter().copied().collect();
        // g u = 1 gives g = u^-1; g^-1 u = 1 gives g = u
        let value = if head.is_inverse() { rest } else { rest.inverse() };
        let shift = |x: usize| if x > g { x - 1 } else { x };
        let value: Word = value.letters().iter().map(|l| Letter::with_sign(shift(l.generator()), l.exponent())).collect();
        let images: Vec<Word> = (0..gens.len())
            .map(|i| if i == g { value.clone() } else { Word::generator(shift(i)) })
            .collect();
        gens.remove(g);
        rels = rels.iter().map(|w| w.substitute(&images).cyclically_reduced()).collect();
        mer = mer.substitute(&images).reduced();
        lon = lon.substitute(&images).reduced();
    }
    KnotGroup {
        presentation: GroupPresentation::new(gens, rels).expect("indices stay in range"),
        peripheral: PeripheralSystem {
            meridian: mer,
            longitude: lon,
            framing: k.peripheral.framing,
        },
    }
}

fn dedupe(rels: &mut Vec<Word>) {
    let mut seen = Vec::new();
    rels.retain(|r| {
        if r.is_empty() {
            return false;
        }
        let c = canonical_cyclic(r);
        if seen.contains(&c) {
            false
        } else {
            seen.push(c);
            true
        }
    });
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presentations::abelianization_rank;

    const TREFOIL_PD: &str = "PD[X[1,5,2,4], X[3,1,4,6], X[5,3,6,2]]";

    #[test]
    fn trefoil_from_pd_and_braid_have_same_shape() {
        for d in [Diagram::parse(TREFOIL_PD).unwrap(), Diagram::parse("aaa").unwrap()] {
            let k = d.knot_group().unwrap();
            assert_eq!(k.presentation.rank(), 3);
            assert_eq!(k.presentation.relators().len(), 3);
            assert_eq!(abelianization_rank(&k.presentation), 2);
            let lk = k.validate().unwrap();
            assert_eq!(lk.weights, vec![1, 1, 1]);
            assert_eq!(lk.of(&k.peripheral.longitude), 0);
        }
    }

    #[test]
    fn two_component_closure_is_rejected() {
        let d = Diagram::parse("aa").unwrap();
        assert_eq!(
            d.knot_group(),
            Err(PresentationError::MultiComponent { components: 2 })
        );
    }

    #[test]
    fn empty_diagram_is_unknot() {
        let k = Diagram::parse("PD[]").unwrap().knot_group().unwrap();
        assert_eq!(k, KnotGroup::unknot());
    }

    #[test]
    fn simplify_trefoil_to_two_generators() {
        let k = simplify(&Diagram::parse("aaa").unwrap().knot_group().unwrap());
        assert_eq!(k.presentation.rank(), 2);
        assert_eq!(k.presentation.relators().len(), 1);
        assert_eq!(k.peripheral.meridian, Word::generator(0));
        k.validate().unwrap();
    }

    #[test]
    fn simplify_unknot_diagrams_to_one_generator() {
        for s in ["aB", "aBc", "AbC", "PD[X[1,1,2,2]]", "PD[X[1,2,2,1]]"] {
            let k = simplify(&Diagram::parse(s).unwrap().knot_group().unwrap());
            assert_eq!(k.presentation.rank(), 1, "{s}");
            assert!(k.presentation.relators().is_empty(), "{s}");
            assert!(k.peripheral.longitude.is_empty(), "{s}");
        }
    }

    #[test]
    fn figure_eight_braid() {
        let k = Diagram::parse("aBaB").unwrap().knot_group().unwrap();
        assert_eq!(k.presentation.rank(), 4);
        let s = simplify(&k);
        assert_eq!(s.presentation.rank(), 2);
        s.validate().unwrap();
    }
}
