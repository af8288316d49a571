use std::collections::HashMap;
use std::fmt;

use super::PresentationError;

/// How crossing signs in a code are to be read.
///
/// `RightHanded` is the fixed convention of this crate: a right-handed
/// crossing is `+1`. `Mirrored` flips every sign, i.e. reads the code as the
/// mirror diagram (text prefix `mirror:`).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum SignConvention {
    #[default]
    RightHanded,
    Mirrored,
}

/// Planar-diagram code, one `[i, j, k, l]` tuple per crossing.
///
/// Labels name edges of the diagram; each appears in exactly two tuples
/// (or twice in one, for a kink).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PlanarDiagram {
    crossings: Vec<[u32; 4]>,
    convention: SignConvention,
}

impl PlanarDiagram {
    pub fn new(crossings: Vec<[u32; 4]>, convention: SignConvention) -> Result<Self, PresentationError> {
        let mut counts: HashMap<u32, usize> = HashMap::new();
        for c in &crossings {
            for &l in c {
                *counts.entry(l).or_default() += 1;
            }
        }
        let mut bad: Vec<(u32, usize)> = counts.into_iter().filter(|&(_, n)| n != 2).collect();
        bad.sort_unstable();
        if let Some(&(label, count)) = bad.first() {
            return Err(PresentationError::ArcLabel { label, count });
        }
        Ok(PlanarDiagram {
            crossings,
            convention,
        })
    }

    pub fn unknot() -> Self {
        PlanarDiagram {
            crossings: vec![],
            convention: SignConvention::RightHanded,
        }
    }

    pub fn crossings(&self) -> &[[u32; 4]] {
        &self.crossings
    }

    pub fn convention(&self) -> SignConvention {
        self.convention
    }

    /// Number of distinct edge labels.
    pub fn edge_count(&self) -> usize {
        2 * self.crossings.len()
    }

    /// The other slot carrying the same label as `(crossing, slot)`.
    pub(super) fn partner(&self, crossing: usize, slot: usize) -> (usize, usize) {
        let label = self.crossings[crossing][slot];
        for (c, t) in self.crossings.iter().enumerate() {
            for (s, &l) in t.iter().enumerate() {
                if l == label && (c, s) != (crossing, slot) {
                    return (c, s);
                }
            }
        }
        unreachable!("validated: every label appears twice")
    }

    /// Number of link components, found by walking straight through crossings.
    pub fn components(&self) -> usize {
        let n = self.crossings.len();
        let mut seen = vec![[false; 4]; n];
        let mut components = 0;
        for c0 in 0..n {
            for s0 in 0..4 {
                if seen[c0][s0] {
                    continue;
                }
                components += 1;
                let (mut c, mut s) = (c0, s0);
                while !seen[c][s] {
                    seen[c][s] = true;
                    let out = (s + 2) % 4;
                    seen[c][out] = true;
                    (c, s) = self.partner(c, out);
                }
            }
        }
        components
    }
}

impl fmt::Display for PlanarDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.convention == SignConvention::Mirrored {
            write!(f, "mirror:")?;
        }
        let parts: Vec<String> = self
            .crossings
            .iter()
            .map(|[a, b, c, d]| format!("X[{a},{b},{c},{d}]"))
            .collect();
        write!(f, "PD[{}]", parts.join(", "))
    }
}

/// Parses `PD[X[1,5,2,4], X[3,1,4,6], X[5,3,6,2]]`, `[(1,5,2,4), ...]` or
/// bare `X[...]` lists. An empty string or `PD[]` is the 0-crossing unknot.
pub fn parse_pd(text: &str) -> Result<PlanarDiagram, PresentationError> {
    let mut body = text.trim();
    let mut convention = SignConvention::RightHanded;
    let offset0 = text.len() - text.trim_start().len();
    let mut offset = offset0;
    if let Some(rest) = body.strip_prefix("mirror:") {
        convention = SignConvention::Mirrored;
        offset += "mirror:".len();
        body = rest;
    }

    struct Group {
        open: usize,
        numbers: Vec<u32>,
        nested: bool,
    }
    let mut stack: Vec<Group> = Vec::new();
    let mut crossings = Vec::new();
    let chars: Vec<(usize, char)> = body.char_indices().collect();
    let mut i = 0;
    while i < chars.len() {
        let (p, c) = chars[i];
        let pos = p + offset;
        match c {
            '[' | '(' => {
                if let Some(top) = stack.last_mut() {
                    top.nested = true;
                }
                stack.push(Group {
                    open: pos,
                    numbers: vec![],
                    nested: false,
                });
            }
            ']' | ')' => {
                let g = stack.pop().ok_or_else(|| PresentationError::Syntax {
                    pos,
                    msg: "unbalanced closing bracket".into(),
                })?;
                if !g.numbers.is_empty() {
                    if g.nested {
                        return Err(PresentationError::MalformedTuple {
                            pos: g.open,
                            msg: "tuple mixes labels and nested groups".into(),
                        });
                    }
                    let t: [u32; 4] = g.numbers.as_slice().try_into().map_err(|_| PresentationError::MalformedTuple {
                        pos: g.open,
                        msg: format!("expected 4 labels, found {}", g.numbers.len()),
                    })?;
                    crossings.push(t);
                }
            }
            d if d.is_ascii_digit() => {
                let mut j = i;
                while j < chars.len() && chars[j].1.is_ascii_digit() {
                    j += 1;
                }
                let end = if j < chars.len() { chars[j].0 } else { body.len() };
                let n: u32 = body[p..end].parse().map_err(|_| PresentationError::Syntax {
                    pos,
                    msg: "label out of range".into(),
                })?;
                match stack.last_mut() {
                    Some(g) => g.numbers.push(n),
                    None => {
                        return Err(PresentationError::MalformedTuple {
                            pos,
                            msg: "label outside a crossing tuple".into(),
                        })
                    }
                }
                i = j;
                continue;
            }
            'X' | 'x' | 'P' | 'D' => {}
            ',' | ';' => {}
            w if w.is_whitespace() => {}
            other => {
                return Err(PresentationError::Syntax {
                    pos,
                    msg: format!("unexpected character `{other}`"),
                })
            }
        }
        i += 1;
    }
    if let Some(g) = stack.last() {
        return Err(PresentationError::Syntax {
            pos: g.open,
            msg: "unclosed bracket".into(),
        });
    }
    PlanarDiagram::new(crossings, convention)
}
