use std::fmt;

use super::pd::{PlanarDiagram, SignConvention};
use super::PresentationError;

/// A braid word: `σ_i` is `i`, `σ_i^-1` is `-i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BraidWord {
    letters: Vec<i32>,
    strands: usize,
}

impl BraidWord {
    pub fn new(letters: Vec<i32>, strands: usize) -> Result<Self, PresentationError> {
        if strands < 2 {
            return Err(PresentationError::Syntax {
                pos: 0,
                msg: format!("a braid needs at least 2 strands, got {strands}"),
            });
        }
        for (pos, &l) in letters.iter().enumerate() {
            if l == 0 {
                return Err(PresentationError::ZeroIndex { pos });
            }
            if l.unsigned_abs() as usize > strands - 1 {
                return Err(PresentationError::UnknownStrand {
                    pos,
                    letter: l.to_string(),
                    strands,
                });
            }
        }
        Ok(BraidWord { letters, strands })
    }

    pub fn letters(&self) -> &[i32] {
        &self.letters
    }

    pub fn strands(&self) -> usize {
        self.strands
    }

    pub fn writhe(&self) -> i64 {
        self.letters.iter().map(|l| l.signum() as i64).sum()
    }

    /// Planar diagram of the braid closure. Both strands of every crossing run
    /// upward; `σ_i` has the strand in position `i` crossing over.
    pub fn to_pd(&self) -> PlanarDiagram {
        let n = self.strands;
        let mut pos: Vec<u32> = (1..=n as u32).collect();
        let mut next = n as u32 + 1;
        let mut crossings = Vec::with_capacity(self.letters.len());
        for &l in &self.letters {
            let i = l.unsigned_abs() as usize - 1;
            let (left, right) = (pos[i], pos[i + 1]);
            let (new_left, new_right) = (next, next + 1);
            next += 2;
            if l > 0 {
                crossings.push([right, new_right, new_left, left]);
            } else {
                crossings.push([left, right, new_right, new_left]);
            }
            pos[i] = new_left;
            pos[i + 1] = new_right;
        }
        // closure: the top label of each position joins the bottom label
        let close = |label: u32| -> u32 {
            match pos.iter().position(|&p| p == label) {
                Some(strand) if label > n as u32 => strand as u32 + 1,
                _ => label,
            }
        };
        let crossings = crossings
            .into_iter()
            .map(|c| c.map(close))
            .collect();
        PlanarDiagram::new(crossings, SignConvention::RightHanded).expect("braid closure is a valid diagram")
    }
}

impl fmt::Display for BraidWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return write!(f, "[]");
        }
        if self.strands <= 27 {
            let s: String = self
                .letters
                .iter()
                .map(|&l| {
                    let c = (b'a' + (l.unsigned_abs() - 1) as u8) as char;
                    if l < 0 {
                        c.to_ascii_uppercase()
                    } else {
                        c
                    }
                })
                .collect();
            write!(f, "{s}")
        } else {
            let parts: Vec<String> = self.letters.iter().map(|l| l.to_string()).collect();
            write!(f, "[{}]", parts.join(", "))
        }
    }
}

/// Parses `aab`-style letter words (`A` = `a^-1`) or signed integer lists such
/// as `1 1 -2` / `[1, 1, -2]`. The strand count is one more than the largest
/// generator index, and the generators used must be contiguous from `1`;
/// otherwise the closure would split off unlinked strands.
pub fn parse_braid(text: &str) -> Result<BraidWord, PresentationError> {
    let trimmed = text.trim();
    if trimmed.is_empty() {
        return Err(PresentationError::Syntax {
            pos: 0,
            msg: "empty braid word".into(),
        });
    }
    let numeric = trimmed.chars().any(|c| c.is_ascii_digit() || c == '-');
    let mut letters: Vec<(usize, i32, String)> = Vec::new();
    if numeric {
        let mut start = None;
        let push = |s: usize, e: usize, letters: &mut Vec<(usize, i32, String)>| -> Result<(), PresentationError> {
            let tok = &text[s..e];
            let v: i32 = tok.parse().map_err(|_| PresentationError::Syntax {
                pos: s,
                msg: format!("expected a signed integer, found `{tok}`"),
            })?;
            if v == 0 {
                return Err(PresentationError::ZeroIndex { pos: s });
            }
            letters.push((s, v, tok.to_string()));
            Ok(())
        };
        for (i, c) in text.char_indices() {
            let sep = c.is_whitespace() || matches!(c, ',' | '[' | ']' | '(' | ')');
            if sep {
                if let Some(s) = start.take() {
                    push(s, i, &mut letters)?;
                }
            } else if start.is_none() {
                start = Some(i);
            }
        }
        if let Some(s) = start {
            push(s, text.len(), &mut letters)?;
        }
    } else {
        for (i, c) in text.char_indices() {
            if c.is_whitespace() {
                continue;
            }
            if !c.is_ascii_alphabetic() {
                return Err(PresentationError::Syntax {
                    pos: i,
                    msg: format!("unexpected character `{c}`"),
                });
            }
            let idx = (c.to_ascii_lowercase() as u8 - b'a' + 1) as i32;
            let v = if c.is_ascii_uppercase() { -idx } else { idx };
            letters.push((i, v, c.to_string()));
        }
    }
    if letters.is_empty() {
        return Err(PresentationError::Syntax {
            pos: 0,
            msg: "empty braid word".into(),
        });
    }
    let mut used: Vec<u32> = letters.iter().map(|(_, v, _)| v.unsigned_abs()).collect();
    used.sort_unstable();
    used.dedup();
    let declared = used.len();
    if let Some((pos, _, tok)) = letters.iter().find(|(_, v, _)| v.unsigned_abs() as usize > declared) {
        return Err(PresentationError::UnknownStrand {
            pos: *pos,
            letter: tok.clone(),
            strands: declared + 1,
        });
    }
    BraidWord::new(letters.into_iter().map(|(_, v, _)| v).collect(), declared + 1)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn letter_words() {
        let b = parse_braid("aab").unwrap();
        assert_eq!(b.letters(), &[1, 1, 2]);
        assert_eq!(b.strands(), 3);
        let t = parse_braid("aaa").unwrap();
        assert_eq!(t.letters(), &[1, 1, 1]);
        assert_eq!(t.strands(), 2);
        assert_eq!(parse_braid("aBa").unwrap().letters(), &[1, -2, 1]);
    }

    #[test]
    fn integer_lists() {
        assert_eq!(parse_braid("[1, -2, 1]").unwrap().letters(), &[1, -2, 1]);
        assert_eq!(parse_braid("1 1 1").unwrap().strands(), 2);
    }

    #[test]
    fn errors() {
        assert!(matches!(
            parse_braid("aX"),
            Err(PresentationError::UnknownStrand { pos: 1, .. })
        ));
        assert!(matches!(parse_braid("1 0 1"), Err(PresentationError::ZeroIndex { pos: 2 })));
        assert!(matches!(parse_braid("a+b"), Err(PresentationError::Syntax { pos: 1, .. })));
        assert!(parse_braid("   ").is_err());
    }

    #[test]
    fn display_round_trip() {
        for s in ["aab", "aBaB", "abcABC"] {
            let b = parse_braid(s).unwrap();
            assert_eq!(parse_braid(&b.to_string()).unwrap(), b);
        }
    }

    #[test]
    fn closure_diagram_has_two_edges_per_crossing() {
        let pd = parse_braid("aaa").unwrap().to_pd();
        assert_eq!(pd.crossings().len(), 3);
        assert_eq!(pd.edge_count(), 6);
        assert_eq!(pd.components(), 1);
        assert_eq!(parse_braid("aa").unwrap().to_pd().components(), 2);
    }
}
