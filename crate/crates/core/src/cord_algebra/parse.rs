//! Text syntax for sums of broken words, e.g. `{m} - 2 {1}[a m^-1]{l^2}`.
//!
//! Curly entries hold a monomial in `l` (also `lambda`, `λ`) and `m` (`mu`,
//! `μ`). Square entries hold a word in the presentation, where `l` and `m`
//! may be used for the longitude and meridian unless a generator already has
//! that name. Adjacent entries of the same kind are multiplied together. A
//! bare integer stands for that multiple of `{1}`.

use super::broken::{BrokenWord, BrokenWordSum, Entry, LaurentMonomial};
use super::CordError;
use crate::presentations::{GroupPresentation, PeripheralSystem};
use crate::word::Word;

fn err(pos: usize, msg: impl Into<String>) -> CordError {
    CordError::Parse { pos, msg: msg.into() }
}

fn parse_monomial(body: &str, offset: usize) -> Result<LaurentMonomial, CordError> {
    let mut m = LaurentMonomial::ONE;
    for token in body.split(|c: char| c.is_whitespace() || c == '*' || c == '·') {
        if token.is_empty() {
            continue;
        }
        let (base, exp) = match token.split_once('^') {
            Some((b, e)) => {
                let e = e.trim_start_matches('(').trim_end_matches(')');
                let e: i64 = e.parse().map_err(|_| err(offset, format!("bad exponent in `{token}`")))?;
                (b, e)
            }
            None => (token, 1),
        };
        match base {
            "1" => {}
            "l" | "lambda" | "λ" => m.a += exp,
            "m" | "mu" | "μ" => m.b += exp,
            _ => return Err(err(offset, format!("`{base}` is not l or m"))),
        }
    }
    Ok(m)
}

/// Parses a broken-word sum against a presentation and its peripheral pair.
pub fn parse_broken_sum(text: &str, pres: &GroupPresentation, peripheral: &PeripheralSystem) -> Result<BrokenWordSum, CordError> {
    let lon = &peripheral.longitude;
    let mer = &peripheral.meridian;
    let aliases: Vec<(&str, &Word)> = [("l", lon), ("lambda", lon), ("λ", lon), ("m", mer), ("mu", mer), ("μ", mer)]
        .into_iter()
        .filter(|(n, _)| pres.generator_index(n).is_none())
        .collect();

    let chars: Vec<(usize, char)> = text.char_indices().collect();
    let mut i = 0;
    let mut sum = BrokenWordSum::zero();
    let mut expect_term = true;
    let mut sign = 1i64;
    let mut seen_any = false;

    let skip_ws = |i: &mut usize| {
        while *i < chars.len() && chars[*i].1.is_whitespace() {
            *i += 1;
        }
    };

    loop {
        skip_ws(&mut i);
        if i >= chars.len() {
            break;
        }
        let (pos, c) = chars[i];
        if c == '+' || c == '-' {
            if !expect_term {
                expect_term = true;
                sign = 1;
            }
            if c == '-' {
                sign = -sign;
            }
            i += 1;
            continue;
        }
        if !expect_term {
            return Err(err(pos, "expected `+` or `-` between terms"));
        }

        let mut coeff = 1i64;
        if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].1.is_ascii_digit() {
                i += 1;
            }
            let end = chars.get(i).map_or(text.len(), |&(p, _)| p);
            coeff = text[chars[start].0..end].parse().map_err(|_| err(pos, "coefficient out of range"))?;
            skip_ws(&mut i);
            if i < chars.len() && chars[i].1 == '*' {
                i += 1;
                skip_ws(&mut i);
            }
        }

        let mut word: Option<BrokenWord> = None;
        while i < chars.len() {
            let (open_pos, open) = chars[i];
            let close = match open {
                '{' => '}',
                '[' => ']',
                _ => break,
            };
            let body_start = i + 1;
            let mut j = body_start;
            while j < chars.len() && chars[j].1 != close {
                if matches!(chars[j].1, '{' | '[' | '}' | ']') {
                    return Err(err(chars[j].0, "nested or unbalanced bracket"));
                }
                j += 1;
            }
            if j >= chars.len() {
                return Err(err(open_pos, format!("unclosed `{open}`")));
            }
            let body = &text[chars[body_start.min(j)].0..chars[j].0];
            let body_offset = open_pos + open.len_utf8();
            let entry = if open == '{' {
                Entry::Curly(parse_monomial(body, body_offset)?)
            } else {
                let w = pres
                    .parse_word_with(body, &aliases)
                    .map_err(|e| err(body_offset, e.to_string()))?;
                Entry::Square(w)
            };
            let piece = BrokenWord::new(vec![entry])?;
            word = Some(match word {
                None => piece,
                Some(w) => w.concat(&piece),
            });
            i = j + 1;
            skip_ws(&mut i);
        }
        let word = match word {
            Some(w) => w,
            None if c.is_ascii_digit() => BrokenWord::curly(LaurentMonomial::ONE),
            None => return Err(err(pos, format!("unexpected `{c}`"))),
        };
        sum.add_term(word, sign * coeff);
        seen_any = true;
        expect_term = false;
        sign = 1;
    }
    if expect_term && seen_any {
        return Err(err(text.len(), "dangling sign"));
    }
    if !seen_any && !text.trim().is_empty() {
        return Err(err(text.len(), "no terms"));
    }
    Ok(sum)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presentations::KnotGroup;

    fn parse(s: &str) -> Result<BrokenWordSum, CordError> {
        let k = KnotGroup::trefoil();
        parse_broken_sum(s, &k.presentation, &k.peripheral)
    }

    #[test]
    fn single_curly() {
        let s = parse("{l^2 m^-1}").unwrap();
        let (w, c) = s.terms().next().unwrap();
        assert_eq!(c, 1);
        assert_eq!(w.entries(), &[Entry::Curly(LaurentMonomial::new(2, -1))]);
    }

    #[test]
    fn signs_and_coefficients() {
        let s = parse("{m} - 2 {1}[a]{1} + 3*{1}[a]{1} - 4").unwrap();
        let k = KnotGroup::trefoil();
        let a = k.presentation.parse_word("a").unwrap();
        let sand = BrokenWord::sandwich(LaurentMonomial::ONE, a, LaurentMonomial::ONE);
        let coeffs: Vec<i64> = s.terms().map(|(_, c)| c).collect();
        assert_eq!(coeffs.len(), 3);
        assert_eq!(s.terms().find(|(w, _)| **w == sand).unwrap().1, 1);
        assert_eq!(s.terms().find(|(w, _)| **w == BrokenWord::curly(LaurentMonomial::ONE)).unwrap().1, -4);
    }

    #[test]
    fn longitude_alias_in_square() {
        let k = KnotGroup::trefoil();
        let s = parse("{1}[l]{1}").unwrap();
        let (w, _) = s.terms().next().unwrap();
        assert_eq!(w.entries()[1], Entry::Square(k.peripheral.longitude.clone()));
    }

    #[test]
    fn adjacent_entries_merge() {
        let s = parse("{m}{l}[a][a]{1}").unwrap();
        let (w, _) = s.terms().next().unwrap();
        assert_eq!(w.len(), 3);
        assert_eq!(w.entries()[0], Entry::Curly(LaurentMonomial::new(1, 1)));
    }

    #[test]
    fn errors() {
        for bad in ["{m", "{q}", "[z]", "{m} {l} +", "{m} [a", "{m}}", "3 x"] {
            assert!(parse(bad).is_err(), "{bad}");
        }
        assert!(parse("").unwrap().is_zero());
    }
}
