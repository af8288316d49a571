use super::{GroupPresentation, KnotGroup, PeripheralSystem, PresentationError};
use crate::word::{Letter, Word};

/// How words are written: space-separated tokens `name`, `name^k`, or `1`.
///
/// When every generator symbol is a single character, a token may also be a
/// run of characters (`mam`), with an upper-case character standing for the
/// inverse of its lower-case generator (`aMA`).
pub struct WordSyntax;

pub(super) fn is_symbol(s: &str) -> bool {
    let mut chars = s.chars();
    match chars.next() {
        Some(c) if c.is_alphabetic() || c == '_' => chars.all(|c| c.is_alphanumeric() || c == '_'),
        _ => false,
    }
}

fn is_separator(c: char) -> bool {
    c.is_whitespace() || matches!(c, '*' | '·' | '.' | ',')
}

pub(super) fn parse_word(
    pres: &GroupPresentation,
    text: &str,
    aliases: &[(&str, &Word)],
) -> Result<Word, PresentationError> {
    let mut out = Vec::new();
    let compact = pres.generators().iter().all(|g| g.chars().count() == 1);
    let mut start = None;
    let bytes: Vec<(usize, char)> = text.char_indices().collect();
    let mut tokens = Vec::new();
    for &(i, c) in &bytes {
        if is_separator(c) {
            if let Some(s) = start.take() {
                tokens.push((s, &text[s..i]));
            }
        } else if start.is_none() {
            start = Some(i);
        }
    }
    if let Some(s) = start {
        tokens.push((s, &text[s..]));
    }

    for (pos, token) in tokens {
        let (base, exp) = match token.split_once('^') {
            Some((b, e)) => {
                let e = e.trim_start_matches('(').trim_end_matches(')');
                let e: i64 = e.parse().map_err(|_| PresentationError::Syntax {
                    pos,
                    msg: format!("bad exponent in `{token}`"),
                })?;
                (b, e)
            }
            None => (token, 1),
        };
        if base.is_empty() {
            return Err(PresentationError::Syntax {
                pos,
                msg: "missing generator before `^`".into(),
            });
        }
        if base == "1" {
            continue;
        }
        if let Some(g) = pres.generator_index(base) {
            out.extend(Word::generator(g).pow(exp).into_letters());
            continue;
        }
        if let Some((_, w)) = aliases.iter().find(|(name, _)| *name == base) {
            out.extend(w.pow(exp).into_letters());
            continue;
        }
        if compact {
            let chars: Vec<char> = base.chars().collect();
            let mut letters = Vec::with_capacity(chars.len());
            for &c in &chars {
                letters.push(compact_letter(pres, c).ok_or_else(|| PresentationError::UnknownGenerator(c.to_string()))?);
            }
            let last = letters.pop().expect("nonempty token");
            out.extend(letters);
            out.extend(Word::letter(last).pow(exp).into_letters());
            continue;
        }
        return Err(PresentationError::UnknownGenerator(base.to_string()));
    }
    Ok(Word::from_letters(out))
}

fn compact_letter(pres: &GroupPresentation, c: char) -> Option<Letter> {
    let s = c.to_string();
    if let Some(g) = pres.generator_index(&s) {
        return Some(Letter::gen(g));
    }
    if c.is_uppercase() {
        let lower: String = c.to_lowercase().collect();
        return pres.generator_index(&lower).map(Letter::inv);
    }
    None
}

pub(super) fn format_word(pres: &GroupPresentation, w: &Word) -> String {
    if w.is_empty() {
        return "1".into();
    }
    let mut parts = Vec::new();
    let letters = w.letters();
    let mut i = 0;
    while i < letters.len() {
        let l = letters[i];
        let mut j = i;
        while j < letters.len() && letters[j] == l {
            j += 1;
        }
        let run = (j - i) as i64 * l.exponent();
        let name = pres
            .generators()
            .get(l.generator())
            .cloned()
            .unwrap_or_else(|| format!("g{}", l.generator()));
        if run == 1 {
            parts.push(name);
        } else {
            parts.push(format!("{name}^{run}"));
        }
        i = j;
    }
    parts.join(" ")
}

pub(super) fn knot_group_to_text(k: &KnotGroup) -> String {
    let p = &k.presentation;
    let mut s = String::new();
    s.push_str(&format!("generators = {}\n", p.generators().join(" ")));
    for r in p.relators() {
        s.push_str(&format!("relator = {}\n", p.format_word(r)));
    }
    s.push_str(&format!("meridian = {}\n", p.format_word(&k.peripheral.meridian)));
    s.push_str(&format!("longitude = {}\n", p.format_word(&k.peripheral.longitude)));
    s.push_str(&format!("framing = {}\n", k.peripheral.framing));
    s
}

pub(super) fn knot_group_from_text(text: &str) -> Result<KnotGroup, PresentationError> {
    let mut generators: Option<Vec<String>> = None;
    let mut relators = Vec::new();
    let mut meridian = None;
    let mut longitude = None;
    let mut framing = None;
    let mut offset = 0;
    for line in text.lines() {
        let pos = offset;
        offset += line.len() + 1;
        let content = line.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let (key, value) = content.split_once('=').ok_or_else(|| PresentationError::Syntax {
            pos,
            msg: format!("expected `key = value`, found `{content}`"),
        })?;
        let (key, value) = (key.trim(), value.trim());
        match key {
            "generators" => {
                generators = Some(value.split_whitespace().map(str::to_string).collect());
            }
            "relator" | "meridian" | "longitude" => {
                let gens = generators.clone().ok_or_else(|| PresentationError::Syntax {
                    pos,
                    msg: "`generators` must come first".into(),
                })?;
                let shell = GroupPresentation::new(gens, vec![])?;
                let w = shell.parse_word(value)?;
                match key {
                    "relator" => relators.push(w),
                    "meridian" => meridian = Some(w),
                    _ => longitude = Some(w),
                }
            }
            "framing" => {
                framing = Some(value.parse::<i64>().map_err(|_| PresentationError::Syntax {
                    pos,
                    msg: format!("bad framing `{value}`"),
                })?);
            }
            other => {
                return Err(PresentationError::Syntax {
                    pos,
                    msg: format!("unknown key `{other}`"),
                })
            }
        }
    }
    let missing = |what: &str| PresentationError::Syntax {
        pos: text.len(),
        msg: format!("missing `{what}`"),
    };
    let presentation = GroupPresentation::new(generators.ok_or_else(|| missing("generators"))?, relators)?;
    Ok(KnotGroup {
        presentation,
        peripheral: PeripheralSystem {
            meridian: meridian.ok_or_else(|| missing("meridian"))?,
            longitude: longitude.ok_or_else(|| missing("longitude"))?,
            framing: framing.unwrap_or(0),
        },
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ma() -> GroupPresentation {
        GroupPresentation::new(vec!["m".into(), "a".into()], vec![]).unwrap()
    }

    #[test]
    fn token_and_compact_forms_agree() {
        let p = ma();
        let a = p.parse_word("a m a^-1 m a m^-3").unwrap();
        let b = p.parse_word("amAmam^-3").unwrap();
        let c = p.parse_word("a*m*a^(-1)*m*a*m^-3").unwrap();
        assert_eq!(a, b);
        assert_eq!(a, c);
        assert_eq!(p.format_word(&a), "a m a^-1 m a m^-3");
    }

    #[test]
    fn identity_spellings() {
        let p = ma();
        assert_eq!(p.parse_word("1").unwrap(), Word::identity());
        assert_eq!(p.parse_word("").unwrap(), Word::identity());
        assert_eq!(p.format_word(&Word::identity()), "1");
    }

    #[test]
    fn unknown_generator_is_rejected() {
        let p = GroupPresentation::new(vec!["x1".into(), "x2".into()], vec![]).unwrap();
        assert!(matches!(p.parse_word("x1 x3"), Err(PresentationError::UnknownGenerator(_))));
        assert!(matches!(p.parse_word("x1^q"), Err(PresentationError::Syntax { .. })));
    }

    #[test]
    fn aliases_expand() {
        let p = ma();
        let lam = p.parse_word("a m").unwrap();
        let w = p.parse_word_with("lambda^2 m", &[("lambda", &lam)]).unwrap();
        assert_eq!(p.format_word(&w), "a m a m^2");
    }
}
