use std::path::Path;
use std::str::FromStr;

use knotcord::presentations::{simplify, Diagram, KnotGroup};
use knotcord::rewriting::{Backend, KbBudget, RewriteSystem, TermOrder};

use crate::error::CliError;

/// Built-in names, a file holding a presentation or a diagram, or an inline
/// diagram (braid word or PD code).
pub fn resolve_knot(knot: &str) -> Result<KnotGroup, CliError> {
    match knot {
        "unknot" => return Ok(KnotGroup::unknot()),
        "trefoil" => return Ok(KnotGroup::trefoil()),
        "figure-eight" => return Ok(Diagram::parse("aBaB")?.knot_group()?),
        _ => {}
    }
    let path = Path::new(knot);
    if path.is_file() {
        let text = std::fs::read_to_string(path)?;
        if text.contains('=') {
            return Ok(KnotGroup::parse(&text)?);
        }
        return Ok(Diagram::parse(&text)?.knot_group()?);
    }
    Ok(Diagram::parse(knot)?.knot_group()?)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BackendChoice {
    Auto,
    Rewrite,
    Torus(u32, u32),
    FreeAbelian,
}

impl FromStr for BackendChoice {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "auto" => Ok(BackendChoice::Auto),
            "rewrite" => Ok(BackendChoice::Rewrite),
            "free-abelian" => Ok(BackendChoice::FreeAbelian),
            _ => {
                let rest = s
                    .strip_prefix("torus:")
                    .ok_or_else(|| format!("unknown backend `{s}` (auto, rewrite, torus:p:q, free-abelian)"))?;
                let (p, q) = rest.split_once(':').ok_or("torus backend is written torus:p:q")?;
                let p = p.parse().map_err(|_| format!("bad p in `{s}`"))?;
                let q = q.parse().map_err(|_| format!("bad q in `{s}`"))?;
                Ok(BackendChoice::Torus(p, q))
            }
        }
    }
}

impl std::fmt::Display for BackendChoice {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            BackendChoice::Auto => write!(f, "auto"),
            BackendChoice::Rewrite => write!(f, "rewrite"),
            BackendChoice::Torus(p, q) => write!(f, "torus:{p}:{q}"),
            BackendChoice::FreeAbelian => write!(f, "free-abelian"),
        }
    }
}

/// `RULES` or `RULES:LENGTH`.
pub fn parse_budget(s: &str) -> Result<KbBudget, String> {
    let (r, l) = match s.split_once(':') {
        Some((r, l)) => (r, Some(l)),
        None => (s, None),
    };
    let max_rules: usize = r.parse().map_err(|_| format!("bad rule budget `{r}`"))?;
    let max_length = match l {
        Some(l) => l.parse().map_err(|_| format!("bad length budget `{l}`"))?,
        None => KbBudget::default().max_length,
    };
    if max_rules == 0 || max_length == 0 {
        return Err("budgets must be positive".into());
    }
    Ok(KbBudget { max_rules, max_length })
}

/// Builds the backend; the returned group is the one whose alphabet the
/// backend speaks. A rewrite system is read from `cache` when present there
/// and written to it after completion otherwise.
pub fn build_backend(
    k: &KnotGroup,
    choice: BackendChoice,
    budget: KbBudget,
    cache: Option<&Path>,
) -> Result<(KnotGroup, Backend), CliError> {
    match choice {
        BackendChoice::Auto => Ok(Backend::auto(k, budget)?),
        BackendChoice::Rewrite => {
            let s = simplify(k);
            let pres = s.presentation.clone();
            if let Some(path) = cache.filter(|p| p.is_file()) {
                let system = RewriteSystem::from_json(&std::fs::read_to_string(path)?)?;
                return Ok((s, Backend::rewrite(pres, system)?));
            }
            let backend = Backend::complete(pres.clone(), &TermOrder::shortlex(pres.rank()), budget)?;
            if let (Some(path), knotcord::rewriting::BackendKind::Rewrite(sys)) = (cache, backend.kind()) {
                std::fs::write(path, sys.to_json())?;
            }
            Ok((s, backend))
        }
        BackendChoice::Torus(p, q) => {
            let q = match (p, q) {
                (2, q) | (q, 2) => q,
                _ => return Err(CliError::Config(format!("only (2,q) torus knots are supported, got ({p},{q})"))),
            };
            let s = simplify(k);
            let backend = Backend::torus_two_q(s.presentation.clone(), q)?;
            Ok((s, backend))
        }
        BackendChoice::FreeAbelian => {
            let s = simplify(k);
            let backend = Backend::free_abelian(s.presentation.clone())?;
            Ok((s, backend))
        }
    }
}
