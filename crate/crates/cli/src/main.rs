//! `knotcord` command-line front end. Every report starts with `#` lines
//! recording the configuration that produced it.

mod error;
mod input;

use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};
use knotcord::chords::{chord_spectrum, find_chords, plane_intersection_bound, Exec, FindConfig, ParametricKnot};
use knotcord::cord_algebra::{
    check_relations, parse_broken_sum, phi_hat, psi, reduce_with, trefoil_relations, trefoil_relations_in_group_ring,
    unknot_test, BrokenWordSum, NormalForm, Strategy, Style, UnknotVerdict,
};
use knotcord::group_ring::GroupRing;
use knotcord::presentations::{simplify, KnotGroup};
use knotcord::rewriting::{BackendKind, KbBudget};
use knotcord::word::Word;
use serde_json::json;

use error::CliError;
use input::{build_backend, parse_budget, resolve_knot, BackendChoice};

#[derive(Parser)]
#[command(name = "knotcord", version, about = "Cord algebra and binormal chords of knots")]
struct Cli {
    #[command(flatten)]
    common: Common,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Common {
    /// `unknot`, `trefoil`, `figure-eight`, a braid word, a PD code, or a file
    #[arg(long, global = true, default_value = "trefoil")]
    knot: String,
    /// auto, rewrite, torus:p:q or free-abelian
    #[arg(long, global = true, default_value = "auto")]
    backend: BackendChoice,
    /// Completion budget as RULES or RULES:LENGTH
    #[arg(long, global = true, value_parser = parse_budget, default_value = "5000:200")]
    kb_budget: KbBudget,
    /// Rewrite-system cache (JSON) for `--backend rewrite`
    #[arg(long, global = true)]
    rules_cache: Option<PathBuf>,
    /// Write the report here instead of standard output
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[arg(long, global = true, default_value_t = 1)]
    seed: u64,
}

#[derive(Subcommand)]
enum Command {
    /// Knot group presentation with meridian and longitude
    Present {
        /// Apply Tietze simplification first
        #[arg(long)]
        simplify: bool,
    },
    /// Canonical form of a group word (`l`, `m` name the longitude and meridian)
    Normalize { word: String },
    /// Normal form of a broken-word expression such as `{l m}[a]{1} - 2{m}`
    Reduce {
        expr: String,
        #[arg(long, value_enum, default_value_t = StrategyArg::Direct)]
        strategy: StrategyArg,
    },
    /// Image in the group ring of a broken-word expression
    Psi { expr: String },
    /// Verify the four defining relations of the trefoil cord algebra
    CheckTrefoil,
    /// Decide whether the knot is trivial
    UnknotTest,
    /// Binormal chord spectrum of a knot file (TOML Fourier coefficients)
    Chords {
        file: PathBuf,
        #[arg(long)]
        grid_n: Option<usize>,
        #[arg(long)]
        newton_tol: Option<f64>,
        #[arg(long)]
        diag_radius: Option<f64>,
        /// Also bound the bridge number with this many random planes
        #[arg(long, default_value_t = 0)]
        planes: usize,
        #[arg(long)]
        sequential: bool,
        #[arg(long, value_enum, default_value_t = Format::Table)]
        format: Format,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum StrategyArg {
    Direct,
    Leftmost,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Table,
    Json,
}

/// A report plus the configuration header printed above it.
struct Report {
    header: Vec<(String, String)>,
    body: String,
}

impl Report {
    fn new(command: &str) -> Self {
        Report {
            header: vec![
                ("knotcord".into(), env!("CARGO_PKG_VERSION").into()),
                ("command".into(), command.into()),
            ],
            body: String::new(),
        }
    }

    fn set(&mut self, k: &str, v: impl ToString) {
        self.header.push((k.into(), v.to_string()));
    }

    fn line(&mut self, k: &str, v: impl AsRef<str>) {
        self.body.push_str(&format!("{k} = {}\n", v.as_ref()));
    }

    fn render(&self, comment: &str) -> String {
        let mut s: String = self.header.iter().map(|(k, v)| format!("{comment} {k} = {v}\n")).collect();
        s.push_str(&self.body);
        s
    }
}

/// A report, plus an error that should set the exit status after it is
/// written.
type Outcome = (Report, Option<CliError>);

fn main() -> ExitCode {
    let cli = Cli::parse();
    let comment = match &cli.command {
        Command::Chords { format: Format::Json, .. } => None,
        _ => Some("#"),
    };
    let result = run(&cli).and_then(|(report, late)| {
        let text = match comment {
            Some(c) => report.render(c),
            None => report.body.clone(),
        };
        match &cli.common.out {
            Some(p) => std::fs::write(p, text)?,
            None => print!("{text}"),
        }
        late.map_or(Ok(()), Err)
    });
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("knotcord: {e}");
            e.exit_code()
        }
    }
}

fn run(cli: &Cli) -> Result<Outcome, CliError> {
    let c = &cli.common;
    match &cli.command {
        Command::Present { simplify: simp } => present(c, *simp),
        Command::Normalize { word } => normalize(c, word),
        Command::Reduce { expr, strategy } => reduce_cmd(c, expr, *strategy),
        Command::Psi { expr } => psi_cmd(c, expr),
        Command::CheckTrefoil => check_trefoil(c),
        Command::UnknotTest => unknot(c),
        Command::Chords {
            file,
            grid_n,
            newton_tol,
            diag_radius,
            planes,
            sequential,
            format,
        } => {
            let mut cfg = FindConfig::default();
            cfg.grid_n = grid_n.unwrap_or(cfg.grid_n);
            cfg.newton_tol = newton_tol.unwrap_or(cfg.newton_tol);
            cfg.diag_radius = diag_radius.unwrap_or(cfg.diag_radius);
            if *sequential {
                cfg.exec = Exec::Sequential;
            }
            chords(c, file, cfg, *planes, *format)
        }
    }
}

fn knot_header(r: &mut Report, c: &Common) {
    r.set("knot", &c.knot);
    r.set("backend", c.backend);
    r.set("kb-budget", format!("{}:{}", c.kb_budget.max_rules, c.kb_budget.max_length));
}

fn ring(c: &Common, r: &mut Report) -> Result<Arc<GroupRing>, CliError> {
    ring_for(&resolve_knot(&c.knot)?, c, r)
}

fn ring_for(k: &KnotGroup, c: &Common, r: &mut Report) -> Result<Arc<GroupRing>, CliError> {
    knot_header(r, c);
    let (k, backend) = build_backend(k, c.backend, c.kb_budget, c.rules_cache.as_deref())?;
    r.set("resolved-backend", backend.describe());
    r.set("generators", k.presentation.generators().join(" "));
    Ok(GroupRing::new(&k, backend)?)
}

fn present(c: &Common, simp: bool) -> Result<Outcome, CliError> {
    let mut r = Report::new("present");
    r.set("knot", &c.knot);
    r.set("simplify", simp);
    let mut k = resolve_knot(&c.knot)?;
    if simp {
        k = simplify(&k);
    }
    let lk = k.validate()?;
    r.set("linking-weights", format!("{:?}", lk.weights));
    r.body = k.to_text();
    Ok((r, None))
}

fn parse_group_word(ring: &GroupRing, text: &str) -> Result<Word, CliError> {
    let pres = ring.backend().presentation();
    Ok(pres.parse_word_with(text, &[("l", ring.longitude()), ("m", ring.meridian())])?)
}

fn normalize(c: &Common, text: &str) -> Result<Outcome, CliError> {
    let mut r = Report::new("normalize");
    let ring = ring(c, &mut r)?;
    let w = parse_group_word(&ring, text)?;
    let backend = ring.backend();
    r.line("word", ring.format_word(&w));
    match backend.normalize(&w) {
        Ok(n) => {
            r.line("normal", ring.format_word(&n));
            r.line("identity", backend.is_identity(&w).as_str());
            Ok((r, None))
        }
        Err(knotcord::rewriting::RewriteError::Undecided) => {
            if let BackendKind::Rewrite(sys) = backend.kind() {
                r.line("partial", ring.format_word(&sys.reduce(&w)));
            }
            r.line("normal", "undecided");
            r.line("identity", backend.is_identity(&w).as_str());
            let e = CliError::Undecided("rewrite system is not confluent within the budget".into());
            Ok((r, Some(e)))
        }
        Err(e) => Err(e.into()),
    }
}

fn parse_expr(ring: &GroupRing, text: &str) -> Result<BrokenWordSum, CliError> {
    Ok(parse_broken_sum(text, ring.backend().presentation(), ring.peripheral())?)
}

/// The normal form written back as a broken-word expression.
fn nf_expression(ring: &GroupRing, nf: &NormalForm) -> String {
    let mut parts: Vec<(i64, String)> = nf
        .l
        .terms()
        .map(|(k, c)| (c, match k {
            0 => "{1}".to_string(),
            1 => "{l}".to_string(),
            _ => format!("{{l^{k}}}"),
        }))
        .collect();
    parts.extend(nf.g.terms().map(|(w, c)| {
        let w = if w.is_empty() { "1".to_string() } else { ring.format_word(w) };
        (c, format!("{{1}}[{w}]{{1}}"))
    }));
    if parts.is_empty() {
        return "0".into();
    }
    let mut s = String::new();
    for (i, (c, term)) in parts.iter().enumerate() {
        let sign = if *c < 0 { "-" } else { "+" };
        if i > 0 {
            s.push_str(&format!(" {sign} "));
        } else if *c < 0 {
            s.push('-');
        }
        if c.abs() != 1 {
            s.push_str(&format!("{} ", c.abs()));
        }
        s.push_str(term);
    }
    s
}

fn reduce_cmd(c: &Common, text: &str, strategy: StrategyArg) -> Result<Outcome, CliError> {
    let mut r = Report::new("reduce");
    let ring = ring(c, &mut r)?;
    let strategy = match strategy {
        StrategyArg::Direct => Strategy::Direct,
        StrategyArg::Leftmost => Strategy::LeftmostFirst,
    };
    r.set("strategy", format!("{strategy:?}"));
    let s = parse_expr(&ring, text)?;
    let nf = reduce_with(&ring, &s, strategy)?;
    r.line("input", s.format(ring.backend().presentation()));
    r.line("l-part", nf.l.format("l"));
    r.line("g-part", nf.g.to_string());
    r.line("normal", nf_expression(&ring, &nf));
    Ok((r, None))
}

fn psi_cmd(c: &Common, text: &str) -> Result<Outcome, CliError> {
    let mut r = Report::new("psi");
    let ring = ring(c, &mut r)?;
    let s = parse_expr(&ring, text)?;
    let (map, image) = if s.style() == Some(Style::SquareSquare) {
        ("square-square", phi_hat(&ring, &s)?)
    } else {
        ("curly-curly", psi(&reduce_with(&ring, &s, Strategy::Direct)?)?)
    };
    r.line("input", s.format(ring.backend().presentation()));
    r.line("map", map);
    r.line("image", image.to_string());
    Ok((r, None))
}

fn check_trefoil(c: &Common) -> Result<Outcome, CliError> {
    let mut r = Report::new("check-trefoil");
    let ring = ring_for(&KnotGroup::trefoil(), c, &mut r)?;
    r.header.retain(|(k, _)| k != "knot");
    r.set("knot", "trefoil (built in)");
    let mut failed = Vec::new();
    for (name, e) in trefoil_relations_in_group_ring(&ring)? {
        let ok = e.is_zero();
        r.line(&format!("group-ring[{name}]"), if ok { "holds".to_string() } else { format!("fails, residue {e}") });
        if !ok {
            failed.push(name);
        }
    }
    for check in check_relations(&ring, &trefoil_relations(&ring)?)? {
        let ok = check.holds();
        let v = if ok { "holds".to_string() } else { format!("fails, residue {}", check.reduced.format()) };
        r.line(&format!("cord[{}]", check.name), v);
        if !ok {
            failed.push(check.name);
        }
    }
    r.line("verdict", if failed.is_empty() { "all relations hold" } else { "failed" });
    let late = (!failed.is_empty()).then(|| CliError::Invariant(format!("relations fail: {}", failed.join("; "))));
    Ok((r, late))
}

fn unknot(c: &Common) -> Result<Outcome, CliError> {
    let mut r = Report::new("unknot-test");
    let ring = ring(c, &mut r)?;
    let verdict = unknot_test(ring.backend(), ring.peripheral())?;
    let text = match verdict {
        UnknotVerdict::Unknot => "unknot-certified",
        UnknotVerdict::Knotted => "knotted-certified",
        UnknotVerdict::Undecided => "undecided",
    };
    r.line("verdict", text);
    let late = (verdict == UnknotVerdict::Undecided).then(|| CliError::Undecided("longitude triviality not decided".into()));
    Ok((r, late))
}

fn chords(c: &Common, file: &PathBuf, cfg: FindConfig, planes: usize, format: Format) -> Result<Outcome, CliError> {
    let mut r = Report::new("chords");
    r.set("file", file.display());
    r.set("grid-n", cfg.grid_n);
    r.set("newton-tol", format!("{:e}", cfg.newton_tol));
    r.set("diag-radius", cfg.diag_radius);
    r.set("seed", c.seed);
    r.set("planes", planes);
    let knot = ParametricKnot::from_toml(&std::fs::read_to_string(file)?)?;
    let found = find_chords(&knot, &cfg)?;
    let spectrum = chord_spectrum(&found);
    let bound = if planes > 0 { Some(plane_intersection_bound(&knot, planes, c.seed)?) } else { None };
    if format == Format::Json {
        let header: serde_json::Map<String, serde_json::Value> =
            r.header.iter().map(|(k, v)| (k.clone(), json!(v))).collect();
        let doc = json!({
            "config": header,
            "spectrum": spectrum,
            "chords": found.chords,
            "degenerate": found.degenerate,
            "warning": found.warning,
            "plane_bound": bound,
        });
        r.body = serde_json::to_string_pretty(&doc).expect("serializable") + "\n";
        return Ok((r, None));
    }
    r.set("columns", "length index multiplicity");
    for e in &spectrum {
        r.body.push_str(&format!("{:.10} {} {}\n", e.length, e.index, e.multiplicity));
    }
    if !found.degenerate.is_empty() {
        r.set("degenerate", found.degenerate.len());
    }
    if let Some(w) = &found.warning {
        r.set("warning", w);
    }
    if let Some(b) = bound {
        r.set("plane-bound", b);
    }
    Ok((r, None))
}
