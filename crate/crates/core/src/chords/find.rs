use std::f64::consts::TAU;

use serde::{Deserialize, Serialize};

use super::knot::{grad_from, hessian_from, sym_eigen, Jet, ParametricKnot};
use super::{ChordError, Exec};

/// Settings for [`find_chords`].
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FindConfig {
    pub grid_n: usize,
    /// Newton stops once a step is shorter than this.
    pub newton_tol: f64,
    /// Converged points must have `|∇E|` below this.
    pub grad_tol: f64,
    /// Half-width of the excluded band around the diagonal `s = t`.
    pub diag_radius: f64,
    /// Chords closer than this in both coordinates are merged.
    pub dedupe_radius: f64,
    /// Hessians with an eigenvalue smaller than this in absolute value are
    /// reported as degenerate.
    pub degeneracy_tol: f64,
    /// Only grid points with `|∇E|` below this seed Newton.
    pub seed_threshold: f64,
    pub max_newton_iter: usize,
    pub exec: Exec,
}

impl Default for FindConfig {
    fn default() -> Self {
        FindConfig {
            grid_n: 128,
            newton_tol: 1e-12,
            grad_tol: 1e-9,
            diag_radius: 0.05,
            dedupe_radius: 1e-6,
            degeneracy_tol: 1e-7,
            seed_threshold: f64::INFINITY,
            max_newton_iter: 60,
            exec: Exec::default(),
        }
    }
}

/// A nondegenerate binormal chord.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ChordCritical {
    pub s: f64,
    pub t: f64,
    pub length: f64,
    pub energy: f64,
    /// Number of negative Hessian eigenvalues.
    pub index: u8,
    pub min_hessian_abs_eigen: f64,
}

/// A critical point whose Hessian is (numerically) singular.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DegenerateChord {
    pub s: f64,
    pub t: f64,
    pub length: f64,
    pub min_hessian_abs_eigen: f64,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct FindResult {
    /// Sorted by `(s, t)` with `s < t`.
    pub chords: Vec<ChordCritical>,
    pub degenerate: Vec<DegenerateChord>,
    pub seeds: usize,
    pub warning: Option<String>,
}

impl FindResult {
    /// True when degenerate critical points were found, as for a family of
    /// chords swept out by a symmetry.
    pub fn is_bott_degenerate(&self) -> bool {
        !self.degenerate.is_empty()
    }
}

fn wrap(x: f64) -> f64 {
    let r = x.rem_euclid(TAU);
    if r >= TAU {
        0.0
    } else {
        r
    }
}

/// Distance on the circle `R / 2πZ`.
pub fn circle_dist(a: f64, b: f64) -> f64 {
    let d = (a - b).rem_euclid(TAU);
    d.min(TAU - d)
}

fn norm2(v: [f64; 2]) -> f64 {
    (v[0] * v[0] + v[1] * v[1]).sqrt()
}

/// Newton iteration with a pseudo-inverse Hessian, so that steps never move
/// along (near-)null directions.
fn newton(k: &ParametricKnot, mut s: f64, mut t: f64, cfg: &FindConfig) -> Option<(f64, f64)> {
    for _ in 0..cfg.max_newton_iter {
        let (js, jt) = (k.jet(s), k.jet(t));
        let g = grad_from(&js, &jt);
        let (ev, vs) = sym_eigen(hessian_from(&js, &jt));
        let scale = ev[0].abs().max(ev[1].abs()).max(1.0);
        let mut step = [0.0; 2];
        for (l, v) in ev.iter().zip(vs) {
            if l.abs() > 1e-10 * scale {
                let c = (v[0] * g[0] + v[1] * g[1]) / l;
                step[0] -= c * v[0];
                step[1] -= c * v[1];
            }
        }
        let len = norm2(step);
        if len > 0.25 {
            step = [step[0] * 0.25 / len, step[1] * 0.25 / len];
        }
        s += step[0];
        t += step[1];
        if !(s.is_finite() && t.is_finite()) {
            return None;
        }
        if len < cfg.newton_tol {
            break;
        }
    }
    let g = super::knot::grad(k, s, t);
    (norm2(g) < cfg.grad_tol).then_some((wrap(s), wrap(t)))
}

fn grid_seeds(cfg: &FindConfig, jets: &[Jet]) -> Vec<(f64, f64)> {
    let n = cfg.grid_n;
    let h = TAU / n as f64;
    let row = |i: usize| -> Vec<f64> {
        (0..n)
            .map(|j| {
                let g = grad_from(&jets[i], &jets[j]);
                g[0] * g[0] + g[1] * g[1]
            })
            .collect()
    };
    let field: Vec<Vec<f64>> = cfg.exec.map_range(n, row);
    let threshold = cfg.seed_threshold * cfg.seed_threshold;
    let mut seeds = Vec::new();
    for i in 0..n {
        for j in 0..n {
            if circle_dist(i as f64 * h, j as f64 * h) <= cfg.diag_radius {
                continue;
            }
            let v = field[i][j];
            if v > threshold {
                continue;
            }
            let is_min = (-1i64..=1).all(|di| {
                (-1i64..=1).all(|dj| {
                    let ii = (i as i64 + di).rem_euclid(n as i64) as usize;
                    let jj = (j as i64 + dj).rem_euclid(n as i64) as usize;
                    field[ii][jj] >= v
                })
            });
            if is_min {
                seeds.push((i as f64 * h, j as f64 * h));
            }
        }
    }
    seeds
}

enum Refined {
    Chord(ChordCritical),
    Degenerate(DegenerateChord),
}

fn classify(k: &ParametricKnot, s: f64, t: f64, cfg: &FindConfig) -> Option<Refined> {
    if circle_dist(s, t) <= cfg.diag_radius {
        return None;
    }
    let (s, t) = if s <= t { (s, t) } else { (t, s) };
    let energy = super::knot::energy(k, s, t);
    let length = (2.0 * energy).sqrt();
    let (ev, _) = sym_eigen(super::knot::hessian(k, s, t));
    let min_abs = ev[0].abs().min(ev[1].abs());
    Some(if min_abs < cfg.degeneracy_tol {
        Refined::Degenerate(DegenerateChord {
            s,
            t,
            length,
            min_hessian_abs_eigen: min_abs,
        })
    } else {
        Refined::Chord(ChordCritical {
            s,
            t,
            length,
            energy,
            index: ev.iter().filter(|&&l| l < 0.0).count() as u8,
            min_hessian_abs_eigen: min_abs,
        })
    })
}

fn close(a: (f64, f64), b: (f64, f64), r: f64) -> bool {
    circle_dist(a.0, b.0) < r && circle_dist(a.1, b.1) < r
}

/// Finds binormal chords: critical points of `E` off the diagonal, one
/// representative per `(s, t) ↔ (t, s)` pair.
pub fn find_chords(k: &ParametricKnot, cfg: &FindConfig) -> Result<FindResult, ChordError> {
    if cfg.grid_n < 8 {
        return Err(ChordError::Config(format!("grid_n = {} is below 8", cfg.grid_n)));
    }
    for (name, v) in [
        ("newton_tol", cfg.newton_tol),
        ("grad_tol", cfg.grad_tol),
        ("diag_radius", cfg.diag_radius),
        ("dedupe_radius", cfg.dedupe_radius),
        ("degeneracy_tol", cfg.degeneracy_tol),
        ("seed_threshold", cfg.seed_threshold),
    ] {
        if v.is_nan() || v <= 0.0 {
            return Err(ChordError::Config(format!("{name} must be positive")));
        }
    }
    let n = cfg.grid_n;
    let jets: Vec<Jet> = (0..n).map(|i| k.jet(TAU * i as f64 / n as f64)).collect();
    let seeds = grid_seeds(cfg, &jets);
    let refined: Vec<Option<Refined>> = cfg.exec.map_slice(&seeds, |&(s, t)| {
        newton(k, s, t, cfg).and_then(|(s, t)| classify(k, s, t, cfg))
    });

    let mut chords: Vec<ChordCritical> = Vec::new();
    let mut degenerate: Vec<DegenerateChord> = Vec::new();
    for r in refined.into_iter().flatten() {
        match r {
            Refined::Chord(c) => {
                if !chords.iter().any(|d| close((c.s, c.t), (d.s, d.t), cfg.dedupe_radius)) {
                    chords.push(c);
                }
            }
            Refined::Degenerate(c) => {
                if !degenerate.iter().any(|d| close((c.s, c.t), (d.s, d.t), cfg.dedupe_radius)) {
                    degenerate.push(c);
                }
            }
        }
    }
    chords.sort_by(|a, b| a.s.total_cmp(&b.s).then(a.t.total_cmp(&b.t)));
    degenerate.sort_by(|a, b| a.s.total_cmp(&b.s).then(a.t.total_cmp(&b.t)));
    let warning = (chords.is_empty() && degenerate.is_empty())
        .then(|| format!("no critical chords found at grid_n = {n}; try a finer grid"));
    Ok(FindResult {
        chords,
        degenerate,
        seeds: seeds.len(),
        warning,
    })
}

/// One row of a chord spectrum.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SpectrumEntry {
    pub length: f64,
    pub index: u8,
    pub multiplicity: usize,
}

/// Lengths ascending; chords of equal index whose lengths agree to a
/// relative `1e-9` are merged.
pub fn chord_spectrum(result: &FindResult) -> Vec<SpectrumEntry> {
    let mut rows: Vec<(f64, u8)> = result.chords.iter().map(|c| (c.length, c.index)).collect();
    rows.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)));
    let mut out: Vec<SpectrumEntry> = Vec::new();
    for (length, index) in rows {
        if let Some(last) = out.iter_mut().rev().find(|e| (e.length - length).abs() <= 1e-9 * length.max(1.0)) {
            if last.index == index {
                last.multiplicity += 1;
                continue;
            }
        }
        out.push(SpectrumEntry {
            length,
            index,
            multiplicity: 1,
        });
    }
    out
}
