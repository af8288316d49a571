use serde::{Deserialize, Serialize};

use super::knot::{energy, grad, ParametricKnot};
use super::ChordError;

/// An ℓ-tuple of chords `(s_i, t_i)` at a flow time.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FlowState {
    pub positions: Vec<(f64, f64)>,
    pub time: f64,
}

impl FlowState {
    pub fn new(positions: Vec<(f64, f64)>) -> Self {
        FlowState { positions, time: 0.0 }
    }

    /// `E^ℓ`, the sum of the chord energies.
    pub fn energy(&self, k: &ParametricKnot) -> f64 {
        self.positions.iter().map(|&(s, t)| energy(k, s, t)).sum()
    }

    /// `L^ℓ`, the sum of the chord lengths.
    pub fn length(&self, k: &ParametricKnot) -> f64 {
        self.positions.iter().map(|&(s, t)| (2.0 * energy(k, s, t)).sqrt()).sum()
    }

    fn grad_norm(&self, k: &ParametricKnot) -> f64 {
        self.positions
            .iter()
            .map(|&(s, t)| {
                let g = grad(k, s, t);
                g[0] * g[0] + g[1] * g[1]
            })
            .sum::<f64>()
            .sqrt()
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FlowConfig {
    pub step: f64,
    pub t_max: f64,
    /// Integration aborts if halving takes the step below this.
    pub min_step: f64,
    /// The flow stops when `|∇E^ℓ|` falls below this.
    pub stationary_tol: f64,
    /// The flow stops when `L^ℓ` falls below this (collapse onto the diagonal).
    pub collapse_length: f64,
}

impl Default for FlowConfig {
    fn default() -> Self {
        FlowConfig {
            step: 1e-2,
            t_max: 5.0,
            min_step: 1e-12,
            stationary_tol: 1e-12,
            collapse_length: 1e-6,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Trajectory {
    pub states: Vec<FlowState>,
    /// `L^ℓ` at each state.
    pub lengths: Vec<f64>,
    /// Whether the flow started at, or converged onto, a critical configuration.
    pub stationary: bool,
}

/// Explicit Euler for `−∇E^ℓ`, halving the step whenever `L^ℓ` fails to
/// decrease.
pub fn gradient_flow(k: &ParametricKnot, start: FlowState, cfg: &FlowConfig) -> Result<Trajectory, ChordError> {
    if !(cfg.step > 0.0 && cfg.min_step > 0.0 && cfg.t_max >= 0.0) {
        return Err(ChordError::Config("flow step sizes must be positive".into()));
    }
    let mut cur = start;
    let mut cur_len = cur.length(k);
    let mut traj = Trajectory {
        states: vec![cur.clone()],
        lengths: vec![cur_len],
        stationary: false,
    };
    let mut h = cfg.step;
    while cur.time < cfg.t_max {
        if cur.grad_norm(k) < cfg.stationary_tol {
            traj.stationary = true;
            break;
        }
        if cur_len < cfg.collapse_length {
            break;
        }
        let dt = h.min(cfg.t_max - cur.time);
        let positions = cur
            .positions
            .iter()
            .map(|&(s, t)| {
                let g = grad(k, s, t);
                (s - dt * g[0], t - dt * g[1])
            })
            .collect();
        let next = FlowState {
            positions,
            time: cur.time + dt,
        };
        let next_len = next.length(k);
        if next_len < cur_len {
            cur = next;
            cur_len = next_len;
            traj.states.push(cur.clone());
            traj.lengths.push(cur_len);
            h = (h * 1.5).min(cfg.step);
        } else {
            // −dL/dt = Σ |∇E_i|² / L_i; once a step's predicted decrease is
            // below rounding in L the flow has reached the critical set.
            let rate: f64 = cur
                .positions
                .iter()
                .map(|&(s, t)| {
                    let g = grad(k, s, t);
                    let l = (2.0 * energy(k, s, t)).sqrt().max(f64::MIN_POSITIVE);
                    (g[0] * g[0] + g[1] * g[1]) / l
                })
                .sum();
            if dt * rate < 64.0 * f64::EPSILON * cur_len.max(1.0) {
                traj.stationary = true;
                break;
            }
            h /= 2.0;
            if h < cfg.min_step {
                return Err(ChordError::StepUnderflow { time: cur.time });
            }
        }
    }
    Ok(traj)
}
