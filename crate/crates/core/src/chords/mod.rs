//! Binormal chords of a closed space curve: critical points of the chord
//! energy `E(s, t) = ½|γ(s) − γ(t)|²` away from the diagonal, their Morse
//! indices and lengths, and the negative gradient flow of `E`.
//!
//! Grid evaluation and Newton refinement run on rayon when the `parallel`
//! feature is on and [`Exec::Parallel`] is selected.

mod find;
mod flow;
mod knot;
mod planes;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use find::{chord_spectrum, circle_dist, find_chords, ChordCritical, DegenerateChord, FindConfig, FindResult, SpectrumEntry};
pub use flow::{gradient_flow, FlowConfig, FlowState, Trajectory};
pub use knot::{energy, grad, hessian, sym_eigen, FourierSeries, Jet, ParametricKnot, Vec3};
pub use planes::{intersection_count, plane_intersection_bound};

#[derive(Debug, Error, PartialEq)]
pub enum ChordError {
    #[error("invalid configuration: {0}")]
    Config(String),
    #[error("knot file: {0}")]
    Parse(String),
    #[error("curve is singular: minimum sampled speed {min_speed}")]
    Singular { min_speed: f64 },
    #[error("curve meets itself near parameters {s} and {t}")]
    SelfIntersecting { s: f64, t: f64 },
    #[error("flow step fell below the minimum at time {time}")]
    StepUnderflow { time: f64 },
    #[error("could not draw a transverse plane")]
    NoTransversePlane,
}

/// Execution strategy for the data-parallel parts.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub enum Exec {
    Sequential,
    /// Uses rayon if the `parallel` feature is enabled, and runs sequentially
    /// otherwise.
    #[default]
    Parallel,
}

impl Exec {
    pub(crate) fn map_slice<T: Sync, U: Send>(self, xs: &[T], f: impl Fn(&T) -> U + Sync + Send) -> Vec<U> {
        match self {
            #[cfg(feature = "parallel")]
            Exec::Parallel => {
                use rayon::prelude::*;
                xs.par_iter().map(f).collect()
            }
            _ => xs.iter().map(f).collect(),
        }
    }

    pub(crate) fn map_range<U: Send>(self, n: usize, f: impl Fn(usize) -> U + Sync + Send) -> Vec<U> {
        match self {
            #[cfg(feature = "parallel")]
            Exec::Parallel => {
                use rayon::prelude::*;
                (0..n).into_par_iter().map(f).collect()
            }
            _ => (0..n).map(f).collect(),
        }
    }
}
