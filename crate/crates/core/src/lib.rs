//! Degree-zero knot contact homology through the cord algebra.
//!
//! * [`presentations`]: braids, planar diagrams, Wirtinger presentations and
//!   peripheral systems.
//! * [`rewriting`]: word-problem backends (Knuth–Bendix completion, torus
//!   knot normal forms, free abelian groups).
//! * [`group_ring`]: the integral group ring `Z[π]` over a backend.
//! * [`cord_algebra`]: broken closed strings, the cord-algebra relations and
//!   the normal form `Z[λ^±1] ⊕ Z[π]`.
//! * [`chords`]: numerical binormal chords of a parametrized space curve.

pub mod word;
pub mod presentations;
pub mod rewriting;
pub mod group_ring;
pub mod cord_algebra;
pub mod chords;
