use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, UnitSphere};

use super::knot::{dot, ParametricKnot, Vec3};
use super::ChordError;

/// Transverse intersections of the sampled curve with `{x : ⟨n, x⟩ = d}`,
/// counted as sign changes around the closed polygon. `None` if some sample
/// lies within `1e-9` (relative to the curve size) of the plane.
pub fn intersection_count(k: &ParametricKnot, normal: Vec3, offset: f64) -> Option<usize> {
    let pts = k.samples();
    intersections(&pts, scale(&pts), normal, offset)
}

fn scale(pts: &[Vec3]) -> f64 {
    pts.iter().map(|p| dot(*p, *p).sqrt()).fold(1.0, f64::max)
}

fn intersections(pts: &[Vec3], scale: f64, normal: Vec3, offset: f64) -> Option<usize> {
    let f: Vec<f64> = pts.iter().map(|p| dot(normal, *p) - offset).collect();
    if f.iter().any(|v| v.abs() < 1e-9 * scale) {
        return None;
    }
    Some((0..f.len()).filter(|&i| (f[i] > 0.0) != (f[(i + 1) % f.len()] > 0.0)).count())
}

/// Largest intersection count over `sample_planes` random planes, a lower
/// bound for the maximum number of times a plane meets the curve. Planes
/// that are not transverse at the sampling resolution are redrawn.
pub fn plane_intersection_bound(k: &ParametricKnot, sample_planes: usize, seed: u64) -> Result<usize, ChordError> {
    if sample_planes == 0 {
        return Err(ChordError::Config("sample_planes must be at least 1".into()));
    }
    let pts = k.samples();
    let sc = scale(&pts);
    let mut lo = [f64::INFINITY; 3];
    let mut hi = [f64::NEG_INFINITY; 3];
    for p in &pts {
        for i in 0..3 {
            lo[i] = lo[i].min(p[i]);
            hi[i] = hi[i].max(p[i]);
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut best = 0;
    for _ in 0..sample_planes {
        let mut count = None;
        for _ in 0..1000 {
            let n: [f64; 3] = UnitSphere.sample(&mut rng);
            let p: Vec3 = std::array::from_fn(|i| if hi[i] > lo[i] { rng.random_range(lo[i]..hi[i]) } else { lo[i] });
            count = intersections(&pts, sc, n, dot(n, p));
            if count.is_some() {
                break;
            }
        }
        best = best.max(count.ok_or(ChordError::NoTransversePlane)?);
    }
    Ok(best)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn circle_meets_planes_at_most_twice() {
        let c = ParametricKnot::circle();
        assert!(plane_intersection_bound(&c, 500, 7).unwrap() <= 2);
        assert_eq!(intersection_count(&c, [1.0, 0.0, 0.0], 0.1), Some(2));
    }

    #[test]
    fn plane_containing_circle_is_not_transverse() {
        assert_eq!(intersection_count(&ParametricKnot::circle(), [0.0, 0.0, 1.0], 0.0), None);
    }

    #[test]
    fn seeded_runs_repeat() {
        let k = ParametricKnot::torus_knot(2, 3, 2.0, 1.0);
        assert_eq!(plane_intersection_bound(&k, 200, 1).unwrap(), plane_intersection_bound(&k, 200, 1).unwrap());
    }
}
