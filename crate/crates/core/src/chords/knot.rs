use serde::{Deserialize, Serialize};

use super::ChordError;

pub type Vec3 = [f64; 3];

pub(crate) fn dot(a: Vec3, b: Vec3) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

pub(crate) fn sub(a: Vec3, b: Vec3) -> Vec3 {
    [a[0] - b[0], a[1] - b[1], a[2] - b[2]]
}

/// `Σ_k cos[k]·cos(k t) + sin[k]·sin(k t)`, with `k` starting at 0.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct FourierSeries {
    #[serde(default)]
    pub cos: Vec<f64>,
    #[serde(default)]
    pub sin: Vec<f64>,
}

impl FourierSeries {
    pub fn new(cos: Vec<f64>, sin: Vec<f64>) -> Self {
        FourierSeries { cos, sin }
    }

    /// Value and first two derivatives at `t`.
    pub fn eval3(&self, t: f64) -> [f64; 3] {
        let mut out = [0.0; 3];
        let n = self.cos.len().max(self.sin.len());
        for k in 0..n {
            let a = self.cos.get(k).copied().unwrap_or(0.0);
            let b = self.sin.get(k).copied().unwrap_or(0.0);
            let kf = k as f64;
            let (sk, ck) = (kf * t).sin_cos();
            out[0] += a * ck + b * sk;
            out[1] += kf * (b * ck - a * sk);
            out[2] -= kf * kf * (a * ck + b * sk);
        }
        out
    }

    fn degree(&self) -> usize {
        self.cos.len().max(self.sin.len())
    }

    fn combine(parts: [(&FourierSeries, f64); 3]) -> FourierSeries {
        let n = parts.iter().map(|(f, _)| f.degree()).max().unwrap_or(0);
        let mut cos = vec![0.0; n];
        let mut sin = vec![0.0; n];
        for (f, w) in parts {
            for (k, c) in f.cos.iter().enumerate() {
                cos[k] += w * c;
            }
            for (k, s) in f.sin.iter().enumerate() {
                sin[k] += w * s;
            }
        }
        FourierSeries { cos, sin }
    }
}

fn default_resolution() -> usize {
    256
}

/// A closed curve `γ: S¹ → R³` with each coordinate a truncated Fourier series.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ParametricKnot {
    pub x: FourierSeries,
    pub y: FourierSeries,
    pub z: FourierSeries,
    /// Number of samples used for validation and intersection counts.
    #[serde(default = "default_resolution")]
    pub resolution: usize,
}

/// Position, velocity and acceleration at one parameter.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Jet {
    pub p: Vec3,
    pub v: Vec3,
    pub a: Vec3,
}

impl ParametricKnot {
    /// Builds and validates a curve.
    pub fn new(x: FourierSeries, y: FourierSeries, z: FourierSeries, resolution: usize) -> Result<Self, ChordError> {
        let k = ParametricKnot { x, y, z, resolution };
        k.validate()?;
        Ok(k)
    }

    /// `(a cos t, b sin t, c sin 2t)`; with `c = 0` a planar ellipse.
    pub fn ellipse(a: f64, b: f64, c: f64) -> Self {
        ParametricKnot {
            x: FourierSeries::new(vec![0.0, a], vec![]),
            y: FourierSeries::new(vec![], vec![0.0, b]),
            z: FourierSeries::new(vec![], vec![0.0, 0.0, c]),
            resolution: default_resolution(),
        }
    }

    pub fn circle() -> Self {
        Self::ellipse(1.0, 1.0, 0.0)
    }

    /// `((R + r cos qt) cos pt, (R + r cos qt) sin pt, r sin qt)`.
    pub fn torus_knot(p: usize, q: usize, big_r: f64, r: f64) -> Self {
        let n = p + q + 1;
        let mut xc = vec![0.0; n];
        let mut ys = vec![0.0; n];
        let mut zs = vec![0.0; n];
        xc[p] += big_r;
        ys[p] += big_r;
        // cos qt cos pt = (cos (p+q)t + cos (q−p)t) / 2, sin pt cos qt likewise
        xc[p + q] += r / 2.0;
        ys[p + q] += r / 2.0;
        let d = p.abs_diff(q);
        xc[d] += r / 2.0;
        ys[d] += if p >= q { r / 2.0 } else { -r / 2.0 };
        zs[q] += r;
        ParametricKnot {
            x: FourierSeries::new(xc, vec![]),
            y: FourierSeries::new(vec![], ys),
            z: FourierSeries::new(vec![], zs),
            resolution: 512,
        }
    }

    /// Applies the linear map `m` to the curve.
    pub fn transformed(&self, m: [[f64; 3]; 3]) -> Self {
        let c = [&self.x, &self.y, &self.z];
        let row = |r: [f64; 3]| FourierSeries::combine([(c[0], r[0]), (c[1], r[1]), (c[2], r[2])]);
        ParametricKnot {
            x: row(m[0]),
            y: row(m[1]),
            z: row(m[2]),
            resolution: self.resolution,
        }
    }

    /// The curve traversed backwards, `t ↦ −t`.
    pub fn reversed(&self) -> Self {
        let flip = |f: &FourierSeries| FourierSeries::new(f.cos.clone(), f.sin.iter().map(|s| -s).collect());
        ParametricKnot {
            x: flip(&self.x),
            y: flip(&self.y),
            z: flip(&self.z),
            resolution: self.resolution,
        }
    }

    /// The curve with its parameter shifted, `t ↦ t + phi`.
    pub fn shifted(&self, phi: f64) -> Self {
        let shift = |f: &FourierSeries| {
            let n = f.degree();
            let (mut cos, mut sin) = (vec![0.0; n], vec![0.0; n]);
            for k in 0..n {
                let a = f.cos.get(k).copied().unwrap_or(0.0);
                let b = f.sin.get(k).copied().unwrap_or(0.0);
                let (sk, ck) = (k as f64 * phi).sin_cos();
                cos[k] = a * ck + b * sk;
                sin[k] = b * ck - a * sk;
            }
            FourierSeries { cos, sin }
        };
        ParametricKnot {
            x: shift(&self.x),
            y: shift(&self.y),
            z: shift(&self.z),
            resolution: self.resolution,
        }
    }

    pub fn jet(&self, t: f64) -> Jet {
        let [x, y, z] = [self.x.eval3(t), self.y.eval3(t), self.z.eval3(t)];
        Jet {
            p: [x[0], y[0], z[0]],
            v: [x[1], y[1], z[1]],
            a: [x[2], y[2], z[2]],
        }
    }

    pub fn point(&self, t: f64) -> Vec3 {
        self.jet(t).p
    }

    pub fn samples(&self) -> Vec<Vec3> {
        let n = self.resolution.max(3);
        (0..n).map(|i| self.point(std::f64::consts::TAU * i as f64 / n as f64)).collect()
    }

    /// Checks regularity and embeddedness at the sampling resolution.
    pub fn validate(&self) -> Result<(), ChordError> {
        let n = self.resolution;
        if n < 8 {
            return Err(ChordError::Config(format!("resolution {n} is below 8")));
        }
        let jets: Vec<Jet> = (0..n).map(|i| self.jet(std::f64::consts::TAU * i as f64 / n as f64)).collect();
        let speed = jets.iter().map(|j| dot(j.v, j.v).sqrt()).fold(f64::INFINITY, f64::min);
        if speed <= 1e-12 {
            return Err(ChordError::Singular { min_speed: speed });
        }
        for i in 0..n {
            for j in i + 1..n {
                let d = sub(jets[i].p, jets[j].p);
                let dist = dot(d, d).sqrt();
                if dist <= 1e-9 {
                    return Err(ChordError::SelfIntersecting {
                        s: std::f64::consts::TAU * i as f64 / n as f64,
                        t: std::f64::consts::TAU * j as f64 / n as f64,
                    });
                }
            }
        }
        Ok(())
    }

    pub fn from_toml(text: &str) -> Result<Self, ChordError> {
        let k: ParametricKnot = toml::from_str(text).map_err(|e| ChordError::Parse(e.to_string()))?;
        k.validate()?;
        Ok(k)
    }

    pub fn to_toml(&self) -> String {
        toml::to_string(self).expect("knot serializes")
    }
}

/// `E(s, t) = ½ |γ(s) − γ(t)|²`.
pub fn energy(k: &ParametricKnot, s: f64, t: f64) -> f64 {
    let d = sub(k.point(s), k.point(t));
    0.5 * dot(d, d)
}

pub(crate) fn grad_from(js: &Jet, jt: &Jet) -> [f64; 2] {
    let d = sub(js.p, jt.p);
    [dot(d, js.v), -dot(d, jt.v)]
}

pub fn grad(k: &ParametricKnot, s: f64, t: f64) -> [f64; 2] {
    grad_from(&k.jet(s), &k.jet(t))
}

pub(crate) fn hessian_from(js: &Jet, jt: &Jet) -> [[f64; 2]; 2] {
    let d = sub(js.p, jt.p);
    let ss = dot(js.v, js.v) + dot(d, js.a);
    let st = -dot(js.v, jt.v);
    let tt = dot(jt.v, jt.v) - dot(d, jt.a);
    [[ss, st], [st, tt]]
}

pub fn hessian(k: &ParametricKnot, s: f64, t: f64) -> [[f64; 2]; 2] {
    hessian_from(&k.jet(s), &k.jet(t))
}

/// Eigenvalues (ascending) and unit eigenvectors of a symmetric 2×2 matrix.
pub fn sym_eigen(h: [[f64; 2]; 2]) -> ([f64; 2], [[f64; 2]; 2]) {
    let (a, b, d) = (h[0][0], h[0][1], h[1][1]);
    let mean = 0.5 * (a + d);
    let r = (0.25 * (a - d) * (a - d) + b * b).sqrt();
    let (l1, l2) = (mean - r, mean + r);
    let vec_for = |l: f64| {
        let v = if (a - l).abs() + b.abs() > (d - l).abs() + b.abs() { [b, l - a] } else { [l - d, b] };
        let n = (v[0] * v[0] + v[1] * v[1]).sqrt();
        if n < 1e-300 {
            None
        } else {
            Some([v[0] / n, v[1] / n])
        }
    };
    let v1 = vec_for(l1).unwrap_or([1.0, 0.0]);
    let v2 = vec_for(l2).unwrap_or([-v1[1], v1[0]]);
    ([l1, l2], [v1, v2])
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn energies() {
        let c = ParametricKnot::circle();
        assert!((energy(&c, 0.0, PI) - 2.0).abs() < 1e-14);
        assert_eq!(energy(&c, 1.3, 1.3), 0.0);
        let e = ParametricKnot::ellipse(2.0, 1.0, 0.0);
        assert!((energy(&e, 0.0, PI) - 8.0).abs() < 1e-13);
    }

    #[test]
    fn circle_diagonal_hessian() {
        let c = ParametricKnot::circle();
        let (ev, _) = sym_eigen(hessian(&c, 0.7, 0.7));
        assert!(ev[0].abs() < 1e-14 && (ev[1] - 2.0).abs() < 1e-14);
        let g = grad(&c, 0.4, 0.4 + PI);
        assert!(g[0].abs() < 1e-14 && g[1].abs() < 1e-14);
    }

    #[test]
    fn eigen_decomposition() {
        let h = [[2.0, 1.0], [1.0, -3.0]];
        let (ev, vs) = sym_eigen(h);
        for (l, v) in ev.iter().zip(vs) {
            let hv = [h[0][0] * v[0] + h[0][1] * v[1], h[1][0] * v[0] + h[1][1] * v[1]];
            assert!((hv[0] - l * v[0]).abs() < 1e-12 && (hv[1] - l * v[1]).abs() < 1e-12);
        }
        let (ev, _) = sym_eigen([[1.0, 0.0], [0.0, 1.0]]);
        assert_eq!(ev, [1.0, 1.0]);
    }

    #[test]
    fn torus_knot_series_matches_closed_form() {
        let k = ParametricKnot::torus_knot(2, 3, 2.0, 1.0);
        for &t in &[0.0f64, 0.3, 1.7, 4.0] {
            let rr = 2.0 + (3.0 * t).cos();
            let want = [rr * (2.0 * t).cos(), rr * (2.0 * t).sin(), (3.0 * t).sin()];
            let got = k.point(t);
            for i in 0..3 {
                assert!((got[i] - want[i]).abs() < 1e-12);
            }
        }
        k.validate().unwrap();
    }

    #[test]
    fn toml_round_trip() {
        let k = ParametricKnot::ellipse(2.0, 1.0, 0.0);
        assert_eq!(ParametricKnot::from_toml(&k.to_toml()).unwrap(), k);
        assert!(ParametricKnot::from_toml("resolution = 64\n[x]\ncos = [1.0]\n[y]\n[z]\n").is_err());
    }
}
