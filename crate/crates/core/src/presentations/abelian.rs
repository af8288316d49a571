//! Abelianization of a presentation and the linking-number homomorphism.

use super::{GroupPresentation, PresentationError};
use crate::word::Word;

fn gcd(a: i128, b: i128) -> i128 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
struct Q {
    n: i128,
    d: i128,
}

impl Q {
    fn int(n: i128) -> Q {
        Q { n, d: 1 }
    }
    fn new(n: i128, d: i128) -> Q {
        let g = gcd(n, d).max(1);
        let s = if d < 0 { -1 } else { 1 };
        Q { n: s * n / g, d: s * d / g }
    }
    fn is_zero(self) -> bool {
        self.n == 0
    }
    fn sub(self, o: Q) -> Q {
        Q::new(self.n * o.d - o.n * self.d, self.d * o.d)
    }
    fn mul(self, o: Q) -> Q {
        Q::new(self.n * o.n, self.d * o.d)
    }
    fn div(self, o: Q) -> Q {
        Q::new(self.n * o.d, self.d * o.n)
    }
}

/// Reduced row echelon form over Q; returns (rows, pivot columns).
fn rref(matrix: &[Vec<i64>], cols: usize) -> (Vec<Vec<Q>>, Vec<usize>) {
    let mut m: Vec<Vec<Q>> = matrix
        .iter()
        .map(|r| r.iter().map(|&x| Q::int(x as i128)).collect())
        .collect();
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..cols {
        let Some(p) = (row..m.len()).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(row, p);
        let lead = m[row][col];
        for x in m[row].iter_mut() {
            *x = x.div(lead);
        }
        let pivot = m[row].clone();
        for (r, line) in m.iter_mut().enumerate() {
            if r != row && !line[col].is_zero() {
                let f = line[col];
                for (x, &p) in line.iter_mut().zip(&pivot) {
                    *x = x.sub(p.mul(f));
                }
            }
        }
        pivots.push(col);
        row += 1;
        if row == m.len() {
            break;
        }
    }
    (m, pivots)
}

/// Rank of the relator exponent-sum matrix.
pub fn abelianization_rank(pres: &GroupPresentation) -> usize {
    rref(&pres.exponent_matrix(), pres.rank()).1.len()
}

/// The homomorphism `lk: π → Z` as integer weights per generator.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinkingForm {
    pub weights: Vec<i64>,
}

impl LinkingForm {
    pub fn of(&self, w: &Word) -> i64 {
        w.letters()
            .iter()
            .map(|l| l.exponent() * self.weights[l.generator()])
            .sum()
    }
}

/// Solves for the unique homomorphism to Z killing every relator and sending
/// the meridian to `1`.
pub fn linking_weights(pres: &GroupPresentation, meridian: &Word) -> Result<LinkingForm, PresentationError> {
    let n = pres.rank();
    let (m, pivots) = rref(&pres.exponent_matrix(), n);
    if pivots.len() + 1 != n {
        return Err(PresentationError::NotKnotGroup {
            rank: pivots.len(),
            generators: n,
        });
    }
    let free = (0..n).find(|c| !pivots.contains(c)).expect("one free column");
    let mut v = vec![Q::int(0); n];
    v[free] = Q::int(1);
    for (row, &pc) in pivots.iter().enumerate() {
        v[pc] = Q::int(0).sub(m[row][free]);
    }
    let lcm = v.iter().fold(1i128, |acc, q| acc / gcd(acc, q.d) * q.d);
    let ints: Vec<i128> = v.iter().map(|q| q.n * (lcm / q.d)).collect();
    let g = ints.iter().fold(0i128, |acc, &x| gcd(acc, x)).max(1);
    let ints: Vec<i64> = ints.iter().map(|&x| (x / g) as i64).collect();
    let form = LinkingForm { weights: ints };
    let lk = form.of(meridian);
    match lk {
        1 => Ok(form),
        -1 => Ok(LinkingForm {
            weights: form.weights.iter().map(|w| -w).collect(),
        }),
        other => Err(PresentationError::BadMeridian(other)),
    }
}
