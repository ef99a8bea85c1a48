//! Gauss–Jacobi rules on `[0, 1]` for the weight `t^a (1−t)^b`.
//!
//! Nodes come from the eigenvalues of the Jacobi matrix (Golub–Welsch), are
//! polished by Newton steps on the orthonormal recurrence, and the weights are
//! the Christoffel numbers `1 / Σ_{k<N} p_k(t_i)²`.

use nalgebra::{DMatrix, SymmetricEigen};

use crate::error::{Error, Result};
use crate::gamma::ln_gamma;

/// Recurrence `b_{k+1} p_{k+1} = (t − a_k) p_k − b_k p_{k−1}` of the orthonormal
/// polynomials, with `diag[k] = a_k` and `off[k] = b_{k+1}`.
struct Recurrence {
    diag: Vec<f64>,
    off: Vec<f64>,
    p0: f64,
}

fn recurrence(len: usize, a: f64, b: f64) -> Recurrence {
    // Jacobi weight (1−x)^A (1+x)^B on [−1, 1] with x = 2t − 1
    let (big_a, big_b) = (b, a);
    let s = big_a + big_b;
    let diag = (0..len)
        .map(|k| {
            let alpha = if k == 0 {
                (big_b - big_a) / (s + 2.0)
            } else {
                let kf = k as f64;
                (big_b * big_b - big_a * big_a) / ((2.0 * kf + s) * (2.0 * kf + s + 2.0))
            };
            (alpha + 1.0) / 2.0
        })
        .collect();
    let off = (1..=len)
        .map(|k| {
            let kf = k as f64;
            let beta = if k == 1 {
                4.0 * (1.0 + big_a) * (1.0 + big_b) / ((2.0 + s) * (2.0 + s) * (3.0 + s))
            } else {
                4.0 * kf * (kf + big_a) * (kf + big_b) * (kf + s)
                    / ((2.0 * kf + s).powi(2) * (2.0 * kf + s + 1.0) * (2.0 * kf + s - 1.0))
            };
            beta.sqrt() / 2.0
        })
        .collect();
    let mu0 = (ln_gamma(a + 1.0) + ln_gamma(b + 1.0) - ln_gamma(a + b + 2.0)).exp();
    Recurrence {
        diag,
        off,
        p0: 1.0 / mu0.sqrt(),
    }
}

impl Recurrence {
    /// `(p_N(t), p_N'(t), Σ_{k<N} p_k(t)²)`.
    fn evaluate(&self, len: usize, t: f64) -> (f64, f64, f64) {
        let (mut p_prev, mut p) = (0.0, self.p0);
        let (mut d_prev, mut d) = (0.0, 0.0);
        let mut sum_sq = 0.0;
        for k in 0..len {
            sum_sq += p * p;
            let b_prev = if k == 0 { 0.0 } else { self.off[k - 1] };
            let p_next = ((t - self.diag[k]) * p - b_prev * p_prev) / self.off[k];
            let d_next = (p + (t - self.diag[k]) * d - b_prev * d_prev) / self.off[k];
            p_prev = p;
            p = p_next;
            d_prev = d;
            d = d_next;
        }
        (p, d, sum_sq)
    }
}

/// `len`-point Gauss rule for `∫_0^1 t^a (1−t)^b f(t) dt`, exact for degree `2·len − 1`.
pub fn gauss_jacobi_unit(len: usize, a: f64, b: f64) -> Result<(Vec<f64>, Vec<f64>)> {
    if len == 0 {
        return Err(Error::InvalidParameter(
            "Gauss rule needs at least one node".into(),
        ));
    }
    if !(a > -1.0) || !(b > -1.0) {
        return Err(Error::InvalidParameter(format!(
            "Jacobi exponents must exceed -1, got ({a}, {b})"
        )));
    }
    let rec = recurrence(len, a, b);
    let mut jm = DMatrix::<f64>::zeros(len, len);
    for k in 0..len {
        jm[(k, k)] = rec.diag[k];
        if k + 1 < len {
            jm[(k, k + 1)] = rec.off[k];
            jm[(k + 1, k)] = rec.off[k];
        }
    }
    let mut nodes: Vec<f64> = SymmetricEigen::new(jm)
        .eigenvalues
        .iter()
        .copied()
        .collect();
    nodes.sort_by(|x, y| x.total_cmp(y));
    let mut weights = Vec::with_capacity(len);
    for t in nodes.iter_mut() {
        for _ in 0..3 {
            let (p, d, _) = rec.evaluate(len, *t);
            if d == 0.0 {
                break;
            }
            let step = p / d;
            *t -= step;
            if step.abs() < 1e-17 {
                break;
            }
        }
        let (_, _, sum_sq) = rec.evaluate(len, *t);
        weights.push(1.0 / sum_sq);
    }
    Ok((nodes, weights))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn legendre_two_points() {
        let (x, w) = gauss_jacobi_unit(2, 0.0, 0.0).unwrap();
        let d = 0.5 / 3f64.sqrt();
        assert!((x[0] - (0.5 - d)).abs() < 1e-15);
        assert!((x[1] - (0.5 + d)).abs() < 1e-15);
        assert!((w[0] - 0.5).abs() < 1e-14 && (w[1] - 0.5).abs() < 1e-14);
    }

    #[test]
    fn moments_exact() {
        // ∫ t^{a+j} (1−t)^b dt = B(a+j+1, b+1)
        for &(a, b) in &[(0.0, 0.0), (0.5, 0.0), (-0.5, 2.0), (1.5, -0.7), (3.0, 1.0)] {
            let len = 8;
            let (x, w) = gauss_jacobi_unit(len, a, b).unwrap();
            for j in 0..(2 * len) {
                let quad: f64 = x.iter().zip(&w).map(|(t, wt)| wt * t.powi(j as i32)).sum();
                let exact = (ln_gamma(a + j as f64 + 1.0) + ln_gamma(b + 1.0)
                    - ln_gamma(a + b + j as f64 + 2.0))
                .exp();
                assert!(
                    (quad - exact).abs() <= 1e-14 * exact.max(1e-300) * 10.0,
                    "a={a} b={b} j={j}"
                );
            }
        }
    }

    #[test]
    fn single_node() {
        let (x, w) = gauss_jacobi_unit(1, 1.0, 0.0).unwrap();
        // mean of t under t dt on [0,1] is 2/3, mass 1/2
        assert!((x[0] - 2.0 / 3.0).abs() < 1e-15);
        assert!((w[0] - 0.5).abs() < 1e-14);
    }

    #[test]
    fn rejects_bad_parameters() {
        assert!(gauss_jacobi_unit(0, 0.0, 0.0).is_err());
        assert!(gauss_jacobi_unit(3, -1.0, 0.0).is_err());
    }
}
