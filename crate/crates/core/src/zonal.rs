//! Zonal harmonics `Z_m` and zonal polyharmonics `Z^p_m` on rotated balls.
//!
//! On `S × S` the zonal harmonic is `z_m(ζ·η)` with
//! `z_m = ((m+λ)/λ) C^λ_m` for `n ≥ 3` (`λ = (n−2)/2`) and `z_m = 2T_m` for `n = 2`.
//! Points `e^{iφ}a`, `e^{iψ}b` pick up the factor `e^{im(φ−ψ)} |a|^m |b|^m`.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::algebra::{pair_invariants, KernelConfig, RealVector, RotatedPoint, SPHERE_TOL};
use crate::error::{Error, Result};

/// Gegenbauer index attached to a dimension.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ZonalParams {
    pub n: usize,
    pub lambda: f64,
}

impl ZonalParams {
    pub fn new(n: usize) -> Result<Self> {
        if n < 2 {
            return Err(Error::InvalidParameter(format!("n = {n} must be >= 2")));
        }
        Ok(ZonalParams {
            n,
            lambda: (n as f64 - 2.0) / 2.0,
        })
    }
}

fn check_unit_interval(t: f64) -> Result<f64> {
    if !t.is_finite() || t.abs() > 1.0 + 1e-12 {
        return Err(Error::InvalidParameter(format!(
            "argument {t} outside [-1, 1]"
        )));
    }
    Ok(t.clamp(-1.0, 1.0))
}

/// `C^λ_m(t)` by the three-term recurrence.
pub fn gegenbauer(m: usize, lambda: f64, t: f64) -> Result<f64> {
    if !(lambda > 0.0) {
        return Err(Error::InvalidParameter(format!(
            "lambda = {lambda} must be > 0"
        )));
    }
    let t = check_unit_interval(t)?;
    if m == 0 {
        return Ok(1.0);
    }
    let mut prev = 1.0;
    let mut cur = 2.0 * lambda * t;
    for k in 2..=m {
        let kf = k as f64;
        let next = (2.0 * t * (kf + lambda - 1.0) * cur - (kf + 2.0 * lambda - 2.0) * prev) / kf;
        prev = cur;
        cur = next;
    }
    Ok(cur)
}

/// Chebyshev polynomial of the first kind.
pub fn chebyshev_t(m: usize, t: f64) -> f64 {
    if m == 0 {
        return 1.0;
    }
    let (mut prev, mut cur) = (1.0, t);
    for _ in 2..=m {
        let next = 2.0 * t * cur - prev;
        prev = cur;
        cur = next;
    }
    cur
}

/// Values `z_0(t), …, z_M(t)` of the real zonal kernel on `S × S`.
pub fn zonal_profile(n: usize, max_m: usize, t: f64) -> Result<Vec<f64>> {
    let params = ZonalParams::new(n)?;
    let t = check_unit_interval(t)?;
    let mut out = Vec::with_capacity(max_m + 1);
    out.push(1.0);
    if max_m == 0 {
        return Ok(out);
    }
    if n == 2 {
        let (mut prev, mut cur) = (1.0, t);
        out.push(2.0 * cur);
        for _ in 2..=max_m {
            let next = 2.0 * t * cur - prev;
            prev = cur;
            cur = next;
            out.push(2.0 * cur);
        }
        return Ok(out);
    }
    let lambda = params.lambda;
    let (mut prev, mut cur) = (1.0, 2.0 * lambda * t);
    out.push((1.0 + lambda) / lambda * cur);
    for k in 2..=max_m {
        let kf = k as f64;
        let next = (2.0 * t * (kf + lambda - 1.0) * cur - (kf + 2.0 * lambda - 2.0) * prev) / kf;
        prev = cur;
        cur = next;
        out.push((kf + lambda) / lambda * cur);
    }
    Ok(out)
}

/// Cosine of the angle between the real parts, 0 when either radius vanishes.
fn cos_angle(x: &RotatedPoint, y: &RotatedPoint) -> (f64, f64, f64) {
    let (ra, rb) = (x.radius(), y.radius());
    if ra == 0.0 || rb == 0.0 {
        return (ra, rb, 0.0);
    }
    let t = (x.coords.dot(&y.coords) / (ra * rb)).clamp(-1.0, 1.0);
    (ra, rb, t)
}

fn check_pair(x: &RotatedPoint, y: &RotatedPoint) -> Result<()> {
    if x.dim() != y.dim() {
        return Err(Error::DimensionMismatch {
            expected: x.dim(),
            got: y.dim(),
        });
    }
    for pt in [x, y] {
        if pt.radius() > 1.0 + SPHERE_TOL {
            return Err(Error::Geometry(format!(
                "zonal evaluation needs points in the closed ball, got radius {}",
                pt.radius()
            )));
        }
    }
    Ok(())
}

/// `Z_m(x, y)` on the closed rotated balls.
pub fn zonal_harmonic(n: usize, m: usize, x: &RotatedPoint, y: &RotatedPoint) -> Result<Complex64> {
    if x.dim() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            got: x.dim(),
        });
    }
    check_pair(x, y)?;
    let (ra, rb, t) = cos_angle(x, y);
    if m == 0 {
        return Ok(Complex64::new(1.0, 0.0));
    }
    if ra == 0.0 || rb == 0.0 {
        return Ok(Complex64::new(0.0, 0.0));
    }
    let params = ZonalParams::new(n)?;
    let profile = if n == 2 {
        2.0 * chebyshev_t(m, t)
    } else {
        (m as f64 + params.lambda) / params.lambda * gegenbauer(m, params.lambda, t)?
    };
    let mag = (ra * rb).powi(m as i32) * profile;
    Ok(Complex64::from_polar(1.0, m as f64 * (x.phase - y.phase)) * mag)
}

/// `Z_0(x,y), …, Z_M(x,y)` from one recurrence pass.
pub fn zonal_sequence(
    n: usize,
    max_m: usize,
    x: &RotatedPoint,
    y: &RotatedPoint,
) -> Result<Vec<Complex64>> {
    if x.dim() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            got: x.dim(),
        });
    }
    check_pair(x, y)?;
    let (ra, rb, t) = cos_angle(x, y);
    let profile = zonal_profile(n, max_m, t)?;
    let theta = x.phase - y.phase;
    let rho = ra * rb;
    let mut radial = 1.0;
    Ok(profile
        .into_iter()
        .enumerate()
        .map(|(m, z)| {
            let term = Complex64::from_polar(radial * z, m as f64 * theta);
            radial *= rho;
            term
        })
        .collect())
}

/// `Z^p_m = Σ_{k<p} (uv)^k Z_{m−2k}` given the harmonic sequence and `q = uv`.
pub fn polyharmonic_from_sequence(
    p: usize,
    m: usize,
    harmonic: &[Complex64],
    q: Complex64,
) -> Complex64 {
    let mut acc = Complex64::new(0.0, 0.0);
    let mut qk = Complex64::new(1.0, 0.0);
    for k in 0..p {
        if 2 * k > m {
            break;
        }
        acc += qk * harmonic[m - 2 * k];
        qk *= q;
    }
    acc
}

/// `Z^p_m(x, y)` via the `|x|^{2k}|ȳ|^{2k}` decomposition.
pub fn zonal_polyharmonic(
    cfg: &KernelConfig,
    m: usize,
    x: &RotatedPoint,
    y: &RotatedPoint,
) -> Result<Complex64> {
    cfg.check_point(x)?;
    let inv = pair_invariants(x, y)?;
    let seq = zonal_sequence(cfg.n, m, x, y)?;
    Ok(polyharmonic_from_sequence(cfg.p, m, &seq, inv.q))
}

fn binomial(n: u64, k: u64) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc
}

/// `dim H_m(S)` for the sphere in `R^n`.
pub fn sph_dim(n: usize, m: usize) -> Result<u128> {
    if n < 2 {
        return Err(Error::InvalidParameter(format!("n = {n} must be >= 2")));
    }
    if m == 0 {
        return Ok(1);
    }
    if n == 2 {
        return Ok(2);
    }
    // homogeneous polynomials of degree m minus those of degree m − 2
    let (n, m) = (n as u64, m as u64);
    let top = binomial(m + n - 1, n - 1);
    let low = if m >= 2 {
        binomial(m - 2 + n - 1, n - 1)
    } else {
        0
    };
    Ok(top - low)
}

/// Uniform point on `S^{n−1}` from normalized Gaussians.
pub fn random_sphere_vector<R: Rng>(rng: &mut R, n: usize) -> RealVector {
    loop {
        let v: Vec<f64> = (0..n).map(|_| rng.sample(StandardNormal)).collect();
        let r = v.iter().map(|c| c * c).sum::<f64>().sqrt();
        if r > 1e-8 {
            return RealVector(v.into_iter().map(|c| c / r).collect());
        }
    }
}

/// `max |Z^p_m(ζ,η)| / (p m^{n−2})` over sampled sphere pairs; the first sample is `ζ = η`.
pub fn zonal_growth_ratio(cfg: &KernelConfig, m: usize, samples: usize) -> Result<f64> {
    if m < 1 || samples < 1 {
        return Err(Error::InvalidParameter(
            "need m >= 1 and samples >= 1".into(),
        ));
    }
    let n = cfg.n;
    let denom = cfg.p as f64 * (m as f64).powi(n as i32 - 2);
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0000 + m as u64);
    let pole = RotatedPoint::real(RealVector::axis(n, 1.0).0)?;
    let mut best = 0.0_f64;
    for i in 0..samples {
        let zeta = if i == 0 {
            pole.clone()
        } else {
            RotatedPoint::new(0.0, random_sphere_vector(&mut rng, n))?
        };
        let value = zonal_polyharmonic(cfg, m, &zeta, &pole)?.norm();
        best = best.max(value / denom);
    }
    Ok(best)
}

/// Degrees scanned when calibrating the growth constant.
pub const GROWTH_CALIBRATION_DEGREES: usize = 64;

/// Empirical constant `Ĉ` with `|Z^p_m(x,ζ)| ≤ Ĉ p m^{n−2} |x|^m`, from the diagonal maxima
/// and their `m → ∞` limit `2/(n−2)!` (approached from below for some `p`).
pub fn calibrated_growth_constant(cfg: &KernelConfig) -> Result<f64> {
    let limit = 2.0
        / (1..cfg.n.saturating_sub(1))
            .map(|k| k as f64)
            .product::<f64>();
    let mut c = limit.max(1.0 / cfg.p as f64);
    for m in 1..=GROWTH_CALIBRATION_DEGREES {
        c = c.max(zonal_growth_ratio(cfg, m, 1)?);
    }
    Ok(c)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::sector_phase;
    use std::f64::consts::PI;

    #[test]
    fn gegenbauer_examples() {
        assert_eq!(gegenbauer(0, 0.7, 0.3).unwrap(), 1.0);
        assert!((gegenbauer(2, 0.5, 1.0).unwrap() - 1.0).abs() < 1e-15);
        assert!((gegenbauer(1, 0.5, 0.5).unwrap() - 0.5).abs() < 1e-15);
        assert!(gegenbauer(3, 0.5, 1.1).is_err());
        assert!(gegenbauer(3, 0.0, 0.1).is_err());
        // Legendre P_3(t) = (5t³ − 3t)/2
        let t = 0.37;
        assert!((gegenbauer(3, 0.5, t).unwrap() - (5.0 * t * t * t - 3.0 * t) / 2.0).abs() < 1e-15);
    }

    #[test]
    fn zonal_constant_term() {
        let x = RotatedPoint::real(vec![0.3, 0.1, 0.0]).unwrap();
        let y = RotatedPoint::new(1.0, RealVector(vec![0.0, 0.2, 0.5])).unwrap();
        assert_eq!(
            zonal_harmonic(3, 0, &x, &y).unwrap(),
            Complex64::new(1.0, 0.0)
        );
        let o = RotatedPoint::origin(3);
        assert_eq!(
            zonal_harmonic(3, 4, &o, &y).unwrap(),
            Complex64::new(0.0, 0.0)
        );
    }

    #[test]
    fn diagonal_is_dimension() {
        for n in 2..=6 {
            let zeta = RotatedPoint::real(RealVector::axis(n, 1.0).0).unwrap();
            for m in 0..=30 {
                let z = zonal_harmonic(n, m, &zeta, &zeta).unwrap();
                let h = sph_dim(n, m).unwrap() as f64;
                assert!(
                    (z.re - h).abs() <= 1e-10 * h,
                    "n={n} m={m}: {} vs {h}",
                    z.re
                );
                assert_eq!(z.im, 0.0);
            }
        }
        let zeta = RotatedPoint::real(vec![0.0, 1.0, 0.0]).unwrap();
        for m in 0..10 {
            let z = zonal_harmonic(3, m, &zeta, &zeta).unwrap();
            assert!((z.re - (2 * m + 1) as f64).abs() < 1e-12);
        }
    }

    #[test]
    fn sector_phase_rule() {
        let zeta = RotatedPoint::real(vec![0.6, 0.8, 0.0]).unwrap();
        let eta = RotatedPoint::real(vec![0.0, 0.6, 0.8]).unwrap();
        let rotated = RotatedPoint::in_sector(zeta.coords.clone(), 1, 2).unwrap();
        let a = zonal_harmonic(3, 2, &rotated, &eta).unwrap();
        let b = zonal_harmonic(3, 2, &zeta, &eta).unwrap();
        assert!((a + b).norm() < 1e-14);
        let _ = sector_phase(1, 2);
    }

    #[test]
    fn sequence_matches_single_evaluations() {
        let x = RotatedPoint::new(0.4, RealVector(vec![0.2, -0.3, 0.5, 0.1])).unwrap();
        let y = RotatedPoint::new(-1.1, RealVector(vec![0.7, 0.1, 0.0, -0.2])).unwrap();
        let seq = zonal_sequence(4, 20, &x, &y).unwrap();
        for (m, s) in seq.iter().enumerate() {
            let z = zonal_harmonic(4, m, &x, &y).unwrap();
            assert!((s - z).norm() <= 1e-14 * (1.0 + z.norm()), "m={m}");
        }
    }

    #[test]
    fn polyharmonic_special_cases() {
        let cfg1 = KernelConfig::new(3, 1).unwrap();
        let cfg2 = KernelConfig::new(3, 2).unwrap();
        let x = RotatedPoint::new(PI / 2.0, RealVector(vec![0.3, 0.4, 0.1])).unwrap();
        let y = RotatedPoint::real(vec![0.5, -0.2, 0.3]).unwrap();
        for m in 0..6 {
            let a = zonal_polyharmonic(&cfg1, m, &x, &y).unwrap();
            let b = zonal_harmonic(3, m, &x, &y).unwrap();
            assert!((a - b).norm() < 1e-15);
        }
        let a = zonal_polyharmonic(&cfg2, 1, &x, &y).unwrap();
        let b = zonal_harmonic(3, 1, &x, &y).unwrap();
        assert!((a - b).norm() < 1e-15);
        // p = 2, m = 2 on a real diagonal: Z_2(x,x) + r⁴
        let r = 0.6;
        let xr = RotatedPoint::real(vec![r, 0.0, 0.0]).unwrap();
        let z = zonal_polyharmonic(&cfg2, 2, &xr, &xr).unwrap();
        let want = zonal_harmonic(3, 2, &xr, &xr).unwrap().re + r.powi(4);
        assert!((z.re - want).abs() < 1e-15);
    }

    #[test]
    fn sph_dim_values() {
        assert_eq!(sph_dim(3, 1).unwrap(), 3);
        assert_eq!(sph_dim(2, 5).unwrap(), 2);
        assert_eq!(sph_dim(7, 0).unwrap(), 1);
        assert_eq!(sph_dim(4, 3).unwrap(), 16);
        assert!(sph_dim(1, 3).is_err());
    }

    #[test]
    fn growth_ratio_examples() {
        let cfg = KernelConfig::new(3, 1).unwrap();
        assert!((zonal_growth_ratio(&cfg, 1, 5).unwrap() - 3.0).abs() < 1e-14);
        let c = calibrated_growth_constant(&cfg).unwrap();
        assert!((c - 3.0).abs() < 1e-12);
        assert!(zonal_growth_ratio(&cfg, 0, 5).is_err());
    }
}
