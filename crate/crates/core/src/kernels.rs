//! Poisson and Bergman kernels of the rotated balls: closed forms, zonal series,
//! decompositions through the harmonic kernels, the weighted family and the
//! derivative representation for integer `β`.
//!
//! Every kernel is a function of the pair invariants `s = x·ȳ`, `q = |x|²|ȳ|²`
//! and `w = 1 − 2s + q`; the only non-integer power taken is `w^{n/2}`.

use num_complex::Complex64;
use serde::Serialize;

use crate::algebra::{
    pair_invariants, powi, principal_pow, scale, unit_ball_volume, KernelConfig, PairInvariants,
    RotatedPoint,
};
use crate::error::{Error, Result};
use crate::gamma::{ln_gamma, ln_gamma_ratio};
use crate::par::CompensatedSum;
use crate::zonal::{calibrated_growth_constant, zonal_sequence};

/// Truncation of a zonal series.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Truncation {
    pub max_degree: usize,
    pub tol: f64,
    pub calibrated_c: f64,
}

impl Truncation {
    /// A fixed degree with no tail guarantee attached.
    pub fn fixed(max_degree: usize) -> Self {
        Truncation {
            max_degree,
            tol: f64::INFINITY,
            calibrated_c: 1.0,
        }
    }

    /// Smallest degree whose tail bound at radius product `r` is below `tol`.
    pub fn for_radius(cfg: &KernelConfig, r: f64, tol: f64, weight: SeriesWeight) -> Result<Self> {
        let calibrated_c = calibrated_growth_constant(cfg)?;
        let max_degree = truncation_degree_with(cfg, r, tol, weight, calibrated_c)?;
        Ok(Truncation {
            max_degree,
            tol,
            calibrated_c,
        })
    }
}

/// Coefficient sequence `g(m)` multiplying `Z^p_m` in a series.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum SeriesWeight {
    /// `g = 1` (Poisson kernel)
    Poisson,
    /// `g = n + 2m` (Bergman kernel)
    Bergman,
    /// `g = c_m(n, α, β)` (weighted Bergman kernel)
    Weighted,
}

/// Where a pair of points sits relative to the validated evaluation domain.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Regime {
    /// Sector phases `kπ/p` and radii below `r_max`.
    Sector,
    /// Off-sector phases or radii at or beyond `r_max`.
    Extension,
}

impl Regime {
    pub fn as_str(&self) -> &'static str {
        match self {
            Regime::Sector => "sector",
            Regime::Extension => "extension",
        }
    }
}

pub fn regime(cfg: &KernelConfig, x: &RotatedPoint, y: &RotatedPoint) -> Regime {
    let sector = x.is_sector_point(cfg.p) && y.is_sector_point(cfg.p);
    if sector && x.radius() < cfg.r_max && y.radius() < cfg.r_max {
        Regime::Sector
    } else {
        Regime::Extension
    }
}

fn normalization(cfg: &KernelConfig) -> Result<f64> {
    Ok(cfg.n as f64 * unit_ball_volume(cfg.n)?)
}

/// Dimension checks and the singularity guards shared by the closed forms.
fn closed_form_invariants(
    cfg: &KernelConfig,
    x: &RotatedPoint,
    y: &RotatedPoint,
) -> Result<PairInvariants> {
    cfg.check_point(x)?;
    cfg.check_point(y)?;
    let rho = x.radius() * y.radius();
    let inv = pair_invariants(x, y)?;
    let modulus = inv.w.norm();
    if rho >= 1.0 - cfg.eps_sing || modulus <= cfg.eps_sing {
        return Err(Error::NearSingular { modulus });
    }
    Ok(inv)
}

/// `P_p(x,y) = (1 − q^p) / w^{n/2}`.
pub fn poisson(cfg: &KernelConfig, x: &RotatedPoint, y: &RotatedPoint) -> Result<Complex64> {
    let inv = closed_form_invariants(cfg, x, y)?;
    let num = Complex64::new(1.0, 0.0) - powi(inv.q, cfg.p as i32);
    let den = principal_pow(inv.w, cfg.half_n(), cfg.eps_branch)?;
    Ok(num / den)
}

/// `R_p(x,y) = [(n−4p)q^{p+1} + (8ps − n − 4p)q^p + n(1 − q)] / (nΩ_n w^{n/2+1})`.
pub fn bergman(cfg: &KernelConfig, x: &RotatedPoint, y: &RotatedPoint) -> Result<Complex64> {
    let inv = closed_form_invariants(cfg, x, y)?;
    let n = cfg.n as f64;
    let p = cfg.p as f64;
    let qp = powi(inv.q, cfg.p as i32);
    let one = Complex64::new(1.0, 0.0);
    let num = (n - 4.0 * p) * qp * inv.q + (8.0 * p * inv.s - n - 4.0 * p) * qp + n * (one - inv.q);
    let den = principal_pow(inv.w, cfg.half_n() + 1.0, cfg.eps_branch)? * normalization(cfg)?;
    Ok(num / den)
}

/// `R_p` assembled from the harmonic kernels:
/// `(Σ_{k<p} q^k) R(x,y) + (1/(nΩ_n)) Σ_{k<p} 4k q^k P(x,y)`.
pub fn bergman_decomposed(
    cfg: &KernelConfig,
    x: &RotatedPoint,
    y: &RotatedPoint,
) -> Result<Complex64> {
    let harmonic = cfg.with_p(1)?;
    let r1 = bergman(&harmonic, x, y)?;
    let p1 = poisson(&harmonic, x, y)?;
    let q = pair_invariants(x, y)?.q;
    let mut geometric = Complex64::new(0.0, 0.0);
    let mut linear = Complex64::new(0.0, 0.0);
    let mut qk = Complex64::new(1.0, 0.0);
    for k in 0..cfg.p {
        geometric += qk;
        linear += qk * (4.0 * k as f64);
        qk *= q;
    }
    Ok(geometric * r1 + linear * p1 / normalization(cfg)?)
}

/// `c_m = 2Γ(m + (n+α)/2 + β + 1) / (Γ(β+1) Γ(m + (n+α)/2))`.
pub fn weighted_coefficient(n: usize, alpha: f64, beta: f64, m: usize) -> Result<f64> {
    let half = (n as f64 + alpha) / 2.0;
    if !(half > 0.0) || !(beta > -1.0) {
        return Err(Error::InvalidParameter(format!(
            "need n + alpha > 0 and beta > -1 (n = {n}, alpha = {alpha}, beta = {beta})"
        )));
    }
    let z = m as f64 + half;
    Ok(2.0 * (ln_gamma_ratio(z, beta + 1.0) - ln_gamma(beta + 1.0)).exp())
}

fn series_coefficients(
    cfg: &KernelConfig,
    weight: SeriesWeight,
    max_degree: usize,
) -> Result<Vec<f64>> {
    let n = cfg.n as f64;
    (0..=max_degree)
        .map(|m| match weight {
            SeriesWeight::Poisson => Ok(1.0),
            SeriesWeight::Bergman => Ok(n + 2.0 * m as f64),
            SeriesWeight::Weighted => weighted_coefficient(cfg.n, cfg.alpha, cfg.beta, m),
        })
        .collect()
}

/// `Σ_{m≤M} g(m) Z^p_m(x,y)` with compensated summation.
fn zonal_series(
    cfg: &KernelConfig,
    x: &RotatedPoint,
    y: &RotatedPoint,
    max_degree: usize,
    coeffs: &[f64],
) -> Result<Complex64> {
    cfg.check_point(x)?;
    cfg.check_point(y)?;
    let rho = x.radius() * y.radius();
    if rho > cfg.r_max {
        return Err(Error::ConvergenceDomain {
            radius: rho,
            r_max: cfg.r_max,
        });
    }
    let harmonic = zonal_sequence(cfg.n, max_degree, x, y)?;
    let q = pair_invariants(x, y)?.q;
    let q_powers: Vec<Complex64> = (0..cfg.p).map(|k| powi(q, k as i32)).collect();
    let mut acc = CompensatedSum::new();
    for (m, g) in coeffs.iter().enumerate().take(max_degree + 1) {
        for (k, qk) in q_powers.iter().enumerate() {
            if 2 * k > m {
                break;
            }
            acc.add(*qk * harmonic[m - 2 * k] * *g);
        }
    }
    Ok(acc.value())
}

/// Partial sum `Σ_{m≤M} Z^p_m(x,y)` of the Poisson kernel.
pub fn poisson_series(
    cfg: &KernelConfig,
    x: &RotatedPoint,
    y: &RotatedPoint,
    trunc: &Truncation,
) -> Result<Complex64> {
    let coeffs = series_coefficients(cfg, SeriesWeight::Poisson, trunc.max_degree)?;
    zonal_series(cfg, x, y, trunc.max_degree, &coeffs)
}

/// `(1/(nΩ_n)) Σ_{m≤M} (n + 2m) Z^p_m(x,y)`.
pub fn bergman_series(
    cfg: &KernelConfig,
    x: &RotatedPoint,
    y: &RotatedPoint,
    trunc: &Truncation,
) -> Result<Complex64> {
    let coeffs = series_coefficients(cfg, SeriesWeight::Bergman, trunc.max_degree)?;
    Ok(zonal_series(cfg, x, y, trunc.max_degree, &coeffs)? / normalization(cfg)?)
}

/// `(1/(nΩ_n)) Σ_{m≤M} c_m Z^p_m(x,y)` with the weights of `cfg`.
pub fn weighted_bergman_series(
    cfg: &KernelConfig,
    x: &RotatedPoint,
    y: &RotatedPoint,
    trunc: &Truncation,
) -> Result<Complex64> {
    let coeffs = series_coefficients(cfg, SeriesWeight::Weighted, trunc.max_degree)?;
    Ok(zonal_series(cfg, x, y, trunc.max_degree, &coeffs)? / normalization(cfg)?)
}

/// `Σ_{k<p} q^k R_{1,α+4k,β}(x,y)`, each harmonic factor summed to the same degree.
pub fn weighted_bergman_decomposed(
    cfg: &KernelConfig,
    x: &RotatedPoint,
    y: &RotatedPoint,
    trunc: &Truncation,
) -> Result<Complex64> {
    let q = pair_invariants(x, y)?.q;
    let mut acc = CompensatedSum::new();
    let mut qk = Complex64::new(1.0, 0.0);
    for k in 0..cfg.p {
        let harmonic = KernelConfig {
            p: 1,
            alpha: cfg.alpha + 4.0 * k as f64,
            ..*cfg
        }
        .validated()?;
        acc.add(qk * weighted_bergman_series(&harmonic, x, y, trunc)?);
        qk *= q;
    }
    Ok(acc.value())
}

/// Fourth-order central stencil `(offsets, coefficients)` for the `order`-th derivative.
fn derivative_stencil(order: usize) -> (&'static [i32], &'static [f64]) {
    match order {
        1 => (
            &[-2, -1, 0, 1, 2],
            &[1.0 / 12.0, -2.0 / 3.0, 0.0, 2.0 / 3.0, -1.0 / 12.0],
        ),
        2 => (
            &[-2, -1, 0, 1, 2],
            &[-1.0 / 12.0, 4.0 / 3.0, -2.5, 4.0 / 3.0, -1.0 / 12.0],
        ),
        _ => (
            &[-3, -2, -1, 0, 1, 2, 3],
            &[0.125, -1.0, 1.625, 0.0, -1.625, 1.0, -0.125],
        ),
    }
}

/// `R_{p,α,β}` for integer `β` as `(2/(nΓ(β+1)Ω_n)) d^{β+1}/dt^{β+1}[t^{(n+α)/2+β} P_p(tx,y)]`
/// at `t = 1`, the derivative taken by central differences with step `h`.
pub fn derivative_form_check(
    cfg: &KernelConfig,
    alpha: f64,
    beta_int: u32,
    x: &RotatedPoint,
    y: &RotatedPoint,
    h: f64,
) -> Result<Complex64> {
    if beta_int > 2 {
        return Err(Error::InvalidParameter(format!(
            "beta = {beta_int} must be 0, 1 or 2"
        )));
    }
    if !(1e-4..=1e-2).contains(&h) {
        return Err(Error::InvalidParameter(format!(
            "step h = {h} must lie in [1e-4, 1e-2]"
        )));
    }
    let cfg = cfg.with_weights(alpha, beta_int as f64)?;
    let order = beta_int as usize + 1;
    let (offsets, weights) = derivative_stencil(order);
    let radius = x.radius();
    for &k in offsets {
        if (1.0 + k as f64 * h) * radius >= 1.0 {
            return Err(Error::StencilOutOfDomain(format!(
                "offset {k} maps radius {radius} outside the unit ball"
            )));
        }
    }
    let exponent = (cfg.n as f64 + alpha) / 2.0 + beta_int as f64;
    let mut acc = CompensatedSum::new();
    for (&k, &c) in offsets.iter().zip(weights) {
        if c == 0.0 {
            continue;
        }
        let t = 1.0 + k as f64 * h;
        let value = poisson(&cfg, &scale(x, t)?, y)? * t.powf(exponent);
        acc.add(value * c);
    }
    let derivative = acc.value() / h.powi(order as i32);
    let factor =
        2.0 / (cfg.n as f64 * ln_gamma(beta_int as f64 + 1.0).exp() * unit_ball_volume(cfg.n)?);
    Ok(derivative * factor)
}

/// Degree cap for truncation searches.
pub const MAX_TRUNCATION_DEGREE: usize = 20_000;

/// Smallest `M` with `Ĉ p Σ_{m>M} g(m) m^{n−2} r^m < tol`.
pub fn truncation_degree(
    cfg: &KernelConfig,
    r: f64,
    tol: f64,
    weight: SeriesWeight,
) -> Result<usize> {
    let c = calibrated_growth_constant(cfg)?;
    truncation_degree_with(cfg, r, tol, weight, c)
}

/// [`truncation_degree`] with a precomputed growth constant `Ĉ`.
pub fn truncation_degree_with(
    cfg: &KernelConfig,
    r: f64,
    tol: f64,
    weight: SeriesWeight,
    calibrated_c: f64,
) -> Result<usize> {
    if !(tol > 0.0) {
        return Err(Error::InvalidParameter(format!(
            "tolerance {tol} must be > 0"
        )));
    }
    if !(r >= 0.0) {
        return Err(Error::InvalidParameter(format!("radius {r} must be >= 0")));
    }
    if r > cfg.r_max {
        return Err(Error::ConvergenceDomain {
            radius: r,
            r_max: cfg.r_max,
        });
    }
    if r == 0.0 {
        return Ok(0);
    }
    let n = cfg.n as f64;
    let scale = calibrated_c * cfg.p as f64;
    // g(m+1)/g(m); nonincreasing in m for all three weights
    let g_ratio = |m: f64| match weight {
        SeriesWeight::Poisson => 1.0,
        SeriesWeight::Bergman => (n + 2.0 * m + 2.0) / (n + 2.0 * m),
        SeriesWeight::Weighted => {
            (n + 2.0 * m + cfg.alpha + 2.0 * cfg.beta + 2.0) / (n + 2.0 * m + cfg.alpha)
        }
    };
    let g0 = match weight {
        SeriesWeight::Poisson => 1.0,
        SeriesWeight::Bergman => n,
        SeriesWeight::Weighted => weighted_coefficient(cfg.n, cfg.alpha, cfg.beta, 0)?,
    };
    // term(m) = Ĉ p g(m) m^{n−2} r^m for m >= 1, tracked for m = M + 1
    let mut g = g0 * g_ratio(0.0);
    let mut rm = r;
    for big_m in 0..MAX_TRUNCATION_DEGREE {
        let m = (big_m + 1) as f64;
        let term = scale * g * m.powf(n - 2.0) * rm;
        let ratio = g_ratio(m) * ((m + 1.0) / m).powf(n - 2.0) * r;
        if ratio < 1.0 && term / (1.0 - ratio) < tol {
            return Ok(big_m);
        }
        g *= g_ratio(m);
        rm *= r;
    }
    Err(Error::ResourceLimit(format!(
        "no truncation degree below {MAX_TRUNCATION_DEGREE} reaches tolerance {tol} at r = {r}"
    )))
}
