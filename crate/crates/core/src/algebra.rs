//! Rotated points `e^{iφ}a` and the bilinear pair invariants every kernel is built from.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type ComplexScalar = Complex64;

/// Tolerance for "on the unit sphere" checks.
pub const SPHERE_TOL: f64 = 1e-12;

/// A real coordinate vector in `R^n`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct RealVector(pub Vec<f64>);

impl RealVector {
    pub fn new(coords: Vec<f64>) -> Result<Self> {
        if coords.iter().any(|c| !c.is_finite()) {
            return Err(Error::NonFinite("coordinates"));
        }
        Ok(RealVector(coords))
    }

    pub fn zeros(n: usize) -> Self {
        RealVector(vec![0.0; n])
    }

    /// `r·e_1`.
    pub fn axis(n: usize, r: f64) -> Self {
        let mut v = vec![0.0; n];
        v[0] = r;
        RealVector(v)
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.0
    }

    pub fn dot(&self, other: &RealVector) -> f64 {
        self.0.iter().zip(&other.0).map(|(a, b)| a * b).sum()
    }

    pub fn norm(&self) -> f64 {
        self.dot(self).sqrt()
    }
}

/// The point `z = e^{iφ}a` of a rotated ball or sphere.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RotatedPoint {
    pub phase: f64,
    pub coords: RealVector,
}

/// Reduce an angle into `(-π, π]`.
pub fn normalize_phase(phase: f64) -> f64 {
    let two_pi = 2.0 * PI;
    let mut r = phase - two_pi * (phase / two_pi).round();
    if r <= -PI {
        r += two_pi;
    } else if r > PI {
        r -= two_pi;
    }
    r
}

/// Phase `kπ/p` of the `k`-th sector of the rotated ball.
pub fn sector_phase(k: usize, p: usize) -> f64 {
    k as f64 * PI / p as f64
}

impl RotatedPoint {
    pub fn new(phase: f64, coords: RealVector) -> Result<Self> {
        if !phase.is_finite() {
            return Err(Error::NonFinite("phase"));
        }
        if coords.0.iter().any(|c| !c.is_finite()) {
            return Err(Error::NonFinite("coordinates"));
        }
        Ok(RotatedPoint {
            phase: normalize_phase(phase),
            coords,
        })
    }

    /// A point with phase 0.
    pub fn real(coords: Vec<f64>) -> Result<Self> {
        RotatedPoint::new(0.0, RealVector::new(coords)?)
    }

    pub fn origin(n: usize) -> Self {
        RotatedPoint {
            phase: 0.0,
            coords: RealVector::zeros(n),
        }
    }

    /// The same real vector placed in sector `k` of `p`.
    pub fn in_sector(coords: RealVector, k: usize, p: usize) -> Result<Self> {
        RotatedPoint::new(sector_phase(k, p), coords)
    }

    pub fn dim(&self) -> usize {
        self.coords.dim()
    }

    /// Real radius `|a|`.
    pub fn radius(&self) -> f64 {
        self.coords.norm()
    }

    pub fn is_real(&self) -> bool {
        self.phase == 0.0
    }

    /// Complex coordinates `e^{iφ}a_j`.
    pub fn to_complex(&self) -> Vec<Complex64> {
        let rot = Complex64::from_polar(1.0, self.phase);
        self.coords.0.iter().map(|&a| rot * a).collect()
    }

    pub fn require_ball(&self) -> Result<()> {
        let r = self.radius();
        if r < 1.0 {
            Ok(())
        } else {
            Err(Error::Geometry(format!("ball point has radius {r} >= 1")))
        }
    }

    pub fn require_sphere(&self) -> Result<()> {
        let r = self.radius();
        if (r - 1.0).abs() <= SPHERE_TOL {
            Ok(())
        } else {
            Err(Error::Geometry(format!("sphere point has radius {r}")))
        }
    }

    /// Whether the phase is a multiple of `π/p` (points of the rotated balls proper).
    pub fn is_sector_point(&self, p: usize) -> bool {
        let k = self.phase * p as f64 / PI;
        (k - k.round()).abs() < 1e-12
    }
}

/// Validated construction of a rotated point in dimension `n`.
pub fn make_rotated_point(n: usize, phase: f64, coords: RealVector) -> Result<RotatedPoint> {
    if coords.dim() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            got: coords.dim(),
        });
    }
    RotatedPoint::new(phase, coords)
}

/// `t·x` for `t ≥ 0`: same phase, scaled coordinates.
pub fn scale(x: &RotatedPoint, t: f64) -> Result<RotatedPoint> {
    if !(t >= 0.0) || !t.is_finite() {
        return Err(Error::InvalidParameter(format!(
            "scale factor {t} must be >= 0"
        )));
    }
    Ok(RotatedPoint {
        phase: x.phase,
        coords: RealVector(x.coords.0.iter().map(|c| c * t).collect()),
    })
}

/// The scalars `s = x·ȳ`, `u = |x|²`, `v = |ȳ|²`, `q = uv`, `w = 1 − 2s + q`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PairInvariants {
    pub s: Complex64,
    pub u: Complex64,
    pub v: Complex64,
    pub q: Complex64,
    pub w: Complex64,
}

pub fn pair_invariants(x: &RotatedPoint, y: &RotatedPoint) -> Result<PairInvariants> {
    if x.dim() != y.dim() {
        return Err(Error::DimensionMismatch {
            expected: x.dim(),
            got: y.dim(),
        });
    }
    let ab = x.coords.dot(&y.coords);
    let aa = x.coords.dot(&x.coords);
    let bb = y.coords.dot(&y.coords);
    let s = Complex64::from_polar(ab, x.phase - y.phase);
    let u = Complex64::from_polar(1.0, 2.0 * x.phase) * aa;
    let v = Complex64::from_polar(1.0, -2.0 * y.phase) * bb;
    let q = u * v;
    let w = Complex64::new(1.0, 0.0) - 2.0 * s + q;
    Ok(PairInvariants { s, u, v, q, w })
}

/// Integer power by repeated squaring.
pub fn powi(z: Complex64, e: i32) -> Complex64 {
    let mut base = if e < 0 { z.inv() } else { z };
    let mut k = e.unsigned_abs();
    let mut acc = Complex64::new(1.0, 0.0);
    while k > 0 {
        if k & 1 == 1 {
            acc *= base;
        }
        base *= base;
        k >>= 1;
    }
    acc
}

/// `exp(e·Log w)` with the principal logarithm; integer exponents bypass the logarithm.
pub fn principal_pow(w: Complex64, e: f64, eps_branch: f64) -> Result<Complex64> {
    if !w.re.is_finite() || !w.im.is_finite() || !e.is_finite() {
        return Err(Error::NonFinite("principal_pow argument"));
    }
    if e.fract() == 0.0 && e.abs() < i32::MAX as f64 {
        return Ok(powi(w, e as i32));
    }
    let modulus = w.norm();
    if w.re <= 0.0 && w.im.abs() < eps_branch * modulus.max(f64::MIN_POSITIVE) {
        return Err(Error::BranchCutProximity {
            value: format!("{w}"),
        });
    }
    if modulus == 0.0 {
        return Err(Error::BranchCutProximity {
            value: format!("{w}"),
        });
    }
    Ok((w.ln() * e).exp())
}

/// `Ω_n = π^{n/2}/Γ(n/2 + 1)`, the volume of the unit ball of `R^n`.
pub fn unit_ball_volume(n: usize) -> Result<f64> {
    if n < 1 {
        return Err(Error::InvalidParameter("dimension must be >= 1".into()));
    }
    // Ω_n = (2π/n) Ω_{n-2}, Ω_0 = 1, Ω_1 = 2
    let mut omega = if n.is_multiple_of(2) { 1.0 } else { 2.0 };
    let mut k = if n.is_multiple_of(2) { 2 } else { 3 };
    while k <= n {
        omega *= 2.0 * PI / k as f64;
        k += 2;
    }
    Ok(omega)
}

/// Problem parameters shared by all kernels.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct KernelConfig {
    pub n: usize,
    pub p: usize,
    pub alpha: f64,
    pub beta: f64,
    pub eps_branch: f64,
    pub eps_sing: f64,
    pub r_max: f64,
}

impl KernelConfig {
    pub const DEFAULT_EPS: f64 = 1e-12;
    pub const DEFAULT_R_MAX: f64 = 0.95;

    pub fn new(n: usize, p: usize) -> Result<Self> {
        KernelConfig {
            n,
            p,
            alpha: 0.0,
            beta: 0.0,
            eps_branch: Self::DEFAULT_EPS,
            eps_sing: Self::DEFAULT_EPS,
            r_max: Self::DEFAULT_R_MAX,
        }
        .validated()
    }

    pub fn with_weights(self, alpha: f64, beta: f64) -> Result<Self> {
        KernelConfig {
            alpha,
            beta,
            ..self
        }
        .validated()
    }

    pub fn with_p(self, p: usize) -> Result<Self> {
        KernelConfig { p, ..self }.validated()
    }

    pub fn with_r_max(self, r_max: f64) -> Result<Self> {
        KernelConfig { r_max, ..self }.validated()
    }

    pub fn validated(self) -> Result<Self> {
        let bad = |m: String| Err(Error::InvalidParameter(m));
        if self.n < 2 {
            return bad(format!("n = {} must be >= 2", self.n));
        }
        if self.p < 1 {
            return bad(format!("p = {} must be >= 1", self.p));
        }
        if !(self.n as f64 + self.alpha > 0.0) {
            return bad(format!(
                "n + alpha = {} must be > 0",
                self.n as f64 + self.alpha
            ));
        }
        if !(self.beta > -1.0) {
            return bad(format!("beta = {} must be > -1", self.beta));
        }
        for (name, eps) in [("eps_branch", self.eps_branch), ("eps_sing", self.eps_sing)] {
            if !(eps > 0.0 && eps <= 1e-8) {
                return bad(format!("{name} = {eps} must lie in (0, 1e-8]"));
            }
        }
        if !(self.r_max > 0.0 && self.r_max < 1.0) {
            return bad(format!("r_max = {} must lie in (0, 1)", self.r_max));
        }
        Ok(self)
    }

    pub fn check_point(&self, x: &RotatedPoint) -> Result<()> {
        if x.dim() != self.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                got: x.dim(),
            });
        }
        Ok(())
    }

    /// Half the dimension, the exponent of `w` in the Poisson kernel.
    pub fn half_n(&self) -> f64 {
        self.n as f64 / 2.0
    }
}
