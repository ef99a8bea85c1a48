use serde::{Deserialize, Serialize};

use super::jacobi::gauss_jacobi_unit;
use super::sphere::{build_sphere_rule, SphereRule};
use crate::algebra::unit_ball_volume;
use crate::error::{Error, Result};
use crate::gamma::{ln_gamma, ln_gamma_ratio};

/// Gauss rule for `∫_0^1 r^{n−1+α}(1−r²)^β f(r) dr`, built in `t = r²`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RadialRule {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
    pub n: usize,
    pub alpha: f64,
    pub beta: f64,
}

impl RadialRule {
    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }
}

fn check_radial_params(n: usize, alpha: f64, beta: f64) -> Result<()> {
    if n < 1
        || !(n as f64 + alpha > 0.0)
        || !(beta > -1.0)
        || !alpha.is_finite()
        || !beta.is_finite()
    {
        return Err(Error::InvalidParameter(format!(
            "radial weight needs n + alpha > 0 and beta > -1 (n = {n}, alpha = {alpha}, beta = {beta})"
        )));
    }
    Ok(())
}

/// `node_count`-point rule; exact for polynomials in `r²` of degree `≤ 2·node_count − 1`.
pub fn build_radial_rule(n: usize, alpha: f64, beta: f64, node_count: usize) -> Result<RadialRule> {
    check_radial_params(n, alpha, beta)?;
    // r^{n−1+α}(1−r²)^β dr = ½ t^{(n+α)/2−1}(1−t)^β dt
    let a = (n as f64 + alpha) / 2.0 - 1.0;
    let (t, w) = gauss_jacobi_unit(node_count, a, beta)?;
    Ok(RadialRule {
        nodes: t.iter().map(|t| t.sqrt()).collect(),
        weights: w.iter().map(|w| w / 2.0).collect(),
        n,
        alpha,
        beta,
    })
}

/// `∫_0^1 r^{n+2m+α−1}(1−r²)^β dr = Γ(β+1)Γ(m+(n+α)/2) / (2Γ(m+(n+α)/2+β+1))`.
pub fn radial_moment(n: usize, m: usize, alpha: f64, beta: f64) -> Result<f64> {
    check_radial_params(n, alpha, beta)?;
    let z = m as f64 + (n as f64 + alpha) / 2.0;
    Ok(0.5 * (ln_gamma(beta + 1.0) - ln_gamma_ratio(z, beta + 1.0)).exp())
}

/// Polar product rule: `∫_B f |y|^α(1−|y|²)^β dy ≈ nΩ_n Σ_ij w_i w_j f(r_i ζ_j)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BallRule {
    pub sphere: SphereRule,
    pub radial: RadialRule,
    pub normalization: f64,
}

impl BallRule {
    /// Rule exact for polynomials of total degree `≤ exact_degree` against the weight.
    pub fn new(n: usize, alpha: f64, beta: f64, exact_degree: usize) -> Result<Self> {
        let sphere = build_sphere_rule(n, exact_degree)?;
        let radial = build_radial_rule(n, alpha, beta, exact_degree / 2 + 1)?;
        Self::from_parts(sphere, radial)
    }

    pub fn from_parts(sphere: SphereRule, radial: RadialRule) -> Result<Self> {
        if sphere.dim() != radial.n {
            return Err(Error::DimensionMismatch {
                expected: radial.n,
                got: sphere.dim(),
            });
        }
        let n = radial.n;
        Ok(BallRule {
            normalization: n as f64 * unit_ball_volume(n)?,
            sphere,
            radial,
        })
    }

    pub fn dim(&self) -> usize {
        self.radial.n
    }

    /// Odd total degrees vanish on the sphere; even degree `2d` needs `d ≤ 2N − 1` in `t`.
    pub fn exact_degree(&self) -> usize {
        self.sphere
            .exact_degree
            .min((4 * self.radial.len()).saturating_sub(1))
    }

    pub fn len(&self) -> usize {
        self.sphere.len() * self.radial.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Node `r_i ζ_j` and full weight `nΩ_n w_i w_j` of flat index `i·|sphere| + j`.
    pub fn node(&self, idx: usize) -> (Vec<f64>, f64) {
        let (i, j) = (idx / self.sphere.len(), idx % self.sphere.len());
        let r = self.radial.nodes[i];
        let point = self.sphere.node(j).iter().map(|z| r * z).collect();
        (
            point,
            self.normalization * self.radial.weights[i] * self.sphere.weights[j],
        )
    }
}
