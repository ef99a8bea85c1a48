use std::f64::consts::PI;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::jacobi::gauss_jacobi_unit;
use crate::error::{Error, Result};
use crate::zonal::random_sphere_vector;

/// Default cap on the number of cubature nodes.
pub const DEFAULT_NODE_CAP: usize = 10_000_000;

/// Cubature for the normalized surface measure on `S^{n−1}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SphereRule {
    pub nodes: Vec<Vec<f64>>,
    pub weights: Vec<f64>,
    pub exact_degree: usize,
}

impl SphereRule {
    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    pub fn dim(&self) -> usize {
        self.nodes.first().map_or(0, Vec::len)
    }

    pub fn node(&self, j: usize) -> &[f64] {
        &self.nodes[j]
    }

    /// Equal-weight Monte Carlo nodes; a smoke-test fallback with no exactness.
    pub fn monte_carlo(n: usize, samples: usize, seed: u64) -> Result<Self> {
        if n < 2 || samples == 0 {
            return Err(Error::InvalidParameter(
                "need n >= 2 and samples >= 1".into(),
            ));
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let nodes = (0..samples)
            .map(|_| random_sphere_vector(&mut rng, n).0)
            .collect();
        Ok(SphereRule {
            nodes,
            weights: vec![1.0 / samples as f64; samples],
            exact_degree: 0,
        })
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string(self)?)
    }

    pub fn from_json(s: &str) -> Result<Self> {
        Ok(serde_json::from_str(s)?)
    }
}

/// `∫_S ζ^κ dσ = Π (κ_i − 1)!! / (n(n+2)⋯(n+|κ|−2))` when every `κ_i` is even, else 0.
pub fn sphere_monomial_moment(exponents: &[usize]) -> f64 {
    if exponents.iter().any(|k| k % 2 == 1) {
        return 0.0;
    }
    let n = exponents.len();
    let mut value = 1.0;
    let mut next = n as f64;
    for &k in exponents {
        let mut odd = 1.0;
        while odd < k as f64 {
            value *= odd / next;
            odd += 2.0;
            next += 2.0;
        }
    }
    value
}

/// Number of nodes of the product rule.
pub fn sphere_rule_size(n: usize, exact_degree: usize) -> Option<usize> {
    let azimuth = exact_degree + 1;
    let polar = exact_degree / 2 + 1;
    let mut total = azimuth;
    for _ in 0..n.saturating_sub(2) {
        total = total.checked_mul(polar)?;
    }
    Some(total)
}

/// Product rule in spherical angles, exact for polynomials of degree `≤ exact_degree`.
pub fn build_sphere_rule(n: usize, exact_degree: usize) -> Result<SphereRule> {
    build_sphere_rule_capped(n, exact_degree, DEFAULT_NODE_CAP)
}

pub fn build_sphere_rule_capped(
    n: usize,
    exact_degree: usize,
    node_cap: usize,
) -> Result<SphereRule> {
    if n < 2 {
        return Err(Error::InvalidParameter(format!(
            "sphere rule needs n >= 2, got {n}"
        )));
    }
    let size = sphere_rule_size(n, exact_degree).unwrap_or(usize::MAX);
    if size > node_cap {
        return Err(Error::ResourceLimit(format!(
            "sphere rule with n = {n}, degree {exact_degree} needs {size} nodes (cap {node_cap})"
        )));
    }
    // azimuth: equispaced trapezoid, exact for trigonometric degree <= exact_degree
    let n_az = exact_degree + 1;
    let azimuth: Vec<(f64, f64)> = (0..n_az)
        .map(|j| {
            let phi = 2.0 * PI * j as f64 / n_az as f64;
            (phi.cos(), phi.sin())
        })
        .collect();
    // polar angle j (1-based) carries sin^{n−1−j}θ dθ = (1−t²)^{(n−2−j)/2} dt, t = cos θ
    let n_polar = exact_degree / 2 + 1;
    let mut polar = Vec::with_capacity(n.saturating_sub(2));
    for j in 1..=n.saturating_sub(2) {
        let c = (n as f64 - 2.0 - j as f64) / 2.0;
        let (s, w) = gauss_jacobi_unit(n_polar, c, c)?;
        let total: f64 = w.iter().sum();
        let rule: Vec<(f64, f64)> = s
            .iter()
            .zip(&w)
            .map(|(s, w)| (2.0 * s - 1.0, w / total))
            .collect();
        polar.push(rule);
    }

    let mut nodes = Vec::with_capacity(size);
    let mut weights = Vec::with_capacity(size);
    let mut index = vec![0usize; polar.len()];
    loop {
        // ζ_1 = t_1, ζ_2 = sinθ_1 t_2, …, then (cos φ, sin φ) scaled by the sine product
        let mut coords = Vec::with_capacity(n);
        let mut sine = 1.0;
        let mut w_polar = 1.0;
        for (rule, &i) in polar.iter().zip(&index) {
            let (t, w) = rule[i];
            coords.push(sine * t);
            sine *= (1.0 - t * t).max(0.0).sqrt();
            w_polar *= w;
        }
        for &(c, s) in &azimuth {
            let mut z = coords.clone();
            z.push(sine * c);
            z.push(sine * s);
            nodes.push(z);
            weights.push(w_polar / n_az as f64);
        }
        // odometer over the polar indices
        let mut pos = 0;
        loop {
            if pos == index.len() {
                return Ok(SphereRule {
                    nodes,
                    weights,
                    exact_degree,
                });
            }
            index[pos] += 1;
            if index[pos] < n_polar {
                break;
            }
            index[pos] = 0;
            pos += 1;
        }
    }
}
