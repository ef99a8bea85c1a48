//! Cubature on the sphere and the ball, the sector-averaged inner products and
//! the reproducing integral of the (weighted) Bergman kernel.

mod ball;
pub mod cache;
mod jacobi;
mod sphere;

use num_complex::Complex64;

pub use ball::{build_radial_rule, radial_moment, BallRule, RadialRule};
pub use jacobi::gauss_jacobi_unit;
pub use sphere::{
    build_sphere_rule, build_sphere_rule_capped, sphere_monomial_moment, sphere_rule_size,
    SphereRule, DEFAULT_NODE_CAP,
};

use crate::algebra::{pair_invariants, KernelConfig, RealVector, RotatedPoint};
use crate::error::{Error, Result};
use crate::kernels::weighted_coefficient;
use crate::par::{try_map_indexed, CompensatedSum, Execution};
use crate::polyspace::{evaluate, PolyharmonicPolynomial, RotatedFn};
use crate::zonal::{polyharmonic_from_sequence, zonal_sequence};

/// Default exactness for inner products of degree-`≤ M` functions.
pub fn default_exact_degree(max_degree: usize) -> usize {
    2 * max_degree + 4
}

fn sector_point(k: usize, p: usize, coords: Vec<f64>) -> Result<RotatedPoint> {
    RotatedPoint::in_sector(RealVector(coords), k, p)
}

/// `(1/p) Σ_k ∫_S f(e^{kπi/p}ζ) conj(g(e^{kπi/p}ζ)) dσ(ζ)`.
pub fn inner_product_sphere<F: RotatedFn, G: RotatedFn>(
    cfg: &KernelConfig,
    f: &F,
    g: &G,
    rule: &SphereRule,
) -> Result<Complex64> {
    inner_product_sphere_with(Execution::default(), cfg, f, g, rule)
}

pub fn inner_product_sphere_with<F: RotatedFn, G: RotatedFn>(
    exec: Execution,
    cfg: &KernelConfig,
    f: &F,
    g: &G,
    rule: &SphereRule,
) -> Result<Complex64> {
    if rule.dim() != cfg.n {
        return Err(Error::DimensionMismatch {
            expected: cfg.n,
            got: rule.dim(),
        });
    }
    let nodes = rule.len();
    let terms = try_map_indexed(exec, cfg.p * nodes, |idx| {
        let (k, j) = (idx / nodes, idx % nodes);
        let y = sector_point(k, cfg.p, rule.node(j).to_vec())?;
        Ok(f.eval_rotated(&y)? * g.eval_rotated(&y)?.conj() * rule.weights[j])
    })?;
    let sum: CompensatedSum = terms.into_iter().collect();
    Ok(sum.value() / cfg.p as f64)
}

fn check_ball_rule(n: usize, alpha: f64, beta: f64, rule: &BallRule) -> Result<()> {
    if rule.dim() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            got: rule.dim(),
        });
    }
    if rule.radial.alpha != alpha || rule.radial.beta != beta {
        return Err(Error::InvalidParameter(format!(
            "ball rule built for weights ({}, {}), requested ({alpha}, {beta})",
            rule.radial.alpha, rule.radial.beta
        )));
    }
    Ok(())
}

/// `(1/p) Σ_k ∫_B f(e^{kπi/p}y) conj(g(e^{kπi/p}y)) |y|^α(1−|y|²)^β dy`.
pub fn inner_product_ball<F: RotatedFn, G: RotatedFn>(
    cfg: &KernelConfig,
    alpha: f64,
    beta: f64,
    f: &F,
    g: &G,
    rule: &BallRule,
) -> Result<Complex64> {
    inner_product_ball_with(Execution::default(), cfg, alpha, beta, f, g, rule)
}

pub fn inner_product_ball_with<F: RotatedFn, G: RotatedFn>(
    exec: Execution,
    cfg: &KernelConfig,
    alpha: f64,
    beta: f64,
    f: &F,
    g: &G,
    rule: &BallRule,
) -> Result<Complex64> {
    check_ball_rule(cfg.n, alpha, beta, rule)?;
    let nodes = rule.len();
    let terms = try_map_indexed(exec, cfg.p * nodes, |idx| {
        let (k, j) = (idx / nodes, idx % nodes);
        let (coords, w) = rule.node(j);
        let y = sector_point(k, cfg.p, coords)?;
        Ok(f.eval_rotated(&y)? * g.eval_rotated(&y)?.conj() * w)
    })?;
    let sum: CompensatedSum = terms.into_iter().collect();
    Ok(sum.value() / cfg.p as f64)
}

/// The reproducing integral of `u` against the degree-`≤ M` weighted Bergman kernel
/// `K(y, x) = (1/(nΩ_n)) Σ_{m≤M} c_m Z^p_m(y, x)`, conjugated at each rotated node.
pub fn reproduce(
    cfg: &KernelConfig,
    alpha: f64,
    beta: f64,
    u: &PolyharmonicPolynomial,
    x: &RotatedPoint,
    max_degree: usize,
    rule: &BallRule,
) -> Result<Complex64> {
    reproduce_with(
        Execution::default(),
        cfg,
        alpha,
        beta,
        u,
        x,
        max_degree,
        rule,
    )
}

#[allow(clippy::too_many_arguments)]
pub fn reproduce_with(
    exec: Execution,
    cfg: &KernelConfig,
    alpha: f64,
    beta: f64,
    u: &PolyharmonicPolynomial,
    x: &RotatedPoint,
    max_degree: usize,
    rule: &BallRule,
) -> Result<Complex64> {
    let n = cfg.n;
    if u.n != n || x.dim() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            got: if u.n != n { u.n } else { x.dim() },
        });
    }
    if u.p > cfg.p {
        return Err(Error::InvalidParameter(format!(
            "polynomial of order {} is not reproduced by the order-{} kernel",
            u.p, cfg.p
        )));
    }
    if let Some(d) = u.degree() {
        if d > max_degree {
            return Err(Error::InvalidParameter(format!(
                "polynomial degree {d} exceeds the kernel truncation {max_degree}"
            )));
        }
    }
    check_ball_rule(n, alpha, beta, rule)?;
    if rule.exact_degree() < 2 * max_degree + 2 {
        return Err(Error::InvalidParameter(format!(
            "ball rule exact to degree {} but {} is required",
            rule.exact_degree(),
            2 * max_degree + 2
        )));
    }
    if !(x.radius() < 1.0) {
        return Err(Error::Geometry(format!(
            "|x| = {} is not inside the ball",
            x.radius()
        )));
    }
    let coeffs = (0..=max_degree)
        .map(|m| weighted_coefficient(n, alpha, beta, m))
        .collect::<Result<Vec<f64>>>()?;
    let scale = 1.0 / rule.normalization;
    let nodes = rule.len();
    let terms = try_map_indexed(exec, cfg.p * nodes, |idx| {
        let (k, j) = (idx / nodes, idx % nodes);
        let (coords, w) = rule.node(j);
        let y = sector_point(k, cfg.p, coords)?;
        let harmonic = zonal_sequence(n, max_degree, &y, x)?;
        let q = pair_invariants(&y, x)?.q;
        let mut kernel = CompensatedSum::new();
        for (m, c) in coeffs.iter().enumerate() {
            kernel.add(polyharmonic_from_sequence(cfg.p, m, &harmonic, q) * *c);
        }
        Ok(evaluate(u, &y)? * (kernel.value() * scale).conj() * w)
    })?;
    let sum: CompensatedSum = terms.into_iter().collect();
    Ok(sum.value() / cfg.p as f64)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::unit_ball_volume;
    use crate::polyspace::{homogeneous_part, random_polyharmonic, FnOnRotated};

    fn one() -> FnOnRotated<impl Fn(&RotatedPoint) -> Result<Complex64> + Sync> {
        FnOnRotated(|_: &RotatedPoint| Ok(Complex64::new(1.0, 0.0)))
    }

    #[test]
    fn constants() {
        let cfg = KernelConfig::new(3, 2).unwrap();
        let s = build_sphere_rule(3, 4).unwrap();
        assert!((inner_product_sphere(&cfg, &one(), &one(), &s).unwrap() - 1.0).norm() < 1e-14);
        let b = BallRule::new(3, 0.0, 0.0, 4).unwrap();
        let vol = inner_product_ball(&cfg, 0.0, 0.0, &one(), &one(), &b).unwrap();
        assert!((vol.re - unit_ball_volume(3).unwrap()).abs() < 1e-13 && vol.im.abs() < 1e-15);
    }

    #[test]
    fn reproduce_constant_at_origin() {
        let cfg = KernelConfig::new(3, 1).unwrap();
        let u = PolyharmonicPolynomial::new(
            3,
            1,
            vec![crate::polyspace::ZonalBlock {
                k: 0,
                d: 0,
                pole: vec![1.0, 0.0, 0.0],
                coeff: Complex64::new(1.0, 0.0),
            }],
        )
        .unwrap();
        let rule = BallRule::new(3, 0.0, 0.0, 2).unwrap();
        let v = reproduce(&cfg, 0.0, 0.0, &u, &RotatedPoint::origin(3), 0, &rule).unwrap();
        assert!((v - 1.0).norm() < 1e-13);
    }

    #[test]
    fn reproduce_small_case() {
        let cfg = KernelConfig::new(3, 2).unwrap();
        let u = random_polyharmonic(&cfg, 4, 3, 11).unwrap();
        let rule = BallRule::new(3, 0.0, 0.0, default_exact_degree(4)).unwrap();
        let x = RotatedPoint::in_sector(RealVector(vec![0.2, -0.3, 0.1]), 1, 2).unwrap();
        let got = reproduce(&cfg, 0.0, 0.0, &u, &x, 4, &rule).unwrap();
        let want = evaluate(&u, &x).unwrap();
        assert!(
            (got - want).norm() <= 1e-10 * (1.0 + want.norm()),
            "{got} vs {want}"
        );
    }

    #[test]
    fn distinct_degrees_orthogonal() {
        let cfg = KernelConfig::new(3, 2).unwrap();
        let u = random_polyharmonic(&cfg, 5, 6, 3).unwrap();
        let rule = build_sphere_rule(3, 12).unwrap();
        let f = homogeneous_part(&u, 2);
        let g = homogeneous_part(&u, 3);
        if !f.blocks.is_empty() && !g.blocks.is_empty() {
            assert!(inner_product_sphere(&cfg, &f, &g, &rule).unwrap().norm() < 1e-12);
        }
    }

    #[test]
    fn guards() {
        let cfg = KernelConfig::new(3, 2).unwrap();
        let u = random_polyharmonic(&cfg, 4, 3, 1).unwrap();
        let x = RotatedPoint::origin(3);
        let coarse = BallRule::new(3, 0.0, 0.0, 6).unwrap();
        assert!(reproduce(&cfg, 0.0, 0.0, &u, &x, 4, &coarse).is_err());
        let rule = BallRule::new(3, 0.0, 0.0, 12).unwrap();
        assert!(reproduce(&cfg, 1.0, 0.0, &u, &x, 4, &rule).is_err());
        assert!(reproduce(&cfg, 0.0, 0.0, &u, &x, 2, &rule).is_err() || u.degree() <= Some(2));
    }
}
