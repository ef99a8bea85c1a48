//! Seeded random points and polynomials for the sweeps.

use num_complex::Complex64;
use rand::Rng;

use crate::algebra::{KernelConfig, RealVector, RotatedPoint};
use crate::error::{Error, Result};
use crate::polyspace::{PolyharmonicPolynomial, ZonalBlock};
use crate::zonal::random_sphere_vector;

/// Point `e^{kπi/p} a` with random sector `k`, direction uniform and `|a|` uniform in `[0, r_max]`.
pub fn random_sector_point<R: Rng>(
    rng: &mut R,
    n: usize,
    p: usize,
    r_max: f64,
) -> Result<RotatedPoint> {
    let k = rng.random_range(0..p);
    let r = r_max * rng.random::<f64>();
    let dir = random_sphere_vector(rng, n);
    RotatedPoint::in_sector(RealVector(dir.0.iter().map(|c| r * c).collect()), k, p)
}

/// Sector point of unit real radius.
pub fn random_sector_sphere_point<R: Rng>(rng: &mut R, n: usize, p: usize) -> Result<RotatedPoint> {
    let k = rng.random_range(0..p);
    RotatedPoint::in_sector(random_sphere_vector(rng, n), k, p)
}

/// Real point with `|a|` uniform in `[0, r_max]`.
pub fn random_real_point<R: Rng>(rng: &mut R, n: usize, r_max: f64) -> Result<RotatedPoint> {
    random_sector_point(rng, n, 1, r_max)
}

/// Random element of `H^p_m`: blocks `|x|^{2k} Z_{m−2k}(x, η)` with `k < p`.
pub fn random_homogeneous<R: Rng>(
    rng: &mut R,
    cfg: &KernelConfig,
    m: usize,
    blocks: usize,
) -> Result<PolyharmonicPolynomial> {
    if blocks < 1 {
        return Err(Error::InvalidParameter("need at least one block".into()));
    }
    let k_max = (cfg.p - 1).min(m / 2);
    let list = (0..blocks)
        .map(|_| {
            let k = rng.random_range(0..=k_max);
            ZonalBlock {
                k,
                d: m - 2 * k,
                pole: random_sphere_vector(rng, cfg.n).0,
                coeff: Complex64::new(rng.random::<f64>() - 0.5, rng.random::<f64>() - 0.5),
            }
        })
        .collect();
    PolyharmonicPolynomial::new(cfg.n, cfg.p, list)
}
