//! Polyharmonic polynomials built from blocks `c·|x|^{2k}·Z_d(x, η)`, and the
//! rotated mean-value formula.
//!
//! Blocks over random poles make a rich test family; they are not claimed to
//! be a basis of the polyharmonic polynomials of a given degree.

use std::collections::HashMap;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::algebra::{
    principal_pow, sector_phase, KernelConfig, RealVector, RotatedPoint, SPHERE_TOL,
};
use crate::error::{Error, Result};
use crate::par::{try_map_indexed, CompensatedSum, Execution};
use crate::quadrature::SphereRule;
use crate::ring::{solid_zonal, DoubleDouble, Ring};
use crate::zonal::{random_sphere_vector, zonal_harmonic};

/// A function that can be evaluated at arbitrary points of `C^n`.
pub trait HolomorphicFn: Sync {
    fn dim(&self) -> usize;
    fn eval_complex(&self, z: &[Complex64]) -> Result<Complex64>;
}

/// A function that can be evaluated on the rotated balls.
pub trait RotatedFn: Sync {
    fn eval_rotated(&self, x: &RotatedPoint) -> Result<Complex64>;
}

/// Adapter turning a closure into a [`RotatedFn`].
pub struct FnOnRotated<F>(pub F);

impl<F> RotatedFn for FnOnRotated<F>
where
    F: Fn(&RotatedPoint) -> Result<Complex64> + Sync,
{
    fn eval_rotated(&self, x: &RotatedPoint) -> Result<Complex64> {
        (self.0)(x)
    }
}

/// `coeff · |x|^{2k} · Z_d(x, pole)`, homogeneous of degree `d + 2k`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ZonalBlock {
    pub k: usize,
    pub d: usize,
    pub pole: Vec<f64>,
    #[serde(with = "complex_pair")]
    pub coeff: Complex64,
}

mod complex_pair {
    use num_complex::Complex64;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    pub fn serialize<S: Serializer>(c: &Complex64, s: S) -> Result<S::Ok, S::Error> {
        [c.re, c.im].serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Complex64, D::Error> {
        let [re, im] = <[f64; 2]>::deserialize(d)?;
        Ok(Complex64::new(re, im))
    }
}

impl ZonalBlock {
    pub fn degree(&self) -> usize {
        self.d + 2 * self.k
    }

    fn pole_point(&self) -> RotatedPoint {
        RotatedPoint {
            phase: 0.0,
            coords: RealVector(self.pole.clone()),
        }
    }

    /// Value at a rotated point by the phase rule.
    fn eval_rotated(&self, x: &RotatedPoint) -> Result<Complex64> {
        let n = self.pole.len();
        let z = zonal_harmonic(n, self.d, x, &self.pole_point())?;
        let r2 = x.coords.dot(&x.coords);
        let radial = Complex64::from_polar(r2.powi(self.k as i32), 2.0 * self.k as f64 * x.phase);
        Ok(self.coeff * radial * z)
    }

    /// Real-valued block profile `|x|^{2k} Z_d(x, η)` (without `coeff`) in any ring.
    fn profile<T: Ring>(&self, z: &[T]) -> T {
        let mut dot = T::from_f64(0.0);
        let mut sq = T::from_f64(0.0);
        for (zi, &ei) in z.iter().zip(&self.pole) {
            dot = dot + zi.scale(ei);
            sq = sq + *zi * *zi;
        }
        let mut radial = T::from_f64(1.0);
        for _ in 0..self.k {
            radial = radial * sq;
        }
        radial * solid_zonal(self.pole.len(), self.d, dot, sq)
    }
}

/// A finite sum of zonal blocks; every block satisfies `k < p`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PolyharmonicPolynomial {
    pub n: usize,
    pub p: usize,
    pub blocks: Vec<ZonalBlock>,
}

impl PolyharmonicPolynomial {
    pub fn new(n: usize, p: usize, blocks: Vec<ZonalBlock>) -> Result<Self> {
        if n < 2 || p < 1 {
            return Err(Error::InvalidParameter(format!(
                "invalid (n, p) = ({n}, {p})"
            )));
        }
        for b in &blocks {
            if b.k >= p {
                return Err(Error::InvalidParameter(format!(
                    "block radial index {} >= p = {p}",
                    b.k
                )));
            }
            if b.pole.len() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    got: b.pole.len(),
                });
            }
            let r = b.pole.iter().map(|c| c * c).sum::<f64>().sqrt();
            if (r - 1.0).abs() > SPHERE_TOL {
                return Err(Error::Geometry(format!("block pole has radius {r}")));
            }
        }
        Ok(PolyharmonicPolynomial { n, p, blocks })
    }

    pub fn empty(n: usize, p: usize) -> Self {
        PolyharmonicPolynomial {
            n,
            p,
            blocks: vec![],
        }
    }

    /// Total degree, `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.blocks.iter().map(ZonalBlock::degree).max()
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degrees = self.blocks.iter().map(ZonalBlock::degree);
        match degrees.next() {
            None => true,
            Some(d0) => degrees.all(|d| d == d0),
        }
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string(self)?)
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let raw: PolyharmonicPolynomial = serde_json::from_str(s)?;
        PolyharmonicPolynomial::new(raw.n, raw.p, raw.blocks)
    }
}

/// Seeded random polynomial of total degree at most `max_total_degree`.
pub fn random_polyharmonic(
    cfg: &KernelConfig,
    max_total_degree: usize,
    blocks: usize,
    seed: u64,
) -> Result<PolyharmonicPolynomial> {
    if blocks < 1 {
        return Err(Error::InvalidParameter("need at least one block".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let k_max = (cfg.p - 1).min(max_total_degree / 2);
    let list = (0..blocks)
        .map(|_| {
            let k = rng.random_range(0..=k_max);
            let d = rng.random_range(0..=max_total_degree - 2 * k);
            let pole = random_sphere_vector(&mut rng, cfg.n).0;
            let coeff = Complex64::new(rng.random::<f64>(), rng.random::<f64>());
            ZonalBlock { k, d, pole, coeff }
        })
        .collect();
    PolyharmonicPolynomial::new(cfg.n, cfg.p, list)
}

/// Value at a rotated point; `|x|^{2k}` enters as the complex invariant `(e^{2iφ}|a|²)^k`.
pub fn evaluate(q: &PolyharmonicPolynomial, x: &RotatedPoint) -> Result<Complex64> {
    if x.dim() != q.n {
        return Err(Error::DimensionMismatch {
            expected: q.n,
            got: x.dim(),
        });
    }
    let mut acc = CompensatedSum::new();
    for b in &q.blocks {
        acc.add(b.eval_rotated(x)?);
    }
    Ok(acc.value())
}

/// Blocks of total degree exactly `m`.
pub fn homogeneous_part(q: &PolyharmonicPolynomial, m: usize) -> PolyharmonicPolynomial {
    PolyharmonicPolynomial {
        n: q.n,
        p: q.p,
        blocks: q
            .blocks
            .iter()
            .filter(|b| b.degree() == m)
            .cloned()
            .collect(),
    }
}

impl RotatedFn for PolyharmonicPolynomial {
    fn eval_rotated(&self, x: &RotatedPoint) -> Result<Complex64> {
        evaluate(self, x)
    }
}

impl HolomorphicFn for PolyharmonicPolynomial {
    fn dim(&self) -> usize {
        self.n
    }

    fn eval_complex(&self, z: &[Complex64]) -> Result<Complex64> {
        if z.len() != self.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                got: z.len(),
            });
        }
        let mut acc = CompensatedSum::new();
        for b in &self.blocks {
            acc.add(b.coeff * b.profile(z));
        }
        Ok(acc.value())
    }
}

/// `|Δ^p q(x)|` by `p`-fold application of the `(2n+1)`-point Laplacian stencil.
pub fn laplacian_power_residual(
    q: &PolyharmonicPolynomial,
    x: &RotatedPoint,
    h: f64,
) -> Result<f64> {
    laplacian_power_residual_order(q, q.p, x, h)
}

/// `|Δ^order q(x)|` by finite differences.
///
/// Stencil values are formed in double-double arithmetic: the `h^{-2·order}`
/// amplification would otherwise swamp the truncation error for `order ≥ 3`.
pub fn laplacian_power_residual_order(
    q: &PolyharmonicPolynomial,
    order: usize,
    x: &RotatedPoint,
    h: f64,
) -> Result<f64> {
    let n = q.n;
    if x.dim() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            got: x.dim(),
        });
    }
    if n > 4 {
        return Err(Error::InvalidParameter(format!(
            "Laplacian residual limited to n <= 4, got {n}"
        )));
    }
    if !(1e-3..=1e-2).contains(&h) {
        return Err(Error::InvalidParameter(format!(
            "step h = {h} must lie in [1e-3, 1e-2]"
        )));
    }
    if !x.is_real() {
        return Err(Error::InvalidParameter(
            "Laplacian residual needs a real point".into(),
        ));
    }
    if x.radius() + 2.0 * order as f64 * h * (n as f64).sqrt() >= 1.0 {
        return Err(Error::StencilOutOfDomain(format!(
            "radius {} with {order} stencil layers of step {h}",
            x.radius()
        )));
    }
    let base = x.coords.as_slice();
    let inv_h2 = 1.0 / (h * h);
    let mut acc = Complex64::new(0.0, 0.0);
    for block in &q.blocks {
        let mut memo: HashMap<(usize, Vec<i32>), DoubleDouble> = HashMap::new();
        let value = stencil_apply(block, base, h, inv_h2, order, vec![0; n], &mut memo);
        acc += block.coeff * value.to_f64();
    }
    Ok(acc.norm())
}

fn stencil_apply(
    block: &ZonalBlock,
    base: &[f64],
    h: f64,
    inv_h2: f64,
    order: usize,
    offset: Vec<i32>,
    memo: &mut HashMap<(usize, Vec<i32>), DoubleDouble>,
) -> DoubleDouble {
    if let Some(v) = memo.get(&(order, offset.clone())) {
        return *v;
    }
    let value = if order == 0 {
        let z: Vec<DoubleDouble> = base
            .iter()
            .zip(&offset)
            .map(|(&b, &o)| DoubleDouble::new(b) + DoubleDouble::product(o as f64, h))
            .collect();
        block.profile(&z)
    } else {
        let center = stencil_apply(block, base, h, inv_h2, order - 1, offset.clone(), memo);
        let mut sum = DoubleDouble::new(0.0);
        for i in 0..offset.len() {
            // fourth-order [-1, 16, -30, 16, -1] / 12h²; integer weights keep the cancellation exact
            for (step, weight) in [(-2, -1.0), (-1, 16.0), (1, 16.0), (2, -1.0)] {
                let mut o = offset.clone();
                o[i] += step;
                sum = sum + stencil_apply(block, base, h, inv_h2, order - 1, o, memo).scale(weight);
            }
            sum = sum - center.scale(30.0);
        }
        sum.scale(inv_h2 / 12.0)
    };
    memo.insert((order, offset), value);
    value
}

/// Right-hand side of the rotated mean-value formula on `B(a, r)`:
/// `(1/p) Σ_k ∫_S (r^{2p} − |x−a|^{2p}) / (r^{2p−n} |e^{−kπi/p}(x−a) − rζ|^n) · u(a + r e^{kπi/p}ζ) dσ(ζ)`.
pub fn mean_value_eval<U: HolomorphicFn>(
    cfg: &KernelConfig,
    u: &U,
    a: &RealVector,
    r: f64,
    x: &RotatedPoint,
    rule: &SphereRule,
) -> Result<Complex64> {
    mean_value_eval_with(Execution::default(), cfg, u, a, r, x, rule)
}

pub fn mean_value_eval_with<U: HolomorphicFn>(
    exec: Execution,
    cfg: &KernelConfig,
    u: &U,
    a: &RealVector,
    r: f64,
    x: &RotatedPoint,
    rule: &SphereRule,
) -> Result<Complex64> {
    let n = cfg.n;
    for d in [a.dim(), x.dim(), u.dim(), rule.dim()] {
        if d != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                got: d,
            });
        }
    }
    if !(r > 0.0) || a.norm() + r >= 1.0 {
        return Err(Error::Geometry(format!(
            "closed ball B(a, {r}) with |a| = {} is not inside the unit ball",
            a.norm()
        )));
    }
    if !x.is_real() {
        return Err(Error::Geometry("mean-value point must be real".into()));
    }
    let diff: Vec<f64> = x
        .coords
        .0
        .iter()
        .zip(&a.0)
        .map(|(xi, ai)| xi - ai)
        .collect();
    let dist2: f64 = diff.iter().map(|d| d * d).sum();
    if dist2.sqrt() >= r {
        return Err(Error::Geometry(format!(
            "|x − a| = {} is not below r = {r}",
            dist2.sqrt()
        )));
    }
    let p = cfg.p as i32;
    let numerator = r.powi(2 * p) - dist2.powi(p);
    let radial = r.powi(2 * p - n as i32);
    let nodes = rule.len();
    let total = cfg.p * nodes;
    let terms = try_map_indexed(exec, total, |idx| {
        let (k, j) = (idx / nodes, idx % nodes);
        let theta = sector_phase(k, cfg.p);
        let back = Complex64::from_polar(1.0, -theta);
        let fwd = Complex64::from_polar(r, theta);
        let zeta = rule.node(j);
        let mut sq = Complex64::new(0.0, 0.0);
        let mut point = Vec::with_capacity(n);
        for i in 0..n {
            let v = back * diff[i] - r * zeta[i];
            sq += v * v;
            point.push(Complex64::new(a.0[i], 0.0) + fwd * zeta[i]);
        }
        let den = principal_pow(sq, n as f64 / 2.0, cfg.eps_branch)? * radial;
        if den.norm() <= cfg.eps_sing {
            return Err(Error::NearSingular {
                modulus: den.norm(),
            });
        }
        Ok(u.eval_complex(&point)? * (numerator * rule.weights[j]) / den)
    })?;
    let sum: CompensatedSum = terms.into_iter().collect();
    Ok(sum.value() / cfg.p as f64)
}
