//! Verification suites: each sweeps seeded random cases, compares two independent
//! routes to the same quantity and reports the worst error against a tolerance.

use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::algebra::{KernelConfig, RealVector, RotatedPoint};
use crate::error::{Error, Result};
use crate::kernels::{
    bergman, bergman_decomposed, bergman_series, derivative_form_check, poisson, poisson_series,
    truncation_degree_with, weighted_bergman_decomposed, weighted_bergman_series,
    weighted_coefficient, SeriesWeight, Truncation,
};
use crate::par::{try_map_indexed, Execution};
use crate::polyspace::{
    evaluate, mean_value_eval_with, random_polyharmonic, FnOnRotated, PolyharmonicPolynomial,
};
use crate::quadrature::cache::RuleCache;
use crate::quadrature::{
    build_radial_rule, default_exact_degree, inner_product_ball_with, inner_product_sphere_with,
    radial_moment, reproduce_with, sphere_monomial_moment, SphereRule,
};
use crate::sample::{
    random_homogeneous, random_real_point, random_sector_point, random_sector_sphere_point,
};
use crate::zonal::{calibrated_growth_constant, zonal_growth_ratio, zonal_polyharmonic};

pub const SUITES: [&str; 11] = [
    "poisson_series",
    "bergman_series",
    "decomposition",
    "weighted",
    "derivative_form",
    "reproduce",
    "zonal_reproduce",
    "orthogonality",
    "mean_value",
    "growth",
    "quadrature",
];

/// Sweep controls; `n`/`p` restrict the sweep to a single value when set.
#[derive(Debug, Clone)]
pub struct SuiteOptions {
    pub n: Option<usize>,
    pub p: Option<usize>,
    pub seed: u64,
    pub pairs: usize,
    pub polynomials: usize,
    pub sample_radius: f64,
    pub exec: Execution,
    pub cache: RuleCache,
}

impl Default for SuiteOptions {
    fn default() -> Self {
        SuiteOptions {
            n: None,
            p: None,
            seed: 42,
            pairs: 200,
            polynomials: 50,
            sample_radius: 0.7,
            exec: Execution::default(),
            cache: RuleCache::from_env(),
        }
    }
}

impl SuiteOptions {
    fn ns(&self, default: &[usize]) -> Vec<usize> {
        self.n.map_or_else(|| default.to_vec(), |n| vec![n])
    }

    fn ps(&self, default: &[usize]) -> Vec<usize> {
        self.p.map_or_else(|| default.to_vec(), |p| vec![p])
    }

    /// Independent stream per suite and parameter tuple.
    fn rng(&self, suite: usize, tag: u64) -> ChaCha8Rng {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        rng.set_stream((suite as u64) << 32 | tag);
        rng
    }
}

/// One named sub-check of a suite.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    /// `abs`, `rel`, `scaled` (`|Δ|/(1+|ref|)`) or `ratio`.
    pub measure: String,
    pub value: f64,
    pub tolerance: f64,
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub suite: String,
    pub cases: usize,
    pub max_abs_err: f64,
    pub max_rel_err: f64,
    pub tolerance: f64,
    pub pass: bool,
    pub checks: Vec<Check>,
}

/// NaN-propagating maximum.
fn worst(a: f64, b: f64) -> f64 {
    if a.is_nan() || b.is_nan() {
        f64::NAN
    } else {
        a.max(b)
    }
}

/// Error pair of one case.
#[derive(Debug, Clone, Copy)]
struct CaseErr {
    abs: f64,
    rel: f64,
}

impl CaseErr {
    fn between(got: Complex64, want: Complex64) -> Self {
        let abs = (got - want).norm();
        CaseErr {
            abs,
            rel: abs / want.norm(),
        }
    }

    fn scaled(got: Complex64, want: Complex64) -> Self {
        let abs = (got - want).norm();
        CaseErr {
            abs,
            rel: abs / (1.0 + want.norm()),
        }
    }
}

struct Builder {
    suite: &'static str,
    cases: usize,
    abs: f64,
    rel: f64,
    checks: Vec<Check>,
}

impl Builder {
    fn new(suite: &'static str) -> Self {
        Builder {
            suite,
            cases: 0,
            abs: 0.0,
            rel: 0.0,
            checks: Vec::new(),
        }
    }

    fn absorb(&mut self, errs: &[CaseErr]) -> (f64, f64) {
        let (mut abs, mut rel) = (0.0, 0.0);
        for e in errs {
            abs = worst(abs, e.abs);
            rel = worst(rel, e.rel);
        }
        self.cases += errs.len();
        self.abs = worst(self.abs, abs);
        self.rel = worst(self.rel, rel);
        (abs, rel)
    }

    fn check(&mut self, name: impl Into<String>, measure: &str, value: f64, tolerance: f64) {
        self.checks.push(Check {
            name: name.into(),
            measure: measure.into(),
            value,
            tolerance,
            pass: value <= tolerance,
        });
    }

    fn finish(self, tolerance: f64) -> SuiteReport {
        let pass = !self.checks.is_empty() && self.checks.iter().all(|c| c.pass);
        SuiteReport {
            suite: self.suite.into(),
            cases: self.cases,
            max_abs_err: self.abs,
            max_rel_err: self.rel,
            tolerance,
            pass,
            checks: self.checks,
        }
    }
}

pub fn run_suite(name: &str, opts: &SuiteOptions) -> Result<SuiteReport> {
    match name {
        "poisson_series" => poisson_series_suite(opts),
        "bergman_series" => bergman_series_suite(opts),
        "decomposition" => decomposition_suite(opts),
        "weighted" => weighted_suite(opts),
        "derivative_form" => derivative_form_suite(opts),
        "reproduce" => reproduce_suite(opts),
        "zonal_reproduce" => zonal_reproduce_suite(opts),
        "orthogonality" => orthogonality_suite(opts),
        "mean_value" => mean_value_suite(opts),
        "growth" => growth_suite(opts),
        "quadrature" => quadrature_suite(opts),
        other => Err(Error::InvalidParameter(format!(
            "unknown suite '{other}'; known suites: {}",
            SUITES.join(", ")
        ))),
    }
}

const ALL_N: [usize; 4] = [2, 3, 4, 5];
const ALL_P: [usize; 3] = [1, 2, 3];

fn random_pairs(
    opts: &SuiteOptions,
    suite: usize,
    n: usize,
    p: usize,
) -> Result<Vec<(RotatedPoint, RotatedPoint)>> {
    let mut rng = opts.rng(suite, (n * 16 + p) as u64);
    (0..opts.pairs)
        .map(|_| {
            Ok((
                random_sector_point(&mut rng, n, p, opts.sample_radius)?,
                random_sector_point(&mut rng, n, p, opts.sample_radius)?,
            ))
        })
        .collect()
}

/// Series against closed form over the pair sweep.
fn series_suite(
    opts: &SuiteOptions,
    suite: &'static str,
    index: usize,
    weight: SeriesWeight,
    trunc_tol: f64,
    tolerance: f64,
) -> Result<SuiteReport> {
    let mut report = Builder::new(suite);
    for n in opts.ns(&ALL_N) {
        for p in opts.ps(&ALL_P) {
            let cfg = KernelConfig::new(n, p)?;
            let c = calibrated_growth_constant(&cfg)?;
            let pairs = random_pairs(opts, index, n, p)?;
            let errs = try_map_indexed(opts.exec, pairs.len(), |i| {
                let (x, y) = &pairs[i];
                let m =
                    truncation_degree_with(&cfg, x.radius() * y.radius(), trunc_tol, weight, c)?;
                let trunc = Truncation::fixed(m);
                Ok(match weight {
                    SeriesWeight::Poisson => {
                        CaseErr::between(poisson_series(&cfg, x, y, &trunc)?, poisson(&cfg, x, y)?)
                    }
                    _ => {
                        CaseErr::between(bergman_series(&cfg, x, y, &trunc)?, bergman(&cfg, x, y)?)
                    }
                })
            })?;
            let (abs, _) = report.absorb(&errs);
            report.check(format!("n={n} p={p}"), "abs", abs, tolerance);
        }
    }
    Ok(report.finish(tolerance))
}

fn poisson_series_suite(opts: &SuiteOptions) -> Result<SuiteReport> {
    series_suite(
        opts,
        "poisson_series",
        0,
        SeriesWeight::Poisson,
        1e-11,
        1e-10,
    )
}

fn bergman_series_suite(opts: &SuiteOptions) -> Result<SuiteReport> {
    series_suite(
        opts,
        "bergman_series",
        1,
        SeriesWeight::Bergman,
        1e-11,
        1e-9,
    )
}

fn decomposition_suite(opts: &SuiteOptions) -> Result<SuiteReport> {
    let tolerance = 1e-12;
    let mut report = Builder::new("decomposition");
    for n in opts.ns(&ALL_N) {
        for p in opts.ps(&ALL_P) {
            let cfg = KernelConfig::new(n, p)?;
            let pairs = random_pairs(opts, 2, n, p)?;
            let errs = try_map_indexed(opts.exec, pairs.len(), |i| {
                let (x, y) = &pairs[i];
                Ok(CaseErr::between(
                    bergman_decomposed(&cfg, x, y)?,
                    bergman(&cfg, x, y)?,
                ))
            })?;
            let (_, rel) = report.absorb(&errs);
            report.check(format!("n={n} p={p}"), "rel", rel, tolerance);
        }
    }
    Ok(report.finish(tolerance))
}

pub const WEIGHT_PAIRS: [(f64, f64); 3] = [(0.0, 0.0), (1.0, 0.5), (-0.5, 2.0)];

fn weighted_suite(opts: &SuiteOptions) -> Result<SuiteReport> {
    let tolerance = 1e-9;
    let termwise_tol = 1e-12;
    let trunc_tol = 1e-11;
    let mut report = Builder::new("weighted");
    for n in opts.ns(&ALL_N) {
        // c_m(n, 0, 0) = n + 2m
        let mut coeff_err: f64 = 0.0;
        for m in 0..=200 {
            let exact = (n + 2 * m) as f64;
            coeff_err = worst(
                coeff_err,
                (weighted_coefficient(n, 0.0, 0.0, m)? - exact).abs() / exact,
            );
        }
        report.check(
            format!("c_m(n={n},0,0) = n+2m"),
            "rel",
            coeff_err,
            termwise_tol,
        );
        for p in opts.ps(&ALL_P) {
            let pairs = random_pairs(opts, 3, n, p)?;
            for &(alpha, beta) in &WEIGHT_PAIRS {
                let cfg = KernelConfig::new(n, p)?.with_weights(alpha, beta)?;
                // the decomposition sums harmonic factors with weights α + 4k
                let factors = (0..p)
                    .map(|k| {
                        let f = KernelConfig {
                            p: 1,
                            alpha: alpha + 4.0 * k as f64,
                            ..cfg
                        }
                        .validated()?;
                        Ok((f, calibrated_growth_constant(&f)?))
                    })
                    .collect::<Result<Vec<_>>>()?;
                let c = calibrated_growth_constant(&cfg)?;
                let errs = try_map_indexed(opts.exec, pairs.len(), |i| {
                    let (x, y) = &pairs[i];
                    let r = x.radius() * y.radius();
                    let mut m =
                        truncation_degree_with(&cfg, r, trunc_tol, SeriesWeight::Weighted, c)?;
                    for (f, cf) in &factors {
                        m = m.max(truncation_degree_with(
                            f,
                            r,
                            trunc_tol,
                            SeriesWeight::Weighted,
                            *cf,
                        )?);
                    }
                    let trunc = Truncation::fixed(m);
                    Ok(CaseErr::between(
                        weighted_bergman_series(&cfg, x, y, &trunc)?,
                        weighted_bergman_decomposed(&cfg, x, y, &trunc)?,
                    ))
                })?;
                let (abs, _) = report.absorb(&errs);
                report.check(
                    format!("series vs decomposition n={n} p={p} α={alpha} β={beta}"),
                    "abs",
                    abs,
                    tolerance,
                );
            }
            // R_{p,0,0} against R_p at a common truncation
            let cfg = KernelConfig::new(n, p)?;
            let errs = try_map_indexed(opts.exec, pairs.len(), |i| {
                let (x, y) = &pairs[i];
                let trunc = Truncation::fixed(60);
                Ok(CaseErr::between(
                    weighted_bergman_series(&cfg, x, y, &trunc)?,
                    bergman_series(&cfg, x, y, &trunc)?,
                ))
            })?;
            let rel = errs.iter().fold(0.0, |a, e| worst(a, e.rel));
            report.check(
                format!("R_(p,0,0) = R_p n={n} p={p}"),
                "rel",
                rel,
                termwise_tol,
            );
        }
    }
    Ok(report.finish(tolerance))
}

pub const DERIVATIVE_STEP: f64 = 1e-3;

fn derivative_form_suite(opts: &SuiteOptions) -> Result<SuiteReport> {
    let tolerance = 1e-5;
    let mut report = Builder::new("derivative_form");
    for n in opts.ns(&ALL_N) {
        for p in opts.ps(&ALL_P) {
            let pairs = random_pairs(opts, 4, n, p)?;
            for beta in [0u32, 1] {
                for alpha in [0.0, 1.0] {
                    let cfg = KernelConfig::new(n, p)?.with_weights(alpha, beta as f64)?;
                    let c = calibrated_growth_constant(&cfg)?;
                    let errs = try_map_indexed(opts.exec, pairs.len(), |i| {
                        let (x, y) = &pairs[i];
                        let r = x.radius() * y.radius();
                        let m = truncation_degree_with(&cfg, r, 1e-13, SeriesWeight::Weighted, c)?;
                        let series = weighted_bergman_series(&cfg, x, y, &Truncation::fixed(m))?;
                        let fd = derivative_form_check(&cfg, alpha, beta, x, y, DERIVATIVE_STEP)?;
                        // finite-difference roundoff scales with the stencil values, not the result
                        Ok(CaseErr::scaled(fd, series))
                    })?;
                    let (_, scaled) = report.absorb(&errs);
                    report.check(
                        format!("n={n} p={p} α={alpha} β={beta}"),
                        "scaled",
                        scaled,
                        tolerance,
                    );
                }
            }
        }
    }
    Ok(report.finish(tolerance))
}

pub const REPRODUCE_DEGREE: usize = 6;
pub const POLY_BLOCKS: usize = 4;

fn reproduce_suite(opts: &SuiteOptions) -> Result<SuiteReport> {
    let tolerance = 1e-8;
    let mut report = Builder::new("reproduce");
    for n in opts.ns(&[2, 3]) {
        for (wi, &(alpha, beta)) in [(0.0, 0.0), (1.0, 0.5)].iter().enumerate() {
            let rule = opts
                .cache
                .ball(n, alpha, beta, default_exact_degree(REPRODUCE_DEGREE))?;
            for p in opts.ps(&ALL_P) {
                let cfg = KernelConfig::new(n, p)?.with_weights(alpha, beta)?;
                let mut rng = opts.rng(5, (n * 16 + p) as u64 * 4 + wi as u64);
                let cases = (0..opts.polynomials)
                    .map(|i| {
                        let seed = opts.seed ^ ((n * 1000 + p * 100 + wi * 10000 + i) as u64) << 20;
                        let u = random_polyharmonic(&cfg, REPRODUCE_DEGREE, POLY_BLOCKS, seed)?;
                        Ok((u, random_sector_point(&mut rng, n, p, opts.sample_radius)?))
                    })
                    .collect::<Result<Vec<_>>>()?;
                let errs = try_map_indexed(opts.exec, cases.len(), |i| {
                    let (u, x) = &cases[i];
                    let got = reproduce_with(
                        Execution::Sequential,
                        &cfg,
                        alpha,
                        beta,
                        u,
                        x,
                        REPRODUCE_DEGREE,
                        &rule,
                    )?;
                    Ok(CaseErr::scaled(got, evaluate(u, x)?))
                })?;
                let (_, scaled) = report.absorb(&errs);
                report.check(
                    format!("n={n} p={p} α={alpha} β={beta}"),
                    "scaled",
                    scaled,
                    tolerance,
                );
            }
        }
    }
    Ok(report.finish(tolerance))
}

pub const HOMOGENEOUS_MAX_DEGREE: usize = 8;

fn homogeneous_family(
    opts: &SuiteOptions,
    suite: usize,
    cfg: &KernelConfig,
    per_degree: usize,
) -> Result<Vec<Vec<PolyharmonicPolynomial>>> {
    let mut rng = opts.rng(suite, (cfg.n * 16 + cfg.p) as u64);
    (0..=HOMOGENEOUS_MAX_DEGREE)
        .map(|m| {
            (0..per_degree)
                .map(|_| random_homogeneous(&mut rng, cfg, m, 3))
                .collect()
        })
        .collect()
}

fn zonal_reproduce_suite(opts: &SuiteOptions) -> Result<SuiteReport> {
    let tolerance = 1e-8;
    let mut report = Builder::new("zonal_reproduce");
    for n in opts.ns(&[2, 3]) {
        let rule = opts
            .cache
            .sphere(n, default_exact_degree(HOMOGENEOUS_MAX_DEGREE))?;
        for p in opts.ps(&ALL_P) {
            let cfg = KernelConfig::new(n, p)?;
            let family = homogeneous_family(opts, 6, &cfg, 4)?;
            let mut rng = opts.rng(6, 1 << 16 | (n * 16 + p) as u64);
            let mut cases = Vec::new();
            for (m, polys) in family.into_iter().enumerate() {
                for u in polys {
                    cases.push((m, u, random_sector_sphere_point(&mut rng, n, p)?));
                }
            }
            let errs = try_map_indexed(opts.exec, cases.len(), |i| {
                let (m, u, eta) = &cases[i];
                let kernel = FnOnRotated(|z: &RotatedPoint| zonal_polyharmonic(&cfg, *m, z, eta));
                let got =
                    inner_product_sphere_with(Execution::Sequential, &cfg, u, &kernel, &rule)?;
                Ok(CaseErr::scaled(got, evaluate(u, eta)?))
            })?;
            let (_, scaled) = report.absorb(&errs);
            report.check(format!("n={n} p={p}"), "scaled", scaled, tolerance);
        }
    }
    Ok(report.finish(tolerance))
}

fn orthogonality_suite(opts: &SuiteOptions) -> Result<SuiteReport> {
    let tolerance = 1e-9;
    let mut report = Builder::new("orthogonality");
    for n in opts.ns(&[2, 3]) {
        let degree = default_exact_degree(HOMOGENEOUS_MAX_DEGREE);
        let sphere = opts.cache.sphere(n, degree)?;
        let ball = opts.cache.ball(n, 0.0, 0.0, degree)?;
        for p in opts.ps(&ALL_P) {
            let cfg = KernelConfig::new(n, p)?;
            let family = homogeneous_family(opts, 7, &cfg, 1)?;
            let polys: Vec<&PolyharmonicPolynomial> = family.iter().map(|v| &v[0]).collect();
            let mut index = Vec::new();
            for m in 0..polys.len() {
                for l in m + 1..polys.len() {
                    index.push((m, l));
                }
            }
            let inner = |f: &PolyharmonicPolynomial, g: &PolyharmonicPolynomial, on_ball: bool| {
                if on_ball {
                    inner_product_ball_with(Execution::Sequential, &cfg, 0.0, 0.0, f, g, &ball)
                } else {
                    inner_product_sphere_with(Execution::Sequential, &cfg, f, g, &sphere)
                }
            };
            for on_ball in [false, true] {
                let norms = try_map_indexed(opts.exec, polys.len(), |i| {
                    Ok(inner(polys[i], polys[i], on_ball)?.re)
                })?;
                let errs = try_map_indexed(opts.exec, index.len(), |i| {
                    let (m, l) = index[i];
                    let abs = inner(polys[m], polys[l], on_ball)?.norm();
                    Ok(CaseErr {
                        abs,
                        rel: abs / (norms[m] * norms[l]).sqrt(),
                    })
                })?;
                let (_, rel) = report.absorb(&errs);
                let domain = if on_ball { "ball" } else { "sphere" };
                report.check(format!("{domain} n={n} p={p}"), "rel", rel, tolerance);
                let positive = norms.iter().all(|v| *v > 0.0);
                report.check(
                    format!("{domain} norms positive n={n} p={p}"),
                    "abs",
                    if positive { 0.0 } else { 1.0 },
                    0.0,
                );
            }
        }
    }
    Ok(report.finish(tolerance))
}

pub const MEAN_VALUE_RADIUS: f64 = 0.6;
pub const MEAN_VALUE_SPHERE_DEGREE: usize = 60;

fn mean_value_suite(opts: &SuiteOptions) -> Result<SuiteReport> {
    let tolerance = 1e-8;
    let mut report = Builder::new("mean_value");
    for n in opts.ns(&[3]) {
        let rule = opts.cache.sphere(n, MEAN_VALUE_SPHERE_DEGREE)?;
        let center = RealVector::zeros(n);
        for p in opts.ps(&ALL_P) {
            let cfg = KernelConfig::new(n, p)?;
            let mut rng = opts.rng(8, (n * 16 + p) as u64);
            let cases = (0..opts.polynomials)
                .map(|i| {
                    let seed = opts.seed ^ ((n * 1000 + p * 100 + i) as u64) << 24;
                    let u = random_polyharmonic(&cfg, 6, POLY_BLOCKS, seed)?;
                    Ok((u, random_real_point(&mut rng, n, MEAN_VALUE_RADIUS / 2.0)?))
                })
                .collect::<Result<Vec<_>>>()?;
            let errs = try_map_indexed(opts.exec, cases.len(), |i| {
                let (u, x) = &cases[i];
                let got = mean_value_eval_with(
                    Execution::Sequential,
                    &cfg,
                    u,
                    &center,
                    MEAN_VALUE_RADIUS,
                    x,
                    &rule,
                )?;
                Ok(CaseErr::scaled(got, evaluate(u, x)?))
            })?;
            let (_, scaled) = report.absorb(&errs);
            report.check(format!("formula n={n} p={p}"), "scaled", scaled, tolerance);

            // |u(x)|² / ‖u‖² on |x| ≤ 1/2: bounded, no growth beyond 2× from degree 4 to 8
            let ball = opts.cache.ball(n, 0.0, 0.0, default_exact_degree(8))?;
            let mut maxima = Vec::new();
            for degree in [4usize, 8] {
                let cases = (0..opts.polynomials)
                    .map(|i| {
                        let seed =
                            opts.seed ^ ((n * 1000 + p * 100 + degree * 10 + i) as u64) << 28;
                        let u = random_polyharmonic(&cfg, degree, POLY_BLOCKS, seed)?;
                        Ok((u, random_real_point(&mut rng, n, 0.5)?))
                    })
                    .collect::<Result<Vec<_>>>()?;
                let ratios = try_map_indexed(opts.exec, cases.len(), |i| {
                    let (u, x) = &cases[i];
                    let norm = inner_product_ball_with(
                        Execution::Sequential,
                        &cfg,
                        0.0,
                        0.0,
                        u,
                        u,
                        &ball,
                    )?
                    .re;
                    Ok(evaluate(u, x)?.norm_sqr() / norm)
                })?;
                maxima.push(ratios.into_iter().fold(0.0, worst));
            }
            let growth = maxima[1] / maxima[0];
            let bounded = maxima.iter().all(|m| m.is_finite());
            report.check(
                format!(
                    "inequality n={n} p={p} (max ratio {:.3e} → {:.3e})",
                    maxima[0], maxima[1]
                ),
                "ratio",
                if bounded { growth } else { f64::INFINITY },
                2.0,
            );
        }
    }
    Ok(report.finish(tolerance))
}

pub const GROWTH_DEGREES: std::ops::RangeInclusive<usize> = 10..=40;
pub const GROWTH_SAMPLES: usize = 64;

/// Largest `ratio(m₂)/ratio(m₁)` over `m₁ < m₂`; 1 for a non-increasing sequence.
pub fn trend_violation(ratios: &[f64]) -> f64 {
    let mut violation = 1.0_f64;
    let mut running_min = f64::INFINITY;
    for &r in ratios {
        if running_min.is_finite() {
            violation = worst(violation, r / running_min);
        }
        running_min = running_min.min(r);
    }
    violation
}

fn growth_suite(opts: &SuiteOptions) -> Result<SuiteReport> {
    let tolerance = 2.0;
    let mut report = Builder::new("growth");
    for n in opts.ns(&[3, 4]) {
        for p in opts.ps(&ALL_P) {
            let cfg = KernelConfig::new(n, p)?;
            let degrees: Vec<usize> = GROWTH_DEGREES.collect();
            let ratios = try_map_indexed(opts.exec, degrees.len(), |i| {
                zonal_growth_ratio(&cfg, degrees[i], GROWTH_SAMPLES)
            })?;
            let violation = trend_violation(&ratios);
            let largest = ratios.iter().copied().fold(0.0, worst);
            report.cases += ratios.len();
            report.abs = worst(report.abs, largest);
            report.rel = worst(report.rel, violation);
            report.check(format!("trend n={n} p={p}"), "ratio", violation, tolerance);
            report.check(
                format!("bounded n={n} p={p}"),
                "abs",
                if largest.is_finite() { 0.0 } else { 1.0 },
                0.0,
            );
        }
    }
    Ok(report.finish(tolerance))
}

/// Degrees used for the sphere exactness sweep.
pub fn sphere_test_degree(n: usize) -> usize {
    match n {
        2 => 24,
        3 => 16,
        4 => 12,
        _ => 10,
    }
}

/// All exponent vectors of length `n` with total degree `≤ max_degree`.
pub fn monomial_exponents(n: usize, max_degree: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut current = vec![0; n];
    fn rec(i: usize, left: usize, current: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if i == current.len() {
            out.push(current.clone());
            return;
        }
        for k in 0..=left {
            current[i] = k;
            rec(i + 1, left - k, current, out);
        }
        current[i] = 0;
    }
    rec(0, max_degree, &mut current, &mut out);
    out
}

/// `Σ_j w_j ζ_j^κ`.
pub fn sphere_rule_monomial(rule: &SphereRule, exponents: &[usize]) -> f64 {
    rule.nodes
        .iter()
        .zip(&rule.weights)
        .map(|(z, w)| {
            w * z
                .iter()
                .zip(exponents)
                .map(|(c, &k)| c.powi(k as i32))
                .product::<f64>()
        })
        .sum()
}

pub const RADIAL_GRID_ALPHA: [f64; 4] = [0.0, 1.0, -0.5, 2.5];
pub const RADIAL_GRID_BETA: [f64; 4] = [0.0, 0.5, 2.0, -0.5];
pub const RADIAL_MAX_MOMENT: usize = 20;

fn quadrature_suite(opts: &SuiteOptions) -> Result<SuiteReport> {
    let tolerance = 1e-12;
    let mut report = Builder::new("quadrature");
    for n in opts.ns(&ALL_N) {
        let degree = sphere_test_degree(n);
        let rule = opts.cache.sphere(n, degree)?;
        let monomials = monomial_exponents(n, degree);
        let errs = try_map_indexed(opts.exec, monomials.len(), |i| {
            let want = sphere_monomial_moment(&monomials[i]);
            let abs = (sphere_rule_monomial(&rule, &monomials[i]) - want).abs();
            Ok(CaseErr {
                abs,
                rel: if want == 0.0 { abs } else { abs / want },
            })
        })?;
        let (abs, _) = report.absorb(&errs);
        report.check(
            format!("sphere monomials n={n} D={degree}"),
            "abs",
            abs,
            tolerance,
        );

        let mut radial = Vec::new();
        for &alpha in &RADIAL_GRID_ALPHA {
            for &beta in &RADIAL_GRID_BETA {
                let r = build_radial_rule(n, alpha, beta, RADIAL_MAX_MOMENT / 2 + 1)?;
                for m in 0..=RADIAL_MAX_MOMENT {
                    let quad: f64 = r
                        .nodes
                        .iter()
                        .zip(&r.weights)
                        .map(|(x, w)| w * x.powi(2 * m as i32))
                        .sum();
                    let want = radial_moment(n, m, alpha, beta)?;
                    radial.push(CaseErr {
                        abs: (quad - want).abs(),
                        rel: (quad - want).abs() / want,
                    });
                }
            }
        }
        let (_, rel) = report.absorb(&radial);
        report.check(
            format!("radial moments n={n} m≤{RADIAL_MAX_MOMENT}"),
            "rel",
            rel,
            tolerance,
        );
    }
    Ok(report.finish(tolerance))
}
