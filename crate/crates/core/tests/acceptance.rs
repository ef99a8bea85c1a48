//! Acceptance criteria, one PASS/FAIL line each. Exits non-zero on any failure.

mod common;

use std::time::{Duration, Instant};

use polybergman::algebra::{KernelConfig, RotatedPoint};
use polybergman::kernels::{bergman, poisson};
use polybergman::quadrature::{build_radial_rule, build_sphere_rule};
use polybergman::verify::{
    monomial_exponents, run_suite, sphere_rule_monomial, sphere_test_degree, SuiteOptions,
    SuiteReport, RADIAL_GRID_ALPHA, RADIAL_GRID_BETA, RADIAL_MAX_MOMENT,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

struct Outcome {
    pass: bool,
    detail: String,
}

fn summarize(reports: &[SuiteReport]) -> Outcome {
    let pass = reports.iter().all(|r| r.pass);
    let detail = reports
        .iter()
        .flat_map(|r| {
            r.checks
                .iter()
                .filter(|c| !c.pass)
                .map(move |c| {
                    format!(
                        "{}:{} {} {:.2e} > {:.0e}",
                        r.suite, c.name, c.measure, c.value, c.tolerance
                    )
                })
                .chain(std::iter::once(format!(
                    "{} cases={} max_abs={:.2e} max_rel={:.2e}",
                    r.suite, r.cases, r.max_abs_err, r.max_rel_err
                )))
        })
        .collect::<Vec<_>>()
        .join("; ");
    Outcome { pass, detail }
}

fn suites(names: &[&str]) -> Outcome {
    let opts = SuiteOptions::default();
    let mut reports = Vec::new();
    for name in names {
        match run_suite(name, &opts) {
            Ok(r) => reports.push(r),
            Err(e) => {
                return Outcome {
                    pass: false,
                    detail: format!("{name}: {e}"),
                }
            }
        }
    }
    summarize(&reports)
}

fn random_ball_point(rng: &mut ChaCha8Rng, n: usize, r_max: f64) -> Vec<f64> {
    loop {
        let v: Vec<f64> = (0..n).map(|_| rng.random_range(-r_max..r_max)).collect();
        if common::dot(&v, &v).sqrt() < r_max {
            return v;
        }
    }
}

/// Real-ball harmonic kernels against independent closed forms, p = 1.
fn real_kernel_oracle(kind: &str, tol: f64) -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let mut worst: f64 = 0.0;
    for n in 2..=5 {
        let cfg = KernelConfig::new(n, 1).unwrap();
        for _ in 0..50 {
            let x = random_ball_point(&mut rng, n, 0.7);
            let (got, want) = if kind == "poisson" {
                let mut zeta = random_ball_point(&mut rng, n, 1.0);
                let norm = common::dot(&zeta, &zeta).sqrt();
                zeta.iter_mut().for_each(|z| *z /= norm);
                let got = poisson(
                    &cfg,
                    &RotatedPoint::real(x.clone()).unwrap(),
                    &RotatedPoint::real(zeta.clone()).unwrap(),
                );
                (got, common::real_poisson(&x, &zeta))
            } else {
                let y = random_ball_point(&mut rng, n, 0.7);
                let got = bergman(
                    &cfg,
                    &RotatedPoint::real(x.clone()).unwrap(),
                    &RotatedPoint::real(y.clone()).unwrap(),
                );
                (got, common::real_bergman(&x, &y))
            };
            match got {
                Ok(v) => {
                    worst = worst.max((v.re - want).abs().max(v.im.abs()) / (1.0 + want.abs()))
                }
                Err(e) => {
                    return Outcome {
                        pass: false,
                        detail: format!("{kind} oracle: {e}"),
                    }
                }
            }
        }
    }
    Outcome {
        pass: worst <= tol,
        detail: format!("real {kind} oracle scaled={worst:.2e}"),
    }
}

/// Quadrature exactness against test-side Gamma oracles.
fn quadrature_oracle() -> Outcome {
    let mut sphere_err: f64 = 0.0;
    let mut radial_err: f64 = 0.0;
    for n in 2..=5 {
        let d = sphere_test_degree(n);
        let rule = build_sphere_rule(n, d).unwrap();
        for kappa in monomial_exponents(n, d) {
            sphere_err = sphere_err
                .max((sphere_rule_monomial(&rule, &kappa) - common::sphere_moment(&kappa)).abs());
        }
        for &alpha in &RADIAL_GRID_ALPHA {
            for &beta in &RADIAL_GRID_BETA {
                let rule = build_radial_rule(n, alpha, beta, RADIAL_MAX_MOMENT + 1).unwrap();
                for m in 0..=RADIAL_MAX_MOMENT {
                    let got: f64 = rule
                        .nodes
                        .iter()
                        .zip(&rule.weights)
                        .map(|(r, w)| w * r.powi(2 * m as i32))
                        .sum();
                    let z = m as f64 + (n as f64 + alpha) / 2.0;
                    let want = common::gamma(beta + 1.0) * common::gamma(z)
                        / (2.0 * common::gamma(z + beta + 1.0));
                    radial_err = radial_err.max((got - want).abs() / want);
                }
            }
        }
    }
    Outcome {
        pass: sphere_err <= 1e-12 && radial_err <= 1e-12,
        detail: format!("oracle sphere abs={sphere_err:.2e} radial rel={radial_err:.2e}"),
    }
}

fn both(a: Outcome, b: Outcome) -> Outcome {
    Outcome {
        pass: a.pass && b.pass,
        detail: format!("{}; {}", a.detail, b.detail),
    }
}

/// Name, time budget in seconds, check.
type Criterion = (&'static str, u64, Box<dyn Fn() -> Outcome>);

fn main() {
    let criteria: Vec<Criterion> = vec![
        (
            "poisson series",
            10,
            Box::new(|| {
                both(
                    suites(&["poisson_series"]),
                    real_kernel_oracle("poisson", 1e-10),
                )
            }),
        ),
        (
            "bergman series",
            20,
            Box::new(|| {
                both(
                    suites(&["bergman_series"]),
                    real_kernel_oracle("bergman", 1e-9),
                )
            }),
        ),
        ("decomposition", 5, Box::new(|| suites(&["decomposition"]))),
        (
            "weighted identities",
            30,
            Box::new(|| suites(&["weighted"])),
        ),
        (
            "derivative form",
            10,
            Box::new(|| suites(&["derivative_form"])),
        ),
        (
            "reproducing property",
            120,
            Box::new(|| suites(&["reproduce"])),
        ),
        (
            "zonal reproduction and orthogonality",
            60,
            Box::new(|| suites(&["zonal_reproduce", "orthogonality"])),
        ),
        ("mean value", 30, Box::new(|| suites(&["mean_value"]))),
        ("growth bound", 30, Box::new(|| suites(&["growth"]))),
        (
            "quadrature",
            10,
            Box::new(|| both(suites(&["quadrature"]), quadrature_oracle())),
        ),
    ];
    let mut failures = 0;
    let total = Instant::now();
    for (i, (name, budget, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = run();
        let elapsed = start.elapsed();
        // budgets are laptop targets; exceeding one is reported but not fatal
        let over = if elapsed > Duration::from_secs(*budget) {
            " (over budget)"
        } else {
            ""
        };
        println!(
            "criterion {}: {} {name} [{:.2}s / {budget}s{over}] {}",
            i + 1,
            if outcome.pass { "PASS" } else { "FAIL" },
            elapsed.as_secs_f64(),
            outcome.detail
        );
        if !outcome.pass {
            failures += 1;
        }
    }
    println!(
        "acceptance: {} of {} passed in {:.2}s",
        criteria.len() - failures,
        criteria.len(),
        total.elapsed().as_secs_f64()
    );
    if failures > 0 {
        std::process::exit(1);
    }
}
