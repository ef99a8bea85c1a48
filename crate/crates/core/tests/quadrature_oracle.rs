mod common;

use num_complex::Complex64;
use polybergman::algebra::{KernelConfig, RealVector, RotatedPoint};
use polybergman::polyspace::{
    evaluate, random_polyharmonic, FnOnRotated, PolyharmonicPolynomial, ZonalBlock,
};
use polybergman::quadrature::cache::RuleCache;
use polybergman::quadrature::{
    build_radial_rule, build_sphere_rule, build_sphere_rule_capped, inner_product_ball,
    inner_product_sphere, radial_moment, reproduce, BallRule, SphereRule,
};
use polybergman::sample::random_homogeneous;
use polybergman::verify::{monomial_exponents, sphere_rule_monomial};
use polybergman::Error;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

#[test]
fn sphere_rule_exact_against_gamma_oracle() {
    for (n, degree) in [(2, 20), (3, 14), (4, 10), (5, 8)] {
        let rule = build_sphere_rule(n, degree).unwrap();
        for kappa in monomial_exponents(n, degree) {
            let want = common::sphere_moment(&kappa);
            let got = sphere_rule_monomial(&rule, &kappa);
            assert!(
                (got - want).abs() <= 1e-12,
                "n={n} κ={kappa:?}: {got} vs {want}"
            );
        }
    }
}

#[test]
fn sphere_rule_is_not_exact_beyond_its_degree() {
    // the circle rule with D+1 points aliases ζ_1^{D+1} when D+1 is even
    let rule = build_sphere_rule(2, 5).unwrap();
    let err = (sphere_rule_monomial(&rule, &[6, 0]) - common::sphere_moment(&[6, 0])).abs();
    assert!(err > 1e-3);
}

#[test]
fn sphere_spec_examples() {
    for n in 2..=5 {
        let rule = build_sphere_rule(n, 4).unwrap();
        let one = FnOnRotated(|_: &RotatedPoint| Ok(Complex64::new(1.0, 0.0)));
        let cfg = KernelConfig::new(n, 1).unwrap();
        assert!((inner_product_sphere(&cfg, &one, &one, &rule).unwrap() - 1.0).norm() < 1e-13);
        let mut k = vec![0; n];
        k[0] = 2;
        assert!((sphere_rule_monomial(&rule, &k) - 1.0 / n as f64).abs() < 1e-14);
        k[0] = 1;
        assert!(sphere_rule_monomial(&rule, &k).abs() < 1e-15);
    }
}

#[test]
fn node_cap_is_enforced() {
    assert!(matches!(
        build_sphere_rule_capped(6, 60, 10_000_000),
        Err(Error::ResourceLimit(_))
    ));
}

#[test]
fn radial_examples_and_integer_beta_oracle() {
    let r = build_radial_rule(3, 0.0, 0.0, 1).unwrap();
    assert!((r.weights[0] - 1.0 / 3.0).abs() <= 1e-13 / 3.0);
    let r = build_radial_rule(2, 0.0, 1.0, 2).unwrap();
    let q: f64 = r.nodes.iter().zip(&r.weights).map(|(x, w)| w * x * x).sum();
    assert!((q - 1.0 / 12.0).abs() <= 1e-13 / 12.0);
    for n in 2..=5 {
        for alpha in [0.0, 1.0, 3.0, -0.5] {
            for beta in 0..=3u32 {
                for m in 0..=20 {
                    let k = (n + 2 * m) as f64 + alpha - 1.0;
                    let want = common::radial_integral_int_beta(k, beta);
                    let got = radial_moment(n, m, alpha, beta as f64).unwrap();
                    assert!(
                        (got - want).abs() <= 1e-12 * want,
                        "n={n} α={alpha} β={beta} m={m}"
                    );
                }
            }
        }
    }
}

#[test]
fn ball_volume_and_polar_factorization() {
    for n in 2..=4 {
        let cfg = KernelConfig::new(n, 2).unwrap();
        let rule = BallRule::new(n, 0.0, 0.0, 16).unwrap();
        let one = FnOnRotated(|_: &RotatedPoint| Ok(Complex64::new(1.0, 0.0)));
        let vol = inner_product_ball(&cfg, 0.0, 0.0, &one, &one, &rule).unwrap();
        assert!((vol.re - common::ball_volume(n)).abs() < 1e-13);

        let mut rng = ChaCha8Rng::seed_from_u64(n as u64);
        let q = random_homogeneous(&mut rng, &cfg, 5, 3).unwrap();
        let ball = inner_product_ball(&cfg, 0.0, 0.0, &q, &q, &rule).unwrap();
        let sphere = inner_product_sphere(&cfg, &q, &q, &rule.sphere).unwrap();
        let factor = n as f64 * common::ball_volume(n) * radial_moment(n, 5, 0.0, 0.0).unwrap();
        assert!((ball - sphere * factor).norm() <= 1e-12 * ball.norm());
        assert!(sphere.re > 0.0 && sphere.im.abs() < 1e-13 * sphere.re);
    }
}

#[test]
fn reproduce_origin_constant() {
    for n in 2..=3 {
        let cfg = KernelConfig::new(n, 1).unwrap();
        let mut pole = vec![0.0; n];
        pole[0] = 1.0;
        let u = PolyharmonicPolynomial::new(
            n,
            1,
            vec![ZonalBlock {
                k: 0,
                d: 0,
                pole,
                coeff: Complex64::new(1.0, 0.0),
            }],
        )
        .unwrap();
        let rule = BallRule::new(n, 0.0, 0.0, 4).unwrap();
        let v = reproduce(&cfg, 0.0, 0.0, &u, &RotatedPoint::origin(n), 0, &rule).unwrap();
        assert!((v - 1.0).norm() < 1e-13);
    }
}

#[test]
fn reproduce_needs_every_kernel_degree() {
    // negative control: dropping the top degree of the kernel breaks reproduction
    let cfg = KernelConfig::new(3, 2).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let u = random_homogeneous(&mut rng, &cfg, 4, 3).unwrap();
    let x = RotatedPoint::in_sector(RealVector(vec![0.5, 0.3, -0.2]), 1, 2).unwrap();
    let rule = BallRule::new(3, 0.0, 0.0, 16).unwrap();
    let want = evaluate(&u, &x).unwrap();
    let full = reproduce(&cfg, 0.0, 0.0, &u, &x, 6, &rule).unwrap();
    assert!((full - want).norm() <= 1e-10 * (1.0 + want.norm()));
    let v = PolyharmonicPolynomial {
        blocks: vec![],
        ..u.clone()
    };
    let low = reproduce(&cfg, 0.0, 0.0, &v, &x, 3, &rule).unwrap();
    assert_eq!(low, Complex64::new(0.0, 0.0));
    // a degree-4 function against the degree-3 kernel is rejected, not silently wrong
    assert!(reproduce(&cfg, 0.0, 0.0, &u, &x, 3, &rule).is_err());
}

#[test]
fn rule_cache_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let cache = RuleCache::new(dir.path());
    let a = cache.sphere(3, 8).unwrap();
    let text = std::fs::read_to_string(dir.path().join("sphere_n3_d8.json")).unwrap();
    let json: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert!(json["nodes"].is_array() && json["weights"].is_array() && json["exact_degree"] == 8);
    assert_eq!(SphereRule::from_json(&text).unwrap(), a);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn weights_positive_and_normalized(n in 2usize..6, d in 0usize..9) {
        let rule = build_sphere_rule(n, d).unwrap();
        prop_assert!(rule.weights.iter().all(|w| *w > 0.0));
        prop_assert!((rule.weights.iter().sum::<f64>() - 1.0).abs() < 1e-13);
    }

    #[test]
    fn radial_mass(n in 2usize..6, alpha in -0.9f64..3.0, beta in -0.9f64..3.0, len in 1usize..12) {
        let rule = build_radial_rule(n, alpha, beta, len).unwrap();
        let mass: f64 = rule.weights.iter().sum();
        let want = radial_moment(n, 0, alpha, beta).unwrap();
        prop_assert!((mass - want).abs() <= 1e-13 * want);
        prop_assert!(rule.nodes.iter().all(|r| *r > 0.0 && *r < 1.0));
    }

    #[test]
    fn reproduce_random(seed in any::<u64>(), p in 1usize..4, k in 0usize..2) {
        let cfg = KernelConfig::new(2, p).unwrap();
        let u = random_polyharmonic(&cfg, 5, 3, seed).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let x = polybergman::sample::random_sector_point(&mut rng, 2, p, 0.7).unwrap();
        let (alpha, beta) = [(0.0, 0.0), (1.0, 0.5)][k];
        let rule = BallRule::new(2, alpha, beta, 14).unwrap();
        let cfg = cfg.with_weights(alpha, beta).unwrap();
        let got = reproduce(&cfg, alpha, beta, &u, &x, 5, &rule).unwrap();
        let want = evaluate(&u, &x).unwrap();
        prop_assert!((got - want).norm() <= 1e-8 * (1.0 + want.norm()));
    }
}
