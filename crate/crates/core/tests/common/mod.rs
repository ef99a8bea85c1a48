//! Oracles shared by the integration tests, written independently of the library.
#![allow(dead_code)]

use std::f64::consts::PI;

/// Lanczos approximation (g = 7, 9 terms), valid for x > 0.5.
#[allow(clippy::excessive_precision)]
pub fn gamma(x: f64) -> f64 {
    const G: f64 = 7.0;
    const C: [f64; 9] = [
        0.999_999_999_999_809_93,
        676.520_368_121_885_1,
        -1_259.139_216_722_402_8,
        771.323_428_777_653_13,
        -176.615_029_162_140_59,
        12.507_343_278_686_905,
        -0.138_571_095_265_720_12,
        9.984_369_578_019_571_6e-6,
        1.505_632_735_149_311_6e-7,
    ];
    if x < 0.5 {
        return PI / ((PI * x).sin() * gamma(1.0 - x));
    }
    let x = x - 1.0;
    let mut a = C[0];
    let t = x + G + 0.5;
    for (i, c) in C.iter().enumerate().skip(1) {
        a += c / (x + i as f64);
    }
    (2.0 * PI).sqrt() * t.powf(x + 0.5) * (-t).exp() * a
}

/// `π^{n/2} / Γ(n/2 + 1)`.
pub fn ball_volume(n: usize) -> f64 {
    PI.powf(n as f64 / 2.0) / gamma(n as f64 / 2.0 + 1.0)
}

/// `∫_S ζ^κ dσ = Γ(n/2) Π Γ((κ_i+1)/2) / (π^{n/2} Γ((|κ|+n)/2))` for even `κ`.
pub fn sphere_moment(kappa: &[usize]) -> f64 {
    if kappa.iter().any(|k| k % 2 == 1) {
        return 0.0;
    }
    let n = kappa.len() as f64;
    let total: usize = kappa.iter().sum();
    let num: f64 = kappa
        .iter()
        .map(|&k| gamma((k as f64 + 1.0) / 2.0))
        .product();
    gamma(n / 2.0) * num / (PI.powf(n / 2.0) * gamma((total as f64 + n) / 2.0))
}

/// `∫_0^1 r^k (1−r²)^β dr` for integer `β` by binomial expansion.
pub fn radial_integral_int_beta(k: f64, beta: u32) -> f64 {
    let mut sum = 0.0;
    let mut binom = 1.0;
    for j in 0..=beta {
        let sign = if j % 2 == 0 { 1.0 } else { -1.0 };
        sum += sign * binom / (k + 2.0 * j as f64 + 1.0);
        binom = binom * (beta - j) as f64 / (j + 1) as f64;
    }
    sum
}

/// Legendre `P_m(t)`.
pub fn legendre(m: usize, t: f64) -> f64 {
    let (mut p0, mut p1) = (1.0, t);
    if m == 0 {
        return 1.0;
    }
    for k in 1..m {
        let kf = k as f64;
        let p2 = ((2.0 * kf + 1.0) * t * p1 - kf * p0) / (kf + 1.0);
        p0 = p1;
        p1 = p2;
    }
    p1
}

pub fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Harmonic Poisson kernel of the real ball, `(1 − |x|²) / |x − ζ|^n`.
pub fn real_poisson(x: &[f64], zeta: &[f64]) -> f64 {
    let n = x.len() as i32;
    let d2: f64 = x.iter().zip(zeta).map(|(a, b)| (a - b) * (a - b)).sum();
    (1.0 - dot(x, x)) / d2.sqrt().powi(n)
}

/// Harmonic Bergman kernel of the real ball.
pub fn real_bergman(x: &[f64], y: &[f64]) -> f64 {
    let n = x.len() as f64;
    let s = dot(x, y);
    let q = dot(x, x) * dot(y, y);
    let w = 1.0 - 2.0 * s + q;
    (n * (1.0 - q).powi(2) - 4.0 * q * w) / (n * ball_volume(x.len()) * w.powf(n / 2.0 + 1.0))
}
