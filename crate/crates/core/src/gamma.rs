//! Log-Gamma and Gamma ratios for positive real arguments.
//!
//! Small arguments are shifted up by the recurrence `Γ(z+1) = zΓ(z)` until
//! the Stirling series converges to full double precision.

use std::f64::consts::PI;

const SHIFT_THRESHOLD: f64 = 16.0;

// B_{2k} / (2k (2k-1)) for k = 1..=8.
const STIRLING: [f64; 8] = [
    1.0 / 12.0,
    -1.0 / 360.0,
    1.0 / 1260.0,
    -1.0 / 1680.0,
    1.0 / 1188.0,
    -691.0 / 360360.0,
    1.0 / 156.0,
    -3617.0 / 122400.0,
];

fn stirling_tail(z: f64) -> f64 {
    let inv = 1.0 / z;
    let inv2 = inv * inv;
    let mut acc = 0.0;
    for c in STIRLING.iter().rev() {
        acc = acc * inv2 + c;
    }
    acc * inv
}

/// `ln Γ(x)` for `x > 0`.
pub fn ln_gamma(x: f64) -> f64 {
    debug_assert!(x > 0.0);
    let mut z = x;
    let mut prod = 1.0;
    while z < SHIFT_THRESHOLD {
        prod *= z;
        z += 1.0;
    }
    (z - 0.5) * z.ln() - z + 0.5 * (2.0 * PI).ln() + stirling_tail(z) - prod.ln()
}

/// `Γ(x)` for `x > 0` (overflows to infinity past x ≈ 171).
pub fn gamma(x: f64) -> f64 {
    ln_gamma(x).exp()
}

/// `ln(Γ(z + c) / Γ(z))` for `z > 0`, `z + c > 0`.
pub fn ln_gamma_ratio(z: f64, c: f64) -> f64 {
    debug_assert!(z > 0.0 && z + c > 0.0);
    if c == 0.0 {
        return 0.0;
    }
    let mut z = z;
    let mut log_prod = 0.0;
    // Γ(z+c)/Γ(z) = [Γ(z+1+c)/Γ(z+1)] · z/(z+c)
    while z < SHIFT_THRESHOLD || z + c < SHIFT_THRESHOLD {
        log_prod += (z / (z + c)).ln();
        z += 1.0;
    }
    let head = (z - 0.5) * (c / z).ln_1p() + c * (z + c).ln() - c;
    head + stirling_tail(z + c) - stirling_tail(z) + log_prod
}

/// `Γ(z + c) / Γ(z)`.
pub fn gamma_ratio(z: f64, c: f64) -> f64 {
    ln_gamma_ratio(z, c).exp()
}
