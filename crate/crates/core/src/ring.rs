//! Minimal arithmetic abstraction so polynomial recurrences run on `f64`,
//! `Complex64` and double-double values alike.

use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;

pub trait Ring:
    Copy + Add<Output = Self> + Sub<Output = Self> + Mul<Output = Self> + Neg<Output = Self>
{
    fn from_f64(v: f64) -> Self;
    fn scale(self, k: f64) -> Self;
}

impl Ring for f64 {
    fn from_f64(v: f64) -> Self {
        v
    }
    fn scale(self, k: f64) -> Self {
        self * k
    }
}

impl Ring for Complex64 {
    fn from_f64(v: f64) -> Self {
        Complex64::new(v, 0.0)
    }
    fn scale(self, k: f64) -> Self {
        self * k
    }
}

/// Unevaluated sum `hi + lo` with `|lo| <= ulp(hi)/2`, about 106 bits of precision.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct DoubleDouble {
    pub hi: f64,
    pub lo: f64,
}

#[inline]
fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    (s, (a - (s - bb)) + (b - bb))
}

#[inline]
fn quick_two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    (s, b - (s - a))
}

#[inline]
fn two_prod(a: f64, b: f64) -> (f64, f64) {
    let p = a * b;
    (p, a.mul_add(b, -p))
}

impl DoubleDouble {
    pub fn new(v: f64) -> Self {
        DoubleDouble { hi: v, lo: 0.0 }
    }

    /// Exact product of two doubles.
    pub fn product(a: f64, b: f64) -> Self {
        let (hi, lo) = two_prod(a, b);
        DoubleDouble { hi, lo }
    }

    pub fn to_f64(self) -> f64 {
        self.hi + self.lo
    }
}

impl Add for DoubleDouble {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        let (s, e) = two_sum(self.hi, o.hi);
        let (t, f) = two_sum(self.lo, o.lo);
        let (s, e) = quick_two_sum(s, e + t);
        let (hi, lo) = quick_two_sum(s, e + f);
        DoubleDouble { hi, lo }
    }
}

impl Neg for DoubleDouble {
    type Output = Self;
    fn neg(self) -> Self {
        DoubleDouble {
            hi: -self.hi,
            lo: -self.lo,
        }
    }
}

impl Sub for DoubleDouble {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        self + (-o)
    }
}

impl Mul for DoubleDouble {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        let (p, e) = two_prod(self.hi, o.hi);
        let e = e + (self.hi * o.lo + self.lo * o.hi);
        let (hi, lo) = quick_two_sum(p, e);
        DoubleDouble { hi, lo }
    }
}

impl Ring for DoubleDouble {
    fn from_f64(v: f64) -> Self {
        DoubleDouble::new(v)
    }
    fn scale(self, k: f64) -> Self {
        self * DoubleDouble::new(k)
    }
}

/// Solid zonal harmonic `|z|^d z_d(ẑ·η)` as a polynomial in `dot = z·η`, `sq = Σ z_j²`.
///
/// Runs the Gegenbauer (n ≥ 3) or Chebyshev (n = 2) recurrence on the homogeneous
/// forms, so no square roots are taken and any ring works.
pub fn solid_zonal<T: Ring>(n: usize, d: usize, dot: T, sq: T) -> T {
    if d == 0 {
        return T::from_f64(1.0);
    }
    if n == 2 {
        let mut prev = T::from_f64(1.0);
        let mut cur = dot;
        for _ in 2..=d {
            let next = (dot * cur).scale(2.0) - sq * prev;
            prev = cur;
            cur = next;
        }
        return cur.scale(2.0);
    }
    let lambda = (n as f64 - 2.0) / 2.0;
    let mut prev = T::from_f64(1.0);
    let mut cur = dot.scale(2.0 * lambda);
    for m in 2..=d {
        let mf = m as f64;
        let a = 2.0 * (mf + lambda - 1.0) / mf;
        let b = (mf + 2.0 * lambda - 2.0) / mf;
        let next = (dot * cur).scale(a) - (sq * prev).scale(b);
        prev = cur;
        cur = next;
    }
    cur.scale((d as f64 + lambda) / lambda)
}
