//! Polyharmonic Poisson and Bergman kernels on the rotated unit balls of `C^n`:
//! closed forms, zonal series, cubature-based reproduction checks and the
//! verification suites behind the `polybergman` binary.

// `!(x > 0.0)` style guards are deliberate: they reject NaN as well.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod algebra;
pub mod cli;
pub mod error;
pub mod gamma;
pub mod kernels;
pub mod par;
pub mod polyspace;
pub mod quadrature;
pub mod ring;
pub mod sample;
pub mod verify;
pub mod zonal;

pub use algebra::{ComplexScalar, KernelConfig, RealVector, RotatedPoint};
pub use error::{Error, Result};
