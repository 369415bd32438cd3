//! Minimal high-accuracy special-function kernel: Bessel J/Y and Hankel
//! functions of real nonnegative order, the imaginary-order oscillatory
//! integral, and the digamma function.
//!
//! Everything here is pure and reentrant; no global state.

mod bessel;
mod gamma;
mod oscillatory;
pub(crate) mod quad;

pub use bessel::{bessel_j, bessel_jy, hankel1, BesselJY};
pub use gamma::{digamma, gamma};
pub use oscillatory::imag_order_integral;

/// Complex double-precision value used throughout the crate.
pub type Complex = num_complex::Complex64;
