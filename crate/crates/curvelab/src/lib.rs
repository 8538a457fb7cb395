//! Numerical analysis of singular complex analytic plane curves.
//!
//! The library studies a curve V = {F(z, w) = 0} near a singular point
//! through its projection to the z-axis: good neighborhoods, fibers,
//! discriminant loci and their crossing types, Puiseux parametrizations of
//! branches, monodromy of fibers along loops, metric comparison of nearby
//! curves, and certification of intersections between a singular curve and
//! a perturbation of it.
//!
//! Everything is generic over the real scalar (`f32` or `f64`); the aliases
//! below pin `f64`, which the default tolerances are calibrated for.

pub mod error;
pub mod geom;
pub mod intersect;
pub mod monodromy;
pub mod multifun;
pub mod polycalc;
pub mod projection;
pub mod puiseux;
pub mod scalar;

pub use error::{Error, Result};
pub use scalar::Scalar;

/// `f64` complex numbers.
pub type C64 = num_complex::Complex<f64>;
/// Dense univariate polynomial over `C64`.
pub type Poly64 = polycalc::CPoly<f64>;
/// Sparse bivariate polynomial over `C64`.
pub type BivarPoly64 = polycalc::BivarPoly<f64>;
pub type Disk64 = geom::Disk<f64>;
pub type Polydisk64 = geom::Polydisk<f64>;
pub type Fiber64 = projection::Fiber<f64>;
