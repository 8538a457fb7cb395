use num_complex::Complex;

use crate::scalar::Scalar;

/// An open disk in the complex plane.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Disk<T: Scalar> {
    pub center: Complex<T>,
    pub radius: T,
}

impl<T: Scalar> Disk<T> {
    pub fn new(center: Complex<T>, radius: T) -> Self {
        assert!(radius > T::zero(), "disk radius must be positive");
        Disk { center, radius }
    }

    pub fn contains(&self, z: Complex<T>) -> bool {
        (z - self.center).norm() < self.radius
    }

    /// Membership with a small relative slack, for points produced by
    /// root finding that may graze the boundary.
    pub fn contains_loose(&self, z: Complex<T>, rel_slack: T) -> bool {
        (z - self.center).norm() <= self.radius * (T::one() + rel_slack)
    }

    /// Point on the boundary at the given angle.
    pub fn boundary_point(&self, angle: T) -> Complex<T> {
        self.center + Complex::from_polar(self.radius, angle)
    }
}

/// The product D × Δ' of a base disk and a vertical disk.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Polydisk<T: Scalar> {
    /// The base factor D (projection target).
    pub base: Disk<T>,
    /// The vertical factor Δ' (fiber direction).
    pub vertical: Disk<T>,
}

impl<T: Scalar> Polydisk<T> {
    pub fn new(base: Disk<T>, vertical: Disk<T>) -> Self {
        Polydisk { base, vertical }
    }
}
