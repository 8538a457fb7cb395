//! Metrics on fibers and sampled curves: directed symmetric-product
//! distance, Hausdorff distance, branch separation, and discriminant drift.

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::geom::Disk;
use crate::polycalc::BivarPoly;
use crate::projection::{self, Fiber};
use crate::scalar::Scalar;

/// Default radial grid resolution for `separation`; the angular resolution
/// is four times this.
pub const DEFAULT_SEPARATION_GRID: usize = 64;

/// A finite sample of a curve in C²: points (z, w).
#[derive(Debug, Clone, PartialEq)]
pub struct SampledCurve<T: Scalar> {
    pub points: Vec<(Complex<T>, Complex<T>)>,
    pub source: String,
}

impl<T: Scalar> SampledCurve<T> {
    pub fn new(points: Vec<(Complex<T>, Complex<T>)>, source: impl Into<String>) -> Self {
        SampledCurve {
            points,
            source: source.into(),
        }
    }

    /// Samples the fibers of F = 0 over a polar grid (grid radii × 4·grid
    /// angles) in the base disk.
    pub fn from_curve(f: &BivarPoly<T>, base: &Disk<T>, grid: usize) -> Result<Self> {
        assert!(grid >= 2);
        let tau = T::c(2.0) * T::PI();
        let angular = grid * 4;
        let mut points = Vec::new();
        for i in 0..grid {
            let r = base.radius * T::from_usize(i).unwrap() / T::from_usize(grid - 1).unwrap();
            let angles = if i == 0 { 1 } else { angular };
            for k in 0..angles {
                let angle = tau * T::from_usize(k).unwrap() / T::from_usize(angles).unwrap();
                let z = base.center + Complex::from_polar(r, angle);
                match projection::fiber(f, z) {
                    Ok(fb) => points.extend(fb.points().iter().map(|&w| (z, w))),
                    Err(Error::DegenerateSlice { .. }) => continue,
                    Err(e) => return Err(e),
                }
            }
        }
        if points.is_empty() {
            return Err(Error::EmptyDomain);
        }
        Ok(SampledCurve::new(points, "fiber samples"))
    }
}

fn dist2<T: Scalar>(a: (Complex<T>, Complex<T>), b: (Complex<T>, Complex<T>)) -> T {
    let dz = (a.0 - b.0).norm_sqr();
    let dw = (a.1 - b.1).norm_sqr();
    (dz + dw).sqrt()
}

/// Directed distance from fiber `a` to fiber `b`: sup over points of `a` of
/// the min distance to a point of `b`. The base points are not compared;
/// both fibers are read as unordered tuples of w-values.
pub fn d_sym<T: Scalar>(a: &Fiber<T>, b: &Fiber<T>) -> T {
    assert!(!a.is_empty() && !b.is_empty(), "fibers must be nonempty");
    let mut sup = T::zero();
    for &p in a.points() {
        let mut inf = T::infinity();
        for &q in b.points() {
            inf = inf.min((p - q).norm());
        }
        sup = sup.max(inf);
    }
    sup
}

/// max(d_sym(a, b), d_sym(b, a)): a pseudometric on canonical fibers.
pub fn d_sym_symmetric<T: Scalar>(a: &Fiber<T>, b: &Fiber<T>) -> T {
    d_sym(a, b).max(d_sym(b, a))
}

/// Sample-based Hausdorff distance between two curve samples in C². An
/// estimate from below of the true Hausdorff distance of the curves.
pub fn hausdorff<T: Scalar>(a: &SampledCurve<T>, b: &SampledCurve<T>) -> T {
    assert!(
        !a.points.is_empty() && !b.points.is_empty(),
        "samples must be nonempty"
    );
    directed_hausdorff(a, b).max(directed_hausdorff(b, a))
}

fn directed_hausdorff<T: Scalar>(a: &SampledCurve<T>, b: &SampledCurve<T>) -> T {
    let mut sup = T::zero();
    for &p in &a.points {
        let mut inf = T::infinity();
        for &q in &b.points {
            inf = inf.min(dist2(p, q));
        }
        sup = sup.max(inf);
    }
    sup
}

/// Minimal pairwise distance between fiber points over the sampled region
/// `region` minus the excluded disks.
///
/// Sampling uses a polar grid (`grid` radii × 4·`grid` angles) plus the
/// boundary circles of the excluded disks, where the infimum of the
/// separation is typically attained.
pub fn separation<T: Scalar>(
    f: &BivarPoly<T>,
    region: &Disk<T>,
    excluded: &[Disk<T>],
    grid: usize,
) -> Result<T> {
    assert!(grid >= 2);
    let tau = T::c(2.0) * T::PI();
    let angular = grid * 4;
    let mut best = T::infinity();
    let mut sampled = false;
    let admissible =
        |z: Complex<T>| region.contains_loose(z, T::c(1e-12)) && !excluded.iter().any(|d| d.contains(z));

    let mut probe = |z: Complex<T>| -> Result<()> {
        match projection::fiber(f, z) {
            Ok(fb) => {
                sampled = true;
                if fb.len() >= 2 {
                    best = best.min(fb.min_pairwise());
                }
                Ok(())
            }
            Err(Error::DegenerateSlice { .. }) => Ok(()),
            Err(e) => Err(e),
        }
    };

    for i in 0..grid {
        let r = region.radius * T::from_usize(i).unwrap() / T::from_usize(grid - 1).unwrap();
        let angles = if i == 0 { 1 } else { angular };
        for k in 0..angles {
            let angle = tau * T::from_usize(k).unwrap() / T::from_usize(angles).unwrap();
            let z = region.center + Complex::from_polar(r, angle);
            if admissible(z) {
                probe(z)?;
            }
        }
    }
    for d in excluded {
        for k in 0..angular {
            let angle = tau * T::from_usize(k).unwrap() / T::from_usize(angular).unwrap();
            let z = d.boundary_point(angle);
            if admissible(z) {
                probe(z)?;
            }
        }
    }
    if !sampled {
        return Err(Error::EmptyDomain);
    }
    Ok(best)
}

/// Hausdorff distance between the discriminant point sets of F and G
/// inside `base`.
pub fn discriminant_drift<T: Scalar>(
    f: &BivarPoly<T>,
    g: &BivarPoly<T>,
    base: &Disk<T>,
) -> Result<T> {
    let df: Vec<Complex<T>> = projection::discriminant_points(f, base)?
        .into_iter()
        .map(|(p, _)| p)
        .collect();
    let dg: Vec<Complex<T>> = projection::discriminant_points(g, base)?
        .into_iter()
        .map(|(p, _)| p)
        .collect();
    match (df.is_empty(), dg.is_empty()) {
        (true, true) => return Ok(T::zero()),
        (true, false) | (false, true) => return Err(Error::EmptyDomain),
        _ => {}
    }
    let directed = |a: &[Complex<T>], b: &[Complex<T>]| {
        let mut sup = T::zero();
        for &p in a {
            let mut inf = T::infinity();
            for &q in b {
                inf = inf.min((p - q).norm());
            }
            sup = sup.max(inf);
        }
        sup
    };
    Ok(directed(&df, &dg).max(directed(&dg, &df)))
}
