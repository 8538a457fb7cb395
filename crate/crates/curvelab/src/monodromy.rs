//! Analytic continuation of fibers along loops in the base: monodromy
//! permutations, cycle structure, and branch counts.

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::geom::Disk;
use crate::polycalc::{self, BivarPoly};
use crate::projection::{self, Crossing, DiscriminantReport, Fiber};
use crate::scalar::{lex_cmp, Scalar};

pub const DEFAULT_STEPS_PER_TURN: usize = 512;

/// Step doubling on PathJump stops at this many steps per turn.
pub const MAX_STEPS_PER_TURN: usize = 4096;

/// A loop circle is rejected when a discriminant point lies within this
/// fraction of the radius of it.
pub const ON_DISCRIMINANT_REL: f64 = 1e-7;

/// Fraction of the minimal pairwise fiber distance allowed as a single
/// tracking step before the nearest-root matching counts as a jump.
pub const JUMP_TOL_FACTOR: f64 = 0.4;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LoopSpec<T: Scalar> {
    pub center: Complex<T>,
    pub radius: T,
    pub turns: usize,
    pub steps_per_turn: usize,
}

impl<T: Scalar> LoopSpec<T> {
    pub fn once(center: Complex<T>, radius: T) -> Self {
        LoopSpec {
            center,
            radius,
            turns: 1,
            steps_per_turn: DEFAULT_STEPS_PER_TURN,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct MonodromyResult<T: Scalar> {
    /// Sheet starting at index `i` of `start_fiber` ends at index
    /// `permutation[i]`.
    pub permutation: Vec<usize>,
    pub start_fiber: Fiber<T>,
}

impl<T: Scalar> MonodromyResult<T> {
    pub fn is_identity(&self) -> bool {
        self.permutation.iter().enumerate().all(|(i, &p)| i == p)
    }

    /// Disjoint cycles of the permutation, each starting at its smallest
    /// index, listed by smallest index.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let n = self.permutation.len();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut cycle = Vec::new();
            let mut cur = start;
            while !seen[cur] {
                seen[cur] = true;
                cycle.push(cur);
                cur = self.permutation[cur];
            }
            out.push(cycle);
        }
        out
    }

    /// Cycle lengths, largest first.
    pub fn cycle_lengths(&self) -> Vec<usize> {
        let mut lens: Vec<usize> = self.cycles().iter().map(Vec::len).collect();
        lens.sort_unstable_by(|a, b| b.cmp(a));
        lens
    }
}

/// Tracks the fiber of F = 0 around the loop and returns the induced
/// permutation of the start fiber. The start point is at angle 0 and fiber
/// indices follow the canonical (real, imaginary) order there.
///
/// On a matching ambiguity the step count is doubled up to
/// `MAX_STEPS_PER_TURN` before `PathJump` is surfaced.
pub fn track<T: Scalar>(f: &BivarPoly<T>, spec: &LoopSpec<T>) -> Result<MonodromyResult<T>> {
    if f.w_degree() == 0 {
        return Err(Error::ZeroWDegree);
    }
    assert!(spec.turns >= 1, "need at least one turn");
    assert!(spec.steps_per_turn >= 16, "need at least 16 steps per turn");
    check_loop_off_discriminant(f, spec)?;

    let mut steps = spec.steps_per_turn;
    loop {
        match track_with_steps(f, spec, steps) {
            Err(Error::PathJump { .. }) if steps * 2 <= MAX_STEPS_PER_TURN => steps *= 2,
            other => return other,
        }
    }
}

fn check_loop_off_discriminant<T: Scalar>(f: &BivarPoly<T>, spec: &LoopSpec<T>) -> Result<()> {
    // Clustered locations: a multiple discriminant root scatters far wider
    // than the rejection threshold, its refined centroid does not.
    let near = Disk::new(spec.center, spec.radius * T::c(2.0));
    let points = projection::discriminant_points(f, &near)?;
    let threshold = spec.radius * T::c(ON_DISCRIMINANT_REL);
    for (r, _) in points {
        let distance = ((r - spec.center).norm() - spec.radius).abs();
        if distance < threshold {
            return Err(Error::OnDiscriminant {
                distance: distance.to_f64().unwrap_or(f64::NAN),
            });
        }
    }
    Ok(())
}

fn track_with_steps<T: Scalar>(
    f: &BivarPoly<T>,
    spec: &LoopSpec<T>,
    steps_per_turn: usize,
) -> Result<MonodromyResult<T>> {
    let z0 = spec.center + Complex::from_polar(spec.radius, T::zero());
    let start = projection::fiber(f, z0)?;
    let m = start.len();
    let start_min = start.min_pairwise();
    if !(start_min > start_scale(&start) * T::c(1e-8)) {
        return Err(Error::CoincidentFiber);
    }

    let tau = T::c(2.0) * T::PI();
    let total = steps_per_turn * spec.turns;
    let root_tol = T::c(polycalc::DEFAULT_ROOT_TOL);
    let mut current: Vec<Complex<T>> = start.points().to_vec();
    for step in 1..=total {
        let angle = tau * T::from_usize(step % steps_per_turn).unwrap()
            / T::from_usize(steps_per_turn).unwrap();
        let z = spec.center + Complex::from_polar(spec.radius, angle);
        let slice = f.w_slice(z);
        let candidates = polycalc::roots_guess(&slice, root_tol, &current)?;
        if candidates.len() != m {
            return Err(Error::PathJump {
                step,
                steps_per_turn,
            });
        }
        let jump_tol = min_pairwise(&current) * T::c(JUMP_TOL_FACTOR);
        let matched = match_nearest(&current, &candidates, jump_tol).ok_or(Error::PathJump {
            step,
            steps_per_turn,
        })?;
        current = matched;
    }

    let jump_tol = min_pairwise(start.points()) * T::c(JUMP_TOL_FACTOR);
    let mut permutation = vec![usize::MAX; m];
    let mut taken = vec![false; m];
    for (i, &end) in current.iter().enumerate() {
        let (j, d) = nearest(start.points(), end);
        if d > jump_tol || taken[j] {
            return Err(Error::PathJump {
                step: total,
                steps_per_turn,
            });
        }
        taken[j] = true;
        permutation[i] = j;
    }
    Ok(MonodromyResult {
        permutation,
        start_fiber: start,
    })
}

fn start_scale<T: Scalar>(fiber: &Fiber<T>) -> T {
    fiber
        .points()
        .iter()
        .map(|p| p.norm())
        .fold(T::one(), T::max)
}

fn min_pairwise<T: Scalar>(pts: &[Complex<T>]) -> T {
    let mut best = T::infinity();
    for i in 0..pts.len() {
        for j in (i + 1)..pts.len() {
            best = best.min((pts[i] - pts[j]).norm());
        }
    }
    best
}

fn nearest<T: Scalar>(pts: &[Complex<T>], target: Complex<T>) -> (usize, T) {
    let mut best = (0usize, T::infinity());
    for (j, &p) in pts.iter().enumerate() {
        let d = (p - target).norm();
        if d < best.1 {
            best = (j, d);
        }
    }
    best
}

/// Assigns each tracked point to its nearest candidate; `None` when the
/// assignment is not injective or a move exceeds the jump tolerance.
fn match_nearest<T: Scalar>(
    current: &[Complex<T>],
    candidates: &[Complex<T>],
    jump_tol: T,
) -> Option<Vec<Complex<T>>> {
    let m = current.len();
    let mut taken = vec![false; m];
    let mut out = vec![Complex::<T>::new(T::zero(), T::zero()); m];
    for (i, &p) in current.iter().enumerate() {
        let (j, d) = nearest(candidates, p);
        if d > jump_tol || taken[j] {
            return None;
        }
        taken[j] = true;
        out[i] = candidates[j];
    }
    Some(out)
}

/// Cycle structure of the monodromy once around ∂base: the sheet counts of
/// the local irreducible components over the disk.
pub fn branch_count<T: Scalar>(f: &BivarPoly<T>, base: &Disk<T>) -> Result<Vec<usize>> {
    let result = track(f, &LoopSpec::once(base.center, base.radius))?;
    Ok(result.cycle_lengths())
}

/// The discriminant locations classified as non-normal crossings, in
/// canonical order.
pub fn locate_nnc<T: Scalar>(candidates: &DiscriminantReport<T>) -> Vec<Complex<T>> {
    let mut out: Vec<Complex<T>> = candidates
        .points
        .iter()
        .filter(|p| p.crossing == Crossing::NonNormalCrossing)
        .map(|p| p.location)
        .collect();
    out.sort_by(lex_cmp);
    out
}
