//! Intersection certification: pull the defining polynomial of one curve
//! back through the Puiseux parametrization of another and count zeros, plus
//! the trivariate pullback used for curves presented as images of finite
//! maps into C³.

use std::collections::BTreeMap;

use num_complex::Complex;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::geom::{Disk, Polydisk};
use crate::multifun::{hausdorff, SampledCurve};
use crate::polycalc::{self, BivarPoly, CPoly};
use crate::projection::{self, Crossing};
use crate::puiseux::{self, PuiseuxParam};
use crate::scalar::Scalar;

/// Absolute residual tolerance for accepting an intersection witness.
pub const WITNESS_RESIDUAL_TOL: f64 = 1e-8;

/// Cap on the expanded degree of trivariate pullbacks, per variable of the
/// result.
pub const COMPOSITION_DEGREE_CAP: usize = 16;

/// Truncation order used for Puiseux branches inside `certify`.
pub const CERTIFY_ORDER: usize = 16;

/// Polar scan grid (radii) for the brute-force near-coincidence pre-scan;
/// the angular count is four times this.
const SCAN_GRID: usize = 16;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Intersects,
    Empty,
    Inconclusive,
}

#[derive(Debug, Clone, PartialEq)]
pub struct HypothesisReport<T: Scalar> {
    /// Number of non-normal-crossing discriminant points of the perturbed
    /// curve inside the base disk.
    pub nnc_count_w: usize,
    /// Sampled Hausdorff distance between the two curves in C².
    pub d_h_estimate: T,
}

#[derive(Debug, Clone, PartialEq)]
pub struct IntersectionVerdict<T: Scalar> {
    pub status: Status,
    /// Points on both curves, when `Intersects`.
    pub witnesses: Vec<(Complex<T>, Complex<T>)>,
    /// Total certified zero count of the branch pullbacks in the t-disk.
    pub zero_count: usize,
    /// Per-witness (|F|, |G|) residuals, parallel to `witnesses`.
    pub residuals: Vec<(T, T)>,
    pub hypothesis_report: HypothesisReport<T>,
}

/// f(t) = G(shift_z + t^m, shift_w + g(t)), expanded as a polynomial in t.
///
/// Exact when the branch series is polynomial; otherwise the result is the
/// pullback of the truncated series and `certify` guards the zero count
/// against the discarded tail.
pub fn pullback<T: Scalar>(param: &PuiseuxParam<T>, g: &BivarPoly<T>) -> CPoly<T> {
    let shifted = g.shift(param.base_shift.0, param.base_shift.1);
    let m = param.ramification;
    let t_m = CPoly::monomial(m, Complex::<T>::one());
    // Horner in w over the z-coefficient polynomials composed with t^m.
    let jmax = shifted.w_degree();
    let mut acc = compose_univariate(&shifted.w_coefficient(jmax as u32), &t_m);
    for j in (0..jmax).rev() {
        let cj = compose_univariate(&shifted.w_coefficient(j as u32), &t_m);
        acc = acc.mul(&param.series).add(&cj);
    }
    acc
}

/// p(q(t)) for univariate p and q.
fn compose_univariate<T: Scalar>(p: &CPoly<T>, q: &CPoly<T>) -> CPoly<T> {
    let mut acc = CPoly::zero();
    for &c in p.coeffs().iter().rev() {
        acc = acc.mul(q).add(&CPoly::constant(c));
    }
    acc
}

/// Sparse trivariate polynomial, exponents (a, b, c).
#[derive(Debug, Clone, PartialEq)]
pub struct TrivarPoly<T: Scalar> {
    terms: BTreeMap<(u32, u32, u32), Complex<T>>,
}

impl<T: Scalar> TrivarPoly<T> {
    pub fn new() -> Self {
        TrivarPoly {
            terms: BTreeMap::new(),
        }
    }

    pub fn from_terms(terms: impl IntoIterator<Item = ((u32, u32, u32), Complex<T>)>) -> Self {
        let mut p = Self::new();
        for ((a, b, c), v) in terms {
            p.add_term(a, b, c, v);
        }
        p
    }

    pub fn add_term(&mut self, a: u32, b: u32, c: u32, v: Complex<T>) {
        if v.is_zero() {
            return;
        }
        let entry = self.terms.entry((a, b, c)).or_insert_with(Complex::zero);
        *entry = *entry + v;
        if entry.is_zero() {
            self.terms.remove(&(a, b, c));
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(u32, u32, u32), &Complex<T>)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn eval(&self, a: Complex<T>, b: Complex<T>, c: Complex<T>) -> Complex<T> {
        let mut acc = Complex::<T>::zero();
        for (&(i, j, k), &v) in &self.terms {
            acc = acc + v * a.powu(i) * b.powu(j) * c.powu(k);
        }
        acc
    }
}

impl<T: Scalar> Default for TrivarPoly<T> {
    fn default() -> Self {
        Self::new()
    }
}

/// p(z, w) = Q(g1(z, w), g2(z, w), g3(z, w)) expanded.
pub fn pullback_map<T: Scalar>(
    components: &[BivarPoly<T>; 3],
    q: &TrivarPoly<T>,
) -> Result<BivarPoly<T>> {
    let total_deg = |p: &BivarPoly<T>| {
        p.terms()
            .map(|(&(i, j), _)| (i + j) as usize)
            .max()
            .unwrap_or(0)
    };
    let degs: Vec<usize> = components.iter().map(total_deg).collect();
    let mut max_pow = [0u32; 3];
    for (&(a, b, c), _) in q.terms() {
        let bound =
            a as usize * degs[0] + b as usize * degs[1] + c as usize * degs[2];
        if bound > COMPOSITION_DEGREE_CAP {
            return Err(Error::DegreeCap {
                degree: bound,
                cap: COMPOSITION_DEGREE_CAP,
            });
        }
        max_pow[0] = max_pow[0].max(a);
        max_pow[1] = max_pow[1].max(b);
        max_pow[2] = max_pow[2].max(c);
    }
    // Power tables per component.
    let mut pows: Vec<Vec<BivarPoly<T>>> = Vec::with_capacity(3);
    for (idx, comp) in components.iter().enumerate() {
        let mut table = vec![BivarPoly::from_terms([((0, 0), Complex::<T>::one())])];
        for k in 1..=max_pow[idx] as usize {
            let next = table[k - 1].mul(comp);
            table.push(next);
        }
        pows.push(table);
    }
    let mut out = BivarPoly::new();
    for (&(a, b, c), &v) in q.terms() {
        let term = pows[0][a as usize]
            .mul(&pows[1][b as usize])
            .mul(&pows[2][c as usize])
            .scale(v);
        out = out.add(&term);
    }
    Ok(out)
}

/// Which variable a line restriction fixes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Var {
    Z,
    W,
}

/// Zeros of p restricted to the line {var = value}, inside the disk of the
/// free variable.
pub fn line_zero<T: Scalar>(
    p: &BivarPoly<T>,
    var: Var,
    value: Complex<T>,
    disk: &Disk<T>,
) -> Result<Vec<Complex<T>>> {
    let restricted = match var {
        Var::W => p.z_slice(value),
        Var::Z => p.w_slice(value),
    };
    if restricted.is_zero() {
        return Err(Error::IdenticallyZero);
    }
    if restricted.degree() == Some(0) {
        return Ok(Vec::new());
    }
    let rts = polycalc::roots(&restricted, T::c(polycalc::DEFAULT_ROOT_TOL))?;
    Ok(rts
        .into_iter()
        .filter(|&r| disk.contains_loose(r, T::c(1e-9)))
        .collect())
}

/// Certify or refute V(F) ∩ V(G) ≠ ∅ inside the polydisk H.
///
/// Positive evidence comes from winding-number zero counts of the branch
/// pullbacks in `t_disk` and from Newton-polished witnesses; `Empty` needs
/// both a certified zero count of 0 on every branch and a near-coincidence
/// scan that comes up empty. Anything blocked by truncation or boundary
/// zeros is `Inconclusive`.
pub fn certify<T: Scalar>(
    f: &BivarPoly<T>,
    g: &BivarPoly<T>,
    h: &Polydisk<T>,
    t_disk: &Disk<T>,
) -> Result<IntersectionVerdict<T>> {
    for curve in [f, g] {
        match projection::check_good(curve, h, 24)? {
            projection::GoodCheck::Good => {}
            projection::GoodCheck::Bad(wit) => {
                return Err(Error::NotGood {
                    z: format!("{}", wit.z),
                    w: wit
                        .w
                        .map(|w| format!("{w}"))
                        .unwrap_or_else(|| "degenerate".into()),
                });
            }
        }
    }

    let hypothesis_report = HypothesisReport {
        nnc_count_w: nnc_count_tolerant(g, &h.base)?,
        d_h_estimate: {
            let sf = SampledCurve::from_curve(f, &h.base, 12)?;
            let sg = SampledCurve::from_curve(g, &h.base, 12)?;
            hausdorff(&sf, &sg)
        },
    };

    let mut witnesses: Vec<(Complex<T>, Complex<T>)> = Vec::new();
    let mut residuals: Vec<(T, T)> = Vec::new();
    let mut zero_count = 0usize;
    let mut inconclusive = false;

    // Branch pullbacks at the expansion centers.
    let centers = expansion_centers(f, h)?;
    if centers.is_empty() {
        inconclusive = true;
    }
    for center in centers {
        let branches = match puiseux::puiseux_expand(f, center, CERTIFY_ORDER) {
            Ok(b) => b,
            Err(Error::NonSquareFree) => return Err(Error::NonSquareFree),
            Err(_) => {
                inconclusive = true;
                continue;
            }
        };
        for branch in &branches {
            let ft = pullback(branch, g);
            let g_scale = g.max_coeff_norm().max(T::one());
            if ft.max_coeff_norm() <= g_scale * T::c(1e-12) {
                // The branch lies inside {G = 0}: the center itself is a
                // common point.
                accept_witness(f, g, h, center.0, center.1, &mut witnesses, &mut residuals);
                continue;
            }
            match truncation_guard(branch, g, &ft, t_disk) {
                Ok(()) => {}
                Err(_) => {
                    inconclusive = true;
                    continue;
                }
            }
            match polycalc::count_zeros_in_disk(&ft, t_disk, polycalc::DEFAULT_WINDING_SAMPLES) {
                Ok(0) => {}
                Ok(n) => {
                    zero_count += n;
                    let mut found = false;
                    if let Ok(rts) = polycalc::roots(&ft, T::c(polycalc::DEFAULT_ROOT_TOL)) {
                        for t in rts {
                            if !t_disk.contains_loose(t, T::c(1e-9)) {
                                continue;
                            }
                            let (z, w) = branch.eval(t);
                            if accept_witness(f, g, h, z, w, &mut witnesses, &mut residuals) {
                                found = true;
                            }
                        }
                    }
                    if !found {
                        inconclusive = true;
                    }
                }
                Err(_) => {
                    inconclusive = true;
                }
            }
        }
    }

    // Independent near-coincidence scan over the base disk.
    let scan = coincidence_scan(f, g, h, &mut witnesses, &mut residuals)?;

    let status = if !witnesses.is_empty() {
        Status::Intersects
    } else if !inconclusive && zero_count == 0 && !scan.near_coincidence {
        Status::Empty
    } else {
        Status::Inconclusive
    };
    Ok(IntersectionVerdict {
        status,
        witnesses,
        zero_count,
        residuals,
        hypothesis_report,
    })
}

/// Count of non-normal-crossing discriminant points, treating spurious
/// points as normal and unclassifiable ones conservatively as non-normal.
fn nnc_count_tolerant<T: Scalar>(g: &BivarPoly<T>, base: &Disk<T>) -> Result<usize> {
    let points = projection::discriminant_points(g, base)?;
    let locations: Vec<Complex<T>> = points.iter().map(|p| p.0).collect();
    let mut count = 0;
    for (idx, &(q, _)) in points.iter().enumerate() {
        let probe = probe_radius(&locations, idx, base);
        match projection::classify_crossing(g, q, probe) {
            Ok(Crossing::NonNormalCrossing) => count += 1,
            Ok(Crossing::NormalCrossing) => {}
            Err(Error::ProbeFalsePositive) => {}
            Err(_) => count += 1,
        }
    }
    Ok(count)
}

fn probe_radius<T: Scalar>(locations: &[Complex<T>], idx: usize, base: &Disk<T>) -> T {
    let p = locations[idx];
    let mut best = (base.radius - (p - base.center).norm()).max(T::c(1e-9));
    for (j, &q) in locations.iter().enumerate() {
        if j != idx {
            best = best.min((p - q).norm());
        }
    }
    best * T::c(0.5)
}

/// Centers at which F is expanded: repeated fiber values over discriminant
/// points inside the base; falls back to the fiber over the base center
/// when F has no singular structure in the base.
fn expansion_centers<T: Scalar>(
    f: &BivarPoly<T>,
    h: &Polydisk<T>,
) -> Result<Vec<(Complex<T>, Complex<T>)>> {
    let mut centers = Vec::new();
    let disc = projection::discriminant_points(f, &h.base)?;
    for (zd, _) in &disc {
        let slice = f.w_slice(*zd);
        let raw = polycalc::roots_clustered(&slice, T::c(polycalc::DEFAULT_ROOT_TOL), T::c(1e-12))?;
        for (w, k) in projection::cluster_resultant_roots(&slice, &raw) {
            if k >= 2 && h.vertical.contains_loose(w, T::c(1e-6)) {
                centers.push(polish_ramification_point(f, *zd, w));
            }
        }
    }
    if centers.is_empty() {
        match projection::fiber(f, h.base.center) {
            Ok(fb) => {
                let mut pts = fb.points().to_vec();
                pts.dedup();
                centers.extend(pts.into_iter().map(|w| (h.base.center, w)));
            }
            Err(Error::DegenerateSlice { .. }) => {}
            Err(e) => return Err(e),
        }
    }
    Ok(centers)
}

/// Newton polish on the system (F = 0, ∂F/∂w = 0), which vanishes at every
/// simple ramification point. Falls back to the input when polishing does
/// not improve the residual (e.g. at cusps, where the system is singular
/// but the input is already accurate).
fn polish_ramification_point<T: Scalar>(
    f: &BivarPoly<T>,
    z0: Complex<T>,
    w0: Complex<T>,
) -> (Complex<T>, Complex<T>) {
    let fw = f.deriv_w();
    let (fz, fwz, fww) = (f.deriv_z(), fw.deriv_z(), fw.deriv_w());
    let residual =
        |z: Complex<T>, w: Complex<T>| f.eval(z, w).norm() + fw.eval(z, w).norm();
    let mut z = z0;
    let mut w = w0;
    for _ in 0..30 {
        let fv = f.eval(z, w);
        let gv = fw.eval(z, w);
        let a = fz.eval(z, w);
        let b = fw.eval(z, w);
        let c = fwz.eval(z, w);
        let d = fww.eval(z, w);
        let det = a * d - b * c;
        if det.norm() <= T::c(1e-250) {
            break;
        }
        let dz = (fv * d - gv * b) / det;
        let dw = (a * gv - c * fv) / det;
        z = z - dz;
        w = w - dw;
        if dz.norm() + dw.norm() <= (T::one() + z.norm() + w.norm()) * T::c(1e-15) {
            break;
        }
    }
    let drift = (z - z0).norm() + (w - w0).norm();
    if residual(z, w) < residual(z0, w0) && drift <= T::c(1e-2) {
        (z, w)
    } else {
        (z0, w0)
    }
}

/// Guard against the truncated series tail altering the winding count:
/// compares the pullback against one computed from a shorter series and
/// requires the discrepancy on the t-circle to stay below half the minimal
/// boundary modulus.
fn truncation_guard<T: Scalar>(
    branch: &PuiseuxParam<T>,
    g: &BivarPoly<T>,
    ft: &CPoly<T>,
    t_disk: &Disk<T>,
) -> Result<()> {
    let order = branch.truncation_order;
    if order < 4 {
        return Ok(());
    }
    let mut shorter = branch.clone();
    shorter.series = shorter.series.truncate(order.saturating_sub(1));
    shorter.truncation_order = order - 2;
    let ft_short = pullback(&shorter, g);
    let diff = ft.sub(&ft_short);
    let samples = 256;
    let tau = T::c(2.0) * T::PI();
    let mut tail = T::zero();
    let mut boundary_min = T::infinity();
    for k in 0..samples {
        let angle = tau * T::from_usize(k).unwrap() / T::from_usize(samples).unwrap();
        let t = t_disk.boundary_point(angle);
        tail = tail.max(diff.eval(t).norm());
        boundary_min = boundary_min.min(ft.eval(t).norm());
    }
    if tail * T::c(2.0) >= boundary_min {
        return Err(Error::TruncationDominates {
            tail: tail.to_f64().unwrap_or(f64::NAN),
            boundary_min: boundary_min.to_f64().unwrap_or(f64::NAN),
        });
    }
    Ok(())
}

struct ScanOutcome {
    near_coincidence: bool,
}

/// Brute-force pre-scan: samples both curves' fibers over a polar grid and
/// Newton-polishes near-coincidences into witnesses.
fn coincidence_scan<T: Scalar>(
    f: &BivarPoly<T>,
    g: &BivarPoly<T>,
    h: &Polydisk<T>,
    witnesses: &mut Vec<(Complex<T>, Complex<T>)>,
    residuals: &mut Vec<(T, T)>,
) -> Result<ScanOutcome> {
    let tau = T::c(2.0) * T::PI();
    let angular = SCAN_GRID * 4;
    let scale = T::one() + h.vertical.radius;
    let near_tol = scale * T::c(1e-6);
    let polish_tol = scale * T::c(0.05);
    let mut near = false;
    for i in 0..SCAN_GRID {
        let r = h.base.radius * T::from_usize(i).unwrap() / T::from_usize(SCAN_GRID - 1).unwrap();
        let angles = if i == 0 { 1 } else { angular };
        for k in 0..angles {
            let angle = tau * T::from_usize(k).unwrap() / T::from_usize(angles).unwrap();
            let z = h.base.center + Complex::from_polar(r, angle);
            let (fa, fb) = match (projection::fiber(f, z), projection::fiber(g, z)) {
                (Ok(a), Ok(b)) => (a, b),
                _ => continue,
            };
            for &wa in fa.points() {
                for &wb in fb.points() {
                    let d = (wa - wb).norm();
                    if d < near_tol {
                        near = true;
                    }
                    if d < polish_tol {
                        let mid = (wa + wb) * T::c(0.5);
                        if accept_witness(f, g, h, z, mid, witnesses, residuals) {
                            near = true;
                        }
                    }
                }
            }
        }
    }
    Ok(ScanOutcome {
        near_coincidence: near,
    })
}

/// Newton-polishes (z, w) on the system F = G = 0 and records it as a
/// witness when the polished residuals pass and the point stays in range of
/// the existing witness list's dedup tolerance.
fn accept_witness<T: Scalar>(
    f: &BivarPoly<T>,
    g: &BivarPoly<T>,
    h: &Polydisk<T>,
    z0: Complex<T>,
    w0: Complex<T>,
    witnesses: &mut Vec<(Complex<T>, Complex<T>)>,
    residuals: &mut Vec<(T, T)>,
) -> bool {
    let (fz, fw) = (f.deriv_z(), f.deriv_w());
    let (gz, gw) = (g.deriv_z(), g.deriv_w());
    let mut z = z0;
    let mut w = w0;
    for _ in 0..50 {
        let fv = f.eval(z, w);
        let gv = g.eval(z, w);
        let a = fz.eval(z, w);
        let b = fw.eval(z, w);
        let c = gz.eval(z, w);
        let d = gw.eval(z, w);
        let det = a * d - b * c;
        if det.norm() <= T::c(1e-300) {
            break;
        }
        let dz = (fv * d - gv * b) / det;
        let dw = (a * gv - c * fv) / det;
        z = z - dz;
        w = w - dw;
        if dz.norm() + dw.norm() <= (T::one() + z.norm() + w.norm()) * T::c(1e-15) {
            break;
        }
    }
    let rf = f.eval(z, w).norm();
    let rg = g.eval(z, w).norm();
    let tol = T::c(WITNESS_RESIDUAL_TOL);
    if rf > tol || rg > tol {
        return false;
    }
    // Witnesses must lie inside the polydisk; polishing can walk out of it.
    if !h.base.contains_loose(z, T::c(1e-6)) || !h.vertical.contains_loose(w, T::c(1e-6)) {
        return false;
    }
    let dedup = T::c(1e-6);
    if witnesses
        .iter()
        .any(|&(wz, ww)| (wz - z).norm() + (ww - w).norm() <= dedup)
    {
        return true;
    }
    witnesses.push((z, w));
    residuals.push((rf, rg));
    true
}

/// One row of an ε-sweep: the parameter value and the certification outcome
/// (errors recorded, not fatal).
#[derive(Debug, Clone)]
pub struct SweepRow<T: Scalar> {
    pub epsilon: Complex<T>,
    pub outcome: Result<IntersectionVerdict<T>>,
}

/// Runs `certify` against F for each member of the family over the grid.
pub fn sweep<T: Scalar, Fam>(
    f: &BivarPoly<T>,
    family: Fam,
    grid: &[Complex<T>],
    h: &Polydisk<T>,
    t_disk: &Disk<T>,
) -> Vec<SweepRow<T>>
where
    Fam: Fn(Complex<T>) -> BivarPoly<T>,
{
    grid.iter()
        .map(|&eps| SweepRow {
            epsilon: eps,
            outcome: certify(f, &family(eps), h, t_disk),
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::cx;

    type B = BivarPoly<f64>;

    fn cusp() -> B {
        B::from_terms([((2, 0), cx(1.0, 0.0)), ((0, 3), cx(-1.0, 0.0))])
    }

    fn cusp_branch() -> PuiseuxParam<f64> {
        puiseux::puiseux_expand(&cusp(), (cx(0.0, 0.0), cx(0.0, 0.0)), 8)
            .unwrap()
            .remove(0)
    }

    fn shifted_cusp(e1: f64, e2: f64) -> B {
        cusp().shift(cx(-e1, 0.0), cx(-e2, 0.0))
    }

    fn good_h() -> Polydisk<f64> {
        Polydisk::new(Disk::new(cx(0.0, 0.0), 0.5), Disk::new(cx(0.0, 0.0), 1.0))
    }

    #[test]
    fn pullback_of_shifted_cusp_is_the_quartic() {
        let (e1, e2) = (0.01, 0.01);
        let ft = pullback(&cusp_branch(), &shifted_cusp(e1, e2));
        // -2 e1 t^3 + 3 e2 t^4 - 3 e2^2 t^2 + e1^2 + e2^3
        assert_eq!(ft.degree(), Some(4));
        assert!((ft.coeff(0) - cx(e1 * e1 + e2.powi(3), 0.0)).norm() < 1e-15);
        assert!((ft.coeff(2) - cx(-3.0 * e2 * e2, 0.0)).norm() < 1e-15);
        assert!((ft.coeff(3) - cx(-2.0 * e1, 0.0)).norm() < 1e-15);
        assert!((ft.coeff(4) - cx(3.0 * e2, 0.0)).norm() < 1e-15);
        assert!(ft.coeff(1).norm() < 1e-15);
        assert!(ft.coeff(5).norm() < 1e-15);
        assert!(ft.coeff(6).norm() < 1e-15, "t^6 terms must cancel exactly");
    }

    #[test]
    fn pullback_through_itself_vanishes() {
        let ft = pullback(&cusp_branch(), &cusp());
        assert!(ft.max_coeff_norm() < 1e-14, "{ft:?}");
    }

    #[test]
    fn pullback_of_lowered_cusp_is_constant() {
        let eps = 0.01;
        let g = cusp().sub(&B::from_terms([((0, 0), cx(eps, 0.0))]));
        let ft = pullback(&cusp_branch(), &g);
        assert_eq!(ft.degree(), Some(0));
        assert!((ft.coeff(0) - cx(-eps, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn certify_shifted_cusp_intersects() {
        let v = certify(
            &cusp(),
            &shifted_cusp(0.01, 0.01),
            &good_h(),
            &Disk::new(cx(0.0, 0.0), 1.0),
        )
        .unwrap();
        assert_eq!(v.status, Status::Intersects);
        assert_eq!(v.zero_count, 4);
        assert!(!v.witnesses.is_empty());
        for &(rf, rg) in &v.residuals {
            assert!(rf <= WITNESS_RESIDUAL_TOL && rg <= WITNESS_RESIDUAL_TOL);
        }
    }

    #[test]
    fn certify_lowered_cusp_is_empty() {
        let g = cusp().sub(&B::from_terms([((0, 0), cx(0.01, 0.0))]));
        let v = certify(&cusp(), &g, &good_h(), &Disk::new(cx(0.0, 0.0), 1.0)).unwrap();
        assert_eq!(v.status, Status::Empty);
        assert_eq!(v.zero_count, 0);
        assert!(v.witnesses.is_empty());
    }

    #[test]
    fn certify_identical_curve_intersects() {
        let v = certify(
            &cusp(),
            &cusp(),
            &good_h(),
            &Disk::new(cx(0.0, 0.0), 1.0),
        )
        .unwrap();
        assert_eq!(v.status, Status::Intersects);
        assert!((v.witnesses[0].0.norm() + v.witnesses[0].1.norm()) < 1e-6);
    }

    #[test]
    fn certify_rejects_bad_polydisk() {
        let h = Polydisk::new(Disk::new(cx(0.0, 0.0), 1.5), Disk::new(cx(0.0, 0.0), 0.5));
        let err = certify(&cusp(), &cusp(), &h, &Disk::new(cx(0.0, 0.0), 1.0)).unwrap_err();
        assert!(matches!(err, Error::NotGood { .. }));
    }

    #[test]
    fn pullback_map_example() {
        // g = (z^2, w^3 + z^3, w), Q = a^3 - (b - c^3)^2
        let g1 = B::from_terms([((2, 0), cx(1.0, 0.0))]);
        let g2 = B::from_terms([((0, 3), cx(1.0, 0.0)), ((3, 0), cx(1.0, 0.0))]);
        let g3 = B::from_terms([((0, 1), cx(1.0, 0.0))]);
        let q = TrivarPoly::from_terms([
            ((3, 0, 0), cx(1.0, 0.0)),
            ((0, 2, 0), cx(-1.0, 0.0)),
            ((0, 1, 3), cx(2.0, 0.0)),
            ((0, 0, 6), cx(-1.0, 0.0)),
        ]);
        let p = pullback_map(&[g1, g2, g3], &q).unwrap();
        // (z^2)^3 - (w^3 + z^3 - w^3)^2 = z^6 - z^6 = 0
        assert!(p.is_zero(), "{p:?}");
    }

    #[test]
    fn pullback_map_identity_embedding() {
        let g1 = B::from_terms([((1, 0), cx(1.0, 0.0))]);
        let g2 = B::from_terms([((0, 1), cx(1.0, 0.0))]);
        let g3 = B::new();
        let q = TrivarPoly::from_terms([((1, 0, 0), cx(1.0, 0.0))]);
        let p = pullback_map(&[g1.clone(), g2, g3], &q).unwrap();
        assert_eq!(p, g1);
    }

    #[test]
    fn pullback_map_degree_cap() {
        let g1 = B::from_terms([((4, 0), cx(1.0, 0.0))]);
        let g2 = B::from_terms([((0, 1), cx(1.0, 0.0))]);
        let g3 = B::new();
        let q = TrivarPoly::from_terms([((5, 0, 0), cx(1.0, 0.0))]);
        let err = pullback_map(&[g1, g2, g3], &q).unwrap_err();
        assert!(matches!(err, Error::DegreeCap { degree: 20, cap: 16 }));
    }

    #[test]
    fn line_zero_examples() {
        let disk = Disk::new(cx(0.0, 0.0), 1.0);
        let zs = line_zero(&cusp(), Var::W, cx(0.0, 0.0), &disk).unwrap();
        assert_eq!(zs.len(), 2);
        assert!(zs.iter().all(|z| z.norm() < 1e-12));

        // zw - 1 restricted to w = 0 is the constant -1
        let p = B::from_terms([((1, 1), cx(1.0, 0.0)), ((0, 0), cx(-1.0, 0.0))]);
        assert!(line_zero(&p, Var::W, cx(0.0, 0.0), &disk).unwrap().is_empty());

        // w * (w - z) restricted to w = 0 vanishes identically
        let p = B::from_terms([((0, 2), cx(1.0, 0.0)), ((1, 1), cx(-1.0, 0.0))]);
        assert!(matches!(
            line_zero(&p, Var::W, cx(0.0, 0.0), &disk),
            Err(Error::IdenticallyZero)
        ));
    }

    #[test]
    fn sweep_over_shift_family() {
        let grid = [cx(0.1, 0.0), cx(0.01, 0.0), cx(0.0, 0.0)];
        let rows = sweep(
            &cusp(),
            |e| shifted_cusp(e.re, e.re),
            &grid,
            &good_h(),
            &Disk::new(cx(0.0, 0.0), 1.0),
        );
        assert_eq!(rows.len(), 3);
        for row in &rows {
            let v = row.outcome.as_ref().unwrap();
            assert_eq!(v.status, Status::Intersects, "eps = {}", row.epsilon);
        }
    }
}
