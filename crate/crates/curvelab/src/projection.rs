//! The proper projection π(z, w) = z: good-neighborhood verification, fiber
//! extraction, discriminant loci, and normal-crossing classification.

use num_complex::Complex;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::geom::{Disk, Polydisk};
use crate::monodromy::{self, LoopSpec};
use crate::polycalc::{self, BivarPoly, CPoly};
use crate::scalar::{lex_cmp, lex_sort, Scalar};

/// Margin factor applied to the vertical radius in `check_good`: grazes of
/// the boundary report Bad rather than Good.
pub const GOOD_MARGIN_FACTOR: f64 = 1e-6;

/// Baseline absolute clustering tolerance for discriminant roots in z.
pub const DISCRIMINANT_CLUSTER_TOL: f64 = 1e-6;

/// Relative threshold below which a slice's leading coefficient counts as
/// vanished (degenerate fiber).
pub const DEGENERATE_LEAD_TOL: f64 = 1e-12;

/// Tolerance for two sheet values coinciding over a discriminant point.
pub const COINCIDENCE_TOL: f64 = 1e-5;

/// Assumed absolute noise floor of resultant coefficients, relative to the
/// largest coefficient. Drives the multiplicity-consistency clustering.
const RESULTANT_NOISE_REL: f64 = 1e-13;

/// An unordered fiber π⁻¹(z0): the w-values over a base point, counted with
/// multiplicity and stored in canonical (real, imaginary) order.
#[derive(Debug, Clone, PartialEq)]
pub struct Fiber<T: Scalar> {
    pub base_point: Complex<T>,
    points: Vec<Complex<T>>,
}

impl<T: Scalar> Fiber<T> {
    pub fn new(base_point: Complex<T>, mut points: Vec<Complex<T>>) -> Self {
        lex_sort(&mut points);
        Fiber { base_point, points }
    }

    pub fn points(&self) -> &[Complex<T>] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// Smallest pairwise distance, or +inf for fewer than two points.
    pub fn min_pairwise(&self) -> T {
        let mut best = T::infinity();
        for i in 0..self.points.len() {
            for j in (i + 1)..self.points.len() {
                best = best.min((self.points[i] - self.points[j]).norm());
            }
        }
        best
    }

    /// Number of distinct values at the given coincidence tolerance.
    /// Clusters repeat their centroid, so distinct values are exact.
    pub fn distinct_count(&self, tol: T) -> usize {
        let mut centroids = polycalc::cluster_to_centroids(&self.points, tol);
        lex_sort(&mut centroids);
        centroids.dedup();
        centroids.len()
    }
}

/// Crossing type of a discriminant point.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Crossing {
    /// Locally a union of smooth graphs over z that meet over the point.
    NormalCrossing,
    /// Anything else (cusps, higher ramification).
    NonNormalCrossing,
}

#[derive(Debug, Clone, PartialEq)]
pub struct DiscriminantPoint<T: Scalar> {
    pub location: Complex<T>,
    pub multiplicity: usize,
    pub crossing: Crossing,
}

#[derive(Debug, Clone, PartialEq)]
pub struct DiscriminantReport<T: Scalar> {
    pub points: Vec<DiscriminantPoint<T>>,
    /// Generic fiber cardinality m (the w-degree of the defining polynomial).
    pub sheet_count: usize,
}

/// Outcome of the good-neighborhood check.
#[derive(Debug, Clone, PartialEq)]
pub enum GoodCheck<T: Scalar> {
    Good,
    Bad(BadWitness<T>),
}

#[derive(Debug, Clone, PartialEq)]
pub struct BadWitness<T: Scalar> {
    pub z: Complex<T>,
    /// The escaping fiber point, when one exists; `None` when the slice
    /// degenerates (w-degree drops) at `z`.
    pub w: Option<Complex<T>>,
}

impl<T: Scalar> GoodCheck<T> {
    pub fn is_good(&self) -> bool {
        matches!(self, GoodCheck::Good)
    }
}

/// Verifies that `h` is a good neighborhood for the curve F = 0: every fiber
/// point over the closed base disk stays strictly inside the vertical disk.
///
/// Samples `boundary_samples`² points on a polar grid over the closed base
/// disk, including the boundary circle.
pub fn check_good<T: Scalar>(
    f: &BivarPoly<T>,
    h: &Polydisk<T>,
    boundary_samples: usize,
) -> Result<GoodCheck<T>> {
    if f.w_degree() == 0 {
        return Err(Error::ZeroWDegree);
    }
    assert!(boundary_samples >= 2);
    let margin = h.vertical.radius * T::c(GOOD_MARGIN_FACTOR);
    let limit = h.vertical.radius - margin;
    let tau = T::c(2.0) * T::PI();
    let n = boundary_samples;
    for i in 0..n {
        let r = h.base.radius * T::from_usize(i).unwrap() / T::from_usize(n - 1).unwrap();
        for k in 0..n {
            let angle = tau * T::from_usize(k).unwrap() / T::from_usize(n).unwrap();
            let z = h.base.center + Complex::from_polar(r, angle);
            match fiber(f, z) {
                Ok(fb) => {
                    for &w in fb.points() {
                        if (w - h.vertical.center).norm() >= limit {
                            return Ok(GoodCheck::Bad(BadWitness { z, w: Some(w) }));
                        }
                    }
                }
                Err(Error::DegenerateSlice { .. }) => {
                    return Ok(GoodCheck::Bad(BadWitness { z, w: None }));
                }
                Err(e) => return Err(e),
            }
            if i == 0 {
                break; // single point at the center radius
            }
        }
    }
    Ok(GoodCheck::Good)
}

/// The fiber over `z0`: all roots of the slice w -> F(z0, w), with
/// multiplicity, padded to the generic sheet count.
pub fn fiber<T: Scalar>(f: &BivarPoly<T>, z0: Complex<T>) -> Result<Fiber<T>> {
    let slice = f.w_slice(z0);
    if slice.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let m = f.w_degree();
    let lead = slice.coeff(m).norm();
    let scale = slice.max_coeff_norm();
    if lead <= scale * T::c(DEGENERATE_LEAD_TOL) {
        return Err(Error::DegenerateSlice {
            z: format!("{z0}"),
        });
    }
    let roots = polycalc::roots(&slice, T::c(polycalc::DEFAULT_ROOT_TOL))?;
    Ok(Fiber::new(z0, roots))
}

/// Discriminant locus of F inside `base`: roots of Res_w(F, ∂F/∂w) clustered
/// into (location, multiplicity) and classified by local monodromy.
pub fn discriminant<T: Scalar>(f: &BivarPoly<T>, base: &Disk<T>) -> Result<DiscriminantReport<T>> {
    let clusters = discriminant_points(f, base)?;
    let locations: Vec<Complex<T>> = clusters.iter().map(|c| c.0).collect();
    let mut points = Vec::with_capacity(clusters.len());
    for (idx, &(location, multiplicity)) in clusters.iter().enumerate() {
        let probe = probe_radius_for(&locations, idx, base);
        let crossing = classify_with_known_points(f, location, probe, &locations)?;
        points.push(DiscriminantPoint {
            location,
            multiplicity,
            crossing,
        });
    }
    Ok(DiscriminantReport {
        points,
        sheet_count: f.w_degree(),
    })
}

/// Clustered discriminant locations with multiplicities, without crossing
/// classification. Shared by `discriminant` and the drift metric.
pub fn discriminant_points<T: Scalar>(
    f: &BivarPoly<T>,
    base: &Disk<T>,
) -> Result<Vec<(Complex<T>, usize)>> {
    if f.w_degree() == 0 {
        return Err(Error::ZeroWDegree);
    }
    if f.w_degree() == 1 {
        return Ok(Vec::new()); // a single graph sheet has no discriminant
    }
    let res = resultant_with_w_derivative(f)?;
    let raw = polycalc::roots_clustered(&res, T::c(polycalc::DEFAULT_ROOT_TOL), T::c(1e-12))?;
    let mut clusters = cluster_resultant_roots(&res, &raw);
    clusters.retain(|(loc, _)| base.contains_loose(*loc, T::c(1e-9)));
    clusters.sort_by(|a, b| lex_cmp(&a.0, &b.0));
    Ok(clusters)
}

pub fn resultant_with_w_derivative<T: Scalar>(f: &BivarPoly<T>) -> Result<CPoly<T>> {
    if f.w_degree() == 0 {
        return Err(Error::ZeroWDegree);
    }
    let fw = f.deriv_w();
    let res = polycalc::resultant_w(f, &fw)?;
    // Scale the vanishing test by a Hadamard-style bound on the Sylvester
    // determinant, so that noise-level coefficients count as zero.
    let m = f.w_degree() as i32;
    let scale = f.max_coeff_norm().powi(m - 1) * fw.max_coeff_norm().powi(m);
    if res.is_zero() || res.max_coeff_norm() <= scale * T::c(1e-10) {
        return Err(Error::NonSquareFree);
    }
    Ok(res)
}

/// Default probe radius: half the distance to the nearest other discriminant
/// point, or half the distance to the base boundary when the point is unique.
fn probe_radius_for<T: Scalar>(locations: &[Complex<T>], idx: usize, base: &Disk<T>) -> T {
    let p = locations[idx];
    let to_boundary = base.radius - (p - base.center).norm();
    let mut best = to_boundary.max(T::c(1e-12));
    for (j, &q) in locations.iter().enumerate() {
        if j != idx {
            best = best.min((p - q).norm());
        }
    }
    best * T::c(0.5)
}

/// Classifies a discriminant point by running monodromy around a probe
/// circle: NormalCrossing iff the permutation is trivial and at least two
/// sheet values coincide over the point.
pub fn classify_crossing<T: Scalar>(
    f: &BivarPoly<T>,
    q: Complex<T>,
    probe_radius: T,
) -> Result<Crossing> {
    let res = resultant_with_w_derivative(f)?;
    let raw = polycalc::roots_clustered(&res, T::c(polycalc::DEFAULT_ROOT_TOL), T::c(1e-12))?;
    let clusters = cluster_resultant_roots(&res, &raw);
    let locations: Vec<Complex<T>> = clusters.iter().map(|c| c.0).collect();
    classify_with_known_points(f, q, probe_radius, &locations)
}

fn classify_with_known_points<T: Scalar>(
    f: &BivarPoly<T>,
    q: Complex<T>,
    probe_radius: T,
    discriminant_locations: &[Complex<T>],
) -> Result<Crossing> {
    for &other in discriminant_locations {
        let d = (other - q).norm();
        if d > T::c(DISCRIMINANT_CLUSTER_TOL) && d <= probe_radius {
            return Err(Error::ProbeTooLarge {
                probe: probe_radius.to_f64().unwrap_or(f64::NAN),
            });
        }
    }
    let spec = LoopSpec {
        center: q,
        radius: probe_radius,
        turns: 1,
        steps_per_turn: monodromy::DEFAULT_STEPS_PER_TURN,
    };
    let result = monodromy::track(f, &spec)?;
    let identity = result.is_identity();

    // Coincidence of sheet values over q itself.
    let slice = f.w_slice(q);
    let coincide = match polycalc::roots(&slice, T::c(polycalc::DEFAULT_ROOT_TOL)) {
        Ok(values) => {
            let scale = values.iter().map(|v| v.norm()).fold(T::one(), T::max);
            let tol = scale * T::c(COINCIDENCE_TOL);
            let mut min_pair = T::infinity();
            for i in 0..values.len() {
                for j in (i + 1)..values.len() {
                    min_pair = min_pair.min((values[i] - values[j]).norm());
                }
            }
            values.len() < f.w_degree() || min_pair <= tol
        }
        // Degenerate slices always count as coincident/degenerate sheets.
        Err(_) => true,
    };

    match (identity, coincide) {
        (true, true) => Ok(Crossing::NormalCrossing),
        (false, _) => Ok(Crossing::NonNormalCrossing),
        (true, false) => Err(Error::ProbeFalsePositive),
    }
}

// ---------------------------------------------------------------------------
// Multiplicity-consistent clustering of resultant roots
// ---------------------------------------------------------------------------

/// Groups numerically computed resultant roots into discriminant points with
/// multiplicities.
///
/// A k-fold root of a polynomial with coefficient noise eta splits into a
/// cluster of radius ~ eta^(1/k), far wider than any fixed tolerance. Roots
/// are therefore merged single-linkage into a dendrogram and a cluster of
/// size k is accepted when it is consistent with a k-fold root: its diameter
/// is within the perturbation-theoretic spread and the derivatives of order
/// < k nearly vanish at its centroid. Accepted clusters are refined by
/// Newton iteration on the (k-1)-th derivative.
pub(crate) fn cluster_resultant_roots<T: Scalar>(
    res: &CPoly<T>,
    roots: &[Complex<T>],
) -> Vec<(Complex<T>, usize)> {
    let n = roots.len();
    if n == 0 {
        return Vec::new();
    }
    let eta = res.max_coeff_norm() * T::c(RESULTANT_NOISE_REL);

    // Leaves, then greedy single-linkage merge of the closest pair.
    #[derive(Clone)]
    struct Node<T: Scalar> {
        members: Vec<Complex<T>>,
        children: Vec<usize>,
    }
    let mut nodes: Vec<Node<T>> = roots
        .iter()
        .map(|&r| Node {
            members: vec![r],
            children: Vec::new(),
        })
        .collect();
    let mut active: Vec<usize> = (0..n).collect();
    let merge_cap = T::c(0.05);
    while active.len() > 1 {
        let mut best = (T::infinity(), 0usize, 0usize);
        for a in 0..active.len() {
            for b in (a + 1)..active.len() {
                let d = cluster_gap(&nodes[active[a]].members, &nodes[active[b]].members);
                if d < best.0 {
                    best = (d, a, b);
                }
            }
        }
        if best.0 > merge_cap {
            break;
        }
        let (ia, ib) = (active[best.1], active[best.2]);
        let mut members = nodes[ia].members.clone();
        members.extend_from_slice(&nodes[ib].members);
        nodes.push(Node {
            members,
            children: vec![ia, ib],
        });
        let new_idx = nodes.len() - 1;
        active.remove(best.2);
        active.remove(best.1);
        active.push(new_idx);
    }

    // Top-down acceptance walk.
    let mut out = Vec::new();
    let mut stack = active;
    while let Some(idx) = stack.pop() {
        let node = nodes[idx].clone();
        if accept_cluster(res, &node.members, eta) {
            let k = node.members.len();
            let centroid = centroid(&node.members);
            let refined = refine_multiple_root(res, centroid, k, diameter(&node.members));
            out.push((refined, k));
        } else {
            stack.extend(node.children.iter().copied());
        }
    }
    out.sort_by(|a, b| lex_cmp(&a.0, &b.0));
    out
}

fn centroid<T: Scalar>(pts: &[Complex<T>]) -> Complex<T> {
    let mut c = Complex::<T>::zero();
    for &p in pts {
        c = c + p;
    }
    c / T::from_usize(pts.len()).unwrap()
}

fn diameter<T: Scalar>(pts: &[Complex<T>]) -> T {
    let mut d = T::zero();
    for i in 0..pts.len() {
        for j in (i + 1)..pts.len() {
            d = d.max((pts[i] - pts[j]).norm());
        }
    }
    d
}

fn cluster_gap<T: Scalar>(a: &[Complex<T>], b: &[Complex<T>]) -> T {
    let mut d = T::infinity();
    for &x in a {
        for &y in b {
            d = d.min((x - y).norm());
        }
    }
    d
}

fn accept_cluster<T: Scalar>(res: &CPoly<T>, members: &[Complex<T>], eta: T) -> bool {
    let k = members.len();
    if k == 1 {
        return true;
    }
    let diam = diameter(members);
    if diam <= T::c(DISCRIMINANT_CLUSTER_TOL) {
        return true;
    }
    let mu = centroid(members);
    // Taylor coefficients R^(j)(mu) / j! for j = 0..=k.
    let mut deriv = res.clone();
    let mut factorial = T::one();
    let mut taylor = Vec::with_capacity(k + 1);
    for j in 0..=k {
        if j > 0 {
            deriv = deriv.derivative();
            factorial = factorial * T::from_usize(j).unwrap();
        }
        taylor.push(deriv.eval(mu).norm() / factorial);
    }
    let lead = taylor[k];
    if lead <= eta {
        return true; // flat beyond k: no evidence against a k-fold root
    }
    let spread = (eta / lead).powf(T::one() / T::from_usize(k).unwrap());
    if diam > spread * T::c(4.0) {
        return false;
    }
    let kappa = eta * T::c(100.0);
    taylor[..k].iter().all(|&t| t <= kappa)
}

fn refine_multiple_root<T: Scalar>(
    res: &CPoly<T>,
    start: Complex<T>,
    multiplicity: usize,
    allowed_move: T,
) -> Complex<T> {
    let mut g = res.clone();
    for _ in 1..multiplicity {
        g = g.derivative();
    }
    let dg = g.derivative();
    if dg.is_zero() {
        return start;
    }
    let mut z = start;
    for _ in 0..60 {
        let d = dg.eval(z);
        if d.is_zero() {
            break;
        }
        let step = g.eval(z) / d;
        z = z - step;
        if step.norm() <= (T::one() + z.norm()) * T::c(1e-15) {
            break;
        }
    }
    let budget = allowed_move + T::c(DISCRIMINANT_CLUSTER_TOL);
    if (z - start).norm() <= budget.max(allowed_move * T::c(4.0)) {
        z
    } else {
        start
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::cx;

    type B = BivarPoly<f64>;

    fn cusp() -> B {
        B::from_terms([((2, 0), cx(1.0, 0.0)), ((0, 3), cx(-1.0, 0.0))])
    }

    fn two_lines() -> B {
        // w^2 - z^2
        B::from_terms([((0, 2), cx(1.0, 0.0)), ((2, 0), cx(-1.0, 0.0))])
    }

    #[test]
    fn fiber_at_one_is_cube_roots_of_unity() {
        let fb = fiber(&cusp(), cx(1.0, 0.0)).unwrap();
        assert_eq!(fb.len(), 3);
        for &w in fb.points() {
            assert!((w * w * w - cx(1.0, 0.0)).norm() < 1e-9);
        }
    }

    #[test]
    fn fiber_at_origin_is_triple_zero() {
        let fb = fiber(&cusp(), cx(0.0, 0.0)).unwrap();
        assert_eq!(fb.points(), &[cx(0.0, 0.0); 3]);
    }

    #[test]
    fn fiber_of_perturbed_curve() {
        // w^2 - z^3 + 0.01 at z = 0: w = ±0.1i
        let f = B::from_terms([
            ((0, 2), cx(1.0, 0.0)),
            ((3, 0), cx(-1.0, 0.0)),
            ((0, 0), cx(0.01, 0.0)),
        ]);
        let fb = fiber(&f, cx(0.0, 0.0)).unwrap();
        assert_eq!(fb.len(), 2);
        assert!((fb.points()[0] - cx(0.0, -0.1)).norm() < 1e-10);
        assert!((fb.points()[1] - cx(0.0, 0.1)).norm() < 1e-10);
    }

    #[test]
    fn good_check_cusp() {
        // max |w| over |z| <= 0.5 is 0.5^(2/3) ≈ 0.63 < 1
        let h = Polydisk::new(Disk::new(cx(0.0, 0.0), 0.5), Disk::new(cx(0.0, 0.0), 1.0));
        assert!(check_good(&cusp(), &h, 24).unwrap().is_good());

        // on |z| <= 1 the fibers reach |w| = 1 > 0.5
        let h = Polydisk::new(Disk::new(cx(0.0, 0.0), 1.0), Disk::new(cx(0.0, 0.0), 0.5));
        match check_good(&cusp(), &h, 24).unwrap() {
            GoodCheck::Bad(w) => {
                assert!(w.z.norm() > 0.3, "witness should be away from the center");
            }
            GoodCheck::Good => panic!("expected Bad"),
        }
    }

    #[test]
    fn good_check_graph() {
        let f = B::from_terms([((0, 1), cx(1.0, 0.0)), ((1, 0), cx(-1.0, 0.0))]); // w - z
        let h = Polydisk::new(Disk::new(cx(0.0, 0.0), 1.0), Disk::new(cx(0.0, 0.0), 2.0));
        assert!(check_good(&f, &h, 16).unwrap().is_good());
    }

    #[test]
    fn discriminant_of_cusp() {
        let rep = discriminant(&cusp(), &Disk::new(cx(0.0, 0.0), 0.9)).unwrap();
        assert_eq!(rep.sheet_count, 3);
        assert_eq!(rep.points.len(), 1);
        assert!(rep.points[0].location.norm() < 1e-7);
        assert_eq!(rep.points[0].crossing, Crossing::NonNormalCrossing);
    }

    #[test]
    fn discriminant_of_two_lines_is_normal_crossing() {
        let rep = discriminant(&two_lines(), &Disk::new(cx(0.0, 0.0), 0.9)).unwrap();
        assert_eq!(rep.sheet_count, 2);
        assert_eq!(rep.points.len(), 1);
        assert!(rep.points[0].location.norm() < 1e-7);
        assert_eq!(rep.points[0].crossing, Crossing::NormalCrossing);
    }

    #[test]
    fn discriminant_of_translated_cusp_splits() {
        // z^2 - w^3 - ε has discriminant {±sqrt(ε)}
        let eps = 0.01;
        let f = B::from_terms([
            ((2, 0), cx(1.0, 0.0)),
            ((0, 3), cx(-1.0, 0.0)),
            ((0, 0), cx(-eps, 0.0)),
        ]);
        let rep = discriminant(&f, &Disk::new(cx(0.0, 0.0), 0.9)).unwrap();
        assert_eq!(rep.points.len(), 2);
        let s = eps.sqrt();
        assert!((rep.points[0].location - cx(-s, 0.0)).norm() < 1e-7);
        assert!((rep.points[1].location - cx(s, 0.0)).norm() < 1e-7);
    }

    #[test]
    fn classify_examples() {
        assert_eq!(
            classify_crossing(&two_lines(), cx(0.0, 0.0), 0.3).unwrap(),
            Crossing::NormalCrossing
        );
        assert_eq!(
            classify_crossing(&cusp(), cx(0.0, 0.0), 0.3).unwrap(),
            Crossing::NonNormalCrossing
        );
        // w^2 - z^3: Puiseux exponent 3/2, monodromy a 2-cycle
        let f = B::from_terms([((0, 2), cx(1.0, 0.0)), ((3, 0), cx(-1.0, 0.0))]);
        assert_eq!(
            classify_crossing(&f, cx(0.0, 0.0), 0.3).unwrap(),
            Crossing::NonNormalCrossing
        );
    }

    #[test]
    fn non_square_free_is_rejected() {
        let f = two_lines();
        let sq = f.mul(&f);
        assert!(matches!(
            discriminant(&sq, &Disk::new(cx(0.0, 0.0), 0.9)),
            Err(Error::NonSquareFree)
        ));
    }
}
