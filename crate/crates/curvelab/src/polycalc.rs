//! Complex polynomial arithmetic: univariate and bivariate polynomials with
//! exact shape and approximate (floating) coefficients, Sylvester resultants,
//! simultaneous root finding, and argument-principle zero counting.

use std::collections::BTreeMap;

use num_complex::Complex;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::geom::Disk;
use crate::scalar::{lex_sort, Scalar};

/// Degree cap for resultant inputs. Sylvester determinants over doubles
/// degrade quickly past this.
pub const RESULTANT_DEGREE_CAP: usize = 16;

/// Default relative root tolerance.
pub const DEFAULT_ROOT_TOL: f64 = 1e-10;

/// Default clustering tolerance for repeated roots.
pub const DEFAULT_CLUSTER_TOL: f64 = 1e-7;

/// Default boundary sample count for winding numbers.
pub const DEFAULT_WINDING_SAMPLES: usize = 2048;

/// Boundary-zero safety factor: winding is refused when min |p| on the
/// boundary drops below this fraction of max |p|.
pub const BOUNDARY_ZERO_FACTOR: f64 = 1e-8;

const MAX_ABERTH_ITER: usize = 500;

// ---------------------------------------------------------------------------
// Univariate polynomials
// ---------------------------------------------------------------------------

/// Dense univariate polynomial over complex coefficients, index = degree.
///
/// The zero polynomial is the empty coefficient list; otherwise the trailing
/// (leading-degree) coefficient is nonzero.
#[derive(Debug, Clone, PartialEq)]
pub struct CPoly<T: Scalar> {
    coeffs: Vec<Complex<T>>,
}

impl<T: Scalar> CPoly<T> {
    pub fn new(mut coeffs: Vec<Complex<T>>) -> Self {
        while coeffs.last().map_or(false, |c| c.is_zero()) {
            coeffs.pop();
        }
        CPoly { coeffs }
    }

    pub fn zero() -> Self {
        CPoly { coeffs: Vec::new() }
    }

    pub fn constant(c: Complex<T>) -> Self {
        Self::new(vec![c])
    }

    pub fn monomial(degree: usize, c: Complex<T>) -> Self {
        let mut coeffs = vec![Complex::zero(); degree + 1];
        coeffs[degree] = c;
        Self::new(coeffs)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        if self.coeffs.is_empty() {
            None
        } else {
            Some(self.coeffs.len() - 1)
        }
    }

    pub fn coeffs(&self) -> &[Complex<T>] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> Complex<T> {
        self.coeffs.get(k).copied().unwrap_or_else(Complex::zero)
    }

    /// Horner evaluation.
    pub fn eval(&self, x: Complex<T>) -> Complex<T> {
        let mut acc = Complex::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn derivative(&self) -> CPoly<T> {
        if self.coeffs.len() <= 1 {
            return CPoly::zero();
        }
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(k, c)| c * T::from_usize(k).unwrap())
            .collect();
        CPoly::new(coeffs)
    }

    pub fn add(&self, other: &CPoly<T>) -> CPoly<T> {
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n).map(|k| self.coeff(k) + other.coeff(k)).collect();
        CPoly::new(coeffs)
    }

    pub fn sub(&self, other: &CPoly<T>) -> CPoly<T> {
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n).map(|k| self.coeff(k) - other.coeff(k)).collect();
        CPoly::new(coeffs)
    }

    pub fn neg(&self) -> CPoly<T> {
        CPoly::new(self.coeffs.iter().map(|c| -c).collect())
    }

    pub fn scale(&self, s: Complex<T>) -> CPoly<T> {
        CPoly::new(self.coeffs.iter().map(|c| c * s).collect())
    }

    pub fn mul(&self, other: &CPoly<T>) -> CPoly<T> {
        if self.is_zero() || other.is_zero() {
            return CPoly::zero();
        }
        let mut coeffs = vec![Complex::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                coeffs[i + j] = coeffs[i + j] + a * b;
            }
        }
        CPoly::new(coeffs)
    }

    /// Product truncated to degree < `cap`.
    pub fn mul_trunc(&self, other: &CPoly<T>, cap: usize) -> CPoly<T> {
        if self.is_zero() || other.is_zero() || cap == 0 {
            return CPoly::zero();
        }
        let n = (self.coeffs.len() + other.coeffs.len() - 1).min(cap);
        let mut coeffs = vec![Complex::zero(); n];
        for (i, a) in self.coeffs.iter().enumerate() {
            if i >= n {
                break;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if i + j >= n {
                    break;
                }
                coeffs[i + j] = coeffs[i + j] + a * b;
            }
        }
        CPoly::new(coeffs)
    }

    /// Drop coefficients of degree >= `cap`.
    pub fn truncate(&self, cap: usize) -> CPoly<T> {
        CPoly::new(self.coeffs.iter().take(cap).copied().collect())
    }

    pub fn max_coeff_norm(&self) -> T {
        self.coeffs
            .iter()
            .map(|c| c.norm())
            .fold(T::zero(), T::max)
    }

    /// Drop trailing coefficients below `rel_eps` times the largest
    /// coefficient magnitude. Interior coefficients are untouched.
    pub fn trim_relative(&self, rel_eps: T) -> CPoly<T> {
        let scale = self.max_coeff_norm();
        if scale.is_zero() {
            return CPoly::zero();
        }
        let threshold = scale * rel_eps;
        let mut coeffs = self.coeffs.clone();
        while coeffs.last().map_or(false, |c| c.norm() <= threshold) {
            coeffs.pop();
        }
        CPoly::new(coeffs)
    }

    /// Number of leading (low-order) coefficients that are exactly zero,
    /// i.e. the multiplicity of the root at the origin for exact input.
    fn exact_zero_valuation(&self) -> usize {
        self.coeffs.iter().take_while(|c| c.is_zero()).count()
    }
}

// ---------------------------------------------------------------------------
// Bivariate polynomials
// ---------------------------------------------------------------------------

/// Sparse bivariate polynomial: map (z-degree, w-degree) -> coefficient.
/// Zero coefficients are never stored.
#[derive(Debug, Clone, PartialEq)]
pub struct BivarPoly<T: Scalar> {
    terms: BTreeMap<(u32, u32), Complex<T>>,
}

impl<T: Scalar> BivarPoly<T> {
    pub fn new() -> Self {
        BivarPoly {
            terms: BTreeMap::new(),
        }
    }

    pub fn from_terms(terms: impl IntoIterator<Item = ((u32, u32), Complex<T>)>) -> Self {
        let mut p = Self::new();
        for ((i, j), c) in terms {
            p.add_term(i, j, c);
        }
        p
    }

    pub fn add_term(&mut self, i: u32, j: u32, c: Complex<T>) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry((i, j)).or_insert_with(Complex::zero);
        *entry = *entry + c;
        if entry.is_zero() {
            self.terms.remove(&(i, j));
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(u32, u32), &Complex<T>)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn z_degree(&self) -> usize {
        self.terms.keys().map(|&(i, _)| i as usize).max().unwrap_or(0)
    }

    pub fn w_degree(&self) -> usize {
        self.terms.keys().map(|&(_, j)| j as usize).max().unwrap_or(0)
    }

    pub fn max_coeff_norm(&self) -> T {
        self.terms
            .values()
            .map(|c| c.norm())
            .fold(T::zero(), T::max)
    }

    /// Coefficient of w^j, as a polynomial in z.
    pub fn w_coefficient(&self, j: u32) -> CPoly<T> {
        let deg_z = self.z_degree();
        let mut coeffs = vec![Complex::zero(); deg_z + 1];
        for (&(i, jj), &c) in &self.terms {
            if jj == j {
                coeffs[i as usize] = c;
            }
        }
        CPoly::new(coeffs)
    }

    /// Univariate slice w -> p(z0, w).
    pub fn w_slice(&self, z0: Complex<T>) -> CPoly<T> {
        let m = self.w_degree();
        let coeffs = (0..=m as u32)
            .map(|j| self.w_coefficient(j).eval(z0))
            .collect();
        CPoly::new(coeffs)
    }

    /// Univariate slice z -> p(z, w0).
    pub fn z_slice(&self, w0: Complex<T>) -> CPoly<T> {
        self.swap_vars().w_slice(w0)
    }

    /// Evaluation routed through `w_slice` so that
    /// `eval(z, w) == w_slice(z).eval(w)` holds exactly, by construction.
    pub fn eval(&self, z: Complex<T>, w: Complex<T>) -> Complex<T> {
        self.w_slice(z).eval(w)
    }

    pub fn deriv_w(&self) -> BivarPoly<T> {
        let mut out = BivarPoly::new();
        for (&(i, j), &c) in &self.terms {
            if j > 0 {
                out.add_term(i, j - 1, c * T::from_u32(j).unwrap());
            }
        }
        out
    }

    pub fn deriv_z(&self) -> BivarPoly<T> {
        let mut out = BivarPoly::new();
        for (&(i, j), &c) in &self.terms {
            if i > 0 {
                out.add_term(i - 1, j, c * T::from_u32(i).unwrap());
            }
        }
        out
    }

    pub fn swap_vars(&self) -> BivarPoly<T> {
        BivarPoly::from_terms(self.terms.iter().map(|(&(i, j), &c)| ((j, i), c)))
    }

    pub fn add(&self, other: &BivarPoly<T>) -> BivarPoly<T> {
        let mut out = self.clone();
        for (&(i, j), &c) in &other.terms {
            out.add_term(i, j, c);
        }
        out
    }

    pub fn sub(&self, other: &BivarPoly<T>) -> BivarPoly<T> {
        let mut out = self.clone();
        for (&(i, j), &c) in &other.terms {
            out.add_term(i, j, -c);
        }
        out
    }

    pub fn scale(&self, s: Complex<T>) -> BivarPoly<T> {
        BivarPoly::from_terms(self.terms.iter().map(|(&k, &c)| (k, c * s)))
    }

    pub fn mul(&self, other: &BivarPoly<T>) -> BivarPoly<T> {
        let mut out = BivarPoly::new();
        for (&(i1, j1), &c1) in &self.terms {
            for (&(i2, j2), &c2) in &other.terms {
                out.add_term(i1 + i2, j1 + j2, c1 * c2);
            }
        }
        out
    }

    pub fn pow(&self, n: u32) -> BivarPoly<T> {
        let mut out = BivarPoly::from_terms([((0, 0), Complex::one())]);
        for _ in 0..n {
            out = out.mul(self);
        }
        out
    }

    /// Taylor shift: returns q with q(z, w) = p(z + a, w + b).
    pub fn shift(&self, a: Complex<T>, b: Complex<T>) -> BivarPoly<T> {
        let mut out = BivarPoly::new();
        for (&(i, j), &c) in &self.terms {
            // (z + a)^i (w + b)^j expanded with binomial coefficients.
            let bin_i = binomial_row::<T>(i);
            let bin_j = binomial_row::<T>(j);
            let mut a_pow = vec![Complex::<T>::one(); i as usize + 1];
            for k in 1..=i as usize {
                a_pow[k] = a_pow[k - 1] * a;
            }
            let mut b_pow = vec![Complex::<T>::one(); j as usize + 1];
            for k in 1..=j as usize {
                b_pow[k] = b_pow[k - 1] * b;
            }
            for ii in 0..=i {
                for jj in 0..=j {
                    let coeff = c
                        * bin_i[ii as usize]
                        * bin_j[jj as usize]
                        * a_pow[(i - ii) as usize]
                        * b_pow[(j - jj) as usize];
                    out.add_term(ii, jj, coeff);
                }
            }
        }
        out
    }

    /// Drop terms with |coeff| <= rel_eps * max |coeff|.
    pub fn prune_relative(&self, rel_eps: T) -> BivarPoly<T> {
        let scale = self.max_coeff_norm();
        if scale.is_zero() {
            return BivarPoly::new();
        }
        let threshold = scale * rel_eps;
        BivarPoly::from_terms(
            self.terms
                .iter()
                .filter(|(_, c)| c.norm() > threshold)
                .map(|(&k, &c)| (k, c)),
        )
    }
}

impl<T: Scalar> Default for BivarPoly<T> {
    fn default() -> Self {
        Self::new()
    }
}

pub(crate) fn binomial_row<T: Scalar>(n: u32) -> Vec<T> {
    let mut row = vec![T::one()];
    for k in 1..=n {
        let prev = row[(k - 1) as usize];
        row.push(prev * T::from_u32(n - k + 1).unwrap() / T::from_u32(k).unwrap());
    }
    row
}

// ---------------------------------------------------------------------------
// Root finding (Aberth–Ehrlich simultaneous iteration)
// ---------------------------------------------------------------------------

/// All roots of `p`, with multiplicity, clustered within `cluster_tol` and
/// sorted lexicographically by (real, imaginary).
///
/// `tol` is the relative convergence tolerance; each returned root satisfies
/// |p(r)| / (1 + |r|)^deg <= tol * max|coeff|.
pub fn roots<T: Scalar>(p: &CPoly<T>, tol: T) -> Result<Vec<Complex<T>>> {
    roots_clustered(p, tol, T::c(DEFAULT_CLUSTER_TOL))
}

pub fn roots_clustered<T: Scalar>(
    p: &CPoly<T>,
    tol: T,
    cluster_tol: T,
) -> Result<Vec<Complex<T>>> {
    let mut rts = raw_roots(p, tol, None)?;
    rts = cluster_to_centroids(&rts, cluster_tol);
    lex_sort(&mut rts);
    Ok(rts)
}

/// Roots with warm-start guesses (one per root of the deflated polynomial).
/// Used by path tracking where the previous fiber is an excellent guess.
pub(crate) fn roots_guess<T: Scalar>(
    p: &CPoly<T>,
    tol: T,
    guesses: &[Complex<T>],
) -> Result<Vec<Complex<T>>> {
    raw_roots(p, tol, Some(guesses))
}

fn raw_roots<T: Scalar>(
    p: &CPoly<T>,
    tol: T,
    guesses: Option<&[Complex<T>]>,
) -> Result<Vec<Complex<T>>> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    // Exact zeros at the origin are peeled off before iterating.
    let val = p.exact_zero_valuation();
    let reduced = CPoly::new(p.coeffs[val..].to_vec());
    let mut out = vec![Complex::zero(); val];

    let deg = reduced.degree().unwrap();
    match deg {
        0 => {}
        1 => out.push(-reduced.coeff(0) / reduced.coeff(1)),
        2 => out.extend(quadratic_roots(&reduced)),
        _ => out.extend(aberth(&reduced, tol, guesses)?),
    }
    Ok(out)
}

fn quadratic_roots<T: Scalar>(p: &CPoly<T>) -> [Complex<T>; 2] {
    let (a, b, c) = (p.coeff(2), p.coeff(1), p.coeff(0));
    let disc = (b * b - a * c * T::c(4.0)).sqrt();
    // Pick the sign that avoids cancellation in -b -+ disc.
    let s = if (b + disc).norm() >= (b - disc).norm() {
        b + disc
    } else {
        b - disc
    };
    if s.is_zero() {
        return [Complex::zero(), Complex::zero()];
    }
    let q = s * T::c(-0.5);
    [q / a, c / q]
}

fn aberth<T: Scalar>(
    p: &CPoly<T>,
    tol: T,
    guesses: Option<&[Complex<T>]>,
) -> Result<Vec<Complex<T>>> {
    let deg = p.degree().unwrap();
    let lead = p.coeff(deg);
    let monic: Vec<Complex<T>> = p.coeffs().iter().map(|c| c / lead).collect();
    let monic = CPoly::new(monic);
    let dmonic = monic.derivative();

    let mut z: Vec<Complex<T>> = match guesses {
        Some(g) if g.len() == deg => g.to_vec(),
        _ => initial_guesses(&monic),
    };

    let scale = p.max_coeff_norm();
    let mut worst_residual = T::infinity();
    for _iter in 0..MAX_ABERTH_ITER {
        let mut max_step = T::zero();
        for k in 0..deg {
            let pv = monic.eval(z[k]);
            let dv = dmonic.eval(z[k]);
            let newton = if dv.is_zero() { pv } else { pv / dv };
            let mut repulsion = Complex::<T>::zero();
            for j in 0..deg {
                if j != k {
                    let diff = z[k] - z[j];
                    if !diff.is_zero() {
                        repulsion = repulsion + diff.inv();
                    }
                }
            }
            let denom = Complex::<T>::one() - newton * repulsion;
            let correction = if denom.is_zero() { newton } else { newton / denom };
            z[k] = z[k] - correction;
            let rel = correction.norm() / (T::one() + z[k].norm());
            max_step = max_step.max(rel);
        }
        if max_step <= tol {
            break;
        }
        // Linear convergence toward multiple roots stalls the step size;
        // the residual gate below decides acceptance in that case.
        worst_residual = max_step;
    }

    let mut worst = T::zero();
    for &r in &z {
        let denom = (T::one() + r.norm()).powi(p.degree().unwrap() as i32);
        let residual = p.eval(r).norm() / denom;
        worst = worst.max(residual);
    }
    if worst > tol * scale.max(T::one()) {
        return Err(Error::NoConvergence {
            max_iter: MAX_ABERTH_ITER,
            residual: worst.to_f64().unwrap_or(f64::NAN),
        });
    }
    let _ = worst_residual;
    Ok(z)
}

fn initial_guesses<T: Scalar>(monic: &CPoly<T>) -> Vec<Complex<T>> {
    let deg = monic.degree().unwrap();
    // Fujiwara-style radius bound on the root moduli.
    let mut radius = T::zero();
    for k in 0..deg {
        let c = monic.coeff(k).norm();
        if c > T::zero() {
            let r = c.powf(T::one() / T::from_usize(deg - k).unwrap());
            radius = radius.max(r);
        }
    }
    radius = (radius * T::c(2.0)).max(T::c(0.5));
    let offset = T::c(0.376); // irrational-ish phase so guesses avoid symmetry axes
    (0..deg)
        .map(|k| {
            let angle = T::c(2.0) * T::PI() * (T::from_usize(k).unwrap() + offset)
                / T::from_usize(deg).unwrap();
            Complex::from_polar(radius, angle)
        })
        .collect()
}

/// Single-linkage clustering; each cluster is replaced by its centroid
/// repeated with the cluster's cardinality.
pub fn cluster_to_centroids<T: Scalar>(points: &[Complex<T>], tol: T) -> Vec<Complex<T>> {
    let n = points.len();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut Vec<usize>, i: usize) -> usize {
        if parent[i] != i {
            let r = find(parent, parent[i]);
            parent[i] = r;
        }
        parent[i]
    }
    for i in 0..n {
        for j in (i + 1)..n {
            if (points[i] - points[j]).norm() <= tol {
                let (ri, rj) = (find(&mut parent, i), find(&mut parent, j));
                if ri != rj {
                    parent[ri] = rj;
                }
            }
        }
    }
    let mut groups: BTreeMap<usize, Vec<Complex<T>>> = BTreeMap::new();
    for i in 0..n {
        let r = find(&mut parent, i);
        groups.entry(r).or_default().push(points[i]);
    }
    let mut out = Vec::with_capacity(n);
    for members in groups.values() {
        let mut centroid = Complex::<T>::zero();
        for &m in members {
            centroid = centroid + m;
        }
        centroid = centroid / T::from_usize(members.len()).unwrap();
        for _ in members {
            out.push(centroid);
        }
    }
    out
}

// ---------------------------------------------------------------------------
// Sylvester resultant
// ---------------------------------------------------------------------------

/// Sylvester resultant of `p` and `q` eliminating w, as a polynomial in z.
///
/// Computed by evaluation at scaled roots of unity and unitary inverse DFT;
/// each sample is a Sylvester determinant over complex doubles with partial
/// pivoting. Trailing coefficients below 1e-12 of the largest are trimmed.
pub fn resultant_w<T: Scalar>(p: &BivarPoly<T>, q: &BivarPoly<T>) -> Result<CPoly<T>> {
    let m = p.w_degree();
    let n = q.w_degree();
    if m == 0 || n == 0 {
        return Err(Error::ZeroWDegree);
    }
    for poly in [p, q] {
        for cap in [poly.z_degree(), poly.w_degree()] {
            if cap > RESULTANT_DEGREE_CAP {
                return Err(Error::DegreeTooHigh {
                    degree: cap,
                    cap: RESULTANT_DEGREE_CAP,
                });
            }
        }
    }

    // deg_z Res <= deg_w(p) deg_z(q) + deg_w(q) deg_z(p)
    let bound = m * q.z_degree() + n * p.z_degree();
    let samples = bound + 1;

    let p_cols: Vec<CPoly<T>> = (0..=m as u32).map(|j| p.w_coefficient(j)).collect();
    let q_cols: Vec<CPoly<T>> = (0..=n as u32).map(|j| q.w_coefficient(j)).collect();

    let tau = T::c(2.0) * T::PI();
    let mut values = Vec::with_capacity(samples);
    for k in 0..samples {
        let angle = tau * T::from_usize(k).unwrap() / T::from_usize(samples).unwrap();
        let z = Complex::from_polar(T::one(), angle);
        let pc: Vec<Complex<T>> = p_cols.iter().map(|c| c.eval(z)).collect();
        let qc: Vec<Complex<T>> = q_cols.iter().map(|c| c.eval(z)).collect();
        values.push(sylvester_det(&pc, &qc));
    }

    // Inverse DFT on the unit circle.
    let nn = T::from_usize(samples).unwrap();
    let mut coeffs = Vec::with_capacity(samples);
    for j in 0..samples {
        let mut acc = Complex::<T>::zero();
        for (k, v) in values.iter().enumerate() {
            let angle = -tau * T::from_usize(k * j % samples).unwrap() / nn;
            acc = acc + v * Complex::from_polar(T::one(), angle);
        }
        coeffs.push(acc / nn);
    }
    Ok(CPoly::new(coeffs).trim_relative(T::c(1e-12)))
}

/// Sylvester determinant for coefficient vectors (ascending degree) of two
/// univariate polynomials, using the declared degrees `len - 1`.
fn sylvester_det<T: Scalar>(p: &[Complex<T>], q: &[Complex<T>]) -> Complex<T> {
    let m = p.len() - 1;
    let n = q.len() - 1;
    let size = m + n;
    let mut a = vec![vec![Complex::<T>::zero(); size]; size];
    for row in 0..n {
        for (k, &c) in p.iter().enumerate() {
            a[row][row + m - k] = c;
        }
    }
    for row in 0..m {
        for (k, &c) in q.iter().enumerate() {
            a[n + row][row + n - k] = c;
        }
    }
    det_lu(&mut a)
}

/// Determinant by LU with partial pivoting.
fn det_lu<T: Scalar>(a: &mut [Vec<Complex<T>>]) -> Complex<T> {
    let n = a.len();
    let mut det = Complex::<T>::one();
    for col in 0..n {
        let mut pivot = col;
        let mut best = a[col][col].norm();
        for row in (col + 1)..n {
            let v = a[row][col].norm();
            if v > best {
                best = v;
                pivot = row;
            }
        }
        if best.is_zero() {
            return Complex::zero();
        }
        if pivot != col {
            a.swap(pivot, col);
            det = -det;
        }
        det = det * a[col][col];
        for row in (col + 1)..n {
            let factor = a[row][col] / a[col][col];
            if factor.is_zero() {
                continue;
            }
            for k in col..n {
                let sub = factor * a[col][k];
                a[row][k] = a[row][k] - sub;
            }
        }
    }
    det
}

// ---------------------------------------------------------------------------
// Argument-principle zero counting
// ---------------------------------------------------------------------------

/// Zeros of `p` inside `disk`, counted with multiplicity, by the winding
/// number of `p` along the boundary sampled at `samples` points.
pub fn count_zeros_in_disk<T: Scalar>(
    p: &CPoly<T>,
    disk: &Disk<T>,
    samples: usize,
) -> Result<usize> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    assert!(samples >= 8, "need at least 8 boundary samples");
    let tau = T::c(2.0) * T::PI();
    let mut values = Vec::with_capacity(samples);
    let mut min_abs = T::infinity();
    let mut max_abs = T::zero();
    for k in 0..samples {
        let angle = tau * T::from_usize(k).unwrap() / T::from_usize(samples).unwrap();
        let v = p.eval(disk.boundary_point(angle));
        min_abs = min_abs.min(v.norm());
        max_abs = max_abs.max(v.norm());
        values.push(v);
    }
    let threshold = max_abs * T::c(BOUNDARY_ZERO_FACTOR);
    if min_abs < threshold || max_abs.is_zero() {
        return Err(Error::BoundaryZero {
            min_abs: min_abs.to_f64().unwrap_or(f64::NAN),
            threshold: threshold.to_f64().unwrap_or(f64::NAN),
        });
    }
    let mut total = T::zero();
    for k in 0..samples {
        let ratio = values[(k + 1) % samples] / values[k];
        total = total + ratio.arg();
    }
    let winding = total / tau;
    let rounded = winding.round();
    if (winding - rounded).abs() > T::c(0.25) || rounded < T::zero() {
        return Err(Error::BoundaryZero {
            min_abs: min_abs.to_f64().unwrap_or(f64::NAN),
            threshold: threshold.to_f64().unwrap_or(f64::NAN),
        });
    }
    Ok(rounded.to_f64().unwrap() as usize)
}
