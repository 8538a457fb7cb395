//! Puiseux parametrization of curve branches at a singular point via the
//! Newton polygon: t ↦ (t^m, g(t)) per irreducible local branch.

use num_complex::Complex;
use num_rational::Ratio;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::polycalc::{self, BivarPoly, CPoly};
use crate::projection;
use crate::scalar::Scalar;

/// Default truncation order for Puiseux series.
pub const DEFAULT_ORDER: usize = 16;

/// Relative coefficient threshold below which shifted input terms count as
/// noise and are pruned before reading off the Newton polygon.
pub const SUPPORT_NOISE_REL: f64 = 1e-13;

const MAX_DEPTH: usize = 64;

/// One branch through the center: t ↦ (shift_z + t^m, shift_w + g(t)).
#[derive(Debug, Clone, PartialEq)]
pub struct PuiseuxParam<T: Scalar> {
    /// m, the local winding count of the branch over the base.
    pub ramification: usize,
    /// g(t), ascending powers of t, truncated at `truncation_order`.
    pub series: CPoly<T>,
    pub truncation_order: usize,
    /// The center (z0, w0) the expansion is based at.
    pub base_shift: (Complex<T>, Complex<T>),
}

impl<T: Scalar> PuiseuxParam<T> {
    pub fn eval(&self, t: Complex<T>) -> (Complex<T>, Complex<T>) {
        let z = self.base_shift.0 + t.powu(self.ramification as u32);
        let w = self.base_shift.1 + self.series.eval(t);
        (z, w)
    }
}

/// An edge of the lower Newton polygon. The slope is measured in the
/// (w-exponent, z-exponent) plane and is negative; the leading Puiseux
/// exponent of the branches on the edge is its negation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolygonEdge {
    pub slope: Ratio<i64>,
    /// Support monomials (z-exponent, w-exponent) lying on the edge.
    pub monomials: Vec<(u32, u32)>,
}

/// Lower-convex-hull edges of the support of F.
///
/// Requires F(0,0) = 0 and F divisible by neither z nor w; split such
/// factors off before calling.
pub fn newton_polygon<T: Scalar>(f: &BivarPoly<T>) -> Result<Vec<PolygonEdge>> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let support: Vec<(u32, u32)> = f.terms().map(|(&k, _)| k).collect();
    if support.contains(&(0, 0)) {
        return Err(Error::InvalidInput("F(0,0) must vanish".into()));
    }
    if support.len() == 1 {
        return Err(Error::TrivialPolygon);
    }
    if support.iter().all(|&(i, _)| i > 0) {
        return Err(Error::InvalidInput("F is divisible by z".into()));
    }
    if support.iter().all(|&(_, j)| j > 0) {
        return Err(Error::InvalidInput("F is divisible by w".into()));
    }
    Ok(lower_edges(&support))
}

/// Lower hull edges with negative slope, from the support of a polynomial
/// vanishing at the origin and divisible by neither axis variable.
fn lower_edges(support: &[(u32, u32)]) -> Vec<PolygonEdge> {
    // For each w-exponent keep the minimal z-exponent, then take the lower
    // hull in the (j, i) plane by monotone chain.
    let mut min_i: std::collections::BTreeMap<u32, u32> = std::collections::BTreeMap::new();
    for &(i, j) in support {
        min_i
            .entry(j)
            .and_modify(|v| *v = (*v).min(i))
            .or_insert(i);
    }
    let pts: Vec<(i64, i64)> = min_i.iter().map(|(&j, &i)| (j as i64, i as i64)).collect();
    let mut hull: Vec<(i64, i64)> = Vec::new();
    for &p in &pts {
        while hull.len() >= 2 {
            let a = hull[hull.len() - 2];
            let b = hull[hull.len() - 1];
            let cross = (b.0 - a.0) * (p.1 - a.1) - (b.1 - a.1) * (p.0 - a.0);
            if cross <= 0 {
                hull.pop();
            } else {
                break;
            }
        }
        hull.push(p);
    }
    let mut edges = Vec::new();
    for pair in hull.windows(2) {
        let (j1, i1) = pair[0];
        let (j2, i2) = pair[1];
        if i2 >= i1 {
            break; // slope no longer negative; branches stop here
        }
        let slope = Ratio::new(i2 - i1, j2 - j1);
        // Exponent mu = -slope = p/q; the edge carries the monomials with
        // minimal q*i + p*j.
        let (p, q) = (i1 - i2, j2 - j1);
        let level = q * i1 + p * j1;
        let mut monomials: Vec<(u32, u32)> = support
            .iter()
            .copied()
            .filter(|&(i, j)| q * i as i64 + p * j as i64 == level && j as i64 >= j1 && j as i64 <= j2)
            .collect();
        monomials.sort_by_key(|&(_, j)| j);
        edges.push(PolygonEdge { slope, monomials });
    }
    edges
}

/// All Puiseux branches of {F = 0} through `center`, each truncated at
/// `order`.
pub fn puiseux_expand<T: Scalar>(
    f: &BivarPoly<T>,
    center: (Complex<T>, Complex<T>),
    order: usize,
) -> Result<Vec<PuiseuxParam<T>>> {
    assert!(order >= 1);
    if f.w_degree() >= 2 {
        projection::resultant_with_w_derivative(f)?; // square-freeness gate
    }
    let mut shifted = f
        .shift(center.0, center.1)
        .prune_relative(T::c(SUPPORT_NOISE_REL));
    if shifted.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    // A constant term at rounding level means the center was computed
    // numerically; treat it as on the curve. A larger one is a caller error.
    let constant = shifted
        .terms()
        .find(|(&k, _)| k == (0, 0))
        .map(|(_, &c)| c.norm())
        .unwrap_or_else(T::zero);
    if constant > T::zero() {
        if constant > shifted.max_coeff_norm() * T::c(1e-10) {
            return Err(Error::InvalidInput("center is not on the curve".into()));
        }
        let mut cleaned = shifted.clone();
        cleaned.add_term(0, 0, -shifted.w_slice(Complex::zero()).coeff(0));
        shifted = cleaned;
    }
    if shifted.terms().all(|(&(i, _), _)| i > 0) {
        return Err(Error::InvalidInput(
            "curve has a vertical line component through the center".into(),
        ));
    }
    let branches = expand_core(&shifted, order, 0)?;
    let mut out: Vec<PuiseuxParam<T>> = branches
        .into_iter()
        .map(|(m, series)| PuiseuxParam {
            ramification: m,
            series: series.truncate(order + 1),
            truncation_order: order,
            base_shift: center,
        })
        .collect();
    out.sort_by(|a, b| {
        a.ramification
            .cmp(&b.ramification)
            .then_with(|| crate::scalar::lex_cmp(&a.series.coeff(0), &b.series.coeff(0)))
            .then_with(|| crate::scalar::lex_cmp(&a.series.coeff(1), &b.series.coeff(1)))
    });
    // Branches that agree to the truncation order have not separated yet.
    for a in 0..out.len() {
        for b in (a + 1)..out.len() {
            if out[a].ramification == out[b].ramification {
                let diff = out[a].series.sub(&out[b].series).max_coeff_norm();
                let scale = T::one() + out[a].series.max_coeff_norm();
                if diff <= scale * T::c(1e-9) {
                    return Err(Error::OrderTooSmall { order });
                }
            }
        }
    }
    Ok(out)
}

/// Max of |F(param(t))| over `samples` points on the circle |t| = radius.
pub fn param_residual<T: Scalar>(
    param: &PuiseuxParam<T>,
    f: &BivarPoly<T>,
    samples: usize,
    radius: T,
) -> T {
    assert!(samples >= 1);
    let tau = T::c(2.0) * T::PI();
    let mut worst = T::zero();
    for k in 0..samples {
        let angle = tau * T::from_usize(k).unwrap() / T::from_usize(samples).unwrap();
        let t = Complex::from_polar(radius, angle);
        let (z, w) = param.eval(t);
        worst = worst.max(f.eval(z, w).norm());
    }
    worst
}

/// Recursive Newton–Puiseux on a polynomial vanishing at the origin and not
/// divisible by z. Returns (ramification, series) pairs with series(0) = 0.
fn expand_core<T: Scalar>(
    f: &BivarPoly<T>,
    order: usize,
    depth: usize,
) -> Result<Vec<(usize, CPoly<T>)>> {
    if depth > MAX_DEPTH {
        return Err(Error::OrderTooSmall { order });
    }
    let mut out: Vec<(usize, CPoly<T>)> = Vec::new();
    let mut f = f.clone();

    // w-axis factor: the branch w = 0 itself.
    let wval = f.terms().map(|(&(_, j), _)| j).min().unwrap_or(0);
    if wval > 0 {
        for _ in 0..wval {
            out.push((1, CPoly::zero()));
        }
        f = BivarPoly::from_terms(f.terms().map(|(&(i, j), &c)| ((i, j - wval), c)));
    }
    if f.terms().any(|(&k, _)| k == (0, 0)) {
        // Remaining sheets stay away from w = 0; no further branches here.
        return Ok(out);
    }

    let support: Vec<(u32, u32)> = f.terms().map(|(&k, _)| k).collect();
    for edge in lower_edges(&support) {
        let p = edge.slope.numer().unsigned_abs() as u32;
        let q = edge.slope.denom().unsigned_abs() as u32;
        let j0 = edge.monomials.first().unwrap().1;
        // Edge polynomial in u = c^q; its nonzero roots give the leading
        // coefficients, one per conjugacy class of branches.
        let len = (edge.monomials.last().unwrap().1 - j0) / q + 1;
        let mut psi = vec![Complex::<T>::zero(); len as usize];
        for &(i, j) in &edge.monomials {
            psi[((j - j0) / q) as usize] = term_coeff(&f, i, j);
        }
        let psi = CPoly::new(psi);
        let rts = polycalc::roots(&psi, T::c(polycalc::DEFAULT_ROOT_TOL))?;
        for (u, mult) in group_roots(&rts) {
            let c = u.powf(T::one() / T::from_u32(q).unwrap());
            let f1 = substitute(&f, q, p, c, order);
            if mult == 1 {
                let s = solve_series(&f1, order)?;
                out.push((q as usize, attach_head(p as usize, c, &s, order)));
            } else {
                for (m_sub, s_sub) in expand_core(&f1, order, depth + 1)? {
                    let head = p as usize * m_sub;
                    out.push((q as usize * m_sub, attach_head(head, c, &s_sub, order)));
                }
            }
        }
    }
    Ok(out)
}

fn term_coeff<T: Scalar>(f: &BivarPoly<T>, i: u32, j: u32) -> Complex<T> {
    f.terms()
        .find(|(&k, _)| k == (i, j))
        .map(|(_, &c)| c)
        .unwrap_or_else(Complex::zero)
}

/// g(t) = t^head * (c + s(t)), truncated past `order`.
fn attach_head<T: Scalar>(head: usize, c: Complex<T>, s: &CPoly<T>, order: usize) -> CPoly<T> {
    let inner = CPoly::constant(c).add(s);
    let mut coeffs = vec![Complex::<T>::zero(); head];
    coeffs.extend_from_slice(inner.coeffs());
    CPoly::new(coeffs).truncate(order + 1)
}

/// Nonzero clustered roots grouped as (value, multiplicity). Cluster
/// centroids repeat bitwise, so exact grouping applies.
fn group_roots<T: Scalar>(rts: &[Complex<T>]) -> Vec<(Complex<T>, usize)> {
    let mut out: Vec<(Complex<T>, usize)> = Vec::new();
    for &r in rts {
        if r.is_zero() {
            continue;
        }
        match out.last_mut() {
            Some((v, k)) if *v == r => *k += 1,
            _ => out.push((r, 1)),
        }
    }
    out
}

/// f1(z1, w1) = f(z1^q, z1^p (c + w1)) / z1^N with N the minimal z1-order,
/// truncated past z1-degree `order` (deeper levels only stretch exponents).
fn substitute<T: Scalar>(
    f: &BivarPoly<T>,
    q: u32,
    p: u32,
    c: Complex<T>,
    order: usize,
) -> BivarPoly<T> {
    let n = f
        .terms()
        .map(|(&(i, j), _)| (q * i + p * j) as i64)
        .min()
        .unwrap();
    let mut out = BivarPoly::new();
    for (&(i, j), &a) in f.terms() {
        let e = (q * i + p * j) as i64 - n;
        if e > order as i64 {
            continue;
        }
        let bin = polycalc::binomial_row::<T>(j);
        let mut c_pow = vec![Complex::<T>::one(); j as usize + 1];
        for k in 1..=j as usize {
            c_pow[k] = c_pow[k - 1] * c;
        }
        for k in 0..=j {
            let coeff = a * bin[k as usize] * c_pow[(j - k) as usize];
            out.add_term(e as u32, k, coeff);
        }
    }
    out
}

/// Power-series solution s with f1(z, s(z)) = O(z^{order+1}), s(0) = 0,
/// assuming w = 0 is a simple root of f1(0, w). Newton iteration on
/// truncated series; the reciprocal is computed by series Newton as well.
fn solve_series<T: Scalar>(f1: &BivarPoly<T>, order: usize) -> Result<CPoly<T>> {
    let cap = order + 1;
    let fw = f1.deriv_w();
    let d0 = fw.eval(Complex::zero(), Complex::zero());
    let scale = f1.max_coeff_norm();
    if d0.norm() <= scale * T::c(1e-12) {
        // Multiple root slipped through the edge clustering.
        return Err(Error::OrderTooSmall { order });
    }
    let mut s = CPoly::zero();
    let iters = usize::BITS as usize - cap.leading_zeros() as usize + 2;
    for _ in 0..iters {
        let a = compose_w(f1, &s, cap);
        let b = compose_w(&fw, &s, cap);
        let binv = series_inverse(&b, cap)?;
        s = s.sub(&a.mul_trunc(&binv, cap));
    }
    let residual = compose_w(f1, &s, cap).max_coeff_norm();
    if residual > scale.max(T::one()) * T::c(1e-8) {
        return Err(Error::NoConvergence {
            max_iter: iters,
            residual: residual.to_f64().unwrap_or(f64::NAN),
        });
    }
    Ok(s)
}

/// f(z, s(z)) as a truncated series in z, by Horner over the w-coefficients.
fn compose_w<T: Scalar>(f: &BivarPoly<T>, s: &CPoly<T>, cap: usize) -> CPoly<T> {
    let m = f.w_degree();
    let mut acc = f.w_coefficient(m as u32);
    for j in (0..m).rev() {
        acc = acc.mul_trunc(s, cap).add(&f.w_coefficient(j as u32));
    }
    acc.truncate(cap)
}

/// Series reciprocal of b (b(0) != 0) to `cap` terms: v <- v(2 - bv).
fn series_inverse<T: Scalar>(b: &CPoly<T>, cap: usize) -> Result<CPoly<T>> {
    let b0 = b.coeff(0);
    if b0.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let mut v = CPoly::constant(b0.inv());
    let iters = usize::BITS as usize - cap.leading_zeros() as usize + 1;
    let two = CPoly::constant(Complex::<T>::new(T::c(2.0), T::zero()));
    for _ in 0..iters {
        let t = two.sub(&b.mul_trunc(&v, cap));
        v = v.mul_trunc(&t, cap);
    }
    Ok(v)
}
