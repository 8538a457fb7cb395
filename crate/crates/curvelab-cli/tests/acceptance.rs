//! End-to-end acceptance checks for the library and the CLI.
//!
//! Each criterion prints one pass/fail line; the test fails only after all
//! criteria have run, so the full scoreboard is always visible with
//! `cargo test --test acceptance -- --nocapture`.

use curvelab::geom::{Disk, Polydisk};
use curvelab::intersect::{self, Status};
use curvelab::monodromy::{self, LoopSpec};
use curvelab::multifun;
use curvelab::polycalc::BivarPoly;
use curvelab::projection::{self, check_good, Crossing, GoodCheck};
use curvelab::puiseux;
use curvelab::scalar::cx;
use num_complex::Complex;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::collections::BTreeMap;
use std::path::PathBuf;
use std::process::Command;
use std::time::Instant;

type C = Complex<f64>;
type B = BivarPoly<f64>;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn cusp() -> B {
    B::from_terms([((2, 0), cx(1.0, 0.0)), ((0, 3), cx(-1.0, 0.0))])
}

/// (z - e1)^2 - (w - e2)^3
fn shifted_cusp(e1: f64, e2: f64) -> B {
    cusp().shift(cx(-e1, 0.0), cx(-e2, 0.0))
}

/// z^2 - w^3 - eps
fn offset_cusp(eps: f64) -> B {
    cusp().sub(&B::from_terms([((0, 0), cx(eps, 0.0))]))
}

fn good_h() -> Polydisk<f64> {
    Polydisk::new(Disk::new(cx(0.0, 0.0), 0.5), Disk::new(cx(0.0, 0.0), 1.0))
}

fn unit_disk() -> Disk<f64> {
    Disk::new(cx(0.0, 0.0), 1.0)
}

/// Criterion 1: discriminant of the cusp over disk(0, 0.9) is the single
/// non-normal-crossing point 0 with three sheets; the shifted cusp moves it
/// to exactly {e1}. Under one second for both.
fn discriminant_of_cusp_and_shift() -> Result<(), String> {
    let started = Instant::now();
    let base = Disk::new(cx(0.0, 0.0), 0.9);
    let report = projection::discriminant(&cusp(), &base).map_err(|e| e.to_string())?;
    ensure!(report.points.len() == 1, "expected one point, got {}", report.points.len());
    ensure!(report.sheet_count == 3, "sheet_count {}", report.sheet_count);
    let p = &report.points[0];
    ensure!(p.location.norm() < 1e-7, "location {:e}", p.location.norm());
    ensure!(
        p.crossing == Crossing::NonNormalCrossing,
        "cusp point must be non-normal-crossing"
    );

    let shifted = projection::discriminant(&shifted_cusp(0.01, 0.01), &base)
        .map_err(|e| e.to_string())?;
    ensure!(shifted.points.len() == 1, "shifted: {} points", shifted.points.len());
    let q = shifted.points[0].location;
    ensure!((q - cx(0.01, 0.0)).norm() < 1e-7, "shifted location {q}");
    let elapsed = started.elapsed();
    ensure!(elapsed.as_secs_f64() < 1.0, "too slow: {elapsed:?}");
    Ok(())
}

/// Criterion 2: the cusp has the single parametrization t -> (t^3, t^2).
fn cusp_parametrization() -> Result<(), String> {
    let branches = puiseux::puiseux_expand(&cusp(), (cx(0.0, 0.0), cx(0.0, 0.0)), 8)
        .map_err(|e| e.to_string())?;
    ensure!(branches.len() == 1, "expected one branch, got {}", branches.len());
    let b = &branches[0];
    ensure!(b.ramification == 3, "ramification {}", b.ramification);
    for k in 0..=b.truncation_order {
        let expected = if k == 2 { cx(1.0, 0.0) } else { cx(0.0, 0.0) };
        let err = (b.series.coeff(k) - expected).norm();
        ensure!(err < 1e-12, "coefficient {k} off by {err:e}");
    }
    let residual = puiseux::param_residual(b, &cusp(), 64, 0.3);
    ensure!(residual < 1e-12, "residual {residual:e}");
    Ok(())
}

/// Criterion 3: the cusp meets its diagonal shift for e1 = e2 in
/// {1e-1, 1e-2, 1e-3}: a degree-4 pullback with 4 zeros in the unit t-disk
/// and polished witnesses. Under one second per cell.
fn shifted_cusp_intersections() -> Result<(), String> {
    let f = cusp();
    let branch = puiseux::puiseux_expand(&f, (cx(0.0, 0.0), cx(0.0, 0.0)), 8)
        .map_err(|e| e.to_string())?
        .remove(0);
    for eps in [1e-1, 1e-2, 1e-3] {
        let g = shifted_cusp(eps, eps);
        let pb = intersect::pullback(&branch, &g);
        ensure!(pb.degree() == Some(4), "eps={eps}: pullback degree {:?}", pb.degree());
        let started = Instant::now();
        let verdict =
            intersect::certify(&f, &g, &good_h(), &unit_disk()).map_err(|e| e.to_string())?;
        let elapsed = started.elapsed();
        ensure!(elapsed.as_secs_f64() < 1.0, "eps={eps}: too slow: {elapsed:?}");
        ensure!(verdict.status == Status::Intersects, "eps={eps}: {:?}", verdict.status);
        ensure!(verdict.zero_count == 4, "eps={eps}: zero_count {}", verdict.zero_count);
        ensure!(!verdict.witnesses.is_empty(), "eps={eps}: no witnesses");
        for &(rf, rg) in &verdict.residuals {
            ensure!(rf < 1e-8 && rg < 1e-8, "eps={eps}: residuals {rf:e}, {rg:e}");
        }
    }
    Ok(())
}

/// Criterion 4: the cusp misses its vertical offset by eps: the pullback is
/// the constant -eps, the verdict is Empty, and the offset curve's
/// discriminant sits at the two square roots of eps.
fn offset_cusp_is_disjoint() -> Result<(), String> {
    let f = cusp();
    let branch = puiseux::puiseux_expand(&f, (cx(0.0, 0.0), cx(0.0, 0.0)), 8)
        .map_err(|e| e.to_string())?
        .remove(0);
    for eps in [1e-2, 1e-4] {
        let g = offset_cusp(eps);
        let pb = intersect::pullback(&branch, &g);
        ensure!(pb.degree() == Some(0), "eps={eps}: pullback degree {:?}", pb.degree());
        ensure!(
            (pb.coeff(0) + cx(eps, 0.0)).norm() < 1e-12 * eps.max(1e-6),
            "eps={eps}: pullback constant {}",
            pb.coeff(0)
        );
        let verdict =
            intersect::certify(&f, &g, &good_h(), &unit_disk()).map_err(|e| e.to_string())?;
        ensure!(verdict.status == Status::Empty, "eps={eps}: {:?}", verdict.status);
        ensure!(verdict.zero_count == 0, "eps={eps}: zero_count {}", verdict.zero_count);

        let report = projection::discriminant(&g, &Disk::new(cx(0.0, 0.0), 0.5))
            .map_err(|e| e.to_string())?;
        ensure!(report.points.len() == 2, "eps={eps}: {} points", report.points.len());
        let root = eps.sqrt();
        for sign in [1.0, -1.0] {
            let hit = report
                .points
                .iter()
                .any(|p| (p.location - cx(sign * root, 0.0)).norm() < 1e-7);
            ensure!(hit, "eps={eps}: no discriminant point near {}", sign * root);
        }
    }
    Ok(())
}

/// Naive bivariate polynomial arithmetic used as the independent expansion
/// oracle for the three-component map pullback.
mod opoly {
    use super::{cx, BTreeMap, C};

    pub type OPoly = BTreeMap<(u32, u32), C>;

    pub fn term(i: u32, j: u32, c: C) -> OPoly {
        BTreeMap::from([((i, j), c)])
    }

    pub fn add(a: &OPoly, b: &OPoly) -> OPoly {
        let mut out = a.clone();
        for (&k, &v) in b {
            *out.entry(k).or_insert(cx(0.0, 0.0)) += v;
        }
        out
    }

    pub fn scale(a: &OPoly, s: f64) -> OPoly {
        a.iter().map(|(&k, &v)| (k, v * s)).collect()
    }

    pub fn mul(a: &OPoly, b: &OPoly) -> OPoly {
        let mut out = OPoly::new();
        for (&(i1, j1), &v1) in a {
            for (&(i2, j2), &v2) in b {
                *out.entry((i1 + i2, j1 + j2)).or_insert(cx(0.0, 0.0)) += v1 * v2;
            }
        }
        out
    }

    pub fn pow(a: &OPoly, n: u32) -> OPoly {
        let mut out = term(0, 0, cx(1.0, 0.0));
        for _ in 0..n {
            out = mul(&out, a);
        }
        out
    }

    pub fn eval(a: &OPoly, z: C, w: C) -> C {
        a.iter()
            .map(|(&(i, j), &v)| v * z.powu(i) * w.powu(j))
            .sum()
    }
}

/// p(z, w) = (z^2 + e1 w^4)^3 - (w^3 + z^3 + e2 w^2 - (w + e3)^3)^2,
/// expanded with the naive oracle arithmetic.
fn map_pullback_oracle(e1: f64, e2: f64, e3: f64) -> opoly::OPoly {
    use opoly::*;
    let one = |v: f64| term(0, 0, cx(v, 0.0));
    let g1 = add(&term(2, 0, cx(1.0, 0.0)), &term(0, 4, cx(e1, 0.0)));
    let g2 = add(
        &add(&term(0, 3, cx(1.0, 0.0)), &term(3, 0, cx(1.0, 0.0))),
        &term(0, 2, cx(e2, 0.0)),
    );
    let g3 = add(&term(0, 1, cx(1.0, 0.0)), &one(e3));
    let inner = add(&g2, &scale(&pow(&g3, 3), -1.0));
    add(&pow(&g1, 3), &scale(&pow(&inner, 2), -1.0))
}

fn tmp_dir() -> PathBuf {
    let dir = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join("acceptance");
    std::fs::create_dir_all(&dir).expect("create tmp dir");
    dir
}

fn run_cli(args: &[&str], envs: &[(&str, &str)]) -> Result<Vec<u8>, String> {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_curvelab"));
    cmd.args(args).current_dir(tmp_dir());
    for &(k, v) in envs {
        cmd.env(k, v);
    }
    let output = cmd.output().map_err(|e| format!("spawn: {e}"))?;
    if !output.status.success() {
        return Err(format!(
            "exit {:?}: {}",
            output.status.code(),
            String::from_utf8_lossy(&output.stderr)
        ));
    }
    Ok(output.stdout)
}

fn write_specs() -> Result<(), String> {
    let dir = tmp_dir();
    let files = [
        (
            "cusp.json",
            r#"{"name":"cusp","terms":[{"i":2,"j":0,"re":1,"im":0},{"i":0,"j":3,"re":-1,"im":0}]}"#,
        ),
        (
            "shifted.json",
            r#"{"name":"shifted-cusp","expr":"(z-e1)^2-(w-e2)^3","params":{"e1":{"re":0.01},"e2":{"re":0.01}}}"#,
        ),
        (
            "map3.json",
            r#"{"name":"surface-map","components":[
                {"name":"g1","expr":"z^2 + e1*w^4"},
                {"name":"g2","expr":"w^3 + z^3 + e2*w^2"},
                {"name":"g3","expr":"w + e3"}],
              "surface":[{"a":3,"b":0,"c":0,"re":1},{"a":0,"b":2,"c":0,"re":-1},
                         {"a":0,"b":1,"c":3,"re":2},{"a":0,"b":0,"c":6,"re":-1}]}"#,
        ),
    ];
    for (name, text) in files {
        std::fs::write(dir.join(name), text).map_err(|e| format!("write {name}: {e}"))?;
    }
    Ok(())
}

/// Criterion 5: the C^3 surface pullback through the three-component map
/// matches an independent expansion coefficient-wise, and its restriction
/// to w = 0 vanishes at z = e3 / 2^(1/3).
fn surface_map_pullback() -> Result<(), String> {
    write_specs()?;
    let stdout = run_cli(
        &[
            "pullback3", "--map", "map3.json", "--e1", "0.01", "--e2", "0.01", "--e3", "0.01",
            "--line", "w=0", "--disk", "0,0,1",
        ],
        &[],
    )?;
    let doc: serde_json::Value =
        serde_json::from_slice(&stdout).map_err(|e| format!("parse output: {e}"))?;

    let oracle = map_pullback_oracle(0.01, 0.01, 0.01);
    let mut emitted: BTreeMap<(u32, u32), C> = BTreeMap::new();
    for t in doc["pullback"].as_array().ok_or("missing pullback terms")? {
        let key = (t["i"].as_u64().unwrap() as u32, t["j"].as_u64().unwrap() as u32);
        let c = cx(t["re"].as_f64().unwrap(), t["im"].as_f64().unwrap());
        emitted.insert(key, c);
    }
    let keys: Vec<(u32, u32)> = oracle.keys().chain(emitted.keys()).copied().collect();
    for key in keys {
        let a = oracle.get(&key).copied().unwrap_or(cx(0.0, 0.0));
        let b = emitted.get(&key).copied().unwrap_or(cx(0.0, 0.0));
        ensure!((a - b).norm() < 1e-12, "coefficient {key:?}: oracle {a}, emitted {b}");
    }

    let expected = 0.01 / 2f64.powf(1.0 / 3.0);
    let zeros = doc["line"]["zeros"].as_array().ok_or("missing line zeros")?;
    let hit = zeros.iter().any(|z| {
        let zero: C = cx(z["re"].as_f64().unwrap(), z["im"].as_f64().unwrap());
        (zero - cx(expected, 0.0)).norm() < 1e-8
    });
    ensure!(hit, "no line zero near {expected:.8e} in {zeros:?}");
    let at_zero = opoly::eval(&oracle, cx(expected, 0.0), cx(0.0, 0.0)).norm();
    ensure!(at_zero < 1e-12, "|p| at the closed-form zero: {at_zero:e}");
    Ok(())
}

/// Criterion 6: monodromy of the cusp fiber. One turn around the singular
/// value is a 3-cycle matching the Puiseux ramification, three turns and
/// non-enclosing loops are the identity, and 50 random loops track without
/// path jumps.
fn monodromy_cycles() -> Result<(), String> {
    let f = cusp();
    let one_turn = monodromy::track(&f, &LoopSpec::once(cx(0.0, 0.0), 0.5))
        .map_err(|e| e.to_string())?;
    ensure!(one_turn.cycle_lengths() == vec![3], "one turn: {:?}", one_turn.cycle_lengths());
    let ram = puiseux::puiseux_expand(&f, (cx(0.0, 0.0), cx(0.0, 0.0)), 8)
        .map_err(|e| e.to_string())?[0]
        .ramification;
    ensure!(one_turn.cycle_lengths()[0] == ram, "cycle 3 vs ramification {ram}");

    let mut three = LoopSpec::once(cx(0.0, 0.0), 0.5);
    three.turns = 3;
    let three_turns = monodromy::track(&f, &three).map_err(|e| e.to_string())?;
    ensure!(three_turns.is_identity(), "three turns: {:?}", three_turns.permutation);

    let away = monodromy::track(&f, &LoopSpec::once(cx(0.5, 0.0), 0.1))
        .map_err(|e| e.to_string())?;
    ensure!(away.is_identity(), "non-enclosing loop: {:?}", away.permutation);

    let mut rng = ChaCha8Rng::seed_from_u64(20260825);
    let mut done = 0;
    while done < 50 {
        let center: C = cx(rng.gen_range(-0.6..0.6), rng.gen_range(-0.6..0.6));
        let radius: f64 = rng.gen_range(0.05..0.3);
        // Keep the circle itself safely off the discriminant point.
        if (center.norm() - radius).abs() < 0.02 {
            continue;
        }
        let result = monodromy::track(&f, &LoopSpec::once(center, radius))
            .map_err(|e| format!("loop {done} at {center}, r={radius}: {e}"))?;
        let enclosing = center.norm() < radius;
        if enclosing {
            ensure!(
                result.cycle_lengths() == vec![3],
                "loop {done}: expected a 3-cycle, got {:?}",
                result.cycle_lengths()
            );
        } else {
            ensure!(result.is_identity(), "loop {done}: expected identity");
        }
        done += 1;
    }
    Ok(())
}

/// Criterion 7a: fiber separation of the cusp over the annulus
/// 0.2 <= |z| <= 0.9 equals 0.2^(2/3) * sqrt(3).
fn annulus_separation() -> Result<(), String> {
    let region = Disk::new(cx(0.0, 0.0), 0.9);
    let excluded = [Disk::new(cx(0.0, 0.0), 0.2)];
    let value =
        multifun::separation(&cusp(), &region, &excluded, 64).map_err(|e| e.to_string())?;
    let expected = 0.2f64.powf(2.0 / 3.0) * 3f64.sqrt();
    ensure!((value - expected).abs() < 1e-3, "separation {value} vs {expected}");
    Ok(())
}

/// Criterion 7b: a horizontal shift moves the discriminant set rigidly, so
/// the drift equals |s| to near machine precision.
fn shift_drift_is_exact() -> Result<(), String> {
    let f = cusp();
    let base = Disk::new(cx(0.0, 0.0), 0.5);
    for s in [1e-2, 1e-3] {
        let g = f.shift(cx(-s, 0.0), cx(0.0, 0.0));
        let drift = multifun::discriminant_drift(&f, &g, &base).map_err(|e| e.to_string())?;
        ensure!((drift - s).abs() < 1e-9, "s={s}: drift {drift:e}");
    }
    Ok(())
}

/// Criterion 7c: branch counts of a perturbed curve divide into those of
/// the original: every component size of W is an integer multiple of a
/// component size of V.
fn branch_count_multiplicativity() -> Result<(), String> {
    let base = Disk::new(cx(0.0, 0.0), 0.5);
    let pairs = [
        (cusp(), shifted_cusp(0.01, 0.01)),
        (cusp(), offset_cusp(1e-4)),
        (cusp(), shifted_cusp(0.001, 0.002)),
    ];
    for (k, (v, w)) in pairs.iter().enumerate() {
        let cv = monodromy::branch_count(v, &base).map_err(|e| e.to_string())?;
        let cw = monodromy::branch_count(w, &base).map_err(|e| e.to_string())?;
        for &size in &cw {
            let divides = cv.iter().any(|&s| s > 0 && size % s == 0);
            ensure!(divides, "pair {k}: W size {size} vs V sizes {cv:?}");
        }
    }
    Ok(())
}

/// Test-local machinery for criterion 7d: closed-form fibers up to degree 3
/// plus a dense grid and two-variable Newton polish, sharing no code with
/// the library's winding-number certification.
mod brute {
    use super::*;

    fn closed_form_roots(c: &[C]) -> Vec<C> {
        let mut c = c.to_vec();
        while c.last().map_or(false, |v| v.norm() < 1e-14) {
            c.pop();
        }
        match c.len() {
            0 | 1 => Vec::new(),
            2 => vec![-c[0] / c[1]],
            3 => {
                let (a, b, cc) = (c[2], c[1], c[0]);
                let disc = (b * b - a * cc * 4.0).sqrt();
                vec![(-b + disc) / (a * 2.0), (-b - disc) / (a * 2.0)]
            }
            4 => cubic_roots(c[3], c[2], c[1], c[0]),
            _ => panic!("oracle only handles degree <= 3"),
        }
    }

    fn cubic_roots(a: C, b: C, c: C, d: C) -> Vec<C> {
        let b = b / a;
        let c = c / a;
        let d = d / a;
        let shift = b / 3.0;
        let p = c - b * b / 3.0;
        let q = b * (b * b * 2.0 / 27.0) - b * c / 3.0 + d;
        let half_q = q / 2.0;
        let disc = (half_q * half_q + p * p * p / 27.0).sqrt();
        let mut u3 = -half_q + disc;
        if u3.norm() < 1e-18 {
            u3 = -half_q - disc;
        }
        let u = u3.powf(1.0 / 3.0);
        let omega = C::from_polar(1.0, 2.0 * std::f64::consts::PI / 3.0);
        (0..3)
            .map(|k| {
                let uk = u * omega.powu(k);
                let s = if uk.norm() < 1e-18 { cx(0.0, 0.0) } else { uk - p / (uk * 3.0) };
                s - shift
            })
            .collect()
    }

    fn slice_coeffs(f: &B, z: C) -> Vec<C> {
        (0..=f.w_degree() as u32)
            .map(|j| f.w_coefficient(j).eval(z))
            .collect()
    }

    fn refine(f: &B, g: &B, mut z: C, mut w: C) -> Option<(C, C)> {
        let (fz, fw) = (f.deriv_z(), f.deriv_w());
        let (gz, gw) = (g.deriv_z(), g.deriv_w());
        for _ in 0..60 {
            let fv = f.eval(z, w);
            let gv = g.eval(z, w);
            let det = fz.eval(z, w) * gw.eval(z, w) - fw.eval(z, w) * gz.eval(z, w);
            if det.norm() < 1e-250 {
                return None;
            }
            let dz = (fv * gw.eval(z, w) - gv * fw.eval(z, w)) / det;
            let dw = (fz.eval(z, w) * gv - gz.eval(z, w) * fv) / det;
            z -= dz;
            w -= dw;
            if dz.norm() + dw.norm() < 1e-14 {
                break;
            }
        }
        if f.eval(z, w).norm() < 1e-9 && g.eval(z, w).norm() < 1e-9 {
            Some((z, w))
        } else {
            None
        }
    }

    pub fn intersects(f: &B, g: &B, h: &Polydisk<f64>) -> bool {
        let n = 200;
        let r = h.base.radius;
        for iy in 0..n {
            for ix in 0..n {
                let z = h.base.center
                    + cx(
                        -r + 2.0 * r * ix as f64 / (n - 1) as f64,
                        -r + 2.0 * r * iy as f64 / (n - 1) as f64,
                    );
                if (z - h.base.center).norm() > r {
                    continue;
                }
                let wf = closed_form_roots(&slice_coeffs(f, z));
                let wg = closed_form_roots(&slice_coeffs(g, z));
                for &a in &wf {
                    for &b in &wg {
                        if (a - b).norm() < 0.05 {
                            if let Some((zz, ww)) = refine(f, g, z, (a + b) / 2.0) {
                                let in_base = (zz - h.base.center).norm() <= r * (1.0 + 1e-6);
                                let in_vert = (ww - h.vertical.center).norm()
                                    <= h.vertical.radius * (1.0 + 1e-6);
                                if in_base && in_vert {
                                    return true;
                                }
                            }
                        }
                    }
                }
            }
        }
        false
    }

    pub fn random_pair(rng: &mut ChaCha8Rng) -> (B, B) {
        let d = rng.gen_range(1..=3u32);
        let mut terms = vec![((0u32, d), cx(1.0, 0.0))];
        for i in 0..=2u32 {
            for j in 0..d {
                if rng.gen_bool(0.7) {
                    let re = rng.gen_range(-0.3..0.3);
                    let im = rng.gen_range(-0.3..0.3);
                    terms.push(((i, j), cx(re, im)));
                }
            }
        }
        let f = B::from_terms(terms);
        let mut g = f.clone();
        if rng.gen_bool(0.4) {
            let eps = rng.gen_range(1e-4..1e-3);
            g = g.sub(&B::from_terms([((0, 0), cx(eps, 0.0))]));
        } else {
            let mut delta = Vec::new();
            for i in 0..=1u32 {
                for j in 0..=1u32.min(d - 1) {
                    let re = rng.gen_range(-1e-3..1e-3);
                    let im = rng.gen_range(-1e-3..1e-3);
                    delta.push(((i, j), cx(re, im)));
                }
            }
            g = g.add(&B::from_terms(delta));
        }
        (f, g)
    }
}

/// Criterion 7d: certify agrees with the brute-force oracle on 25 random
/// small-coefficient pairs, with fewer than 20% inconclusive verdicts.
fn certify_matches_oracle() -> Result<(), String> {
    let mut rng = ChaCha8Rng::seed_from_u64(577);
    let h = Polydisk::new(Disk::new(cx(0.0, 0.0), 0.5), Disk::new(cx(0.0, 0.0), 4.0));
    let t_disk = Disk::new(cx(0.0, 0.0), 0.2);
    let mut inconclusive = 0;
    let mut compared = 0;
    let mut pair_idx = 0;
    while compared + inconclusive < 25 {
        pair_idx += 1;
        let (f, g) = brute::random_pair(&mut rng);
        if !matches!(check_good(&f, &h, 16), Ok(GoodCheck::Good))
            || !matches!(check_good(&g, &h, 16), Ok(GoodCheck::Good))
        {
            continue;
        }
        let verdict = intersect::certify(&f, &g, &h, &t_disk)
            .map_err(|e| format!("pair {pair_idx}: {e}"))?;
        match verdict.status {
            Status::Inconclusive => inconclusive += 1,
            status => {
                let expected = if brute::intersects(&f, &g, &h) {
                    Status::Intersects
                } else {
                    Status::Empty
                };
                ensure!(status == expected, "pair {pair_idx}: {status:?} vs oracle {expected:?}");
                compared += 1;
            }
        }
    }
    ensure!(inconclusive * 5 < 25, "inconclusive rate {inconclusive}/25");
    Ok(())
}

/// Criterion 8: repeated CLI invocations with identical inputs are
/// byte-identical, including a multi-threaded sweep.
fn cli_determinism() -> Result<(), String> {
    write_specs()?;
    let discr = ["discriminant", "--curve", "cusp.json", "--disk", "0,0,0.9"];
    let first = run_cli(&discr, &[])?;
    let second = run_cli(&discr, &[])?;
    ensure!(first == second, "discriminant output differs between runs");
    ensure!(!first.is_empty(), "empty output");

    let sweep = [
        "sweep", "--curve-v", "cusp.json", "--curve-w", "shifted.json", "--sweep-param", "e1",
        "--e2", "0.01", "--value", "1e-1", "--value", "1e-2", "--value", "1e-3",
        "--disk", "0,0,0.5", "--tdisk", "0,0,1",
    ];
    let serial = run_cli(&sweep, &[("CURVELAB_THREADS", "1")])?;
    let parallel = run_cli(&sweep, &[("CURVELAB_THREADS", "3")])?;
    let repeated = run_cli(&sweep, &[("CURVELAB_THREADS", "3")])?;
    ensure!(serial == parallel, "sweep output depends on the worker count");
    ensure!(parallel == repeated, "sweep output differs between runs");
    Ok(())
}

#[test]
fn acceptance() {
    let criteria: Vec<(&str, fn() -> Result<(), String>)> = vec![
        ("1 cusp discriminants", discriminant_of_cusp_and_shift),
        ("2 cusp parametrization", cusp_parametrization),
        ("3 shifted-cusp intersections", shifted_cusp_intersections),
        ("4 offset-cusp non-intersection", offset_cusp_is_disjoint),
        ("5 surface map pullback", surface_map_pullback),
        ("6 monodromy cycles", monodromy_cycles),
        ("7a annulus separation", annulus_separation),
        ("7b discriminant drift", shift_drift_is_exact),
        ("7c branch count multiplicativity", branch_count_multiplicativity),
        ("7d certification oracle agreement", certify_matches_oracle),
        ("8 CLI determinism", cli_determinism),
    ];
    let mut failures = Vec::new();
    for (name, run) in criteria {
        match run() {
            Ok(()) => println!("criterion {name}: pass"),
            Err(msg) => {
                println!("criterion {name}: FAIL: {msg}");
                failures.push(name);
            }
        }
    }
    assert!(failures.is_empty(), "failed criteria: {failures:?}");
}
