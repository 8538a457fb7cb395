//! `curvelab`: command-line analysis of singular complex plane curves.
//!
//! Curves arrive as JSON specs (or inline `--expr` strings), results leave
//! as deterministic JSON or CSV on standard output. Exit code 0 means the
//! computation ran, 1 a domain error (bad curve, lost path, non-square-free
//! input), 2 a usage error.

mod emit;
mod expr;
mod spec;

use clap::{Args, Parser, Subcommand, ValueEnum};
use curvelab::geom::{Disk, Polydisk};
use curvelab::intersect::{self, Status, Var};
use curvelab::monodromy::{self, LoopSpec};
use curvelab::multifun::{self, SampledCurve};
use curvelab::polycalc::BivarPoly;
use curvelab::projection::{self, Crossing, GoodCheck};
use curvelab::puiseux;
use emit::Json;
use num_complex::Complex;
use spec::{CurveSpec, MapSpec};
use std::collections::BTreeMap;
use std::path::PathBuf;
use std::process::ExitCode;

type C = Complex<f64>;
type B = BivarPoly<f64>;
type D = Disk<f64>;

#[derive(Debug)]
enum CliError {
    /// Bad flags, unreadable files, malformed specs: exit 2.
    Usage(String),
    /// The computation itself refused the input: exit 1.
    Domain(String),
}

impl From<curvelab::Error> for CliError {
    fn from(e: curvelab::Error) -> Self {
        CliError::Domain(e.to_string())
    }
}

type CliResult<T> = Result<T, CliError>;

fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

fn parse_complex(s: &str) -> Result<C, String> {
    let parts: Vec<&str> = s.split(',').collect();
    let num = |t: &str| -> Result<f64, String> {
        t.trim().parse().map_err(|_| format!("bad number `{t}` in `{s}`"))
    };
    match parts.as_slice() {
        [re] => Ok(C::new(num(re)?, 0.0)),
        [re, im] => Ok(C::new(num(re)?, num(im)?)),
        _ => Err(format!("expected RE[,IM], got `{s}`")),
    }
}

fn parse_disk(s: &str) -> Result<D, String> {
    let parts: Vec<&str> = s.split(',').collect();
    if parts.len() != 3 {
        return Err(format!("expected CX,CY,R, got `{s}`"));
    }
    let num = |t: &str| -> Result<f64, String> {
        t.trim().parse().map_err(|_| format!("bad number `{t}` in `{s}`"))
    };
    let r = num(parts[2])?;
    if r <= 0.0 {
        return Err(format!("disk radius must be positive, got `{s}`"));
    }
    Ok(Disk::new(C::new(num(parts[0])?, num(parts[1])?), r))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Args, Debug)]
struct CurveArg {
    /// Curve spec JSON file.
    #[arg(long, value_name = "FILE")]
    curve: Option<PathBuf>,
    /// Inline curve expression such as "z^2 - w^3".
    #[arg(long, value_name = "EXPR", conflicts_with = "curve")]
    expr: Option<String>,
}

#[derive(Args, Debug)]
struct PairArg {
    /// Spec file of the first curve V.
    #[arg(long = "curve-v", value_name = "FILE")]
    curve_v: Option<PathBuf>,
    /// Inline expression for the first curve.
    #[arg(long = "expr-v", value_name = "EXPR", conflicts_with = "curve_v")]
    expr_v: Option<String>,
    /// Spec file of the second curve W.
    #[arg(long = "curve-w", value_name = "FILE")]
    curve_w: Option<PathBuf>,
    /// Inline expression for the second curve.
    #[arg(long = "expr-w", value_name = "EXPR", conflicts_with = "curve_w")]
    expr_w: Option<String>,
}

#[derive(Args, Debug)]
struct ParamArgs {
    /// Parameter substitution, repeatable.
    #[arg(long = "param", value_name = "NAME=RE[,IM]")]
    params: Vec<String>,
    /// Shorthand for --param e1=VALUE.
    #[arg(long, value_name = "RE[,IM]")]
    e1: Option<String>,
    /// Shorthand for --param e2=VALUE.
    #[arg(long, value_name = "RE[,IM]")]
    e2: Option<String>,
    /// Shorthand for --param e3=VALUE.
    #[arg(long, value_name = "RE[,IM]")]
    e3: Option<String>,
}

impl ParamArgs {
    fn overrides(&self) -> CliResult<BTreeMap<String, C>> {
        let mut out = BTreeMap::new();
        for entry in &self.params {
            let (name, value) = entry
                .split_once('=')
                .ok_or_else(|| usage(format!("--param expects NAME=RE[,IM], got `{entry}`")))?;
            out.insert(name.trim().to_string(), parse_complex(value).map_err(usage)?);
        }
        for (name, slot) in [("e1", &self.e1), ("e2", &self.e2), ("e3", &self.e3)] {
            if let Some(value) = slot {
                out.insert(name.to_string(), parse_complex(value).map_err(usage)?);
            }
        }
        Ok(out)
    }
}

#[derive(Args, Debug)]
struct OutputArg {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
}

#[derive(Parser, Debug)]
#[command(name = "curvelab", version, about = "Numerical analysis of singular plane curves")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check that a polydisk is a good neighborhood for the curve.
    GoodCheck {
        #[command(flatten)]
        curve: CurveArg,
        #[command(flatten)]
        params: ParamArgs,
        /// Base disk CX,CY,R.
        #[arg(long, value_parser = parse_disk, default_value = "0,0,0.9")]
        disk: D,
        /// Vertical disk CX,CY,R.
        #[arg(long, value_parser = parse_disk, default_value = "0,0,1")]
        vdisk: D,
        /// Polar grid resolution of the check.
        #[arg(long, default_value_t = 16)]
        samples: usize,
        #[command(flatten)]
        out: OutputArg,
    },
    /// Solve the fiber of the curve over one base point.
    Fiber {
        #[command(flatten)]
        curve: CurveArg,
        #[command(flatten)]
        params: ParamArgs,
        /// Base point RE[,IM].
        #[arg(long, value_parser = parse_complex, default_value = "0,0")]
        at: C,
        #[command(flatten)]
        out: OutputArg,
    },
    /// Discriminant points inside a base disk, classified by crossing type.
    Discriminant {
        #[command(flatten)]
        curve: CurveArg,
        #[command(flatten)]
        params: ParamArgs,
        #[arg(long, value_parser = parse_disk, default_value = "0,0,0.9")]
        disk: D,
        #[command(flatten)]
        out: OutputArg,
    },
    /// Puiseux branch expansions of the curve through a center point.
    Puiseux {
        #[command(flatten)]
        curve: CurveArg,
        #[command(flatten)]
        params: ParamArgs,
        /// Base (z) coordinate of the center.
        #[arg(long, value_parser = parse_complex, default_value = "0,0")]
        center: C,
        /// Vertical (w) coordinate of the center.
        #[arg(long, value_parser = parse_complex, default_value = "0,0")]
        wcenter: C,
        /// Truncation order of the series.
        #[arg(long, default_value_t = puiseux::DEFAULT_ORDER)]
        order: usize,
        #[command(flatten)]
        out: OutputArg,
    },
    /// Monodromy permutation of the fiber along a circular loop.
    Monodromy {
        #[command(flatten)]
        curve: CurveArg,
        #[command(flatten)]
        params: ParamArgs,
        /// Loop center RE[,IM].
        #[arg(long, value_parser = parse_complex, default_value = "0,0")]
        center: C,
        /// Loop radius.
        #[arg(long)]
        radius: f64,
        /// Number of turns.
        #[arg(long, default_value_t = 1)]
        turns: usize,
        /// Steps per turn.
        #[arg(long, default_value_t = monodromy::DEFAULT_STEPS_PER_TURN)]
        steps: usize,
        #[command(flatten)]
        out: OutputArg,
    },
    /// Minimal fiber separation over a region minus excluded disks.
    Separation {
        #[command(flatten)]
        curve: CurveArg,
        #[command(flatten)]
        params: ParamArgs,
        #[arg(long, value_parser = parse_disk, default_value = "0,0,0.9")]
        disk: D,
        /// Excluded disk CX,CY,R, repeatable.
        #[arg(long = "exclude", value_parser = parse_disk)]
        exclude: Vec<D>,
        /// Radial grid resolution.
        #[arg(long, default_value_t = multifun::DEFAULT_SEPARATION_GRID)]
        samples: usize,
        #[command(flatten)]
        out: OutputArg,
    },
    /// Directed and symmetrized fiber distance between two curves over a point.
    Dsym {
        #[command(flatten)]
        pair: PairArg,
        #[command(flatten)]
        params: ParamArgs,
        /// Base point RE[,IM].
        #[arg(long, value_parser = parse_complex, default_value = "0,0")]
        at: C,
        #[command(flatten)]
        out: OutputArg,
    },
    /// Sampled Hausdorff distance between two curves over a base disk.
    Hausdorff {
        #[command(flatten)]
        pair: PairArg,
        #[command(flatten)]
        params: ParamArgs,
        #[arg(long, value_parser = parse_disk, default_value = "0,0,0.9")]
        disk: D,
        /// Radial grid resolution of the sampling.
        #[arg(long, default_value_t = 12)]
        samples: usize,
        #[command(flatten)]
        out: OutputArg,
    },
    /// Certify or refute an intersection of two curves inside a polydisk.
    Intersect {
        #[command(flatten)]
        pair: PairArg,
        #[command(flatten)]
        params: ParamArgs,
        #[arg(long, value_parser = parse_disk, default_value = "0,0,0.9")]
        disk: D,
        #[arg(long, value_parser = parse_disk, default_value = "0,0,1")]
        vdisk: D,
        /// Disk of the branch parameter t used for zero counting.
        #[arg(long, value_parser = parse_disk, default_value = "0,0,1")]
        tdisk: D,
        #[command(flatten)]
        out: OutputArg,
    },
    /// Pull a trivariate surface back through a 3-component polynomial map.
    Pullback3 {
        /// Map spec JSON file.
        #[arg(long, value_name = "FILE")]
        map: PathBuf,
        #[command(flatten)]
        params: ParamArgs,
        /// Restrict the pullback to a line, e.g. "w=0" or "z=0.5,0.1".
        #[arg(long, value_name = "VAR=RE[,IM]")]
        line: Option<String>,
        /// Disk of the free variable for line zeros.
        #[arg(long, value_parser = parse_disk, default_value = "0,0,1")]
        disk: D,
        #[command(flatten)]
        out: OutputArg,
    },
    /// Certify intersections across a grid of parameter values.
    Sweep {
        #[command(flatten)]
        pair: PairArg,
        #[command(flatten)]
        params: ParamArgs,
        /// Name of the parameter the sweep varies in the second curve.
        #[arg(long = "sweep-param", default_value = "e1")]
        sweep_param: String,
        /// Parameter value RE[,IM], repeatable, one row per value.
        #[arg(long = "value", value_parser = parse_complex, required = true)]
        values: Vec<C>,
        #[arg(long, value_parser = parse_disk, default_value = "0,0,0.9")]
        disk: D,
        #[arg(long, value_parser = parse_disk, default_value = "0,0,1")]
        vdisk: D,
        #[arg(long, value_parser = parse_disk, default_value = "0,0,1")]
        tdisk: D,
        /// Output format (CSV by default: one row per grid cell).
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
    },
}

fn read_spec(path: &PathBuf) -> CliResult<CurveSpec> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| usage(format!("cannot read {}: {e}", path.display())))?;
    CurveSpec::parse(&text).map_err(usage)
}

fn load_curve(arg: &CurveArg, overrides: &BTreeMap<String, C>) -> CliResult<(String, B)> {
    match (&arg.curve, &arg.expr) {
        (Some(path), None) => {
            let spec = read_spec(path)?;
            let poly = spec.build(overrides).map_err(usage)?;
            Ok((spec.name, poly))
        }
        (None, Some(src)) => {
            let poly = expr::parse(src, overrides).map_err(usage)?;
            Ok((src.clone(), poly))
        }
        _ => Err(usage("exactly one of --curve or --expr is required")),
    }
}

fn load_pair(arg: &PairArg, overrides: &BTreeMap<String, C>) -> CliResult<((String, B), (String, B))> {
    let v = load_curve(
        &CurveArg { curve: arg.curve_v.clone(), expr: arg.expr_v.clone() },
        overrides,
    )
    .map_err(|e| rename_flag(e, "--curve-v or --expr-v"))?;
    let w = load_curve(
        &CurveArg { curve: arg.curve_w.clone(), expr: arg.expr_w.clone() },
        overrides,
    )
    .map_err(|e| rename_flag(e, "--curve-w or --expr-w"))?;
    Ok((v, w))
}

fn rename_flag(e: CliError, flags: &str) -> CliError {
    match e {
        CliError::Usage(msg) if msg.starts_with("exactly one of") => {
            usage(format!("exactly one of {flags} is required"))
        }
        other => other,
    }
}

fn disk_json(d: &D) -> Json {
    Json::obj([("center", Json::complex(d.center)), ("radius", Json::Num(d.radius))])
}

fn point_json(z: C, w: C) -> Json {
    Json::obj([("z", Json::complex(z)), ("w", Json::complex(w))])
}

fn crossing_str(c: &Crossing) -> &'static str {
    match c {
        Crossing::NormalCrossing => "normal_crossing",
        Crossing::NonNormalCrossing => "non_normal_crossing",
    }
}

fn status_str(s: &Status) -> &'static str {
    match s {
        Status::Intersects => "intersects",
        Status::Empty => "empty",
        Status::Inconclusive => "inconclusive",
    }
}

fn run(cmd: &Command) -> CliResult<(Json, Format)> {
    match cmd {
        Command::GoodCheck { curve, params, disk, vdisk, samples, out } => {
            let (name, f) = load_curve(curve, &params.overrides()?)?;
            if *samples < 2 {
                return Err(usage("--samples must be at least 2"));
            }
            let h = Polydisk::new(*disk, *vdisk);
            let verdict = projection::check_good(&f, &h, *samples)?;
            let (good, witness) = match verdict {
                GoodCheck::Good => (true, Json::Null),
                GoodCheck::Bad(wit) => (
                    false,
                    Json::obj([
                        ("z", Json::complex(wit.z)),
                        ("w", wit.w.map(Json::complex).unwrap_or(Json::Null)),
                    ]),
                ),
            };
            Ok((
                Json::obj([
                    ("command", Json::Str("good-check".into())),
                    ("curve", Json::Str(name)),
                    ("disk", disk_json(disk)),
                    ("vdisk", disk_json(vdisk)),
                    ("good", Json::Bool(good)),
                    ("witness", witness),
                ]),
                out.format,
            ))
        }
        Command::Fiber { curve, params, at, out } => {
            let (name, f) = load_curve(curve, &params.overrides()?)?;
            let fiber = projection::fiber(&f, *at)?;
            Ok((
                Json::obj([
                    ("command", Json::Str("fiber".into())),
                    ("curve", Json::Str(name)),
                    ("base_point", Json::complex(*at)),
                    ("count", Json::Int(fiber.len() as i64)),
                    (
                        "points",
                        Json::Arr(fiber.points().iter().map(|&w| Json::complex(w)).collect()),
                    ),
                ]),
                out.format,
            ))
        }
        Command::Discriminant { curve, params, disk, out } => {
            let (name, f) = load_curve(curve, &params.overrides()?)?;
            let report = projection::discriminant(&f, disk)?;
            Ok((
                Json::obj([
                    ("command", Json::Str("discriminant".into())),
                    ("curve", Json::Str(name)),
                    ("disk", disk_json(disk)),
                    ("sheet_count", Json::Int(report.sheet_count as i64)),
                    (
                        "points",
                        Json::Arr(
                            report
                                .points
                                .iter()
                                .map(|p| {
                                    Json::obj([
                                        ("location", Json::complex(p.location)),
                                        ("multiplicity", Json::Int(p.multiplicity as i64)),
                                        ("crossing", Json::Str(crossing_str(&p.crossing).into())),
                                    ])
                                })
                                .collect(),
                        ),
                    ),
                ]),
                out.format,
            ))
        }
        Command::Puiseux { curve, params, center, wcenter, order, out } => {
            let (name, f) = load_curve(curve, &params.overrides()?)?;
            if *order < 1 {
                return Err(usage("--order must be at least 1"));
            }
            let branches = puiseux::puiseux_expand(&f, (*center, *wcenter), *order)?;
            Ok((
                Json::obj([
                    ("command", Json::Str("puiseux".into())),
                    ("curve", Json::Str(name)),
                    ("center", point_json(*center, *wcenter)),
                    ("order", Json::Int(*order as i64)),
                    (
                        "branches",
                        Json::Arr(
                            branches
                                .iter()
                                .map(|b| {
                                    Json::obj([
                                        ("ramification", Json::Int(b.ramification as i64)),
                                        ("truncation_order", Json::Int(b.truncation_order as i64)),
                                        (
                                            "series",
                                            Json::Arr(
                                                (0..=b.truncation_order)
                                                    .map(|k| Json::complex(b.series.coeff(k)))
                                                    .collect(),
                                            ),
                                        ),
                                    ])
                                })
                                .collect(),
                        ),
                    ),
                ]),
                out.format,
            ))
        }
        Command::Monodromy { curve, params, center, radius, turns, steps, out } => {
            let (name, f) = load_curve(curve, &params.overrides()?)?;
            if *radius <= 0.0 {
                return Err(usage("--radius must be positive"));
            }
            if *turns < 1 || *steps < 8 {
                return Err(usage("--turns must be >= 1 and --steps >= 8"));
            }
            let spec = LoopSpec { center: *center, radius: *radius, turns: *turns, steps_per_turn: *steps };
            let result = monodromy::track(&f, &spec)?;
            Ok((
                Json::obj([
                    ("command", Json::Str("monodromy".into())),
                    ("curve", Json::Str(name)),
                    ("center", Json::complex(*center)),
                    ("radius", Json::Num(*radius)),
                    ("turns", Json::Int(*turns as i64)),
                    ("identity", Json::Bool(result.is_identity())),
                    (
                        "permutation",
                        Json::Arr(result.permutation.iter().map(|&k| Json::Int(k as i64)).collect()),
                    ),
                    (
                        "cycles",
                        Json::Arr(
                            result
                                .cycles()
                                .iter()
                                .map(|c| Json::Arr(c.iter().map(|&k| Json::Int(k as i64)).collect()))
                                .collect(),
                        ),
                    ),
                    (
                        "cycle_lengths",
                        Json::Arr(result.cycle_lengths().iter().map(|&k| Json::Int(k as i64)).collect()),
                    ),
                    (
                        "start_fiber",
                        Json::Arr(result.start_fiber.points().iter().map(|&w| Json::complex(w)).collect()),
                    ),
                ]),
                out.format,
            ))
        }
        Command::Separation { curve, params, disk, exclude, samples, out } => {
            let (name, f) = load_curve(curve, &params.overrides()?)?;
            if *samples < 2 {
                return Err(usage("--samples must be at least 2"));
            }
            let value = multifun::separation(&f, disk, exclude, *samples)?;
            Ok((
                Json::obj([
                    ("command", Json::Str("separation".into())),
                    ("curve", Json::Str(name)),
                    ("disk", disk_json(disk)),
                    ("excluded", Json::Arr(exclude.iter().map(disk_json).collect())),
                    ("separation", Json::Num(value)),
                ]),
                out.format,
            ))
        }
        Command::Dsym { pair, params, at, out } => {
            let ((name_v, f), (name_w, g)) = load_pair(pair, &params.overrides()?)?;
            let fiber_v = projection::fiber(&f, *at)?;
            let fiber_w = projection::fiber(&g, *at)?;
            Ok((
                Json::obj([
                    ("command", Json::Str("dsym".into())),
                    ("curve_v", Json::Str(name_v)),
                    ("curve_w", Json::Str(name_w)),
                    ("base_point", Json::complex(*at)),
                    ("d_sym_vw", Json::Num(multifun::d_sym(&fiber_v, &fiber_w))),
                    ("d_sym_wv", Json::Num(multifun::d_sym(&fiber_w, &fiber_v))),
                    ("d_sym_symmetric", Json::Num(multifun::d_sym_symmetric(&fiber_v, &fiber_w))),
                ]),
                out.format,
            ))
        }
        Command::Hausdorff { pair, params, disk, samples, out } => {
            let ((name_v, f), (name_w, g)) = load_pair(pair, &params.overrides()?)?;
            if *samples < 2 {
                return Err(usage("--samples must be at least 2"));
            }
            let a = SampledCurve::from_curve(&f, disk, *samples)?;
            let b = SampledCurve::from_curve(&g, disk, *samples)?;
            Ok((
                Json::obj([
                    ("command", Json::Str("hausdorff".into())),
                    ("curve_v", Json::Str(name_v)),
                    ("curve_w", Json::Str(name_w)),
                    ("disk", disk_json(disk)),
                    ("hausdorff", Json::Num(multifun::hausdorff(&a, &b))),
                ]),
                out.format,
            ))
        }
        Command::Intersect { pair, params, disk, vdisk, tdisk, out } => {
            let ((name_v, f), (name_w, g)) = load_pair(pair, &params.overrides()?)?;
            let h = Polydisk::new(*disk, *vdisk);
            let verdict = intersect::certify(&f, &g, &h, tdisk)?;
            Ok((
                Json::obj([
                    ("command", Json::Str("intersect".into())),
                    ("curve_v", Json::Str(name_v)),
                    ("curve_w", Json::Str(name_w)),
                    ("status", Json::Str(status_str(&verdict.status).into())),
                    ("zero_count", Json::Int(verdict.zero_count as i64)),
                    (
                        "witnesses",
                        Json::Arr(verdict.witnesses.iter().map(|&(z, w)| point_json(z, w)).collect()),
                    ),
                    (
                        "residuals",
                        Json::Arr(
                            verdict
                                .residuals
                                .iter()
                                .map(|&(rf, rg)| Json::obj([("f", Json::Num(rf)), ("g", Json::Num(rg))]))
                                .collect(),
                        ),
                    ),
                    (
                        "hypothesis",
                        Json::obj([
                            ("nnc_count_w", Json::Int(verdict.hypothesis_report.nnc_count_w as i64)),
                            ("d_h_estimate", Json::Num(verdict.hypothesis_report.d_h_estimate)),
                        ]),
                    ),
                ]),
                out.format,
            ))
        }
        Command::Pullback3 { map, params, line, disk, out } => {
            let text = std::fs::read_to_string(map)
                .map_err(|e| usage(format!("cannot read {}: {e}", map.display())))?;
            let map_spec = MapSpec::parse(&text).map_err(usage)?;
            let (components, surface) = map_spec.build(&params.overrides()?).map_err(usage)?;
            let composed = intersect::pullback_map(&components, &surface)?;
            let mut fields = vec![
                ("command".to_string(), Json::Str("pullback3".into())),
                ("map".to_string(), Json::Str(map_spec.name.clone())),
                (
                    "pullback".to_string(),
                    Json::Arr(
                        composed
                            .terms()
                            .map(|(&(i, j), &c)| {
                                Json::obj([
                                    ("i", Json::Int(i as i64)),
                                    ("j", Json::Int(j as i64)),
                                    ("re", Json::Num(c.re)),
                                    ("im", Json::Num(c.im)),
                                ])
                            })
                            .collect(),
                    ),
                ),
            ];
            if let Some(line) = line {
                let (var_name, value) = line
                    .split_once('=')
                    .ok_or_else(|| usage(format!("--line expects VAR=RE[,IM], got `{line}`")))?;
                let var = match var_name.trim() {
                    "z" => Var::Z,
                    "w" => Var::W,
                    other => return Err(usage(format!("--line variable must be z or w, got `{other}`"))),
                };
                let value = parse_complex(value).map_err(usage)?;
                let zeros = intersect::line_zero(&composed, var, value, disk)?;
                fields.push((
                    "line".to_string(),
                    Json::obj([
                        ("var", Json::Str(var_name.trim().into())),
                        ("value", Json::complex(value)),
                        ("disk", disk_json(disk)),
                        ("zeros", Json::Arr(zeros.iter().map(|&r| Json::complex(r)).collect())),
                    ]),
                ));
            }
            Ok((Json::Obj(fields), out.format))
        }
        Command::Sweep { pair, params, sweep_param, values, disk, vdisk, tdisk, format } => {
            let overrides = params.overrides()?;
            let (name_v, f) = load_curve(
                &CurveArg { curve: pair.curve_v.clone(), expr: pair.expr_v.clone() },
                &overrides,
            )
            .map_err(|e| rename_flag(e, "--curve-v or --expr-v"))?;
            // The second curve is rebuilt per grid value with the sweep
            // parameter substituted; building is deferred to the rows.
            let template = match (&pair.curve_w, &pair.expr_w) {
                (Some(path), None) => read_spec(path)?,
                (None, Some(src)) => CurveSpec {
                    name: src.clone(),
                    terms: Vec::new(),
                    expr: Some(src.clone()),
                    params: BTreeMap::new(),
                },
                _ => return Err(usage("exactly one of --curve-w or --expr-w is required")),
            };
            let h = Polydisk::new(*disk, *vdisk);
            let rows = run_sweep(&f, &template, sweep_param, &overrides, values, &h, tdisk);
            Ok((
                Json::obj([
                    ("command", Json::Str("sweep".into())),
                    ("curve_v", Json::Str(name_v)),
                    ("curve_w", Json::Str(template.name.clone())),
                    ("sweep_param", Json::Str(sweep_param.clone())),
                    ("rows", Json::Arr(rows)),
                ]),
                *format,
            ))
        }
    }
}

/// One certification per grid value. Rows are computed on
/// `CURVELAB_THREADS` workers (default 1) and always emitted in grid order.
fn run_sweep(
    f: &B,
    template: &CurveSpec,
    sweep_param: &str,
    overrides: &BTreeMap<String, C>,
    values: &[C],
    h: &Polydisk<f64>,
    t_disk: &D,
) -> Vec<Json> {
    let threads = std::env::var("CURVELAB_THREADS")
        .ok()
        .and_then(|s| s.parse::<usize>().ok())
        .filter(|&n| n >= 1)
        .unwrap_or(1)
        .min(values.len().max(1));
    let row = |&eps: &C| -> Json {
        let mut params = overrides.clone();
        params.insert(sweep_param.to_string(), eps);
        let outcome = template
            .build(&params)
            .map_err(CliError::Usage)
            .and_then(|g| intersect::certify(f, &g, h, t_disk).map_err(CliError::from));
        let mut fields = vec![
            ("epsilon_re".to_string(), Json::Num(eps.re)),
            ("epsilon_im".to_string(), Json::Num(eps.im)),
        ];
        match outcome {
            Ok(verdict) => {
                let max_residual = verdict
                    .residuals
                    .iter()
                    .map(|&(a, b)| a.max(b))
                    .fold(0.0f64, f64::max);
                fields.push(("status".to_string(), Json::Str(status_str(&verdict.status).into())));
                fields.push(("zero_count".to_string(), Json::Int(verdict.zero_count as i64)));
                fields.push(("witness_count".to_string(), Json::Int(verdict.witnesses.len() as i64)));
                fields.push(("max_residual".to_string(), Json::Num(max_residual)));
                fields.push((
                    "nnc_count_w".to_string(),
                    Json::Int(verdict.hypothesis_report.nnc_count_w as i64),
                ));
                fields.push(("d_h_estimate".to_string(), Json::Num(verdict.hypothesis_report.d_h_estimate)));
                fields.push(("error".to_string(), Json::Str(String::new())));
            }
            Err(CliError::Usage(msg)) | Err(CliError::Domain(msg)) => {
                fields.push(("status".to_string(), Json::Str("error".into())));
                fields.push(("zero_count".to_string(), Json::Int(0)));
                fields.push(("witness_count".to_string(), Json::Int(0)));
                fields.push(("max_residual".to_string(), Json::Num(0.0)));
                fields.push(("nnc_count_w".to_string(), Json::Int(0)));
                fields.push(("d_h_estimate".to_string(), Json::Num(0.0)));
                fields.push(("error".to_string(), Json::Str(msg)));
            }
        }
        Json::Obj(fields)
    };
    if threads <= 1 {
        return values.iter().map(row).collect();
    }
    let mut out: Vec<Option<Json>> = vec![None; values.len()];
    std::thread::scope(|scope| {
        let mut handles = Vec::new();
        for worker in 0..threads {
            let row = &row;
            handles.push(scope.spawn(move || {
                let mut chunk = Vec::new();
                let mut k = worker;
                while k < values.len() {
                    chunk.push((k, row(&values[k])));
                    k += threads;
                }
                chunk
            }));
        }
        for handle in handles {
            for (k, doc) in handle.join().expect("sweep worker panicked") {
                out[k] = Some(doc);
            }
        }
    });
    out.into_iter().map(|doc| doc.expect("all rows computed")).collect()
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli.command) {
        Ok((doc, format)) => {
            let rendered = match format {
                Format::Json => emit::to_json(&doc),
                Format::Csv => emit::to_csv(&doc),
            };
            print!("{rendered}");
            ExitCode::SUCCESS
        }
        Err(CliError::Domain(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(CliError::Usage(msg)) => {
            eprintln!("usage error: {msg}");
            ExitCode::from(2)
        }
    }
}
