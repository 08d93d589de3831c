//! The `micz9` command line.
//!
//! Every command prints one JSON record on standard output; `sweep` can print
//! CSV instead. Exact mode writes rationals as `"p/q"` strings and radicals as
//! `{"coeff": "p/q", "radicand": "d"}`; float mode writes 17 significant digits.
//! Errors go to standard error as `Name: message` with exit code 2
//! (validation), 3 (numerical) or 4 (internal identity breach).

use clap::{Parser, Subcommand, ValueEnum};
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive};
use serde_json::{json, Map, Number, Value};

use crate::coeffs::{self, CoeffContext, ExactTridiagonal};
use crate::error::{MiczError, Result};
use crate::exact::parse_rational;
use crate::interbasis;
use crate::sector::{validate_sector, Sector};
use crate::spheroidal::{self, eigen_sym_tridiagonal, linear_grid, log_grid, sweep_branches};
use crate::verify::{self, VerifyOptions};

pub const SCHEMA_VERSION: &str = "1";

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    Exact,
    Float,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Record,
    Csv,
}

#[derive(Debug, Clone, Parser)]
#[command(name = "micz9", version, about = "Interbasis matrices and spheroidal spectra of the 9D MICZ-Kepler problem")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub flags: Flags,
}

#[derive(Debug, Clone, clap::Args)]
pub struct Flags {
    /// Principal quantum number n.
    #[arg(long = "n", global = true, allow_negative_numbers = true)]
    pub n: Option<i64>,
    /// Monopole charge label Q.
    #[arg(long = "Q", global = true, allow_negative_numbers = true)]
    pub q: Option<i64>,
    #[arg(long = "L", global = true, allow_negative_numbers = true)]
    pub l: Option<i64>,
    #[arg(long = "J", global = true, allow_negative_numbers = true)]
    pub j: Option<i64>,
    /// Nuclear charge, integer, `p/q` or decimal.
    #[arg(long = "Z", global = true, default_value = "1", allow_hyphen_values = true)]
    pub z: String,
    #[arg(long, global = true, value_enum, default_value_t = Mode::Float)]
    pub mode: Mode,
    #[arg(long, global = true, value_enum, default_value_t = Format::Record)]
    pub format: Format,
    /// Starting node count for quadrature (verify).
    #[arg(long, global = true, default_value_t = crate::wavefield::DEFAULT_NODES)]
    pub nodes: usize,
    /// Quadrature tolerance per W entry (verify).
    #[arg(long, global = true, default_value_t = 1e-8)]
    pub tol: f64,
    /// Focal distance for kspectrum and tcoeffs.
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub a: Option<String>,
    /// Lower end of the sweep grid; small-a point for limits.
    #[arg(long = "a-min", global = true, allow_negative_numbers = true)]
    pub a_min: Option<f64>,
    /// Upper end of the sweep grid; large-a point for limits.
    #[arg(long = "a-max", global = true, allow_negative_numbers = true)]
    pub a_max: Option<f64>,
    #[arg(long, global = true, default_value_t = 11)]
    pub points: usize,
    /// Space the sweep grid logarithmically.
    #[arg(long, global = true)]
    pub log: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Subcommand)]
pub enum Command {
    /// Label ranges, dimension, energy and parabolic eigenvalues.
    States,
    /// The spherical-to-parabolic matrix W.
    Wmatrix,
    /// The ninth integral of motion in the spherical basis.
    M9,
    /// The spheroidal matrix and its spectrum at --a.
    Kspectrum,
    /// Spheroidal coefficients T by inverse iteration and by continuant at --a.
    Tcoeffs,
    /// Branches K(a) over a grid.
    Sweep,
    /// Spherical (small a) and parabolic (large a) limits.
    Limits,
    /// The full cross-check suite.
    Verify,
}

impl Command {
    fn name(self) -> &'static str {
        match self {
            Command::States => "states",
            Command::Wmatrix => "wmatrix",
            Command::M9 => "m9",
            Command::Kspectrum => "kspectrum",
            Command::Tcoeffs => "tcoeffs",
            Command::Sweep => "sweep",
            Command::Limits => "limits",
            Command::Verify => "verify",
        }
    }
}

/// What a run produced: text for standard output, and the error (if any)
/// that determines the exit code. Some commands print a record and still fail.
#[derive(Debug)]
pub struct Outcome {
    pub stdout: String,
    pub error: Option<MiczError>,
}

impl Outcome {
    pub fn exit_code(&self) -> i32 {
        self.error.as_ref().map_or(0, |e| e.category().exit_code())
    }
}

/// Float as a JSON number with 17 significant digits.
pub fn float(x: f64) -> Value {
    if !x.is_finite() {
        return Value::Null;
    }
    let text = format!("{x:.16e}");
    Value::Number(text.parse::<Number>().expect("formatted float is a JSON number"))
}

fn floats(xs: &[f64]) -> Value {
    Value::Array(xs.iter().map(|x| float(*x)).collect())
}

fn rational(r: &BigRational) -> Value {
    Value::String(r.to_string())
}

fn exact_matrix(m: &[Vec<crate::RadicalScalar>]) -> Value {
    m.iter().map(|row| row.iter().map(|x| x.to_json()).collect::<Vec<_>>()).collect()
}

fn float_matrix(rows: usize, cols: usize, f: impl Fn(usize, usize) -> f64) -> Value {
    (0..rows).map(|i| Value::Array((0..cols).map(|j| float(f(i, j))).collect())).collect()
}

fn require(v: Option<i64>, flag: &str) -> Result<i64> {
    v.ok_or_else(|| MiczError::InvalidArgument(format!("--{flag} is required")))
}

fn sector_from(flags: &Flags) -> Result<Sector> {
    let z = parse_rational(&flags.z)?;
    validate_sector(require(flags.n, "n")?, require(flags.q, "Q")?, require(flags.l, "L")?, require(flags.j, "J")?, z)
}

fn sector_json(s: &Sector) -> Value {
    json!({ "n": s.n(), "Q": s.q(), "L": s.l(), "J": s.j(), "Z": rational(s.z()) })
}

fn labels(s: &Sector, mode: Mode) -> (Value, Value) {
    let lambdas: Vec<Value> = s.lambda_range().iter().map(|l| Value::String(l.to_string())).collect();
    let nps: Vec<Value> = s
        .np_range()
        .into_iter()
        .map(|p| match mode {
            Mode::Exact => Value::String(p.to_string()),
            Mode::Float => json!(p),
        })
        .collect();
    (Value::Array(lambdas), Value::Array(nps))
}

/// Parses `--a` as an exact rational (exact mode) and as the nearest `f64`.
fn focal_distance(flags: &Flags) -> Result<(BigRational, f64)> {
    let text = flags.a.as_deref().ok_or_else(|| MiczError::InvalidArgument("--a is required".into()))?;
    let exact = parse_rational(text)?;
    let approx = text
        .parse::<f64>()
        .ok()
        .or_else(|| exact.to_f64())
        .ok_or_else(|| MiczError::InvalidArgument(format!("--a {text} is not representable")))?;
    if !exact.is_positive() || !(approx > 0.0 && approx.is_finite()) {
        return Err(MiczError::InvalidArgument(format!("--a must be positive, got {text}")));
    }
    Ok((exact, approx))
}

fn exact_k_matrix(s: &Sector, a: &BigRational) -> Result<ExactTridiagonal> {
    CoeffContext::new(s.clone(), a * s.z())?.k_matrix()
}

fn tridiagonal_json(m: &ExactTridiagonal, mode: Mode) -> Value {
    match mode {
        Mode::Exact => json!({
            "diag": m.diag.iter().map(|x| x.to_json()).collect::<Vec<_>>(),
            "offdiag": m.offdiag.iter().map(|x| x.to_json()).collect::<Vec<_>>(),
        }),
        Mode::Float => json!({
            "diag": m.diag.iter().map(|x| float(x.to_f64())).collect::<Vec<_>>(),
            "offdiag": m.offdiag.iter().map(|x| float(x.to_f64())).collect::<Vec<_>>(),
        }),
    }
}

struct Record {
    payload: Value,
    metadata: Map<String, Value>,
    error: Option<MiczError>,
}

impl Record {
    fn ok(payload: Value) -> Record {
        Record { payload, metadata: Map::new(), error: None }
    }

    fn meta(mut self, key: &str, value: Value) -> Record {
        self.metadata.insert(key.into(), value);
        self
    }
}

fn float_only(cmd: Command, mode: Mode) -> Result<()> {
    if mode == Mode::Exact {
        return Err(MiczError::InvalidArgument(format!(
            "{} has no exact mode: its results are eigenvectors or tolerance checks",
            cmd.name()
        )));
    }
    Ok(())
}

fn cmd_states(s: &Sector, mode: Mode) -> Result<Record> {
    let (lam, np) = labels(s, mode);
    let m9: Vec<_> = s.np_range().into_iter().map(|p| s.m9_parabolic_eigenvalue(p)).collect::<Result<_>>()?;
    let payload = match mode {
        Mode::Exact => json!({
            "N": s.dim().to_string(),
            "lambda": lam,
            "n_p": np,
            "E": rational(&s.energy()),
            "alpha": rational(&s.alpha_scale()),
            "sqrt_minus_2E": rational(&s.sqrt_minus_2e()),
            "m9_eigenvalues": m9.iter().map(|h| Value::String(h.to_string())).collect::<Vec<_>>(),
        }),
        Mode::Float => json!({
            "N": s.dim(),
            "lambda": lam,
            "n_p": np,
            "E": float(s.energy_f64()),
            "alpha": float(s.alpha_f64()),
            "sqrt_minus_2E": float(s.sqrt_minus_2e().to_f64().unwrap_or(f64::NAN)),
            "m9_eigenvalues": m9.iter().map(|h| float(h.to_f64())).collect::<Vec<_>>(),
        }),
    };
    Ok(Record::ok(payload))
}

fn index_meta(rec: Record, s: &Sector, mode: Mode, columns: &str) -> Record {
    let (lam, np) = labels(s, mode);
    rec.meta("rows", json!("lambda ascending")).meta("columns", json!(columns)).meta("lambda", lam).meta("n_p", np)
}

fn cmd_wmatrix(s: &Sector, mode: Mode) -> Result<Record> {
    let w = interbasis::w_matrix(s)?;
    let n = w.dim();
    let entries = match mode {
        Mode::Exact => exact_matrix(&w.entries),
        Mode::Float => float_matrix(n, n, |i, j| w.entries[i][j].to_f64()),
    };
    Ok(index_meta(Record::ok(json!({ "W": entries })), s, mode, "n_p ascending"))
}

fn cmd_m9(s: &Sector, mode: Mode) -> Result<Record> {
    let m = coeffs::m9_spherical_matrix(s)?;
    let dense = m.to_dense();
    let n = m.dim();
    let payload = match mode {
        Mode::Exact => json!({
            "M9": exact_matrix(&dense),
            "trace": m.trace()?.to_json(),
        }),
        Mode::Float => {
            let values = spheroidal::eigenvalues_sym_tridiagonal(&m.to_f64())?;
            json!({
                "M9": float_matrix(n, n, |i, j| dense[i][j].to_f64()),
                "trace": float(m.trace()?.to_f64()),
                "eigenvalues": floats(&values),
            })
        }
    };
    Ok(index_meta(Record::ok(payload), s, mode, "lambda ascending"))
}

fn cmd_kspectrum(s: &Sector, flags: &Flags) -> Result<Record> {
    let (a_exact, a) = focal_distance(flags)?;
    let m = exact_k_matrix(s, &a_exact)?;
    let payload = match flags.mode {
        Mode::Exact => json!({ "a": rational(&a_exact), "K_hat": tridiagonal_json(&m, Mode::Exact) }),
        Mode::Float => {
            let e = eigen_sym_tridiagonal(&m.to_f64())?;
            let n = e.values.len();
            json!({
                "a": float(a),
                "K_hat": tridiagonal_json(&m, Mode::Float),
                "K": floats(&e.values),
                "T": float_matrix(n, n, |i, j| e.vectors[(i, j)]),
            })
        }
    };
    Ok(index_meta(Record::ok(payload), s, flags.mode, "n_k ascending"))
}

fn cmd_tcoeffs(s: &Sector, flags: &Flags) -> Result<Record> {
    float_only(Command::Tcoeffs, flags.mode)?;
    let (_, a) = focal_distance(flags)?;
    let sp = spheroidal::separation_constants(s, a)?;
    let n = sp.dim();
    let mut cont = Vec::with_capacity(n);
    for &k in &sp.k {
        cont.push(spheroidal::continuant_vector(&sp.matrix, k)?);
    }
    let diff = (0..n)
        .flat_map(|j| (0..n).map(move |i| (i, j)))
        .map(|(i, j)| (cont[j][i] - sp.t[(i, j)]).abs())
        .fold(0.0, f64::max);
    let payload = json!({
        "a": float(a),
        "K": floats(&sp.k),
        "T": float_matrix(n, n, |i, j| sp.t[(i, j)]),
        "T_continuant": float_matrix(n, n, |i, j| cont[j][i]),
        "max_difference": float(diff),
    });
    Ok(index_meta(Record::ok(payload), s, flags.mode, "n_k ascending"))
}

fn sweep_grid(flags: &Flags) -> Result<Vec<f64>> {
    let (lo, hi) = match (flags.a_min, flags.a_max) {
        (Some(lo), Some(hi)) => (lo, hi),
        _ => return Err(MiczError::InvalidArgument("sweep needs --a-min and --a-max".into())),
    };
    if flags.log {
        log_grid(lo, hi, flags.points)
    } else {
        linear_grid(lo, hi, flags.points)
    }
}

fn cmd_sweep(s: &Sector, flags: &Flags) -> Result<Record> {
    float_only(Command::Sweep, flags.mode)?;
    let grid = sweep_grid(flags)?;
    let sweep = sweep_branches(s, &grid)?;
    let branches: Vec<Value> = sweep
        .branches
        .iter()
        .enumerate()
        .map(|(n_k, pts)| {
            json!({
                "n_k": n_k,
                "K": pts.iter().map(|p| float(p.k)).collect::<Vec<_>>(),
                "K_over_a": pts.iter().map(|p| float(p.k_over_a)).collect::<Vec<_>>(),
            })
        })
        .collect();
    let payload = json!({ "a": floats(&grid), "branches": branches });
    Ok(Record::ok(payload).meta("grid", json!(if flags.log { "log" } else { "linear" })))
}

/// `a,n_k,K,K_over_a`, one row per grid point and branch.
pub fn sweep_csv(s: &Sector, flags: &Flags) -> Result<String> {
    let grid = sweep_grid(flags)?;
    let sweep = sweep_branches(s, &grid)?;
    let mut out = String::from("a,n_k,K,K_over_a\n");
    for (i, a) in grid.iter().enumerate() {
        for (n_k, br) in sweep.branches.iter().enumerate() {
            let p = br[i];
            out.push_str(&format!("{a:.16e},{n_k},{:.16e},{:.16e}\n", p.k, p.k_over_a));
        }
    }
    Ok(out)
}

fn cmd_limits(s: &Sector, flags: &Flags) -> Result<Record> {
    float_only(Command::Limits, flags.mode)?;
    let a_small = flags.a_min.unwrap_or(verify::SPHERICAL_A);
    let a_large = flags.a_max.unwrap_or(verify::PARABOLIC_A);
    let sph = spheroidal::spherical_limit(s, a_small)?;
    let par = spheroidal::parabolic_limit(s, a_large)?;
    let sph_ok =
        sph.max_corrected_deviation() <= verify::SPHERICAL_K_TOL && sph.max_t_deviation() <= verify::SPHERICAL_T_TOL;
    let par_ok = par.set_deviation <= verify::PARABOLIC_TOL
        && par.max_deviation() <= verify::PARABOLIC_TOL
        && par.max_t_deviation() <= verify::PARABOLIC_TOL;
    let payload = json!({
        "spherical": {
            "a": float(a_small),
            "passed": sph_ok,
            "branches": sph.branches.iter().map(|b| json!({
                "n_k": b.n_k,
                "lambda": b.lambda.to_string(),
                "K": float(b.k),
                "K_limit": float(b.k_limit),
                "deviation": float(b.deviation),
                "corrected_deviation": float(b.corrected_deviation),
                "T_deviation": float(b.t_deviation),
            })).collect::<Vec<_>>(),
        },
        "parabolic": {
            "a": float(a_large),
            "passed": par_ok,
            "set_deviation": float(par.set_deviation),
            "branches": par.branches.iter().map(|b| json!({
                "n_k": b.n_k,
                "n_p": b.n_p,
                "K_over_a": float(b.k_over_a),
                "target": float(b.target),
                "deviation": float(b.deviation),
                "T_deviation": float(b.t_deviation),
            })).collect::<Vec<_>>(),
        },
    });
    let mut rec = Record::ok(payload);
    if !(sph_ok && par_ok) {
        let which = match (sph_ok, par_ok) {
            (false, false) => "spherical and parabolic",
            (false, true) => "spherical",
            _ => "parabolic",
        };
        rec.error = Some(MiczError::LimitMismatch(format!("{which} limit outside tolerance for {s}")));
    }
    Ok(rec)
}

fn cmd_verify(s: &Sector, flags: &Flags) -> Result<Record> {
    float_only(Command::Verify, flags.mode)?;
    if flags.nodes == 0 || flags.tol.is_nan() || flags.tol < 0.0 {
        return Err(MiczError::InvalidArgument("--nodes must be positive and --tol non-negative".into()));
    }
    let opts = VerifyOptions { nodes: flags.nodes, tol: flags.tol };
    let rep = verify::run_verify(s, &opts)?;
    let checks: Vec<Value> = rep
        .checks
        .iter()
        .map(|c| {
            json!({
                "name": c.name,
                "passed": c.passed,
                "max_error": float(c.max_error),
                "tolerance": float(c.tolerance),
                "detail": c.detail,
            })
        })
        .collect();
    let failed: Vec<&verify::Check> = rep.checks.iter().filter(|c| !c.passed).collect();
    let mut rec = Record::ok(json!({ "passed": failed.is_empty(), "checks": checks }));
    if !failed.is_empty() {
        let names = failed.iter().map(|c| c.name).collect::<Vec<_>>().join(", ");
        // a nonzero exact residual is a broken identity, not a loose tolerance
        rec.error = Some(if failed.iter().any(|c| c.exact) {
            MiczError::IdentityViolation(names)
        } else {
            MiczError::ToleranceExceeded(names)
        });
    }
    Ok(rec)
}

fn dispatch(cmd: Command, s: &Sector, flags: &Flags) -> Result<Record> {
    match cmd {
        Command::States => cmd_states(s, flags.mode),
        Command::Wmatrix => cmd_wmatrix(s, flags.mode),
        Command::M9 => cmd_m9(s, flags.mode),
        Command::Kspectrum => cmd_kspectrum(s, flags),
        Command::Tcoeffs => cmd_tcoeffs(s, flags),
        Command::Sweep => cmd_sweep(s, flags),
        Command::Limits => cmd_limits(s, flags),
        Command::Verify => cmd_verify(s, flags),
    }
}

fn mode_name(mode: Mode) -> &'static str {
    match mode {
        Mode::Exact => "exact",
        Mode::Float => "float",
    }
}

fn execute(cli: &Cli) -> Result<(String, Option<MiczError>)> {
    let flags = &cli.flags;
    let s = sector_from(flags)?;
    if flags.format == Format::Csv {
        if cli.command != Command::Sweep {
            return Err(MiczError::InvalidArgument("--format csv applies only to sweep".into()));
        }
        float_only(Command::Sweep, flags.mode)?;
        return Ok((sweep_csv(&s, flags)?, None));
    }
    let rec = dispatch(cli.command, &s, flags)?;
    let out = json!({
        "schema_version": SCHEMA_VERSION,
        "command": cli.command.name(),
        "sector": sector_json(&s),
        "mode": mode_name(flags.mode),
        "metadata": Value::Object(rec.metadata),
        "payload": rec.payload,
    });
    let text = serde_json::to_string_pretty(&out).expect("JSON values serialize") + "\n";
    Ok((text, rec.error))
}

/// Runs a parsed command line.
pub fn run(cli: &Cli) -> Outcome {
    match execute(cli) {
        Ok((stdout, error)) => Outcome { stdout, error },
        Err(e) => Outcome { stdout: String::new(), error: Some(e) },
    }
}

/// Entry point for the binary: parses `args`, prints, and returns the exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    let outcome = run(&cli);
    print!("{}", outcome.stdout);
    if let Some(e) = &outcome.error {
        eprintln!("{}: {e}", e.name());
    }
    outcome.exit_code()
}
