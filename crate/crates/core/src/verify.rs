//! The cross-oracle suite for one sector.
//!
//! Every check compares a closed form against something computed another way:
//! exact algebra for W and M₉, Clebsch–Gordan sums, quadrature of the
//! wavefunctions, the continuant against inverse iteration, the two coordinate
//! limits and the separated ODEs. Checks run in a fixed order with fixed
//! parameters, so the report is reproducible.

use crate::coeffs;
use crate::error::Result;
use crate::exact::RadicalScalar;
use crate::interbasis::{self, WMatrix};
use crate::sector::Sector;
use crate::spheroidal::{self, log_grid, separation_constants};
use crate::wavefield::{self, OdeKind, ANGULAR_POINTS, PARABOLIC_POINTS, RADIAL_POINTS};

/// Focal distances at which the eigenproblem residuals are measured.
pub const EIGEN_A_VALUES: [f64; 4] = [0.1, 1.0, 10.0, 100.0];
/// Grid over `[1e−2, 1e3]` for the continuant comparison.
pub const CONTINUANT_POINTS: usize = 26;
pub const SPHERICAL_A: f64 = 1e-8;
pub const PARABOLIC_A: f64 = 1e6;

pub const EIGEN_TOL: f64 = 1e-12;
pub const CONTINUANT_TOL: f64 = 1e-8;
pub const SPHERICAL_K_TOL: f64 = 1e-12;
pub const SPHERICAL_T_TOL: f64 = 1e-6;
pub const PARABOLIC_TOL: f64 = 1e-4;
pub const ODE_TOL: f64 = 1e-8;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VerifyOptions {
    /// Starting node count of the quadrature doubling loop.
    pub nodes: usize,
    /// Allowed `|quadrature − exact|` per W entry.
    pub tol: f64,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions { nodes: wavefield::DEFAULT_NODES, tol: 1e-8 }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Check {
    pub name: &'static str,
    pub passed: bool,
    /// Largest error seen. Exact checks report the float value of the largest
    /// nonzero exact residual, so a pass is exactly zero.
    pub max_error: f64,
    pub tolerance: f64,
    /// An exact identity rather than a floating-point tolerance check.
    pub exact: bool,
    pub detail: String,
}

impl Check {
    fn new(name: &'static str, max_error: f64, tolerance: f64, detail: String) -> Check {
        Check { name, passed: max_error <= tolerance, max_error, tolerance, exact: false, detail }
    }

    fn exact(name: &'static str, max_error: f64, detail: String) -> Check {
        Check { exact: true, ..Check::new(name, max_error, 0.0, detail) }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct VerifyReport {
    pub sector: Sector,
    pub checks: Vec<Check>,
}

impl VerifyReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

fn exact_abs(x: &RadicalScalar) -> f64 {
    x.to_f64().abs()
}

/// `WᵀW = I` and `WWᵀ = I`, exactly.
pub fn check_orthogonality(w: &WMatrix) -> Check {
    let n = w.dim();
    let mut worst = 0.0f64;
    let mut failures = 0usize;
    for a in 0..n {
        for b in a..n {
            let delta = if a == b { -1 } else { 0 };
            let mut col: crate::RadicalSum = (0..n).map(|r| &w.entries[r][a] * &w.entries[r][b]).collect();
            let mut row = w.row_product(a, b);
            col.push(&RadicalScalar::from_int(delta));
            row.push(&RadicalScalar::from_int(delta));
            for p in [col, row] {
                if !p.is_zero() {
                    failures += 1;
                    worst = worst.max(p.to_f64().abs().max(f64::MIN_POSITIVE));
                }
            }
        }
    }
    Check::exact("orthogonality", worst, format!("{failures} nonzero entries of WᵀW−I, WWᵀ−I"))
}

/// Closed-form M₉ against the weighted sum over W, exactly; and its float
/// eigenvalues against `n + Q/2 − J − 2n_p`.
pub fn check_m9(s: &Sector, w: &WMatrix) -> Result<Vec<Check>> {
    let closed = coeffs::m9_spherical_matrix(s)?;
    let brute = interbasis::m9_from_w(w)?;
    let bad = interbasis::m9_mismatches(&brute, &closed);
    let worst = bad
        .iter()
        .map(|&(a, b)| (brute[a][b].to_f64() - closed.get(a, b).to_f64()).abs().max(f64::MIN_POSITIVE))
        .fold(0.0, f64::max);
    let exact = Check::exact("m9_equivalence", worst, format!("{} mismatched entries", bad.len()));

    let values = spheroidal::eigenvalues_sym_tridiagonal(&closed.to_f64())?;
    let mut want = s
        .np_range()
        .into_iter()
        .map(|p| s.m9_parabolic_eigenvalue(p).map(|e| e.to_f64()))
        .collect::<Result<Vec<_>>>()?;
    want.sort_by(f64::total_cmp);
    let err = values.iter().zip(&want).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max);
    let eig = Check::new("m9_eigenvalues", err, 1e-12, format!("{} eigenvalues", values.len()));
    Ok(vec![exact, eig])
}

/// The three-term recurrence in λ, exactly, at every `(λ, n_p)`.
pub fn check_w_recurrence(s: &Sector, w: &WMatrix) -> Result<Check> {
    let mut worst = 0.0f64;
    let mut failures = 0usize;
    for lam in s.lambda_range() {
        for p in s.np_range() {
            let r = interbasis::w_recurrence_residual(w, lam, p)?;
            if !r.is_zero() {
                failures += 1;
                worst = worst.max(r.to_f64().abs().max(f64::MIN_POSITIVE));
            }
        }
    }
    Ok(Check::exact("w_recurrence", worst, format!("{failures} nonzero residuals")))
}

/// The Clebsch–Gordan form of every W entry, exactly.
pub fn check_cg(s: &Sector, w: &WMatrix) -> Result<Check> {
    let mut worst = 0.0f64;
    let mut failures = 0usize;
    for (i, lam) in s.lambda_range().into_iter().enumerate() {
        for p in s.np_range() {
            let cg = interbasis::w_via_cg(s, lam, p)?;
            let direct = &w.entries[i][p as usize];
            if &cg != direct {
                failures += 1;
                worst = worst.max(exact_abs(&cg.sub(direct).unwrap_or(cg.clone())).max(f64::MIN_POSITIVE));
            }
        }
    }
    Ok(Check::exact("cg_equality", worst, format!("{failures} mismatched entries")))
}

/// W by quadrature of the wavefunctions, node-doubled until stable.
pub fn check_quadrature(s: &Sector, w: &WMatrix, opts: &VerifyOptions) -> Result<Check> {
    let (q, nodes) = wavefield::w_overlap_matrix_converged(s, opts.nodes)?;
    let wf = w.to_f64();
    let mut err = 0.0f64;
    for (i, row) in q.iter().enumerate() {
        for (j, v) in row.iter().enumerate() {
            err = err.max((v - wf[(i, j)]).abs());
        }
    }
    Ok(Check::new("quadrature", err, opts.tol, format!("{nodes} nodes")))
}

/// `‖K̂T − TK‖ ≤ tol·‖K̂‖` and `‖TᵀT − I‖ ≤ tol` at fixed focal distances.
pub fn check_eigenproblem(s: &Sector) -> Result<Vec<Check>> {
    let (mut res, mut orth) = (0.0f64, 0.0f64);
    for a in EIGEN_A_VALUES {
        let sp = separation_constants(s, a)?;
        let norm = sp.norm();
        let r = sp.residual();
        // relative residual; an all-zero matrix has nothing to compare
        res = res.max(if norm > 0.0 { r / norm } else { r });
        orth = orth.max(sp.orthogonality_defect());
    }
    let grid = format!("a in {EIGEN_A_VALUES:?}");
    Ok(vec![
        Check::new("eigen_residual", res, EIGEN_TOL, grid.clone()),
        Check::new("eigen_orthogonality", orth, EIGEN_TOL, grid),
    ])
}

/// Continuant columns against inverse iteration over a log grid in `a`.
pub fn check_continuant(s: &Sector) -> Result<Check> {
    let mut err = 0.0f64;
    for a in log_grid(1e-2, 1e3, CONTINUANT_POINTS)? {
        let sp = separation_constants(s, a)?;
        for (n_k, &k) in sp.k.iter().enumerate() {
            let v = spheroidal::continuant_vector(&sp.matrix, k)?;
            for (i, x) in v.iter().enumerate() {
                err = err.max((x - sp.t[(i, n_k)]).abs());
            }
        }
    }
    Ok(Check::new("continuant", err, CONTINUANT_TOL, format!("{CONTINUANT_POINTS} points in [1e-2, 1e3]")))
}

/// `a → 0`. The gate is the deviation from `A_λ(aZ)`, which absorbs the part
/// of `K` linear in `a`; the bare deviation from `−λ(λ+7)` is reported.
pub fn check_spherical(s: &Sector) -> Result<Vec<Check>> {
    let rep = spheroidal::spherical_limit(s, SPHERICAL_A)?;
    Ok(vec![
        Check::new(
            "spherical_limit_k",
            rep.max_corrected_deviation(),
            SPHERICAL_K_TOL,
            format!("a = {SPHERICAL_A:e}, bare deviation {:.3e}", rep.max_deviation()),
        ),
        Check::new("spherical_limit_t", rep.max_t_deviation(), SPHERICAL_T_TOL, format!("a = {SPHERICAL_A:e}")),
    ])
}

/// `a → ∞`: the set of `K/a`, each branch, and the T columns against W.
pub fn check_parabolic(s: &Sector) -> Result<Vec<Check>> {
    let rep = spheroidal::parabolic_limit(s, PARABOLIC_A)?;
    let at = format!("a = {PARABOLIC_A:e}");
    Ok(vec![
        Check::new("parabolic_limit_set", rep.set_deviation, PARABOLIC_TOL, at.clone()),
        Check::new("parabolic_limit_branch", rep.max_deviation(), PARABOLIC_TOL, at.clone()),
        Check::new("parabolic_limit_t", rep.max_t_deviation(), PARABOLIC_TOL, at),
    ])
}

/// Relative residuals of the four separated equations for every state.
pub fn check_ode(s: &Sector) -> Result<Check> {
    let mut err = 0.0f64;
    let mut count = 0usize;
    for lambda in s.lambda_range() {
        err = err.max(wavefield::ode_residuals(s, OdeKind::Radial { lambda }, &RADIAL_POINTS)?);
        err = err.max(wavefield::ode_residuals(s, OdeKind::Angular { lambda }, &ANGULAR_POINTS)?);
        count += RADIAL_POINTS.len() + ANGULAR_POINTS.len();
    }
    for n_p in s.np_range() {
        err = err.max(wavefield::ode_residuals(s, OdeKind::ParabolicU { n_p }, &PARABOLIC_POINTS)?);
        err = err.max(wavefield::ode_residuals(s, OdeKind::ParabolicV { n_p }, &PARABOLIC_POINTS)?);
        count += 2 * PARABOLIC_POINTS.len();
    }
    Ok(Check::new("ode_residuals", err, ODE_TOL, format!("{count} sample points")))
}

/// Runs every check. Numerical failures inside a check propagate as errors;
/// a check that runs but misses its tolerance is reported as failed.
pub fn run_verify(s: &Sector, opts: &VerifyOptions) -> Result<VerifyReport> {
    let w = interbasis::w_matrix_unchecked(s)?;
    let mut checks = vec![check_orthogonality(&w)];
    checks.extend(check_m9(s, &w)?);
    checks.push(check_w_recurrence(s, &w)?);
    checks.push(check_cg(s, &w)?);
    checks.push(check_quadrature(s, &w, opts)?);
    checks.extend(check_eigenproblem(s)?);
    checks.push(check_continuant(s)?);
    checks.extend(check_spherical(s)?);
    checks.extend(check_parabolic(s)?);
    checks.push(check_ode(s)?);
    Ok(VerifyReport { sector: s.clone(), checks })
}
