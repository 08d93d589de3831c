//! The two coordinate degenerations of the spheroidal basis.
//!
//! As `a → 0` the branch `n_k` (ascending) becomes the spherical state with
//! `λ = n + Q/2 − n_k` and `K → −λ(λ+7)`. As `a → ∞`, `K̂ ≈ −a√(−2E)·M₉`, so
//! `K/a → −√(−2E)·(n + Q/2 − J − 2n_p)` and ascending `n_k` pairs with
//! ascending `n_p = n_k`; the columns of `T` approach the columns of W.

use super::separation_constants;
use crate::coeffs;
use crate::error::{MiczError, Result};
use crate::interbasis;
use crate::sector::Sector;

#[derive(Debug, Clone, PartialEq)]
pub struct SphericalBranch {
    pub n_k: usize,
    pub lambda: crate::HalfInt,
    pub k: f64,
    /// `−λ(λ+7)`.
    pub k_limit: f64,
    /// `|K − k_limit|`.
    pub deviation: f64,
    /// `|K − A_λ(aZ)|`: the deviation once the part of `A_λ` linear in `a` is included.
    pub corrected_deviation: f64,
    /// `max |T column − e_λ|`.
    pub t_deviation: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SphericalLimitReport {
    pub a: f64,
    pub branches: Vec<SphericalBranch>,
}

impl SphericalLimitReport {
    pub fn max_deviation(&self) -> f64 {
        self.branches.iter().map(|b| b.deviation).fold(0.0, f64::max)
    }
    pub fn max_corrected_deviation(&self) -> f64 {
        self.branches.iter().map(|b| b.corrected_deviation).fold(0.0, f64::max)
    }
    pub fn max_t_deviation(&self) -> f64 {
        self.branches.iter().map(|b| b.t_deviation).fold(0.0, f64::max)
    }
}

/// Measures every branch against its spherical limit at a small `a`.
pub fn spherical_limit(s: &Sector, a_small: f64) -> Result<SphericalLimitReport> {
    if a_small.is_nan() || a_small <= 0.0 {
        return Err(MiczError::InvalidArgument(format!("a_small = {a_small} must be positive")));
    }
    let sp = separation_constants(s, a_small)?;
    let n = sp.dim();
    let az = a_small * s.z_f64();
    let mut branches = Vec::with_capacity(n);
    for n_k in 0..n {
        let lambda = s.nq() - n_k as i64;
        let row = n - 1 - n_k;
        let l = lambda.to_f64();
        let k_limit = -l * (l + 7.0);
        let k = sp.k[n_k];
        let corrected = coeffs::coef_a_f64(s, lambda, az)?;
        let t_deviation = (0..n).map(|i| (sp.t[(i, n_k)] - if i == row { 1.0 } else { 0.0 }).abs()).fold(0.0, f64::max);
        branches.push(SphericalBranch {
            n_k,
            lambda,
            k,
            k_limit,
            deviation: (k - k_limit).abs(),
            corrected_deviation: (k - corrected).abs(),
            t_deviation,
        });
    }
    Ok(SphericalLimitReport { a: a_small, branches })
}

/// Gates the spherical limit on the first-order-corrected deviation and the
/// T columns.
pub fn check_spherical_limit(s: &Sector, a_small: f64, k_tol: f64, t_tol: f64) -> Result<SphericalLimitReport> {
    let rep = spherical_limit(s, a_small)?;
    let bad: Vec<String> = rep
        .branches
        .iter()
        .filter(|b| b.corrected_deviation > k_tol || b.t_deviation > t_tol)
        .map(|b| {
            format!("n_k={} λ={}: K={:e} ΔK={:e} ΔT={:e}", b.n_k, b.lambda, b.k, b.corrected_deviation, b.t_deviation)
        })
        .collect();
    if bad.is_empty() {
        Ok(rep)
    } else {
        Err(MiczError::LimitMismatch(format!("{s} at a = {a_small:e}: {}", bad.join("; "))))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ParabolicBranch {
    pub n_k: usize,
    /// The parabolic label this branch approaches.
    pub n_p: usize,
    pub k_over_a: f64,
    /// `−√(−2E)·(n + Q/2 − J − 2n_p)`.
    pub target: f64,
    pub deviation: f64,
    /// `max |T column − W column n_p|`.
    pub t_deviation: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ParabolicLimitReport {
    pub a: f64,
    pub branches: Vec<ParabolicBranch>,
    /// Largest gap between the sorted `{K/a}` and the sorted set
    /// `{2Z(n + Q/2 − L − 2k)/(2n + Q + 8)}`.
    pub set_deviation: f64,
}

impl ParabolicLimitReport {
    pub fn max_deviation(&self) -> f64 {
        self.branches.iter().map(|b| b.deviation).fold(0.0, f64::max)
    }
    pub fn max_t_deviation(&self) -> f64 {
        self.branches.iter().map(|b| b.t_deviation).fold(0.0, f64::max)
    }
}

/// Measures every branch against its parabolic limit at a large `a`.
pub fn parabolic_limit(s: &Sector, a_large: f64) -> Result<ParabolicLimitReport> {
    if !(a_large > 0.0 && a_large.is_finite()) {
        return Err(MiczError::InvalidArgument(format!("a_large = {a_large} must be positive")));
    }
    let sp = separation_constants(s, a_large)?;
    let w = interbasis::w_matrix(s)?.to_f64();
    let n = sp.dim();
    let root = s.z_f64() * 2.0 / s.scale() as f64;
    let mut branches = Vec::with_capacity(n);
    for n_k in 0..n {
        let n_p = n_k;
        let m9 = s.m9_parabolic_eigenvalue(n_p as i64)?.to_f64();
        let target = -root * m9;
        let k_over_a = sp.k[n_k] / a_large;
        let t_deviation = (0..n).map(|i| (sp.t[(i, n_k)] - w[(i, n_p)]).abs()).fold(0.0, f64::max);
        branches.push(ParabolicBranch {
            n_k,
            n_p,
            k_over_a,
            target,
            deviation: (k_over_a - target).abs(),
            t_deviation,
        });
    }
    let mut set: Vec<f64> = (0..n as i64).map(|k| root * (s.nq() - s.l() - 2 * k).to_f64()).collect();
    set.sort_by(f64::total_cmp);
    let set_deviation = set.iter().zip(&sp.k).map(|(t, k)| (k / a_large - t).abs()).fold(0.0, f64::max);
    Ok(ParabolicLimitReport { a: a_large, branches, set_deviation })
}

pub fn check_parabolic_limit(s: &Sector, a_large: f64, tol: f64) -> Result<ParabolicLimitReport> {
    if a_large < 1e4 {
        return Err(MiczError::InvalidArgument(format!("a_large = {a_large} is below 1e4")));
    }
    let rep = parabolic_limit(s, a_large)?;
    if rep.set_deviation > tol || rep.max_deviation() > tol || rep.max_t_deviation() > tol {
        return Err(MiczError::LimitMismatch(format!(
            "{s} at a = {a_large:e}: set {:e}, per-branch {:e}, T vs W {:e}",
            rep.set_deviation,
            rep.max_deviation(),
            rep.max_t_deviation()
        )));
    }
    Ok(rep)
}
