//! Following the eigenvalue branches `a ↦ K_{n_k}(a)` across a grid.

use super::{separation_constants, SpheroidalSpectrum};
use crate::error::{MiczError, Result};
use crate::sector::Sector;

/// Neighbouring eigenvectors on one branch must overlap at least this much.
const MIN_OVERLAP: f64 = 0.9;
/// Maximum number of interval halvings used to bridge a coarse grid step.
const MAX_REFINE_DEPTH: u32 = 24;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BranchPoint {
    pub a: f64,
    pub k: f64,
    pub k_over_a: f64,
}

#[derive(Debug, Clone)]
pub struct BranchSweep {
    pub sector: Sector,
    pub a_grid: Vec<f64>,
    /// `branches[n_k][i]` is the point at `a_grid[i]`.
    pub branches: Vec<Vec<BranchPoint>>,
}

pub fn linear_grid(a_min: f64, a_max: f64, points: usize) -> Result<Vec<f64>> {
    check_grid_args(a_min, a_max, points)?;
    let step = (a_max - a_min) / (points - 1) as f64;
    Ok((0..points).map(|i| if i + 1 == points { a_max } else { a_min + step * i as f64 }).collect())
}

pub fn log_grid(a_min: f64, a_max: f64, points: usize) -> Result<Vec<f64>> {
    check_grid_args(a_min, a_max, points)?;
    let (l0, l1) = (a_min.ln(), a_max.ln());
    let step = (l1 - l0) / (points - 1) as f64;
    Ok((0..points)
        .map(|i| match i {
            0 => a_min,
            _ if i + 1 == points => a_max,
            _ => (l0 + step * i as f64).exp(),
        })
        .collect())
}

fn check_grid_args(a_min: f64, a_max: f64, points: usize) -> Result<()> {
    if !(a_min > 0.0 && a_min < a_max && a_max.is_finite()) || points < 2 {
        return Err(MiczError::InvalidArgument(format!(
            "grid needs 0 < a_min < a_max and at least 2 points (got {a_min}, {a_max}, {points})"
        )));
    }
    Ok(())
}

fn overlap_matrix(x: &SpheroidalSpectrum, y: &SpheroidalSpectrum) -> Vec<Vec<f64>> {
    let n = x.dim();
    (0..n).map(|i| (0..n).map(|j| x.t.column(i).dot(&y.t.column(j)).abs()).collect()).collect()
}

/// True when ascending order at `y` continues every branch of `x`.
fn identity_match(x: &SpheroidalSpectrum, y: &SpheroidalSpectrum) -> Result<bool> {
    let ov = overlap_matrix(x, y);
    for (i, row) in ov.iter().enumerate() {
        let best = row.iter().enumerate().max_by(|a, b| a.1.total_cmp(b.1)).map(|(j, _)| j).unwrap();
        if row[best] < MIN_OVERLAP {
            return Ok(false);
        }
        if best != i {
            // a well-resolved overlap pointing elsewhere means two branches crossed
            return Err(MiczError::BranchMatchAmbiguous(format!(
                "branch {i} continues as {best} between a = {} and a = {}",
                x.a, y.a
            )));
        }
    }
    Ok(true)
}

/// Checks continuity between two grid points, bisecting the interval in
/// `log a` until neighbouring eigenvectors overlap well.
fn bridge(s: &Sector, x: &SpheroidalSpectrum, y: &SpheroidalSpectrum, depth: u32) -> Result<()> {
    if identity_match(x, y)? {
        return Ok(());
    }
    if depth == MAX_REFINE_DEPTH {
        return Err(MiczError::BranchMatchAmbiguous(format!(
            "overlap below {MIN_OVERLAP} between a = {} and a = {} even after refinement",
            x.a, y.a
        )));
    }
    let mid = (x.a * y.a).sqrt();
    let m = separation_constants(s, mid)?;
    bridge(s, x, &m, depth + 1)?;
    bridge(s, &m, y, depth + 1)
}

/// Tracks the N branches over an ascending positive grid.
pub fn sweep_branches(s: &Sector, a_grid: &[f64]) -> Result<BranchSweep> {
    if a_grid.is_empty() || a_grid.iter().any(|a| !(*a > 0.0 && a.is_finite())) {
        return Err(MiczError::InvalidArgument("a grid must be non-empty, positive and finite".into()));
    }
    if a_grid.windows(2).any(|w| w[0] >= w[1]) {
        return Err(MiczError::InvalidArgument("a grid must be strictly ascending".into()));
    }
    let n = s.dim();
    let mut branches = vec![Vec::with_capacity(a_grid.len()); n];
    let mut prev: Option<SpheroidalSpectrum> = None;
    for &a in a_grid {
        let sp = separation_constants(s, a)?;
        if sp.k.windows(2).any(|w| w[0] >= w[1]) {
            return Err(MiczError::BranchMatchAmbiguous(format!("degenerate eigenvalues at a = {a}")));
        }
        if let Some(p) = &prev {
            bridge(s, p, &sp, 0)?;
        }
        for (i, br) in branches.iter_mut().enumerate() {
            br.push(BranchPoint { a, k: sp.k[i], k_over_a: sp.k[i] / a });
        }
        prev = Some(sp);
    }
    Ok(BranchSweep { sector: s.clone(), a_grid: a_grid.to_vec(), branches })
}
