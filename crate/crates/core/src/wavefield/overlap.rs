//! Overlap integrals `∫∫ f g r⁸ (1−c²)³ dr dc` by tensor Gauss quadrature.
//!
//! With `x = αr` the common factors `α^{9/2} e^{−x/2}` of both states combine
//! with `r⁸ dr` into `x⁸ e^{−x} dx`, which is exactly the Laguerre(8) weight;
//! `sin⁷θ dθ` becomes `(1−c²)³ dc` under a Legendre rule.

use super::quadrature::{gauss_rule, QuadratureKind, QuadratureRule};
use super::wavefunctions::ReducedState;
use crate::error::{MiczError, Result};
use crate::halfint::HalfInt;
use crate::sector::Sector;

/// Starting node count for the doubling loop.
pub const DEFAULT_NODES: usize = 48;
/// Node doubling stops once successive values agree this well.
pub const DOUBLING_TOL: f64 = 1e-10;
pub const MAX_NODES: usize = 512;

/// A Laguerre(8) × Legendre product rule.
#[derive(Debug, Clone)]
pub struct QuadratureGrid {
    pub radial: QuadratureRule,
    pub angular: QuadratureRule,
}

impl QuadratureGrid {
    pub fn new(n_q: usize) -> Result<Self> {
        Ok(QuadratureGrid {
            radial: gauss_rule(QuadratureKind::Laguerre { alpha: 8.0 }, n_q)?,
            angular: gauss_rule(QuadratureKind::Legendre, n_q)?,
        })
    }

    pub fn nodes(&self) -> usize {
        self.radial.len()
    }

    /// `⟨f, g⟩` for two states of the same sector. Sums run in a fixed order,
    /// so the result is reproducible bit for bit.
    pub fn inner(&self, s: &Sector, f: &ReducedState, g: &ReducedState) -> f64 {
        let mut total = 0.0;
        for (x, wx) in self.radial.nodes.iter().zip(&self.radial.weights) {
            if *wx == 0.0 {
                continue;
            }
            let mut row = 0.0;
            for (c, wc) in self.angular.nodes.iter().zip(&self.angular.weights) {
                let m = (1.0 - c * c).powi(3);
                row += wc * m * f.eval(s, *x, *c) * g.eval(s, *x, *c);
            }
            total += wx * row;
        }
        total
    }
}

/// `∫∫ ψ_{n_p} ψ_λ r⁸ (1−c²)³ dr dc` with a fixed `n_q`-point rule in each variable.
pub fn w_overlap_quadrature(s: &Sector, lambda: HalfInt, n_p: i64, n_q: usize) -> Result<f64> {
    let grid = QuadratureGrid::new(n_q)?;
    overlap_on(&grid, s, lambda, n_p)
}

fn overlap_on(grid: &QuadratureGrid, s: &Sector, lambda: HalfInt, n_p: i64) -> Result<f64> {
    let f = ReducedState::parabolic(s, n_p)?;
    let g = ReducedState::spherical(s, lambda)?;
    Ok(grid.inner(s, &f, &g))
}

/// The whole W matrix by quadrature, doubling the node count from `start`
/// until every entry changes by less than [`DOUBLING_TOL`]. Returns the
/// matrix (rows λ, columns `n_p`) and the node count used.
pub fn w_overlap_matrix_converged(s: &Sector, start: usize) -> Result<(Vec<Vec<f64>>, usize)> {
    let eval = |n_q: usize| -> Result<Vec<Vec<f64>>> {
        let grid = QuadratureGrid::new(n_q)?;
        s.lambda_range()
            .into_iter()
            .map(|l| s.np_range().into_iter().map(|p| overlap_on(&grid, s, l, p)).collect())
            .collect()
    };
    let mut n_q = start.max(1);
    let mut prev = eval(n_q)?;
    while n_q * 2 <= MAX_NODES {
        n_q *= 2;
        let next = eval(n_q)?;
        let diff = prev.iter().flatten().zip(next.iter().flatten()).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max);
        prev = next;
        if diff < DOUBLING_TOL {
            return Ok((prev, n_q));
        }
    }
    Err(MiczError::ConvergenceFailure(format!("W quadrature for {s} not stable at {MAX_NODES} nodes")))
}
