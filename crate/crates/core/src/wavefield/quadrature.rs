//! Gauss rules by the Golub–Welsch construction.
//!
//! Nodes are the eigenvalues of the Jacobi matrix of the orthogonal family
//! (bisected to full precision by the tridiagonal solver). Weights come from
//! the Christoffel numbers `μ₀ / Σ_k p̂_k(x)²` with the orthonormal recurrence,
//! which is more accurate than squaring eigenvector components.

use crate::error::{MiczError, Result};
use crate::spheroidal::{eigenvalues_sym_tridiagonal, SymTridiagonal};

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum QuadratureKind {
    /// Weight 1 on `[−1, 1]`.
    Legendre,
    /// Weight `x^α e^{−x}` on `[0, ∞)`.
    Laguerre { alpha: f64 },
}

#[derive(Debug, Clone, PartialEq)]
pub struct QuadratureRule {
    pub kind: QuadratureKind,
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
}

impl QuadratureRule {
    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// `Σ w_i f(x_i)` in node order.
    pub fn integrate(&self, f: impl Fn(f64) -> f64) -> f64 {
        self.nodes.iter().zip(&self.weights).map(|(x, w)| w * f(*x)).sum()
    }
}

impl QuadratureKind {
    /// Diagonal and off-diagonal recurrence coefficients, and `μ₀ = ∫ w`.
    fn jacobi_matrix(self, n: usize) -> Result<(Vec<f64>, Vec<f64>, f64)> {
        match self {
            QuadratureKind::Legendre => {
                let off = (1..n).map(|k| {
                    let k = k as f64;
                    k / (4.0 * k * k - 1.0).sqrt()
                });
                Ok((vec![0.0; n], off.collect(), 2.0))
            }
            QuadratureKind::Laguerre { alpha } => {
                if !(alpha > -1.0 && alpha.is_finite()) {
                    return Err(MiczError::InvalidArgument(format!("Laguerre order {alpha} must exceed -1")));
                }
                let diag = (0..n).map(|k| 2.0 * k as f64 + alpha + 1.0).collect();
                let off = (1..n).map(|k| (k as f64 * (k as f64 + alpha)).sqrt()).collect();
                Ok((diag, off, libm::tgamma(alpha + 1.0)))
            }
        }
    }
}

/// The `n_q`-point Gauss rule of the given family, nodes ascending.
pub fn gauss_rule(kind: QuadratureKind, n_q: usize) -> Result<QuadratureRule> {
    if n_q == 0 {
        return Err(MiczError::InvalidArgument("a Gauss rule needs at least one node".into()));
    }
    let (diag, off, mu0) = kind.jacobi_matrix(n_q)?;
    let jm = SymTridiagonal::new(diag.clone(), off.clone())?;
    let mut nodes = eigenvalues_sym_tridiagonal(&jm)?;
    if let QuadratureKind::Legendre = kind {
        // the rule is symmetric; enforce it exactly
        for i in 0..n_q / 2 {
            let m = 0.5 * (nodes[n_q - 1 - i] - nodes[i]);
            nodes[i] = -m;
            nodes[n_q - 1 - i] = m;
        }
        if n_q % 2 == 1 {
            nodes[n_q / 2] = 0.0;
        }
    }
    let weights = nodes.iter().map(|&x| christoffel(&diag, &off, mu0, x)).collect();
    Ok(QuadratureRule { kind, nodes, weights })
}

/// `μ₀ / Σ_{k<n} p̂_k(x)²`, with running rescaling so large nodes of the
/// Laguerre family do not overflow.
fn christoffel(diag: &[f64], off: &[f64], mu0: f64, x: f64) -> f64 {
    // unnormalized p_0 = 1; b_k p_k = (x − a_{k−1}) p_{k−1} − b_{k−1} p_{k−2}
    let n = diag.len();
    let (mut prev, mut cur) = (0.0f64, 1.0f64);
    let mut sum = 1.0f64;
    let mut log_scale = 0.0f64; // true values are stored values · e^{log_scale}
    for k in 1..n {
        let b_prev = if k >= 2 { off[k - 2] } else { 0.0 };
        let next = ((x - diag[k - 1]) * cur - b_prev * prev) / off[k - 1];
        prev = cur;
        cur = next;
        sum += cur * cur;
        if cur.abs() > 1e100 {
            let f = cur.abs();
            prev /= f;
            cur /= f;
            sum /= f * f;
            log_scale += f.ln();
        }
    }
    (mu0.ln() - sum.ln() - 2.0 * log_scale).exp()
}
