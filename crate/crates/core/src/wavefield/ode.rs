//! Residuals of the separated equations, evaluated with analytic derivatives.
//!
//! ```text
//! radial:   −½(R'' + 8R'/r) + λ(λ+7)/(2r²)·R − (Z/r)·R − E·R = 0
//! angular:  (1−c²)Θ'' − 8cΘ' − L(L+6)/(2(1−c))·Θ − J(J+6)/(2(1+c))·Θ + λ(λ+7)·Θ = 0
//! u:        uU'' + 4U' − J(J+6)/(4u)·U + (Z/2)·U + (Eu/2)·U − P·U = 0
//! v:        vV'' + 4V' − L(L+6)/(4v)·V + (Z/2)·V + (Ev/2)·V + P·V = 0
//! ```
//!
//! with `P = √(−2E)(n + Q/2 − J − 2n_p)/2`. Each residual is divided by the
//! sum of the magnitudes of its terms, which makes it scale-free.

use super::polynomials::{jacobi_gen_derivs, laguerre_gen_derivs};
use crate::error::{MiczError, Result};
use crate::halfint::HalfInt;
use crate::sector::Sector;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum OdeKind {
    Radial { lambda: HalfInt },
    Angular { lambda: HalfInt },
    ParabolicU { n_p: i64 },
    ParabolicV { n_p: i64 },
}

/// `Σ terms / Σ |terms|`, or zero where every term vanishes.
fn relative(terms: &[f64]) -> f64 {
    let scale: f64 = terms.iter().map(|t| t.abs()).sum();
    if scale == 0.0 {
        0.0
    } else {
        terms.iter().sum::<f64>().abs() / scale
    }
}

/// `(f, f', f'')` of `y^p e^{−y/2} L(y)` in `y`, divided by `y^p e^{−y/2}`.
fn laguerre_factor(p: f64, k: i64, s: f64, y: f64) -> (f64, f64, f64) {
    let (l0, l1, l2) = laguerre_gen_derivs(k, s, y);
    let g1 = p / y - 0.5;
    let g2 = g1 * g1 - p / (y * y);
    (l0, g1 * l0 + l1, g2 * l0 + 2.0 * g1 * l1 + l2)
}

fn radial_residual(s: &Sector, lambda: HalfInt, r: f64) -> f64 {
    let alpha = s.alpha_f64();
    let l = lambda.to_f64();
    let k = (s.nq() - lambda).to_int().unwrap();
    let (f0, fx, fxx) = laguerre_factor(l, k, 2.0 * l + 7.0, alpha * r);
    let (d1, d2) = (alpha * fx, alpha * alpha * fxx);
    let (z, e) = (s.z_f64(), s.energy_f64());
    relative(&[-0.5 * d2, -4.0 * d1 / r, l * (l + 7.0) / (2.0 * r * r) * f0, -z / r * f0, -e * f0])
}

fn angular_residual(s: &Sector, lambda: HalfInt, c: f64) -> f64 {
    let (lf, jf) = (s.l() as f64, s.j() as f64);
    let k = (lambda - s.lambda_min()).to_int().unwrap();
    let (p0, p1, p2) = jacobi_gen_derivs(k, lf + 3.0, jf + 3.0, c);
    // h = (1−c)^{L/2}(1+c)^{J/2}, divided out
    let h1 = -lf / (2.0 * (1.0 - c)) + jf / (2.0 * (1.0 + c));
    let h2 = h1 * h1 - lf / (2.0 * (1.0 - c).powi(2)) - jf / (2.0 * (1.0 + c).powi(2));
    let t0 = p0;
    let t1 = h1 * p0 + p1;
    let t2 = h2 * p0 + 2.0 * h1 * p1 + p2;
    let l = lambda.to_f64();
    relative(&[
        (1.0 - c * c) * t2,
        -8.0 * c * t1,
        -lf * (lf + 6.0) / (2.0 * (1.0 - c)) * t0,
        -jf * (jf + 6.0) / (2.0 * (1.0 + c)) * t0,
        l * (l + 7.0) * t0,
    ])
}

/// `m` is the angular label (`J` for u, `L` for v), `k` the Laguerre degree and
/// `sign` the sign in front of `P`.
fn parabolic_residual(s: &Sector, m: i64, k: i64, sign: f64, n_p: i64, w: f64) -> f64 {
    let alpha = s.alpha_f64();
    let mf = m as f64;
    let (f0, fy, fyy) = laguerre_factor(mf / 2.0, k, mf + 3.0, alpha * w / 2.0);
    let (d1, d2) = (alpha / 2.0 * fy, alpha * alpha / 4.0 * fyy);
    let (z, e) = (s.z_f64(), s.energy_f64());
    let root = alpha / 2.0;
    let p = root * (s.nq() - s.j() - 2 * n_p).to_f64() / 2.0;
    relative(&[w * d2, 4.0 * d1, -mf * (mf + 6.0) / (4.0 * w) * f0, z / 2.0 * f0, e * w / 2.0 * f0, sign * p * f0])
}

/// Largest relative residual over `points` (`r`, `c`, `u` or `v` depending on `which`).
pub fn ode_residuals(s: &Sector, which: OdeKind, points: &[f64]) -> Result<f64> {
    let domain = |ok: bool, p: f64| {
        if ok {
            Ok(())
        } else {
            Err(MiczError::DomainError(format!("{which:?} at {p}")))
        }
    };
    let mut worst = 0.0f64;
    for &p in points {
        let r = match which {
            OdeKind::Radial { lambda } => {
                s.lambda_index(lambda)?;
                domain(p > 0.0 && p.is_finite(), p)?;
                radial_residual(s, lambda, p)
            }
            OdeKind::Angular { lambda } => {
                s.lambda_index(lambda)?;
                domain(p > -1.0 && p < 1.0, p)?;
                angular_residual(s, lambda, p)
            }
            OdeKind::ParabolicU { n_p } => {
                s.check_np(n_p)?;
                domain(p > 0.0 && p.is_finite(), p)?;
                parabolic_residual(s, s.j(), n_p, -1.0, n_p, p)
            }
            OdeKind::ParabolicV { n_p } => {
                s.check_np(n_p)?;
                domain(p > 0.0 && p.is_finite(), p)?;
                let m = s.dim() as i64 - 1;
                parabolic_residual(s, s.l(), m - n_p, 1.0, n_p, p)
            }
        };
        worst = worst.max(r);
    }
    Ok(worst)
}

/// Interior sample points used by the verification suite.
pub const RADIAL_POINTS: [f64; 6] = [0.25, 0.5, 1.0, 2.0, 5.0, 12.0];
pub const ANGULAR_POINTS: [f64; 5] = [-0.9, -0.4, 0.0, 0.5, 0.9];
pub const PARABOLIC_POINTS: [f64; 5] = [0.3, 1.0, 2.5, 6.0, 15.0];
