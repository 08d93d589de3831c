//! The `(r, θ)` parts of the spherical, parabolic and spheroidal states.
//!
//! All three share the factor `α^{9/2} e^{−αr/2}`; the `reduced_*` functions
//! return what remains as a function of `x = αr` and `c = cos θ`, which is
//! what the quadrature needs.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;

use super::polynomials::{jacobi_gen, laguerre_gen};
use crate::error::{MiczError, Result};
use crate::exact::RadicalScalar;
use crate::halfint::HalfInt;
use crate::sector::Sector;
use crate::spheroidal::{separation_constants, SpheroidalSpectrum};

/// A point in the `(r, θ)` half-plane with its derived coordinates.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RadialAngularPoint {
    pub r: f64,
    /// `cos θ`.
    pub c: f64,
}

impl RadialAngularPoint {
    pub fn new(r: f64, c: f64) -> Result<Self> {
        if !(r > 0.0 && r.is_finite() && (-1.0..=1.0).contains(&c)) {
            return Err(MiczError::DomainError(format!("(r, cos θ) = ({r}, {c})")));
        }
        Ok(RadialAngularPoint { r, c })
    }

    /// `u = r + z`.
    pub fn u(&self) -> f64 {
        self.r * (1.0 + self.c)
    }

    /// `v = r − z`.
    pub fn v(&self) -> f64 {
        self.r * (1.0 - self.c)
    }

    /// Prolate spheroidal `(ξ, η)` with foci at the origin and at `z = a`.
    pub fn xi_eta(&self, a: f64) -> (f64, f64) {
        let z = self.r * self.c;
        let rho2 = self.r * self.r * (1.0 - self.c * self.c).max(0.0);
        let r2 = (rho2 + (z - a) * (z - a)).sqrt();
        ((self.r + r2) / a, (self.r - r2) / a)
    }
}

fn factorial(k: HalfInt) -> BigRational {
    let v = k.to_int().filter(|v| *v >= 0).expect("factorial argument is a non-negative integer");
    BigRational::from_integer((2..=v).fold(BigInt::one(), |acc, i| acc * BigInt::from(i)))
}

/// `C^s = √((ν−λ)!(2λ+7)(λ−S)!(λ+6+S)! / ((2n+Q+8)(ν+λ+7)!(λ+3+D)!(λ+3−D)!))`.
pub fn norm_spherical(s: &Sector, lambda: HalfInt) -> Result<f64> {
    s.lambda_index(lambda)?;
    let (nu, lo, d) = (s.nq(), s.lambda_min(), s.half_jl());
    let num = factorial(nu - lambda)
        * (lambda + lambda + 7).to_rational()
        * factorial(lambda - lo)
        * factorial(lambda + lo + 6);
    let den = BigRational::from_integer(s.scale().into())
        * factorial(nu + lambda + 7)
        * factorial(lambda + d + 3)
        * factorial(lambda - d + 3);
    Ok(RadicalScalar::sqrt(num / den)?.to_f64())
}

/// `C^p = √(n_p!(M−n_p)! / ((2n+Q+8)(n_p+J+3)!(M−n_p+L+3)!))` with `M = N − 1`.
pub fn norm_parabolic(s: &Sector, n_p: i64) -> Result<f64> {
    s.check_np(n_p)?;
    let m = s.dim() as i64 - 1;
    let h = HalfInt::from_int;
    let num = factorial(h(n_p)) * factorial(h(m - n_p));
    let den =
        BigRational::from_integer(s.scale().into()) * factorial(h(n_p + s.j() + 3)) * factorial(h(m - n_p + s.l() + 3));
    Ok(RadicalScalar::sqrt(num / den)?.to_f64())
}

/// A spherical or parabolic state prepared for repeated evaluation.
#[derive(Debug, Clone)]
pub enum ReducedState {
    Spherical {
        lambda: HalfInt,
        norm: f64,
    },
    Parabolic {
        n_p: i64,
        norm: f64,
    },
    /// `Σ_λ coeffs[i] · spherical(λ_i)`.
    Expansion {
        terms: Vec<(HalfInt, f64)>,
    },
}

impl ReducedState {
    pub fn spherical(s: &Sector, lambda: HalfInt) -> Result<Self> {
        Ok(ReducedState::Spherical { lambda, norm: norm_spherical(s, lambda)? })
    }

    pub fn parabolic(s: &Sector, n_p: i64) -> Result<Self> {
        Ok(ReducedState::Parabolic { n_p, norm: norm_parabolic(s, n_p)? })
    }

    /// Spheroidal state `n_k` from a computed spectrum.
    pub fn spheroidal(sp: &SpheroidalSpectrum, n_k: usize) -> Result<Self> {
        if n_k >= sp.dim() {
            return Err(MiczError::IndexOutOfRange {
                what: "n_k",
                index: n_k.to_string(),
                range: format!("[0, {}]", sp.dim() - 1),
            });
        }
        let s = &sp.sector;
        let terms = s
            .lambda_range()
            .into_iter()
            .enumerate()
            .map(|(i, l)| Ok((l, sp.t[(i, n_k)] * norm_spherical(s, l)?)))
            .collect::<Result<Vec<_>>>()?;
        Ok(ReducedState::Expansion { terms })
    }

    /// Value at `x = αr`, `c = cos θ`, without the common `α^{9/2} e^{−x/2}`.
    pub fn eval(&self, s: &Sector, x: f64, c: f64) -> f64 {
        match self {
            ReducedState::Spherical { lambda, norm } => norm * spherical_shape(s, *lambda, x, c),
            ReducedState::Parabolic { n_p, norm } => norm * parabolic_shape(s, *n_p, x, c),
            ReducedState::Expansion { terms } => terms.iter().map(|(l, w)| w * spherical_shape(s, *l, x, c)).sum(),
        }
    }
}

/// `x^λ L^{(2λ+7)}_{ν−λ}(x) · 2^{−(L+J+7)/2} (1−c)^{L/2} (1+c)^{J/2} P^{(L+3,J+3)}_{λ−S}(c)`.
fn spherical_shape(s: &Sector, lambda: HalfInt, x: f64, c: f64) -> f64 {
    let l = lambda.to_f64();
    let k_rad = (s.nq() - lambda).to_int().unwrap();
    let k_ang = (lambda - s.lambda_min()).to_int().unwrap();
    let radial = x.powf(l) * laguerre_gen(k_rad, 2.0 * l + 7.0, x);
    let (lf, jf) = (s.l() as f64, s.j() as f64);
    let angular = 2f64.powf(-(lf + jf + 7.0) / 2.0)
        * (1.0 - c).powf(lf / 2.0)
        * (1.0 + c).powf(jf / 2.0)
        * jacobi_gen(k_ang, lf + 3.0, jf + 3.0, c);
    radial * angular
}

/// `2^{−7/2} (y_u)^{J/2} L^{(J+3)}_{n_p}(y_u) · (y_v)^{L/2} L^{(L+3)}_{M−n_p}(y_v)` with
/// `y_u = x(1+c)/2`, `y_v = x(1−c)/2`.
fn parabolic_shape(s: &Sector, n_p: i64, x: f64, c: f64) -> f64 {
    let m = s.dim() as i64 - 1;
    let (lf, jf) = (s.l() as f64, s.j() as f64);
    let yu = 0.5 * x * (1.0 + c);
    let yv = 0.5 * x * (1.0 - c);
    2f64.powf(-3.5)
        * yu.powf(jf / 2.0)
        * laguerre_gen(n_p, jf + 3.0, yu)
        * yv.powf(lf / 2.0)
        * laguerre_gen(m - n_p, lf + 3.0, yv)
}

fn check_point(r: f64, c: f64) -> Result<()> {
    RadialAngularPoint::new(r, c).map(|_| ())
}

/// Spherical state `ψ_λ(r, c)`.
pub fn psi_spherical(s: &Sector, lambda: HalfInt, r: f64, c: f64) -> Result<f64> {
    check_point(r, c)?;
    let alpha = s.alpha_f64();
    let st = ReducedState::spherical(s, lambda)?;
    let x = alpha * r;
    Ok(alpha.powf(4.5) * (-x / 2.0).exp() * st.eval(s, x, c))
}

/// Parabolic state `ψ_{n_p}(u, v)`.
pub fn psi_parabolic(s: &Sector, n_p: i64, u: f64, v: f64) -> Result<f64> {
    if !(u >= 0.0 && v >= 0.0 && u + v > 0.0 && (u + v).is_finite()) {
        return Err(MiczError::DomainError(format!("(u, v) = ({u}, {v})")));
    }
    let alpha = s.alpha_f64();
    let st = ReducedState::parabolic(s, n_p)?;
    let r = 0.5 * (u + v);
    let c = (u - v) / (u + v);
    let x = alpha * r;
    Ok(alpha.powf(4.5) * (-x / 2.0).exp() * st.eval(s, x, c))
}

/// Spheroidal state `Σ_λ T_{λ;n_k}(a) ψ_λ(r, c)`.
pub fn psi_spheroidal(s: &Sector, n_k: usize, a: f64, r: f64, c: f64) -> Result<f64> {
    let sp = separation_constants(s, a)?;
    psi_spheroidal_from(&sp, n_k, r, c)
}

/// As [`psi_spheroidal`], reusing a computed spectrum.
pub fn psi_spheroidal_from(sp: &SpheroidalSpectrum, n_k: usize, r: f64, c: f64) -> Result<f64> {
    check_point(r, c)?;
    let s = &sp.sector;
    let alpha = s.alpha_f64();
    let st = ReducedState::spheroidal(sp, n_k)?;
    let x = alpha * r;
    Ok(alpha.powf(4.5) * (-x / 2.0).exp() * st.eval(s, x, c))
}
