//! The spherical ↔ parabolic transformation `W_{λ;n_p}` and its oracles.
//!
//! Writing `M = N − 1`, `i = λ − (L+J)/2`, `S = (L+J)/2`, `D = (J−L)/2` and
//! `ν = n + Q/2`, the closed form is
//!
//! ```text
//! W = (−1)^i · M!/(L+3)! · √R · ₃F₂(−i, −M+n_p, λ+S+7; L+4, −M; 1)
//!
//! R = (λ+S+6)!/(λ−S)! · (2λ+7)(λ−D+3)! / ((ν+λ+7)!(ν−λ)!(λ+D+3)!)
//!   · (n_p+J+3)!/(M−n_p)! · (M−n_p+L+3)!/n_p!
//! ```
//!
//! The hypergeometric series terminates after `i + 1` terms and is summed
//! exactly.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::coeffs::{self, ExactTridiagonal};
use crate::error::{MiczError, Result};
use crate::exact::{RadicalScalar, RadicalSum};
use crate::halfint::HalfInt;
use crate::sector::Sector;

/// `k!` for a value that must be a non-negative integer.
fn factorial(k: HalfInt) -> Result<BigInt> {
    match k.to_int() {
        Some(v) if v >= 0 => Ok((2..=v).fold(BigInt::one(), |acc, i| acc * BigInt::from(i))),
        _ => Err(MiczError::FactorialOfNegative(k.to_string())),
    }
}

fn fact_q(k: HalfInt) -> Result<BigRational> {
    factorial(k).map(BigRational::from_integer)
}

fn int(v: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(v))
}

/// One entry of W from the closed form, exactly.
pub fn w_coefficient(s: &Sector, lambda: HalfInt, n_p: i64) -> Result<RadicalScalar> {
    let i = s.lambda_index(lambda)? as i64;
    s.check_np(n_p)?;
    let m = s.dim() as i64 - 1;
    let (lo, d, nu) = (s.lambda_min(), s.half_jl(), s.nq());
    let (l, j) = (s.l(), s.j());
    let h = HalfInt::from_int;

    let radicand =
        fact_q(lambda + lo + 6)? / fact_q(lambda - lo)? * (lambda + lambda + 7).to_rational() * fact_q(lambda - d + 3)?
            / (fact_q(nu + lambda + 7)? * fact_q(nu - lambda)? * fact_q(lambda + d + 3)?)
            * fact_q(h(n_p + j + 3))?
            / fact_q(h(m - n_p))?
            * fact_q(h(m - n_p + l + 3))?
            / fact_q(h(n_p))?;

    // ₃F₂ by term ratios; stop at k = i so the (−M)_k denominator never reaches zero
    let c = (lambda + lo + 7).to_rational();
    let mut term = BigRational::one();
    let mut sum = BigRational::one();
    for k in 0..i {
        let ratio = int(k - i) * int(k - m + n_p) * (&c + int(k)) / (int(l + 4 + k) * int(k - m) * int(k + 1));
        term *= ratio;
        sum += &term;
    }

    let sign = if i % 2 == 0 { 1 } else { -1 };
    let prefactor = int(sign) * fact_q(h(m))? / fact_q(h(l + 3))? * sum;
    Ok(RadicalScalar::sqrt(radicand)?.scale(&prefactor))
}

/// W with rows λ ascending and columns `n_p` ascending.
#[derive(Debug, Clone, PartialEq)]
pub struct WMatrix {
    pub sector: Sector,
    pub entries: Vec<Vec<RadicalScalar>>,
}

impl WMatrix {
    pub fn dim(&self) -> usize {
        self.entries.len()
    }

    pub fn to_f64(&self) -> nalgebra::DMatrix<f64> {
        let n = self.dim();
        nalgebra::DMatrix::from_fn(n, n, |i, j| self.entries[i][j].to_f64())
    }

    /// `Σ_{n_p} W_{λ' n_p} W_{λ n_p}` as an exact formal sum.
    pub fn row_product(&self, a: usize, b: usize) -> RadicalSum {
        self.entries[a].iter().zip(&self.entries[b]).map(|(x, y)| x * y).collect()
    }

    /// Row pairs `(λ', λ)` where `W Wᵀ` differs from the identity.
    pub fn orthogonality_failures(&self) -> Vec<(usize, usize)> {
        let n = self.dim();
        let mut bad = Vec::new();
        for a in 0..n {
            for b in a..n {
                let mut p = self.row_product(a, b);
                if a == b {
                    p.push(&RadicalScalar::from_int(-1));
                }
                if !p.is_zero() {
                    bad.push((a, b));
                }
            }
        }
        bad
    }

    /// Column pairs where `Wᵀ W` differs from the identity.
    pub fn column_orthogonality_failures(&self) -> Vec<(usize, usize)> {
        let n = self.dim();
        let mut bad = Vec::new();
        for a in 0..n {
            for b in a..n {
                let mut p: RadicalSum = (0..n).map(|r| &self.entries[r][a] * &self.entries[r][b]).collect();
                if a == b {
                    p.push(&RadicalScalar::from_int(-1));
                }
                if !p.is_zero() {
                    bad.push((a, b));
                }
            }
        }
        bad
    }
}

/// All N² entries, with exact orthogonality verified before returning.
pub fn w_matrix(s: &Sector) -> Result<WMatrix> {
    let w = w_matrix_unchecked(s)?;
    let bad = w.column_orthogonality_failures();
    if let Some(&(a, b)) = bad.first() {
        return Err(MiczError::OrthogonalityViolation(format!(
            "{s}: columns {a} and {b} ({} failing pairs)",
            bad.len()
        )));
    }
    Ok(w)
}

pub fn w_matrix_unchecked(s: &Sector) -> Result<WMatrix> {
    let entries = s
        .lambda_range()
        .into_iter()
        .map(|lam| s.np_range().into_iter().map(|p| w_coefficient(s, lam, p)).collect())
        .collect::<Result<Vec<Vec<_>>>>()?;
    Ok(WMatrix { sector: s.clone(), entries })
}

/// Arguments of `C^{c,γ}_{a,α;b,β}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CGArgs {
    pub a: HalfInt,
    pub alpha: HalfInt,
    pub b: HalfInt,
    pub beta: HalfInt,
    pub c: HalfInt,
    pub gamma: HalfInt,
}

impl CGArgs {
    pub fn new(a: HalfInt, alpha: HalfInt, b: HalfInt, beta: HalfInt, c: HalfInt, gamma: HalfInt) -> Self {
        CGArgs { a, alpha, b, beta, c, gamma }
    }

    fn admissible(&self) -> bool {
        let ok = |j: HalfInt, m: HalfInt| j.twice() >= 0 && m.twice().abs() <= j.twice() && (j - m).is_integer();
        ok(self.a, self.alpha)
            && ok(self.b, self.beta)
            && ok(self.c, self.gamma)
            && self.gamma == self.alpha + self.beta
            && (self.a + self.b - self.c).is_integer()
            && self.c.twice() >= (self.a - self.b).twice().abs()
            && self.c <= self.a + self.b
    }
}

/// Clebsch–Gordan coefficient in the Condon–Shortley phase convention, by the
/// Racah single sum:
///
/// ```text
/// C = δ_{γ,α+β} √[(2c+1)(a+b−c)!(a−b+c)!(−a+b+c)!/(a+b+c+1)!]
///     · √[(a+α)!(a−α)!(b+β)!(b−β)!(c+γ)!(c−γ)!]
///     · Σ_z (−1)^z / [z!(a+b−c−z)!(a−α−z)!(b+β−z)!(c−b+α+z)!(c−a−β+z)!]
/// ```
///
/// Returns zero when a selection rule fails.
pub fn clebsch_gordan(args: CGArgs) -> RadicalScalar {
    if !args.admissible() {
        return RadicalScalar::zero();
    }
    let CGArgs { a, alpha, b, beta, c, gamma } = args;
    let f = |h: HalfInt| fact_q(h).expect("admissible arguments give integer factorials");
    let radicand = (c + c + 1).to_rational() * f(a + b - c) * f(a - b + c) * f(-a + b + c) / f(a + b + c + 1)
        * f(a + alpha)
        * f(a - alpha)
        * f(b + beta)
        * f(b - beta)
        * f(c + gamma)
        * f(c - gamma);

    let z_min = 0.max((b - c - alpha).to_int().unwrap()).max((a - c + beta).to_int().unwrap());
    let z_max = (a + b - c).to_int().unwrap().min((a - alpha).to_int().unwrap()).min((b + beta).to_int().unwrap());
    let mut sum = BigRational::zero();
    for z in z_min..=z_max {
        let zh = HalfInt::from_int(z);
        let den = f(zh)
            * f(a + b - c - zh)
            * f(a - alpha - zh)
            * f(b + beta - zh)
            * f(c - b + alpha + zh)
            * f(c - a - beta + zh);
        let t = BigRational::one() / den;
        if z % 2 == 0 {
            sum += t;
        } else {
            sum -= t;
        }
    }
    RadicalScalar::sqrt(radicand).expect("non-negative").scale(&sum)
}

/// The Clebsch–Gordan arguments that reproduce `W_{λ;n_p}` up to the sign
/// `(−1)^{n+Q/2−λ−n_p}`.
pub fn w_cg_args(s: &Sector, lambda: HalfInt, n_p: i64) -> CGArgs {
    // quarter-integer pieces combine to half-integers; work in units of 1/4
    let (n, q, l, j) = (s.n(), s.q(), s.l(), s.j());
    let quarter = |x4: i64| HalfInt::from_twice(x4 / 2);
    let a = quarter(2 * (n + 3) + (q + j - l));
    let b = quarter(2 * (n + 3) + (q - j + l));
    let alpha = quarter(4 * n_p - 2 * n + (l + j - q) + 2 * (j + 3));
    let beta = quarter(2 * n - (l + j - q) - 4 * n_p + 2 * (l + 3));
    CGArgs::new(a, alpha, b, beta, lambda + 3, s.lambda_min() + 3)
}

/// `W_{λ;n_p}` through the Clebsch–Gordan representation.
pub fn w_via_cg(s: &Sector, lambda: HalfInt, n_p: i64) -> Result<RadicalScalar> {
    s.lambda_index(lambda)?;
    s.check_np(n_p)?;
    let cg = clebsch_gordan(w_cg_args(s, lambda, n_p));
    let phase = (s.nq() - lambda - n_p).parity_sign().expect("integer by sector parity");
    Ok(if phase < 0 { -cg } else { cg })
}

/// `(M₉)_{λ'λ} = Σ_{n_p} (n + Q/2 − J − 2n_p) W_{λ' n_p} W_{λ n_p}`, exactly.
pub fn m9_matrix_bruteforce(s: &Sector) -> Result<Vec<Vec<RadicalScalar>>> {
    let w = w_matrix_unchecked(s)?;
    m9_from_w(&w)
}

pub fn m9_from_w(w: &WMatrix) -> Result<Vec<Vec<RadicalScalar>>> {
    let s = &w.sector;
    let n = w.dim();
    let eig = s
        .np_range()
        .into_iter()
        .map(|p| s.m9_parabolic_eigenvalue(p).map(|e| e.to_rational()))
        .collect::<Result<Vec<_>>>()?;
    let row = |a: &[RadicalScalar]| -> Result<Vec<RadicalScalar>> {
        w.entries
            .iter()
            .map(|b| {
                let sum: RadicalSum = (0..n).map(|p| (&a[p] * &b[p]).scale(&eig[p])).collect();
                sum.to_scalar()
            })
            .collect()
    };
    w.entries.iter().map(|a| row(a)).collect()
}

/// Entries where the brute-force M₉ differs from the closed form.
pub fn m9_mismatches(brute: &[Vec<RadicalScalar>], closed: &ExactTridiagonal) -> Vec<(usize, usize)> {
    let mut bad = Vec::new();
    for (a, row) in brute.iter().enumerate() {
        for (b, x) in row.iter().enumerate() {
            if *x != closed.get(a, b) {
                bad.push((a, b));
            }
        }
    }
    bad
}

/// Left side of the three-term recurrence in λ at fixed `n_p`:
///
/// ```text
/// [n_p − (ν−J)/2 − (J−L)(L+J+6)(2n+Q+8)/(16(λ+3)(λ+4))]·W_λ + ½(B_λ W_{λ−1} + B_{λ+1} W_{λ+1})
/// ```
///
/// Out-of-range W terms count as zero. The result is an exact formal sum.
pub fn w_recurrence_residual(w: &WMatrix, lambda: HalfInt, n_p: i64) -> Result<RadicalSum> {
    let s = &w.sector;
    let i = s.lambda_index(lambda)?;
    s.check_np(n_p)?;
    let p = n_p as usize;
    let half = BigRational::new(1.into(), 2.into());
    let diag = int(n_p) - (s.nq() - s.j()).to_rational() * &half + coeffs::m9_diagonal(s, lambda)? * &half;
    let mut sum = RadicalSum::new();
    sum.push(&w.entries[i][p].scale(&diag));
    if i > 0 {
        sum.push(&(&coeffs::coef_b(s, lambda)? * &w.entries[i - 1][p]).scale(&half));
    }
    if i + 1 < w.dim() {
        sum.push(&(&coeffs::coef_b(s, lambda + 1)? * &w.entries[i + 1][p]).scale(&half));
    }
    Ok(sum)
}
