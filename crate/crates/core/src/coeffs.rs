//! Closed-form coefficients of the spherical-basis recurrences.
//!
//! With `S = (L+J)/2`, `D = (J−L)/2` and `ν = n + Q/2`:
//!
//! * `B_λ = √((ν−λ+1)(ν+λ+7)) · √((λ−S)(λ+6+S)(λ+3−D)(λ+3+D) / ((λ+3)²(2λ+7)(2λ+5)))`
//! * `A_λ = aZ(J−L)(L+J+6) / (4(λ+3)(λ+4)) − λ(λ+7)`
//! * `B̃_λ = 2aZ·B_λ / (2n+Q+8)`
//!
//! Rows and columns of every matrix are indexed by λ ascending.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};

use crate::error::Result;
use crate::exact::RadicalScalar;
use crate::halfint::HalfInt;
use crate::sector::Sector;
use crate::spheroidal::SymTridiagonal;

fn r(h: HalfInt) -> BigRational {
    h.to_rational()
}

fn int(v: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(v))
}

/// The radicand of `B_λ`, i.e. `B_λ²`.
pub fn coef_b_squared(s: &Sector, lambda: HalfInt) -> Result<BigRational> {
    s.lambda_index(lambda)?;
    let (nu, lo, d) = (s.nq(), s.lambda_min(), s.half_jl());
    let num = r(nu - lambda + 1)
        * r(nu + lambda + 7)
        * r(lambda - lo)
        * r(lambda + lo + 6)
        * r(lambda - d + 3)
        * r(lambda + d + 3);
    let l3 = r(lambda + 3);
    let den = &l3 * &l3 * r(lambda + lambda + 7) * r(lambda + lambda + 5);
    Ok(num / den)
}

/// `B_λ`; zero at the bottom of the range.
pub fn coef_b(s: &Sector, lambda: HalfInt) -> Result<RadicalScalar> {
    RadicalScalar::sqrt(coef_b_squared(s, lambda)?)
}

pub fn coef_b_f64(s: &Sector, lambda: HalfInt) -> Result<f64> {
    Ok(coef_b(s, lambda)?.to_f64())
}

/// The a-linear part of `A_λ` per unit `aZ`.
fn a_slope(s: &Sector, lambda: HalfInt) -> BigRational {
    int((s.j() - s.l()) * (s.l() + s.j() + 6)) / (int(4) * r(lambda + 3) * r(lambda + 4))
}

/// `A_λ(aZ)`, exact for rational `aZ`.
pub fn coef_a(s: &Sector, lambda: HalfInt, az: &BigRational) -> Result<BigRational> {
    s.lambda_index(lambda)?;
    Ok(az * a_slope(s, lambda) - r(lambda) * r(lambda + 7))
}

pub fn coef_a_f64(s: &Sector, lambda: HalfInt, az: f64) -> Result<f64> {
    s.lambda_index(lambda)?;
    let slope = a_slope(s, lambda).to_f64().unwrap();
    let l = lambda.to_f64();
    Ok(az * slope - l * (l + 7.0))
}

/// `B̃_λ(aZ)`.
pub fn coef_btilde(s: &Sector, lambda: HalfInt, az: &BigRational) -> Result<RadicalScalar> {
    let factor = int(2) * az / int(s.scale());
    Ok(coef_b(s, lambda)?.scale(&factor))
}

pub fn coef_btilde_f64(s: &Sector, lambda: HalfInt, az: f64) -> Result<f64> {
    Ok(2.0 * az * coef_b_f64(s, lambda)? / s.scale() as f64)
}

/// Diagonal entry of M₉ in the spherical basis.
pub fn m9_diagonal(s: &Sector, lambda: HalfInt) -> Result<BigRational> {
    s.lambda_index(lambda)?;
    let num = int(-(s.j() - s.l()) * (s.l() + s.j() + 6) * s.scale());
    Ok(num / (int(8) * r(lambda + 3) * r(lambda + 4)))
}

/// A sector together with a value of `aZ`. Evaluates the entries of `K̂(a)`.
#[derive(Debug, Clone)]
pub struct CoeffContext {
    pub sector: Sector,
    pub az: BigRational,
}

impl CoeffContext {
    pub fn new(sector: Sector, az: BigRational) -> Result<Self> {
        if az < BigRational::zero() {
            return Err(crate::MiczError::InvalidArgument(format!("aZ = {az} must be non-negative")));
        }
        Ok(CoeffContext { sector, az })
    }

    pub fn a(&self, lambda: HalfInt) -> Result<BigRational> {
        coef_a(&self.sector, lambda, &self.az)
    }

    pub fn btilde(&self, lambda: HalfInt) -> Result<RadicalScalar> {
        coef_btilde(&self.sector, lambda, &self.az)
    }

    /// `K̂(a)` exactly: diagonal `A_λ`, off-diagonal `−B̃_{λ+1}`.
    pub fn k_matrix(&self) -> Result<ExactTridiagonal> {
        let lambdas = self.sector.lambda_range();
        let diag = lambdas.iter().map(|&l| self.a(l).map(RadicalScalar::from_rational)).collect::<Result<Vec<_>>>()?;
        let offdiag = lambdas[1..].iter().map(|&l| self.btilde(l).map(|b| -b)).collect::<Result<Vec<_>>>()?;
        Ok(ExactTridiagonal { diag, offdiag })
    }
}

/// A symmetric tridiagonal matrix with exact entries.
#[derive(Debug, Clone, PartialEq)]
pub struct ExactTridiagonal {
    pub diag: Vec<RadicalScalar>,
    pub offdiag: Vec<RadicalScalar>,
}

impl ExactTridiagonal {
    pub fn dim(&self) -> usize {
        self.diag.len()
    }

    pub fn get(&self, i: usize, j: usize) -> RadicalScalar {
        match i.abs_diff(j) {
            0 => self.diag[i].clone(),
            1 => self.offdiag[i.min(j)].clone(),
            _ => RadicalScalar::zero(),
        }
    }

    pub fn to_dense(&self) -> Vec<Vec<RadicalScalar>> {
        let n = self.dim();
        (0..n).map(|i| (0..n).map(|j| self.get(i, j)).collect()).collect()
    }

    pub fn to_f64(&self) -> SymTridiagonal {
        SymTridiagonal::new(
            self.diag.iter().map(RadicalScalar::to_f64).collect(),
            self.offdiag.iter().map(RadicalScalar::to_f64).collect(),
        )
        .expect("lengths agree by construction")
    }

    /// Trace as an exact rational; the diagonal is rational for every matrix built here.
    pub fn trace(&self) -> Result<RadicalScalar> {
        self.diag.iter().try_fold(RadicalScalar::zero(), |acc, d| acc.add(d))
    }
}

/// Closed-form M₉ in the spherical basis: diagonal
/// `−(J−L)(L+J+6)(2n+Q+8) / (8(λ+3)(λ+4))`, entries `(λ−1, λ)` equal to `B_λ`.
pub fn m9_spherical_matrix(s: &Sector) -> Result<ExactTridiagonal> {
    let lambdas = s.lambda_range();
    let diag =
        lambdas.iter().map(|&l| m9_diagonal(s, l).map(RadicalScalar::from_rational)).collect::<Result<Vec<_>>>()?;
    let offdiag = lambdas[1..].iter().map(|&l| coef_b(s, l)).collect::<Result<Vec<_>>>()?;
    Ok(ExactTridiagonal { diag, offdiag })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sector::rat;

    fn s(n: i64, q: i64, l: i64, j: i64) -> Sector {
        Sector::new(n, q, l, j, 1).unwrap()
    }
    fn h(v: i64) -> HalfInt {
        HalfInt::from_int(v)
    }

    // Straight transcription of B_λ² in f64, without any shared helper.
    fn b_squared_oracle(n: f64, q: f64, l: f64, j: f64, lam: f64) -> f64 {
        let (nu, s, d) = (n + q / 2.0, (l + j) / 2.0, (j - l) / 2.0);
        (nu - lam + 1.0) * (nu + lam + 7.0) * (lam - s) * (lam + 6.0 + s) * (lam + 3.0 - d) * (lam + 3.0 + d)
            / ((lam + 3.0).powi(2) * (2.0 * lam + 7.0) * (2.0 * lam + 5.0))
    }

    #[test]
    fn b_examples() {
        assert!(coef_b(&s(1, 0, 0, 0), h(0)).unwrap().is_zero());
        assert_eq!(coef_b(&s(1, 0, 0, 0), h(1)).unwrap(), RadicalScalar::one());
        let b = coef_b(&s(2, 0, 0, 2), h(2)).unwrap();
        assert_eq!(b, RadicalScalar::new(rat(2, 5), rat(6, 1)).unwrap());
        assert_eq!(coef_b(&s(1, 0, 0, 0), h(2)).unwrap_err().name(), "LambdaOutOfRange");
    }

    #[test]
    fn b_matches_float_transcription() {
        for sec in Sector::desk_sweep() {
            for lam in sec.lambda_range() {
                let want =
                    b_squared_oracle(sec.n() as f64, sec.q() as f64, sec.l() as f64, sec.j() as f64, lam.to_f64());
                let got = coef_b_squared(&sec, lam).unwrap().to_f64().unwrap();
                assert!((want - got).abs() <= 1e-14 * want.abs().max(1.0), "{sec} λ={lam}");
                let b = coef_b(&sec, lam).unwrap();
                if lam == sec.lambda_min() {
                    assert!(b.is_zero());
                } else {
                    assert_eq!(b.signum(), 1, "B must be positive on the interior of {sec}");
                }
            }
        }
    }

    #[test]
    fn a_examples() {
        let az = rat(5, 1);
        assert_eq!(coef_a(&s(1, 0, 0, 0), h(1), &az).unwrap(), rat(-8, 1));
        assert_eq!(coef_a(&s(2, 0, 0, 2), h(1), &rat(1, 1)).unwrap(), rat(-39, 5));
        for lam in s(3, 0, 1, 1).lambda_range() {
            let l = lam.to_rational();
            assert_eq!(coef_a(&s(3, 0, 1, 1), lam, &rat(7, 3)).unwrap(), -(&l * (l.clone() + rat(7, 1))));
        }
        assert!((coef_a_f64(&s(2, 0, 0, 2), h(1), 1.0).unwrap() + 7.8).abs() < 1e-15);
    }

    #[test]
    fn btilde_examples() {
        let b = coef_btilde(&s(1, 0, 0, 0), h(1), &rat(5, 1)).unwrap();
        assert_eq!(b, RadicalScalar::one());
        for sec in Sector::desk_sweep() {
            assert!(coef_btilde(&sec, sec.lambda_min(), &rat(3, 1)).unwrap().is_zero());
            for lam in sec.lambda_range() {
                assert!(coef_btilde(&sec, lam, &rat(0, 1)).unwrap().is_zero());
            }
        }
    }

    #[test]
    fn m9_examples() {
        let m = m9_spherical_matrix(&s(1, 0, 0, 0)).unwrap();
        assert_eq!(
            m.to_dense(),
            vec![vec![RadicalScalar::zero(), RadicalScalar::one()], vec![RadicalScalar::one(), RadicalScalar::zero()],]
        );
        let m = m9_spherical_matrix(&s(2, 0, 0, 2)).unwrap();
        assert_eq!(m.diag, vec![RadicalScalar::from_rational(rat(-6, 5)), RadicalScalar::from_rational(rat(-4, 5)),]);
        assert_eq!(m.offdiag, vec![RadicalScalar::new(rat(2, 5), rat(6, 1)).unwrap()]);
        assert_eq!(m9_spherical_matrix(&s(0, 0, 0, 0)).unwrap().to_dense(), vec![vec![RadicalScalar::zero()]]);
    }

    #[test]
    fn m9_trace_matches_parabolic_spectrum() {
        for sec in Sector::desk_sweep() {
            let tr = m9_spherical_matrix(&sec).unwrap().trace().unwrap();
            let sum: i64 = sec.np_range().iter().map(|&p| sec.m9_parabolic_eigenvalue(p).unwrap().twice()).sum();
            assert_eq!(tr, RadicalScalar::from_rational(HalfInt::from_twice(sum).to_rational()), "{sec}");
        }
    }

    #[test]
    fn m9_eigenvalues_are_parabolic_labels() {
        // nalgebra's dense symmetric solver as an independent oracle
        for sec in Sector::desk_sweep() {
            let dense = m9_spherical_matrix(&sec).unwrap().to_f64().to_dense();
            let mut ev: Vec<f64> = nalgebra::SymmetricEigen::new(dense).eigenvalues.iter().copied().collect();
            ev.sort_by(f64::total_cmp);
            let mut want: Vec<f64> =
                sec.np_range().iter().map(|&p| sec.m9_parabolic_eigenvalue(p).unwrap().to_f64()).collect();
            want.sort_by(f64::total_cmp);
            for (a, b) in ev.iter().zip(&want) {
                assert!((a - b).abs() < 1e-12, "{sec}: {ev:?} vs {want:?}");
            }
        }
    }

    #[test]
    fn k_matrix_is_minus_lambda2_minus_scaled_m9() {
        // K̂ = −Λ² − a√(−2E)·M₉ with √(−2E) = 2Z/(2n+Q+8)
        for sec in Sector::desk_sweep() {
            let az = rat(3, 2);
            let ctx = CoeffContext::new(sec.clone(), az.clone()).unwrap();
            let k = ctx.k_matrix().unwrap();
            let m9 = m9_spherical_matrix(&sec).unwrap();
            let f = rat(2, 1) * &az / rat(sec.scale(), 1);
            for (i, lam) in sec.lambda_range().into_iter().enumerate() {
                let l = lam.to_rational();
                let want = -(&l * (l.clone() + rat(7, 1))) - m9.diag[i].coeff() * &f;
                assert_eq!(k.diag[i], RadicalScalar::from_rational(want));
            }
            for i in 0..k.offdiag.len() {
                assert_eq!(k.offdiag[i], -m9.offdiag[i].scale(&f));
            }
        }
    }
}
