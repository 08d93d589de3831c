//! Quantum-number bookkeeping for one degenerate block.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{FromPrimitive, Signed, ToPrimitive};

use crate::error::{MiczError, Result};
use crate::halfint::HalfInt;

/// A validated `(n, Q, L, J; Z)` tuple.
///
/// The charge is held exactly; float-mode callers pass a decimal or an `f64`
/// that is converted without loss.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Sector {
    n: i64,
    q: i64,
    l: i64,
    j: i64,
    z: BigRational,
}

/// Checks the quantum numbers and builds a [`Sector`].
pub fn validate_sector(n: i64, q: i64, l: i64, j: i64, z: BigRational) -> Result<Sector> {
    for (name, value) in [("n", n), ("Q", q), ("L", l), ("J", j)] {
        if value < 0 {
            return Err(MiczError::NegativeQuantumNumber { name, value });
        }
    }
    if (q - l - j).rem_euclid(2) != 0 {
        return Err(MiczError::ParityMismatch { q, lj: l + j });
    }
    // twice(N) = 2n + Q - (L + J) + 2
    let twice_dim = 2 * n + q - l - j + 2;
    if twice_dim < 2 {
        return Err(MiczError::EmptySector { dim: HalfInt::from_twice(twice_dim).to_string() });
    }
    if !z.is_positive() {
        return Err(MiczError::NonpositiveCharge(z.to_string()));
    }
    Ok(Sector { n, q, l, j, z })
}

impl Sector {
    /// Sector with an integer charge.
    pub fn new(n: i64, q: i64, l: i64, j: i64, z: i64) -> Result<Sector> {
        validate_sector(n, q, l, j, BigRational::from_integer(BigInt::from(z)))
    }

    /// Sector with a real charge; the `f64` is converted exactly.
    pub fn with_real_charge(n: i64, q: i64, l: i64, j: i64, z: f64) -> Result<Sector> {
        let zr = BigRational::from_f64(z).ok_or_else(|| MiczError::NonpositiveCharge(z.to_string()))?;
        validate_sector(n, q, l, j, zr)
    }

    pub fn n(&self) -> i64 {
        self.n
    }
    pub fn q(&self) -> i64 {
        self.q
    }
    pub fn l(&self) -> i64 {
        self.l
    }
    pub fn j(&self) -> i64 {
        self.j
    }
    pub fn z(&self) -> &BigRational {
        &self.z
    }
    pub fn z_f64(&self) -> f64 {
        self.z.to_f64().unwrap_or(f64::NAN)
    }

    /// Number of states N in the block.
    pub fn dim(&self) -> usize {
        ((2 * self.n + self.q - self.l - self.j) / 2 + 1) as usize
    }

    /// `n + Q/2`, the largest λ.
    pub fn nq(&self) -> HalfInt {
        HalfInt::from_twice(2 * self.n + self.q)
    }

    /// `(L + J)/2`, the smallest λ.
    pub fn lambda_min(&self) -> HalfInt {
        HalfInt::from_twice(self.l + self.j)
    }

    /// `(J − L)/2`.
    pub fn half_jl(&self) -> HalfInt {
        HalfInt::from_twice(self.j - self.l)
    }

    /// `2n + Q + 8`, the recurring denominator.
    pub fn scale(&self) -> i64 {
        2 * self.n + self.q + 8
    }

    pub fn lambda_range(&self) -> Vec<HalfInt> {
        (0..self.dim() as i64).map(|i| self.lambda_min() + i).collect()
    }

    pub fn np_range(&self) -> Vec<i64> {
        (0..self.dim() as i64).collect()
    }

    /// Row index of λ in λ-ascending matrices.
    pub fn lambda_index(&self, lambda: HalfInt) -> Result<usize> {
        let off = lambda - self.lambda_min();
        match off.to_int() {
            Some(i) if i >= 0 && (i as usize) < self.dim() => Ok(i as usize),
            _ => Err(MiczError::LambdaOutOfRange {
                lambda: lambda.to_string(),
                lo: self.lambda_min().to_string(),
                hi: self.nq().to_string(),
            }),
        }
    }

    pub fn check_np(&self, n_p: i64) -> Result<()> {
        if n_p < 0 || n_p as usize >= self.dim() {
            return Err(MiczError::IndexOutOfRange {
                what: "n_p",
                index: n_p.to_string(),
                range: format!("[0, {}]", self.dim() - 1),
            });
        }
        Ok(())
    }

    /// `E = −Z² / (2 (n + 4 + Q/2)²)`.
    pub fn energy(&self) -> BigRational {
        let d = BigRational::new(BigInt::from(self.scale()), BigInt::from(2));
        -(&self.z * &self.z) / (BigRational::from_integer(2.into()) * &d * &d)
    }

    pub fn energy_f64(&self) -> f64 {
        self.energy().to_f64().unwrap_or(f64::NAN)
    }

    /// `α = 4Z / (2n + Q + 8)`, equal to `2√(−2E)`.
    pub fn alpha_scale(&self) -> BigRational {
        &self.z * BigRational::new(4.into(), self.scale().into())
    }

    pub fn alpha_f64(&self) -> f64 {
        self.alpha_scale().to_f64().unwrap_or(f64::NAN)
    }

    /// `√(−2E) = 2Z / (2n + Q + 8)`, rational because E is a negative square over two.
    pub fn sqrt_minus_2e(&self) -> BigRational {
        self.alpha_scale() / BigRational::from_integer(2.into())
    }

    /// Eigenvalue `n + Q/2 − J − 2 n_p` of M₉ on a parabolic state.
    pub fn m9_parabolic_eigenvalue(&self, n_p: i64) -> Result<HalfInt> {
        self.check_np(n_p)?;
        Ok(self.nq() - self.j - 2 * n_p)
    }

    /// Every valid sector with `Q ≤ max_q`, `L, J ≤ max_lj` and `n + Q/2 ≤ max_nq`,
    /// ordered by `(Q, L, J, n)`, with `Z = 1`.
    pub fn enumerate(max_q: i64, max_lj: i64, max_nq: i64) -> Vec<Sector> {
        let mut out = Vec::new();
        for q in 0..=max_q {
            for l in 0..=max_lj {
                for j in 0..=max_lj {
                    for n in 0..=max_nq {
                        if 2 * n + q > 2 * max_nq {
                            break;
                        }
                        if let Ok(s) = Sector::new(n, q, l, j, 1) {
                            out.push(s);
                        }
                    }
                }
            }
        }
        out
    }

    /// The desk-scale sweep used throughout the test suite: `Q ≤ 4`, `L, J ≤ 4`, `n + Q/2 ≤ 4`.
    pub fn desk_sweep() -> Vec<Sector> {
        Sector::enumerate(4, 4, 4)
    }
}

impl fmt::Display for Sector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(n={}, Q={}, L={}, J={}, Z={})", self.n, self.q, self.l, self.j, self.z)
    }
}

/// Angular labels of the full state. They are carried along for output but
/// never enter a computation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct PassiveLabels {
    pub j5: i64,
    pub j4: i64,
    pub j3: i64,
    pub j2: i64,
    pub j1: i64,
    pub m_j: i64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Basis {
    Spherical { lambda: HalfInt },
    Parabolic { n_p: i64 },
    Spheroidal { n_k: i64, a: f64 },
}

#[derive(Debug, Clone, PartialEq)]
pub struct StateLabel {
    pub sector: Sector,
    pub basis: Basis,
    pub passive: PassiveLabels,
}

impl StateLabel {
    pub fn new(sector: Sector, basis: Basis, passive: PassiveLabels) -> Result<StateLabel> {
        match basis {
            Basis::Spherical { lambda } => {
                sector.lambda_index(lambda)?;
            }
            Basis::Parabolic { n_p } => sector.check_np(n_p)?,
            Basis::Spheroidal { n_k, a } => {
                if n_k < 0 || n_k as usize >= sector.dim() {
                    return Err(MiczError::IndexOutOfRange {
                        what: "n_k",
                        index: n_k.to_string(),
                        range: format!("[0, {}]", sector.dim() - 1),
                    });
                }
                if !(a > 0.0 && a.is_finite()) {
                    return Err(MiczError::InvalidArgument(format!("focal distance a = {a} must be positive")));
                }
            }
        }
        Ok(StateLabel { sector, basis, passive })
    }
}

#[cfg(test)]
pub(crate) fn rat(num: i64, den: i64) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(n: i64, q: i64, l: i64, j: i64) -> Sector {
        Sector::new(n, q, l, j, 1).unwrap()
    }

    #[test]
    fn validation_examples() {
        let a = s(1, 0, 0, 0);
        assert_eq!(a.dim(), 2);
        assert_eq!(a.lambda_range(), vec![HalfInt::from_int(0), HalfInt::from_int(1)]);
        assert_eq!(s(0, 0, 0, 0).dim(), 1);
        assert_eq!(Sector::new(0, 0, 1, 0, 1).unwrap_err().name(), "ParityMismatch");
        assert_eq!(Sector::new(0, 0, 2, 0, 1).unwrap_err().name(), "EmptySector");
        assert_eq!(Sector::new(-1, 0, 0, 0, 1).unwrap_err().name(), "NegativeQuantumNumber");
        assert_eq!(Sector::new(0, 0, 0, 0, 0).unwrap_err().name(), "NonpositiveCharge");
    }

    #[test]
    fn ranges() {
        assert_eq!(s(2, 0, 0, 2).lambda_range(), vec![HalfInt::from_int(1), HalfInt::from_int(2)]);
        assert_eq!(s(0, 2, 1, 1).lambda_range(), vec![HalfInt::from_int(1)]);
        assert_eq!(s(1, 0, 0, 0).np_range(), vec![0, 1]);
        assert_eq!(s(0, 0, 0, 0).np_range(), vec![0]);
        assert_eq!(s(3, 0, 1, 1).np_range(), vec![0, 1, 2]);
        let odd = s(1, 1, 1, 0);
        assert_eq!(odd.lambda_range(), vec![HalfInt::from_twice(1), HalfInt::from_twice(3)]);
    }

    #[test]
    fn energy_and_alpha() {
        assert_eq!(s(0, 0, 0, 0).energy(), rat(-1, 32));
        assert_eq!(s(1, 0, 0, 0).energy(), rat(-1, 50));
        assert_eq!(Sector::new(0, 2, 0, 0, 2).unwrap().energy(), rat(-2, 25));
        assert_eq!(s(2, 0, 0, 2).energy(), rat(-1, 72));
        assert_eq!(s(1, 0, 0, 0).alpha_scale(), rat(2, 5));
        assert_eq!(s(0, 0, 0, 0).alpha_scale(), rat(1, 2));
        for sec in Sector::desk_sweep() {
            let a = sec.alpha_scale();
            assert_eq!(&a * &a, sec.energy() * rat(-8, 1));
        }
    }

    #[test]
    fn energy_increases_with_n() {
        for q in 0..3 {
            let e: Vec<f64> = (0..5).map(|n| Sector::new(n, q, q % 2, 0, 1).unwrap().energy_f64()).collect();
            assert!(e.windows(2).all(|w| w[0] < w[1]));
        }
    }

    #[test]
    fn m9_eigenvalues() {
        let a = s(1, 0, 0, 0);
        assert_eq!(a.m9_parabolic_eigenvalue(0).unwrap(), HalfInt::from_int(1));
        assert_eq!(a.m9_parabolic_eigenvalue(1).unwrap(), HalfInt::from_int(-1));
        assert_eq!(s(2, 0, 0, 2).m9_parabolic_eigenvalue(0).unwrap(), HalfInt::from_int(0));
        assert_eq!(a.m9_parabolic_eigenvalue(2).unwrap_err().name(), "IndexOutOfRange");
    }

    #[test]
    fn desk_sweep_is_consistent() {
        let all = Sector::desk_sweep();
        assert!(all.len() > 50);
        for sec in &all {
            assert_eq!(sec.lambda_range().len(), sec.dim());
            assert_eq!(*sec.lambda_range().last().unwrap(), sec.nq());
            assert!(sec.nq().twice() <= 8);
        }
    }

    #[test]
    fn state_labels() {
        let sec = s(1, 0, 0, 0);
        let p = PassiveLabels::default();
        assert!(StateLabel::new(sec.clone(), Basis::Spherical { lambda: HalfInt::from_int(1) }, p).is_ok());
        assert!(StateLabel::new(sec.clone(), Basis::Spherical { lambda: HalfInt::from_int(2) }, p).is_err());
        assert!(StateLabel::new(sec.clone(), Basis::Parabolic { n_p: 2 }, p).is_err());
        assert!(StateLabel::new(sec.clone(), Basis::Spheroidal { n_k: 1, a: 0.5 }, p).is_ok());
        assert!(StateLabel::new(sec, Basis::Spheroidal { n_k: 0, a: 0.0 }, p).is_err());
    }
}
