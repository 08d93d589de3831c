//! The prolate spheroidal separation constant `K` and the coefficients
//! `T_{λ;n_k}(a)` expanding spheroidal states over spherical ones.
//!
//! `K̂(a)` is symmetric tridiagonal with diagonal `A_λ(aZ)` and off-diagonal
//! `−B̃_{λ+1}(aZ)`; its eigenvalues are the `K_{n_k}(a)`, labelled in ascending
//! order, and its eigenvectors are the columns of `T`.

mod branches;
mod continuant;
mod limits;
mod tridiag;

pub use branches::{linear_grid, log_grid, sweep_branches, BranchPoint, BranchSweep};
pub use continuant::{continuant_vector, t_by_continuant};
pub use limits::{
    check_parabolic_limit, check_spherical_limit, parabolic_limit, spherical_limit, ParabolicBranch,
    ParabolicLimitReport, SphericalBranch, SphericalLimitReport,
};
pub use tridiag::{eigen_sym_tridiagonal, eigenvalues_sym_tridiagonal, SymTridiagonal, TridiagEigen};

use nalgebra::DMatrix;

use crate::coeffs;
use crate::error::{MiczError, Result};
use crate::sector::Sector;

/// `K̂(a)` in `f64`, rows λ ascending. The sector supplies `Z`.
pub fn build_k_matrix(s: &Sector, a: f64) -> Result<SymTridiagonal> {
    if !(a >= 0.0 && a.is_finite()) {
        return Err(MiczError::InvalidArgument(format!("focal distance a = {a} must be finite and non-negative")));
    }
    let az = a * s.z_f64();
    let lambdas = s.lambda_range();
    let diag = lambdas.iter().map(|&l| coeffs::coef_a_f64(s, l, az)).collect::<Result<Vec<_>>>()?;
    let offdiag =
        lambdas[1..].iter().map(|&l| coeffs::coef_btilde_f64(s, l, az).map(|b| -b)).collect::<Result<Vec<_>>>()?;
    SymTridiagonal::new(diag, offdiag)
}

/// Eigenvalues and eigenvectors of `K̂(a)` for one sector.
#[derive(Debug, Clone)]
pub struct SpheroidalSpectrum {
    pub sector: Sector,
    pub a: f64,
    pub matrix: SymTridiagonal,
    /// `K_{n_k}`, ascending in `n_k`.
    pub k: Vec<f64>,
    /// Column `n_k` holds `T_{λ;n_k}` with λ ascending down the rows.
    pub t: DMatrix<f64>,
}

impl SpheroidalSpectrum {
    pub fn dim(&self) -> usize {
        self.k.len()
    }

    /// Spectral norm of `K̂`, i.e. its largest |eigenvalue|.
    pub fn norm(&self) -> f64 {
        self.k.iter().fold(0.0f64, |m, v| m.max(v.abs()))
    }

    /// `max |K̂T − TK|`.
    pub fn residual(&self) -> f64 {
        let kt = self.matrix.to_dense() * &self.t;
        let tk = &self.t * DMatrix::from_diagonal(&nalgebra::DVector::from_vec(self.k.clone()));
        (kt - tk).amax()
    }

    /// `max |TᵀT − I|`.
    pub fn orthogonality_defect(&self) -> f64 {
        let n = self.dim();
        (self.t.transpose() * &self.t - DMatrix::<f64>::identity(n, n)).amax()
    }

    pub fn column(&self, n_k: usize) -> Vec<f64> {
        self.t.column(n_k).iter().copied().collect()
    }
}

/// Solves `K̂(a) T = T K` with ascending labelling and sign-normalized columns.
pub fn separation_constants(s: &Sector, a: f64) -> Result<SpheroidalSpectrum> {
    let matrix = build_k_matrix(s, a)?;
    let e = eigen_sym_tridiagonal(&matrix)?;
    Ok(SpheroidalSpectrum { sector: s.clone(), a, matrix, k: e.values, t: e.vectors })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(n: i64, q: i64, l: i64, j: i64) -> Sector {
        Sector::new(n, q, l, j, 1).unwrap()
    }

    #[test]
    fn k_matrix_examples() {
        let m = build_k_matrix(&s(1, 0, 0, 0), 5.0).unwrap();
        assert_eq!(m.diag, vec![0.0, -8.0]);
        assert!((m.offdiag[0] + 1.0).abs() < 1e-15);
        let m0 = build_k_matrix(&s(2, 0, 0, 2), 0.0).unwrap();
        assert_eq!(m0.diag, vec![-8.0, -18.0]);
        assert_eq!(m0.offdiag, vec![0.0]);
        for a in [0.1, 3.0, 1e4] {
            assert_eq!(build_k_matrix(&s(0, 0, 0, 0), a).unwrap().diag, vec![0.0]);
        }
        assert!(build_k_matrix(&s(1, 0, 0, 0), -1.0).is_err());
    }

    #[test]
    fn two_state_spectrum() {
        let sp = separation_constants(&s(1, 0, 0, 0), 5.0).unwrap();
        let r = 17f64.sqrt();
        assert!((sp.k[0] - (-4.0 - r)).abs() < 1e-12);
        assert!((sp.k[1] - (-4.0 + r)).abs() < 1e-12);
        assert!(sp.residual() < 1e-13 * sp.norm());
        assert!(sp.orthogonality_defect() < 1e-14);
        let one = separation_constants(&s(0, 0, 0, 0), 2.5).unwrap();
        assert_eq!(one.k, vec![0.0]);
        assert_eq!(one.t[(0, 0)], 1.0);
    }

    #[test]
    fn spherical_limit_values() {
        let sp = separation_constants(&s(1, 0, 0, 0), 1e-8).unwrap();
        assert!((sp.k[0] + 8.0).abs() <= 1e-15);
        assert!(sp.k[1].abs() <= 1e-15);
    }

    #[test]
    fn trace_identity() {
        for sec in Sector::desk_sweep() {
            for a in [0.1, 1.0, 10.0] {
                let sp = separation_constants(&sec, a).unwrap();
                let tr: f64 = sp.matrix.diag.iter().sum();
                let ks: f64 = sp.k.iter().sum();
                assert!((tr - ks).abs() <= 1e-12 * sp.norm().max(1.0), "{sec} a={a}");
            }
        }
    }

    #[test]
    fn spectrum_matches_dense_oracle() {
        for sec in Sector::desk_sweep() {
            for a in [0.1, 1.0, 10.0, 100.0] {
                let sp = separation_constants(&sec, a).unwrap();
                let mut want: Vec<f64> =
                    nalgebra::SymmetricEigen::new(sp.matrix.to_dense()).eigenvalues.iter().copied().collect();
                want.sort_by(f64::total_cmp);
                for (x, y) in sp.k.iter().zip(&want) {
                    assert!((x - y).abs() <= 1e-12 * sp.norm().max(1.0), "{sec} a={a}");
                }
                assert!(sp.k.windows(2).all(|w| w[0] < w[1]), "simple spectrum expected for {sec}");
                for c in 0..sp.dim() {
                    let first = sp.t.column(c).iter().copied().find(|v| *v != 0.0).unwrap();
                    assert!(first > 0.0);
                }
            }
        }
    }
}
