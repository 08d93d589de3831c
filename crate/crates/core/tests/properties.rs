use approx::relative_eq;
use nalgebra::{DMatrix, SymmetricEigen};
use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;

use micz_core::exact::parse_rational;
use micz_core::spheroidal::{eigen_sym_tridiagonal, separation_constants};
use micz_core::{interbasis, HalfInt, RadicalScalar, Sector, SymTridiagonal};

fn rational() -> impl Strategy<Value = BigRational> {
    (-400i64..400, 1i64..60).prop_map(|(p, q)| BigRational::new(BigInt::from(p), BigInt::from(q)))
}

fn radical() -> impl Strategy<Value = RadicalScalar> {
    (rational(), 1i64..200, 1i64..30)
        .prop_map(|(c, p, q)| RadicalScalar::new(c, BigRational::new(BigInt::from(p), BigInt::from(q))).unwrap())
}

/// Three radicals over the same square class, so every sum is defined.
fn same_class() -> impl Strategy<Value = (RadicalScalar, RadicalScalar, RadicalScalar)> {
    (1i64..50, rational(), rational(), rational(), 1i64..6).prop_map(|(d, a, b, c, k)| {
        let d = BigRational::from_integer(BigInt::from(d));
        let dk = &d * BigRational::from_integer(BigInt::from(k * k));
        (
            RadicalScalar::new(a, d.clone()).unwrap(),
            RadicalScalar::new(b, d).unwrap(),
            RadicalScalar::new(c, dk).unwrap(),
        )
    })
}

fn ulps(a: f64, b: f64) -> u64 {
    if a == b {
        return 0;
    }
    if a.signum() != b.signum() {
        return u64::MAX;
    }
    a.abs().to_bits().abs_diff(b.abs().to_bits())
}

fn sym_tridiagonal() -> impl Strategy<Value = SymTridiagonal> {
    (1usize..9).prop_flat_map(|n| {
        (prop::collection::vec(-10.0f64..10.0, n), prop::collection::vec(-10.0f64..10.0, n - 1))
            .prop_map(|(d, e)| SymTridiagonal::new(d, e).unwrap())
    })
}

fn small_sector() -> impl Strategy<Value = Sector> {
    (0i64..4, 0i64..4, 0i64..4, 0i64..4).prop_filter_map("valid sector", |(n, q, l, j)| Sector::new(n, q, l, j, 1).ok())
}

proptest! {
    #[test]
    fn products_stay_in_the_field(x in radical(), y in radical()) {
        let p = &x * &y;
        let want = x.to_f64() * y.to_f64();
        prop_assert!(relative_eq!(p.to_f64(), want, max_relative = 1e-14, epsilon = 1e-300));
        prop_assert_eq!(&x * &y, &y * &x);
    }

    #[test]
    fn addition_commutes_and_associates((x, y, z) in same_class()) {
        prop_assert_eq!(x.add(&y).unwrap(), y.add(&x).unwrap());
        let left = x.add(&y).unwrap().add(&z).unwrap();
        let right = x.add(&y.add(&z).unwrap()).unwrap();
        prop_assert_eq!(left, right);
        prop_assert!(x.sub(&x).unwrap().is_zero());
    }

    #[test]
    fn squares_round_consistently(x in radical()) {
        let exact = (&x * &x).to_f64();
        let approx = x.to_f64() * x.to_f64();
        prop_assert!(ulps(exact, approx) <= 2, "{} vs {}", exact, approx);
        prop_assert_eq!(exact, RadicalScalar::from_rational(x.square()).to_f64());
    }

    #[test]
    fn rationals_parse_back(r in rational()) {
        prop_assert_eq!(parse_rational(&r.to_string()).unwrap(), r);
    }

    #[test]
    fn half_integers_round_trip(t in -1000i64..1000, k in -50i64..50) {
        let h = HalfInt::from_twice(t);
        prop_assert_eq!((h + k) - k, h);
        prop_assert_eq!(-(-h), h);
        prop_assert_eq!(h.to_f64() * 2.0, t as f64);
    }

    #[test]
    fn eigen_invariants(m in sym_tridiagonal()) {
        let e = eigen_sym_tridiagonal(&m).unwrap();
        let n = m.dim();
        let dense = m.to_dense();
        let norm = e.values.iter().fold(1e-300f64, |a, v| a.max(v.abs()));
        prop_assert!(e.values.windows(2).all(|w| w[0] <= w[1]));
        let trace: f64 = (0..n).map(|i| dense[(i, i)]).sum();
        let sum: f64 = e.values.iter().sum();
        prop_assert!((trace - sum).abs() <= 1e-12 * norm * n as f64);
        let lambda = DMatrix::from_diagonal(&nalgebra::DVector::from_vec(e.values.clone()));
        let residual = (&dense * &e.vectors - &e.vectors * lambda).amax();
        prop_assert!(residual <= 1e-12 * norm, "residual {}", residual);
        let orth = (e.vectors.transpose() * &e.vectors - DMatrix::<f64>::identity(n, n)).amax();
        prop_assert!(orth <= 1e-12, "orthogonality {}", orth);
        let mut oracle: Vec<f64> = SymmetricEigen::new(dense).eigenvalues.iter().copied().collect();
        oracle.sort_by(f64::total_cmp);
        for (a, b) in e.values.iter().zip(&oracle) {
            prop_assert!((a - b).abs() <= 1e-12 * norm);
        }
    }

    #[test]
    fn w_is_orthogonal_on_random_sectors(s in small_sector()) {
        let w = interbasis::w_matrix_unchecked(&s).unwrap();
        prop_assert!(w.column_orthogonality_failures().is_empty());
        prop_assert!(w.orthogonality_failures().is_empty());
    }

    #[test]
    fn spheroidal_trace_is_linear_in_a(s in small_sector(), a in 0.01f64..500.0) {
        // trace K̂ = −Σλ(λ+7) − a√(−2E)·trace M₉ and trace M₉ = Σ eigenvalues
        let sp = separation_constants(&s, a).unwrap();
        let sum: f64 = sp.k.iter().sum();
        let root = 2.0 * s.z_f64() / s.scale() as f64;
        let m9: f64 = s.np_range().into_iter().map(|p| s.m9_parabolic_eigenvalue(p).unwrap().to_f64()).sum();
        let l2: f64 = s.lambda_range().iter().map(|l| l.to_f64() * (l.to_f64() + 7.0)).sum();
        let want = -l2 - a * root * m9;
        prop_assert!((sum - want).abs() <= 1e-12 * (sp.norm() + 1.0) * s.dim() as f64);
    }
}
