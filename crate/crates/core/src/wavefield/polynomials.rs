//! Generalized Laguerre and Jacobi polynomials by three-term recurrence.

/// `L_k^{(s)}(x)`.
pub fn laguerre_gen(k: i64, s: f64, x: f64) -> f64 {
    if k < 0 {
        return 0.0;
    }
    let (mut prev, mut cur) = (0.0, 1.0);
    for j in 0..k {
        let jf = j as f64;
        let next = ((2.0 * jf + 1.0 + s - x) * cur - (jf + s) * prev) / (jf + 1.0);
        prev = cur;
        cur = next;
    }
    cur
}

/// `(L, L', L'')` using `d/dx L_k^{(s)} = −L_{k−1}^{(s+1)}`.
pub fn laguerre_gen_derivs(k: i64, s: f64, x: f64) -> (f64, f64, f64) {
    (laguerre_gen(k, s, x), -laguerre_gen(k - 1, s + 1.0, x), laguerre_gen(k - 2, s + 2.0, x))
}

/// `P_k^{(p,q)}(x)`.
pub fn jacobi_gen(k: i64, p: f64, q: f64, x: f64) -> f64 {
    if k < 0 {
        return 0.0;
    }
    if k == 0 {
        return 1.0;
    }
    let mut prev = 1.0;
    let mut cur = 0.5 * (p - q) + 0.5 * (p + q + 2.0) * x;
    for j in 1..k {
        let n = j as f64;
        let c = 2.0 * n + p + q;
        let a1 = 2.0 * (n + 1.0) * (n + p + q + 1.0) * c;
        let a2 = (c + 1.0) * (p * p - q * q);
        let a3 = c * (c + 1.0) * (c + 2.0);
        let a4 = 2.0 * (n + p) * (n + q) * (c + 2.0);
        let next = ((a2 + a3 * x) * cur - a4 * prev) / a1;
        prev = cur;
        cur = next;
    }
    cur
}

/// `(P, P', P'')` using `d/dx P_k^{(p,q)} = (k+p+q+1)/2 · P_{k−1}^{(p+1,q+1)}`.
pub fn jacobi_gen_derivs(k: i64, p: f64, q: f64, x: f64) -> (f64, f64, f64) {
    let kf = k as f64;
    let d1 = 0.5 * (kf + p + q + 1.0) * jacobi_gen(k - 1, p + 1.0, q + 1.0, x);
    let d2 = 0.25 * (kf + p + q + 1.0) * (kf + p + q + 2.0) * jacobi_gen(k - 2, p + 2.0, q + 2.0, x);
    (jacobi_gen(k, p, q, x), d1, d2)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn binom(n: f64, k: i64) -> f64 {
        (0..k).fold(1.0, |acc, i| acc * (n - i as f64) / (i + 1) as f64)
    }

    // explicit sum: L_k^{(s)}(x) = Σ_i (−1)^i C(k+s, k−i) x^i / i!
    fn laguerre_sum(k: i64, s: f64, x: f64) -> f64 {
        (0..=k)
            .map(|i| {
                let fact: f64 = (1..=i).map(|v| v as f64).product();
                (-1f64).powi(i as i32) * binom(k as f64 + s, k - i) * x.powi(i as i32) / fact
            })
            .sum()
    }

    // explicit sum: P_k^{(p,q)}(x) = Σ_i C(k+p, i) C(k+q, k−i) ((x−1)/2)^{k−i} ((x+1)/2)^i
    fn jacobi_sum(k: i64, p: f64, q: f64, x: f64) -> f64 {
        (0..=k)
            .map(|i| {
                binom(k as f64 + p, i)
                    * binom(k as f64 + q, k - i)
                    * ((x - 1.0) / 2.0).powi((k - i) as i32)
                    * ((x + 1.0) / 2.0).powi(i as i32)
            })
            .sum()
    }

    #[test]
    fn examples() {
        assert_eq!(laguerre_gen(0, 3.5, 2.0), 1.0);
        assert_eq!(laguerre_gen(1, 2.0, 0.5), 2.5);
        assert_eq!(laguerre_gen(2, 0.0, 0.0), 1.0);
        assert_eq!(jacobi_gen(0, 1.0, 2.0, 0.3), 1.0);
        assert!((jacobi_gen(1, 0.0, 0.0, 0.3) - 0.3).abs() < 1e-16);
        assert_eq!(jacobi_gen(1, 3.0, 5.0, 1.0), 4.0);
    }

    #[test]
    fn recurrence_matches_explicit_sums() {
        for k in 0..9 {
            for s in [0.0, 3.0, 8.5, 11.0] {
                for x in [0.0, 0.7, 3.0, 12.5] {
                    let (a, b) = (laguerre_gen(k, s, x), laguerre_sum(k, s, x));
                    assert!((a - b).abs() <= 1e-11 * b.abs().max(1.0), "L_{k}^{s}({x})");
                }
            }
            for (p, q) in [(3.0, 3.0), (4.0, 6.0), (5.5, 3.0), (0.0, 0.0)] {
                for x in [-0.95, -0.3, 0.0, 0.41, 1.0] {
                    let (a, b) = (jacobi_gen(k, p, q, x), jacobi_sum(k, p, q, x));
                    assert!((a - b).abs() <= 1e-11 * b.abs().max(1.0), "P_{k}^({p},{q})({x})");
                }
            }
        }
    }

    #[test]
    fn endpoint_values() {
        for k in 0..7 {
            assert!((laguerre_gen(k, 4.0, 0.0) - binom(k as f64 + 4.0, k)).abs() < 1e-10);
            assert!((jacobi_gen(k, 3.0, 5.0, 1.0) - binom(k as f64 + 3.0, k)).abs() < 1e-10);
        }
    }

    #[test]
    fn derivatives_match_finite_differences() {
        let h = 1e-5;
        for k in 0..6 {
            let x = 1.3;
            let (_, d1, d2) = laguerre_gen_derivs(k, 3.5, x);
            let fd1 = (laguerre_gen(k, 3.5, x + h) - laguerre_gen(k, 3.5, x - h)) / (2.0 * h);
            let fd2 =
                (laguerre_gen(k, 3.5, x + h) - 2.0 * laguerre_gen(k, 3.5, x) + laguerre_gen(k, 3.5, x - h)) / (h * h);
            assert!((d1 - fd1).abs() < 1e-5 * d1.abs().max(1.0));
            assert!((d2 - fd2).abs() < 1e-3 * d2.abs().max(1.0));
            let c = -0.4;
            let (_, j1, j2) = jacobi_gen_derivs(k, 4.0, 3.0, c);
            let g = |t: f64| jacobi_gen(k, 4.0, 3.0, t);
            assert!((j1 - (g(c + h) - g(c - h)) / (2.0 * h)).abs() < 1e-5 * j1.abs().max(1.0));
            assert!((j2 - (g(c + h) - 2.0 * g(c) + g(c - h)) / (h * h)).abs() < 1e-3 * j2.abs().max(1.0));
        }
    }
}
