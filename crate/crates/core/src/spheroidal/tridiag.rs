//! Symmetric tridiagonal eigensolver: Sturm-count bisection for the
//! eigenvalues, inverse iteration for the vectors.

use nalgebra::DMatrix;

use crate::error::{MiczError, Result};

const BISECTION_CAP: usize = 200;
const INVERSE_ITERATION_CAP: usize = 100;
/// Eigenvalues closer than this fraction of ‖T‖ get their vectors reorthogonalized.
const CLUSTER_GAP: f64 = 1e-3;

#[derive(Debug, Clone, PartialEq)]
pub struct SymTridiagonal {
    pub diag: Vec<f64>,
    pub offdiag: Vec<f64>,
}

impl SymTridiagonal {
    pub fn new(diag: Vec<f64>, offdiag: Vec<f64>) -> Result<Self> {
        if diag.is_empty() || offdiag.len() + 1 != diag.len() {
            return Err(MiczError::InvalidArgument(format!(
                "tridiagonal shape: {} diagonal and {} off-diagonal entries",
                diag.len(),
                offdiag.len()
            )));
        }
        if diag.iter().chain(&offdiag).any(|x| !x.is_finite()) {
            return Err(MiczError::InvalidArgument("non-finite matrix entry".into()));
        }
        Ok(SymTridiagonal { diag, offdiag })
    }

    pub fn dim(&self) -> usize {
        self.diag.len()
    }

    pub fn to_dense(&self) -> DMatrix<f64> {
        let n = self.dim();
        DMatrix::from_fn(n, n, |i, j| match i.abs_diff(j) {
            0 => self.diag[i],
            1 => self.offdiag[i.min(j)],
            _ => 0.0,
        })
    }

    pub fn mul_vec(&self, x: &[f64]) -> Vec<f64> {
        let n = self.dim();
        (0..n)
            .map(|i| {
                let mut y = self.diag[i] * x[i];
                if i > 0 {
                    y += self.offdiag[i - 1] * x[i - 1];
                }
                if i + 1 < n {
                    y += self.offdiag[i] * x[i + 1];
                }
                y
            })
            .collect()
    }

    /// Gershgorin interval containing the spectrum.
    pub fn gershgorin(&self) -> (f64, f64) {
        let n = self.dim();
        let mut lo = f64::INFINITY;
        let mut hi = f64::NEG_INFINITY;
        for i in 0..n {
            let r = if i > 0 { self.offdiag[i - 1].abs() } else { 0.0 }
                + if i + 1 < n { self.offdiag[i].abs() } else { 0.0 };
            lo = lo.min(self.diag[i] - r);
            hi = hi.max(self.diag[i] + r);
        }
        (lo, hi)
    }

    /// Number of eigenvalues strictly below `x` (Sturm sequence count) on the
    /// sub-block `range`.
    fn count_below(&self, range: std::ops::Range<usize>, x: f64, pivmin: f64) -> usize {
        let mut count = 0;
        let mut q = 1.0;
        for i in range.clone() {
            let e2 = if i > range.start { self.offdiag[i - 1].powi(2) } else { 0.0 };
            q = self.diag[i] - x - if i > range.start { e2 / q } else { 0.0 };
            if q.abs() < pivmin {
                q = -pivmin;
            }
            if q < 0.0 {
                count += 1;
            }
        }
        count
    }

    /// Index ranges of the irreducible diagonal blocks.
    pub fn blocks(&self) -> Vec<std::ops::Range<usize>> {
        let n = self.dim();
        let mut out = Vec::new();
        let mut start = 0;
        for i in 0..n - 1 {
            let e = self.offdiag[i].abs();
            // negligible only far below rounding of the neighbouring diagonal
            let scale = self.diag[i].abs() + self.diag[i + 1].abs();
            if e == 0.0 || e <= f64::EPSILON * f64::EPSILON * scale {
                out.push(start..i + 1);
                start = i + 1;
            }
        }
        out.push(start..n);
        out
    }
}

/// Spectrum of a symmetric tridiagonal matrix.
#[derive(Debug, Clone)]
pub struct TridiagEigen {
    /// Ascending.
    pub values: Vec<f64>,
    /// Column `k` is the unit eigenvector of `values[k]`; the first component
    /// of its irreducible block is positive.
    pub vectors: DMatrix<f64>,
}

/// Eigenvalues only, ascending, each bisected to full double precision.
pub fn eigenvalues_sym_tridiagonal(m: &SymTridiagonal) -> Result<Vec<f64>> {
    Ok(bisect_all(m)?.into_iter().map(|(_, v, _)| v).collect())
}

/// `(block index, eigenvalue, final bracket)`.
type Bracketed = (usize, f64, (f64, f64));

/// Every eigenvalue with its block and bracket, ascending.
fn bisect_all(m: &SymTridiagonal) -> Result<Vec<Bracketed>> {
    let (glo, ghi) = m.gershgorin();
    let norm = glo.abs().max(ghi.abs()).max(f64::MIN_POSITIVE);
    let pivmin = f64::MIN_POSITIVE * norm.max(1.0);
    let mut out = Vec::with_capacity(m.dim());
    for (b, range) in m.blocks().into_iter().enumerate() {
        let sub = SymTridiagonal {
            diag: m.diag[range.clone()].to_vec(),
            offdiag: m.offdiag[range.start..range.end - 1].to_vec(),
        };
        let (blo, bhi) = sub.gershgorin();
        let pad = f64::EPSILON * norm * 4.0 + pivmin;
        // eigenvalues at or near zero would otherwise bisect into the subnormals
        let abs_tol = 1e-45 * norm;
        let (blo, bhi) = (blo - pad, bhi + pad);
        if range.len() == 1 {
            let d = m.diag[range.start];
            out.push((b, d, (d, d)));
            continue;
        }
        for k in 0..range.len() {
            // find x with count_below(x) ≤ k < count_below(x') and shrink
            let (mut lo, mut hi) = (blo, bhi);
            let mut converged = false;
            for _ in 0..BISECTION_CAP {
                let mid = 0.5 * (lo + hi);
                if mid <= lo || mid >= hi || hi - lo <= abs_tol {
                    converged = true;
                    break;
                }
                if m.count_below(range.clone(), mid, pivmin) > k {
                    hi = mid;
                } else {
                    lo = mid;
                }
            }
            if !converged && hi - lo > 4.0 * f64::EPSILON * lo.abs().max(hi.abs()) + abs_tol {
                return Err(MiczError::ConvergenceFailure(format!(
                    "bisection for eigenvalue {k} stalled at [{lo:e}, {hi:e}]"
                )));
            }
            out.push((b, 0.5 * (lo + hi), (lo, hi)));
        }
    }
    out.sort_by(|x, y| x.1.total_cmp(&y.1));
    Ok(out)
}

/// Full eigendecomposition: bisection for the values, inverse iteration for
/// the vectors, reorthogonalization inside clusters.
pub fn eigen_sym_tridiagonal(m: &SymTridiagonal) -> Result<TridiagEigen> {
    let n = m.dim();
    let pairs = bisect_all(m)?;
    let blocks = m.blocks();
    let (glo, ghi) = m.gershgorin();
    let norm = glo.abs().max(ghi.abs());
    let mut values = Vec::with_capacity(n);
    let mut vectors = DMatrix::<f64>::zeros(n, n);
    // vectors already found per block, for reorthogonalization
    let mut found: Vec<Vec<(f64, Vec<f64>)>> = vec![Vec::new(); blocks.len()];

    for (col, &(b, value, bracket)) in pairs.iter().enumerate() {
        let range = blocks[b].clone();
        let sub = SymTridiagonal {
            diag: m.diag[range.clone()].to_vec(),
            offdiag: m.offdiag[range.start..range.end - 1].to_vec(),
        };
        let neighbours: Vec<&Vec<f64>> = found[b]
            .iter()
            .filter(|(v, _)| (v - value).abs() <= CLUSTER_GAP * norm.max(f64::MIN_POSITIVE))
            .map(|(_, x)| x)
            .collect();
        let mut x = inverse_iteration(&sub, value, norm, &neighbours)?;
        fix_sign(&sub, value, &mut x);
        let tx = sub.mul_vec(&x);
        let rq: f64 = tx.iter().zip(&x).map(|(a, b)| a * b).sum();
        // The Rayleigh quotient is second-order accurate but may leave the
        // bracket through rounding; the bracket is authoritative.
        let refined = if rq.is_finite() { rq.clamp(bracket.0, bracket.1) } else { value };
        values.push(refined);
        for (i, xi) in x.iter().enumerate() {
            vectors[(range.start + i, col)] = *xi;
        }
        found[b].push((value, x));
    }
    Ok(TridiagEigen { values, vectors })
}

/// Solves `(T − σ I) x = b` with partial pivoting, perturbing exact zero pivots.
fn shifted_solve(t: &SymTridiagonal, sigma: f64, rhs: &[f64], tiny: f64) -> Vec<f64> {
    let n = t.dim();
    if n == 1 {
        let d = t.diag[0] - sigma;
        let d = if d.abs() < tiny { tiny } else { d };
        return vec![rhs[0] / d];
    }
    // rows hold (sub, diag, sup, sup2) after elimination; classic LU with one extra fill-in
    let mut d: Vec<f64> = t.diag.iter().map(|x| x - sigma).collect();
    let mut up: Vec<f64> = t.offdiag.clone();
    let mut up2 = vec![0.0; n];
    let mut lo: Vec<f64> = t.offdiag.clone();
    let mut b = rhs.to_vec();
    for i in 0..n - 1 {
        if lo[i].abs() > d[i].abs() {
            // swap rows i and i+1
            std::mem::swap(&mut d[i], &mut lo[i]);
            std::mem::swap(&mut d[i + 1], &mut up[i]);
            if i + 1 < n - 1 {
                up2[i] = up[i + 1];
                up[i + 1] = 0.0;
            }
            b.swap(i, i + 1);
        }
        let piv = if d[i].abs() < tiny { tiny.copysign(d[i]) } else { d[i] };
        d[i] = piv;
        let f = lo[i] / piv;
        d[i + 1] -= f * up[i];
        if i + 1 < n - 1 {
            up[i + 1] -= f * up2[i];
        }
        b[i + 1] -= f * b[i];
        lo[i] = 0.0;
    }
    if d[n - 1].abs() < tiny {
        d[n - 1] = tiny;
    }
    let mut x = vec![0.0; n];
    for i in (0..n).rev() {
        let mut s = b[i];
        if i + 1 < n {
            s -= up[i] * x[i + 1];
        }
        if i + 2 < n {
            s -= up2[i] * x[i + 2];
        }
        x[i] = s / d[i];
    }
    x
}

fn normalize(x: &mut [f64]) -> f64 {
    let nrm = x.iter().map(|v| v * v).sum::<f64>().sqrt();
    if nrm > 0.0 && nrm.is_finite() {
        x.iter_mut().for_each(|v| *v /= nrm);
    }
    nrm
}

fn inverse_iteration(t: &SymTridiagonal, sigma: f64, norm: f64, against: &[&Vec<f64>]) -> Result<Vec<f64>> {
    let n = t.dim();
    if n == 1 {
        return Ok(vec![1.0]);
    }
    let scale = norm.max(f64::MIN_POSITIVE);
    let tiny = f64::EPSILON * scale;
    let tol = 1e-14 * scale.max(1e-300) * (n as f64).sqrt();
    // deterministic, non-symmetric start
    let mut x: Vec<f64> = (0..n).map(|i| 1.0 + 0.1 * ((i * 7919) % 13) as f64 / 13.0).collect();
    normalize(&mut x);
    let mut best = (f64::INFINITY, x.clone());
    for _ in 0..INVERSE_ITERATION_CAP {
        let mut y = shifted_solve(t, sigma, &x, tiny);
        for v in against {
            let dot: f64 = y.iter().zip(v.iter()).map(|(a, b)| a * b).sum();
            y.iter_mut().zip(v.iter()).for_each(|(a, b)| *a -= dot * b);
        }
        let grow = normalize(&mut y);
        if !grow.is_finite() || grow == 0.0 {
            return Err(MiczError::ConvergenceFailure(format!("inverse iteration broke down at shift {sigma:e}")));
        }
        let ty = t.mul_vec(&y);
        let res = ty.iter().zip(&y).map(|(a, b)| (a - sigma * b).powi(2)).sum::<f64>().sqrt();
        if res < best.0 {
            best = (res, y.clone());
        }
        if res <= tol {
            return Ok(y);
        }
        x = y;
        // once growth saturates, further steps cannot reduce the residual
        if grow > 1.0 / (f64::EPSILON * 16.0) && best.0 <= 1e-12 * scale {
            return Ok(best.1);
        }
    }
    if best.0 <= 1e-10 * scale {
        return Ok(best.1);
    }
    Err(MiczError::ConvergenceFailure(format!(
        "inverse iteration at shift {sigma:e}: residual {:e} after {INVERSE_ITERATION_CAP} steps",
        best.0
    )))
}

/// Makes the first component of the block eigenvector positive.
///
/// For an eigenvector `v` of an irreducible block with eigenvalue `μ`,
/// `v_i / v_0 = q_i(μ) / Π_{j<i} e_j` where `q_i` are the leading minors of
/// `μI − T`. The sign is read off at the largest component, where the minors
/// are trustworthy, instead of at `v_0`, which may be tiny.
fn fix_sign(t: &SymTridiagonal, mu: f64, x: &mut [f64]) {
    let m = x.iter().enumerate().max_by(|a, b| a.1.abs().total_cmp(&b.1.abs())).map(|(i, _)| i).unwrap_or(0);
    // sign of q_m via ratios r_i = q_i/q_{i-1}
    let mut sign = 1.0;
    let mut r_prev = 1.0f64;
    for i in 0..m {
        let mut r = (mu - t.diag[i]) - if i > 0 { t.offdiag[i - 1].powi(2) / r_prev } else { 0.0 };
        if r == 0.0 {
            r = f64::EPSILON * (t.diag[i].abs() + mu.abs()).max(f64::MIN_POSITIVE);
        }
        sign *= r.signum() * t.offdiag[i].signum();
        r_prev = r;
    }
    // want sign(x_m) = sign(q_m Π e_j) when x_0 > 0
    if x[m].signum() != sign {
        x.iter_mut().for_each(|v| *v = -*v);
    }
}
