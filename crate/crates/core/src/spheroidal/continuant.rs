//! Eigenvectors of `K̂(a)` from continuants.
//!
//! At an eigenvalue `K` the first recurrence row gives
//! `T_λ ∝ p_λ(K) / Π_{j=(L+J)/2+1}^{λ} B̃_j`, with `p_λ` the leading principal
//! minor of `K̂ − K`. The product starts above the bottom of the range because
//! `B̃_{(L+J)/2}` vanishes identically.
//!
//! The forward minors are accurate only while the eigenvector grows, so the
//! same construction is run from the bottom-right corner as well and the two
//! halves are joined at the index where the combined vector has the smallest
//! residual.

use super::{build_k_matrix, SymTridiagonal};
use crate::error::{MiczError, Result};
use crate::sector::Sector;

/// Above this magnitude the running minors are rescaled.
const RESCALE: f64 = 1e150;

/// Normalized eigenvector of `m` at the eigenvalue `k`, first component positive.
pub fn continuant_vector(m: &SymTridiagonal, k: f64) -> Result<Vec<f64>> {
    let n = m.dim();
    if n == 1 {
        return Ok(vec![1.0]);
    }
    // recurrence written in terms of b_i = −offdiag_i, which is B̃ for K̂(a)
    let b: Vec<f64> = m.offdiag.iter().map(|e| -e).collect();
    if let Some(i) = b.iter().position(|x| *x == 0.0 || !x.is_finite()) {
        return Err(MiczError::DegenerateShift(format!("off-diagonal {i} is {}", b[i])));
    }
    let d: Vec<f64> = m.diag.iter().map(|x| x - k).collect();

    // forward: row i reads −b_{i−1} f_{i−1} + d_i f_i − b_i f_{i+1} = 0
    let mut f = vec![0.0; n];
    f[0] = 1.0;
    f[1] = d[0] / b[0];
    for i in 1..n - 1 {
        f[i + 1] = (d[i] * f[i] - b[i - 1] * f[i - 1]) / b[i];
        if f[i + 1].abs() > RESCALE {
            f[..=i + 1].iter_mut().for_each(|v| *v /= RESCALE);
        }
    }
    // backward from the last row
    let mut g = vec![0.0; n];
    g[n - 1] = 1.0;
    g[n - 2] = d[n - 1] / b[n - 2];
    for i in (1..n - 1).rev() {
        g[i - 1] = (d[i] * g[i] - b[i] * g[i + 1]) / b[i - 1];
        if g[i - 1].abs() > RESCALE {
            g[i - 1..].iter_mut().for_each(|v| *v /= RESCALE);
        }
    }
    if f.iter().chain(&g).any(|v| !v.is_finite()) {
        return Err(MiczError::DegenerateShift("continuant overflow".into()));
    }

    let mut best: Option<(f64, Vec<f64>)> = None;
    for split in 0..n {
        if f[split] == 0.0 || (split + 1 < n && g[split] == 0.0) {
            continue;
        }
        // v = f on [0, split], g rescaled to agree with f at split beyond it;
        // f_0 = 1 keeps the first component positive
        let mut v = f[..=split].to_vec();
        if split + 1 < n {
            let ratio = f[split] / g[split];
            v.extend(g[split + 1..].iter().map(|x| x * ratio));
        }
        let nrm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
        if !(nrm.is_finite() && nrm > 0.0) {
            continue;
        }
        v.iter_mut().for_each(|x| *x /= nrm);
        let mv = m.mul_vec(&v);
        let res = mv.iter().zip(&v).map(|(a, x)| (a - k * x).powi(2)).sum::<f64>().sqrt();
        if best.as_ref().is_none_or(|(r, _)| res < *r) {
            best = Some((res, v));
        }
    }
    let (_, mut v) = best.ok_or_else(|| MiczError::DegenerateShift(format!("no usable split at K = {k:e}")))?;
    if v[0] < 0.0 {
        v.iter_mut().for_each(|x| *x = -*x);
    }
    Ok(v)
}

/// The column `T_{·;n_k}(a)` from the continuant, for a computed eigenvalue `k`.
pub fn t_by_continuant(s: &Sector, a: f64, k: f64) -> Result<Vec<f64>> {
    continuant_vector(&build_k_matrix(s, a)?, k)
}
