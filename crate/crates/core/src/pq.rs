//! (p,q)-integers, (p,q)-binomial coefficients and the (p,q)-Bernstein basis.
//!
//! The (p,q)-integer is always formed by summation, so `p = q` (and in
//! particular the classical case `p = q = 1`) needs no special handling.

use serde::{Deserialize, Serialize};

use crate::error::{PqError, Result};
use crate::scalar::Scalar;

/// The shape-parameter pair of the (p,q) calculus.
///
/// Basis evaluation accepts any values (Marsden's identity evaluates bases at
/// `(1/p, 1/q)`); curves require `p, q > 0` and the blossom layer enforces
/// its own restrictions through [`crate::blossom::validate_params`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PqParams<S> {
    pub p: S,
    pub q: S,
}

impl<S: Scalar> PqParams<S> {
    pub fn new(p: S, q: S) -> Self {
        PqParams { p, q }
    }

    /// The classical parameters `p = q = 1`.
    pub fn classical() -> Self {
        PqParams::new(S::one(), S::one())
    }

    /// `(1/p, 1/q)`.
    pub fn reciprocal(&self) -> Result<Self> {
        Ok(PqParams::new(
            S::one().checked_div(&self.p)?,
            S::one().checked_div(&self.q)?,
        ))
    }

    pub fn require_positive(&self) -> Result<()> {
        if self.p > S::zero() && self.q > S::zero() {
            Ok(())
        } else {
            Err(PqError::DegenerateParameters(format!(
                "curves require p > 0 and q > 0 (got p = {}, q = {})",
                self.p, self.q
            )))
        }
    }

    /// The (p,q)-diagonal point list `p^{n-1}, p^{n-2}q, …, q^{n-1}`.
    pub fn diagonal(&self, n: usize) -> Vec<S> {
        (0..n)
            .map(|i| self.p.pown((n - 1 - i) as u32) * self.q.pown(i as u32))
            .collect()
    }
}

/// `[n]_{p,q} = Σ_{i<n} p^{n-1-i} q^i`.
pub fn pq_integer<S: Scalar>(n: usize, params: &PqParams<S>) -> S {
    (0..n).fold(S::zero(), |acc, i| {
        acc + params.p.pown((n - 1 - i) as u32) * params.q.pown(i as u32)
    })
}

/// `[n]_{p,q}! = [1][2]…[n]`.
pub fn pq_factorial<S: Scalar>(n: usize, params: &PqParams<S>) -> S {
    (1..=n).fold(S::one(), |acc, i| acc * pq_integer(i, params))
}

/// One row `[n choose 0] … [n choose n]` of the (p,q)-Pascal triangle.
///
/// Built with `[n k] = p^k [n-1 k] + q^{n-k} [n-1 k-1]`, which never divides.
pub fn pq_binomial_row<S: Scalar>(n: usize, params: &PqParams<S>) -> Vec<S> {
    let mut row = vec![S::one()];
    for m in 1..=n {
        let mut next = Vec::with_capacity(m + 1);
        for k in 0..=m {
            let left = if k < m {
                params.p.pown(k as u32) * row[k].clone()
            } else {
                S::zero()
            };
            let right = if k > 0 {
                params.q.pown((m - k) as u32) * row[k - 1].clone()
            } else {
                S::zero()
            };
            next.push(left + right);
        }
        row = next;
    }
    row
}

/// `[n choose k]_{p,q}`; zero when `k > n`.
pub fn pq_binomial<S: Scalar>(n: usize, k: usize, params: &PqParams<S>) -> S {
    if k > n {
        return S::zero();
    }
    pq_binomial_row(n, params).swap_remove(k)
}

/// Signed-index convenience: returns zero for `k < 0` or `k > n`.
pub fn pq_binomial_signed<S: Scalar>(n: usize, k: i64, params: &PqParams<S>) -> S {
    if k < 0 {
        S::zero()
    } else {
        pq_binomial(n, k as usize, params)
    }
}

/// `(1-t)^m_{p,q} = Π_{s<m} (p^s - q^s t)`.
pub fn pq_one_minus_pow<S: Scalar>(t: &S, m: usize, params: &PqParams<S>) -> S {
    (0..m).fold(S::one(), |acc, s| {
        acc * (params.p.pown(s as u32) - params.q.pown(s as u32) * t.clone())
    })
}

/// Coefficients `e_0 … e_m` with `Σ e_k t^k = (1-t)^m_{p,q}`.
pub fn pq_expansion_coefficients<S: Scalar>(m: usize, params: &PqParams<S>) -> Vec<S> {
    let row = pq_binomial_row(m, params);
    row.into_iter()
        .enumerate()
        .map(|(k, b)| {
            let c = params.p.pown(tri(m - k)) * params.q.pown(tri(k)) * b;
            if k % 2 == 1 {
                -c
            } else {
                c
            }
        })
        .collect()
}

/// `k(k-1)/2`
pub fn tri(k: usize) -> u32 {
    (k * k.saturating_sub(1) / 2) as u32
}

/// `B_k^n(t; p, q) = p^{-n(n-1)/2} [n k] p^{k(k-1)/2} t^k (1-t)^{n-k}_{p,q}`.
pub fn bernstein_basis<S: Scalar>(n: usize, k: usize, t: &S, params: &PqParams<S>) -> Result<S> {
    if k > n {
        return Err(PqError::IndexOutOfRange { index: k, degree: n });
    }
    let norm = params.p.powi(i64::from(tri(k)) - i64::from(tri(n)))?;
    Ok(norm * pq_binomial(n, k, params) * t.pown(k as u32) * pq_one_minus_pow(t, n - k, params))
}

/// All `n + 1` basis values at `t`, sharing the partial products.
pub fn bernstein_basis_all<S: Scalar>(n: usize, t: &S, params: &PqParams<S>) -> Result<Vec<S>> {
    let binom = pq_binomial_row(n, params);
    let top = i64::from(tri(n));
    // one_minus[m] = (1-t)^m_{p,q}
    let mut one_minus = Vec::with_capacity(n + 1);
    one_minus.push(S::one());
    for s in 0..n {
        let f = params.p.pown(s as u32) - params.q.pown(s as u32) * t.clone();
        let prev = one_minus[s].clone();
        one_minus.push(prev * f);
    }
    let mut t_pow = S::one();
    let mut out = Vec::with_capacity(n + 1);
    for (k, b) in binom.into_iter().enumerate() {
        let norm = params.p.powi(i64::from(tri(k)) - top)?;
        out.push(norm * b * t_pow.clone() * one_minus[n - k].clone());
        t_pow = t_pow * t.clone();
    }
    Ok(out)
}

/// Sample nodes `[k] / (p^{k-n} [n])`, `k = 0..=n`, of the (p,q)-Bernstein operator.
pub fn bernstein_operator_nodes<S: Scalar>(n: usize, params: &PqParams<S>) -> Result<Vec<S>> {
    let big_n = pq_integer(n, params);
    (0..=n)
        .map(|k| {
            let denom = params.p.powi(k as i64 - n as i64)? * big_n.clone();
            pq_integer(k, params).checked_div(&denom)
        })
        .collect()
}

/// `Σ_k B_k^n(x) f_k` for caller-supplied samples `f_k`.
pub fn bernstein_operator<S: Scalar>(
    f_samples: &[S],
    n: usize,
    x: &S,
    params: &PqParams<S>,
) -> Result<S> {
    if f_samples.len() != n + 1 {
        return Err(PqError::Arity { expected: n + 1, got: f_samples.len() });
    }
    let basis = bernstein_basis_all(n, x, params)?;
    Ok(basis
        .into_iter()
        .zip(f_samples)
        .fold(S::zero(), |acc, (b, f)| acc + b * f.clone()))
}
