//! Identities for the (p,q)-Bernstein basis, and the auditor that checks
//! the printed forms of every identity in exact arithmetic.

pub mod audit;

use crate::blossom::{blossom_from_polynomial, dual_control_points, validate_params, Polynomial};
use crate::error::{PqError, Result};
use crate::pq::{bernstein_basis, bernstein_basis_all, pq_binomial, tri, PqParams};
use crate::scalar::Scalar;

pub use audit::{audit_all, AuditEntry, AuditReport, CheckRegistry, Correction, IdentityCheck, Verdict};

/// Which normalization of Marsden's expansion to use.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MarsdenForm {
    /// Coefficient `(-1)^j (pq)^{j(j-1)/2} B_{n-j}^n(x; 1/p, 1/q) / [n j]_{1/p,1/q}`.
    AsPrinted,
    /// The printed coefficient times `p^{(n-1)(n-2j)/2}`, which makes the
    /// expansion exact for every `p`.
    Corrected,
}

/// `Π_{i=1}^n (p^{i-1} x - q^{i-1} t)`.
pub fn marsden_product<S: Scalar>(n: usize, params: &PqParams<S>, x: &S, t: &S) -> S {
    (0..n).fold(S::one(), |acc, i| {
        acc * (params.p.pown(i as u32) * x.clone() - params.q.pown(i as u32) * t.clone())
    })
}

/// The same product as a polynomial in `t`, for fixed `x`.
pub fn marsden_polynomial<S: Scalar>(n: usize, params: &PqParams<S>, x: &S) -> Polynomial<S> {
    let mut coeffs = vec![S::one()];
    for i in 0..n {
        let c0 = params.p.pown(i as u32) * x.clone();
        let c1 = -params.q.pown(i as u32);
        let mut next = vec![S::zero(); coeffs.len() + 1];
        for (d, c) in coeffs.iter().enumerate() {
            next[d] = next[d].clone() + c.clone() * c0.clone();
            next[d + 1] = next[d + 1].clone() + c.clone() * c1.clone();
        }
        coeffs = next;
    }
    Polynomial::from_scalars(coeffs)
}

/// Coefficient of `B_j^n(t; p, q)` in Marsden's expansion.
pub fn marsden_coefficient<S: Scalar>(
    n: usize,
    j: usize,
    params: &PqParams<S>,
    x: &S,
    form: MarsdenForm,
) -> Result<S> {
    if j > n {
        return Err(PqError::IndexOutOfRange { index: j, degree: n });
    }
    let inv = params.reciprocal()?;
    let sign = if j % 2 == 1 { -S::one() } else { S::one() };
    let pq_pow = (params.p.clone() * params.q.clone()).pown(tri(j));
    let dual_basis = bernstein_basis(n, n - j, x, &inv)?;
    let coeff = (sign * pq_pow * dual_basis).checked_div(&pq_binomial(n, j, &inv))?;
    Ok(match form {
        MarsdenForm::AsPrinted => coeff,
        MarsdenForm::Corrected => {
            let e = (n as i64 - 1) * (n as i64 - 2 * j as i64) / 2;
            coeff * params.p.powi(e)?
        }
    })
}

/// `Σ_j c_j(x) B_j^n(t)` for the chosen normalization.
pub fn marsden_expansion<S: Scalar>(
    n: usize,
    params: &PqParams<S>,
    x: &S,
    t: &S,
    form: MarsdenForm,
) -> Result<S> {
    let basis = bernstein_basis_all(n, t, params)?;
    basis.into_iter().enumerate().try_fold(S::zero(), |acc, (j, b)| {
        Ok(acc + marsden_coefficient(n, j, params, x, form)? * b)
    })
}

/// Product side minus expansion side of Marsden's identity (corrected
/// normalization); identically zero.
pub fn marsden_residual<S: Scalar>(n: usize, params: &PqParams<S>, x: &S, t: &S) -> Result<S> {
    check_nonzero(params)?;
    validate_params(n, params).into_result()?;
    Ok(marsden_product(n, params, x, t) - marsden_expansion(n, params, x, t, MarsdenForm::Corrected)?)
}

/// Bernstein coefficients of the Marsden product in `t`, obtained from the
/// blossom's dual functionals rather than from the closed form.
pub fn marsden_coefficients_by_blossom<S: Scalar>(
    n: usize,
    params: &PqParams<S>,
    x: &S,
) -> Result<Vec<S>> {
    let form = blossom_from_polynomial(&marsden_polynomial(n, params, x), params)?;
    Ok(dual_control_points(&form).into_iter().map(|p| p.0[0].clone()).collect())
}

fn check_nonzero<S: Scalar>(params: &PqParams<S>) -> Result<()> {
    if params.p.is_zero() || params.q.is_zero() {
        Err(PqError::DegenerateParameters("p and q must be nonzero".into()))
    } else {
        Ok(())
    }
}

/// Weights `w_k` with `Σ_k w_k B_k^n(t) = t^i`:
/// `w_k = p^{i(n-k)} [k i] / [n i]` for `k ≥ i`, zero below.
pub fn monomial_coefficients<S: Scalar>(n: usize, i: usize, params: &PqParams<S>) -> Result<Vec<S>> {
    if i > n {
        return Err(PqError::IndexOutOfRange { index: i, degree: n });
    }
    let denom = pq_binomial(n, i, params);
    (0..=n)
        .map(|k| {
            if k < i {
                Ok(S::zero())
            } else {
                let num = params.p.pown((i * (n - k)) as u32) * pq_binomial(k, i, params);
                num.checked_div(&denom)
            }
        })
        .collect()
}

/// Lower-triangular `M[i][k] = B_k^i(r)` with
/// `B_k^n(r t) = Σ_i M[i][k] B_i^n(t)`.
pub fn reparametrization_coefficients<S: Scalar>(
    n: usize,
    r: &S,
    params: &PqParams<S>,
) -> Result<Vec<Vec<S>>> {
    (0..=n)
        .map(|i| {
            let mut row = bernstein_basis_all(i, r, params)?;
            row.resize(n + 1, S::zero());
            Ok(row)
        })
        .collect()
}
