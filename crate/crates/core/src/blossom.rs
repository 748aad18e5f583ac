//! The (p,q)-blossom.
//!
//! The blossom of a degree-`n` polynomial `S(t) = Σ a_k t^k` is the unique
//! symmetric multiaffine `s(u_1, …, u_n)` with
//! `s(p^{n-1}t, p^{n-2}qt, …, q^{n-1}t) = S(t)`. It is represented as
//! `Σ c_k φ_{n,k}(u)` with `c_k = a_k / φ_{n,k}(p^{n-1}, …, q^{n-1})`, the
//! denominators computed by the elementary-symmetric recurrence on the
//! explicit diagonal.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{PqError, Result};
use crate::point::{weighted_sum, Point};
use crate::pq::PqParams;
use crate::scalar::Scalar;

/// A violated blossom restriction.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Restriction {
    /// `q = 0` with `n > 1`.
    QZero,
    /// `p = q` with `n > 1`.
    PEqQ,
    /// `q = -p` with even `n > 1`.
    PEqMinusQEvenN,
    /// `p = 0` with `n > 1`; the diagonal collapses and `φ_{n,k}` vanishes for `k ≥ 2`.
    PZero,
}

impl Restriction {
    pub fn tag(self) -> &'static str {
        match self {
            Restriction::QZero => "q_zero",
            Restriction::PEqQ => "p_eq_q",
            Restriction::PEqMinusQEvenN => "p_eq_minus_q_even_n",
            Restriction::PZero => "p_zero",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ParameterValidity {
    pub ok: bool,
    pub violated_conditions: Vec<Restriction>,
}

impl ParameterValidity {
    fn from_violations(violated_conditions: Vec<Restriction>) -> Self {
        ParameterValidity { ok: violated_conditions.is_empty(), violated_conditions }
    }

    pub fn into_result(self) -> Result<()> {
        if self.ok {
            Ok(())
        } else {
            Err(PqError::BlossomUndefined(self))
        }
    }
}

impl fmt::Display for ParameterValidity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.ok {
            return f.write_str("none");
        }
        let tags: Vec<_> = self.violated_conditions.iter().map(|r| r.tag()).collect();
        f.write_str(&tags.join(", "))
    }
}

/// Checks the standard restrictions under which the degree-`n` blossom exists.
pub fn validate_params<S: Scalar>(n: usize, params: &PqParams<S>) -> ParameterValidity {
    let mut violated = Vec::new();
    if n > 1 {
        if params.q.is_zero() {
            violated.push(Restriction::QZero);
        }
        if params.p == params.q {
            violated.push(Restriction::PEqQ);
        }
        if n.is_multiple_of(2) && params.q == -params.p.clone() {
            violated.push(Restriction::PEqMinusQEvenN);
        }
        if params.p.is_zero() {
            violated.push(Restriction::PZero);
        }
    }
    ParameterValidity::from_violations(violated)
}

/// `φ_{m,0}(values) … φ_{m,m}(values)`, by the prefix recurrence.
pub fn elementary_symmetric_all<S: Scalar>(values: &[S]) -> Vec<S> {
    let m = values.len();
    let mut e = vec![S::zero(); m + 1];
    e[0] = S::one();
    for (seen, v) in values.iter().enumerate() {
        for j in (1..=seen + 1).rev() {
            e[j] = e[j].clone() + e[j - 1].clone() * v.clone();
        }
    }
    e
}

/// `φ_{m,k}(values)`; zero when `k > m`.
pub fn elementary_symmetric<S: Scalar>(values: &[S], k: usize) -> S {
    if k > values.len() {
        return S::zero();
    }
    let mut e = vec![S::zero(); k + 1];
    e[0] = S::one();
    for (seen, v) in values.iter().enumerate() {
        for j in (1..=(seen + 1).min(k)).rev() {
            e[j] = e[j].clone() + e[j - 1].clone() * v.clone();
        }
    }
    e.swap_remove(k)
}

/// Monomial-form polynomial `a_0 + a_1 t + … + a_n t^n` with point-valued
/// coefficients. `n` is the blossoming degree and may exceed the true degree.
#[derive(Debug, Clone, PartialEq)]
pub struct Polynomial<S> {
    coefficients: Vec<Point<S>>,
}

impl<S: Scalar> Polynomial<S> {
    pub fn new(coefficients: Vec<Point<S>>) -> Result<Self> {
        let Some(first) = coefficients.first() else {
            return Err(PqError::InvalidCurve("polynomial needs at least one coefficient".into()));
        };
        let dim = first.dim();
        if let Some(bad) = coefficients.iter().find(|c| c.dim() != dim) {
            return Err(PqError::Dimension { expected: dim, got: bad.dim() });
        }
        Ok(Polynomial { coefficients })
    }

    pub fn from_scalars(coefficients: Vec<S>) -> Self {
        Polynomial { coefficients: coefficients.into_iter().map(Point::scalar).collect() }
    }

    /// Raise the blossoming degree by padding zero coefficients.
    pub fn with_degree_bound(mut self, n: usize) -> Self {
        let dim = self.dimension();
        while self.coefficients.len() < n + 1 {
            self.coefficients.push(Point::zero(dim));
        }
        self
    }

    pub fn degree_bound(&self) -> usize {
        self.coefficients.len() - 1
    }

    pub fn dimension(&self) -> usize {
        self.coefficients[0].dim()
    }

    pub fn coefficients(&self) -> &[Point<S>] {
        &self.coefficients
    }

    pub fn evaluate(&self, t: &S) -> Point<S> {
        let dim = self.dimension();
        self.coefficients
            .iter()
            .rev()
            .fold(Point::zero(dim), |acc, c| acc.scale(t).add(c))
    }
}

/// Blossom of a polynomial as `Σ c_k φ_{n,k}(u)`.
#[derive(Debug, Clone, PartialEq)]
pub struct BlossomForm<S> {
    degree: usize,
    params: PqParams<S>,
    coefficients: Vec<Point<S>>,
}

impl<S: Scalar> BlossomForm<S> {
    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn params(&self) -> &PqParams<S> {
        &self.params
    }

    pub fn coefficients(&self) -> &[Point<S>] {
        &self.coefficients
    }

    pub fn dimension(&self) -> usize {
        self.coefficients[0].dim()
    }

    pub fn evaluate(&self, u: &[S]) -> Result<Point<S>> {
        blossom_evaluate(self, u)
    }
}

pub fn blossom_from_polynomial<S: Scalar>(
    poly: &Polynomial<S>,
    params: &PqParams<S>,
) -> Result<BlossomForm<S>> {
    let n = poly.degree_bound();
    validate_params(n, params).into_result()?;
    let phi = elementary_symmetric_all(&params.diagonal(n));
    let coefficients = poly
        .coefficients()
        .iter()
        .zip(&phi)
        .map(|(a, d)| Ok(a.scale(&S::one().checked_div(d)?)))
        .collect::<Result<Vec<_>>>()?;
    Ok(BlossomForm { degree: n, params: params.clone(), coefficients })
}

pub fn blossom_evaluate<S: Scalar>(form: &BlossomForm<S>, u: &[S]) -> Result<Point<S>> {
    if u.len() != form.degree {
        return Err(PqError::Arity { expected: form.degree, got: u.len() });
    }
    let phi = elementary_symmetric_all(u);
    Ok(weighted_sum(form.dimension(), phi.into_iter().zip(&form.coefficients)))
}

/// Argument tuple of the `k`-th dual functional: `n - k` zeros followed by
/// the first `k` entries of the (p,q)-diagonal.
pub fn dual_functional_arguments<S: Scalar>(n: usize, k: usize, params: &PqParams<S>) -> Vec<S> {
    let diag = params.diagonal(n);
    let mut args = vec![S::zero(); n - k];
    args.extend(diag.into_iter().take(k));
    args
}

/// Control points `P_k = s(0, …, 0, p^{n-1}, …, p^{n-k}q^{k-1})`, `k = 0..=n`.
pub fn dual_control_points<S: Scalar>(form: &BlossomForm<S>) -> Vec<Point<S>> {
    let n = form.degree;
    (0..=n)
        .map(|k| {
            blossom_evaluate(form, &dual_functional_arguments(n, k, &form.params))
                .expect("dual functional arity is n")
        })
        .collect()
}

/// The triangular recurrence
/// `Q_i^{k+1} = (1 - u_{k+1} p^i q^{-i}) Q_i^k + u_{k+1} p^i q^{-i} Q_{i+1}^k`
/// started from the control points.
///
/// The apex satisfies `Q_0^n(u) = s(p^{n-1} u_1, …, p^{n-1} u_n)`, where `s`
/// is the blossom of the curve with these control points; at `p = 1` it is
/// the blossom value itself.
pub fn recursive_blossom_evaluate<S: Scalar>(
    controls: &[Point<S>],
    u: &[S],
    params: &PqParams<S>,
) -> Result<Point<S>> {
    let Some(n) = controls.len().checked_sub(1) else {
        return Err(PqError::InvalidCurve("no control points".into()));
    };
    if u.len() != n {
        return Err(PqError::Arity { expected: n, got: u.len() });
    }
    if params.q.is_zero() {
        return Err(PqError::DegenerateParameters("q must be nonzero".into()));
    }
    validate_params(n, params).into_result()?;
    let ratio = params.p.clone() / params.q.clone();
    let mut row = controls.to_vec();
    for (k, uk) in u.iter().enumerate() {
        let mut weight = uk.clone();
        row = (0..n - k)
            .map(|i| {
                let w = weight.clone();
                weight = weight.clone() * ratio.clone();
                row[i].combine(&(S::one() - w.clone()), &row[i + 1], &w)
            })
            .collect();
    }
    Ok(row.swap_remove(0))
}
