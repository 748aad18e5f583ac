//! (p,q)-Bezier curves `S(t) = Σ P_i B_i^n(t; p, q)`.

pub mod algorithms;

use crate::blossom::{blossom_from_polynomial, dual_control_points, Polynomial};
use crate::error::{PqError, Result};
use crate::point::{point_segment_distance, weighted_sum, Point};
use crate::pq::{bernstein_basis, pq_binomial_row, pq_expansion_coefficients, pq_integer, tri, PqParams};
use crate::scalar::Scalar;

pub use algorithms::{
    AlgorithmOptions, DirectEvaluator, EvaluationTriangle, Evaluator, EvaluatorRegistry,
    FirstDeCasteljau, PermutedEvaluator, SecondDeCasteljau,
};

/// Largest supported ambient dimension.
pub const MAX_DIMENSION: usize = 3;

#[derive(Debug, Clone, PartialEq)]
pub struct PqBezierCurve<S> {
    control_points: Vec<Point<S>>,
    params: PqParams<S>,
}

impl<S: Scalar> PqBezierCurve<S> {
    /// Requires at least one control point, a common dimension in `1..=3`,
    /// and `p, q > 0`.
    pub fn new(control_points: Vec<Point<S>>, params: PqParams<S>) -> Result<Self> {
        let Some(first) = control_points.first() else {
            return Err(PqError::InvalidCurve("a curve needs at least one control point".into()));
        };
        let dim = first.dim();
        if !(1..=MAX_DIMENSION).contains(&dim) {
            return Err(PqError::InvalidCurve(format!("dimension {dim} is not in 1..=3")));
        }
        if let Some(bad) = control_points.iter().find(|c| c.dim() != dim) {
            return Err(PqError::Dimension { expected: dim, got: bad.dim() });
        }
        params.require_positive()?;
        Ok(PqBezierCurve { control_points, params })
    }

    pub fn degree(&self) -> usize {
        self.control_points.len() - 1
    }

    pub fn dimension(&self) -> usize {
        self.control_points[0].dim()
    }

    pub fn control_points(&self) -> &[Point<S>] {
        &self.control_points
    }

    pub fn params(&self) -> &PqParams<S> {
        &self.params
    }

    /// Same control points under different shape parameters.
    pub fn with_params(&self, params: PqParams<S>) -> Result<Self> {
        PqBezierCurve::new(self.control_points.clone(), params)
    }

    /// Direct evaluation.
    pub fn evaluate(&self, t: &S) -> Result<Point<S>> {
        DirectEvaluator.evaluate(self, t)
    }

    pub fn map_points(&self, f: impl Fn(&Point<S>) -> Point<S>) -> Result<Self> {
        PqBezierCurve::new(self.control_points.iter().map(f).collect(), self.params.clone())
    }
}

/// Evaluate with a registered algorithm (`direct`, `dc1`, `dc2`, `perm`).
pub fn evaluate<S: Scalar>(
    curve: &PqBezierCurve<S>,
    t: &S,
    algorithm: &str,
    opts: &AlgorithmOptions,
) -> Result<Point<S>> {
    EvaluatorRegistry::with_defaults().create(algorithm, opts)?.evaluate(curve, t)
}

pub fn evaluate_permuted<S: Scalar>(
    curve: &PqBezierCurve<S>,
    t: &S,
    sigma: &[usize],
) -> Result<Point<S>> {
    PermutedEvaluator::new(sigma.to_vec())?.evaluate(curve, t)
}

pub fn intermediate_points<S: Scalar>(
    curve: &PqBezierCurve<S>,
    t: &S,
    algorithm: &str,
    opts: &AlgorithmOptions,
) -> Result<EvaluationTriangle<S>> {
    EvaluatorRegistry::with_defaults().create(algorithm, opts)?.triangle(curve, t)
}

/// Degree `n + 1` curve tracing the same points:
/// `P'_k = (1 - α_k) P_{k-1} + α_k P_k` with `α_k = p^k [n+1-k] / [n+1]`.
pub fn degree_elevate<S: Scalar>(curve: &PqBezierCurve<S>) -> Result<PqBezierCurve<S>> {
    let n = curve.degree();
    let params = curve.params();
    let denom = pq_integer(n + 1, params);
    let pts = curve.control_points();
    let mut out = Vec::with_capacity(n + 2);
    out.push(pts[0].clone());
    for k in 1..=n {
        let alpha = params.p.pown(k as u32) * pq_integer(n + 1 - k, params).checked_div(&denom)?;
        out.push(pts[k - 1].combine(&(S::one() - alpha.clone()), &pts[k], &alpha));
    }
    out.push(pts[n].clone());
    PqBezierCurve::new(out, params.clone())
}

/// Monomial coefficients of `Σ P_i B_i^n(t)`.
pub fn polynomial_from_curve<S: Scalar>(curve: &PqBezierCurve<S>) -> Result<Polynomial<S>> {
    let n = curve.degree();
    let params = curve.params();
    let binom = pq_binomial_row(n, params);
    let top = i64::from(tri(n));
    let mut coeffs = vec![Point::zero(curve.dimension()); n + 1];
    for (i, (point, b)) in curve.control_points().iter().zip(binom).enumerate() {
        let lead = params.p.powi(i64::from(tri(i)) - top)? * b;
        for (j, e) in pq_expansion_coefficients(n - i, params).into_iter().enumerate() {
            let slot = &mut coeffs[i + j];
            *slot = slot.add(&point.scale(&(lead.clone() * e)));
        }
    }
    Polynomial::new(coeffs)
}

/// Control points of a polynomial through its blossom's dual functionals.
pub fn curve_from_polynomial<S: Scalar>(
    poly: &Polynomial<S>,
    params: &PqParams<S>,
) -> Result<PqBezierCurve<S>> {
    let form = blossom_from_polynomial(poly, params)?;
    PqBezierCurve::new(dual_control_points(&form), params.clone())
}

/// Left piece on `[0, r]`: `L_i = Σ_{k≤i} P_k B_k^i(r)`, so that
/// `left(t) = curve(r·t)`.
pub fn subdivide_left<S: Scalar>(curve: &PqBezierCurve<S>, r: &S) -> Result<PqBezierCurve<S>> {
    check_split(r)?;
    let params = curve.params();
    let pts = curve.control_points();
    let left = (0..=curve.degree())
        .map(|i| {
            let weights = (0..=i)
                .map(|k| bernstein_basis(i, k, r, params))
                .collect::<Result<Vec<_>>>()?;
            Ok(weighted_sum(curve.dimension(), weights.into_iter().zip(pts)))
        })
        .collect::<Result<Vec<_>>>()?;
    PqBezierCurve::new(left, params.clone())
}

fn check_split<S: Scalar>(r: &S) -> Result<()> {
    if *r > S::zero() && *r < S::one() {
        Ok(())
    } else {
        Err(PqError::InvalidSplit(format!("r = {r} is not in (0, 1)")))
    }
}

/// Refinement controls for sampled polylines.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SamplingOptions {
    /// Maximum distance of a segment midpoint from its chord.
    pub tolerance: f64,
    /// Bisection depth always reached, so that short wiggles are not skipped.
    pub min_depth: u32,
    pub max_depth: u32,
}

impl Default for SamplingOptions {
    fn default() -> Self {
        SamplingOptions { tolerance: 1e-6, min_depth: 3, max_depth: 16 }
    }
}

/// Result of splitting at `r`: the exact left piece and a polyline for `[r, 1]`.
#[derive(Debug, Clone, PartialEq)]
pub struct SubdivisionResult<S> {
    pub r: S,
    pub left: PqBezierCurve<S>,
    pub right_samples: Vec<Point<S>>,
}

pub fn subdivide<S: Scalar>(
    curve: &PqBezierCurve<S>,
    r: &S,
    opts: &SamplingOptions,
) -> Result<SubdivisionResult<S>> {
    let left = subdivide_left(curve, r)?;
    let right_samples = adaptive_samples(curve, r, &S::one(), opts)?;
    Ok(SubdivisionResult { r: r.clone(), left, right_samples })
}

/// Polyline over `[a, b]` by recursive parameter bisection, refined until
/// the midpoint and both quarter points of every segment lie within
/// `opts.tolerance` of its chord.
pub fn adaptive_samples<S: Scalar>(
    curve: &PqBezierCurve<S>,
    a: &S,
    b: &S,
    opts: &SamplingOptions,
) -> Result<Vec<Point<S>>> {
    let pa = curve.evaluate(a)?;
    let pb = curve.evaluate(b)?;
    let mut out = vec![pa.clone()];
    refine(curve, (a.clone(), pa), (b.clone(), pb), 0, opts, &mut out)?;
    Ok(out)
}

fn refine<S: Scalar>(
    curve: &PqBezierCurve<S>,
    (a, pa): (S, Point<S>),
    (b, pb): (S, Point<S>),
    depth: u32,
    opts: &SamplingOptions,
    out: &mut Vec<Point<S>>,
) -> Result<()> {
    if depth < opts.max_depth {
        let two = S::from_i64(2);
        let m = (a.clone() + b.clone()) / two.clone();
        let pm = curve.evaluate(&m)?;
        let split = depth < opts.min_depth || {
            let (fa, fb) = (pa.to_f64().0, pb.to_f64().0);
            let q1 = curve.evaluate(&((a.clone() + m.clone()) / two.clone()))?;
            let q3 = curve.evaluate(&((m.clone() + b.clone()) / two))?;
            [&q1, &pm, &q3]
                .iter()
                .any(|p| point_segment_distance(&p.to_f64().0, &fa, &fb) > opts.tolerance)
        };
        if split {
            refine(curve, (a, pa), (m.clone(), pm.clone()), depth + 1, opts, out)?;
            return refine(curve, (m, pm), (b, pb), depth + 1, opts, out);
        }
    }
    out.push(pb);
    Ok(())
}

/// Uniform sampling at `t = i / (samples - 1)`.
pub fn flatten<S: Scalar>(curve: &PqBezierCurve<S>, samples: usize) -> Result<Vec<Point<S>>> {
    if samples < 2 {
        return Err(PqError::InvalidCurve(format!("need at least 2 samples, got {samples}")));
    }
    let last = S::from_i64((samples - 1) as i64);
    (0..samples)
        .map(|i| curve.evaluate(&(S::from_i64(i as i64) / last.clone())))
        .collect()
}
