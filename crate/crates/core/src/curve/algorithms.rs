//! Interchangeable evaluation algorithms for (p,q)-Bezier curves.
//!
//! Each algorithm implements [`Evaluator`] and is registered by name in an
//! [`EvaluatorRegistry`]; front ends pick one at runtime. All of them return
//! the same point `S(t) = Σ P_i B_i^n(t)`.
//!
//! The corner-cutting recurrences (`dc1`, `dc2`, `perm`) produce an apex
//! equal to `p^{n(n-1)/2}·S(t)`, so the apex is divided by that constant.

use std::collections::BTreeMap;
use std::fmt;

use crate::curve::PqBezierCurve;
use crate::error::{PqError, Result};
use crate::point::{weighted_sum, Point};
use crate::pq::{bernstein_basis_all, tri};
use crate::scalar::Scalar;

/// Every level of a corner-cutting evaluation. `levels[0]` holds the control
/// points and `levels[n]` the single, unnormalized apex.
#[derive(Debug, Clone, PartialEq)]
pub struct EvaluationTriangle<S> {
    pub algorithm: String,
    pub levels: Vec<Vec<Point<S>>>,
    /// `p^{n(n-1)/2}`.
    pub normalization: S,
}

impl<S: Scalar> EvaluationTriangle<S> {
    pub fn apex(&self) -> &Point<S> {
        &self.levels.last().expect("triangle has levels")[0]
    }

    /// The curve point `apex / p^{n(n-1)/2}`.
    pub fn value(&self) -> Result<Point<S>> {
        let inv = S::one().checked_div(&self.normalization)?;
        Ok(self.apex().scale(&inv))
    }
}

/// Options consumed by evaluator factories.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct AlgorithmOptions {
    /// Permutation of `1..=n` for the `perm` family.
    pub sigma: Option<Vec<usize>>,
}

pub trait Evaluator<S: Scalar>: Send + Sync {
    fn name(&self) -> String;

    /// Full corner-cutting triangle, when the algorithm has one.
    fn triangle(&self, curve: &PqBezierCurve<S>, t: &S) -> Result<EvaluationTriangle<S>>;

    fn evaluate(&self, curve: &PqBezierCurve<S>, t: &S) -> Result<Point<S>> {
        self.triangle(curve, t)?.value()
    }
}

/// Direct summation of the basis.
#[derive(Debug, Clone, Copy, Default)]
pub struct DirectEvaluator;

impl<S: Scalar> Evaluator<S> for DirectEvaluator {
    fn name(&self) -> String {
        "direct".into()
    }

    fn triangle(&self, _curve: &PqBezierCurve<S>, _t: &S) -> Result<EvaluationTriangle<S>> {
        Err(PqError::Unsupported(
            "direct evaluation has no intermediate triangle".into(),
        ))
    }

    fn evaluate(&self, curve: &PqBezierCurve<S>, t: &S) -> Result<Point<S>> {
        let basis = bernstein_basis_all(curve.degree(), t, curve.params())?;
        Ok(weighted_sum(curve.dimension(), basis.into_iter().zip(curve.control_points())))
    }
}

/// Runs one corner-cutting pass per level; `weights(k, i)` returns the pair
/// multiplying `P_i^{k}` and `P_{i+1}^{k}` to form `P_i^{k+1}`.
fn corner_cut<S: Scalar>(
    name: String,
    curve: &PqBezierCurve<S>,
    mut weights: impl FnMut(usize, usize) -> Result<(S, S)>,
) -> Result<EvaluationTriangle<S>> {
    let n = curve.degree();
    let mut levels = Vec::with_capacity(n + 1);
    levels.push(curve.control_points().to_vec());
    for k in 0..n {
        let prev = &levels[k];
        let next = (0..n - k)
            .map(|i| {
                let (a, b) = weights(k, i)?;
                Ok(prev[i].combine(&a, &prev[i + 1], &b))
            })
            .collect::<Result<Vec<_>>>()?;
        levels.push(next);
    }
    Ok(EvaluationTriangle {
        algorithm: name,
        levels,
        normalization: curve.params().p.pown(tri(n)),
    })
}

/// First de Casteljau algorithm:
/// `P̃_i^k = (p^{n-k} - p^i q^{n-k-i} t) P̃_i^{k-1} + p^i q^{n-k-i} t P̃_{i+1}^{k-1}`.
#[derive(Debug, Clone, Copy, Default)]
pub struct FirstDeCasteljau;

impl<S: Scalar> Evaluator<S> for FirstDeCasteljau {
    fn name(&self) -> String {
        "dc1".into()
    }

    fn triangle(&self, curve: &PqBezierCurve<S>, t: &S) -> Result<EvaluationTriangle<S>> {
        let n = curve.degree();
        let (p, q) = (&curve.params().p, &curve.params().q);
        corner_cut("dc1".into(), curve, |k, i| {
            // level k+1 in the printed indexing
            let level = k + 1;
            let w = p.pown(i as u32) * q.pown((n - level - i) as u32) * t.clone();
            Ok((p.pown((n - level) as u32) - w.clone(), w))
        })
    }
}

/// Second de Casteljau algorithm:
/// `P_i^k = q^i (p^{n-k-i} - q^{n-k-i} t) P_i^{k-1} + p^{n-k} t P_{i+1}^{k-1}`.
#[derive(Debug, Clone, Copy, Default)]
pub struct SecondDeCasteljau;

impl<S: Scalar> Evaluator<S> for SecondDeCasteljau {
    fn name(&self) -> String {
        "dc2".into()
    }

    fn triangle(&self, curve: &PqBezierCurve<S>, t: &S) -> Result<EvaluationTriangle<S>> {
        let n = curve.degree();
        let (p, q) = (&curve.params().p, &curve.params().q);
        corner_cut("dc2".into(), curve, |k, i| {
            let level = k + 1;
            let e = (n - level - i) as u32;
            let a = q.pown(i as u32) * (p.pown(e) - q.pown(e) * t.clone());
            let b = p.pown((n - level) as u32) * t.clone();
            Ok((a, b))
        })
    }
}

/// One of the `n!` permuted recurrences:
/// `P_i^{k+1} = (p^{σ(k+1)-1} - t p^i q^{σ(k+1)-1-i}) P_i^k + p^i q^{σ(k+1)-1-i} t P_{i+1}^k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PermutedEvaluator {
    sigma: Vec<usize>,
}

impl PermutedEvaluator {
    /// `sigma` must be a permutation of `1..=sigma.len()`.
    pub fn new(sigma: Vec<usize>) -> Result<Self> {
        check_permutation(&sigma)?;
        Ok(PermutedEvaluator { sigma })
    }

    pub fn identity(n: usize) -> Self {
        PermutedEvaluator { sigma: (1..=n).collect() }
    }

    pub fn sigma(&self) -> &[usize] {
        &self.sigma
    }
}

fn check_permutation(sigma: &[usize]) -> Result<()> {
    let n = sigma.len();
    let mut seen = vec![false; n];
    for &s in sigma {
        if s == 0 || s > n || std::mem::replace(&mut seen[s - 1], true) {
            return Err(PqError::InvalidPermutation(format!(
                "{sigma:?} is not a permutation of 1..={n}"
            )));
        }
    }
    Ok(())
}

impl<S: Scalar> Evaluator<S> for PermutedEvaluator {
    fn name(&self) -> String {
        let s: Vec<_> = self.sigma.iter().map(ToString::to_string).collect();
        format!("perm[{}]", s.join(","))
    }

    fn triangle(&self, curve: &PqBezierCurve<S>, t: &S) -> Result<EvaluationTriangle<S>> {
        let n = curve.degree();
        if self.sigma.len() != n {
            return Err(PqError::InvalidPermutation(format!(
                "sigma has length {} but the curve has degree {n}",
                self.sigma.len()
            )));
        }
        let (p, q) = (&curve.params().p, &curve.params().q);
        let name = Evaluator::<S>::name(self);
        corner_cut(name, curve, |k, i| {
            let s = self.sigma[k] as i64;
            let q_exp = s - 1 - i as i64;
            if q_exp < 0 && q.is_zero() {
                return Err(PqError::DegenerateParameters("q must be nonzero".into()));
            }
            let w = p.pown(i as u32) * q.powi(q_exp)? * t.clone();
            Ok((p.pown((s - 1) as u32) - w.clone(), w))
        })
    }
}

pub type EvaluatorFactory<S> = fn(&AlgorithmOptions) -> Result<Box<dyn Evaluator<S>>>;

/// Name-keyed table of evaluator factories.
pub struct EvaluatorRegistry<S: Scalar> {
    factories: BTreeMap<String, EvaluatorFactory<S>>,
}

impl<S: Scalar> fmt::Debug for EvaluatorRegistry<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.factories.keys()).finish()
    }
}

impl<S: Scalar> Default for EvaluatorRegistry<S> {
    fn default() -> Self {
        Self::with_defaults()
    }
}

impl<S: Scalar> EvaluatorRegistry<S> {
    pub fn empty() -> Self {
        EvaluatorRegistry { factories: BTreeMap::new() }
    }

    /// `direct`, `dc1`, `dc2` and `perm`.
    pub fn with_defaults() -> Self {
        let mut reg = Self::empty();
        reg.register("direct", |_| Ok(Box::new(DirectEvaluator)));
        reg.register("dc1", |_| Ok(Box::new(FirstDeCasteljau)));
        reg.register("dc2", |_| Ok(Box::new(SecondDeCasteljau)));
        reg.register("perm", |opts| {
            let sigma = opts.sigma.clone().ok_or_else(|| {
                PqError::InvalidPermutation("algorithm perm requires sigma".into())
            })?;
            Ok(Box::new(PermutedEvaluator::new(sigma)?))
        });
        reg
    }

    pub fn register(&mut self, name: &str, factory: EvaluatorFactory<S>) {
        self.factories.insert(name.to_string(), factory);
    }

    pub fn names(&self) -> impl Iterator<Item = &str> {
        self.factories.keys().map(String::as_str)
    }

    pub fn create(&self, name: &str, opts: &AlgorithmOptions) -> Result<Box<dyn Evaluator<S>>> {
        let factory = self
            .factories
            .get(name)
            .ok_or_else(|| PqError::UnknownAlgorithm(name.to_string()))?;
        factory(opts)
    }
}
