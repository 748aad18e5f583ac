use std::fmt;

use crate::scalar::Scalar;

/// A point (or vector) with `d` coordinates.
#[derive(Debug, Clone, PartialEq)]
pub struct Point<S>(pub Vec<S>);

impl<S: Scalar> Point<S> {
    pub fn new(coords: Vec<S>) -> Self {
        Point(coords)
    }

    pub fn scalar(v: S) -> Self {
        Point(vec![v])
    }

    pub fn zero(dim: usize) -> Self {
        Point(vec![S::zero(); dim])
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[S] {
        &self.0
    }

    pub fn scale(&self, s: &S) -> Self {
        Point(self.0.iter().map(|c| c.clone() * s.clone()).collect())
    }

    pub fn add(&self, other: &Self) -> Self {
        debug_assert_eq!(self.dim(), other.dim());
        Point(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| a.clone() + b.clone())
                .collect(),
        )
    }

    pub fn sub(&self, other: &Self) -> Self {
        debug_assert_eq!(self.dim(), other.dim());
        Point(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| a.clone() - b.clone())
                .collect(),
        )
    }

    /// `a·self + b·other`
    pub fn combine(&self, a: &S, other: &Self, b: &S) -> Self {
        debug_assert_eq!(self.dim(), other.dim());
        Point(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(x, y)| a.clone() * x.clone() + b.clone() * y.clone())
                .collect(),
        )
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|c| c.is_zero())
    }

    pub fn to_f64(&self) -> Point<f64> {
        Point(self.0.iter().map(Scalar::to_f64).collect())
    }

    /// Euclidean distance, evaluated in floating point.
    pub fn distance(&self, other: &Self) -> f64 {
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| {
                let d = a.to_f64() - b.to_f64();
                d * d
            })
            .sum::<f64>()
            .sqrt()
    }
}

/// `Σ w_i·P_i`; all points must share one dimension.
pub fn weighted_sum<'a, S: Scalar>(
    dim: usize,
    terms: impl IntoIterator<Item = (S, &'a Point<S>)>,
) -> Point<S> {
    let mut acc: Point<S> = Point::zero(dim);
    for (w, p) in terms {
        for (a, c) in acc.0.iter_mut().zip(&p.0) {
            *a = a.clone() + w.clone() * c.clone();
        }
    }
    acc
}

impl<S: Scalar> fmt::Display for Point<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

/// Distance from `p` to the segment `[a, b]`, floating point.
pub fn point_segment_distance(p: &[f64], a: &[f64], b: &[f64]) -> f64 {
    let ab: Vec<f64> = a.iter().zip(b).map(|(x, y)| y - x).collect();
    let ap: Vec<f64> = a.iter().zip(p).map(|(x, y)| y - x).collect();
    let len2: f64 = ab.iter().map(|v| v * v).sum();
    let s = if len2 == 0.0 {
        0.0
    } else {
        (ap.iter().zip(&ab).map(|(u, v)| u * v).sum::<f64>() / len2).clamp(0.0, 1.0)
    };
    ap.iter()
        .zip(&ab)
        .map(|(u, v)| {
            let d = u - s * v;
            d * d
        })
        .sum::<f64>()
        .sqrt()
}
