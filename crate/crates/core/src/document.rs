//! The JSON curve document shared by the command line and the service.
//!
//! ```json
//! {"version": 1, "degree": 2, "dimension": 2, "p": 1, "q": "1/2",
//!  "points": [[0, 0], [1, 2], [2, 0]]}
//! ```
//!
//! Numbers may be JSON numbers or `"num/den"` strings. Unknown fields are
//! rejected and the version must be 1.

use serde::{Deserialize, Serialize};

use crate::curve::PqBezierCurve;
use crate::error::{PqError, Result};
use crate::point::Point;
use crate::pq::PqParams;
use crate::scalar::{format_rational, FromLiteral, Literal, Mode, Scalar};

pub const DOCUMENT_VERSION: u32 = 1;

/// A number as it appears in a document.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Number {
    Int(i64),
    Float(f64),
    Text(String),
}

impl Number {
    pub fn literal(&self) -> Result<Literal> {
        match self {
            Number::Int(i) => Ok(Literal::Rational(num_bigint::BigInt::from(*i).into())),
            Number::Float(v) => Ok(Literal::Decimal(*v)),
            Number::Text(s) => s.parse(),
        }
    }

    pub fn to_scalar<S: FromLiteral>(&self) -> Result<S> {
        self.literal()?.to_scalar()
    }

    /// Exact values become strings (or integers), floats stay numbers.
    pub fn from_scalar<S: Scalar>(v: &S) -> Self {
        match v.to_rational() {
            Some(r) if r.is_integer() => match i64::try_from(r.numer()) {
                Ok(i) => Number::Int(i),
                Err(_) => Number::Text(format_rational(&r)),
            },
            Some(r) => Number::Text(format_rational(&r)),
            None => Number::Float(v.to_f64()),
        }
    }
}

impl From<f64> for Number {
    fn from(v: f64) -> Self {
        Number::Float(v)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CurveDocument {
    pub version: u32,
    pub degree: usize,
    pub dimension: usize,
    pub p: Number,
    pub q: Number,
    pub points: Vec<Vec<Number>>,
}

impl CurveDocument {
    pub fn from_json(text: &str) -> Result<Self> {
        let doc: CurveDocument =
            serde_json::from_str(text).map_err(|e| PqError::Document(e.to_string()))?;
        doc.validate()?;
        Ok(doc)
    }

    pub fn from_value(value: serde_json::Value) -> Result<Self> {
        let doc: CurveDocument =
            serde_json::from_value(value).map_err(|e| PqError::Document(e.to_string()))?;
        doc.validate()?;
        Ok(doc)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("document serializes")
    }

    /// Structural checks; numeric checks happen in [`Self::to_curve`].
    pub fn validate(&self) -> Result<()> {
        if self.version != DOCUMENT_VERSION {
            return Err(PqError::Document(format!(
                "unsupported version {} (expected {DOCUMENT_VERSION})",
                self.version
            )));
        }
        if !(1..=3).contains(&self.dimension) {
            return Err(PqError::Document(format!(
                "dimension must be 1, 2 or 3 (got {})",
                self.dimension
            )));
        }
        if self.points.len() != self.degree + 1 {
            return Err(PqError::Document(format!(
                "degree {} needs {} points, got {}",
                self.degree,
                self.degree + 1,
                self.points.len()
            )));
        }
        if let Some((i, pt)) = self.points.iter().enumerate().find(|(_, pt)| pt.len() != self.dimension) {
            return Err(PqError::Document(format!(
                "point {i} has {} coordinates, expected {}",
                pt.len(),
                self.dimension
            )));
        }
        Ok(())
    }

    /// True when every number is an integer or a rational string.
    pub fn is_exact(&self) -> bool {
        std::iter::once(&self.p)
            .chain(std::iter::once(&self.q))
            .chain(self.points.iter().flatten())
            .all(|n| n.literal().is_ok_and(|l| l.is_exact()))
    }

    pub fn params<S: FromLiteral>(&self) -> Result<PqParams<S>> {
        Ok(PqParams::new(self.p.to_scalar()?, self.q.to_scalar()?))
    }

    pub fn to_curve<S: FromLiteral>(&self) -> Result<PqBezierCurve<S>> {
        self.validate()?;
        let points = self
            .points
            .iter()
            .map(|pt| Ok(Point::new(pt.iter().map(Number::to_scalar).collect::<Result<Vec<S>>>()?)))
            .collect::<Result<Vec<_>>>()?;
        if S::MODE == Mode::Float
            && points.iter().flat_map(|p| p.coords()).any(|v| !v.to_f64().is_finite())
        {
            return Err(PqError::Document("coordinates must be finite".into()));
        }
        PqBezierCurve::new(points, self.params()?)
    }

    pub fn from_curve<S: Scalar>(curve: &PqBezierCurve<S>) -> Self {
        CurveDocument {
            version: DOCUMENT_VERSION,
            degree: curve.degree(),
            dimension: curve.dimension(),
            p: Number::from_scalar(&curve.params().p),
            q: Number::from_scalar(&curve.params().q),
            points: curve
                .control_points()
                .iter()
                .map(|pt| pt.coords().iter().map(Number::from_scalar).collect())
                .collect(),
        }
    }
}
