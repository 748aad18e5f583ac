//! (p,q)-Bernstein bases, (p,q)-Bezier curves and the (p,q)-blossom.
//!
//! Every algorithm is generic over [`Scalar`]: use [`Rational`] for exact
//! results and `f64` for speed. Curve evaluators are registered by name in
//! an [`EvaluatorRegistry`]; identity checks in a [`CheckRegistry`].

pub mod blossom;
pub mod curve;
pub mod document;
pub mod error;
pub mod identities;
pub mod point;
pub mod pq;
pub mod scalar;

pub use blossom::{
    blossom_evaluate, blossom_from_polynomial, dual_control_points, recursive_blossom_evaluate,
    validate_params, BlossomForm, ParameterValidity, Polynomial, Restriction,
};
pub use curve::algorithms::{AlgorithmOptions, EvaluationTriangle, Evaluator, EvaluatorRegistry};
pub use curve::{
    degree_elevate, evaluate, intermediate_points, subdivide, subdivide_left, PqBezierCurve,
    SamplingOptions, SubdivisionResult,
};
pub use document::{CurveDocument, Number};
pub use error::{PqError, Result};
pub use identities::audit::default_audit_params;
pub use identities::{audit_all, AuditEntry, AuditReport, CheckRegistry, Verdict};
pub use point::Point;
pub use pq::{bernstein_basis, bernstein_basis_all, PqParams};
pub use scalar::{Literal, Mode, Rational, Scalar};
