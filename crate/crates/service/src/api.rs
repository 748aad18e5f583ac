//! Request and response bodies, and the handlers that compute them.
//!
//! Curves travel as curve documents. Everything is computed in `f64`
//! except audits, which always run in exact arithmetic.

use axum::body::Bytes;
use axum::extract::{Path, Query, State};
use axum::http::StatusCode;
use axum::Json;
use pqbezier::blossom::{blossom_evaluate, blossom_from_polynomial, dual_control_points};
use pqbezier::curve::polynomial_from_curve;
use pqbezier::document::Number;
use pqbezier::{
    audit_all, default_audit_params, degree_elevate, subdivide, AlgorithmOptions, AuditReport,
    CurveDocument, EvaluatorRegistry, Point, PqBezierCurve, PqParams, Rational, SamplingOptions,
};
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use crate::error::ApiError;
use crate::store::{Saved, StoreError};
use crate::AppState;

/// Largest degree an audit request may ask for.
pub const MAX_AUDIT_DEGREE: usize = 6;

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EvaluateRequest {
    pub curve: CurveDocument,
    pub t: Vec<Number>,
    #[serde(default = "default_algorithm")]
    pub algorithm: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sigma: Option<Vec<usize>>,
    /// Also return every level of the corner-cutting triangle.
    #[serde(default)]
    pub triangle: bool,
}

fn default_algorithm() -> String {
    "direct".into()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EvaluateResponse {
    pub points: Vec<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub triangles: Option<Vec<Vec<Vec<Vec<f64>>>>>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CurveRequest {
    pub curve: CurveDocument,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SubdivideRequest {
    pub curve: CurveDocument,
    pub r: Number,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tolerance: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SubdivideResponse {
    pub left: CurveDocument,
    pub right_samples: Vec<Vec<f64>>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BlossomRequest {
    pub curve: CurveDocument,
    /// Blossom arguments; without them the dual control points are returned.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub u: Option<Vec<Number>>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BlossomResponse {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub control_points: Option<Vec<Vec<f64>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub value: Option<Vec<f64>>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AuditRequest {
    pub n_max: usize,
    /// `[p, q]` pairs; exact values only.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub params: Option<Vec<[Number; 2]>>,
}

#[derive(Debug, Clone, Default, Deserialize)]
pub struct SaveQuery {
    #[serde(default)]
    pub overwrite: bool,
}

fn parse_body<T: DeserializeOwned>(body: &Bytes) -> Result<T, ApiError> {
    serde_json::from_slice(body).map_err(|e| ApiError::bad_request(format!("malformed body: {e}")))
}

fn float_curve(doc: &CurveDocument) -> Result<PqBezierCurve<f64>, ApiError> {
    doc.validate()?;
    Ok(doc.to_curve()?)
}

fn numbers(values: &[Number]) -> Result<Vec<f64>, ApiError> {
    values
        .iter()
        .map(|v| {
            let x: f64 = v.to_scalar()?;
            if x.is_finite() {
                Ok(x)
            } else {
                Err(ApiError::unprocessable("numbers must be finite"))
            }
        })
        .collect()
}

fn coords(p: Point<f64>) -> Vec<f64> {
    p.0
}

/// Shared by the handler and by tests that compare against the library.
pub fn evaluate(req: &EvaluateRequest) -> Result<EvaluateResponse, ApiError> {
    let curve = float_curve(&req.curve)?;
    let ts = numbers(&req.t)?;
    let opts = AlgorithmOptions { sigma: req.sigma.clone() };
    let evaluator = EvaluatorRegistry::<f64>::with_defaults().create(&req.algorithm, &opts)?;
    let points = ts
        .iter()
        .map(|t| Ok(coords(evaluator.evaluate(&curve, t)?)))
        .collect::<Result<Vec<_>, ApiError>>()?;
    let triangles = if req.triangle {
        Some(
            ts.iter()
                .map(|t| {
                    let tri = evaluator.triangle(&curve, t)?;
                    Ok(tri.levels.into_iter().map(|lvl| lvl.into_iter().map(coords).collect()).collect())
                })
                .collect::<Result<Vec<_>, ApiError>>()?,
        )
    } else {
        None
    };
    Ok(EvaluateResponse { points, triangles })
}

pub fn elevate(req: &CurveRequest) -> Result<CurveDocument, ApiError> {
    let curve = float_curve(&req.curve)?;
    Ok(CurveDocument::from_curve(&degree_elevate(&curve)?))
}

pub fn split(req: &SubdivideRequest) -> Result<SubdivideResponse, ApiError> {
    let curve = float_curve(&req.curve)?;
    let r: f64 = req.r.to_scalar()?;
    let mut opts = SamplingOptions::default();
    if let Some(tol) = req.tolerance {
        if !(tol.is_finite() && tol > 0.0) {
            return Err(ApiError::unprocessable("tolerance must be positive"));
        }
        opts.tolerance = tol;
    }
    let res = subdivide(&curve, &r, &opts)?;
    Ok(SubdivideResponse {
        left: CurveDocument::from_curve(&res.left),
        right_samples: res.right_samples.into_iter().map(coords).collect(),
    })
}

pub fn blossom(req: &BlossomRequest) -> Result<BlossomResponse, ApiError> {
    let curve = float_curve(&req.curve)?;
    let form = blossom_from_polynomial(&polynomial_from_curve(&curve)?, curve.params())?;
    match &req.u {
        Some(u) => Ok(BlossomResponse {
            control_points: None,
            value: Some(coords(blossom_evaluate(&form, &numbers(u)?)?)),
        }),
        None => Ok(BlossomResponse {
            control_points: Some(dual_control_points(&form).into_iter().map(coords).collect()),
            value: None,
        }),
    }
}

pub fn audit(req: &AuditRequest) -> Result<AuditReport, ApiError> {
    if req.n_max > MAX_AUDIT_DEGREE {
        return Err(ApiError::unprocessable(format!(
            "n_max must be at most {MAX_AUDIT_DEGREE}"
        )));
    }
    let params = match &req.params {
        None => default_audit_params(),
        Some(list) => list
            .iter()
            .map(|[p, q]| {
                let exact = |n: &Number| -> Result<Rational, ApiError> {
                    n.literal()?.to_rational().map_err(|_| {
                        ApiError::unprocessable("audit parameters must be exact: use integers or \"num/den\"")
                    })
                };
                Ok(PqParams::new(exact(p)?, exact(q)?))
            })
            .collect::<Result<Vec<_>, ApiError>>()?,
    };
    Ok(audit_all(req.n_max, &params)?)
}

async fn blocking<T: Send + 'static>(
    f: impl FnOnce() -> Result<T, ApiError> + Send + 'static,
) -> Result<T, ApiError> {
    tokio::task::spawn_blocking(f)
        .await
        .map_err(|e| ApiError::internal(format!("worker failed: {e}")))?
}

pub async fn health() -> Json<serde_json::Value> {
    Json(serde_json::json!({ "status": "ok" }))
}

pub async fn post_evaluate(body: Bytes) -> Result<Json<EvaluateResponse>, ApiError> {
    let req: EvaluateRequest = parse_body(&body)?;
    blocking(move || evaluate(&req)).await.map(Json)
}

pub async fn post_elevate(body: Bytes) -> Result<Json<CurveDocument>, ApiError> {
    let req: CurveRequest = parse_body(&body)?;
    blocking(move || elevate(&req)).await.map(Json)
}

pub async fn post_subdivide(body: Bytes) -> Result<Json<SubdivideResponse>, ApiError> {
    let req: SubdivideRequest = parse_body(&body)?;
    blocking(move || split(&req)).await.map(Json)
}

pub async fn post_blossom(body: Bytes) -> Result<Json<BlossomResponse>, ApiError> {
    let req: BlossomRequest = parse_body(&body)?;
    blocking(move || blossom(&req)).await.map(Json)
}

pub async fn post_audit(body: Bytes) -> Result<Json<AuditReport>, ApiError> {
    let req: AuditRequest = parse_body(&body)?;
    blocking(move || audit(&req)).await.map(Json)
}

fn store_error(e: StoreError) -> ApiError {
    match e {
        StoreError::InvalidName(n) => {
            ApiError::bad_request(format!("invalid name {n:?}: use [A-Za-z0-9_-], at most 64 characters"))
        }
        StoreError::NotFound(n) => ApiError::not_found(format!("no curve named {n:?}")),
        StoreError::Exists(n) => {
            ApiError::conflict(format!("curve {n:?} exists; pass ?overwrite=true to replace it"))
        }
        StoreError::Corrupt(m) => ApiError::internal(format!("stored document is invalid: {m}")),
        StoreError::Io(e) => ApiError::internal(format!("storage error: {e}")),
    }
}

pub async fn put_curve(
    State(state): State<AppState>,
    Path(name): Path<String>,
    Query(query): Query<SaveQuery>,
    body: Bytes,
) -> Result<(StatusCode, Json<CurveDocument>), ApiError> {
    let doc: CurveDocument = parse_body(&body)?;
    doc.validate()?;
    let store = state.store.clone();
    blocking(move || {
        let saved = store.save(&name, &doc, query.overwrite).map_err(store_error)?;
        let status = match saved {
            Saved::Created => StatusCode::CREATED,
            Saved::Replaced => StatusCode::OK,
        };
        Ok((status, Json(doc)))
    })
    .await
}

pub async fn get_curve(
    State(state): State<AppState>,
    Path(name): Path<String>,
) -> Result<Json<CurveDocument>, ApiError> {
    let store = state.store.clone();
    blocking(move || store.load(&name).map(Json).map_err(store_error)).await
}
