//! HTTP JSON API over the (p,q)-Bezier kernel.
//!
//! | route | body | result |
//! |---|---|---|
//! | `POST /api/evaluate` | `{curve, t, algorithm?, sigma?, triangle?}` | `{points, triangles?}` |
//! | `POST /api/elevate` | `{curve}` | curve document |
//! | `POST /api/subdivide` | `{curve, r, tolerance?}` | `{left, right_samples}` |
//! | `POST /api/blossom` | `{curve, u?}` | `{control_points}` or `{value}` |
//! | `POST /api/audit` | `{n_max, params?}` | audit report |
//! | `PUT /api/curves/{name}?overwrite=` | curve document | stored document |
//! | `GET /api/curves/{name}` | | stored document |
//! | `GET /api/health` | | `{"status": "ok"}` |
//!
//! Malformed bodies get 400, inputs the kernel rejects get 422.

pub mod api;
pub mod error;
pub mod store;

use std::net::SocketAddr;
use std::path::PathBuf;

use axum::http::{HeaderValue, Method};
use axum::routing::{get, post};
use axum::Router;
use tower_http::cors::{AllowOrigin, CorsLayer};
use tower_http::services::ServeDir;

pub use error::ApiError;
pub use store::CurveDocumentStore;

#[derive(Debug, Clone)]
pub struct ServiceConfig {
    /// Directory for saved curve documents.
    pub store_dir: PathBuf,
    /// Built UI bundle served at `/`, if any.
    pub static_dir: Option<PathBuf>,
}

#[derive(Debug, Clone)]
pub struct AppState {
    pub store: CurveDocumentStore,
}

/// Origins allowed by CORS: `http://localhost[:port]` and `http://127.0.0.1[:port]`.
pub fn is_local_origin(origin: &HeaderValue) -> bool {
    let Ok(origin) = origin.to_str() else { return false };
    ["http://localhost", "http://127.0.0.1"].iter().any(|host| {
        origin.strip_prefix(host).is_some_and(|rest| {
            rest.is_empty()
                || rest
                    .strip_prefix(':')
                    .is_some_and(|port| !port.is_empty() && port.bytes().all(|b| b.is_ascii_digit()))
        })
    })
}

pub fn router(config: &ServiceConfig) -> std::io::Result<Router> {
    let state = AppState { store: CurveDocumentStore::open(&config.store_dir)? };
    let cors = CorsLayer::new()
        .allow_origin(AllowOrigin::predicate(|origin, _| is_local_origin(origin)))
        .allow_methods([Method::GET, Method::POST, Method::PUT])
        .allow_headers([axum::http::header::CONTENT_TYPE]);
    let api = Router::new()
        .route("/api/health", get(api::health))
        .route("/api/evaluate", post(api::post_evaluate))
        .route("/api/elevate", post(api::post_elevate))
        .route("/api/subdivide", post(api::post_subdivide))
        .route("/api/blossom", post(api::post_blossom))
        .route("/api/audit", post(api::post_audit))
        .route("/api/curves/{name}", get(api::get_curve).put(api::put_curve))
        .with_state(state);
    let app = match &config.static_dir {
        Some(dir) => api.fallback_service(ServeDir::new(dir)),
        None => api,
    };
    Ok(app.layer(cors))
}

/// Binds `addr` and serves until the process ends.
pub async fn serve(addr: SocketAddr, config: &ServiceConfig) -> std::io::Result<()> {
    let app = router(config)?;
    let listener = tokio::net::TcpListener::bind(addr).await?;
    axum::serve(listener, app).await
}
