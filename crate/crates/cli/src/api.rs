//! The `/v1` JSON service.
//!
//! Every request and response body carries `"version": "v1"`. A rejected
//! proof is still a successful check: its diagnostics come back in a 200
//! response. Non-2xx statuses mean the request itself was unusable.

use std::sync::Arc;

use axum::body::Bytes;
use axum::extract::{DefaultBodyLimit, Path, State};
use axum::http::{header, Method, StatusCode};
use axum::response::{IntoResponse, Response};
use axum::routing::{get, post};
use axum::Router;
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use tower_http::cors::{Any, CorsLayer};

use natded::checker::{check_proof, CheckConfig};
use natded::corpus;
use natded::proofdoc::{document_from_json, document_to_json, parse_proof, DocumentJson, ProofParseError};
use natded::semantics::{entails_with, SearchOptions, SemanticsError};
use natded::syntax::{format_formula, free_vars, parse_formula, Formula, ParseError};

pub const VERSION: &str = "v1";
pub const BODY_LIMIT: usize = 1 << 20;
/// Largest domain size a countermodel request may ask for.
pub const MAX_DOMAIN: usize = 8;

#[derive(Debug, Clone, Copy)]
pub struct ApiConfig {
    pub max_structures: u128,
}

impl Default for ApiConfig {
    fn default() -> Self {
        ApiConfig {
            max_structures: natded::semantics::DEFAULT_MAX_STRUCTURES,
        }
    }
}

pub fn router(cfg: ApiConfig) -> Router {
    let cors = CorsLayer::new()
        .allow_origin(Any)
        .allow_methods([Method::GET, Method::POST])
        .allow_headers([header::CONTENT_TYPE]);
    Router::new()
        .route("/v1/parse", post(parse))
        .route("/v1/check", post(check))
        .route("/v1/countermodel", post(countermodel))
        .route("/v1/examples", get(examples))
        .route("/v1/examples/{id}", get(example))
        .layer(DefaultBodyLimit::max(BODY_LIMIT))
        .layer(cors)
        .with_state(Arc::new(cfg))
}

#[derive(Debug)]
pub struct ApiError {
    status: StatusCode,
    body: Value,
}

impl ApiError {
    fn new(status: StatusCode, code: &str, message: impl Into<String>) -> Self {
        ApiError {
            status,
            body: json!({ "code": code, "message": message.into() }),
        }
    }

    fn bad_request(message: impl Into<String>) -> Self {
        ApiError::new(StatusCode::BAD_REQUEST, "E_REQUEST", message)
    }

    fn formula(field: &str, e: &ParseError) -> Self {
        ApiError {
            status: StatusCode::BAD_REQUEST,
            body: json!({
                "code": "E_PARSE",
                "message": format!("{field}: {}", e.message),
                "field": field,
                "offset": e.offset,
                "expected": e.expected,
            }),
        }
    }

    fn document(e: &ProofParseError) -> Self {
        let mut body = serde_json::to_value(e).expect("serializable");
        body["message"] = Value::String(e.message.clone());
        ApiError {
            status: StatusCode::BAD_REQUEST,
            body,
        }
    }
}

impl IntoResponse for ApiError {
    fn into_response(self) -> Response {
        let body = json!({ "version": VERSION, "error": self.body });
        (self.status, json_body(body.to_string())).into_response()
    }
}

fn json_body(text: String) -> impl IntoResponse {
    ([(header::CONTENT_TYPE, "application/json")], text)
}

fn versioned(mut value: Value) -> Response {
    if let Value::Object(map) = &mut value {
        map.insert("version".into(), Value::String(VERSION.into()));
    }
    json_body(value.to_string()).into_response()
}

/// Parses a request body. Unknown fields and a missing or wrong version are
/// refused.
fn body<T: DeserializeOwned>(bytes: &Bytes) -> Result<T, ApiError> {
    #[derive(Deserialize)]
    struct Versioned<T> {
        version: String,
        #[serde(flatten)]
        rest: T,
    }
    let v: Versioned<T> = serde_json::from_slice(bytes).map_err(|e| ApiError::bad_request(e.to_string()))?;
    if v.version != VERSION {
        return Err(ApiError::bad_request(format!(
            "unsupported version {:?}, expected {VERSION:?}",
            v.version
        )));
    }
    Ok(v.rest)
}

fn read_formula(field: &str, text: &str) -> Result<Formula, ApiError> {
    parse_formula(text).map_err(|e| ApiError::formula(field, &e))
}

async fn blocking<T: Send + 'static>(f: impl FnOnce() -> T + Send + 'static) -> Result<T, ApiError> {
    tokio::task::spawn_blocking(f)
        .await
        .map_err(|e| ApiError::new(StatusCode::INTERNAL_SERVER_ERROR, "E_INTERNAL", e.to_string()))
}

// Flattened bodies cannot use deny_unknown_fields, so unknown keys are
// collected and refused by hand.
#[derive(Deserialize)]
struct ParseRequest {
    formula: String,
    #[serde(flatten)]
    extra: serde_json::Map<String, Value>,
}

fn no_extra(extra: &serde_json::Map<String, Value>) -> Result<(), ApiError> {
    match extra.keys().next() {
        Some(k) => Err(ApiError::bad_request(format!("unknown field `{k}`"))),
        None => Ok(()),
    }
}

async fn parse(bytes: Bytes) -> Result<Response, ApiError> {
    let req: ParseRequest = body(&bytes)?;
    no_extra(&req.extra)?;
    let f = read_formula("formula", &req.formula)?;
    Ok(versioned(json!({
        "formula": format_formula(&f),
        "sentence": f.is_sentence(),
        "free_variables": free_vars(&f),
        "ast": f,
    })))
}

#[derive(Deserialize)]
struct CheckRequest {
    document: Option<DocumentJson>,
    source: Option<String>,
    config: Option<CheckConfig>,
    #[serde(flatten)]
    extra: serde_json::Map<String, Value>,
}

async fn check(bytes: Bytes) -> Result<Response, ApiError> {
    let req: CheckRequest = body(&bytes)?;
    no_extra(&req.extra)?;
    let doc = match (req.document, req.source) {
        (Some(d), None) => document_from_json(&d).map_err(|e| ApiError::document(&e))?,
        (None, Some(s)) => parse_proof(&s).map_err(|e| ApiError::document(&e))?,
        _ => return Err(ApiError::bad_request("give exactly one of `document` and `source`")),
    };
    let cfg = req.config.unwrap_or_default();
    let text = blocking(move || check_proof(&doc, &cfg).to_json_string()).await?;
    Ok(json_body(text).into_response())
}

#[derive(Deserialize)]
struct CountermodelRequest {
    premises: Vec<String>,
    conclusion: String,
    max_domain: Option<usize>,
    #[serde(flatten)]
    extra: serde_json::Map<String, Value>,
}

async fn countermodel(State(cfg): State<Arc<ApiConfig>>, bytes: Bytes) -> Result<Response, ApiError> {
    let req: CountermodelRequest = body(&bytes)?;
    no_extra(&req.extra)?;
    let premises = req
        .premises
        .iter()
        .enumerate()
        .map(|(i, p)| read_formula(&format!("premises[{i}]"), p))
        .collect::<Result<Vec<_>, _>>()?;
    let conclusion = read_formula("conclusion", &req.conclusion)?;
    let max_n = req.max_domain.unwrap_or(3);
    if !(1..=MAX_DOMAIN).contains(&max_n) {
        return Err(ApiError::bad_request(format!("max_domain must lie in 1..={MAX_DOMAIN}")));
    }
    let opts = SearchOptions {
        max_structures: cfg.max_structures,
    };
    let verdict = blocking(move || entails_with(&premises, &conclusion, max_n, &opts)).await?;
    match verdict {
        Ok(v) => Ok(versioned(serde_json::to_value(v).expect("serializable"))),
        Err(e @ SemanticsError::Resource { .. }) => {
            Err(ApiError::new(StatusCode::UNPROCESSABLE_ENTITY, "E_RESOURCE", e.to_string()))
        }
        Err(e @ (SemanticsError::OpenFormula(_) | SemanticsError::Signature(_))) => {
            Err(ApiError::bad_request(e.to_string()))
        }
        Err(e) => Err(ApiError::new(StatusCode::INTERNAL_SERVER_ERROR, "E_INTERNAL", e.to_string())),
    }
}

#[derive(Serialize)]
struct ExampleSummary {
    #[serde(flatten)]
    entry: &'static corpus::Entry,
    conclusion: Option<String>,
}

async fn examples() -> Response {
    let list: Vec<ExampleSummary> = corpus::ENTRIES
        .iter()
        .map(|entry| ExampleSummary {
            entry,
            conclusion: entry
                .document()
                .ok()
                .and_then(|d| d.conclusion().map(format_formula)),
        })
        .collect();
    versioned(json!({ "examples": list }))
}

async fn example(Path(id): Path<String>) -> Result<Response, ApiError> {
    let entry = corpus::get(&id)
        .ok_or_else(|| ApiError::new(StatusCode::NOT_FOUND, "E_NOT_FOUND", format!("no example `{id}`")))?;
    let doc = entry.document().map_err(|e| ApiError::document(&e))?;
    Ok(versioned(json!({
        "id": entry.id,
        "title": entry.title,
        "kind": entry.kind,
        "expected": entry.expected,
        "source": entry.source,
        "document": document_to_json(&doc),
    })))
}
