#![allow(dead_code)]

use std::path::PathBuf;
use std::sync::{Arc, OnceLock};

use axum::body::Body;
use axum::http::{Request, StatusCode};
use axum::Router;
use http_body_util::BodyExt;
use music_circles::{fixtures, Catalog, KMeansConfig, LabelConfig, SurveyDefinition};
use music_circles_server::{router, AppState};
use serde_json::{json, Value};
use tower::ServiceExt;

pub fn fixture_catalog() -> &'static Catalog {
    static CATALOG: OnceLock<Catalog> = OnceLock::new();
    CATALOG.get_or_init(|| {
        Catalog::build(&fixtures::inputs(), &KMeansConfig::default(), &LabelConfig::default()).expect("fixture builds")
    })
}

pub fn shipped_survey() -> SurveyDefinition {
    SurveyDefinition::load(fixtures::survey_json()).expect("shipped survey loads")
}

pub fn fixture_state() -> Arc<AppState> {
    Arc::new(AppState::new(fixture_catalog().clone(), shipped_survey()).expect("survey matches catalog"))
}

pub fn app() -> Router {
    router(fixture_state(), None)
}

pub async fn send(app: Router, req: Request<Body>) -> (StatusCode, Value) {
    let res = app.oneshot(req).await.expect("router is infallible");
    let status = res.status();
    let bytes = res.into_body().collect().await.expect("body").to_bytes();
    let value =
        serde_json::from_slice(&bytes).unwrap_or_else(|_| Value::String(String::from_utf8_lossy(&bytes).into()));
    (status, value)
}

pub async fn get(app: Router, uri: &str) -> (StatusCode, Value) {
    send(app, Request::get(uri).body(Body::empty()).unwrap()).await
}

pub async fn post_json(app: Router, uri: &str, body: &Value) -> (StatusCode, Value) {
    let req = Request::post(uri)
        .header("content-type", "application/json")
        .body(Body::from(body.to_string()))
        .unwrap();
    send(app, req).await
}

pub fn docs_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../docs")
}

fn load_json(path: PathBuf) -> Value {
    let text = std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
    serde_json::from_str(&text).unwrap_or_else(|e| panic!("{}: {e}", path.display()))
}

/// Validates `value` against one `$defs` entry of the API schema.
pub fn check_api_schema(def: &str, value: &Value) -> Result<(), String> {
    let api = load_json(docs_dir().join("schemas/api.schema.json"));
    assert!(api["$defs"].get(def).is_some(), "no schema definition `{def}`");
    let schema = json!({
        "$schema": api["$schema"],
        "$defs": api["$defs"],
        "$ref": format!("#/$defs/{def}"),
    });
    check_schema(&schema, value)
}

pub fn check_schema_file(name: &str, value: &Value) -> Result<(), String> {
    check_schema(&load_json(docs_dir().join("schemas").join(name)), value)
}

fn check_schema(schema: &Value, value: &Value) -> Result<(), String> {
    let validator = jsonschema::validator_for(schema).map_err(|e| format!("bad schema: {e}"))?;
    let errors: Vec<String> = validator
        .iter_errors(value)
        .map(|e| format!("{} at {}", e, e.instance_path))
        .collect();
    if errors.is_empty() {
        Ok(())
    } else {
        Err(errors.join("; "))
    }
}

/// One fixture request: its golden file name, the schema definition the
/// response must match, and the expected status. A body makes it a POST.
pub struct Case {
    pub name: &'static str,
    pub def: &'static str,
    pub uri: &'static str,
    pub body: Option<Value>,
    pub status: StatusCode,
}

pub fn contract_cases() -> Vec<Case> {
    let survey = shipped_survey();
    let column = |c: usize| -> Value {
        json!({"chosen_song_ids": survey.questions.iter().map(|q| q.options[c].song_id.clone()).collect::<Vec<_>>()})
    };
    let case = |name, def, uri, body, status| Case {
        name,
        def,
        uri,
        body,
        status,
    };
    vec![
        case("features", "features", "/api/features", None, StatusCode::OK),
        case("number_ones", "number_ones", "/api/number-ones", None, StatusCode::OK),
        case(
            "number_ones_tempo_desc",
            "number_ones",
            "/api/number-ones?sort=tempo&order=desc",
            None,
            StatusCode::OK,
        ),
        case(
            "top_energy",
            "top_songs",
            "/api/songs/top?feature=energy",
            None,
            StatusCode::OK,
        ),
        case(
            "top_valence_3",
            "top_songs",
            "/api/songs/top?feature=valence&n=3",
            None,
            StatusCode::OK,
        ),
        case("clusters", "clusters", "/api/clusters", None, StatusCode::OK),
        case("cluster_2", "cluster_detail", "/api/clusters/2", None, StatusCode::OK),
        case("megahits", "megahits", "/api/megahits", None, StatusCode::OK),
        case(
            "songs_search_love",
            "songs",
            "/api/songs?search=love&sort=weeks_on_chart&order=desc",
            None,
            StatusCode::OK,
        ),
        case(
            "songs_cluster_3_page",
            "songs",
            "/api/songs?cluster=3&sort=tempo&limit=5&offset=2",
            None,
            StatusCode::OK,
        ),
        case("survey", "survey", "/api/survey", None, StatusCode::OK),
        case(
            "survey_result_column_0",
            "survey_result",
            "/api/survey",
            Some(column(0)),
            StatusCode::OK,
        ),
        case(
            "error_bad_feature",
            "error",
            "/api/songs/top?feature=loudness",
            None,
            StatusCode::BAD_REQUEST,
        ),
        case(
            "error_unknown_cluster",
            "error",
            "/api/clusters/9",
            None,
            StatusCode::NOT_FOUND,
        ),
        case(
            "error_survey_three_ids",
            "error",
            "/api/survey",
            Some(json!({"chosen_song_ids": ["a", "b", "c"]})),
            StatusCode::BAD_REQUEST,
        ),
    ]
}

pub async fn run_case(case: &Case) -> (StatusCode, Value) {
    match &case.body {
        Some(body) => post_json(app(), case.uri, body).await,
        None => get(app(), case.uri).await,
    }
}

pub fn golden_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/golden")
        .join(format!("{name}.json"))
}

/// Compares against the stored golden file; `UPDATE_GOLDEN=1` rewrites it.
pub fn check_golden(name: &str, value: &Value) -> Result<(), String> {
    let path = golden_path(name);
    let rendered = serde_json::to_string_pretty(value).unwrap() + "\n";
    if std::env::var_os("UPDATE_GOLDEN").is_some() {
        std::fs::create_dir_all(path.parent().unwrap()).unwrap();
        std::fs::write(&path, rendered).unwrap();
        return Ok(());
    }
    let stored = std::fs::read_to_string(&path)
        .map_err(|e| format!("{}: {e} (run with UPDATE_GOLDEN=1 to create)", path.display()))?;
    if stored == rendered {
        Ok(())
    } else {
        Err(format!("{} differs from the live response", path.display()))
    }
}
