//! HTTP handlers. All state is the immutable catalog loaded at startup.

use std::path::PathBuf;
use std::sync::Arc;

use axum::body::Bytes;
use axum::extract::{Path, Query, State};
use axum::routing::get;
use axum::{Json, Router};
use music_circles::analytics::{mega_hits, number_one_songs, rank_songs, search_songs, top_n, SortColumn};
use music_circles::cluster::cluster_profile;
use music_circles::taste::evaluate;
use music_circles::{Catalog, FeatureKey, SurveyDefinition, SurveyResponse};
use serde::Deserialize;
use tower_http::services::ServeDir;

use crate::error::ApiError;
use crate::views::*;

pub const DEFAULT_TOP_N: usize = 5;

pub struct AppState {
    pub catalog: Catalog,
    pub survey: SurveyDefinition,
}

impl AppState {
    /// Checks that the catalog is clustered and that the survey matches it.
    pub fn new(catalog: Catalog, survey: SurveyDefinition) -> music_circles::Result<Self> {
        if !catalog.is_clustered() {
            return Err(music_circles::Error::NotClustered);
        }
        survey.validate(&catalog)?;
        Ok(AppState { catalog, survey })
    }
}

type Shared = Arc<AppState>;

pub fn router(state: Arc<AppState>, static_dir: Option<PathBuf>) -> Router {
    let api = Router::new()
        .route("/api/features", get(features))
        .route("/api/number-ones", get(number_ones))
        .route("/api/songs/top", get(top_songs))
        .route("/api/songs", get(songs))
        .route("/api/clusters", get(clusters))
        .route("/api/clusters/{id}", get(cluster_detail))
        .route("/api/megahits", get(megahits))
        .route("/api/survey", get(survey).post(submit_survey))
        .with_state(state);
    match static_dir {
        Some(dir) => api.fallback_service(ServeDir::new(dir)),
        None => api,
    }
}

fn parse_feature(raw: &str) -> Result<FeatureKey, ApiError> {
    raw.parse().map_err(|_| {
        let names: Vec<&str> = FeatureKey::ALL.iter().map(|k| k.as_str()).collect();
        ApiError::bad_request(format!("unknown feature `{raw}`; valid options: {}", names.join(", ")))
    })
}

fn parse_order(raw: Option<&str>, default_desc: bool) -> Result<bool, ApiError> {
    match raw.map(str::to_ascii_lowercase).as_deref() {
        None | Some("") => Ok(default_desc),
        Some("desc") => Ok(true),
        Some("asc") => Ok(false),
        Some(other) => Err(ApiError::bad_request(format!(
            "order must be asc or desc, got `{other}`"
        ))),
    }
}

fn parse_count(name: &str, raw: &str) -> Result<usize, ApiError> {
    raw.trim()
        .parse()
        .map_err(|_| ApiError::bad_request(format!("{name} must be a non-negative integer, got `{raw}`")))
}

async fn features() -> Json<FeatureList> {
    Json(FeatureList::all())
}

#[derive(Debug, Deserialize)]
struct NumberOnesQuery {
    sort: Option<String>,
    order: Option<String>,
}

async fn number_ones(
    State(state): State<Shared>,
    Query(q): Query<NumberOnesQuery>,
) -> Result<Json<NumberOnes>, ApiError> {
    let descending = parse_order(q.order.as_deref(), true)?;
    let sort = q
        .sort
        .as_deref()
        .filter(|s| !s.is_empty())
        .map(parse_feature)
        .transpose()?;
    let mut songs = number_one_songs(&state.catalog);
    if let Some(feature) = sort {
        songs = rank_songs(songs, feature, descending);
    }
    Ok(Json(NumberOnes {
        sort,
        order: if descending { "desc" } else { "asc" },
        count: songs.len(),
        songs: songs.into_iter().map(SongRow::of).collect(),
    }))
}

#[derive(Debug, Deserialize)]
struct TopQuery {
    feature: Option<String>,
    n: Option<String>,
}

async fn top_songs(State(state): State<Shared>, Query(q): Query<TopQuery>) -> Result<Json<TopSongs>, ApiError> {
    let feature = parse_feature(
        q.feature
            .as_deref()
            .ok_or_else(|| ApiError::bad_request("missing `feature`"))?,
    )?;
    let n = match q.n.as_deref() {
        None => DEFAULT_TOP_N,
        Some(raw) => parse_count("n", raw)?,
    };
    if n == 0 {
        return Err(ApiError::bad_request("n must be at least 1"));
    }
    Ok(Json(TopSongs::of(feature, n, &top_n(&state.catalog, feature, n))))
}

async fn clusters(State(state): State<Shared>) -> Json<ClusterList> {
    Json(ClusterList {
        clusters: state.catalog.clusters.iter().map(ClusterSummary::of).collect(),
    })
}

fn detail(state: &AppState, id: usize) -> Result<ClusterDetail, ApiError> {
    let cluster = state
        .catalog
        .cluster(id)
        .ok_or_else(|| ApiError::not_found(format!("no cluster with id {id}")))?;
    let profile = cluster_profile(cluster, &state.catalog)?;
    Ok(ClusterDetail::of(cluster, profile, &state.catalog))
}

async fn cluster_detail(State(state): State<Shared>, Path(raw): Path<String>) -> Result<Json<ClusterDetail>, ApiError> {
    let id: usize = raw
        .parse()
        .map_err(|_| ApiError::not_found(format!("no cluster with id `{raw}`")))?;
    Ok(Json(detail(&state, id)?))
}

async fn megahits(State(state): State<Shared>) -> Json<MegaHits> {
    Json(MegaHits::of(mega_hits(&state.catalog), &state.catalog))
}

async fn survey(State(state): State<Shared>) -> Json<SurveyDefinition> {
    Json(state.survey.clone())
}

async fn submit_survey(State(state): State<Shared>, body: Bytes) -> Result<Json<SurveyResult>, ApiError> {
    let response: SurveyResponse = serde_json::from_slice(&body)
        .map_err(|e| ApiError::bad_request(format!("body must be {{\"chosen_song_ids\": [4 ids]}}: {e}")))?;
    let taste = evaluate(&response, &state.survey, &state.catalog)?;
    let cluster = detail(&state, taste.assigned_cluster)?;
    Ok(Json(SurveyResult { taste, cluster }))
}

#[derive(Debug, Deserialize)]
struct SongsQuery {
    search: Option<String>,
    sort: Option<String>,
    order: Option<String>,
    cluster: Option<String>,
    offset: Option<String>,
    limit: Option<String>,
}

async fn songs(State(state): State<Shared>, Query(q): Query<SongsQuery>) -> Result<Json<SongTable>, ApiError> {
    let column = match q.sort.as_deref().filter(|s| !s.is_empty()) {
        None => SortColumn::Title,
        Some(raw) => raw.parse::<SortColumn>().map_err(|_| {
            ApiError::bad_request(format!(
                "unknown sort column `{raw}`; valid options: {}",
                SortColumn::NAMES.join(", ")
            ))
        })?,
    };
    let descending = parse_order(q.order.as_deref(), false)?;
    let scope = match q.cluster.as_deref().filter(|s| !s.is_empty()) {
        None => None,
        Some(raw) => {
            let id = parse_count("cluster", raw)?;
            if state.catalog.cluster(id).is_none() {
                return Err(ApiError::not_found(format!("no cluster with id {id}")));
            }
            Some(id)
        }
    };
    let offset = q
        .offset
        .as_deref()
        .map(|r| parse_count("offset", r))
        .transpose()?
        .unwrap_or(0);
    let limit = q.limit.as_deref().map(|r| parse_count("limit", r)).transpose()?;

    let hits = search_songs(
        &state.catalog,
        q.search.as_deref().unwrap_or(""),
        column,
        descending,
        scope,
    );
    let total = hits.len();
    let rows = hits
        .into_iter()
        .skip(offset)
        .take(limit.unwrap_or(usize::MAX))
        .map(SongRow::of)
        .collect();
    Ok(Json(SongTable { total, offset, rows }))
}
