//! Serves the API over the bundled fixture, optionally with a built web UI.
//!
//! ```bash
//! cargo run -p music-circles-server --example serve_fixture [-- path/to/webui/dist]
//! curl 'localhost:8080/api/songs/top?feature=tempo&n=3'
//! ```

use std::sync::Arc;

use music_circles::{fixtures, Catalog, KMeansConfig, LabelConfig, SurveyDefinition};
use music_circles_server::{router, AppState};

#[tokio::main]
async fn main() -> anyhow::Result<()> {
    let catalog = Catalog::build(&fixtures::inputs(), &KMeansConfig::default(), &LabelConfig::default())?;
    let survey = SurveyDefinition::load(fixtures::survey_json())?;
    let app = router(
        Arc::new(AppState::new(catalog, survey)?),
        std::env::args().nth(1).map(Into::into),
    );

    let listener = tokio::net::TcpListener::bind("127.0.0.1:8080").await?;
    println!("serving on http://{}", listener.local_addr()?);
    axum::serve(listener, app).await?;
    Ok(())
}
