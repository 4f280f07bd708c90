//! `music-circles build | cluster | report | serve`.

use std::net::SocketAddr;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use anyhow::{bail, Context};
use clap::{Args, Parser, Subcommand};
use music_circles::{BuildInputs, Catalog, ColumnMapping, KMeansConfig, LabelConfig, SurveyDefinition};

use crate::api::{router, AppState};

#[derive(Debug, Parser)]
#[command(
    name = "music-circles",
    version,
    about = "Build, inspect and serve a music-circles catalog"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Ingest both CSVs, cluster, and write the catalog JSON.
    Build(BuildArgs),
    /// Re-cluster an existing catalog.
    Cluster(ClusterArgs),
    /// Print the pipeline counts stored in a catalog.
    Report(ReportArgs),
    /// Serve the JSON API (and static UI assets).
    Serve(ServeArgs),
}

#[derive(Debug, Clone, Args)]
pub struct SourceArgs {
    /// Billboard Hot 100 weekly CSV.
    #[arg(long, env = "MUSIC_CIRCLES_BILLBOARD")]
    pub billboard: Option<PathBuf>,
    /// Spotify audio-feature CSV.
    #[arg(long, env = "MUSIC_CIRCLES_SPOTIFY")]
    pub spotify: Option<PathBuf>,
    /// TOML file overriding the default column names.
    #[arg(long, env = "MUSIC_CIRCLES_COLUMNS")]
    pub columns: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct ClusterOptions {
    #[arg(long, default_value_t = 5)]
    pub k: usize,
    #[arg(long, default_value_t = 42, env = "MUSIC_CIRCLES_SEED")]
    pub seed: u64,
    #[arg(long, default_value_t = 300)]
    pub max_iterations: usize,
    #[arg(long, default_value_t = 10)]
    pub restarts: usize,
    #[arg(long, default_value_t = 1e-6)]
    pub tolerance: f64,
    /// Label config JSON; the bundled five labels when omitted.
    #[arg(long, env = "MUSIC_CIRCLES_LABELS")]
    pub labels: Option<PathBuf>,
}

impl ClusterOptions {
    fn kmeans(&self) -> KMeansConfig {
        KMeansConfig {
            k: self.k,
            seed: self.seed,
            max_iterations: self.max_iterations,
            tolerance: self.tolerance,
            restarts: self.restarts,
        }
    }

    fn labels(&self) -> anyhow::Result<LabelConfig> {
        match &self.labels {
            Some(p) => LabelConfig::load(p).with_context(|| format!("loading labels {}", p.display())),
            None => Ok(LabelConfig::default()),
        }
    }
}

#[derive(Debug, Clone, Args)]
pub struct BuildArgs {
    #[command(flatten)]
    pub sources: SourceArgs,
    #[command(flatten)]
    pub clustering: ClusterOptions,
    #[arg(long)]
    pub out: PathBuf,
    /// Also write the pipeline report as JSON.
    #[arg(long)]
    pub report: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct ClusterArgs {
    #[arg(long, env = "MUSIC_CIRCLES_CATALOG")]
    pub catalog: PathBuf,
    #[command(flatten)]
    pub clustering: ClusterOptions,
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Debug, Clone, Args)]
pub struct ReportArgs {
    #[arg(long, env = "MUSIC_CIRCLES_CATALOG")]
    pub catalog: PathBuf,
    /// Print JSON instead of a table.
    #[arg(long)]
    pub json: bool,
}

#[derive(Debug, Clone, Args)]
pub struct ServeArgs {
    /// Prebuilt catalog JSON. Mutually exclusive with --billboard/--spotify.
    #[arg(long, env = "MUSIC_CIRCLES_CATALOG")]
    pub catalog: Option<PathBuf>,
    #[command(flatten)]
    pub sources: SourceArgs,
    #[command(flatten)]
    pub clustering: ClusterOptions,
    /// Survey definition JSON; derived from the catalog when omitted.
    #[arg(long, env = "MUSIC_CIRCLES_SURVEY")]
    pub survey: Option<PathBuf>,
    /// Directory served at `/` (the built web UI).
    #[arg(long, env = "MUSIC_CIRCLES_STATIC_DIR")]
    pub static_dir: Option<PathBuf>,
    #[arg(long, default_value = "127.0.0.1", env = "MUSIC_CIRCLES_HOST")]
    pub host: String,
    #[arg(long, default_value_t = 8080, env = "MUSIC_CIRCLES_PORT")]
    pub port: u16,
}

/// Where the served catalog comes from: exactly one of the two.
#[derive(Debug, Clone, PartialEq)]
pub enum CatalogSource {
    Prebuilt(PathBuf),
    Csv(Box<BuildInputs>),
}

fn build_inputs(sources: &SourceArgs) -> anyhow::Result<BuildInputs> {
    let (Some(billboard), Some(spotify)) = (&sources.billboard, &sources.spotify) else {
        bail!("both --billboard and --spotify are required");
    };
    let mapping = match &sources.columns {
        Some(p) => ColumnMapping::load(p).with_context(|| format!("loading column mapping {}", p.display()))?,
        None => ColumnMapping::default(),
    };
    Ok(BuildInputs {
        billboard: billboard.clone(),
        spotify: spotify.clone(),
        mapping,
    })
}

impl ServeArgs {
    pub fn source(&self) -> anyhow::Result<CatalogSource> {
        let csv_given = self.sources.billboard.is_some() || self.sources.spotify.is_some();
        match (&self.catalog, csv_given) {
            (Some(path), false) => Ok(CatalogSource::Prebuilt(path.clone())),
            (None, true) => Ok(CatalogSource::Csv(Box::new(build_inputs(&self.sources)?))),
            (Some(_), true) => bail!("give either --catalog or --billboard/--spotify, not both"),
            (None, false) => {
                bail!("serve needs a catalog: pass --catalog <path> or --billboard <path> --spotify <path>")
            }
        }
    }
}

fn load_catalog(path: &Path) -> anyhow::Result<Catalog> {
    Catalog::load(path).with_context(|| format!("loading catalog {}", path.display()))
}

pub fn build(args: &BuildArgs) -> anyhow::Result<Catalog> {
    let inputs = build_inputs(&args.sources)?;
    let catalog = Catalog::build(&inputs, &args.clustering.kmeans(), &args.clustering.labels()?)?;
    catalog
        .save(&args.out)
        .with_context(|| format!("writing {}", args.out.display()))?;
    if let Some(path) = &args.report {
        std::fs::write(path, serde_json::to_string_pretty(&catalog.report)? + "\n")
            .with_context(|| format!("writing {}", path.display()))?;
    }
    Ok(catalog)
}

pub fn recluster(args: &ClusterArgs) -> anyhow::Result<Catalog> {
    let mut catalog = load_catalog(&args.catalog)?;
    catalog.apply_clustering(&args.clustering.kmeans(), &args.clustering.labels()?)?;
    catalog
        .save(&args.out)
        .with_context(|| format!("writing {}", args.out.display()))?;
    Ok(catalog)
}

pub fn report_text(catalog: &Catalog) -> String {
    let mut out = format!("{}\n", catalog.report);
    out.push_str(&format!("catalog songs       {:>8}\n", catalog.len()));
    out.push_str(&format!("No.1 songs          {:>8}\n", catalog.number_ones.len()));
    out.push_str(&format!("mega-hits           {:>8}\n", catalog.mega_hits.len()));
    for c in &catalog.clusters {
        out.push_str(&format!("cluster {} {:<22} {:>5} songs\n", c.id, c.name, c.size()));
    }
    out
}

/// Loads or builds the catalog and the survey for `serve`.
pub fn prepare(args: &ServeArgs) -> anyhow::Result<AppState> {
    let catalog = match args.source()? {
        CatalogSource::Prebuilt(path) => load_catalog(&path)?,
        CatalogSource::Csv(inputs) => Catalog::build(&inputs, &args.clustering.kmeans(), &args.clustering.labels()?)?,
    };
    let survey = match &args.survey {
        Some(p) => SurveyDefinition::load(p).with_context(|| format!("loading survey {}", p.display()))?,
        None => SurveyDefinition::suggest(&catalog)?,
    };
    Ok(AppState::new(catalog, survey)?)
}

pub async fn serve(args: &ServeArgs) -> anyhow::Result<()> {
    let state = prepare(args)?;
    let addr: SocketAddr = format!("{}:{}", args.host, args.port)
        .parse()
        .with_context(|| format!("bad listen address {}:{}", args.host, args.port))?;
    let app = router(Arc::new(state), args.static_dir.clone());
    let listener = tokio::net::TcpListener::bind(addr)
        .await
        .with_context(|| format!("binding {addr}"))?;
    eprintln!("listening on http://{}", listener.local_addr()?);
    axum::serve(listener, app)
        .with_graceful_shutdown(async {
            let _ = tokio::signal::ctrl_c().await;
        })
        .await?;
    Ok(())
}

pub async fn run(cli: Cli) -> anyhow::Result<()> {
    match cli.command {
        Command::Build(args) => {
            let catalog = build(&args)?;
            print!("{}", report_text(&catalog));
            println!("wrote {}", args.out.display());
        }
        Command::Cluster(args) => {
            let catalog = recluster(&args)?;
            print!("{}", report_text(&catalog));
            println!("wrote {}", args.out.display());
        }
        Command::Report(args) => {
            let catalog = load_catalog(&args.catalog)?;
            if args.json {
                println!("{}", serde_json::to_string_pretty(&catalog.report)?);
            } else {
                print!("{}", report_text(&catalog));
            }
        }
        Command::Serve(args) => serve(&args).await?,
    }
    Ok(())
}
