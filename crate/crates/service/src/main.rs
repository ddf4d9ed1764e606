use std::net::SocketAddr;
use std::path::PathBuf;
use std::sync::Arc;

use capcheck_core::caption::DEFAULT_SIM_THRESHOLD;
use capcheck_core::Checker;
use capcheck_service::{router, AppState};
use clap::Parser;
use tracing_subscriber::EnvFilter;

#[derive(Parser)]
#[command(name = "capcheck-serve", version, about = "HTTP service for chart-caption checking")]
struct Args {
    #[arg(long, env = "CAPCHECK_HOST", default_value = "127.0.0.1")]
    host: std::net::IpAddr,
    #[arg(long, env = "CAPCHECK_PORT", default_value_t = 8080)]
    port: u16,
    /// Keyword lexicon (TSV: kind, lemma, synonyms); the bundled one by default.
    #[arg(long, env = "CAPCHECK_LEXICON")]
    lexicon: Option<PathBuf>,
    /// Word vectors for graded keyword similarity.
    #[arg(long, env = "CAPCHECK_VECTORS")]
    vectors: Option<PathBuf>,
    #[arg(long, env = "CAPCHECK_SIM_THRESHOLD", default_value_t = DEFAULT_SIM_THRESHOLD)]
    sim_threshold: f64,
    /// Origin allowed to call the API from a browser, or `*`.
    #[arg(long, env = "CAPCHECK_CORS_ORIGIN")]
    cors_origin: Option<String>,
}

#[tokio::main]
async fn main() -> Result<(), Box<dyn std::error::Error>> {
    tracing_subscriber::fmt()
        .with_env_filter(EnvFilter::try_from_default_env().unwrap_or_else(|_| EnvFilter::new("info")))
        .init();
    let args = Args::parse();
    let checker = Checker::from_files(args.lexicon.as_deref(), args.vectors.as_deref(), args.sim_threshold)?;
    let app = router(Arc::new(AppState::new(checker)), args.cors_origin.as_deref())?;
    let addr = SocketAddr::new(args.host, args.port);
    let listener = tokio::net::TcpListener::bind(addr).await?;
    tracing::info!("listening on http://{addr}");
    axum::serve(listener, app)
        .with_graceful_shutdown(async {
            let _ = tokio::signal::ctrl_c().await;
        })
        .await?;
    Ok(())
}
