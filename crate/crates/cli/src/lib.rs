//! Command-line driver: argument parsing, the parallel sweep, report
//! rendering and the result cache.

pub mod args;
pub mod cache;
pub mod commands;
pub mod error;
pub mod report;

use args::{Command, Common};
use cache::Cache;
use error::CliError;
use report::render;

pub use args::Cli;

/// Runs `command` and returns the rendered report, consulting the cache
/// when one is configured.
pub fn run(command: &Command) -> Result<String, CliError> {
    let common = command.common();
    let cache = common.cache_dir.as_ref().map(Cache::new);
    let key = command.cache_key();
    if let Some(cache) = &cache {
        if let Some(body) = cache.lookup(command.name(), &key)? {
            return Ok(body);
        }
    }
    let body = in_pool(common, || compute(command))?;
    if let Some(cache) = &cache {
        cache.store(command.name(), &key, &body)?;
    }
    Ok(body)
}

fn in_pool<T: Send>(
    common: &Common,
    work: impl FnOnce() -> Result<T, CliError> + Send,
) -> Result<T, CliError> {
    if common.jobs == 0 {
        return Err(CliError::InvalidRange("--jobs must be at least 1".to_string()));
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(common.jobs)
        .build()
        .map_err(|e| CliError::Invariant(format!("thread pool: {e}")))?;
    pool.install(work)
}

fn compute(command: &Command) -> Result<String, CliError> {
    let format = command.common().format;
    match command {
        Command::Scan(a) => render(&commands::scan(a)?, format),
        Command::Classify(a) => render(&commands::classify_range(a)?, format),
        Command::Minimal(a) => render(&commands::minimal(a)?, format),
        Command::Jacobi(a) => render(&commands::jacobi(a)?, format),
        Command::LocalFactor(a) => render(&commands::local_factors(a)?, format),
    }
}
