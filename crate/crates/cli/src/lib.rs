//! File formats, configuration and subcommands of the `atomsurf` tool.

pub mod commands;
pub mod config;
pub mod error;
pub mod files;
pub mod grid;
pub mod output;
pub mod selftest;

pub use error::{CliError, Result};

/// Environment variable fixing the worker count.
pub const THREADS_ENV: &str = "ATOMSURF_THREADS";

/// Worker pool sized by `ATOMSURF_THREADS`, or rayon's default when unset.
pub fn thread_pool() -> Result<rayon::ThreadPool> {
    let n = match std::env::var(THREADS_ENV) {
        Ok(v) => v
            .trim()
            .parse::<usize>()
            .ok()
            .filter(|n| *n > 0)
            .ok_or_else(|| CliError::validation(format!("{THREADS_ENV} must be a positive integer, got '{v}'")))?,
        Err(_) => 0,
    };
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build()
        .map_err(|e| CliError::validation(format!("cannot start worker pool: {e}")))
}
