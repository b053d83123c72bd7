use std::fs;
use std::io::Write as _;
use std::path::PathBuf;
use std::time::Duration;

use clap::ValueEnum;
use serde_json::{json, Value};

use crate::{usage, CliError};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Table,
    Csv,
    Json,
}

/// Write the payload to `--output` if given, stdout otherwise.
pub fn emit(output: &Option<PathBuf>, bytes: &[u8]) -> Result<(), CliError> {
    match output {
        None => {
            std::io::stdout().write_all(bytes).expect("writing to stdout");
            Ok(())
        }
        Some(path) => fs::write(path, bytes)
            .map_err(|e| usage(format!("cannot write {}: {e}", path.display()))),
    }
}

/// The fixed top-level JSON schema. Timing lives only under `metadata`, so
/// everything outside that key is reproducible byte for byte.
pub fn envelope(command: &str, params: Value, data: Value, elapsed: Duration) -> String {
    let doc = json!({
        "tool_version": env!("CARGO_PKG_VERSION"),
        "command": command,
        "params": params,
        "data": data,
        "metadata": { "elapsed_ms": elapsed.as_millis() as u64 },
    });
    let mut text = serde_json::to_string_pretty(&doc).expect("JSON document");
    text.push('\n');
    text
}

/// RFC 4180: CRLF row separators, header row first.
pub fn csv(header: &str, rows: impl IntoIterator<Item = String>) -> String {
    let mut out = String::with_capacity(256);
    out.push_str(header);
    out.push_str("\r\n");
    for row in rows {
        out.push_str(&row);
        out.push_str("\r\n");
    }
    out
}

/// Run `f` on a dedicated rayon pool when `--jobs` was given.
pub fn with_pool<T: Send>(
    jobs: Option<usize>,
    f: impl FnOnce() -> T + Send,
) -> Result<T, CliError> {
    match jobs {
        None => Ok(f()),
        Some(0) => Err(usage("--jobs needs at least one worker")),
        Some(j) => rayon::ThreadPoolBuilder::new()
            .num_threads(j)
            .build()
            .map_err(|e| usage(format!("cannot build a worker pool: {e}")))
            .map(|pool| pool.install(f)),
    }
}
