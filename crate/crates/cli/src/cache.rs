//! One cache file per command. A file whose format or tool version differs
//! from the running binary is rejected outright; a file for other parameters
//! is simply overwritten.

use std::fs;
use std::io::ErrorKind;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::error::CliError;

pub const FORMAT_VERSION: u32 = 1;
pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CacheEntry {
    pub format_version: u32,
    pub version: String,
    pub command: String,
    pub params: String,
    pub body: String,
}

#[derive(Debug, Clone)]
pub struct Cache {
    dir: PathBuf,
}

impl Cache {
    pub fn new(dir: impl Into<PathBuf>) -> Self {
        Self { dir: dir.into() }
    }

    pub fn path_for(&self, command: &str) -> PathBuf {
        self.dir.join(format!("{command}.cache.json"))
    }

    /// The cached report for `(command, params)`, if present and current.
    pub fn lookup(&self, command: &str, params: &str) -> Result<Option<String>, CliError> {
        let path = self.path_for(command);
        let text = match fs::read_to_string(&path) {
            Ok(t) => t,
            Err(e) if e.kind() == ErrorKind::NotFound => return Ok(None),
            Err(e) => return Err(e.into()),
        };
        let entry = parse_entry(&path, &text)?;
        Ok((entry.command == command && entry.params == params).then_some(entry.body))
    }

    pub fn store(&self, command: &str, params: &str, body: &str) -> Result<(), CliError> {
        fs::create_dir_all(&self.dir)?;
        let entry = CacheEntry {
            format_version: FORMAT_VERSION,
            version: TOOL_VERSION.to_string(),
            command: command.to_string(),
            params: params.to_string(),
            body: body.to_string(),
        };
        let path = self.path_for(command);
        let tmp = path.with_extension("json.tmp");
        let text = serde_json::to_string_pretty(&entry)
            .map_err(|e| CliError::Invariant(format!("cache serialization failed: {e}")))?;
        fs::write(&tmp, text)?;
        fs::rename(&tmp, &path)?;
        Ok(())
    }
}

fn parse_entry(path: &Path, text: &str) -> Result<CacheEntry, CliError> {
    let corrupt = |reason: String| CliError::CacheCorrupt { path: path.to_path_buf(), reason };
    let value: serde_json::Value = serde_json::from_str(text).map_err(|e| corrupt(e.to_string()))?;
    // check the stamp before the shape so that older layouts report a
    // version mismatch rather than a parse error
    let found_format = value.get("format_version").and_then(|v| v.as_u64());
    let found_version = value.get("version").and_then(|v| v.as_str()).unwrap_or("?");
    if found_format != Some(FORMAT_VERSION as u64) || found_version != TOOL_VERSION {
        return Err(CliError::CacheVersionMismatch {
            path: path.to_path_buf(),
            found: format!(
                "{}/{found_version}",
                found_format.map_or_else(|| "?".to_string(), |f| f.to_string())
            ),
            expected: format!("{FORMAT_VERSION}/{TOOL_VERSION}"),
        });
    }
    serde_json::from_value(value).map_err(|e| corrupt(e.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip_and_param_miss() {
        let dir = tempfile::tempdir().unwrap();
        let cache = Cache::new(dir.path());
        assert_eq!(cache.lookup("scan", "m=3").unwrap(), None);
        cache.store("scan", "m=3", "body\n").unwrap();
        assert_eq!(cache.lookup("scan", "m=3").unwrap().as_deref(), Some("body\n"));
        assert_eq!(cache.lookup("scan", "m=4").unwrap(), None);
    }

    #[test]
    fn stale_format_is_rejected() {
        let dir = tempfile::tempdir().unwrap();
        let cache = Cache::new(dir.path());
        let stale = r#"{"format_version":0,"version":"0.0.1","command":"scan","params":"","body":""}"#;
        fs::write(cache.path_for("scan"), stale).unwrap();
        let err = cache.lookup("scan", "").unwrap_err();
        assert!(matches!(err, CliError::CacheVersionMismatch { .. }));
        assert_eq!(err.exit_code(), 2);
    }
}
