//! On-disk census cache and atomic file writes.

use std::io::Write;
use std::path::{Path, PathBuf};

use anyhow::{Context, Result};
use wicks_core::enumerate::{census_from_jsonl, census_to_jsonl, enumerate_constructive_from};
use wicks_core::{enumerate_constructive, Census, EnumerateOptions};

/// Environment variable naming the census cache directory.
pub const CACHE_ENV: &str = "WICKS_CACHE_DIR";

pub fn cache_dir() -> Option<PathBuf> {
    std::env::var_os(CACHE_ENV).filter(|v| !v.is_empty()).map(PathBuf::from)
}

fn census_path(dir: &Path, genus: usize) -> PathBuf {
    dir.join(format!("census-g{genus}.jsonl"))
}

/// Writes `contents` to a temporary file next to `path`, then renames it.
pub fn write_atomic(path: &Path, contents: &str) -> Result<()> {
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p,
        _ => Path::new("."),
    };
    std::fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
    let mut tmp = tempfile::NamedTempFile::new_in(dir).with_context(|| format!("creating a temporary file in {}", dir.display()))?;
    tmp.write_all(contents.as_bytes())?;
    tmp.flush()?;
    tmp.persist(path).with_context(|| format!("writing {}", path.display()))?;
    Ok(())
}

fn load(dir: &Path, genus: usize) -> Option<Census> {
    let path = census_path(dir, genus);
    let text = std::fs::read_to_string(&path).ok()?;
    match census_from_jsonl(genus, &text) {
        Ok(census) => Some(census),
        Err(e) => {
            eprintln!("warning: ignoring cached census {}: {e}", path.display());
            None
        }
    }
}

/// Constructive census, reusing and filling the cache when one is given.
pub fn constructive(genus: usize, options: &EnumerateOptions, cache: Option<&Path>) -> Result<Census> {
    options.check_genus(genus)?;
    let Some(dir) = cache else {
        return Ok(enumerate_constructive(genus, options)?);
    };
    if let Some(census) = load(dir, genus) {
        return Ok(census);
    }
    let census = if genus <= 1 {
        enumerate_constructive(genus, options)?
    } else {
        let parent = constructive(genus - 1, options, cache)?;
        enumerate_constructive_from(&parent, options)?
    };
    if let Err(e) = write_atomic(&census_path(dir, genus), &census_to_jsonl(&census)) {
        eprintln!("warning: could not cache the genus-{genus} census: {e:#}");
    }
    Ok(census)
}
