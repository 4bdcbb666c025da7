//! On-disk cache of overlap tables.
//!
//! Enumerating `S_{2m−s}` is the dominant cost of every overlap query, and the
//! result depends only on `(τ, s, mode)`, so tables are memoised as one JSON
//! document each.  Loads re-validate the stored table and silently fall back
//! to recomputation when the file is missing, unreadable, or inconsistent —
//! a corrupt cache can cost time but never correctness.

use std::fs;
use std::path::{Path, PathBuf};

use pav_core::{Pattern, Result};

use crate::enumerate::{classical_overlap_with_guard, sequential_overlap_with_guard};
use crate::table::{OverlapMode, OverlapTable};
use crate::{DEFAULT_CLASSICAL_MAX_LEN, DEFAULT_SEQUENTIAL_MAX_M};

/// A directory of cached overlap tables, one JSON file per `(τ, s, mode)`.
#[derive(Debug, Clone)]
pub struct OverlapCache {
    dir: PathBuf,
}

impl OverlapCache {
    /// A cache rooted at `dir`.  The directory is created lazily on first
    /// write.
    pub fn new(dir: impl Into<PathBuf>) -> OverlapCache {
        OverlapCache { dir: dir.into() }
    }

    /// The cache directory.
    pub fn dir(&self) -> &Path {
        &self.dir
    }

    /// The file backing `(τ, s, mode)`.
    pub fn path_for(&self, tau: &Pattern, s: usize, mode: OverlapMode) -> PathBuf {
        // Patterns short enough to enumerate always render as digit strings,
        // but sanitize the comma form anyway.
        let tau_text = tau.to_string().replace(',', "_");
        self.dir.join(format!("{mode}-{tau_text}-s{s}.json"))
    }

    /// Load `(τ, s, mode)` from disk, or enumerate it (under the default
    /// guards) and persist the result.
    pub fn get_or_compute(
        &self,
        tau: &Pattern,
        s: usize,
        mode: OverlapMode,
    ) -> Result<OverlapTable> {
        let guard = match mode {
            OverlapMode::Sequential => DEFAULT_SEQUENTIAL_MAX_M,
            OverlapMode::Classical => DEFAULT_CLASSICAL_MAX_LEN,
        };
        self.get_or_compute_with_guard(tau, s, mode, guard)
    }

    /// As [`get_or_compute`](Self::get_or_compute) with an explicit guard:
    /// the maximum pattern length in sequential mode, the maximum enumerated
    /// length `2m − s` in classical mode.
    pub fn get_or_compute_with_guard(
        &self,
        tau: &Pattern,
        s: usize,
        mode: OverlapMode,
        guard: usize,
    ) -> Result<OverlapTable> {
        let path = self.path_for(tau, s, mode);
        if let Some(table) = load_if_valid(&path, tau, s, mode) {
            return Ok(table);
        }
        let table = match mode {
            OverlapMode::Sequential => sequential_overlap_with_guard(tau, s, guard)?,
            OverlapMode::Classical => classical_overlap_with_guard(tau, s, guard)?,
        };
        self.store(&path, &table);
        Ok(table)
    }

    /// Best-effort write; the computed table is returned to the caller either
    /// way, so I/O failures here are deliberately swallowed.
    fn store(&self, path: &Path, table: &OverlapTable) {
        let Ok(text) = serde_json::to_string_pretty(table) else {
            return;
        };
        if fs::create_dir_all(&self.dir).is_ok() {
            let _ = fs::write(path, text);
        }
    }
}

/// Read and fully re-validate a cached table; any failure means "not cached".
fn load_if_valid(
    path: &Path,
    tau: &Pattern,
    s: usize,
    mode: OverlapMode,
) -> Option<OverlapTable> {
    let text = fs::read_to_string(path).ok()?;
    let table: OverlapTable = serde_json::from_str(&text).ok()?;
    let key_matches = table.tau() == tau && table.s() == s && table.mode() == mode;
    if key_matches && table.validate().is_ok() {
        Some(table)
    } else {
        None
    }
}
