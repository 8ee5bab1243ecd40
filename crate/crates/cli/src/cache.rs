//! Character tables cached on disk, one JSON file per group-file hash.

use std::io::Write;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use blocklab::chartab::{CharacterTable, TableRecord};
use blocklab::group::{ConjugacyClasses, Group};
use sha2::{Digest, Sha256};

use crate::error::CliError;

pub const CACHE_ENV: &str = "BLOCKLAB_CACHE";

#[derive(Clone, Debug, Default)]
pub struct TableCache {
    dir: Option<PathBuf>,
}

/// How a table was obtained.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Provenance {
    Computed,
    Loaded,
    Rebuilt,
}

impl TableCache {
    /// The flag wins over the environment; no directory means no caching.
    pub fn new(flag: Option<PathBuf>) -> Self {
        let dir = flag.or_else(|| std::env::var_os(CACHE_ENV).filter(|v| !v.is_empty()).map(PathBuf::from));
        TableCache { dir }
    }

    pub fn dir(&self) -> Option<&Path> {
        self.dir.as_deref()
    }

    pub fn key(text: &str) -> String {
        hex::encode(Sha256::digest(text.as_bytes()))
    }

    pub fn path_for(&self, text: &str) -> Option<PathBuf> {
        self.dir.as_ref().map(|d| d.join(format!("{}.json", Self::key(text))))
    }

    /// Loads or computes the table of `group`, whose file contents are
    /// `text`. Corrupt entries are replaced and reported through `warn`.
    pub fn table(
        &self,
        text: &str,
        group: &Group,
        classes: Arc<ConjugacyClasses>,
        seed: u64,
        warn: &mut dyn FnMut(String),
    ) -> Result<(CharacterTable, Provenance), CliError> {
        let Some(path) = self.path_for(text) else {
            return Ok((CharacterTable::compute_with_seed(group, classes, seed)?, Provenance::Computed));
        };
        let mut provenance = Provenance::Computed;
        if path.exists() {
            match read_entry(&path, group, &classes) {
                Ok(t) => return Ok((t, Provenance::Loaded)),
                Err(msg) => {
                    warn(format!("warning: cache entry {} is unusable ({msg}); rebuilding", path.display()));
                    provenance = Provenance::Rebuilt;
                }
            }
        }
        let table = CharacterTable::compute_with_seed(group, classes, seed)?;
        write_atomic(&path, &serialize(&table.to_record()))?;
        Ok((table, provenance))
    }
}

pub fn serialize(record: &TableRecord) -> String {
    let mut s = serde_json::to_string_pretty(record).expect("records are plain data");
    s.push('\n');
    s
}

fn read_entry(path: &Path, group: &Group, classes: &Arc<ConjugacyClasses>) -> Result<CharacterTable, String> {
    let text = std::fs::read_to_string(path).map_err(|e| e.to_string())?;
    let record: TableRecord = serde_json::from_str(&text).map_err(|e| e.to_string())?;
    CharacterTable::from_record(group, Arc::clone(classes), &record).map_err(|e| e.to_string())
}

/// Writes through a temporary file in the same directory, then renames.
fn write_atomic(path: &Path, contents: &str) -> Result<(), CliError> {
    let dir = path.parent().expect("cache paths have a directory");
    std::fs::create_dir_all(dir).map_err(|e| CliError::Cache(format!("{}: {e}", dir.display())))?;
    let mut tmp = tempfile::NamedTempFile::new_in(dir).map_err(|e| CliError::Cache(e.to_string()))?;
    tmp.write_all(contents.as_bytes()).map_err(|e| CliError::Cache(e.to_string()))?;
    tmp.persist(path).map_err(|e| CliError::Cache(e.to_string()))?;
    Ok(())
}
