//! Builtin groups, shipped as ordinary group files.

use crate::group::io::load_group;
use crate::group::{Group, GroupError, DEFAULT_ELEMENT_CAP};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CatalogEntry {
    pub name: &'static str,
    pub order: usize,
    pub source: &'static str,
}

impl CatalogEntry {
    pub fn build(&self) -> Result<Group, GroupError> {
        load_group(self.source, DEFAULT_ELEMENT_CAP)
    }
}

macro_rules! entry {
    ($name:literal, $order:literal) => {
        CatalogEntry {
            name: $name,
            order: $order,
            source: include_str!(concat!("../catalog/", $name, ".grp")),
        }
    };
}

static ENTRIES: &[CatalogEntry] = &[
    entry!("C1", 1),
    entry!("C2", 2),
    entry!("C3", 3),
    entry!("C4", 4),
    entry!("V4", 4),
    entry!("C5", 5),
    entry!("C6", 6),
    entry!("S3", 6),
    entry!("C7", 7),
    entry!("D8", 8),
    entry!("Q8", 8),
    entry!("D10", 10),
    entry!("A4", 12),
    entry!("D12", 12),
    entry!("C3xS3", 18),
    entry!("F20", 20),
    entry!("F21", 21),
    entry!("S4", 24),
    entry!("SL23", 24),
    entry!("A5", 60),
    entry!("S5", 120),
    entry!("S6", 720),
];

/// All builtin groups, ordered by group order then name.
pub fn entries() -> &'static [CatalogEntry] {
    ENTRIES
}

pub fn find(name: &str) -> Option<&'static CatalogEntry> {
    ENTRIES.iter().find(|e| e.name == name)
}
