use std::path::PathBuf;

use blocklab::catalog;
use blocklab::group::io::load_group;
use blocklab::group::{Group, DEFAULT_ELEMENT_CAP};

use crate::error::CliError;

/// A group read from a file or the builtin catalog, with the text it came from.
pub struct LoadedGroup {
    pub name: String,
    pub text: String,
    pub group: Group,
}

pub fn load(source: &str) -> Result<LoadedGroup, CliError> {
    let (name, text) = match source.strip_prefix("builtin:") {
        Some(name) => {
            let entry = catalog::find(name).ok_or_else(|| CliError::UnknownBuiltin(name.to_string()))?;
            (entry.name.to_string(), entry.source.to_string())
        }
        None => {
            let path = PathBuf::from(source);
            let text = std::fs::read_to_string(&path).map_err(|source| CliError::Read { path, source })?;
            (source.to_string(), text)
        }
    };
    let group = load_group(&text, DEFAULT_ELEMENT_CAP)?;
    Ok(LoadedGroup { name, text, group })
}
