use std::path::PathBuf;

use blocklab::chartab::ChartabError;
use blocklab::group::GroupError;
use blocklab::verify::VerifyError;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("cannot read {path}: {source}")]
    Read {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("unknown builtin group `{0}`")]
    UnknownBuiltin(String),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Chartab(#[from] ChartabError),
    #[error(transparent)]
    Verify(#[from] VerifyError),
    #[error("cache: {0}")]
    Cache(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Read { .. } | CliError::UnknownBuiltin(_) => 2,
            CliError::Group(GroupError::NotAGroup(_)) => 3,
            CliError::Group(GroupError::TooLarge { .. }) | CliError::Chartab(ChartabError::TooLarge { .. }) => 4,
            CliError::Group(_) => 2,
            CliError::Verify(VerifyError::UnknownCheck(_) | VerifyError::NotPrime(_)) => 2,
            _ => 1,
        }
    }
}
