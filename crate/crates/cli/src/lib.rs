//! Command-line driver: character tables, per-group verification reports
//! and catalog sweeps.

pub mod cache;
pub mod error;
pub mod render;
pub mod source;
pub mod sweep;

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;
use std::sync::Arc;

use blocklab::chartab::{CharacterTable, DEFAULT_SEED};
use blocklab::group::ConjugacyClasses;
use blocklab::verify::{self, CheckRegistry, Instance, VerificationReport};
use clap::{Args, Parser, Subcommand};

use cache::TableCache;
use error::CliError;

pub const REPORT_SCHEMA: &str = include_str!("../../../report.schema.json");

#[derive(Debug, Parser)]
#[command(name = "blocklab", version, about = "Character tables, p-blocks and normal p-complement checks")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print the character table of a group.
    Table {
        #[command(flatten)]
        input: GroupArgs,
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Run the checks on one group and prime.
    Verify {
        #[command(flatten)]
        input: GroupArgs,
        #[arg(short = 'p', long = "prime")]
        p: u64,
        /// Comma-separated check ids; all checks when omitted.
        #[arg(long, value_delimiter = ',')]
        checks: Option<Vec<String>>,
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Verify every builtin group for each prime.
    Sweep {
        #[arg(long, value_delimiter = ',', default_value = "2,3,5,7")]
        primes: Vec<u64>,
        #[arg(long, value_delimiter = ',')]
        checks: Option<Vec<String>>,
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Print the JSON schema of verification reports.
    Schema,
    /// List the builtin groups and the registered checks.
    List,
}

#[derive(Debug, Args)]
pub struct GroupArgs {
    /// A group file path, or `builtin:NAME`.
    #[arg(long)]
    pub group: String,
}

#[derive(Debug, Args)]
pub struct CommonArgs {
    #[arg(long, conflicts_with = "text")]
    pub json: bool,
    #[arg(long)]
    pub text: bool,
    #[arg(long, default_value_t = DEFAULT_SEED)]
    pub seed: u64,
    /// Table cache directory; defaults to $BLOCKLAB_CACHE.
    #[arg(long)]
    pub cache_dir: Option<PathBuf>,
}

/// Parses `args` and runs the command, returning the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let _ = if e.use_stderr() { write!(err, "{e}") } else { write!(out, "{e}") };
            return code;
        }
    };
    match execute(cli.command, out, err) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}

fn execute(command: Command, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32, CliError> {
    let mut warn = |msg: String| {
        let _ = writeln!(err, "{msg}");
    };
    let text = match command {
        Command::Table { input, common } => {
            let loaded = source::load(&input.group)?;
            let cache = TableCache::new(common.cache_dir);
            let classes = Arc::new(ConjugacyClasses::new(&loaded.group));
            let (table, _) = cache.table(&loaded.text, &loaded.group, classes, common.seed, &mut warn)?;
            if common.json {
                render::table_json(&loaded.name, &table)
            } else {
                render::table_text(&loaded.name, &table)
            }
        }
        Command::Verify { input, p, checks, common } => {
            let registry = CheckRegistry::standard();
            let selected = registry.select(checks.as_deref())?;
            let loaded = source::load(&input.group)?;
            let cache = TableCache::new(common.cache_dir);
            let report = verify_one(&loaded, p, common.seed, &cache, &selected, &mut warn)?;
            let text = if common.json { render::report_json(&report) } else { render::report_text(&report) };
            write_out(out, &text)?;
            return Ok(if report.passed() { 0 } else { 1 });
        }
        Command::Sweep { primes, checks, common } => {
            let registry = CheckRegistry::standard();
            let selected = registry.select(checks.as_deref())?;
            if let Some(&bad) = primes.iter().find(|&&p| !blocklab::arith::is_prime(p)) {
                return Err(verify::VerifyError::NotPrime(bad).into());
            }
            let cache = TableCache::new(common.cache_dir);
            let (summary, warnings) = sweep::sweep(&primes, common.seed, &cache, &selected)?;
            for w in warnings {
                warn(w);
            }
            let text = if common.json { render::sweep_json(&summary) } else { render::sweep_text(&summary) };
            write_out(out, &text)?;
            return Ok(if summary.failures == 0 { 0 } else { 1 });
        }
        Command::Schema => REPORT_SCHEMA.to_string(),
        Command::List => render::listing(&CheckRegistry::standard()),
    };
    write_out(out, &text)?;
    Ok(0)
}

fn write_out(out: &mut dyn Write, text: &str) -> Result<(), CliError> {
    out.write_all(text.as_bytes()).map_err(|e| CliError::Cache(format!("writing output: {e}")))
}

/// Table (through the cache) plus the selected checks for one group and prime.
pub fn verify_one(
    loaded: &source::LoadedGroup,
    p: u64,
    seed: u64,
    cache: &TableCache,
    checks: &[&dyn verify::Check],
    warn: &mut dyn FnMut(String),
) -> Result<VerificationReport, CliError> {
    if !blocklab::arith::is_prime(p) {
        return Err(verify::VerifyError::NotPrime(p).into());
    }
    let classes = Arc::new(ConjugacyClasses::new(&loaded.group));
    let (table, _) = cache.table(&loaded.text, &loaded.group, classes, seed, warn)?;
    let inst = Instance::new(loaded.name.clone(), loaded.group.clone(), table, p, seed)?;
    Ok(verify::verify(&inst, checks)?)
}

/// The table alone, for callers that already hold a loaded group.
pub fn table_of(loaded: &source::LoadedGroup, seed: u64, cache: &TableCache) -> Result<CharacterTable, CliError> {
    let classes = Arc::new(ConjugacyClasses::new(&loaded.group));
    Ok(cache.table(&loaded.text, &loaded.group, classes, seed, &mut |_| {})?.0)
}
