//! Every builtin group against a list of primes, one parallel job per group.

use std::collections::BTreeMap;
use std::sync::Arc;

use blocklab::catalog;
use blocklab::group::ConjugacyClasses;
use blocklab::verify::{self, Check, Instance, Status};
use rayon::prelude::*;
use serde::Serialize;

use crate::cache::TableCache;
use crate::error::CliError;
use crate::source::LoadedGroup;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SweepCell {
    pub p: u64,
    pub hypothesis_holds: bool,
    pub normal_p_complement_order: Option<usize>,
    pub pass: usize,
    pub fail: usize,
    pub not_applicable: usize,
    pub classical_cross_check: Status,
    /// Status of every check by id.
    pub statuses: BTreeMap<String, Status>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SweepRow {
    pub group: String,
    pub order: usize,
    pub cells: Vec<SweepCell>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SweepSummary {
    pub seed: u64,
    pub primes: Vec<u64>,
    pub rows: Vec<SweepRow>,
    pub failures: usize,
}

/// Runs the sweep; warnings come back in catalog order.
pub fn sweep(
    primes: &[u64],
    seed: u64,
    cache: &TableCache,
    checks: &[&dyn Check],
) -> Result<(SweepSummary, Vec<String>), CliError> {
    let jobs: Vec<Result<(SweepRow, Vec<String>), CliError>> = catalog::entries()
        .par_iter()
        .map(|entry| {
            let loaded = LoadedGroup {
                name: entry.name.to_string(),
                text: entry.source.to_string(),
                group: entry.build()?,
            };
            let mut warnings = Vec::new();
            let classes = Arc::new(ConjugacyClasses::new(&loaded.group));
            let (table, _) = cache.table(&loaded.text, &loaded.group, classes, seed, &mut |w| warnings.push(w))?;
            let mut cells = Vec::with_capacity(primes.len());
            for &p in primes {
                let inst = Instance::new(loaded.name.clone(), loaded.group.clone(), table.clone(), p, seed)?;
                let report = verify::verify(&inst, checks)?;
                let count = |s: Status| report.checks.iter().filter(|c| c.status == s).count();
                cells.push(SweepCell {
                    p,
                    hypothesis_holds: report.hypothesis_holds,
                    normal_p_complement_order: report.normal_p_complement_order,
                    pass: count(Status::Pass),
                    fail: count(Status::Fail),
                    not_applicable: count(Status::NotApplicable),
                    classical_cross_check: report.classical_cross_check.status,
                    statuses: report.checks.iter().map(|c| (c.id.clone(), c.status)).collect(),
                });
            }
            let row = SweepRow {
                group: loaded.name,
                order: loaded.group.order(),
                cells,
            };
            Ok((row, warnings))
        })
        .collect();
    let mut rows = Vec::new();
    let mut warnings = Vec::new();
    for job in jobs {
        let (row, w) = job?;
        rows.push(row);
        warnings.extend(w);
    }
    let failures = rows
        .iter()
        .flat_map(|r| &r.cells)
        .map(|c| c.fail + usize::from(c.classical_cross_check == Status::Fail))
        .sum();
    Ok((
        SweepSummary {
            seed,
            primes: primes.to_vec(),
            rows,
            failures,
        },
        warnings,
    ))
}
