//! Per-instance verification: one [`Check`] per property,
//! each producing a pass / fail / not-applicable record with exact witnesses.

mod checks;
mod rootsums;

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::Serialize;
use serde_json::Value;
use thiserror::Error;

use crate::blocks::{block_partition, principal_block, Block, BlockError};
use crate::chartab::{CharacterTable, ChartabError};
use crate::cyclo::Cyclotomic;
use crate::group::{ConjugacyClasses, Group, Subgroup};

pub use checks::standard_checks;
pub use rootsums::{root_sum_family, RootSumSummary};

#[derive(Debug, Error)]
pub enum VerifyError {
    #[error(transparent)]
    Chartab(#[from] ChartabError),
    #[error(transparent)]
    Blocks(#[from] BlockError),
    #[error("unknown check id `{0}`")]
    UnknownCheck(String),
    #[error("check id `{0}` registered twice")]
    DuplicateCheck(String),
    #[error("{0} is not prime")]
    NotPrime(u64),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Pass,
    Fail,
    NotApplicable,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::NotApplicable => "not-applicable",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CheckRecord {
    pub id: String,
    pub status: Status,
    pub summary: String,
    pub witness: BTreeMap<String, Value>,
}

/// Accumulates exact assertions and witness data for one record.
pub struct RecordBuilder {
    id: &'static str,
    witness: BTreeMap<String, Value>,
    failures: Vec<String>,
    assertions: u64,
}

/// Failure messages kept verbatim in a record; the rest are only counted.
const MAX_LISTED_FAILURES: usize = 10;

impl RecordBuilder {
    pub fn new(id: &'static str) -> Self {
        RecordBuilder {
            id,
            witness: BTreeMap::new(),
            failures: Vec::new(),
            assertions: 0,
        }
    }

    pub fn note(&mut self, key: &str, value: impl Into<Value>) {
        self.witness.insert(key.to_string(), value.into());
    }

    /// Records one exact assertion; `msg` is only built on failure.
    pub fn expect(&mut self, ok: bool, msg: impl FnOnce() -> String) {
        self.assertions += 1;
        if !ok {
            self.failures.push(msg());
        }
    }

    pub fn expect_eq(&mut self, what: &str, got: &Cyclotomic, want: &Cyclotomic) {
        self.expect(got == want, || format!("{what}: got {got}, expected {want}"));
    }

    pub fn finish(mut self, summary: impl Into<String>) -> CheckRecord {
        self.witness.insert("assertions".into(), self.assertions.into());
        let status = if self.failures.is_empty() { Status::Pass } else { Status::Fail };
        if !self.failures.is_empty() {
            self.witness.insert("failure_count".into(), self.failures.len().into());
            self.failures.truncate(MAX_LISTED_FAILURES);
            self.witness.insert("failures".into(), self.failures.clone().into());
        }
        CheckRecord {
            id: self.id.to_string(),
            status,
            summary: summary.into(),
            witness: self.witness,
        }
    }

    /// A record whose precondition was checked and found false.
    pub fn not_applicable(mut self, reason: impl Into<String>) -> CheckRecord {
        let reason = reason.into();
        self.witness.insert("precondition".into(), Value::from(reason.clone()));
        CheckRecord {
            id: self.id.to_string(),
            status: Status::NotApplicable,
            summary: reason,
            witness: self.witness,
        }
    }
}

/// Everything a check may need about one (G, p) pair, computed once.
pub struct Instance {
    pub name: String,
    pub group: Group,
    pub p: u64,
    pub seed: u64,
    pub table: CharacterTable,
    pub classes: Arc<ConjugacyClasses>,
    pub sylow: Subgroup,
    pub hypothesis: bool,
    pub complement: Option<Subgroup>,
    /// The p-regular elements.
    pub regular: Vec<usize>,
    pub blocks: Vec<Block>,
    pub principal: Block,
}

impl Instance {
    pub fn new(name: impl Into<String>, group: Group, table: CharacterTable, p: u64, seed: u64) -> Result<Self, VerifyError> {
        if !crate::arith::is_prime(p) {
            return Err(VerifyError::NotPrime(p));
        }
        let blocks = block_partition(&table, p)?;
        let principal = principal_block(&blocks).clone();
        Ok(Instance {
            name: name.into(),
            classes: Arc::clone(table.classes()),
            sylow: group.sylow_subgroup(p),
            hypothesis: group.burnside_hypothesis(p),
            complement: group.normal_p_complement(p),
            regular: group.p_regular_elements(p),
            p,
            seed,
            table,
            group,
            blocks,
            principal,
        })
    }

    pub fn order(&self) -> usize {
        self.group.order()
    }

    /// `|G : P|`.
    pub fn sylow_index(&self) -> usize {
        self.order() / self.sylow.order()
    }

    /// `P` without the identity.
    pub fn sylow_nonidentity(&self) -> Vec<usize> {
        let e = self.group.identity();
        self.sylow.members().iter().copied().filter(|&z| z != e).collect()
    }

    /// Indices of the principal-block characters other than the trivial one.
    pub fn nontrivial_principal(&self) -> Vec<usize> {
        self.principal
            .character_indices()
            .into_iter()
            .filter(|&i| i != self.table.trivial_index())
            .collect()
    }

    pub fn divides_order(&self) -> bool {
        (self.order() as u64).is_multiple_of(self.p)
    }
}

/// One verification step, identified by a stable id.
pub trait Check: Send + Sync {
    fn id(&self) -> &'static str;
    fn description(&self) -> &'static str;
    fn run(&self, inst: &Instance) -> CheckRecord;
}

/// Checks registered by id, kept in registration order.
#[derive(Default)]
pub struct CheckRegistry {
    checks: Vec<Box<dyn Check>>,
}

impl CheckRegistry {
    pub fn new() -> Self {
        Self::default()
    }

    /// The full fixed list of checks.
    pub fn standard() -> Self {
        let mut reg = Self::new();
        for c in standard_checks() {
            reg.register(c).expect("standard ids are distinct");
        }
        reg
    }

    pub fn register(&mut self, check: Box<dyn Check>) -> Result<(), VerifyError> {
        if self.get(check.id()).is_some() {
            return Err(VerifyError::DuplicateCheck(check.id().to_string()));
        }
        self.checks.push(check);
        Ok(())
    }

    pub fn get(&self, id: &str) -> Option<&dyn Check> {
        self.checks.iter().find(|c| c.id() == id).map(|c| c.as_ref())
    }

    pub fn ids(&self) -> Vec<&'static str> {
        self.checks.iter().map(|c| c.id()).collect()
    }

    /// The named checks in registry order; all checks for `None`.
    pub fn select(&self, ids: Option<&[String]>) -> Result<Vec<&dyn Check>, VerifyError> {
        let Some(ids) = ids else {
            return Ok(self.checks.iter().map(|c| c.as_ref()).collect());
        };
        if let Some(bad) = ids.iter().find(|id| self.get(id).is_none()) {
            return Err(VerifyError::UnknownCheck(bad.clone()));
        }
        Ok(self
            .checks
            .iter()
            .filter(|c| ids.iter().any(|id| id == c.id()))
            .map(|c| c.as_ref())
            .collect())
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CrossCheck {
    pub status: Status,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct VerificationReport {
    pub group: String,
    pub order: usize,
    pub p: u64,
    pub seed: u64,
    pub hypothesis_holds: bool,
    pub sylow_order: usize,
    pub normal_p_complement_order: Option<usize>,
    pub blocks: Vec<Block>,
    /// Principal block against the characters inflated from `G/K` for a
    /// normal p-complement `K`.
    pub classical_cross_check: CrossCheck,
    pub checks: Vec<CheckRecord>,
}

impl VerificationReport {
    pub fn failures(&self) -> usize {
        self.checks.iter().filter(|c| c.status == Status::Fail).count()
            + usize::from(self.classical_cross_check.status == Status::Fail)
    }

    pub fn passed(&self) -> bool {
        self.failures() == 0
    }
}

/// Runs the selected checks on one instance.
pub fn verify(inst: &Instance, checks: &[&dyn Check]) -> Result<VerificationReport, VerifyError> {
    Ok(VerificationReport {
        group: inst.name.clone(),
        order: inst.order(),
        p: inst.p,
        seed: inst.seed,
        hypothesis_holds: inst.hypothesis,
        sylow_order: inst.sylow.order(),
        normal_p_complement_order: inst.complement.as_ref().map(Subgroup::order),
        blocks: inst.blocks.clone(),
        classical_cross_check: classical_cross_check(inst)?,
        checks: checks.iter().map(|c| c.run(inst)).collect(),
    })
}

/// When a normal p-complement `K` exists, the principal block consists of
/// exactly the characters inflated from `G/K`.
pub fn classical_cross_check(inst: &Instance) -> Result<CrossCheck, VerifyError> {
    let Some(k) = &inst.complement else {
        return Ok(CrossCheck {
            status: Status::NotApplicable,
            detail: "no normal p-complement".into(),
        });
    };
    let quotient = inst.group.quotient(k).expect("a normal p-complement is normal");
    let qt = CharacterTable::compute(&quotient.group)?;
    let mut inflated = qt
        .irreducibles()
        .iter()
        .map(|c| c.inflate(&quotient, &inst.classes).map(|f| f.values().to_vec()))
        .collect::<Result<Vec<_>, _>>()?;
    let mut principal: Vec<Vec<Cyclotomic>> = inst
        .principal
        .character_indices()
        .iter()
        .map(|&i| inst.table.character(i).values().to_vec())
        .collect();
    let key = |v: &Vec<Cyclotomic>| v.iter().map(|c| c.to_string()).collect::<Vec<_>>();
    inflated.sort_by_key(key);
    principal.sort_by_key(key);
    let ok = inflated == principal;
    Ok(CrossCheck {
        status: if ok { Status::Pass } else { Status::Fail },
        detail: format!(
            "principal block has {} characters; G/K of order {} has {}",
            principal.len(),
            quotient.group.order(),
            inflated.len()
        ),
    })
}
