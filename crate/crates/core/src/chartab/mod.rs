//! Ordinary character tables with exact cyclotomic values.

mod dixon;
mod modp;

use std::sync::Arc;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::cyclo::{Cyclotomic, Rational};
use crate::group::{ConjugacyClasses, Group, Quotient, Subgroup, DEFAULT_ELEMENT_CAP};

pub use dixon::{class_multiplication_coefficients, dixon_prime};

/// Seed used for eigenspace splitting unless the caller overrides it.
pub const DEFAULT_SEED: u64 = 0x5eed_b10c;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ChartabError {
    #[error("character lift failed: {0}")]
    LiftFailure(String),
    #[error("group of order {order} exceeds the cap of {cap}")]
    TooLarge { order: usize, cap: usize },
    #[error("class functions live on different groups")]
    GroupMismatch,
    #[error("stored table does not match the group: {0}")]
    Corrupt(String),
}

/// A function constant on conjugacy classes, one value per class.
#[derive(Clone, Debug)]
pub struct ClassFunction {
    classes: Arc<ConjugacyClasses>,
    values: Vec<Cyclotomic>,
}

/// Characters are class functions whose value at the identity is the degree.
pub type Character = ClassFunction;

impl PartialEq for ClassFunction {
    fn eq(&self, other: &Self) -> bool {
        self.same_group(other) && self.values == other.values
    }
}

impl ClassFunction {
    pub fn new(classes: Arc<ConjugacyClasses>, values: Vec<Cyclotomic>) -> Result<Self, ChartabError> {
        if values.len() != classes.len() {
            return Err(ChartabError::GroupMismatch);
        }
        Ok(ClassFunction { classes, values })
    }

    pub fn trivial(classes: Arc<ConjugacyClasses>) -> Self {
        let values = vec![Cyclotomic::one(); classes.len()];
        ClassFunction { classes, values }
    }

    pub fn classes(&self) -> &Arc<ConjugacyClasses> {
        &self.classes
    }

    pub fn values(&self) -> &[Cyclotomic] {
        &self.values
    }

    /// Value on class `k`.
    pub fn on_class(&self, k: usize) -> &Cyclotomic {
        &self.values[k]
    }

    /// Value at the element with index `g`.
    pub fn at(&self, g: usize) -> &Cyclotomic {
        &self.values[self.classes.class_of(g)]
    }

    /// Value at the identity as a positive integer, if it is one.
    pub fn degree(&self) -> Option<u64> {
        self.values[0].as_integer().and_then(|d| u64::try_from(d).ok()).filter(|&d| d > 0)
    }

    pub fn is_trivial(&self) -> bool {
        self.values.iter().all(Cyclotomic::is_one)
    }

    pub fn conj(&self) -> Self {
        ClassFunction {
            classes: Arc::clone(&self.classes),
            values: self.values.iter().map(Cyclotomic::conj).collect(),
        }
    }

    pub fn same_group(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.classes, &other.classes) || self.classes == other.classes
    }

    /// `(1/|G|) sum_K |K| self(K) conj(other(K))`.
    pub fn inner_product(&self, other: &Self) -> Result<Cyclotomic, ChartabError> {
        if !self.same_group(other) {
            return Err(ChartabError::GroupMismatch);
        }
        let terms: Vec<Cyclotomic> = (0..self.values.len())
            .map(|k| {
                let size = Cyclotomic::from_integer(self.classes.size(k) as i64);
                &(&self.values[k] * &other.values[k].conj()) * &size
            })
            .collect();
        let n = Rational::new(1.into(), (self.classes.group_order() as i64).into());
        Ok(Cyclotomic::sum(&terms).scale(&n))
    }

    /// Restriction to a subgroup prepared by [`Restriction::new`].
    pub fn restrict(&self, to: &Restriction) -> Result<ClassFunction, ChartabError> {
        if to.parent_order != self.classes.group_order() {
            return Err(ChartabError::GroupMismatch);
        }
        let values = (0..to.classes.len())
            .map(|k| self.at(to.embedding[to.classes.representative(k)]).clone())
            .collect();
        Ok(ClassFunction {
            classes: Arc::clone(&to.classes),
            values,
        })
    }

    /// Pulls `self`, a class function on `quotient.group`, back to the parent
    /// group whose classes are `parent`.
    pub fn inflate(&self, quotient: &Quotient, parent: &Arc<ConjugacyClasses>) -> Result<ClassFunction, ChartabError> {
        if quotient.group.order() != self.classes.group_order() || quotient.projection.len() != parent.group_order() {
            return Err(ChartabError::GroupMismatch);
        }
        let values = (0..parent.len())
            .map(|k| self.at(quotient.projection[parent.representative(k)]).clone())
            .collect();
        Ok(ClassFunction {
            classes: Arc::clone(parent),
            values,
        })
    }

    /// `{g : self(g) = self(1)}`, checked to be a normal subgroup of `g`.
    pub fn kernel(&self, g: &Group) -> Result<Subgroup, ChartabError> {
        if g.order() != self.classes.group_order() {
            return Err(ChartabError::GroupMismatch);
        }
        let members: Vec<usize> = g.elements().filter(|&x| *self.at(x) == self.values[0]).collect();
        if !g.is_closed(&members) {
            return Err(ChartabError::LiftFailure("kernel is not a subgroup".into()));
        }
        Ok(Subgroup::from_members(g.order(), members))
    }
}

/// A subgroup together with its own class structure, ready for restriction.
#[derive(Clone, Debug)]
pub struct Restriction {
    pub group: Group,
    /// Subgroup element index to parent element index.
    pub embedding: Vec<usize>,
    pub classes: Arc<ConjugacyClasses>,
    parent_order: usize,
}

impl Restriction {
    pub fn new(g: &Group, h: &Subgroup) -> Self {
        let (group, embedding) = g.subgroup_as_group(h);
        let classes = Arc::new(ConjugacyClasses::new(&group));
        Restriction {
            group,
            embedding,
            classes,
            parent_order: g.order(),
        }
    }
}

/// The irreducible characters of a group, trivial character first, then by
/// degree and the text of their values.
#[derive(Clone, Debug)]
pub struct CharacterTable {
    classes: Arc<ConjugacyClasses>,
    irreducibles: Vec<Character>,
    exponent: u64,
}

impl CharacterTable {
    /// Dixon's algorithm with the default seed.
    pub fn compute(g: &Group) -> Result<Self, ChartabError> {
        Self::compute_with_seed(g, Arc::new(ConjugacyClasses::new(g)), DEFAULT_SEED)
    }

    pub fn compute_with_seed(g: &Group, classes: Arc<ConjugacyClasses>, seed: u64) -> Result<Self, ChartabError> {
        if g.order() > DEFAULT_ELEMENT_CAP {
            return Err(ChartabError::TooLarge {
                order: g.order(),
                cap: DEFAULT_ELEMENT_CAP,
            });
        }
        let (_, rows) = dixon::irreducible_values(g, &classes, seed)?;
        Self::from_rows(g, classes, rows)
    }

    /// Sorts, wraps and verifies raw value rows.
    fn from_rows(g: &Group, classes: Arc<ConjugacyClasses>, rows: Vec<Vec<Cyclotomic>>) -> Result<Self, ChartabError> {
        let mut keyed: Vec<(bool, u64, Vec<String>, Vec<Cyclotomic>)> = rows
            .into_iter()
            .map(|row| {
                let trivial = row.iter().all(Cyclotomic::is_one);
                let degree = row[0].as_integer().unwrap_or(0) as u64;
                let text = row.iter().map(|v| v.to_string()).collect();
                (!trivial, degree, text, row)
            })
            .collect();
        keyed.sort_by(|a, b| (a.1, a.0, &a.2).cmp(&(b.1, b.0, &b.2)));
        let irreducibles = keyed
            .into_iter()
            .map(|(_, _, _, values)| ClassFunction {
                classes: Arc::clone(&classes),
                values,
            })
            .collect();
        let table = CharacterTable {
            classes,
            irreducibles,
            exponent: g.exponent(),
        };
        table.verify().map_err(ChartabError::LiftFailure)?;
        Ok(table)
    }

    pub fn classes(&self) -> &Arc<ConjugacyClasses> {
        &self.classes
    }

    pub fn irreducibles(&self) -> &[Character] {
        &self.irreducibles
    }

    pub fn character(&self, i: usize) -> &Character {
        &self.irreducibles[i]
    }

    pub fn len(&self) -> usize {
        self.irreducibles.len()
    }

    pub fn is_empty(&self) -> bool {
        self.irreducibles.is_empty()
    }

    pub fn group_order(&self) -> usize {
        self.classes.group_order()
    }

    pub fn exponent(&self) -> u64 {
        self.exponent
    }

    pub fn degrees(&self) -> Vec<u64> {
        self.irreducibles.iter().map(|c| c.degree().unwrap_or(0)).collect()
    }

    /// Index of the trivial character (always 0).
    pub fn trivial_index(&self) -> usize {
        0
    }

    /// Exact check of both orthogonality relations, degree divisibility,
    /// and the count of irreducibles.
    pub fn verify(&self) -> Result<(), String> {
        let r = self.classes.len();
        let n = self.group_order() as i64;
        if self.irreducibles.len() != r {
            return Err(format!("{} characters for {r} classes", self.irreducibles.len()));
        }
        if !self.irreducibles.first().is_some_and(ClassFunction::is_trivial) {
            return Err("first character is not trivial".into());
        }
        for (i, chi) in self.irreducibles.iter().enumerate() {
            let d = chi.degree().ok_or_else(|| format!("character {i} has no positive degree"))?;
            if !(n as u64).is_multiple_of(d) {
                return Err(format!("degree {d} of character {i} does not divide {n}"));
            }
        }
        let conj: Vec<Vec<Cyclotomic>> = self
            .irreducibles
            .iter()
            .map(|c| c.values.iter().map(Cyclotomic::conj).collect())
            .collect();
        for i in 0..r {
            for j in i..r {
                let terms: Vec<Cyclotomic> = (0..r)
                    .map(|k| {
                        let size = Cyclotomic::from_integer(self.classes.size(k) as i64);
                        &(&self.irreducibles[i].values[k] * &conj[j][k]) * &size
                    })
                    .collect();
                let expect = if i == j { n } else { 0 };
                if Cyclotomic::sum(&terms) != Cyclotomic::from_integer(expect) {
                    return Err(format!("row orthogonality fails for characters {i}, {j}"));
                }
            }
        }
        for k in 0..r {
            for l in k..r {
                let terms: Vec<Cyclotomic> = (0..r)
                    .map(|i| &self.irreducibles[i].values[k] * &conj[i][l])
                    .collect();
                let expect = if k == l { self.classes.centralizer_order(k) as i64 } else { 0 };
                if Cyclotomic::sum(&terms) != Cyclotomic::from_integer(expect) {
                    return Err(format!("column orthogonality fails for classes {k}, {l}"));
                }
            }
        }
        Ok(())
    }

    pub fn to_record(&self) -> TableRecord {
        TableRecord {
            order: self.group_order(),
            exponent: self.exponent,
            classes: (0..self.classes.len())
                .map(|k| ClassRecord {
                    representative: self.classes.representative(k),
                    size: self.classes.size(k),
                    element_order: self.classes.rep_order(k),
                })
                .collect(),
            characters: self
                .irreducibles
                .iter()
                .map(|c| c.values.iter().map(|v| v.to_string()).collect())
                .collect(),
        }
    }

    /// Rebuilds a table from its record, checking it against `g` and
    /// re-verifying orthogonality.
    pub fn from_record(g: &Group, classes: Arc<ConjugacyClasses>, record: &TableRecord) -> Result<Self, ChartabError> {
        let fresh = CharacterTable {
            classes: Arc::clone(&classes),
            irreducibles: Vec::new(),
            exponent: g.exponent(),
        }
        .to_record();
        if record.order != fresh.order || record.exponent != fresh.exponent || record.classes != fresh.classes {
            return Err(ChartabError::Corrupt("class data differs".into()));
        }
        let mut irreducibles = Vec::with_capacity(record.characters.len());
        for row in &record.characters {
            let values = row
                .iter()
                .map(|s| s.parse::<Cyclotomic>())
                .collect::<Result<Vec<_>, _>>()
                .map_err(|e| ChartabError::Corrupt(e.to_string()))?;
            irreducibles.push(ClassFunction::new(Arc::clone(&classes), values).map_err(|_| {
                ChartabError::Corrupt("row length differs from class count".into())
            })?);
        }
        let table = CharacterTable {
            classes,
            irreducibles,
            exponent: g.exponent(),
        };
        table.verify().map_err(ChartabError::Corrupt)?;
        if table.to_record() != *record {
            return Err(ChartabError::Corrupt("rows are not in canonical order".into()));
        }
        Ok(table)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassRecord {
    pub representative: usize,
    pub size: usize,
    pub element_order: u64,
}

/// Serializable form of a character table.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableRecord {
    pub order: usize,
    pub exponent: u64,
    pub classes: Vec<ClassRecord>,
    pub characters: Vec<Vec<String>>,
}
