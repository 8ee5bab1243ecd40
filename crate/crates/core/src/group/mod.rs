//! Finite groups given by a full composition table.
//!
//! Elements are indices `0..n`. Groups built from permutations are
//! enumerated breadth-first from the identity, multiplying on the right by
//! the generators in file order, so element numbering is reproducible.
//! Permutation products act left to right: `(x * y)(i) = y(x(i))`.

mod classes;
pub mod io;
mod structure;

use std::collections::{HashMap, VecDeque};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

pub use classes::{ConjugacyClass, ConjugacyClasses};
pub use structure::{PDecomposition, Quotient};

/// Default element cap for enumeration.
pub const DEFAULT_ELEMENT_CAP: usize = 20_000;

/// Groups up to this order get a full associativity check.
const FULL_ASSOCIATIVITY_LIMIT: usize = 256;
const SPOT_CHECK_TRIPLES: usize = 20_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GroupError {
    #[error("parse error on line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("generator {index} is not a permutation of 1..{degree}")]
    InvalidGenerator { index: usize, degree: usize },
    #[error("not a group: {0}")]
    NotAGroup(String),
    #[error("group has more than {cap} elements")]
    TooLarge { cap: usize },
    #[error("subgroup is not normal")]
    NotNormal,
}

/// A permutation stored as 0-based images.
pub type Perm = Vec<u32>;

#[derive(Clone, Debug)]
struct PermData {
    degree: usize,
    gens: Vec<Perm>,
    elements: Vec<Perm>,
}

#[derive(Clone, Debug)]
pub struct Group {
    n: usize,
    table: Vec<u32>,
    identity: usize,
    inverses: Vec<usize>,
    orders: Vec<u64>,
    perms: Option<PermData>,
}

/// A subgroup of some parent group, stored as a sorted member list.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subgroup {
    members: Vec<usize>,
    mask: Vec<bool>,
}

impl Subgroup {
    /// Builds a subgroup from a member set without checking closure.
    pub fn from_members(parent_order: usize, members: impl IntoIterator<Item = usize>) -> Self {
        let mut mask = vec![false; parent_order];
        for m in members {
            mask[m] = true;
        }
        let members = mask
            .iter()
            .enumerate()
            .filter_map(|(i, &b)| b.then_some(i))
            .collect();
        Subgroup { members, mask }
    }

    pub fn order(&self) -> usize {
        self.members.len()
    }

    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn contains(&self, g: usize) -> bool {
        self.mask.get(g).copied().unwrap_or(false)
    }

    pub fn is_subset_of(&self, other: &Subgroup) -> bool {
        self.members.iter().all(|&g| other.contains(g))
    }
}

impl Group {
    /// Builds a group from an `n x n` table of 0-based indices, checking the axioms.
    pub fn from_cayley(rows: &[Vec<usize>]) -> Result<Self, GroupError> {
        let n = rows.len();
        if n == 0 {
            return Err(GroupError::NotAGroup("empty table".into()));
        }
        let mut table = Vec::with_capacity(n * n);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(GroupError::NotAGroup(format!(
                    "row {i} has {} entries, expected {n}",
                    row.len()
                )));
            }
            for &x in row {
                if x >= n {
                    return Err(GroupError::NotAGroup(format!(
                        "entry {x} in row {i} is out of range"
                    )));
                }
                table.push(x as u32);
            }
        }
        Self::from_table(n, table, None)
    }

    /// Enumerates the group generated by permutations of `1..=degree`,
    /// each given as a 1-based image list.
    pub fn from_permutations(
        degree: usize,
        gens: &[Vec<usize>],
        cap: usize,
    ) -> Result<Self, GroupError> {
        let mut perms: Vec<Perm> = Vec::with_capacity(gens.len());
        for (index, g) in gens.iter().enumerate() {
            let mut seen = vec![false; degree];
            let ok = g.len() == degree
                && g.iter().all(|&x| {
                    if x == 0 || x > degree || seen[x - 1] {
                        false
                    } else {
                        seen[x - 1] = true;
                        true
                    }
                });
            if !ok {
                return Err(GroupError::InvalidGenerator { index, degree });
            }
            perms.push(g.iter().map(|&x| (x - 1) as u32).collect());
        }

        let identity: Perm = (0..degree as u32).collect();
        let mut elements = vec![identity.clone()];
        let mut index: HashMap<Perm, u32> = HashMap::from([(identity, 0)]);
        let mut queue = VecDeque::from([0usize]);
        while let Some(i) = queue.pop_front() {
            for s in &perms {
                let prod = compose(&elements[i], s);
                if !index.contains_key(&prod) {
                    if elements.len() >= cap {
                        return Err(GroupError::TooLarge { cap });
                    }
                    index.insert(prod.clone(), elements.len() as u32);
                    queue.push_back(elements.len());
                    elements.push(prod);
                }
            }
        }

        let n = elements.len();
        let mut table = Vec::with_capacity(n * n);
        for x in &elements {
            for y in &elements {
                table.push(index[&compose(x, y)]);
            }
        }
        let data = PermData {
            degree,
            gens: perms,
            elements,
        };
        Self::from_table(n, table, Some(data))
    }

    fn from_table(n: usize, table: Vec<u32>, perms: Option<PermData>) -> Result<Self, GroupError> {
        let at = |i: usize, j: usize| table[i * n + j] as usize;

        let identity = (0..n)
            .find(|&e| (0..n).all(|x| at(e, x) == x && at(x, e) == x))
            .ok_or_else(|| GroupError::NotAGroup("no two-sided identity".into()))?;

        let mut inverses = vec![usize::MAX; n];
        for (x, inv) in inverses.iter_mut().enumerate() {
            *inv = (0..n)
                .find(|&y| at(x, y) == identity && at(y, x) == identity)
                .ok_or_else(|| GroupError::NotAGroup(format!("element {x} has no inverse")))?;
        }

        let assoc = |a: usize, b: usize, c: usize| at(at(a, b), c) == at(a, at(b, c));
        if n <= FULL_ASSOCIATIVITY_LIMIT {
            for a in 0..n {
                for b in 0..n {
                    let ab = at(a, b);
                    for c in 0..n {
                        if at(ab, c) != at(a, at(b, c)) {
                            return Err(GroupError::NotAGroup(format!(
                                "({a}*{b})*{c} != {a}*({b}*{c})"
                            )));
                        }
                    }
                }
            }
        } else {
            let mut rng = ChaCha8Rng::seed_from_u64(n as u64);
            for _ in 0..SPOT_CHECK_TRIPLES {
                let (a, b, c) = (rng.gen_range(0..n), rng.gen_range(0..n), rng.gen_range(0..n));
                if !assoc(a, b, c) {
                    return Err(GroupError::NotAGroup(format!(
                        "({a}*{b})*{c} != {a}*({b}*{c})"
                    )));
                }
            }
        }

        let mut orders = vec![0u64; n];
        for (x, ord) in orders.iter_mut().enumerate() {
            let mut k = 1u64;
            let mut y = x;
            while y != identity {
                y = at(y, x);
                k += 1;
            }
            if !(n as u64).is_multiple_of(k) {
                return Err(GroupError::NotAGroup(format!(
                    "element {x} has order {k}, which does not divide {n}"
                )));
            }
            *ord = k;
        }

        Ok(Group {
            n,
            table,
            identity,
            inverses,
            orders,
            perms,
        })
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.n + b] as usize
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inverses[a]
    }

    pub fn element_order(&self, a: usize) -> u64 {
        self.orders[a]
    }

    pub fn pow(&self, a: usize, k: u64) -> usize {
        let k = k % self.orders[a];
        let mut acc = self.identity;
        for _ in 0..k {
            acc = self.mul(acc, a);
        }
        acc
    }

    /// `g^{-1} x g`.
    pub fn conjugate(&self, x: usize, g: usize) -> usize {
        self.mul(self.mul(self.inv(g), x), g)
    }

    pub fn exponent(&self) -> u64 {
        self.orders.iter().fold(1, |acc, &o| crate::arith::lcm(acc, o))
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.n).all(|a| (0..a).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.n
    }

    /// The composition table in row-major order.
    pub fn table(&self) -> &[u32] {
        &self.table
    }

    /// The permutation realising element `g`, for permutation groups.
    pub fn perm(&self, g: usize) -> Option<&[u32]> {
        self.perms.as_ref().map(|p| p.elements[g].as_slice())
    }

    pub fn perm_degree(&self) -> Option<usize> {
        self.perms.as_ref().map(|p| p.degree)
    }

    pub fn perm_generators(&self) -> Option<&[Perm]> {
        self.perms.as_ref().map(|p| p.gens.as_slice())
    }

    /// Looks up the element with the given 1-based image list.
    pub fn find_perm(&self, images: &[usize]) -> Option<usize> {
        let data = self.perms.as_ref()?;
        let target: Perm = images.iter().map(|&x| x as u32 - 1).collect();
        data.elements.iter().position(|p| *p == target)
    }

    /// Looks up an element given in cycle notation such as `(1 2 3)(4 5)`.
    pub fn find_cycles(&self, cycles: &str) -> Option<usize> {
        let degree = self.perm_degree()?;
        let mut images: Vec<usize> = (1..=degree).collect();
        for cycle in cycles.split(')') {
            let pts: Vec<usize> = cycle
                .trim_start_matches(|c: char| c == '(' || c.is_whitespace())
                .split_whitespace()
                .map(|t| t.parse().ok())
                .collect::<Option<_>>()?;
            for (k, &a) in pts.iter().enumerate() {
                if a == 0 || a > degree {
                    return None;
                }
                images[a - 1] = pts[(k + 1) % pts.len()];
            }
        }
        self.find_perm(&images)
    }

    /// Whole group as a subgroup of itself.
    pub fn whole(&self) -> Subgroup {
        Subgroup::from_members(self.n, 0..self.n)
    }

    pub fn trivial_subgroup(&self) -> Subgroup {
        Subgroup::from_members(self.n, [self.identity])
    }

    /// Returns true when `members` is closed under the group operation.
    pub fn is_closed(&self, members: &[usize]) -> bool {
        let mut mask = vec![false; self.n];
        for &m in members {
            mask[m] = true;
        }
        members
            .iter()
            .all(|&a| members.iter().all(|&b| mask[self.mul(a, b)]))
    }

    /// Realises a subgroup as a standalone group; the second component maps
    /// each new index to its element of `self`.
    pub fn subgroup_as_group(&self, h: &Subgroup) -> (Group, Vec<usize>) {
        let embedding: Vec<usize> = h.members().to_vec();
        let mut local = vec![usize::MAX; self.n];
        for (i, &g) in embedding.iter().enumerate() {
            local[g] = i;
        }
        let m = embedding.len();
        let mut table = Vec::with_capacity(m * m);
        for &a in &embedding {
            for &b in &embedding {
                table.push(local[self.mul(a, b)] as u32);
            }
        }
        let perms = self.perms.as_ref().map(|p| PermData {
            degree: p.degree,
            gens: Vec::new(),
            elements: embedding.iter().map(|&g| p.elements[g].clone()).collect(),
        });
        let group = Group::from_table(m, table, perms).expect("subgroup of a group is a group");
        (group, embedding)
    }
}

fn compose(x: &[u32], y: &[u32]) -> Perm {
    x.iter().map(|&i| y[i as usize]).collect()
}
