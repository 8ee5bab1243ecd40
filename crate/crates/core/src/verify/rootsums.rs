//! A deterministic family of sums of p-power roots of unity, each run
//! through [`p_power_root_sum_check`]; vanishing sums must have a term
//! count divisible by p.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::cyclo::{p_power_root_sum_check, Cyclotomic, RootSumOutcome, MAX_CONDUCTOR};

/// Upper bound on the number of polygon unions enumerated.
const POLYGON_BUDGET: u64 = 25_000;
const RANDOM_MULTISETS: usize = 300;
const RANDOM_UNIONS: usize = 300;

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct RootSumSummary {
    pub p: u64,
    /// Order of the roots used for polygon unions and random multisets.
    pub root_order: u64,
    /// All unions of one to three rotated regular p-gons.
    pub polygon_unions: usize,
    /// Order and maximal size of the exhaustively enumerated multisets.
    pub exhaustive_root_order: u64,
    pub exhaustive_max_terms: usize,
    pub exhaustive: usize,
    pub random: usize,
    pub examples: usize,
    pub vanishing: usize,
    pub nonvanishing: usize,
    pub violations: Vec<String>,
}

impl RootSumSummary {
    pub fn total(&self) -> usize {
        self.vanishing + self.nonvanishing
    }
}

/// The family for `p`, computed once per `(p, seed)` and shared.
pub fn root_sum_family(p: u64, seed: u64) -> Arc<RootSumSummary> {
    type Cell = Arc<OnceLock<Arc<RootSumSummary>>>;
    static CACHE: OnceLock<Mutex<HashMap<(u64, u64), Cell>>> = OnceLock::new();
    let cell = {
        let mut map = CACHE.get_or_init(Default::default).lock().unwrap();
        Arc::clone(map.entry((p, seed)).or_default())
    };
    Arc::clone(cell.get_or_init(|| Arc::new(compute(p, seed))))
}

struct Tally {
    summary: RootSumSummary,
}

impl Tally {
    /// Runs one sum; `must_vanish` marks sums known to be zero.
    fn run(&mut self, label: &str, terms: &[Cyclotomic], must_vanish: bool) {
        let p = self.summary.p;
        match p_power_root_sum_check(terms, p) {
            Ok(RootSumOutcome::Zero { count, divisible }) => {
                self.summary.vanishing += 1;
                if !divisible {
                    self.summary.violations.push(format!("{label}: {count} terms sum to zero"));
                }
            }
            Ok(RootSumOutcome::Nonzero { sum }) => {
                self.summary.nonvanishing += 1;
                if must_vanish {
                    self.summary.violations.push(format!("{label}: expected zero, got {sum}"));
                }
            }
            Err(e) => self.summary.violations.push(format!("{label}: {e}")),
        }
    }
}

fn roots(order: u64) -> Vec<Cyclotomic> {
    (0..order)
        .map(|j| Cyclotomic::root_of_unity(order, j as i64).expect("order within the conductor cap"))
        .collect()
}

/// Largest `k <= 3` with `p^k` under the conductor cap and at most
/// [`POLYGON_BUDGET`] unions of three polygons.
fn polygon_exponent(p: u64) -> u32 {
    (1..=3u32)
        .rev()
        .find(|&k| {
            let cosets = p.pow(k - 1);
            p.pow(k) <= MAX_CONDUCTOR && multisets(cosets, 3) <= POLYGON_BUDGET
        })
        .unwrap_or(1)
}

/// Number of multisets of size 1..=s from n items.
fn multisets(n: u64, s: u64) -> u64 {
    (1..=s).map(|k| binomial(n + k - 1, k)).sum()
}

fn binomial(n: u64, k: u64) -> u64 {
    (0..k).fold(1u64, |acc, i| acc.saturating_mul(n - i) / (i + 1))
}

fn exhaustive_bounds(p: u64) -> (u64, usize) {
    match p {
        2 => (8, 6),
        3 => (9, 9),
        5 => (5, 15),
        _ => (p, p as usize + 2),
    }
}

fn compute(p: u64, seed: u64) -> RootSumSummary {
    let k = polygon_exponent(p);
    let order = p.pow(k);
    let (ex_order, ex_terms) = exhaustive_bounds(p);
    let mut t = Tally {
        summary: RootSumSummary {
            p,
            root_order: order,
            exhaustive_root_order: ex_order,
            exhaustive_max_terms: ex_terms,
            ..Default::default()
        },
    };

    let z = roots(order);
    let cosets = (order / p) as usize;
    let polygon = |c: usize| -> Vec<Cyclotomic> { (0..p as usize).map(|i| z[c + i * cosets].clone()).collect() };
    for a in 0..cosets {
        t.run(&format!("polygon {a}"), &polygon(a), true);
        for b in a..cosets {
            let mut two = polygon(a);
            two.extend(polygon(b));
            t.run(&format!("polygons {a},{b}"), &two, true);
            for c in b..cosets {
                let mut three = two.clone();
                three.extend(polygon(c));
                t.run(&format!("polygons {a},{b},{c}"), &three, true);
            }
        }
    }
    t.summary.polygon_unions = t.summary.total();

    let before = t.summary.total();
    let ez = roots(ex_order);
    let mut stack: Vec<usize> = Vec::new();
    enumerate_multisets(&ez, ex_terms, 0, &mut stack, &mut t);
    t.summary.exhaustive = t.summary.total() - before;

    let before = t.summary.total();
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ p.rotate_left(32));
    for i in 0..RANDOM_MULTISETS {
        let len = rng.gen_range(1..=3 * p as usize);
        let terms: Vec<Cyclotomic> = (0..len).map(|_| z[rng.gen_range(0..z.len())].clone()).collect();
        t.run(&format!("random multiset {i}"), &terms, false);
    }
    for i in 0..RANDOM_UNIONS {
        let level = rng.gen_range(1..=k);
        let stride = p.pow(level - 1) as usize;
        let step = (order / p.pow(level)) as usize;
        let mut terms = Vec::new();
        for _ in 0..rng.gen_range(1..=4) {
            let c = rng.gen_range(0..stride);
            terms.extend((0..p as usize).map(|j| z[(c + j * stride) * step].clone()));
        }
        terms.shuffle(&mut rng);
        t.run(&format!("random polygon union {i}"), &terms, true);
    }
    t.summary.random = t.summary.total() - before;

    let before = t.summary.total();
    let r = |n: u64, k: i64| Cyclotomic::root_of_unity(n, k).expect("small conductor");
    if p == 3 {
        t.run("example 1, z3, z3^2", &[Cyclotomic::one(), r(3, 1), r(3, 2)], true);
    }
    if p == 2 {
        let m1 = Cyclotomic::from_integer(-1);
        t.run("example -1, -1", &[m1.clone(), m1.clone()], false);
        t.run("example z4, z4^3, 1, -1", &[r(4, 1), r(4, 3), Cyclotomic::one(), m1], true);
    }
    t.summary.examples = t.summary.total() - before;
    t.summary
}

/// Every nonempty multiset of at most `max` roots, as nondecreasing index lists.
fn enumerate_multisets(z: &[Cyclotomic], max: usize, from: usize, stack: &mut Vec<usize>, t: &mut Tally) {
    for i in from..z.len() {
        stack.push(i);
        let terms: Vec<Cyclotomic> = stack.iter().map(|&j| z[j].clone()).collect();
        t.run(&format!("multiset {stack:?} of order {}", z.len()), &terms, false);
        if stack.len() < max {
            enumerate_multisets(z, max, i, stack, t);
        }
        stack.pop();
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn family_sizes() {
        assert_eq!(polygon_exponent(2), 3);
        assert_eq!(polygon_exponent(7), 3);
        assert_eq!(polygon_exponent(11), 2);
        assert_eq!(multisets(4, 3), 4 + 10 + 20);
        let s = root_sum_family(2, 1);
        assert!(s.violations.is_empty(), "{:?}", s.violations);
        assert_eq!(s.polygon_unions, 34);
        // multisets of size 1..=6 from 8 roots
        assert_eq!(s.exhaustive as u64, multisets(8, 6));
        assert_eq!(s.examples, 2);
        assert!(s.vanishing > s.polygon_unions);
    }
}
