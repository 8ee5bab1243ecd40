use std::sync::Arc;

use blocklab::arith;
use blocklab::blocks::{block_partition, block_partition_with, principal_block, Block};
use blocklab::catalog;
use blocklab::chartab::CharacterTable;
use blocklab::cyclo::{Cyclotomic, IdealEmbedding};
use blocklab::group::{ConjugacyClasses, Group};

const PRIMES: [u64; 4] = [2, 3, 5, 7];

fn tables() -> Vec<(&'static str, Group, CharacterTable)> {
    catalog::entries()
        .iter()
        .map(|e| {
            let g = e.build().unwrap();
            let t = CharacterTable::compute(&g).unwrap();
            (e.name, g, t)
        })
        .collect()
}

fn partition_of(blocks: &[Block]) -> Vec<Vec<usize>> {
    let mut parts: Vec<Vec<usize>> = blocks.iter().map(|b| b.character_indices()).collect();
    parts.sort();
    parts
}

/// Blocks as connected components of the graph linking characters whose
/// product summed over the p-regular elements is nonzero.
fn linkage_oracle(g: &Group, t: &CharacterTable, p: u64) -> Vec<Vec<usize>> {
    let regular = g.p_regular_elements(p);
    let r = t.len();
    let mut parent: Vec<usize> = (0..r).collect();
    fn root(parent: &mut [usize], x: usize) -> usize {
        if parent[x] == x {
            x
        } else {
            let r = root(parent, parent[x]);
            parent[x] = r;
            r
        }
    }
    for i in 0..r {
        for j in i + 1..r {
            let terms: Vec<Cyclotomic> = regular
                .iter()
                .map(|&x| t.character(i).at(x) * &t.character(j).at(x).conj())
                .collect();
            if !Cyclotomic::sum(&terms).is_zero() {
                let (a, b) = (root(&mut parent, i), root(&mut parent, j));
                parent[a] = b;
            }
        }
    }
    let mut parts: Vec<Vec<usize>> = Vec::new();
    let roots: Vec<usize> = (0..r).map(|i| root(&mut parent, i)).collect();
    for i in 0..r {
        if let Some(part) = parts.iter_mut().find(|p: &&mut Vec<usize>| roots[p[0]] == roots[i]) {
            part.push(i);
        } else {
            parts.push(vec![i]);
        }
    }
    parts.sort();
    parts
}

#[test]
fn partitions_match_the_linkage_oracle_and_are_well_formed() {
    for (name, g, t) in tables() {
        for p in PRIMES {
            let blocks = block_partition(&t, p).unwrap();
            let parts = partition_of(&blocks);
            let mut all: Vec<usize> = parts.concat();
            all.sort();
            assert_eq!(all, (0..t.len()).collect::<Vec<_>>(), "{name} p={p}");
            assert_eq!(parts, linkage_oracle(&g, &t, p), "{name} p={p}");
            assert_eq!(blocks.iter().filter(|b| b.principal).count(), 1);
            assert!(principal_block(&blocks).contains(0));

            let a = arith::valuation(g.order() as u64, p);
            for b in &blocks {
                assert!(b.members.iter().any(|m| m.height == 0));
                let singleton_top = b.members.len() == 1 && arith::valuation(b.members[0].degree, p) == a;
                assert_eq!(b.defect == 0, singleton_top, "{name} p={p}");
            }
            if !(g.order() as u64).is_multiple_of(p) {
                assert!(blocks.iter().all(|b| b.defect == 0 && b.members.len() == 1));
            }
        }
    }
}

#[test]
fn partition_does_not_depend_on_the_ideal() {
    let mut compared = 0;
    for (name, _, t) in tables() {
        for p in PRIMES {
            let Some(second) = IdealEmbedding::with_factor_rank(p, t.exponent(), 1) else {
                continue;
            };
            let first = block_partition(&t, p).unwrap();
            let other = block_partition_with(&t, p, &second).unwrap();
            assert_eq!(first, other, "{name} p={p}");
            compared += 1;
        }
    }
    assert!(compared > 10);
}

#[test]
fn principal_block_is_inflated_from_the_complement_quotient() {
    let mut checked = 0;
    for (name, g, t) in tables() {
        for p in PRIMES {
            let Some(k) = g.normal_p_complement(p) else { continue };
            let quotient = g.quotient(&k).unwrap();
            let qt = CharacterTable::compute(&quotient.group).unwrap();
            let classes = Arc::new(ConjugacyClasses::new(&g));
            let mut inflated: Vec<Vec<String>> = qt
                .irreducibles()
                .iter()
                .map(|c| c.inflate(&quotient, &classes).unwrap().values().iter().map(|v| v.to_string()).collect())
                .collect();
            let blocks = block_partition(&t, p).unwrap();
            let mut principal: Vec<Vec<String>> = principal_block(&blocks)
                .character_indices()
                .iter()
                .map(|&i| t.character(i).values().iter().map(|v| v.to_string()).collect())
                .collect();
            inflated.sort();
            principal.sort();
            assert_eq!(principal, inflated, "{name} p={p}");
            checked += 1;
        }
    }
    assert!(checked >= 20);
}
