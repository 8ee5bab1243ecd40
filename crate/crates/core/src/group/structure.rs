//! Subgroup machinery: centralizers, normalizers, Sylow subgroups,
//! p-parts of elements, normal p-complements and quotients.

use std::collections::VecDeque;

use super::{Group, GroupError, Subgroup};
use crate::arith;

/// The commuting factorisation `g = zy` with `z` a p-element and `y` p-regular.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PDecomposition {
    pub z: usize,
    pub y: usize,
}

/// A quotient group together with the projection from the parent.
#[derive(Clone, Debug)]
pub struct Quotient {
    pub group: Group,
    pub projection: Vec<usize>,
}

impl Group {
    /// Elements commuting with every element of `set`.
    pub fn centralizer(&self, set: &[usize]) -> Subgroup {
        Subgroup::from_members(
            self.order(),
            self.elements()
                .filter(|&g| set.iter().all(|&s| self.mul(g, s) == self.mul(s, g))),
        )
    }

    pub fn normalizer(&self, h: &Subgroup) -> Subgroup {
        Subgroup::from_members(
            self.order(),
            self.elements()
                .filter(|&g| h.members().iter().all(|&x| h.contains(self.conjugate(x, g)))),
        )
    }

    pub fn center(&self) -> Subgroup {
        let all: Vec<usize> = self.elements().collect();
        self.centralizer(&all)
    }

    pub fn is_normal(&self, h: &Subgroup) -> bool {
        self.elements()
            .all(|g| h.members().iter().all(|&x| h.contains(self.conjugate(x, g))))
    }

    /// The subgroup generated by `seed`.
    pub fn generated_closure(&self, seed: &[usize]) -> Subgroup {
        let mut mask = vec![false; self.order()];
        mask[self.identity()] = true;
        let mut queue = VecDeque::from([self.identity()]);
        while let Some(x) = queue.pop_front() {
            for &s in seed {
                let y = self.mul(x, s);
                if !mask[y] {
                    mask[y] = true;
                    queue.push_back(y);
                }
            }
        }
        Subgroup::from_members(self.order(), (0..self.order()).filter(|&i| mask[i]))
    }

    pub fn is_p_element(&self, g: usize, p: u64) -> bool {
        let o = self.element_order(g);
        arith::p_part(o, p) == o
    }

    pub fn is_p_regular(&self, g: usize, p: u64) -> bool {
        !self.element_order(g).is_multiple_of(p)
    }

    /// Elements of order prime to `p`, in index order.
    pub fn p_regular_elements(&self, p: u64) -> Vec<usize> {
        self.elements().filter(|&g| self.is_p_regular(g, p)).collect()
    }

    /// Nonidentity elements of `p`-power order, in index order.
    pub fn nonidentity_p_elements(&self, p: u64) -> Vec<usize> {
        self.elements()
            .filter(|&g| g != self.identity() && self.is_p_element(g, p))
            .collect()
    }

    /// A Sylow p-subgroup, grown from the smallest-index p-element by
    /// repeatedly adjoining the smallest p-element of the normalizer.
    pub fn sylow_subgroup(&self, p: u64) -> Subgroup {
        let target = arith::p_part(self.order() as u64, p) as usize;
        let mut current = self.trivial_subgroup();
        while current.order() < target {
            let normalizer = self.normalizer(&current);
            let next = normalizer
                .members()
                .iter()
                .copied()
                .find(|&x| !current.contains(x) && self.is_p_element(x, p))
                .expect("a non-Sylow p-subgroup is properly contained in its normalizer's p-part");
            let mut gens = current.members().to_vec();
            gens.push(next);
            current = self.generated_closure(&gens);
        }
        current
    }

    /// Splits `g` into its commuting p-part and p'-part.
    pub fn p_decompose(&self, g: usize, p: u64) -> PDecomposition {
        let order = self.element_order(g);
        let pa = arith::p_part(order, p);
        let m = order / pa;
        // z = g^(m t), y = g^(pa s) with t = m^{-1} mod pa, s = pa^{-1} mod m
        let t = arith::inv_mod(m % pa, pa).unwrap_or(0);
        let s = arith::inv_mod(pa % m, m).unwrap_or(0);
        PDecomposition {
            z: self.pow(g, (m * t) % order),
            y: self.pow(g, (pa * s) % order),
        }
    }

    /// The p-regular elements, if they form a subgroup (then a normal p-complement).
    pub fn normal_p_complement(&self, p: u64) -> Option<Subgroup> {
        let regular = self.p_regular_elements(p);
        if self.is_closed(&regular) {
            Some(Subgroup::from_members(self.order(), regular))
        } else {
            None
        }
    }

    /// True when `C_G(P) = N_G(P)` for the computed Sylow p-subgroup.
    pub fn burnside_hypothesis(&self, p: u64) -> bool {
        let sylow = self.sylow_subgroup(p);
        self.centralizer(sylow.members()) == self.normalizer(&sylow)
    }

    /// `O^p(G)`, generated by the p-regular elements.
    pub fn o_p_residual(&self, p: u64) -> Subgroup {
        self.generated_closure(&self.p_regular_elements(p))
    }

    /// All normal subgroups, as joins of normal closures of classes.
    pub fn normal_subgroups(&self) -> Vec<Subgroup> {
        let classes = super::ConjugacyClasses::new(self);
        let mut found: Vec<Subgroup> = vec![self.trivial_subgroup()];
        let closures: Vec<Subgroup> = classes
            .classes()
            .iter()
            .map(|c| self.generated_closure(&c.members))
            .collect();
        for c in closures {
            if !found.contains(&c) {
                found.push(c);
            }
        }
        let mut i = 0;
        while i < found.len() {
            for j in 0..i {
                let mut gens = found[i].members().to_vec();
                gens.extend_from_slice(found[j].members());
                let join = self.generated_closure(&gens);
                if !found.contains(&join) {
                    found.push(join);
                }
            }
            i += 1;
        }
        found.sort_by(|a, b| (a.order(), a.members()).cmp(&(b.order(), b.members())));
        found
    }

    /// Coset group `G/N` with its projection. Cosets are numbered by their
    /// smallest member.
    pub fn quotient(&self, normal: &Subgroup) -> Result<Quotient, GroupError> {
        if !self.is_normal(normal) {
            return Err(GroupError::NotNormal);
        }
        let n = self.order();
        let mut projection = vec![usize::MAX; n];
        let mut reps = Vec::new();
        for g in 0..n {
            if projection[g] != usize::MAX {
                continue;
            }
            let id = reps.len();
            reps.push(g);
            for &x in normal.members() {
                projection[self.mul(g, x)] = id;
            }
        }
        let rows: Vec<Vec<usize>> = reps
            .iter()
            .map(|&a| reps.iter().map(|&b| projection[self.mul(a, b)]).collect())
            .collect();
        let group = Group::from_cayley(&rows)?;
        Ok(Quotient { group, projection })
    }
}

impl Quotient {
    /// Image of a subgroup of the parent.
    pub fn image(&self, h: &Subgroup) -> Subgroup {
        Subgroup::from_members(
            self.group.order(),
            h.members().iter().map(|&g| self.projection[g]),
        )
    }

    /// Full preimage of a subgroup of the quotient.
    pub fn preimage(&self, h: &Subgroup) -> Subgroup {
        Subgroup::from_members(
            self.projection.len(),
            (0..self.projection.len()).filter(|&g| h.contains(self.projection[g])),
        )
    }
}
