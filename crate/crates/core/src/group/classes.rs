use super::Group;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConjugacyClass {
    /// Smallest member index.
    pub representative: usize,
    pub members: Vec<usize>,
}

/// Conjugacy classes sorted by (order of representative, size, smallest member).
/// Class 0 is always the identity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConjugacyClasses {
    classes: Vec<ConjugacyClass>,
    class_of: Vec<usize>,
    rep_orders: Vec<u64>,
    inverse_class: Vec<usize>,
    group_order: usize,
}

impl ConjugacyClasses {
    pub fn new(g: &Group) -> Self {
        let n = g.order();
        let mut seen = vec![false; n];
        let mut classes = Vec::new();
        for x in 0..n {
            if seen[x] {
                continue;
            }
            let mut members: Vec<usize> = Vec::new();
            for y in 0..n {
                let c = g.conjugate(x, y);
                if !seen[c] {
                    seen[c] = true;
                    members.push(c);
                }
            }
            members.sort_unstable();
            classes.push(ConjugacyClass {
                representative: members[0],
                members,
            });
        }
        classes.sort_by_key(|c| (g.element_order(c.representative), c.members.len(), c.representative));

        let mut class_of = vec![0; n];
        for (k, c) in classes.iter().enumerate() {
            for &m in &c.members {
                class_of[m] = k;
            }
        }
        let rep_orders = classes.iter().map(|c| g.element_order(c.representative)).collect();
        let inverse_class = classes
            .iter()
            .map(|c| class_of[g.inv(c.representative)])
            .collect();
        ConjugacyClasses {
            classes,
            class_of,
            rep_orders,
            inverse_class,
            group_order: n,
        }
    }

    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    pub fn classes(&self) -> &[ConjugacyClass] {
        &self.classes
    }

    pub fn class(&self, k: usize) -> &ConjugacyClass {
        &self.classes[k]
    }

    pub fn class_of(&self, g: usize) -> usize {
        self.class_of[g]
    }

    pub fn size(&self, k: usize) -> usize {
        self.classes[k].members.len()
    }

    pub fn representative(&self, k: usize) -> usize {
        self.classes[k].representative
    }

    pub fn rep_order(&self, k: usize) -> u64 {
        self.rep_orders[k]
    }

    /// Class containing the inverses of class `k`.
    pub fn inverse_class(&self, k: usize) -> usize {
        self.inverse_class[k]
    }

    pub fn group_order(&self) -> usize {
        self.group_order
    }

    pub fn centralizer_order(&self, k: usize) -> usize {
        self.group_order / self.size(k)
    }

    /// Class of `g_k^e` where `g_k` is the representative of class `k`.
    pub fn power_class(&self, g: &Group, k: usize, e: u64) -> usize {
        self.class_of[g.pow(self.representative(k), e)]
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::DEFAULT_ELEMENT_CAP;

    fn perm_group(degree: usize, gens: &[Vec<usize>]) -> Group {
        Group::from_permutations(degree, gens, DEFAULT_ELEMENT_CAP).unwrap()
    }

    #[test]
    fn trivial_group_has_one_class() {
        let g = Group::from_cayley(&[vec![0]]).unwrap();
        assert_eq!(ConjugacyClasses::new(&g).len(), 1);
    }

    #[test]
    fn s3_class_sizes() {
        let g = perm_group(3, &[vec![2, 1, 3], vec![2, 3, 1]]);
        let cc = ConjugacyClasses::new(&g);
        let sizes: Vec<usize> = (0..cc.len()).map(|k| cc.size(k)).collect();
        assert_eq!(sizes, vec![1, 3, 2]);
        assert_eq!(cc.representative(0), g.identity());
    }

    #[test]
    fn c6_is_all_singletons() {
        let g = perm_group(6, &[vec![2, 3, 4, 5, 6, 1]]);
        let cc = ConjugacyClasses::new(&g);
        assert_eq!(cc.len(), 6);
        assert!((0..6).all(|k| cc.size(k) == 1));
    }

    #[test]
    fn class_equation_and_partition() {
        let g = perm_group(5, &[vec![2, 3, 4, 5, 1], vec![2, 1, 3, 4, 5]]);
        let cc = ConjugacyClasses::new(&g);
        assert_eq!(cc.len(), 7);
        let mut covered = vec![0; g.order()];
        for k in 0..cc.len() {
            for &m in &cc.class(k).members {
                covered[m] += 1;
            }
            let rep = cc.representative(k);
            let cent = g.elements().filter(|&x| g.mul(x, rep) == g.mul(rep, x)).count();
            assert_eq!(cc.size(k) * cent, g.order());
        }
        assert!(covered.iter().all(|&c| c == 1));
    }
}
