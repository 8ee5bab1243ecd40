//! Dixon's method: simultaneous eigenvectors of the class matrices over a
//! prime field F_q with `q = 1 mod exp(G)`, then an exact lift of each value
//! to Z[zeta_e] by counting eigenvalue multiplicities.

use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::modp::Fq;
use super::ChartabError;
use crate::arith;
use crate::cyclo::{Cyclotomic, Rational};
use crate::group::{ConjugacyClasses, Group};

/// Attempts at a random splitting combination before giving up on a subspace.
const MAX_SPLIT_ATTEMPTS: usize = 200;

/// `a[i][j][k] = #{(x, y) in K_i x K_j : xy = g_k}` for the fixed representative `g_k`.
pub fn class_multiplication_coefficients(g: &Group, classes: &ConjugacyClasses) -> Vec<Vec<Vec<u64>>> {
    let r = classes.len();
    let mut a = vec![vec![vec![0u64; r]; r]; r];
    for (i, ki) in classes.classes().iter().enumerate() {
        for &x in &ki.members {
            let xinv = g.inv(x);
            for k in 0..r {
                let y = g.mul(xinv, classes.representative(k));
                a[i][classes.class_of(y)][k] += 1;
            }
        }
    }
    a
}

/// Least prime `q = 1 mod e` with `q >= 2 ceil(sqrt(n)) + 1`.
pub fn dixon_prime(order: usize, exponent: u64) -> u64 {
    let n = order as u64;
    let mut root = arith::isqrt(n);
    if root * root < n {
        root += 1;
    }
    let start = 2 * root + 1;
    let mut q = start.div_ceil(exponent) * exponent + 1;
    if q - exponent >= start {
        q -= exponent;
    }
    while !arith::is_prime(q) {
        q += exponent;
    }
    q
}

/// Irreducible characters as value vectors over the classes, unsorted.
pub(super) fn irreducible_values(
    g: &Group,
    classes: &Arc<ConjugacyClasses>,
    seed: u64,
) -> Result<(u64, Vec<Vec<Cyclotomic>>), ChartabError> {
    let n = g.order();
    let r = classes.len();
    let e = g.exponent();
    let q = dixon_prime(n, e);
    let f = Fq { q };
    let coeffs = class_multiplication_coefficients(g, classes);
    let mats: Vec<Vec<Vec<u64>>> = coeffs
        .iter()
        .map(|m| m.iter().map(|row| row.iter().map(|&x| x % q).collect()).collect())
        .collect();

    let eigenvectors = simultaneous_eigenvectors(f, &mats, r, seed)?;

    let generator = arith::primitive_root(q);
    let zeta_e = f.pow(generator, (q - 1) / e);
    let n_mod = n as u64 % q;
    let inv_sizes: Vec<u64> = (0..r).map(|k| f.inv(classes.size(k) as u64)).collect();
    let powers: Vec<Vec<usize>> = (0..r)
        .map(|k| (0..classes.rep_order(k)).map(|j| classes.power_class(g, k, j)).collect())
        .collect();

    let mut rows = Vec::with_capacity(r);
    for w in eigenvectors {
        let w0 = f.inv(w[0]);
        let omega: Vec<u64> = w.iter().map(|&x| f.mul(x, w0)).collect();
        let s = (0..r).fold(0, |acc, k| {
            let t = f.mul(f.mul(omega[k], omega[classes.inverse_class(k)]), inv_sizes[k]);
            f.add(acc, t)
        });
        if s == 0 {
            return Err(ChartabError::LiftFailure("degenerate norm in eigenvector".into()));
        }
        let target = f.mul(n_mod, f.inv(s));
        let degree = (1..=arith::isqrt(n as u64))
            .find(|&d| (n as u64).is_multiple_of(d) && f.mul(d % q, d % q) == target)
            .ok_or_else(|| ChartabError::LiftFailure("no admissible degree".into()))?;
        let values_mod: Vec<u64> = (0..r)
            .map(|k| f.mul(f.mul(omega[k], degree % q), inv_sizes[k]))
            .collect();

        let mut row = Vec::with_capacity(r);
        for k in 0..r {
            let o = classes.rep_order(k);
            let zeta_o = f.pow(zeta_e, e / o);
            let zeta_o_inv = f.inv(zeta_o);
            let o_inv = f.inv(o % q);
            let mut mult = vec![Rational::from_integer(0.into()); o as usize];
            let mut total = 0u64;
            for (l, slot) in mult.iter_mut().enumerate() {
                let step = f.pow(zeta_o_inv, l as u64);
                let mut acc = 0u64;
                let mut tw = 1u64;
                for &pc in &powers[k] {
                    acc = f.add(acc, f.mul(values_mod[pc], tw));
                    tw = f.mul(tw, step);
                }
                let m_l = f.mul(acc, o_inv);
                if m_l > degree {
                    return Err(ChartabError::LiftFailure(format!(
                        "eigenvalue multiplicity {m_l} exceeds degree {degree} on class {k}"
                    )));
                }
                total += m_l;
                *slot = Rational::from_integer(m_l.into());
            }
            if total != degree {
                return Err(ChartabError::LiftFailure(format!(
                    "multiplicities on class {k} sum to {total}, expected {degree}"
                )));
            }
            row.push(Cyclotomic::from_dense(o, mult));
        }
        rows.push(row);
    }
    Ok((q, rows))
}

/// Splits F_q^r into common eigenlines of all `mats` (as column-vector actions).
fn simultaneous_eigenvectors(
    f: Fq,
    mats: &[Vec<Vec<u64>>],
    r: usize,
    seed: u64,
) -> Result<Vec<Vec<u64>>, ChartabError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let identity: Vec<Vec<u64>> = (0..r)
        .map(|i| (0..r).map(|j| u64::from(i == j)).collect())
        .collect();
    let mut pending = vec![identity];
    let mut lines = Vec::with_capacity(r);
    // deterministic first pass: each single class matrix in order
    for m in mats.iter().skip(1) {
        pending = pending
            .into_iter()
            .flat_map(|space| {
                if space.len() == 1 {
                    vec![space]
                } else {
                    split(f, m, &space).unwrap_or_else(|| vec![space])
                }
            })
            .collect();
    }
    while let Some(space) = pending.pop() {
        if space.len() == 1 {
            lines.push(space.into_iter().next().expect("one vector"));
            continue;
        }
        let mut attempts = 0;
        loop {
            attempts += 1;
            if attempts > MAX_SPLIT_ATTEMPTS {
                return Err(ChartabError::LiftFailure(format!(
                    "could not split a {}-dimensional eigenspace",
                    space.len()
                )));
            }
            let combo = random_combination(f, mats, r, &mut rng);
            if let Some(parts) = split(f, &combo, &space) {
                pending.extend(parts);
                break;
            }
        }
    }
    Ok(lines)
}

fn random_combination(f: Fq, mats: &[Vec<Vec<u64>>], r: usize, rng: &mut ChaCha8Rng) -> Vec<Vec<u64>> {
    let mut out = vec![vec![0u64; r]; r];
    for m in mats {
        let c = rng.gen_range(0..f.q);
        for (orow, mrow) in out.iter_mut().zip(m) {
            for (o, x) in orow.iter_mut().zip(mrow) {
                *o = f.add(*o, f.mul(c, *x));
            }
        }
    }
    out
}

/// Eigenspaces of `a` restricted to the invariant subspace spanned by
/// `space`, or `None` if `a` acts as a scalar there.
fn split(f: Fq, a: &[Vec<u64>], space: &[Vec<u64>]) -> Option<Vec<Vec<Vec<u64>>>> {
    let images: Vec<Vec<u64>> = space.iter().map(|b| f.mat_vec(a, b)).collect();
    let mut parts = Vec::new();
    let mut found = 0;
    for lambda in 0..f.q {
        let cols: Vec<Vec<u64>> = space
            .iter()
            .zip(&images)
            .map(|(b, ab)| ab.iter().zip(b).map(|(x, y)| f.sub(*x, f.mul(lambda, *y))).collect())
            .collect();
        let kernel = f.kernel_of_columns(&cols);
        if kernel.is_empty() {
            continue;
        }
        if kernel.len() == space.len() {
            return None;
        }
        found += kernel.len();
        let vectors: Vec<Vec<u64>> = kernel
            .iter()
            .map(|c| {
                let mut v = vec![0u64; space[0].len()];
                for (ct, b) in c.iter().zip(space) {
                    for (vi, bi) in v.iter_mut().zip(b) {
                        *vi = f.add(*vi, f.mul(*ct, *bi));
                    }
                }
                v
            })
            .collect();
        parts.push(vectors);
        if found == space.len() {
            break;
        }
    }
    (found == space.len()).then_some(parts)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::DEFAULT_ELEMENT_CAP;

    fn s3() -> Group {
        Group::from_permutations(3, &[vec![2, 1, 3], vec![2, 3, 1]], DEFAULT_ELEMENT_CAP).unwrap()
    }

    #[test]
    fn prime_choice() {
        // |S3| = 6, exp = 6: start at 2*3+1 = 7, and 7 = 1 mod 6
        assert_eq!(dixon_prime(6, 6), 7);
        // trivial group: start 3, exponent 1
        assert_eq!(dixon_prime(1, 1), 3);
        // C2: start 5
        assert_eq!(dixon_prime(2, 2), 5);
        // S5: 2*11+1 = 23, exp 60: 61
        assert_eq!(dixon_prime(120, 60), 61);
        for (n, e) in [(720usize, 60u64), (24, 12), (20, 20), (21, 21)] {
            let q = dixon_prime(n, e);
            assert!(arith::is_prime(q) && q % e == 1 && q * q > 4 * n as u64);
        }
    }

    #[test]
    fn class_coefficients_brute_force() {
        let g = s3();
        let cc = ConjugacyClasses::new(&g);
        let a = class_multiplication_coefficients(&g, &cc);
        let r = cc.len();
        for i in 0..r {
            for j in 0..r {
                // sum_k a_ijk |K_k| = |K_i||K_j|
                let s: u64 = (0..r).map(|k| a[i][j][k] * cc.size(k) as u64).sum();
                assert_eq!(s, (cc.size(i) * cc.size(j)) as u64);
                let expected = if j == cc.inverse_class(i) { cc.size(i) as u64 } else { 0 };
                assert_eq!(a[i][j][0], expected);
                for k in 0..r {
                    let brute = cc.class(i).members.iter().flat_map(|&x| {
                        cc.class(j).members.iter().map(move |&y| (x, y))
                    })
                    .filter(|&(x, y)| g.mul(x, y) == cc.representative(k))
                    .count() as u64;
                    assert_eq!(a[i][j][k], brute);
                }
            }
        }
        // transpositions squared hit the identity three times
        assert_eq!(a[1][1][0], 3);
    }

    #[test]
    fn c2_coefficients() {
        let g = Group::from_cayley(&[vec![0, 1], vec![1, 0]]).unwrap();
        let cc = ConjugacyClasses::new(&g);
        let a = class_multiplication_coefficients(&g, &cc);
        assert_eq!(a[1][1][0], 1);
        assert_eq!(a[0][0][0], 1);
    }
}
