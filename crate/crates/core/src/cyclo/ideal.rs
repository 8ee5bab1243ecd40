//! Reduction of cyclotomic integers modulo a maximal ideal over a prime `p`.
//!
//! For a conductor `n = p^a n'` with `p` prime to `n'`, the residue field of
//! any prime of Z[zeta_n] over `p` is F_{p^f}, `f` the order of `p` mod `n'`.
//! We realise it as F_p[x]/(h) for an irreducible factor `h` of the n'-th
//! cyclotomic polynomial over F_p and send `zeta_{n'}` to `x`; the p-power
//! part of `zeta_n` goes to 1.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{cyclotomic_poly, CycloError, Cyclotomic};
use crate::arith;

/// Element of F_{p^f}: coefficients over F_p, constant term first, length `f`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FfElem(pub Vec<u64>);

/// The field F_p[x]/(modulus) for a monic irreducible `modulus`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteField {
    p: u64,
    modulus: Vec<u64>,
}

impl FiniteField {
    pub fn new(p: u64, modulus: Vec<u64>) -> Self {
        debug_assert_eq!(modulus.last(), Some(&1));
        FiniteField { p, modulus }
    }

    pub fn characteristic(&self) -> u64 {
        self.p
    }

    pub fn degree(&self) -> usize {
        self.modulus.len() - 1
    }

    /// Monic defining polynomial, constant term first.
    pub fn modulus(&self) -> &[u64] {
        &self.modulus
    }

    pub fn zero(&self) -> FfElem {
        FfElem(vec![0; self.degree()])
    }

    pub fn one(&self) -> FfElem {
        self.constant(1)
    }

    pub fn constant(&self, c: u64) -> FfElem {
        let mut v = vec![0; self.degree()];
        v[0] = c % self.p;
        FfElem(v)
    }

    /// The class of `x`.
    pub fn generator(&self) -> FfElem {
        self.reduce(vec![0, 1])
    }

    pub fn add(&self, a: &FfElem, b: &FfElem) -> FfElem {
        FfElem(a.0.iter().zip(&b.0).map(|(x, y)| (x + y) % self.p).collect())
    }

    pub fn mul(&self, a: &FfElem, b: &FfElem) -> FfElem {
        self.reduce(poly_mul(&a.0, &b.0, self.p))
    }

    pub fn scale(&self, a: &FfElem, c: u64) -> FfElem {
        FfElem(a.0.iter().map(|x| arith::mul_mod(*x, c % self.p, self.p)).collect())
    }

    fn reduce(&self, a: Vec<u64>) -> FfElem {
        let mut r = poly_rem(a, &self.modulus, self.p);
        r.resize(self.degree(), 0);
        FfElem(r)
    }
}

/// A ring homomorphism Z[zeta_n] -> F_{p^f} whose kernel is a maximal ideal over `p`.
#[derive(Clone, Debug)]
pub struct IdealEmbedding {
    p: u64,
    n: u64,
    n_prime: u64,
    /// `zeta_n^k` maps to `x^{k * t mod n'}`.
    t: u64,
    field: FiniteField,
    powers: Vec<FfElem>,
}

impl IdealEmbedding {
    /// Embedding through the lexicographically least irreducible factor.
    pub fn new(p: u64, n: u64) -> Self {
        Self::with_factor_rank(p, n, 0).expect("the least factor always exists")
    }

    /// Embedding through the `rank`-th irreducible factor in lexicographic
    /// order of coefficient tuples `(c_0, ..., c_{f-1})`; `None` if there are
    /// fewer factors.
    pub fn with_factor_rank(p: u64, n: u64, rank: usize) -> Option<Self> {
        let n_prime = n / arith::p_part(n, p);
        let factors = cyclotomic_factors_mod_p(n_prime, p);
        let h = factors.into_iter().nth(rank)?;
        let field = FiniteField::new(p, h);
        let pa = n / n_prime;
        let t = arith::inv_mod(pa % n_prime, n_prime).unwrap_or(0);
        let x = field.generator();
        let mut powers = Vec::with_capacity(n_prime as usize);
        let mut cur = field.one();
        for _ in 0..n_prime {
            powers.push(cur.clone());
            cur = field.mul(&cur, &x);
        }
        Some(IdealEmbedding {
            p,
            n,
            n_prime,
            t,
            field,
            powers,
        })
    }

    pub fn prime(&self) -> u64 {
        self.p
    }

    pub fn conductor(&self) -> u64 {
        self.n
    }

    /// Residue degree `f`.
    pub fn residue_degree(&self) -> usize {
        self.field.degree()
    }

    pub fn field(&self) -> &FiniteField {
        &self.field
    }

    /// Image of `zeta_{n'}`, a root of the chosen factor.
    pub fn image_of_zeta(&self) -> &FfElem {
        &self.powers[1 % self.powers.len()]
    }

    /// Reduction of an algebraic integer whose conductor divides `n`.
    pub fn embed(&self, a: &Cyclotomic) -> Result<FfElem, CycloError> {
        if !a.is_algebraic_integer() {
            return Err(CycloError::NotIntegral(a.to_string()));
        }
        let c = a.conductor();
        if !self.n.is_multiple_of(c) {
            return Err(CycloError::ConductorMismatch {
                element: c,
                embedding: self.n,
            });
        }
        let stride = self.n / c;
        let p = BigInt::from(self.p);
        let mut acc = self.field.zero();
        for (j, coeff) in a.coeffs().iter().enumerate() {
            let r = coeff.to_integer().mod_floor(&p).to_u64().expect("residue fits");
            if r == 0 {
                continue;
            }
            let k = j as u64 * stride;
            let idx = arith::mul_mod(k % self.n_prime, self.t, self.n_prime) as usize;
            acc = self.field.add(&acc, &self.field.scale(&self.powers[idx], r));
        }
        Ok(acc)
    }
}

/// All monic irreducible factors of the `m`-th cyclotomic polynomial over
/// F_p (`p` prime to `m`), sorted lexicographically by coefficient tuple.
pub(crate) fn cyclotomic_factors_mod_p(m: u64, p: u64) -> Vec<Vec<u64>> {
    let phi: Vec<u64> = cyclotomic_poly(m)
        .iter()
        .map(|&c| c.rem_euclid(p as i64) as u64)
        .collect();
    let f = arith::multiplicative_order(p % m.max(1), m.max(1)) as usize;
    let mut rng = ChaCha8Rng::seed_from_u64(p ^ (m << 20));
    let mut out = Vec::new();
    equal_degree_split(phi, f, p, &mut rng, &mut out);
    out.sort();
    out
}

/// Cantor-Zassenhaus equal-degree splitting of a squarefree monic `g` whose
/// irreducible factors all have degree `f`.
fn equal_degree_split(g: Vec<u64>, f: usize, p: u64, rng: &mut ChaCha8Rng, out: &mut Vec<Vec<u64>>) {
    let d = g.len() - 1;
    if d == f {
        out.push(g);
        return;
    }
    loop {
        let h: Vec<u64> = (0..d).map(|_| rng.gen_range(0..p)).collect();
        let h = trim(h);
        if h.len() <= 1 {
            continue;
        }
        let candidate = if p == 2 {
            // absolute trace h + h^2 + ... + h^{2^{f-1}} mod g
            let mut acc = poly_rem(h.clone(), &g, p);
            let mut cur = acc.clone();
            for _ in 1..f {
                cur = poly_rem(poly_mul(&cur, &cur, p), &g, p);
                acc = poly_add(&acc, &cur, p);
            }
            acc
        } else {
            let e: BigUint = (BigUint::from(p).pow(f as u32) - 1u32) / 2u32;
            let pw = poly_pow_mod(&h, &e, &g, p);
            poly_sub(&pw, &[1], p)
        };
        let factor = poly_gcd(candidate, g.clone(), p);
        let fd = factor.len().saturating_sub(1);
        if fd > 0 && fd < d {
            let (quot, _) = poly_divrem(&g, &factor, p);
            equal_degree_split(factor, f, p, rng, out);
            equal_degree_split(quot, f, p, rng, out);
            return;
        }
    }
}

fn trim(mut a: Vec<u64>) -> Vec<u64> {
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

fn poly_add(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let n = a.len().max(b.len());
    trim(
        (0..n)
            .map(|i| (a.get(i).unwrap_or(&0) + b.get(i).unwrap_or(&0)) % p)
            .collect(),
    )
}

fn poly_sub(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let n = a.len().max(b.len());
    trim(
        (0..n)
            .map(|i| (a.get(i).unwrap_or(&0) + p - b.get(i).unwrap_or(&0) % p) % p)
            .collect(),
    )
}

fn poly_mul(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + arith::mul_mod(x, y, p)) % p;
        }
    }
    trim(out)
}

/// Quotient and remainder; `b` must be nonzero.
fn poly_divrem(a: &[u64], b: &[u64], p: u64) -> (Vec<u64>, Vec<u64>) {
    let b = trim(b.to_vec());
    let db = b.len() - 1;
    let lead_inv = arith::inv_mod(b[db], p).expect("field");
    let mut r = trim(a.to_vec());
    if r.len() <= db {
        return (Vec::new(), r);
    }
    let mut q = vec![0u64; r.len() - db];
    while r.len() > db && !r.is_empty() {
        let shift = r.len() - 1 - db;
        let c = arith::mul_mod(*r.last().unwrap(), lead_inv, p);
        q[shift] = c;
        for (j, &bj) in b.iter().enumerate() {
            let idx = shift + j;
            r[idx] = (r[idx] + p - arith::mul_mod(c, bj, p)) % p;
        }
        r = trim(r);
    }
    (trim(q), r)
}

fn poly_rem(a: Vec<u64>, b: &[u64], p: u64) -> Vec<u64> {
    poly_divrem(&a, b, p).1
}

/// Monic gcd.
fn poly_gcd(mut a: Vec<u64>, mut b: Vec<u64>, p: u64) -> Vec<u64> {
    a = trim(a);
    b = trim(b);
    while !b.is_empty() {
        let r = poly_rem(a, &b, p);
        a = b;
        b = r;
    }
    if let Some(&lead) = a.last() {
        let inv = arith::inv_mod(lead, p).expect("field");
        a.iter_mut().for_each(|c| *c = arith::mul_mod(*c, inv, p));
    }
    a
}

fn poly_pow_mod(base: &[u64], e: &BigUint, m: &[u64], p: u64) -> Vec<u64> {
    let mut acc = vec![1u64];
    let base = poly_rem(base.to_vec(), m, p);
    for i in (0..e.bits()).rev() {
        acc = poly_rem(poly_mul(&acc, &acc, p), m, p);
        if e.bit(i) {
            acc = poly_rem(poly_mul(&acc, &base, p), m, p);
        }
    }
    if e.is_zero() {
        return vec![1];
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cyclo::Rational;

    fn z(n: u64, k: i64) -> Cyclotomic {
        Cyclotomic::root_of_unity(n, k).unwrap()
    }

    /// Exhaustive oracle: monic degree-f divisors of Phi_m over F_p by trial division.
    fn brute_force_factors(m: u64, p: u64, f: usize) -> Vec<Vec<u64>> {
        let phi: Vec<u64> = cyclotomic_poly(m)
            .iter()
            .map(|&c| c.rem_euclid(p as i64) as u64)
            .collect();
        let mut out = Vec::new();
        let total = p.pow(f as u32);
        for code in 0..total {
            let mut h: Vec<u64> = (0..f).map(|i| code / p.pow(i as u32) % p).collect();
            h.push(1);
            if poly_divrem(&phi, &h, p).1.is_empty() {
                out.push(h);
            }
        }
        out.sort();
        out
    }

    #[test]
    fn factorisation_matches_trial_division() {
        for (m, p) in [(3, 2), (5, 2), (7, 2), (15, 2), (12, 5), (20, 3), (60, 7), (21, 2), (13, 3)] {
            let f = arith::multiplicative_order(p % m, m) as usize;
            let got = cyclotomic_factors_mod_p(m, p);
            assert_eq!(got, brute_force_factors(m, p, f), "m={m} p={p}");
            assert_eq!(got.len() * f, arith::euler_phi(m) as usize);
        }
    }

    #[test]
    fn zeta_3_mod_2_is_a_root_of_x2_x_1() {
        let emb = IdealEmbedding::new(2, 3);
        assert_eq!(emb.residue_degree(), 2);
        let w = emb.embed(&z(3, 1)).unwrap();
        let field = emb.field();
        let lhs = field.add(&field.add(&field.mul(&w, &w), &w), &field.one());
        assert_eq!(lhs, field.zero());
        assert_eq!(&w, emb.image_of_zeta());
    }

    #[test]
    fn p_and_p_power_roots() {
        let emb = IdealEmbedding::new(3, 36);
        assert_eq!(emb.embed(&Cyclotomic::from_integer(3)).unwrap(), emb.field().zero());
        assert_eq!(emb.embed(&z(9, 1)).unwrap(), emb.field().one());
        assert_eq!(emb.embed(&z(9, 4)).unwrap(), emb.field().one());
        let emb2 = IdealEmbedding::new(2, 8);
        assert_eq!(emb2.embed(&z(8, 3)).unwrap(), emb2.field().one());
        assert_eq!(emb2.embed(&Cyclotomic::from_integer(2)).unwrap(), emb2.field().zero());
    }

    #[test]
    fn errors() {
        let emb = IdealEmbedding::new(2, 12);
        let half = Cyclotomic::from_rational(Rational::new(1.into(), 2.into()));
        assert!(matches!(emb.embed(&half), Err(CycloError::NotIntegral(_))));
        assert!(matches!(
            emb.embed(&z(5, 1)),
            Err(CycloError::ConductorMismatch { element: 5, embedding: 12 })
        ));
    }

    #[test]
    fn embedding_is_a_ring_homomorphism_on_roots() {
        let emb = IdealEmbedding::new(5, 60);
        let field = emb.field();
        for a in 0..60 {
            for b in [1i64, 7, 13, 30] {
                let lhs = emb.embed(&(&z(60, a) * &z(60, b))).unwrap();
                let rhs = field.mul(&emb.embed(&z(60, a)).unwrap(), &emb.embed(&z(60, b)).unwrap());
                assert_eq!(lhs, rhs);
            }
        }
        assert!(IdealEmbedding::with_factor_rank(5, 60, 1).is_some());
        assert!(IdealEmbedding::with_factor_rank(2, 3, 1).is_none());
    }
}
