//! Exact arithmetic in cyclotomic fields.
//!
//! An element of Q(zeta_n) is stored by its coordinates over the power basis
//! `1, zeta, ..., zeta^(phi(n)-1)` modulo the n-th cyclotomic polynomial,
//! always at its minimal conductor. Two equal field elements therefore have
//! identical representations, and `==` is field equality.
//!
//! `zeta_n` is `exp(2 pi i / n)`; the Galois automorphism `sigma_k` sends
//! `zeta_n` to `zeta_n^k`.

mod bounds;
mod ideal;
mod poly;
mod real;

use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

use crate::arith;

pub use bounds::{p_power_root_sum_check, siegel_bound_check, RootSumOutcome, SiegelOutcome};
pub use ideal::{FiniteField, FfElem, IdealEmbedding};
pub use poly::{cyclotomic_poly, ramanujan_sum};

pub type Rational = BigRational;

/// Largest conductor the engine will build.
pub const MAX_CONDUCTOR: u64 = 10_080;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CycloError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("not an algebraic integer: {0}")]
    NotAlgebraicInteger(String),
    #[error("term {index} is not a root of unity of {p}-power order")]
    NotPPowerRoot { index: usize, p: u64 },
    #[error("coordinates are not integral: {0}")]
    NotIntegral(String),
    #[error("conductor {0} exceeds the cap of {MAX_CONDUCTOR}")]
    ConductorTooLarge(u64),
    #[error("conductor {element} does not divide embedding conductor {embedding}")]
    ConductorMismatch { element: u64, embedding: u64 },
    #[error("bad cyclotomic literal: {0}")]
    Parse(String),
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Cyclotomic {
    n: u64,
    coeffs: Vec<Rational>,
}

fn q(i: i64) -> Rational {
    Rational::from_integer(BigInt::from(i))
}

impl Cyclotomic {
    pub fn zero() -> Self {
        Self::from_rational(Rational::zero())
    }

    pub fn one() -> Self {
        Self::from_integer(1)
    }

    pub fn from_integer(i: i64) -> Self {
        Self::from_rational(q(i))
    }

    pub fn from_rational(r: Rational) -> Self {
        Cyclotomic {
            n: 1,
            coeffs: vec![r],
        }
    }

    /// `zeta_n^k`.
    pub fn root_of_unity(n: u64, k: i64) -> Result<Self, CycloError> {
        if n == 0 {
            return Err(CycloError::Parse("conductor must be positive".into()));
        }
        if n > MAX_CONDUCTOR {
            return Err(CycloError::ConductorTooLarge(n));
        }
        let mut dense = vec![Rational::zero(); n as usize];
        dense[k.rem_euclid(n as i64) as usize] = Rational::one();
        Ok(Self::from_dense(n, dense))
    }

    /// Element with the given power-basis coordinates in Q(zeta_n); `coeffs`
    /// may be shorter than `phi(n)` (missing entries are zero).
    pub fn from_coords(n: u64, coeffs: Vec<Rational>) -> Result<Self, CycloError> {
        if n == 0 || n > MAX_CONDUCTOR {
            return Err(CycloError::ConductorTooLarge(n));
        }
        let phi = arith::euler_phi(n) as usize;
        if coeffs.len() > phi {
            return Err(CycloError::Parse(format!(
                "{} coordinates given for conductor {n} (degree {phi})",
                coeffs.len()
            )));
        }
        let mut dense = coeffs;
        dense.resize(n as usize, Rational::zero());
        Ok(Self::from_dense(n, dense))
    }

    /// Canonical form of `sum_k dense[k] zeta_n^k`.
    pub(crate) fn from_dense(n: u64, dense: Vec<Rational>) -> Self {
        debug_assert_eq!(dense.len() as u64, n);
        let (n, dense) = fold_twice_odd(n, dense);
        let coeffs = reduce_mod_cyclotomic(n, dense);
        descend(n, coeffs)
    }

    /// Minimal conductor.
    pub fn conductor(&self) -> u64 {
        self.n
    }

    /// Power-basis coordinates at the minimal conductor.
    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.n == 1 && self.coeffs[0].is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.n == 1 && self.coeffs[0].is_one()
    }

    pub fn as_rational(&self) -> Option<&Rational> {
        (self.n == 1).then(|| &self.coeffs[0])
    }

    /// Integer value, if this is a rational integer that fits in `i64`.
    pub fn as_integer(&self) -> Option<i64> {
        self.as_rational()
            .filter(|r| r.is_integer())
            .and_then(|r| r.to_integer().to_i64())
    }

    pub fn is_rational_integer(&self) -> bool {
        self.as_rational().is_some_and(|r| r.is_integer())
    }

    /// Integral power-basis coordinates; exact for cyclotomic fields since
    /// the power basis is an integral basis of Z[zeta_n].
    pub fn is_algebraic_integer(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_integer())
    }

    pub fn scale(&self, r: &Rational) -> Self {
        if r.is_zero() {
            return Self::zero();
        }
        Cyclotomic {
            n: self.n,
            coeffs: self.coeffs.iter().map(|c| c * r).collect(),
        }
    }

    /// Sum of many elements with a single canonicalisation.
    pub fn sum<'a>(items: impl IntoIterator<Item = &'a Cyclotomic>) -> Self {
        let items: Vec<&Cyclotomic> = items.into_iter().collect();
        let m = items.iter().fold(1, |acc, x| arith::lcm(acc, x.n));
        if m == 1 {
            return Self::from_rational(items.iter().map(|x| x.coeffs[0].clone()).sum());
        }
        let mut dense = vec![Rational::zero(); m as usize];
        for x in items {
            let stride = (m / x.n) as usize;
            for (j, c) in x.coeffs.iter().enumerate() {
                if !c.is_zero() {
                    dense[j * stride] += c;
                }
            }
        }
        Self::from_dense(m, dense)
    }

    /// The Galois image under `zeta -> zeta^k`; `k` must be prime to the conductor.
    pub fn galois(&self, k: i64) -> Self {
        let n = self.n;
        let k = k.rem_euclid(n as i64) as u64;
        debug_assert_eq!(arith::gcd(k, n), 1, "sigma_k needs k prime to the conductor");
        if n == 1 {
            return self.clone();
        }
        let mut dense = vec![Rational::zero(); n as usize];
        for (j, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                dense[((j as u64 * k) % n) as usize] += c;
            }
        }
        let (n2, dense) = fold_twice_odd(n, dense);
        Cyclotomic {
            n: n2,
            coeffs: reduce_mod_cyclotomic(n2, dense),
        }
    }

    /// Complex conjugate, `zeta -> zeta^{-1}`.
    pub fn conj(&self) -> Self {
        self.galois(-1)
    }

    /// All images `sigma_k(self)` for `k` prime to the conductor, in increasing `k`.
    pub fn galois_conjugates(&self) -> Vec<Self> {
        units(self.n).map(|k| self.galois(k as i64)).collect()
    }

    /// Trace from Q(zeta_n) to Q.
    pub fn trace(&self) -> Rational {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(j, c)| c * q(ramanujan_sum(self.n, j as u64)))
            .sum()
    }

    /// Trace divided by the field degree; independent of the ambient field.
    pub fn average_of_conjugates(&self) -> Rational {
        self.trace() / q(arith::euler_phi(self.n) as i64)
    }

    /// Field norm to Q.
    pub fn norm(&self) -> Rational {
        let prod = self
            .galois_conjugates()
            .iter()
            .fold(Self::one(), |acc, x| &acc * x);
        prod.as_rational().cloned().expect("norm is rational")
    }

    pub fn inverse(&self) -> Result<Self, CycloError> {
        if self.is_zero() {
            return Err(CycloError::DivisionByZero);
        }
        if let Some(r) = self.as_rational() {
            return Ok(Self::from_rational(r.recip()));
        }
        // product of the other conjugates divided by the norm
        let others = units(self.n)
            .skip(1)
            .fold(Self::one(), |acc, k| &acc * &self.galois(k as i64));
        let norm = (&others * self)
            .as_rational()
            .cloned()
            .expect("norm is rational");
        Ok(others.scale(&norm.recip()))
    }

    pub fn div(&self, other: &Self) -> Result<Self, CycloError> {
        Ok(self * &other.inverse()?)
    }

    /// `self * conj(self)`, i.e. `|self|^2`; totally nonnegative.
    pub fn norm_abs_squared(&self) -> Self {
        self * &self.conj()
    }

    pub fn is_real(&self) -> bool {
        *self == self.conj()
    }

    /// Every Galois conjugate is real and strictly positive.
    pub fn is_totally_positive(&self) -> bool {
        if self.is_zero() || !self.is_real() {
            return false;
        }
        if let Some(r) = self.as_rational() {
            return r.is_positive();
        }
        units(self.n).all(|k| real::sign_of_conjugate(self, k) == std::cmp::Ordering::Greater)
    }

    /// Zero, or every conjugate real and positive.
    pub fn is_totally_nonnegative(&self) -> bool {
        self.is_zero() || self.is_totally_positive()
    }

    /// Sign of the real number obtained by the embedding `zeta_n -> exp(2 pi i/n)`.
    /// Returns `None` if the element is not real.
    pub fn real_sign(&self) -> Option<std::cmp::Ordering> {
        if !self.is_real() {
            return None;
        }
        Some(real::sign_of_conjugate(self, 1))
    }

    /// If `self` is a root of unity, returns `(m, j)` with `self = zeta_m^j`,
    /// where `m` is the conductor, doubled when the conductor is odd.
    pub fn root_of_unity_exponent(&self) -> Option<(u64, u64)> {
        if !self.is_algebraic_integer() {
            return None;
        }
        let n = self.n;
        let m = if n % 2 == 1 { 2 * n } else { n };
        let stride = m / n;
        let mut nonzero = self.coeffs.iter().enumerate().filter(|(_, c)| !c.is_zero());
        if let (Some((j, c)), None) = (nonzero.next(), nonzero.next()) {
            let j = j as u64 * stride;
            if c.is_one() {
                return Some((m, j));
            }
            if (-c).is_one() {
                return Some((m, (j + m / 2) % m));
            }
        }
        roots_with_conductor(n).get(self).map(|&j| (m, j))
    }

    /// Exact comparison against the finite list of roots of unity in the field.
    pub fn is_root_of_unity(&self) -> bool {
        self.root_of_unity_exponent().is_some()
    }

    /// Multiplicative order, if this is a root of unity.
    pub fn root_of_unity_order(&self) -> Option<u64> {
        self.root_of_unity_exponent()
            .map(|(m, j)| m / arith::gcd(j, m))
    }
}

/// The roots of unity whose minimal conductor is exactly `n`, keyed to their
/// exponent over `zeta_m` (`m = n` or `2n`). Cached per conductor.
fn roots_with_conductor(n: u64) -> Arc<HashMap<Cyclotomic, u64>> {
    static CACHE: OnceLock<Mutex<HashMap<u64, Arc<HashMap<Cyclotomic, u64>>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(t) = cache.lock().unwrap().get(&n) {
        return Arc::clone(t);
    }
    let m = if n % 2 == 1 { 2 * n } else { n };
    let map: HashMap<Cyclotomic, u64> = (0..m)
        .filter_map(|j| {
            let z = Cyclotomic::root_of_unity(m, j as i64).ok()?;
            (z.n == n).then_some((z, j))
        })
        .collect();
    let map = Arc::new(map);
    cache.lock().unwrap().insert(n, Arc::clone(&map));
    map
}

/// `k` in `1..n` prime to `n` (just `1` for `n = 1`).
pub(crate) fn units(n: u64) -> impl Iterator<Item = u64> {
    (1..=n.max(1))
        .filter(move |&k| arith::gcd(k, n) == 1)
        .take(arith::euler_phi(n) as usize)
}

/// For `n = 2m`, `m` odd: rewrite over `zeta_m` using `zeta_n = -zeta_m^{(m+1)/2}`.
fn fold_twice_odd(n: u64, dense: Vec<Rational>) -> (u64, Vec<Rational>) {
    if n % 4 != 2 {
        return (n, dense);
    }
    let m = n / 2;
    let half = m.div_ceil(2);
    let mut out = vec![Rational::zero(); m as usize];
    for (k, c) in dense.into_iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let idx = ((k as u64 * half) % m) as usize;
        if k % 2 == 0 {
            out[idx] += c;
        } else {
            out[idx] -= c;
        }
    }
    (m, out)
}

/// Reduces a polynomial in `zeta_n` modulo the n-th cyclotomic polynomial.
fn reduce_mod_cyclotomic(n: u64, mut dense: Vec<Rational>) -> Vec<Rational> {
    let phi = cyclotomic_poly(n);
    let deg = phi.len() - 1;
    for i in (deg..dense.len()).rev() {
        if dense[i].is_zero() {
            continue;
        }
        let c = std::mem::take(&mut dense[i]);
        for (j, &pj) in phi.iter().enumerate().take(deg) {
            if pj != 0 {
                dense[i - deg + j] -= &c * q(pj);
            }
        }
    }
    dense.truncate(deg);
    dense
}

/// Moves a canonical-basis element down to its minimal conductor.
fn descend(mut n: u64, mut coeffs: Vec<Rational>) -> Cyclotomic {
    'outer: loop {
        if n == 1 || coeffs[1..].iter().all(|c| c.is_zero()) {
            coeffs.truncate(1);
            return Cyclotomic { n: 1, coeffs };
        }
        for (p, e) in arith::factor(n) {
            let smaller = if e >= 2 {
                descend_square(n, p, &coeffs)
            } else {
                descend_coprime(n, p, &coeffs)
            };
            if let Some((m, c)) = smaller {
                n = m;
                coeffs = c;
                continue 'outer;
            }
        }
        return Cyclotomic { n, coeffs };
    }
}

/// `p^2 | n`: the basis of Q(zeta_n) splits as `zeta_{n/p}^j zeta_n^r`, so the
/// element lies in Q(zeta_{n/p}) iff only exponents divisible by `p` occur.
fn descend_square(n: u64, p: u64, coeffs: &[Rational]) -> Option<(u64, Vec<Rational>)> {
    let p = p as usize;
    if coeffs
        .iter()
        .enumerate()
        .any(|(k, c)| k % p != 0 && !c.is_zero())
    {
        return None;
    }
    let m = n / p as u64;
    let c: Vec<Rational> = coeffs.iter().step_by(p).cloned().collect();
    if m % 4 == 2 {
        let mut dense = c;
        dense.resize(m as usize, Rational::zero());
        let (m2, dense) = fold_twice_odd(m, dense);
        return Some((m2, reduce_mod_cyclotomic(m2, dense)));
    }
    Some((m, c))
}

/// `p || n`: write `zeta_n^k = zeta_p^{ks} zeta_m^{kt}` with `m = n/p`; over
/// Q(zeta_m) the element is `sum_b zeta_p^b (T_b - T_{p-1})`, b < p-1.
fn descend_coprime(n: u64, p: u64, coeffs: &[Rational]) -> Option<(u64, Vec<Rational>)> {
    let m = n / p;
    let s = arith::inv_mod(m % p, p).expect("coprime");
    let t = arith::inv_mod(p % m, m).unwrap_or(0);
    let (pu, mu) = (p as usize, m as usize);
    let mut parts = vec![vec![Rational::zero(); mu]; pu];
    for (k, c) in coeffs.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let k = k as u64;
        parts[((k * s) % p) as usize][((k * t) % m) as usize] += c;
    }
    let last = parts.pop().expect("p >= 2");
    let component = |b: usize| -> Vec<Rational> {
        let diff: Vec<Rational> = parts[b].iter().zip(&last).map(|(x, y)| x - y).collect();
        reduce_mod_cyclotomic(m, diff)
    };
    for b in 1..pu - 1 {
        if component(b).iter().any(|c| !c.is_zero()) {
            return None;
        }
    }
    Some((m, component(0)))
}

fn mul_impl(a: &Cyclotomic, b: &Cyclotomic) -> Cyclotomic {
    if let Some(r) = a.as_rational() {
        return b.scale(r);
    }
    if let Some(r) = b.as_rational() {
        return a.scale(r);
    }
    let m = arith::lcm(a.n, b.n);
    let (sa, sb) = ((m / a.n) as usize, (m / b.n) as usize);
    let mu = m as usize;
    let mut dense = vec![Rational::zero(); mu];
    let bnz: Vec<(usize, &Rational)> = b
        .coeffs
        .iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(j, c)| (j * sb, c))
        .collect();
    for (i, x) in a.coeffs.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        let ia = i * sa;
        for &(jb, y) in &bnz {
            dense[(ia + jb) % mu] += x * y;
        }
    }
    Cyclotomic::from_dense(m, dense)
}

impl Add for &Cyclotomic {
    type Output = Cyclotomic;
    fn add(self, rhs: &Cyclotomic) -> Cyclotomic {
        if self.n == 1 && rhs.n == 1 {
            return Cyclotomic::from_rational(&self.coeffs[0] + &rhs.coeffs[0]);
        }
        Cyclotomic::sum([self, rhs])
    }
}

impl Sub for &Cyclotomic {
    type Output = Cyclotomic;
    fn sub(self, rhs: &Cyclotomic) -> Cyclotomic {
        self + &(-rhs)
    }
}

impl Mul for &Cyclotomic {
    type Output = Cyclotomic;
    fn mul(self, rhs: &Cyclotomic) -> Cyclotomic {
        mul_impl(self, rhs)
    }
}

impl Neg for &Cyclotomic {
    type Output = Cyclotomic;
    fn neg(self) -> Cyclotomic {
        Cyclotomic {
            n: self.n,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $f:ident) => {
        impl $tr for Cyclotomic {
            type Output = Cyclotomic;
            fn $f(self, rhs: Cyclotomic) -> Cyclotomic {
                (&self).$f(&rhs)
            }
        }
        impl $tr<&Cyclotomic> for Cyclotomic {
            type Output = Cyclotomic;
            fn $f(self, rhs: &Cyclotomic) -> Cyclotomic {
                (&self).$f(rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for Cyclotomic {
    type Output = Cyclotomic;
    fn neg(self) -> Cyclotomic {
        -&self
    }
}

impl std::iter::Sum for Cyclotomic {
    fn sum<I: Iterator<Item = Cyclotomic>>(iter: I) -> Self {
        let items: Vec<Cyclotomic> = iter.collect();
        Cyclotomic::sum(&items)
    }
}

impl From<i64> for Cyclotomic {
    fn from(i: i64) -> Self {
        Cyclotomic::from_integer(i)
    }
}

impl From<Rational> for Cyclotomic {
    fn from(r: Rational) -> Self {
        Cyclotomic::from_rational(r)
    }
}

/// `cyc(n; c0, c1, ..., c_{phi(n)-1})`.
impl fmt::Display for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "cyc({};", self.n)?;
        for (i, c) in self.coeffs.iter().enumerate() {
            let sep = if i == 0 { " " } else { ", " };
            write!(f, "{sep}{c}")?;
        }
        write!(f, ")")
    }
}

impl fmt::Debug for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Cyclotomic {
    type Err = CycloError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || CycloError::Parse(s.to_string());
        let body = s
            .trim()
            .strip_prefix("cyc(")
            .and_then(|r| r.strip_suffix(')'))
            .ok_or_else(bad)?;
        let (n, rest) = body.split_once(';').ok_or_else(bad)?;
        let n: u64 = n.trim().parse().map_err(|_| bad())?;
        let coeffs: Vec<Rational> = rest
            .split(',')
            .map(|c| c.trim().parse::<Rational>().map_err(|_| bad()))
            .collect::<Result<_, _>>()?;
        if n == 0 || coeffs.len() != arith::euler_phi(n) as usize {
            return Err(bad());
        }
        Self::from_coords(n, coeffs)
    }
}
