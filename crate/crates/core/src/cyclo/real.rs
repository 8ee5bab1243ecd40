//! Exact sign determination for real conjugates of cyclotomic numbers.
//!
//! The conjugate `sigma_k(a)` of a real element is `sum_j c_j cos(2 pi jk/n)`.
//! Each cosine is enclosed in an interval with exact dyadic endpoints and the
//! sum is evaluated in exact interval arithmetic; precision doubles until the
//! interval excludes zero. Zero itself is decided symbolically beforehand.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::Cyclotomic;

const START_BITS: u64 = 64;
const MAX_BITS: u64 = 1 << 16;

/// Sign of `sigma_k(a)` for real `a`.
pub(super) fn sign_of_conjugate(a: &Cyclotomic, k: u64) -> Ordering {
    if a.is_zero() {
        return Ordering::Equal;
    }
    if let Some(r) = a.as_rational() {
        return r.cmp(&BigRational::zero());
    }
    let n = a.conductor();
    // clear denominators: integer coefficients A_j with a = (1/D) sum A_j zeta^j
    let denom = a
        .coeffs()
        .iter()
        .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let ints: Vec<BigInt> = a
        .coeffs()
        .iter()
        .map(|c| c.numer() * (&denom / c.denom()))
        .collect();

    let mut bits = START_BITS;
    loop {
        let table = cos_table(n, bits);
        let (mut lo, mut hi) = (BigInt::zero(), BigInt::zero());
        for (j, c) in ints.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let t = ((j as u64 * k) % n) as usize;
            let (cl, ch) = &table[t];
            if c.is_positive() {
                lo += c * cl;
                hi += c * ch;
            } else {
                lo += c * ch;
                hi += c * cl;
            }
        }
        if lo.is_positive() {
            return Ordering::Greater;
        }
        if hi.is_negative() {
            return Ordering::Less;
        }
        bits *= 2;
        assert!(bits <= MAX_BITS, "sign refinement did not converge");
    }
}

/// Enclosures `[lo, hi] * 2^-bits` of `cos(2 pi t / n)` for `t` in `0..n`.
fn cos_table(n: u64, bits: u64) -> Arc<Vec<(BigInt, BigInt)>> {
    static CACHE: OnceLock<Mutex<HashMap<(u64, u64), Arc<Vec<(BigInt, BigInt)>>>>> =
        OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(t) = cache.lock().unwrap().get(&(n, bits)) {
        return Arc::clone(t);
    }
    let pi = pi_fixed(bits + 8);
    let table: Vec<(BigInt, BigInt)> = (0..n)
        .map(|t| {
            let t = t.min(n - t);
            cos_fixed(&pi, 2 * t, n, bits)
        })
        .collect();
    let table = Arc::new(table);
    cache.lock().unwrap().insert((n, bits), Arc::clone(&table));
    table
}

/// `pi` as a fixed-point enclosure `[lo, hi] * 2^-w`.
fn pi_fixed(w: u64) -> (BigInt, BigInt) {
    // Machin: pi = 16 atan(1/5) - 4 atan(1/239); alternating series, so
    // consecutive partial sums bracket the limit.
    let atan_bounds = |x: i64| -> (BigRational, BigRational) {
        let x2 = BigInt::from(x * x);
        let mut power = BigInt::from(x);
        let mut sum = BigRational::zero();
        let mut k = 0u64;
        let target = BigRational::new(BigInt::one(), BigInt::one() << (w + 8));
        loop {
            let term = BigRational::new(BigInt::one(), &power * BigInt::from(2 * k + 1));
            let small = term < target;
            if k.is_multiple_of(2) {
                sum += &term;
            } else {
                sum -= &term;
            }
            if small {
                // sum and sum -/+ term bracket the limit
                return if k.is_multiple_of(2) {
                    (&sum - &term, sum)
                } else {
                    (sum.clone(), &sum + &term)
                };
            }
            power *= &x2;
            k += 1;
        }
    };
    let (a_lo, a_hi) = atan_bounds(5);
    let (b_lo, b_hi) = atan_bounds(239);
    let sixteen = BigRational::from_integer(16.into());
    let four = BigRational::from_integer(4.into());
    let lo = &sixteen * a_lo - &four * b_hi;
    let hi = &sixteen * a_hi - &four * b_lo;
    let scale = BigRational::from_integer(BigInt::one() << w);
    ((lo * &scale).floor().to_integer(), (hi * &scale).ceil().to_integer())
}

/// Enclosure of `cos(pi * num / den)` for `0 <= num/den <= 1`, as
/// `[lo, hi] * 2^-bits`, given `pi` to `bits + 8` bits.
fn cos_fixed(pi: &(BigInt, BigInt), num: u64, den: u64, bits: u64) -> (BigInt, BigInt) {
    let w = bits + 8;
    // x = pi * num/den in fixed point; |x - X 2^-w| <= 3 ulps (pi width + floor)
    let x = (&pi.0 * BigInt::from(num)).div_floor(&BigInt::from(den));
    let one = BigInt::one() << w;
    let shift = 2 * w as usize;
    // cos x = sum (-1)^i x^{2i}/(2i)!; per-step floor error < 1.5 ulp and
    // since x <= pi + eps the accumulated error per term stays below 3 ulps
    let x2 = &x * &x;
    let mut term = one.clone();
    let mut sum = one.clone();
    let mut terms = 1u64;
    let mut i = 1u64;
    loop {
        term = ((&term * &x2) >> shift).div_floor(&BigInt::from((2 * i - 1) * (2 * i)));
        if i % 2 == 1 {
            sum -= &term;
        } else {
            sum += &term;
        }
        terms += 1;
        if i >= 3 && term.is_zero() {
            break;
        }
        i += 1;
    }
    // rounding (3 ulps per term), truncation (3 ulps), argument error (3 ulps, cos is 1-Lipschitz)
    let radius = BigInt::from(3 * terms + 3 + 3 + 1);
    let lo = (&sum - &radius) >> 8usize;
    let hi = ((&sum + &radius) >> 8usize) + 1;
    (lo, hi)
}
