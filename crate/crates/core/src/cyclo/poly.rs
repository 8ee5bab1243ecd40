use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use crate::arith;

/// Integer coefficients of the `n`-th cyclotomic polynomial, constant term
/// first. Cached process-wide.
pub fn cyclotomic_poly(n: u64) -> Arc<Vec<i64>> {
    static CACHE: OnceLock<Mutex<HashMap<u64, Arc<Vec<i64>>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(p) = cache.lock().unwrap().get(&n) {
        return Arc::clone(p);
    }
    let poly = Arc::new(compute(n));
    cache.lock().unwrap().insert(n, Arc::clone(&poly));
    poly
}

/// Product over d | n of (x^d - 1)^{mu(n/d)}: multiply the numerator factors
/// first, then divide out the denominator factors exactly.
fn compute(n: u64) -> Vec<i64> {
    let mut poly = vec![1i64];
    let divs = arith::divisors(n);
    for &d in &divs {
        if arith::mobius(n / d) == 1 {
            // poly *= x^d - 1
            let d = d as usize;
            let mut out = vec![0i64; poly.len() + d];
            for (i, &c) in poly.iter().enumerate() {
                out[i + d] += c;
                out[i] -= c;
            }
            poly = out;
        }
    }
    for &d in &divs {
        if arith::mobius(n / d) == -1 {
            // poly /= x^d - 1, i.e. q[i] = q[i - d] - poly[i] read from the bottom
            let d = d as usize;
            let deg = poly.len() - 1 - d;
            let mut q = vec![0i64; deg + 1];
            for i in 0..=deg {
                let prev = if i >= d { q[i - d] } else { 0 };
                q[i] = prev - poly[i];
            }
            poly = q;
        }
    }
    debug_assert_eq!(poly.len() as u64 - 1, arith::euler_phi(n));
    poly
}

/// Ramanujan's sum: the trace of `zeta_n^j` from Q(zeta_n) down to Q.
pub fn ramanujan_sum(n: u64, j: u64) -> i64 {
    let g = arith::gcd(j % n, n);
    let m = n / g;
    arith::mobius(m) * (arith::euler_phi(n) / arith::euler_phi(m)) as i64
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_cyclotomic_polynomials() {
        assert_eq!(*cyclotomic_poly(1), vec![-1, 1]);
        assert_eq!(*cyclotomic_poly(2), vec![1, 1]);
        assert_eq!(*cyclotomic_poly(3), vec![1, 1, 1]);
        assert_eq!(*cyclotomic_poly(4), vec![1, 0, 1]);
        assert_eq!(*cyclotomic_poly(6), vec![1, -1, 1]);
        assert_eq!(*cyclotomic_poly(12), vec![1, 0, -1, 0, 1]);
        let p105 = cyclotomic_poly(105);
        assert_eq!(p105.len(), 49);
        assert_eq!(p105[7], -2);
    }

    #[test]
    fn ramanujan_sums() {
        assert_eq!(ramanujan_sum(5, 1), -1);
        assert_eq!(ramanujan_sum(5, 0), 4);
        assert_eq!(ramanujan_sum(12, 6), -4);
        assert_eq!(ramanujan_sum(8, 2), 0);
    }
}
