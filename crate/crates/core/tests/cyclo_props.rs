use blocklab::arith;
use blocklab::cyclo::{siegel_bound_check, Cyclotomic, IdealEmbedding, Rational, SiegelOutcome};
use num_traits::{ToPrimitive, Zero};
use proptest::prelude::*;

fn z(n: u64, k: i64) -> Cyclotomic {
    Cyclotomic::root_of_unity(n, k).unwrap()
}

/// `sum c_k zeta_n^k` over a dense coefficient list.
fn from_dense_ints(n: u64, cs: &[i64]) -> Cyclotomic {
    cs.iter()
        .enumerate()
        .filter(|(_, c)| **c != 0)
        .map(|(k, &c)| &z(n, k as i64) * &Cyclotomic::from_integer(c))
        .sum()
}

fn from_dense_rats(n: u64, cs: &[(i64, i64)]) -> Cyclotomic {
    cs.iter()
        .enumerate()
        .map(|(k, &(a, b))| z(n, k as i64).scale(&Rational::new(a.into(), b.into())))
        .sum()
}

/// Floating-point value of `sigma_j(sum c_k zeta_n^k)`, used only as an oracle.
fn float_conjugate(n: u64, cs: &[i64], j: u64) -> (f64, f64) {
    cs.iter().enumerate().fold((0.0, 0.0), |(re, im), (k, &c)| {
        let t = 2.0 * std::f64::consts::PI * ((k as u64 * j) % n) as f64 / n as f64;
        (re + c as f64 * t.cos(), im + c as f64 * t.sin())
    })
}

fn units(n: u64) -> Vec<u64> {
    (1..=n).filter(|&k| arith::gcd(k, n) == 1).collect()
}

fn integral_element(max_n: u64) -> impl Strategy<Value = (u64, Vec<i64>)> {
    (1..=max_n).prop_flat_map(|n| (Just(n), prop::collection::vec(-3i64..=3, n as usize)))
}

fn rational_triple() -> impl Strategy<Value = (u64, Vec<(i64, i64)>, Vec<(i64, i64)>, Vec<(i64, i64)>)> {
    (1u64..=60).prop_flat_map(|n| {
        let coeff = (-4i64..=4, 1i64..=3);
        let v = prop::collection::vec(coeff, n as usize);
        (Just(n), v.clone(), v.clone(), v)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn ring_axioms((n, a, b, c) in rational_triple()) {
        let (a, b, c) = (from_dense_rats(n, &a), from_dense_rats(n, &b), from_dense_rats(n, &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&(&a + &b) * &c, &(&a * &c) + &(&b * &c));
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a - &a), &Cyclotomic::zero());
        if !b.is_zero() {
            prop_assert_eq!(&(&a * &b).div(&b).unwrap(), &a);
        }
    }

    #[test]
    fn canonical_form_is_reduced((n, a) in integral_element(60)) {
        let x = from_dense_ints(n, &a);
        let c = x.conductor();
        prop_assert!(c % 4 != 2);
        prop_assert_eq!(x.coeffs().len() as u64, arith::euler_phi(c));
        let back = Cyclotomic::from_coords(c, x.coeffs().to_vec()).unwrap();
        prop_assert_eq!(&back, &x);
        let reparsed: Cyclotomic = x.to_string().parse().unwrap();
        prop_assert_eq!(reparsed, x);
    }

    #[test]
    fn conjugation_and_trace((n, a) in integral_element(40), k in 1u64..40) {
        let x = from_dense_ints(n, &a);
        prop_assert_eq!(&x.conj().conj(), &x);
        let m = x.conductor();
        let k = (1..=k + m).rev().find(|&j| arith::gcd(j, m) == 1).unwrap();
        let y = x.galois(k as i64);
        prop_assert_eq!(y.trace(), x.trace());
        let mut cx: Vec<String> = x.galois_conjugates().iter().map(|c| c.to_string()).collect();
        let mut cy: Vec<String> = y.galois_conjugates().iter().map(|c| c.to_string()).collect();
        cx.sort();
        cy.sort();
        prop_assert_eq!(cx, cy);
        // float oracle for the trace at the stored conductor
        let tr: f64 = units(n).iter().map(|&j| float_conjugate(n, &a, j).0).sum::<f64>()
            * (arith::euler_phi(m) as f64 / arith::euler_phi(n) as f64);
        prop_assert!((x.trace().to_f64().unwrap() - tr).abs() < 1e-6);
    }

    #[test]
    fn norm_abs_squared_is_totally_nonnegative((n, a) in integral_element(40)) {
        let x = from_dense_ints(n, &a);
        let w = x.norm_abs_squared();
        prop_assert!(w.is_real());
        prop_assert!(w.is_totally_nonnegative());
        prop_assert_eq!(w.is_zero(), x.is_zero());
    }

    #[test]
    fn total_positivity_matches_float_oracle((n, a) in integral_element(30)) {
        let x = from_dense_ints(n, &a);
        let r = &x + &x.conj();
        let shifted = &r + &Cyclotomic::from_integer(3);
        let vals: Vec<f64> = units(n).iter().map(|&j| {
            let (re, _) = float_conjugate(n, &a, j);
            2.0 * re + 3.0
        }).collect();
        if vals.iter().all(|v| v.abs() > 1e-6) {
            prop_assert_eq!(shifted.is_totally_positive(), vals.iter().all(|&v| v > 0.0));
        }
    }

    #[test]
    fn siegel_bound_on_norms((n, a) in integral_element(40)) {
        let b = from_dense_ints(n, &a);
        prop_assume!(!b.is_zero());
        let w = b.norm_abs_squared();
        match siegel_bound_check(&w).unwrap() {
            SiegelOutcome::IsOne => prop_assert!(w.is_one()),
            SiegelOutcome::AverageAtLeastThreeHalves(avg) => {
                prop_assert!(avg >= Rational::new(3.into(), 2.into()));
                prop_assert_eq!(avg, w.average_of_conjugates());
            }
            other => prop_assert!(false, "unexpected {:?} for {}", other, w),
        }
    }

    #[test]
    fn ideal_embedding_is_a_homomorphism(
        (n, a) in integral_element(36),
        b in prop::collection::vec(-3i64..=3, 36),
        pi in 0usize..4,
    ) {
        let p = [2u64, 3, 5, 7][pi];
        let x = from_dense_ints(n, &a);
        let y = from_dense_ints(n, &b[..n as usize]);
        let emb = IdealEmbedding::new(p, n);
        let f = emb.field();
        let (ex, ey) = (emb.embed(&x).unwrap(), emb.embed(&y).unwrap());
        prop_assert_eq!(emb.embed(&(&x + &y)).unwrap(), f.add(&ex, &ey));
        prop_assert_eq!(emb.embed(&(&x * &y)).unwrap(), f.mul(&ex, &ey));
        prop_assert_eq!(emb.embed(&Cyclotomic::from_integer(p as i64)).unwrap(), f.zero());
    }
}

/// Kronecker: an algebraic integer with every conjugate of modulus one.
fn kronecker_root_of_unity(x: &Cyclotomic) -> bool {
    x.is_algebraic_integer()
        && !x.is_zero()
        && x.galois_conjugates().iter().all(|c| c.norm_abs_squared().is_one())
}

#[test]
fn roots_of_unity_agree_with_kronecker_exhaustively() {
    for n in 1..=30u64 {
        for k in 0..n as i64 {
            for s in [1, -1] {
                let x = &z(n, k) * &Cyclotomic::from_integer(s);
                assert!(x.is_root_of_unity(), "{x}");
                assert!(kronecker_root_of_unity(&x));
                let order = x.root_of_unity_order().unwrap();
                let mut pw = Cyclotomic::one();
                for _ in 0..order {
                    pw = &pw * &x;
                }
                assert!(pw.is_one());
            }
        }
    }
}

#[test]
fn random_non_roots_agree_with_kronecker() {
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
    let mut non_roots = 0;
    while non_roots < 1000 {
        let n = rng.gen_range(1..=30u64);
        let terms = rng.gen_range(1..=4);
        let x: Cyclotomic = (0..terms)
            .map(|_| &z(n, rng.gen_range(0..n as i64)) * &Cyclotomic::from_integer(rng.gen_range(-2..=2)))
            .sum();
        let kron = kronecker_root_of_unity(&x);
        assert_eq!(x.is_root_of_unity(), kron, "{x}");
        if !kron {
            non_roots += 1;
        }
    }
}

#[test]
fn worked_examples() {
    assert_eq!(&z(3, 1) + &z(3, 2), Cyclotomic::from_integer(-1));
    assert!((&z(5, 1).conj() * &z(5, 1)).is_one());
    assert_eq!(z(5, 1).trace(), Rational::from_integer((-1).into()));
    let w = (&Cyclotomic::one() + &z(5, 1)).norm_abs_squared();
    assert_eq!(w.average_of_conjugates(), Rational::new(3.into(), 2.into()));
    assert!(w.is_totally_positive());
    assert!(!z(3, 1).is_totally_positive());
    let s = &z(8, 1) + &z(8, 7);
    let conj = s.galois_conjugates();
    assert_eq!(conj.iter().filter(|c| **c == s).count(), 2);
    assert_eq!(conj.iter().filter(|c| **c == -s.clone()).count(), 2);
    assert!((&Cyclotomic::one() + &z(3, 1)).is_root_of_unity());
    assert!(!Cyclotomic::from_integer(2).is_root_of_unity());
    assert!(Rational::zero() == Cyclotomic::zero().trace());
}
