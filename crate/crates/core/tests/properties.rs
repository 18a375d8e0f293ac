//! Property tests for the exact kernels.

use num_integer::Integer;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use workbench_core::bar::{CyclicBar, FinCmMonoid};
use workbench_core::circle::{compose_uec, sample_uec, wreath_act};
use workbench_core::cyclic::{
    act_gen, act_on_point, is_normal, lambda_to_ucc, normalize_word, sample_point, sample_word,
    ucc_to_lambda,
};
use workbench_core::operads::sample_compact_pairs;
use workbench_core::{upsilon, CyclicElem, Gen, Perm, Rat, WreathElem};

fn rat() -> impl Strategy<Value = Rat> {
    (-50i64..50, 1i64..30).prop_map(|(p, q)| Rat::new(p, q))
}

fn wreath(seed: u64, n: usize, m: u32) -> WreathElem<CyclicElem> {
    use rand::Rng;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let perm = Perm::random(&mut rng, n);
    let members = (0..n)
        .map(|_| CyclicElem::new(m, rng.gen_range(0..m as i64)))
        .collect();
    WreathElem::new(perm, members).unwrap()
}

proptest! {
    #[test]
    fn rationals_stay_reduced(a in rat(), b in rat()) {
        for x in [&a + &b, &a - &b, &a * &b] {
            prop_assert!(x.denom() > &0.into());
            prop_assert!(x.numer().gcd(x.denom()) == 1.into());
        }
    }

    #[test]
    fn field_laws(a in rat(), b in rat(), c in rat()) {
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&(&a - &b) + &b, a.clone());
    }

    #[test]
    fn rem_euclid_is_canonical(a in rat(), k in 1i64..5, d in 1i64..4) {
        let modulus = Rat::new(k, d);
        let x = a.rem_euclid(&modulus);
        prop_assert!(!x.is_negative() && x < modulus);
        let diff = (&a - &x).checked_div(&modulus).unwrap();
        prop_assert!(diff.is_integer());
    }

    #[test]
    fn wreath_group_laws(s1 in any::<u64>(), s2 in any::<u64>(), s3 in any::<u64>(), n in 1usize..5, m in 1u32..4) {
        let (a, b, c) = (wreath(s1, n, m), wreath(s2, n, m), wreath(s3, n, m));
        let lhs = a.compose(&b).unwrap().compose(&c).unwrap();
        let rhs = a.compose(&b.compose(&c).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
        prop_assert_eq!(a.compose(&a.inverse()).unwrap(), a.unit_like());
    }

    #[test]
    fn upsilon_has_order_mn(n in 1usize..5, m in 1u32..4) {
        let u = upsilon(m, n);
        let k = m as u64 * n as u64;
        prop_assert_eq!(u.pow(k).unwrap(), u.unit_like());
        for j in 1..k {
            prop_assert_ne!(u.pow(j).unwrap(), u.unit_like());
        }
    }

    #[test]
    fn lambda_round_trip(seed in any::<u64>(), m in 1u32..4, q in 0usize..4) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let p = sample_point(&mut rng, m, q, 12);
        let x = lambda_to_ucc(&p).unwrap();
        prop_assert_eq!(ucc_to_lambda(&x).unwrap(), p.clone());
        let tp = act_gen(Gen::Twist, &p).unwrap();
        let ux = wreath_act(&upsilon(m, q + 1), &x).unwrap();
        prop_assert_eq!(lambda_to_ucc(&tp).unwrap(), ux);
    }

    #[test]
    fn normal_forms_are_idempotent(seed in any::<u64>(), m in 1u32..4, q in 0usize..4, len in 0usize..10) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let w = sample_word(&mut rng, m, q, len, q + 3);
        let nf = normalize_word(&w).unwrap();
        prop_assert!(is_normal(&nf));
        prop_assert_eq!(normalize_word(&nf).unwrap(), nf.clone());
        let p = sample_point(&mut rng, m, q, 12);
        prop_assert_eq!(act_on_point(&w, &p).unwrap(), act_on_point(&nf, &p).unwrap());
    }

    #[test]
    fn twist_power_is_identity(seed in any::<u64>(), m in 1u32..5, q in 0usize..5) {
        use rand::Rng;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for (_, monoid) in FinCmMonoid::builtins(m) {
            let bar = CyclicBar::new(&monoid);
            let a: Vec<usize> = (0..=q).map(|_| rng.gen_range(0..monoid.size())).collect();
            let a = bar.smash(a);
            prop_assert_eq!(bar.twist_pow(&a, m as usize * (q + 1)), a);
        }
    }

    #[test]
    fn composition_preserves_gap_sum(seed in any::<u64>(), m in 1u32..4, n in 1usize..4) {
        use rand::Rng;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let x = sample_uec(&mut rng, m, n, 4);
        let inners: Vec<_> = (0..n).map(|_| {
            let k = rng.gen_range(1..=3);
            sample_compact_pairs(&mut rng, k)
        }).collect();
        let y = compose_uec(&x, &inners).unwrap();
        prop_assert_eq!(y.gap_sum(), Rat::new(1, m as i64));
    }
}
