//! Algebraic-law property tests across the crate.

use hurwitz442_core::gaussian::{divides, residue_system, GaussInt};
use hurwitz442_core::lattice::{
    affine_compose, build_lattice_cover, coset_action, AffineLatticeMap, Unit,
};
use hurwitz442_core::perm::{generated_group_order, CoverCertificate, Perm, Provenance, DEFAULT_ORDER_CAP};
use hurwitz442_core::poly::PolyQi;
use hurwitz442_core::qi::qi;
use proptest::prelude::*;

fn perm_strategy(d: usize) -> impl Strategy<Value = Perm> {
    Just((0..d as u32).collect::<Vec<u32>>())
        .prop_shuffle()
        .prop_map(|v| Perm::from_images(v).expect("shuffled identity"))
}

fn gauss_strategy(max: i64) -> impl Strategy<Value = GaussInt> {
    (-max..=max, -max..=max).prop_map(|(re, im)| GaussInt::new(re, im))
}

fn unit_strategy() -> impl Strategy<Value = Unit> {
    prop_oneof![
        Just(Unit::One),
        Just(Unit::I),
        Just(Unit::MinusOne),
        Just(Unit::MinusI)
    ]
}

fn affine_strategy(max: i64) -> impl Strategy<Value = AffineLatticeMap> {
    (unit_strategy(), gauss_strategy(max)).prop_map(|(u, l)| AffineLatticeMap::new(u, l))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn compose_is_associative(
        f in perm_strategy(9),
        g in perm_strategy(9),
        h in perm_strategy(9),
    ) {
        let left = f.compose(&g).unwrap().compose(&h).unwrap();
        let right = f.compose(&g.compose(&h).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn conjugation_preserves_cycle_type(
        f in perm_strategy(11),
        g in perm_strategy(11),
    ) {
        let conj = f.conjugate_by(&g).unwrap();
        prop_assert_eq!(conj.cycle_type(), f.cycle_type());
    }

    #[test]
    fn inverse_is_involutive(f in perm_strategy(12)) {
        prop_assert_eq!(f.inverse().inverse(), f.clone());
        prop_assert!(f.compose(&f.inverse()).unwrap().is_identity());
    }

    #[test]
    fn generator_orders_divide_group_order(
        f in perm_strategy(6),
        g in perm_strategy(6),
    ) {
        let order = generated_group_order(&[f.clone(), g.clone()], DEFAULT_ORDER_CAP)
            .exact()
            .unwrap();
        prop_assert_eq!(order as u64 % f.order(), 0);
        prop_assert_eq!(order as u64 % g.order(), 0);
    }

    #[test]
    fn norm_is_multiplicative(z in gauss_strategy(50), w in gauss_strategy(50)) {
        prop_assert_eq!((&z * &w).norm(), z.norm() * w.norm());
    }

    #[test]
    fn residue_count_equals_norm(beta in gauss_strategy(14)) {
        let norm = beta.norm();
        prop_assume!(!beta.is_zero());
        prop_assume!(norm <= 200u32.into());
        let residues = residue_system(&beta).unwrap();
        prop_assert_eq!(num_bigint::BigInt::from(residues.len()), norm);
        // reps[0] is the class of 0.
        prop_assert_eq!(residues.rep(0), &GaussInt::zero());
    }

    #[test]
    fn reduce_is_additive(
        beta in gauss_strategy(10),
        lambda in gauss_strategy(100),
        mu in gauss_strategy(100),
    ) {
        prop_assume!(!beta.is_zero());
        let residues = residue_system(&beta).unwrap();
        let direct = residues.reduce(&(&lambda + &mu));
        let reduced_sum = residues.reduce(
            &(residues.rep(residues.reduce(&lambda)) + residues.rep(residues.reduce(&mu))),
        );
        prop_assert_eq!(direct, reduced_sum);
    }

    #[test]
    fn unit_multiples_induce_the_same_partition(
        beta in gauss_strategy(8),
        u in unit_strategy(),
        lambda in gauss_strategy(40),
        mu in gauss_strategy(40),
    ) {
        prop_assume!(!beta.is_zero());
        let a = residue_system(&beta).unwrap();
        let b = residue_system(&u.apply(&beta)).unwrap();
        prop_assert_eq!(a.len(), b.len());
        // Same equivalence relation on sample pairs.
        let same_a = a.reduce(&lambda) == a.reduce(&mu);
        let same_b = b.reduce(&lambda) == b.reduce(&mu);
        prop_assert_eq!(same_a, same_b);
        // Ideal membership agrees with class-of-zero.
        let diff = &lambda - &mu;
        prop_assert_eq!(same_a, divides(&beta, &diff).unwrap());
    }

    #[test]
    fn coset_action_is_a_homomorphism(
        beta in gauss_strategy(10),
        g1 in affine_strategy(6),
        g2 in affine_strategy(6),
    ) {
        prop_assume!(!beta.is_zero());
        prop_assume!(beta.norm() <= 200u32.into());
        let residues = residue_system(&beta).unwrap();
        let lhs = coset_action(&affine_compose(&g1, &g2), &residues);
        let rhs = coset_action(&g1, &residues)
            .compose(&coset_action(&g2, &residues))
            .unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn affine_compose_associates(
        g1 in affine_strategy(9),
        g2 in affine_strategy(9),
        g3 in affine_strategy(9),
    ) {
        prop_assert_eq!(
            affine_compose(&affine_compose(&g1, &g2), &g3),
            affine_compose(&g1, &affine_compose(&g2, &g3))
        );
    }

    #[test]
    fn valid_type_certificates_pass_riemann_hurwitz(
        pair in prop_oneof![Just((2i64, 1i64)), Just((3, 0)), Just((3, 2)), Just((4, 1))],
        keys in proptest::collection::vec(0u32..1000, 25),
    ) {
        // Conjugating a valid certificate by any permutation preserves
        // conditions (i)-(ii); Riemann-Hurwitz must then hold
        // automatically: cycle counts are k+1, k+1, 2k+1.
        let (cert, _) = build_lattice_cover(pair.0, pair.1).unwrap();
        let d = cert.d;
        // Random conjugator of degree d: argsort of random keys.
        let mut order: Vec<usize> = (0..d).collect();
        order.sort_by_key(|&i| (keys[i], i));
        let mut images = vec![0u32; d];
        for (rank, &i) in order.iter().enumerate() {
            images[i] = rank as u32;
        }
        let g = Perm::from_images(images).unwrap();
        let conj = CoverCertificate::new(
            cert.sigma0.conjugate_by(&g).unwrap(),
            cert.sigma1.conjugate_by(&g).unwrap(),
            cert.sigma_inf.conjugate_by(&g).unwrap(),
            Provenance::Manual,
        )
        .unwrap();
        let report = conj.verify();
        prop_assert!(report.product && report.types);
        let counts: Vec<usize> = [&conj.sigma0, &conj.sigma1, &conj.sigma_inf]
            .iter()
            .map(|s| s.cycle_type().cycle_count())
            .collect();
        prop_assert_eq!(counts, vec![cert.k + 1, cert.k + 1, 2 * cert.k + 1]);
        prop_assert!(report.riemann_hurwitz);
    }

    #[test]
    fn poly_gcd_divides_both(
        a in proptest::collection::vec((-5i64..=5, -5i64..=5), 1..5),
        b in proptest::collection::vec((-5i64..=5, -5i64..=5), 1..5),
    ) {
        let f = PolyQi::from_i64_coeffs(&a);
        let g = PolyQi::from_i64_coeffs(&b);
        prop_assume!(!f.is_zero() && !g.is_zero());
        let d = f.gcd(&g);
        prop_assert!(f.divrem(&d).1.is_zero());
        prop_assert!(g.divrem(&d).1.is_zero());
        // gcd of (f*h, g*h) contains h.
        let h = PolyQi::from_i64_coeffs(&[(1, 1), (1, 0)]);
        let dd = (&f * &h).gcd(&(&g * &h));
        prop_assert!(dd.divrem(&h.monic().0).1.is_zero());
    }

    #[test]
    fn squarefree_decomposition_reassembles(
        e1 in 1usize..3,
        e2 in 1usize..3,
        c in (-4i64..=4, -4i64..=4),
    ) {
        let f1 = PolyQi::from_i64_coeffs(&[(1, 0), (1, 0)]); // t + 1
        let f2 = &PolyQi::from_i64_coeffs(&[(0, 1), (1, 0)]) + &PolyQi::constant(qi(c.0, c.1));
        prop_assume!(f2.degree() == Some(1));
        prop_assume!(f2.monic().0 != f1);
        let product = &f1.pow(e1) * &f2.pow(e2);
        let (monic, _) = product.monic();
        let decomp = monic.squarefree_decomposition();
        let mut rebuilt = PolyQi::one();
        for (factor, exp) in &decomp {
            rebuilt = &rebuilt * &factor.pow(*exp);
        }
        prop_assert_eq!(rebuilt, monic);
    }
}
