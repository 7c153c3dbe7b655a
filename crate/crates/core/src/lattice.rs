//! The plane signature group of type `(4,4,2)`: affine maps
//! `z -> u*z + lambda` with `u` a fourth root of unity and `lambda` in
//! `Z[i]`, and cover certificates from its coset action on the residues
//! modulo a Gaussian ideal `(a+bi)` of odd norm.

use crate::gaussian::{residue_system, GaussInt, ResidueSystem};
use crate::perm::{CoverCertificate, Perm, Provenance};
use alloc::vec::Vec;
use num_bigint::BigInt;
use num_traits::One;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LatticeCoverError {
    #[error("modulus a+bi must be nonzero")]
    ZeroModulus,
    #[error("norm {0} is even; coset certificates need odd norm")]
    EvenNorm(BigInt),
}

/// A fourth root of unity in `Z[i]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Unit {
    One,
    I,
    MinusOne,
    MinusI,
}

impl core::ops::Mul for Unit {
    type Output = Unit;
    // Units are powers of i; multiplication adds exponents.
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn mul(self, other: Unit) -> Unit {
        Unit::from_power(self.power() + other.power())
    }
}

impl Unit {
    pub fn inverse(self) -> Unit {
        Unit::from_power(4 - self.power())
    }

    /// Exponent `e` with `self = i^e`, in `{0,1,2,3}`.
    pub fn power(self) -> u8 {
        match self {
            Unit::One => 0,
            Unit::I => 1,
            Unit::MinusOne => 2,
            Unit::MinusI => 3,
        }
    }

    pub fn from_power(e: u8) -> Unit {
        match e % 4 {
            0 => Unit::One,
            1 => Unit::I,
            2 => Unit::MinusOne,
            _ => Unit::MinusI,
        }
    }

    /// `u * z` without a general multiplication.
    pub fn apply(self, z: &GaussInt) -> GaussInt {
        match self {
            Unit::One => z.clone(),
            Unit::I => GaussInt {
                re: -z.im.clone(),
                im: z.re.clone(),
            },
            Unit::MinusOne => GaussInt {
                re: -z.re.clone(),
                im: -z.im.clone(),
            },
            Unit::MinusI => GaussInt {
                re: z.im.clone(),
                im: -z.re.clone(),
            },
        }
    }
}

/// An element `z -> u*z + lambda` of the signature group.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct AffineLatticeMap {
    pub u: Unit,
    pub lambda: GaussInt,
}

impl AffineLatticeMap {
    pub fn new(u: Unit, lambda: GaussInt) -> Self {
        AffineLatticeMap { u, lambda }
    }

    pub fn identity() -> Self {
        AffineLatticeMap::new(Unit::One, GaussInt::zero())
    }

    pub fn translation(lambda: GaussInt) -> Self {
        AffineLatticeMap::new(Unit::One, lambda)
    }

    pub fn is_translation(&self) -> bool {
        self.u == Unit::One
    }

    pub fn apply(&self, z: &GaussInt) -> GaussInt {
        &self.u.apply(z) + &self.lambda
    }

    pub fn inverse(&self) -> Self {
        let ui = self.u.inverse();
        AffineLatticeMap::new(ui, -&ui.apply(&self.lambda))
    }

    /// `c0: z -> i*z`, the order-4 rotation about 0.
    pub fn c0() -> Self {
        AffineLatticeMap::new(Unit::I, GaussInt::zero())
    }

    /// `c1: z -> 1 + i*z`, the order-4 rotation about `(1+i)/2`.
    pub fn c1() -> Self {
        AffineLatticeMap::new(Unit::I, GaussInt::one())
    }

    /// `c_inf: z -> -z + i`, the order-2 rotation about `i/2`.
    pub fn c_inf() -> Self {
        AffineLatticeMap::new(Unit::MinusOne, GaussInt::i())
    }
}

/// `affine_compose(g1, g2)(z) = g1(g2(z))`; the right factor acts first.
pub fn affine_compose(g1: &AffineLatticeMap, g2: &AffineLatticeMap) -> AffineLatticeMap {
    AffineLatticeMap {
        u: g1.u * g2.u,
        lambda: &g1.u.apply(&g2.lambda) + &g1.lambda,
    }
}

fn affine_pow(g: &AffineLatticeMap, n: u32) -> AffineLatticeMap {
    let mut acc = AffineLatticeMap::identity();
    for _ in 0..n {
        acc = affine_compose(&acc, g);
    }
    acc
}

/// The permutation of residue indices `mu -> u*mu + lambda mod (beta)`.
/// This is the coset action of the signature group on the cosets of the
/// stabilizer subgroup attached to the ideal `(beta)`, labeled by residues.
pub fn coset_action(g: &AffineLatticeMap, residues: &ResidueSystem) -> Perm {
    Perm::from_fn(residues.len(), |j| {
        residues.reduce(&g.apply(residues.rep(j)))
    })
}

/// Certificate from the ideal `(a+bi)`: `sigma0, sigma1, sigma_inf` are the
/// coset actions of `c0, c1, c_inf` on the `d = a^2+b^2` residues.
pub fn build_lattice_cover(
    a: i64,
    b: i64,
) -> Result<(CoverCertificate, ResidueSystem), LatticeCoverError> {
    let beta = GaussInt::new(a, b);
    if beta.is_zero() {
        return Err(LatticeCoverError::ZeroModulus);
    }
    let norm = beta.norm();
    if (&norm % BigInt::from(2)).is_one() {
        let residues = residue_system(&beta).expect("nonzero modulus");
        let sigma0 = coset_action(&AffineLatticeMap::c0(), &residues);
        let sigma1 = coset_action(&AffineLatticeMap::c1(), &residues);
        let sigma_inf = coset_action(&AffineLatticeMap::c_inf(), &residues);
        let cert = CoverCertificate::new(sigma0, sigma1, sigma_inf, Provenance::Lattice)
            .expect("odd sums of two squares are 1 mod 4");
        Ok((cert, residues))
    } else {
        Err(LatticeCoverError::EvenNorm(norm))
    }
}

/// Flags from checking the defining relations of the signature group by
/// exact affine arithmetic, with no reduction mod an ideal.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UniversalRelationsReport {
    /// `c0^4 = c1^4 = c_inf^2 = 1`.
    pub orders: bool,
    /// `c0 c1 = c_inf`.
    pub product: bool,
    /// `u~ = c0^3 c1` and `v~ = c0 c1^3` are pure translations.
    pub length_four_words_translate: bool,
    /// `u~ v~ = v~ u~`.
    pub commute: bool,
    /// The translation parts of `(u~, v~)` span `Z[i]`: the 2x2 integer
    /// matrix of their components has determinant of absolute value 1.
    pub generate_lattice: bool,
    /// Computed translation parts of `u~` and `v~`, for the record.
    pub u_translation: GaussInt,
    pub v_translation: GaussInt,
}

impl UniversalRelationsReport {
    pub fn all_pass(&self) -> bool {
        self.orders
            && self.product
            && self.length_four_words_translate
            && self.commute
            && self.generate_lattice
    }
}

/// Verifies the relations that make the signature group universal of type
/// `(4,4,2)`.
pub fn universal_relations_check() -> UniversalRelationsReport {
    let c0 = AffineLatticeMap::c0();
    let c1 = AffineLatticeMap::c1();
    let cinf = AffineLatticeMap::c_inf();
    let id = AffineLatticeMap::identity();

    let orders =
        affine_pow(&c0, 4) == id && affine_pow(&c1, 4) == id && affine_pow(&cinf, 2) == id;
    let product = affine_compose(&c0, &c1) == cinf;

    let u_tilde = affine_compose(&affine_pow(&c0, 3), &c1);
    let v_tilde = affine_compose(&c0, &affine_pow(&c1, 3));
    let length_four_words_translate = u_tilde.is_translation() && v_tilde.is_translation();
    let commute = affine_compose(&u_tilde, &v_tilde) == affine_compose(&v_tilde, &u_tilde);

    let det = &u_tilde.lambda.re * &v_tilde.lambda.im - &u_tilde.lambda.im * &v_tilde.lambda.re;
    let generate_lattice = det == BigInt::from(1) || det == BigInt::from(-1);

    UniversalRelationsReport {
        orders,
        product,
        length_four_words_translate,
        commute,
        generate_lattice,
        u_translation: u_tilde.lambda,
        v_translation: v_tilde.lambda,
    }
}

/// What the commutator of `sigma0` and `sigma1` looks like on the residues
/// of `(a+bi)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CommutatorReport {
    /// Translation part of `[c0, c1]` in the signature group.
    pub translation: GaussInt,
    /// Additive order of that translation in `Z[i]/(a+bi)`.
    pub additive_order: usize,
    /// The permutation commutator `[sigma0, sigma1]` moves every point
    /// (vacuously true on one point).
    pub fixed_point_free: bool,
    /// Its order equals the additive order of the translation part.
    pub order_matches: bool,
    /// For prime `d`, it is a single `d`-cycle.
    pub d_cycle_when_prime: bool,
}

/// Checks that `[sigma0, sigma1]` acts as the translation the affine
/// commutator prescribes: fixed-point free, of order equal to the additive
/// order of its translation part, a `d`-cycle when `d` is prime.
pub fn commutator_translation(a: i64, b: i64) -> Result<CommutatorReport, LatticeCoverError> {
    let (cert, residues) = build_lattice_cover(a, b)?;
    let d = cert.d;

    let affine_comm = affine_compose(
        &affine_compose(&AffineLatticeMap::c0(), &AffineLatticeMap::c1()),
        &affine_compose(
            &AffineLatticeMap::c0().inverse(),
            &AffineLatticeMap::c1().inverse(),
        ),
    );
    debug_assert!(affine_comm.is_translation());
    let translation = affine_comm.lambda.clone();

    // Additive order of the translation class in Z[i]/(a+bi).
    let zero = residues.reduce(&GaussInt::zero());
    let mut additive_order = 1usize;
    let mut acc = translation.clone();
    while residues.reduce(&acc) != zero {
        acc = &acc + &translation;
        additive_order += 1;
    }

    let comm = cert.sigma0.commutator(&cert.sigma1).expect("same degree");
    let fixed_point_free = d == 1 || comm.fixed_points().is_empty();
    let order_matches = comm.order() == additive_order as u64;
    let d_cycle_when_prime = if crate::fp::is_prime(d as u64) {
        comm.cycle_type().lengths() == [d as u32]
    } else {
        true
    };

    Ok(CommutatorReport {
        translation,
        additive_order,
        fixed_point_free,
        order_matches,
        d_cycle_when_prime,
    })
}

/// All odd `d <= bound` expressible as `a^2+b^2` with `0 <= b <= a`, as
/// `(a, b, d)` rows ordered by `d` then `b`.
pub fn odd_norm_pairs(bound: u64) -> Vec<(i64, i64, u64)> {
    let mut out = Vec::new();
    let mut a = 0i64;
    while (a * a) as u64 <= bound {
        for b in 0..=a {
            let d = (a * a + b * b) as u64;
            if d % 2 == 1 && d <= bound {
                out.push((a, b, d));
            }
        }
        a += 1;
    }
    out.sort_unstable_by_key(|&(_, b, d)| (d, b));
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::{generated_group_order, CycleType, GroupOrder};
    use alloc::vec;

    #[test]
    fn c0_c1_compose_to_c_inf() {
        let got = affine_compose(&AffineLatticeMap::c0(), &AffineLatticeMap::c1());
        assert_eq!(got, AffineLatticeMap::c_inf());
    }

    #[test]
    fn c0_has_order_four() {
        let c0 = AffineLatticeMap::c0();
        assert_eq!(affine_pow(&c0, 4), AffineLatticeMap::identity());
        assert_ne!(affine_pow(&c0, 2), AffineLatticeMap::identity());
    }

    #[test]
    fn c0_cubed_c1_is_translation_by_minus_i() {
        let u_tilde = affine_compose(
            &affine_pow(&AffineLatticeMap::c0(), 3),
            &AffineLatticeMap::c1(),
        );
        assert_eq!(u_tilde, AffineLatticeMap::translation(GaussInt::new(0, -1)));
    }

    #[test]
    fn inverse_law() {
        let g = AffineLatticeMap::new(Unit::MinusI, GaussInt::new(3, -2));
        assert_eq!(
            affine_compose(&g, &g.inverse()),
            AffineLatticeMap::identity()
        );
        assert_eq!(
            affine_compose(&g.inverse(), &g),
            AffineLatticeMap::identity()
        );
    }

    #[test]
    fn coset_action_identity() {
        let residues = residue_system(&GaussInt::new(2, 1)).unwrap();
        let perm = coset_action(&AffineLatticeMap::identity(), &residues);
        assert!(perm.is_identity());
    }

    #[test]
    fn coset_action_c0_mod_two_plus_i() {
        // mu -> i*mu with i = 3 mod (2+i): one fixed point (the class of 0)
        // and one 4-cycle.
        let residues = residue_system(&GaussInt::new(2, 1)).unwrap();
        let sigma0 = coset_action(&AffineLatticeMap::c0(), &residues);
        assert_eq!(sigma0.images(), &[0, 3, 1, 4, 2]);
        assert_eq!(sigma0.fixed_points(), vec![0]);
        assert_eq!(sigma0.cycle_type(), CycleType::from_lengths(vec![1, 4]));
    }

    #[test]
    fn coset_action_translation_is_five_cycle() {
        // Z[i]/(2+i) is Z/5; translation by 1 has additive order 5.
        let residues = residue_system(&GaussInt::new(2, 1)).unwrap();
        let t = coset_action(&AffineLatticeMap::translation(GaussInt::one()), &residues);
        assert_eq!(t.cycle_type(), CycleType::from_lengths(vec![5]));
    }

    #[test]
    fn coset_action_is_homomorphism() {
        let residues = residue_system(&GaussInt::new(3, 2)).unwrap();
        let g1 = AffineLatticeMap::new(Unit::I, GaussInt::new(2, -1));
        let g2 = AffineLatticeMap::new(Unit::MinusI, GaussInt::new(-1, 3));
        let lhs = coset_action(&affine_compose(&g1, &g2), &residues);
        let rhs = coset_action(&g1, &residues)
            .compose(&coset_action(&g2, &residues))
            .unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn lattice_cover_trivial() {
        let (cert, residues) = build_lattice_cover(1, 0).unwrap();
        assert_eq!(cert.d, 1);
        assert_eq!(residues.len(), 1);
        assert!(cert.verify().valid());
    }

    #[test]
    fn lattice_cover_two_one() {
        let (cert, _) = build_lattice_cover(2, 1).unwrap();
        assert_eq!(cert.d, 5);
        // sigma0 = (1 3 4 2) with 0 fixed; sigma_inf = (0 3)(1 2) with 4
        // fixed, from mu -> 3*mu and mu -> -mu + 3 mod 5.
        assert_eq!(cert.sigma0, Perm::from_cycles(5, &[&[1, 3, 4, 2]]).unwrap());
        assert_eq!(
            cert.sigma_inf,
            Perm::from_cycles(5, &[&[0, 3], &[1, 2]]).unwrap()
        );
        let report = cert.verify();
        assert!(report.valid());
        assert_eq!(report.group_order, Some(20));
    }

    #[test]
    fn lattice_cover_three_zero() {
        let (cert, _) = build_lattice_cover(3, 0).unwrap();
        assert_eq!(cert.d, 9);
        assert_eq!(
            cert.sigma0.cycle_type(),
            CycleType::from_lengths(vec![1, 4, 4])
        );
        assert_eq!(
            cert.sigma1.cycle_type(),
            CycleType::from_lengths(vec![1, 4, 4])
        );
        assert_eq!(
            cert.sigma_inf.cycle_type(),
            CycleType::from_lengths(vec![1, 2, 2, 2, 2])
        );
        let report = cert.verify();
        assert!(report.valid());
        assert_eq!(report.group_order, Some(36));
    }

    #[test]
    fn lattice_cover_rejects_bad_moduli() {
        assert_eq!(
            build_lattice_cover(0, 0).unwrap_err(),
            LatticeCoverError::ZeroModulus
        );
        assert_eq!(
            build_lattice_cover(1, 1).unwrap_err(),
            LatticeCoverError::EvenNorm(BigInt::from(2))
        );
    }

    #[test]
    fn unit_multiple_invariance() {
        // (a, b) and (-b, a) generate the same ideal, hence identical
        // residue systems and identical certificates.
        for (a, b) in [(2i64, 1i64), (3, 2), (3, 0), (4, 1)] {
            let (c1, r1) = build_lattice_cover(a, b).unwrap();
            let (c2, r2) = build_lattice_cover(-b, a).unwrap();
            assert_eq!(r1.reps(), r2.reps());
            assert_eq!(c1, c2);
        }
    }

    #[test]
    fn universal_relations() {
        let report = universal_relations_check();
        assert!(report.all_pass());
        // Computed translation parts; the convention-robust claim is that
        // both are translations jointly generating Z[i].
        assert_eq!(report.u_translation, GaussInt::new(0, -1));
        assert_eq!(report.v_translation, GaussInt::new(-1, 0));
    }

    #[test]
    fn commutator_reports() {
        let r = commutator_translation(2, 1).unwrap();
        assert!(r.fixed_point_free && r.order_matches && r.d_cycle_when_prime);
        assert_eq!(r.additive_order, 5);

        let r = commutator_translation(3, 0).unwrap();
        assert!(r.fixed_point_free && r.order_matches);
        assert_eq!(r.additive_order, 3);

        let r = commutator_translation(1, 0).unwrap();
        assert_eq!(r.additive_order, 1);
        assert!(r.fixed_point_free);
    }

    #[test]
    fn commutator_three_zero_is_three_three_cycles() {
        let (cert, _) = build_lattice_cover(3, 0).unwrap();
        let comm = cert.sigma0.commutator(&cert.sigma1).unwrap();
        assert_eq!(comm.cycle_type(), CycleType::from_lengths(vec![3, 3, 3]));
    }

    #[test]
    fn sigma0_and_its_square_fix_exactly_one_residue() {
        for (a, b) in [(2i64, 1i64), (3, 0), (3, 2), (4, 1), (5, 2)] {
            let (cert, _) = build_lattice_cover(a, b).unwrap();
            assert_eq!(cert.sigma0.fixed_points(), vec![0]);
            let sq = cert.sigma0.compose(&cert.sigma0).unwrap();
            assert_eq!(sq.fixed_points(), vec![0]);
        }
    }

    #[test]
    fn generated_order_is_4d_small() {
        for (a, b) in [(2i64, 1i64), (3, 2), (4, 1)] {
            let (cert, _) = build_lattice_cover(a, b).unwrap();
            let gens = [cert.sigma0.clone(), cert.sigma1.clone()];
            assert_eq!(
                generated_group_order(&gens, 100_000),
                GroupOrder::Exact(4 * cert.d)
            );
        }
    }

    #[test]
    fn odd_norm_pair_table() {
        let pairs = odd_norm_pairs(25);
        assert!(pairs.contains(&(1, 0, 1)));
        assert!(pairs.contains(&(2, 1, 5)));
        assert!(pairs.contains(&(3, 2, 13)));
        assert!(pairs.contains(&(5, 0, 25)) && pairs.contains(&(4, 3, 25)));
        assert!(pairs.iter().all(|&(_, _, d)| d % 2 == 1));
    }
}
