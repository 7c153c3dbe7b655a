//! Exact model of the Galois group of the composed cover on the torus
//! `C/Z[i]`: the group of maps `p -> w*p + c` generated by the rotation
//! `alpha: p -> i*p`, the involution `beta: p -> delta - p` with
//! `delta = (1+i)/2`, and the translations by the kernel of multiplication
//! by `a+bi`. For odd `d = a^2+b^2` it has order `8d`, translation subgroup
//! of order `2d`, central element `gamma = alpha^2 beta` (translation by
//! `delta`), and quotient by `<gamma>` of order `4d`.

use crate::lattice::{build_lattice_cover, Unit};
use crate::perm::{generated_group_order, order_cap_for_degree};
use alloc::collections::BTreeSet;
use alloc::vec::Vec;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GaloisError {
    #[error("(a, b) must be nonzero")]
    ZeroInput,
    #[error("norm {0} is even; the torus model needs odd norm")]
    EvenNorm(u64),
}

/// A point of `C/Z[i]` with exact rational coordinates in `[0,1) x [0,1)`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct TorusPoint {
    re: BigRational,
    im: BigRational,
}

fn frac(r: BigRational) -> BigRational {
    let f = r.floor();
    r - f
}

impl TorusPoint {
    pub fn new(re: BigRational, im: BigRational) -> Self {
        TorusPoint {
            re: frac(re),
            im: frac(im),
        }
    }

    pub fn from_fraction(re_num: i64, im_num: i64, den: i64) -> Self {
        TorusPoint::new(
            BigRational::new(BigInt::from(re_num), BigInt::from(den)),
            BigRational::new(BigInt::from(im_num), BigInt::from(den)),
        )
    }

    pub fn zero() -> Self {
        TorusPoint {
            re: BigRational::zero(),
            im: BigRational::zero(),
        }
    }

    /// `delta = (1+i)/2`, the only nontrivial 2-torsion point fixed by
    /// multiplication by `i`.
    pub fn delta() -> Self {
        TorusPoint::from_fraction(1, 1, 2)
    }

    pub fn re(&self) -> &BigRational {
        &self.re
    }

    pub fn im(&self) -> &BigRational {
        &self.im
    }

    pub fn add(&self, other: &TorusPoint) -> TorusPoint {
        TorusPoint::new(&self.re + &other.re, &self.im + &other.im)
    }

    pub fn neg(&self) -> TorusPoint {
        TorusPoint::new(-self.re.clone(), -self.im.clone())
    }

    /// Multiplication by a fourth root of unity.
    pub fn rotate(&self, w: Unit) -> TorusPoint {
        match w {
            Unit::One => self.clone(),
            Unit::I => TorusPoint::new(-self.im.clone(), self.re.clone()),
            Unit::MinusOne => self.neg(),
            Unit::MinusI => TorusPoint::new(self.im.clone(), -self.re.clone()),
        }
    }
}

/// A map `p -> w*p + c` of the torus, `w` a fourth root of unity.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct TorusAffineMap {
    pub w: Unit,
    pub c: TorusPoint,
}

impl TorusAffineMap {
    pub fn new(w: Unit, c: TorusPoint) -> Self {
        TorusAffineMap { w, c }
    }

    pub fn identity() -> Self {
        TorusAffineMap::new(Unit::One, TorusPoint::zero())
    }

    pub fn translation(c: TorusPoint) -> Self {
        TorusAffineMap::new(Unit::One, c)
    }

    pub fn is_translation(&self) -> bool {
        self.w == Unit::One
    }

    /// `alpha: p -> i*p`.
    pub fn alpha() -> Self {
        TorusAffineMap::new(Unit::I, TorusPoint::zero())
    }

    /// `beta: p -> delta - p`.
    pub fn beta() -> Self {
        TorusAffineMap::new(Unit::MinusOne, TorusPoint::delta())
    }

    pub fn apply(&self, p: &TorusPoint) -> TorusPoint {
        p.rotate(self.w).add(&self.c)
    }

    /// `compose(f, g)(p) = f(g(p))`; the right factor acts first.
    pub fn compose(&self, other: &TorusAffineMap) -> TorusAffineMap {
        TorusAffineMap {
            w: self.w * other.w,
            c: other.c.rotate(self.w).add(&self.c),
        }
    }

    pub fn inverse(&self) -> TorusAffineMap {
        let wi = self.w.inverse();
        TorusAffineMap {
            w: wi,
            c: self.c.rotate(wi).neg(),
        }
    }
}

/// The `d = a^2+b^2` kernel points of multiplication by `a+bi` on the
/// torus: the classes `lambda/(a+bi) mod Z[i]` for `lambda` over a residue
/// system. Contains 0 and is closed under addition.
pub fn kernel_points(a: i64, b: i64) -> Result<Vec<TorusPoint>, GaloisError> {
    if a == 0 && b == 0 {
        return Err(GaloisError::ZeroInput);
    }
    let beta = crate::gaussian::GaussInt::new(a, b);
    let residues = crate::gaussian::residue_system(&beta).expect("nonzero modulus");
    let d = BigInt::from(a * a + b * b);
    let out = residues
        .reps()
        .iter()
        .map(|lambda| {
            // lambda/(a+bi) = lambda * (a-bi) / d.
            let num = lambda * &beta.conjugate();
            TorusPoint::new(
                BigRational::new(num.re, d.clone()),
                BigRational::new(num.im, d.clone()),
            )
        })
        .collect();
    Ok(out)
}

/// Enumerates the full Galois group by closure from `alpha`, `beta`, and
/// translations by `1/(a+bi)` and `i/(a+bi)` (which generate the kernel).
pub fn build_galois_group(a: i64, b: i64) -> Result<Vec<TorusAffineMap>, GaloisError> {
    let d = (a * a + b * b) as u64;
    if d == 0 {
        return Err(GaloisError::ZeroInput);
    }
    if d.is_multiple_of(2) {
        return Err(GaloisError::EvenNorm(d));
    }
    let den = d as i64;
    let gens = [
        TorusAffineMap::alpha(),
        TorusAffineMap::beta(),
        TorusAffineMap::translation(TorusPoint::from_fraction(a, -b, den)),
        TorusAffineMap::translation(TorusPoint::from_fraction(b, a, den)),
    ];
    let mut elements: BTreeSet<TorusAffineMap> = BTreeSet::new();
    elements.insert(TorusAffineMap::identity());
    let mut queue: Vec<TorusAffineMap> = alloc::vec![TorusAffineMap::identity()];
    while let Some(g) = queue.pop() {
        for gen in &gens {
            let h = gen.compose(&g);
            if !elements.contains(&h) {
                elements.insert(h.clone());
                queue.push(h);
            }
        }
    }
    Ok(elements.into_iter().collect())
}

/// Structural facts about the Galois group, each verified independently.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GaloisStructureReport {
    pub d: usize,
    pub order: usize,
    /// `|Gamma| = 8d`.
    pub order_is_8d: bool,
    /// `gamma = alpha^2 beta` is the translation by `delta`.
    pub gamma_is_delta_translation: bool,
    /// `gamma` commutes with every element.
    pub gamma_central: bool,
    pub translation_order: usize,
    /// The translation subgroup has order `2d`.
    pub translation_order_is_2d: bool,
    /// The translations are exactly `{kappa, kappa + delta}` over kernel
    /// points `kappa`.
    pub translations_are_kernel_and_delta: bool,
    /// The linear-part map onto the fourth roots of unity is surjective
    /// with the translations as kernel.
    pub linear_part_surjective: bool,
    pub quotient_order: usize,
    /// `|Gamma / <gamma>| = 4d`.
    pub quotient_order_is_4d: bool,
    /// Generated order of the matching lattice-cover certificate.
    pub lattice_group_order: Option<usize>,
    /// Quotient order equals the certificate's generated order. Fails
    /// literally at `d = 1`, where the one-point coset action is not
    /// faithful and the permutation group collapses to the trivial group.
    pub quotient_matches_lattice: bool,
}

impl GaloisStructureReport {
    /// All structural facts hold; the lattice comparison is waived at the
    /// degenerate degree `d = 1`.
    pub fn all_pass(&self) -> bool {
        self.order_is_8d
            && self.gamma_is_delta_translation
            && self.gamma_central
            && self.translation_order_is_2d
            && self.translations_are_kernel_and_delta
            && self.linear_part_surjective
            && self.quotient_order_is_4d
            && (self.d == 1 || self.quotient_matches_lattice)
    }
}

/// Verifies the order and subgroup structure of the Galois group for the
/// multiplication-by-`a+bi` cover and compares the `<gamma>`-quotient order
/// with the generated order of the matching lattice-cover certificate.
pub fn structure_checks(a: i64, b: i64) -> Result<GaloisStructureReport, GaloisError> {
    let group = build_galois_group(a, b)?;
    let d = (a * a + b * b) as usize;
    let order = group.len();
    let order_is_8d = order == 8 * d;

    let alpha = TorusAffineMap::alpha();
    let gamma = alpha.compose(&alpha).compose(&TorusAffineMap::beta());
    let gamma_is_delta_translation =
        gamma == TorusAffineMap::translation(TorusPoint::delta());
    let gamma_central = group
        .iter()
        .all(|g| g.compose(&gamma) == gamma.compose(g));

    let translations: BTreeSet<TorusPoint> = group
        .iter()
        .filter(|g| g.is_translation())
        .map(|g| g.c.clone())
        .collect();
    let translation_order = translations.len();
    let translation_order_is_2d = translation_order == 2 * d;

    let kernel = kernel_points(a, b)?;
    let mut expected: BTreeSet<TorusPoint> = BTreeSet::new();
    for kappa in &kernel {
        expected.insert(kappa.clone());
        expected.insert(kappa.add(&TorusPoint::delta()));
    }
    let translations_are_kernel_and_delta = translations == expected;

    let units: BTreeSet<Unit> = group.iter().map(|g| g.w).collect();
    let linear_part_surjective = units.len() == 4 && order == 4 * translation_order;

    // Count <gamma>-cosets by pairing each element with its
    // gamma-composite.
    let mut claimed: BTreeSet<&TorusAffineMap> = BTreeSet::new();
    let mut quotient_order = 0usize;
    let element_set: BTreeSet<&TorusAffineMap> = group.iter().collect();
    for g in &group {
        if claimed.contains(g) {
            continue;
        }
        let partner = gamma.compose(g);
        debug_assert!(element_set.contains(&partner));
        claimed.insert(g);
        if let Some(p) = element_set.get(&partner) {
            claimed.insert(p);
        }
        quotient_order += 1;
    }
    let quotient_order_is_4d = quotient_order == 4 * d;

    let lattice_group_order = build_lattice_cover(a, b).ok().and_then(|(cert, _)| {
        let cap = order_cap_for_degree(cert.d);
        generated_group_order(&[cert.sigma0, cert.sigma1, cert.sigma_inf], cap).exact()
    });
    let quotient_matches_lattice = lattice_group_order == Some(quotient_order);

    Ok(GaloisStructureReport {
        d,
        order,
        order_is_8d,
        gamma_is_delta_translation,
        gamma_central,
        translation_order,
        translation_order_is_2d,
        translations_are_kernel_and_delta,
        linear_part_surjective,
        quotient_order,
        quotient_order_is_4d,
        lattice_group_order,
        quotient_matches_lattice,
    })
}

/// `(a+bi)*delta - delta` lies in `Z[i]` iff `a^2+b^2` is odd; this is the
/// commutation condition between multiplication by `a+bi` and the central
/// translation.
pub fn commutation_check(a: i64, b: i64) -> bool {
    // (a+bi - 1)(1+i)/2 = ((a-1-b) + (a-1+b)i)/2.
    (a - 1 - b) % 2 == 0 && (a - 1 + b) % 2 == 0
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn torus_point_normalizes() {
        let p = TorusPoint::new(rat(7, 5), rat(-1, 5));
        assert_eq!(p, TorusPoint::from_fraction(2, 4, 5));
    }

    #[test]
    fn kernel_points_trivial() {
        assert_eq!(kernel_points(1, 0).unwrap(), vec![TorusPoint::zero()]);
        assert_eq!(kernel_points(0, 0).unwrap_err(), GaloisError::ZeroInput);
    }

    #[test]
    fn kernel_points_two_one() {
        let points = kernel_points(2, 1).unwrap();
        assert_eq!(points.len(), 5);
        // 1/(2+i) = (2-i)/5 = (2/5, 4/5) on the torus.
        assert!(points.contains(&TorusPoint::from_fraction(2, 4, 5)));
        assert!(points.contains(&TorusPoint::zero()));
    }

    #[test]
    fn kernel_points_three_zero() {
        let points = kernel_points(3, 0).unwrap();
        assert_eq!(points.len(), 9);
        for x in 0..3 {
            for y in 0..3 {
                assert!(points.contains(&TorusPoint::from_fraction(x, y, 3)));
            }
        }
    }

    #[test]
    fn kernel_is_a_subgroup() {
        for (a, b) in [(2i64, 1i64), (3, 0), (3, 2)] {
            let points = kernel_points(a, b).unwrap();
            let set: BTreeSet<_> = points.iter().cloned().collect();
            for p in &points {
                assert!(set.contains(&p.neg()));
                for q in &points {
                    assert!(set.contains(&p.add(q)));
                }
            }
        }
    }

    #[test]
    fn group_orders() {
        assert_eq!(build_galois_group(1, 0).unwrap().len(), 8);
        assert_eq!(build_galois_group(2, 1).unwrap().len(), 40);
        assert_eq!(
            build_galois_group(1, 1).unwrap_err(),
            GaloisError::EvenNorm(2)
        );
    }

    #[test]
    fn translation_subgroup_two_one() {
        let group = build_galois_group(2, 1).unwrap();
        let translations = group.iter().filter(|g| g.is_translation()).count();
        assert_eq!(translations, 10);
    }

    #[test]
    fn group_has_inverses_and_closure() {
        let group = build_galois_group(2, 1).unwrap();
        let set: BTreeSet<_> = group.iter().cloned().collect();
        for g in &group {
            assert!(set.contains(&g.inverse()));
            for h in group.iter().take(8) {
                assert!(set.contains(&g.compose(h)));
            }
        }
    }

    #[test]
    fn composition_is_associative() {
        let f = TorusAffineMap::new(Unit::I, TorusPoint::from_fraction(1, 3, 5));
        let g = TorusAffineMap::beta();
        let h = TorusAffineMap::new(Unit::MinusI, TorusPoint::from_fraction(2, 1, 7));
        assert_eq!(
            f.compose(&g).compose(&h),
            f.compose(&g.compose(&h))
        );
    }

    #[test]
    fn beta_commutes_with_alpha() {
        // alpha beta = beta alpha on the torus (i*delta = delta mod Z[i]),
        // so the point group generated by the two is Abelian of order 8.
        let alpha = TorusAffineMap::alpha();
        let beta = TorusAffineMap::beta();
        assert_eq!(alpha.compose(&beta), beta.compose(&alpha));
    }

    #[test]
    fn conjugated_translation_is_rotated_translation() {
        let rho = TorusAffineMap::new(Unit::I, TorusPoint::from_fraction(1, 2, 5));
        let tau = TorusAffineMap::translation(TorusPoint::from_fraction(3, 1, 7));
        let conj = rho.compose(&tau).compose(&rho.inverse());
        assert_eq!(
            conj,
            TorusAffineMap::translation(tau.c.rotate(Unit::I))
        );
    }

    #[test]
    fn structure_two_one() {
        let r = structure_checks(2, 1).unwrap();
        assert!(r.all_pass());
        assert_eq!(r.order, 40);
        assert_eq!(r.translation_order, 10);
        assert_eq!(r.quotient_order, 20);
        assert_eq!(r.lattice_group_order, Some(20));
    }

    #[test]
    fn structure_three_two() {
        let r = structure_checks(3, 2).unwrap();
        assert!(r.all_pass());
        assert_eq!(r.order, 104);
        assert_eq!(r.translation_order, 26);
        assert_eq!(r.quotient_order, 52);
    }

    #[test]
    fn structure_trivial_degree() {
        let r = structure_checks(1, 0).unwrap();
        assert_eq!(r.order, 8);
        assert_eq!(r.quotient_order, 4);
        assert!(r.quotient_order_is_4d);
        // The one-point action is not faithful: the certificate group is
        // trivial while the quotient has order 4.
        assert_eq!(r.lattice_group_order, Some(1));
        assert!(!r.quotient_matches_lattice);
        assert!(r.all_pass());
    }

    #[test]
    fn commutation_examples() {
        assert!(commutation_check(2, 1));
        assert!(!commutation_check(1, 1));
        assert!(commutation_check(1, 0));
    }

    #[test]
    fn commutation_matches_parity() {
        for a in -20..=20i64 {
            for b in -20..=20i64 {
                assert_eq!(commutation_check(a, b), (a * a + b * b) % 2 == 1);
            }
        }
    }
}
