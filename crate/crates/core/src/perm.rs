//! Permutations on `{0,...,d-1}`, cycle types, transitivity, generated-group
//! orders, and verification of cover certificates for the branching types
//! `(1,4,...,4)`, `(1,4,...,4)`, `(1,2,...,2)`.
//!
//! Product convention: `compose(f, g)` applies `g` first, so juxtaposition
//! `fg` in identities like `sigma0 sigma1 = sigma_inf` reads as function
//! composition `f ∘ g`. Points are 0-indexed.

use alloc::collections::{BTreeSet, VecDeque};
use alloc::vec;
use alloc::vec::Vec;
use thiserror::Error;

/// Default element cap for closure enumeration.
pub const DEFAULT_ORDER_CAP: usize = 100_000;

/// Total image-slot budget for closure enumeration (`elements * degree`).
/// Keeps the element set bounded to a couple hundred MB no matter the
/// degree.
const CLOSURE_SLOT_BUDGET: usize = 50_000_000;

/// Element cap for closure enumeration at a given degree: the default cap,
/// lowered when `cap * degree` image slots would not fit the memory
/// budget.
pub fn order_cap_for_degree(degree: usize) -> usize {
    DEFAULT_ORDER_CAP.min((CLOSURE_SLOT_BUDGET / degree.max(1)).max(1))
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PermError {
    #[error("degree mismatch: {left} vs {right}")]
    DegreeMismatch { left: usize, right: usize },
    #[error("images of length {degree} are not a bijection")]
    NotABijection { degree: usize },
}

/// A permutation of `{0,...,d-1}`, stored as its image vector.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Perm {
    images: Vec<u32>,
}

impl Perm {
    pub fn identity(degree: usize) -> Self {
        Perm {
            images: (0..degree as u32).collect(),
        }
    }

    /// Builds a permutation from its image vector, checking bijectivity.
    pub fn from_images(images: Vec<u32>) -> Result<Self, PermError> {
        let d = images.len();
        let mut seen = vec![false; d];
        for &x in &images {
            if (x as usize) >= d || seen[x as usize] {
                return Err(PermError::NotABijection { degree: d });
            }
            seen[x as usize] = true;
        }
        Ok(Perm { images })
    }

    /// Builds a permutation of the given degree from disjoint cycles;
    /// points not mentioned are fixed.
    pub fn from_cycles(degree: usize, cycles: &[&[u32]]) -> Result<Self, PermError> {
        let mut images: Vec<u32> = (0..degree as u32).collect();
        for cycle in cycles {
            for (i, &x) in cycle.iter().enumerate() {
                if x as usize >= degree {
                    return Err(PermError::NotABijection { degree });
                }
                images[x as usize] = cycle[(i + 1) % cycle.len()];
            }
        }
        Perm::from_images(images)
    }

    /// Evaluates a function of `{0,...,d-1}` into itself as a permutation.
    /// Panics if the map is not bijective.
    pub fn from_fn(degree: usize, f: impl Fn(usize) -> usize) -> Self {
        let images = (0..degree).map(|x| f(x) as u32).collect();
        Perm::from_images(images).expect("map is not a bijection")
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    pub fn apply(&self, point: usize) -> usize {
        self.images[point] as usize
    }

    pub fn images(&self) -> &[u32] {
        &self.images
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| i as u32 == x)
    }

    /// `compose(f, g)(x) = f(g(x))`; the right factor acts first.
    pub fn compose(&self, other: &Perm) -> Result<Perm, PermError> {
        if self.degree() != other.degree() {
            return Err(PermError::DegreeMismatch {
                left: self.degree(),
                right: other.degree(),
            });
        }
        let images = other
            .images
            .iter()
            .map(|&x| self.images[x as usize])
            .collect();
        Ok(Perm { images })
    }

    pub fn inverse(&self) -> Perm {
        let mut images = vec![0u32; self.degree()];
        for (i, &x) in self.images.iter().enumerate() {
            images[x as usize] = i as u32;
        }
        Perm { images }
    }

    /// `g f g^{-1}`.
    pub fn conjugate_by(&self, g: &Perm) -> Result<Perm, PermError> {
        g.compose(self)?.compose(&g.inverse())
    }

    /// Commutator `self other self^{-1} other^{-1}`.
    pub fn commutator(&self, other: &Perm) -> Result<Perm, PermError> {
        self.compose(other)?
            .compose(&self.inverse())?
            .compose(&other.inverse())
    }

    /// Disjoint cycles, each rotated to start at its least point, ordered by
    /// that point. Fixed points appear as 1-cycles.
    pub fn cycles(&self) -> Vec<Vec<u32>> {
        let d = self.degree();
        let mut seen = vec![false; d];
        let mut out = Vec::new();
        for start in 0..d {
            if seen[start] {
                continue;
            }
            let mut cycle = Vec::new();
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                cycle.push(x as u32);
                x = self.apply(x);
            }
            out.push(cycle);
        }
        out
    }

    pub fn cycle_type(&self) -> CycleType {
        CycleType::from_lengths(self.cycles().iter().map(|c| c.len() as u32).collect())
    }

    pub fn fixed_points(&self) -> Vec<usize> {
        (0..self.degree()).filter(|&x| self.apply(x) == x).collect()
    }

    /// Order of the cyclic group generated by this permutation
    /// (lcm of its cycle lengths).
    pub fn order(&self) -> u64 {
        self.cycle_type()
            .lengths()
            .iter()
            .fold(1u64, |acc, &l| num_integer::lcm(acc, l as u64))
    }
}

/// Multiset of cycle lengths, sorted ascending.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct CycleType {
    lengths: Vec<u32>,
}

impl CycleType {
    pub fn from_lengths(mut lengths: Vec<u32>) -> Self {
        lengths.sort_unstable();
        CycleType { lengths }
    }

    /// The branching type `(1, 4, ..., 4)` with `k` fours.
    pub fn one_and_fours(k: usize) -> Self {
        let mut lengths = vec![1];
        lengths.extend(core::iter::repeat_n(4, k));
        CycleType { lengths }
    }

    /// The branching type `(1, 2, ..., 2)` with `twos` twos.
    pub fn one_and_twos(twos: usize) -> Self {
        let mut lengths = vec![1];
        lengths.extend(core::iter::repeat_n(2, twos));
        CycleType { lengths }
    }

    pub fn lengths(&self) -> &[u32] {
        &self.lengths
    }

    /// Number of cycles (the length of the multiset).
    pub fn cycle_count(&self) -> usize {
        self.lengths.len()
    }

    pub fn total(&self) -> u64 {
        self.lengths.iter().map(|&l| l as u64).sum()
    }
}

impl core::fmt::Display for CycleType {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        write!(f, "(")?;
        for (i, l) in self.lengths.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{l}")?;
        }
        write!(f, ")")
    }
}

/// Orbit of point 0 under the generated group covers all points.
pub fn is_transitive(gens: &[Perm], degree: usize) -> bool {
    if degree == 0 {
        return true;
    }
    let mut seen = vec![false; degree];
    seen[0] = true;
    let mut count = 1usize;
    let mut queue = VecDeque::from([0usize]);
    while let Some(x) = queue.pop_front() {
        for g in gens {
            let y = g.apply(x);
            if !seen[y] {
                seen[y] = true;
                count += 1;
                queue.push_back(y);
            }
        }
    }
    count == degree
}

/// Result of a closure enumeration: either the exact order of the generated
/// subgroup, or notice that the closure grew past the cap. `CapExceeded`
/// signals the cap, not a failure.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GroupOrder {
    Exact(usize),
    CapExceeded,
}

impl GroupOrder {
    pub fn exact(self) -> Option<usize> {
        match self {
            GroupOrder::Exact(n) => Some(n),
            GroupOrder::CapExceeded => None,
        }
    }
}

/// Order of the subgroup generated by `gens`, by plain closure enumeration
/// (BFS over left multiplication by the generators).
pub fn generated_group_order(gens: &[Perm], cap: usize) -> GroupOrder {
    if gens.is_empty() {
        return GroupOrder::Exact(1);
    }
    let degree = gens[0].degree();
    let mut elements: BTreeSet<Vec<u32>> = BTreeSet::new();
    elements.insert(Perm::identity(degree).images);
    let mut queue: VecDeque<Perm> = VecDeque::from([Perm::identity(degree)]);
    while let Some(g) = queue.pop_front() {
        for gen in gens {
            let h = gen.compose(&g).expect("generators share a degree");
            if !elements.contains(&h.images) {
                if elements.len() >= cap {
                    return GroupOrder::CapExceeded;
                }
                elements.insert(h.images.clone());
                queue.push_back(h);
            }
        }
    }
    GroupOrder::Exact(elements.len())
}

/// Where a certificate came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Provenance {
    Prime,
    Lattice,
    Search,
    Manual,
}

impl Provenance {
    pub fn as_str(self) -> &'static str {
        match self {
            Provenance::Prime => "Prime",
            Provenance::Lattice => "Lattice",
            Provenance::Search => "Search",
            Provenance::Manual => "Manual",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CertificateError {
    #[error("certificate permutations have unequal degrees")]
    MixedDegrees,
    #[error("degree {d} is not congruent to 1 mod 4")]
    BadResidue { d: usize },
}

/// A permutation triple `(sigma0, sigma1, sigma_inf)` of degree `d = 4k+1`:
/// the combinatorial witness of a branched cover of the sphere, ramified
/// over three points with types `(1,4^k)`, `(1,4^k)`, `(1,2^{2k})`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoverCertificate {
    pub d: usize,
    pub k: usize,
    pub sigma0: Perm,
    pub sigma1: Perm,
    pub sigma_inf: Perm,
    pub provenance: Provenance,
}

impl CoverCertificate {
    pub fn new(
        sigma0: Perm,
        sigma1: Perm,
        sigma_inf: Perm,
        provenance: Provenance,
    ) -> Result<Self, CertificateError> {
        let d = sigma0.degree();
        if sigma1.degree() != d || sigma_inf.degree() != d {
            return Err(CertificateError::MixedDegrees);
        }
        if d % 4 != 1 {
            return Err(CertificateError::BadResidue { d });
        }
        Ok(CoverCertificate {
            d,
            k: (d - 1) / 4,
            sigma0,
            sigma1,
            sigma_inf,
            provenance,
        })
    }

    /// The degenerate one-point certificate.
    pub fn trivial(provenance: Provenance) -> Self {
        CoverCertificate {
            d: 1,
            k: 0,
            sigma0: Perm::identity(1),
            sigma1: Perm::identity(1),
            sigma_inf: Perm::identity(1),
            provenance,
        }
    }

    /// Runs the independent certificate checks; failures are report entries,
    /// never errors.
    pub fn verify(&self) -> VerificationReport {
        let product = match self.sigma0.compose(&self.sigma1) {
            Ok(p) => p == self.sigma_inf,
            Err(_) => false,
        };

        let t0 = self.sigma0.cycle_type();
        let t1 = self.sigma1.cycle_type();
        let tinf = self.sigma_inf.cycle_type();
        let types = t0 == CycleType::one_and_fours(self.k)
            && t1 == CycleType::one_and_fours(self.k)
            && tinf == CycleType::one_and_twos(2 * self.k);

        let gens = [
            self.sigma0.clone(),
            self.sigma1.clone(),
            self.sigma_inf.clone(),
        ];
        let transitive = is_transitive(&gens, self.d);

        // Riemann-Hurwitz with r cycles over the three fibers:
        // 2d - (3d - r) = 2 forces genus 0.
        let r = t0.cycle_count() + t1.cycle_count() + tinf.cycle_count();
        let riemann_hurwitz = r == self.d + 2;

        let group_order = generated_group_order(&gens, order_cap_for_degree(self.d)).exact();
        let order_is_4d = group_order == Some(4 * self.d);

        VerificationReport {
            product,
            types,
            transitive,
            riemann_hurwitz,
            group_order,
            order_is_4d,
        }
    }
}

/// Independent pass/fail flags from [`CoverCertificate::verify`]. The group
/// order is reported but not required for validity; `None` means the closure
/// exceeded the enumeration cap.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerificationReport {
    pub product: bool,
    pub types: bool,
    pub transitive: bool,
    pub riemann_hurwitz: bool,
    pub group_order: Option<usize>,
    pub order_is_4d: bool,
}

impl VerificationReport {
    pub fn valid(&self) -> bool {
        self.product && self.types && self.transitive && self.riemann_hurwitz
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn affine_mod5(a: i64, b: i64) -> Perm {
        Perm::from_fn(5, |x| ((a * x as i64 + b).rem_euclid(5)) as usize)
    }

    #[test]
    fn compose_identity_law() {
        let g = Perm::from_cycles(6, &[&[0, 3, 1]]).unwrap();
        let id = Perm::identity(6);
        assert_eq!(id.compose(&g).unwrap(), g);
        assert_eq!(g.compose(&id).unwrap(), g);
    }

    #[test]
    fn compose_four_cycle_with_inverse() {
        let f = Perm::from_cycles(4, &[&[0, 1, 2, 3]]).unwrap();
        let g = f.inverse();
        assert!(f.compose(&g).unwrap().is_identity());
        assert_eq!(g, Perm::from_cycles(4, &[&[0, 3, 2, 1]]).unwrap());
    }

    #[test]
    fn compose_matches_affine_closed_form_mod5() {
        // With l = 2 on F_5: L(x) = 2x, T^{-1}LT(x) = 2x + 1, and their
        // product is x -> 4x + 2 = -x + 2, the closed form -x + c with
        // c = -l - 1 = 2 mod 5.
        let sigma0 = affine_mod5(2, 0);
        let sigma1 = affine_mod5(2, 1);
        let expected = affine_mod5(-1, 2);
        assert_eq!(sigma0.compose(&sigma1).unwrap(), expected);
    }

    #[test]
    fn compose_degree_mismatch() {
        let f = Perm::identity(3);
        let g = Perm::identity(4);
        assert_eq!(
            f.compose(&g),
            Err(PermError::DegreeMismatch { left: 3, right: 4 })
        );
    }

    #[test]
    fn inverse_basics() {
        assert!(Perm::identity(7).inverse().is_identity());
        let f = Perm::from_images(vec![2, 0, 3, 1, 4]).unwrap();
        assert_eq!(f.inverse().inverse(), f);
        assert!(f.compose(&f.inverse()).unwrap().is_identity());
    }

    #[test]
    fn from_images_rejects_non_bijections() {
        assert!(Perm::from_images(vec![0, 0, 1]).is_err());
        assert!(Perm::from_images(vec![0, 3]).is_err());
    }

    #[test]
    fn cycle_type_examples() {
        assert_eq!(
            Perm::identity(5).cycle_type(),
            CycleType::from_lengths(vec![1, 1, 1, 1, 1])
        );
        // L(x) = 2x on F_5 has cycles (0)(1 2 4 3).
        let l = affine_mod5(2, 0);
        assert_eq!(l.cycle_type(), CycleType::from_lengths(vec![1, 4]));
        assert_eq!(l.cycles(), vec![vec![0], vec![1, 2, 4, 3]]);
        // -x + 2 on F_5 has cycles (0 2)(1)(3 4).
        let s = affine_mod5(-1, 2);
        assert_eq!(s.cycle_type(), CycleType::from_lengths(vec![1, 2, 2]));
    }

    #[test]
    fn cycle_type_display() {
        assert_eq!(
            alloc::format!("{}", CycleType::one_and_fours(2)),
            "(1,4,4)"
        );
    }

    #[test]
    fn transitivity_examples() {
        let c = Perm::from_cycles(6, &[&[0, 1, 2, 3, 4, 5]]).unwrap();
        assert!(is_transitive(&[c], 6));
        assert!(!is_transitive(&[Perm::identity(2)], 2));
        assert!(!is_transitive(&[], 2));
        assert!(is_transitive(&[], 1));
    }

    #[test]
    fn group_order_examples() {
        let t = Perm::from_cycles(3, &[&[0, 1]]).unwrap();
        assert_eq!(
            generated_group_order(core::slice::from_ref(&t), 100),
            GroupOrder::Exact(2)
        );
        let c = Perm::from_cycles(3, &[&[0, 1, 2]]).unwrap();
        assert_eq!(
            generated_group_order(&[t, c], 100),
            GroupOrder::Exact(6)
        );
        assert_eq!(generated_group_order(&[], 100), GroupOrder::Exact(1));
    }

    #[test]
    fn group_order_cap() {
        let t = Perm::from_cycles(5, &[&[0, 1]]).unwrap();
        let c = Perm::from_cycles(5, &[&[0, 1, 2, 3, 4]]).unwrap();
        assert_eq!(generated_group_order(&[t, c], 50), GroupOrder::CapExceeded);
    }

    #[test]
    fn generator_order_divides_group_order() {
        let a = Perm::from_cycles(6, &[&[0, 1, 2, 3]]).unwrap();
        let b = Perm::from_cycles(6, &[&[2, 3], &[4, 5]]).unwrap();
        let order = generated_group_order(&[a.clone(), b.clone()], DEFAULT_ORDER_CAP)
            .exact()
            .unwrap();
        assert_eq!(order as u64 % a.order(), 0);
        assert_eq!(order as u64 % b.order(), 0);
    }

    #[test]
    fn trivial_certificate_passes() {
        let cert = CoverCertificate::trivial(Provenance::Manual);
        let report = cert.verify();
        assert!(report.valid());
        // d = 1: the three identity permutations generate the trivial group.
        assert_eq!(report.group_order, Some(1));
        assert!(!report.order_is_4d);
        assert_eq!(cert.k, 0);
    }

    #[test]
    fn tampered_product_fails() {
        // A valid degree-5 triple with two images of sigma_inf swapped.
        let sigma0 = affine_mod5(2, 0);
        let sigma1 = affine_mod5(2, 1);
        let good = affine_mod5(-1, 2);
        let mut images: Vec<u32> = good.images().to_vec();
        images.swap(3, 4);
        let bad = Perm::from_images(images).unwrap();
        let cert = CoverCertificate::new(sigma0, sigma1, bad, Provenance::Manual).unwrap();
        assert!(!cert.verify().product);
    }

    #[test]
    fn certificate_rejects_bad_degree() {
        let id = Perm::identity(3);
        assert_eq!(
            CoverCertificate::new(id.clone(), id.clone(), id, Provenance::Manual),
            Err(CertificateError::BadResidue { d: 3 })
        );
    }
}
