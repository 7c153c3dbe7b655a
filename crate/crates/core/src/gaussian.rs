//! Exact Gaussian-integer arithmetic, canonical residue systems modulo an
//! ideal `(a+bi)`, and the brute-force sum-of-two-squares oracle.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GaussError {
    #[error("zero modulus")]
    ZeroModulus,
}

/// A Gaussian integer `re + im*i` with unbounded components.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct GaussInt {
    pub re: BigInt,
    pub im: BigInt,
}

impl GaussInt {
    pub fn new(re: impl Into<BigInt>, im: impl Into<BigInt>) -> Self {
        GaussInt {
            re: re.into(),
            im: im.into(),
        }
    }

    pub fn zero() -> Self {
        GaussInt::new(0, 0)
    }

    pub fn one() -> Self {
        GaussInt::new(1, 0)
    }

    pub fn i() -> Self {
        GaussInt::new(0, 1)
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn conjugate(&self) -> Self {
        GaussInt {
            re: self.re.clone(),
            im: -self.im.clone(),
        }
    }

    /// `re^2 + im^2`.
    pub fn norm(&self) -> BigInt {
        &self.re * &self.re + &self.im * &self.im
    }

    /// Exact quotient `self / w` in `Z[i]`; panics if `w` does not divide
    /// `self`.
    pub fn div_exact(&self, w: &GaussInt) -> GaussInt {
        let n = w.norm();
        let z = self * &w.conjugate();
        let (qr, rr) = z.re.div_rem(&n);
        let (qi, ri) = z.im.div_rem(&n);
        assert!(rr.is_zero() && ri.is_zero(), "inexact Gaussian division");
        GaussInt { re: qr, im: qi }
    }

    /// Remainder of nearest-lattice-point division: `self - q*w` with
    /// `q = round(self/w)`, so `norm(rem) < norm(w)`.
    pub fn rem_nearest(&self, w: &GaussInt) -> GaussInt {
        let n = w.norm();
        let z = self * &w.conjugate();
        let q = GaussInt {
            re: round_div(&z.re, &n),
            im: round_div(&z.im, &n),
        };
        self - &(&q * w)
    }
}

fn round_div(a: &BigInt, n: &BigInt) -> BigInt {
    // round(a/n) for n > 0.
    let num: BigInt = a * 2 + n;
    num.div_floor(&(n * 2))
}

/// Euclidean gcd in `Z[i]` (any associate; zero for two zeros).
pub fn gauss_gcd(a: &GaussInt, b: &GaussInt) -> GaussInt {
    let mut a = a.clone();
    let mut b = b.clone();
    while !b.is_zero() {
        let r = a.rem_nearest(&b);
        a = b;
        b = r;
    }
    a
}

impl Add for &GaussInt {
    type Output = GaussInt;
    fn add(self, rhs: &GaussInt) -> GaussInt {
        GaussInt {
            re: &self.re + &rhs.re,
            im: &self.im + &rhs.im,
        }
    }
}

impl Sub for &GaussInt {
    type Output = GaussInt;
    fn sub(self, rhs: &GaussInt) -> GaussInt {
        GaussInt {
            re: &self.re - &rhs.re,
            im: &self.im - &rhs.im,
        }
    }
}

impl Mul for &GaussInt {
    type Output = GaussInt;
    fn mul(self, rhs: &GaussInt) -> GaussInt {
        GaussInt {
            re: &self.re * &rhs.re - &self.im * &rhs.im,
            im: &self.re * &rhs.im + &self.im * &rhs.re,
        }
    }
}

impl Neg for &GaussInt {
    type Output = GaussInt;
    fn neg(self) -> GaussInt {
        GaussInt {
            re: -self.re.clone(),
            im: -self.im.clone(),
        }
    }
}

impl fmt::Display for GaussInt {
    /// Renders as `a+bi`, e.g. `2+1i`, `0+0i`, `-3+-2i` is written `-3-2i`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im.is_negative() {
            write!(f, "{}-{}i", self.re, -self.im.clone())
        } else {
            write!(f, "{}+{}i", self.re, self.im)
        }
    }
}

/// Ideal membership: `beta` divides `lambda` in `Z[i]` iff the two
/// components of `lambda * conj(beta)` are both divisible by `norm(beta)`.
pub fn divides(beta: &GaussInt, lambda: &GaussInt) -> Result<bool, GaussError> {
    if beta.is_zero() {
        return Err(GaussError::ZeroModulus);
    }
    let n = beta.norm();
    let w = lambda * &beta.conjugate();
    Ok((&w.re % &n).is_zero() && (&w.im % &n).is_zero())
}

/// Column Hermite form of the rank-2 lattice `Z*beta + Z*(i*beta)`:
/// basis `(d1, 0)`, `(e, f)` with `d1*f = norm(beta)` and `0 <= e < d1`.
/// Used to canonicalize residue classes in O(1) per element.
#[derive(Debug, Clone, PartialEq, Eq)]
struct IdealLattice {
    d1: BigInt,
    e: BigInt,
    f: BigInt,
}

impl IdealLattice {
    fn new(beta: &GaussInt) -> Self {
        let (a, b) = (beta.re.clone(), beta.im.clone());
        // Lattice vectors (a, b) and (-b, a). The y-projections are
        // b*Z + a*Z = g*Z with g = gcd(a, b); a vector with y = g is
        // m*(a,b) + n*(-b,a) where m*b + n*a = g.
        let ext = b.extended_gcd(&a);
        let g = ext.gcd.clone();
        let (m, n) = (ext.x, ext.y);
        let e0 = &m * &a - &n * &b;
        let norm = beta.norm();
        let d1 = &norm / &g;
        let e = e0.mod_floor(&d1);
        IdealLattice { d1, e, f: g }
    }

    /// Canonical representative of the class of `z`, with components in
    /// `[0, d1) x [0, f)`.
    fn canonical(&self, z: &GaussInt) -> (BigInt, BigInt) {
        let y0 = z.im.mod_floor(&self.f);
        let k = (&z.im - &y0) / &self.f;
        let x = &z.re - &k * &self.e;
        (x.mod_floor(&self.d1), y0)
    }
}

/// A canonical model of `Z[i]/(beta)`: an ordered list of `norm(beta)`
/// representatives with the class of 0 first, plus a reverse lookup.
#[derive(Debug, Clone)]
pub struct ResidueSystem {
    modulus: GaussInt,
    reps: Vec<GaussInt>,
    lattice: IdealLattice,
    index: BTreeMap<(BigInt, BigInt), u32>,
}

/// Enumerates the residue classes mod `(beta)` by scanning `x + y*i` with
/// `y` outer and `x` inner over `[0, norm)`, keeping the first occurrence of
/// each class. `norm*1` and `norm*i` both lie in the ideal, so the box
/// covers every class; the scan stops as soon as all classes are seen.
pub fn residue_system(beta: &GaussInt) -> Result<ResidueSystem, GaussError> {
    if beta.is_zero() {
        return Err(GaussError::ZeroModulus);
    }
    let norm = beta.norm();
    let d: u64 = u64::try_from(&norm).expect("residue systems limited to u64 norms");
    let lattice = IdealLattice::new(beta);
    let mut reps = Vec::with_capacity(d as usize);
    let mut index = BTreeMap::new();
    'scan: for y in 0..d {
        for x in 0..d {
            let z = GaussInt::new(x, y);
            let key = lattice.canonical(&z);
            if let alloc::collections::btree_map::Entry::Vacant(slot) = index.entry(key) {
                slot.insert(reps.len() as u32);
                reps.push(z);
                if reps.len() as u64 == d {
                    break 'scan;
                }
            }
        }
    }
    debug_assert_eq!(reps.len() as u64, d);
    Ok(ResidueSystem {
        modulus: beta.clone(),
        reps,
        lattice,
        index,
    })
}

impl ResidueSystem {
    pub fn modulus(&self) -> &GaussInt {
        &self.modulus
    }

    pub fn len(&self) -> usize {
        self.reps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.reps.is_empty()
    }

    pub fn reps(&self) -> &[GaussInt] {
        &self.reps
    }

    pub fn rep(&self, index: usize) -> &GaussInt {
        &self.reps[index]
    }

    /// Index of the unique representative equivalent to `lambda`.
    pub fn reduce(&self, lambda: &GaussInt) -> usize {
        let key = self.lattice.canonical(lambda);
        self.index[&key] as usize
    }
}

/// All representations `d = x^2 + y^2` with `x >= y >= 0`, by exhaustive
/// scan of `x <= sqrt(d)`. An empty list means `d` is not representable.
/// Deliberately brute force: this is the independent oracle the rest of the
/// crate is checked against.
pub fn sum_two_squares(d: u64) -> Vec<(u64, u64)> {
    let mut out = Vec::new();
    let mut x = 0u64;
    while x * x <= d {
        let rest = d - x * x;
        let y = isqrt(rest);
        if y * y == rest && x >= y {
            out.push((x, y));
        }
        x += 1;
    }
    out.sort_unstable();
    out
}

fn isqrt(n: u64) -> u64 {
    if n < 2 {
        return n;
    }
    let mut x = 1u64 << (n.ilog2() / 2 + 1);
    loop {
        let y = (x + n / x) / 2;
        if y >= x {
            break;
        }
        x = y;
    }
    x
}

/// Render helper for JSON output.
pub fn gauss_to_string(z: &GaussInt) -> String {
    alloc::format!("{z}")
}
