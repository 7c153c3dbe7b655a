//! Dense univariate polynomials over `Q(i)`: ring and field-division
//! arithmetic, monic Euclidean gcd, Yun squarefree decomposition, and exact
//! square/fourth roots of perfect powers.

use crate::gaussian::{gauss_gcd, GaussInt};
use crate::qi::{qi_to_f64, QiScalar};
use alloc::vec;
use alloc::vec::Vec;
use core::ops::{Add, Mul, Neg, Sub};
use num_bigint::BigInt;
use num_complex::Complex;
use num_integer::Integer;
use num_traits::{One, Zero};

/// Polynomial in one variable with `Q(i)` coefficients, constant term
/// first; the zero polynomial has no coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct PolyQi {
    coeffs: Vec<QiScalar>,
}

impl PolyQi {
    pub fn zero() -> Self {
        PolyQi { coeffs: vec![] }
    }

    pub fn one() -> Self {
        PolyQi::constant(QiScalar::one())
    }

    pub fn constant(c: QiScalar) -> Self {
        PolyQi::from_coeffs(vec![c])
    }

    /// The variable `t`.
    pub fn var() -> Self {
        PolyQi::from_coeffs(vec![QiScalar::zero(), QiScalar::one()])
    }

    pub fn monomial(c: QiScalar, degree: usize) -> Self {
        let mut coeffs = vec![QiScalar::zero(); degree];
        coeffs.push(c);
        PolyQi::from_coeffs(coeffs)
    }

    pub fn from_coeffs(mut coeffs: Vec<QiScalar>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        PolyQi { coeffs }
    }

    pub fn from_i64_coeffs(coeffs: &[(i64, i64)]) -> Self {
        PolyQi::from_coeffs(coeffs.iter().map(|&(re, im)| crate::qi::qi(re, im)).collect())
    }

    pub fn coeffs(&self) -> &[QiScalar] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> QiScalar {
        self.coeffs.get(k).cloned().unwrap_or_else(QiScalar::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Degree with `deg 0 = 0` for the zero polynomial.
    pub fn degree_or_zero(&self) -> usize {
        self.degree().unwrap_or(0)
    }

    pub fn leading(&self) -> Option<&QiScalar> {
        self.coeffs.last()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_some_and(One::is_one)
    }

    pub fn scale(&self, c: &QiScalar) -> PolyQi {
        if c.is_zero() {
            return PolyQi::zero();
        }
        PolyQi::from_coeffs(self.coeffs.iter().map(|a| a * c).collect())
    }

    /// `(monic, leading)` with `self = leading * monic`.
    pub fn monic(&self) -> (PolyQi, QiScalar) {
        match self.leading() {
            None => (PolyQi::zero(), QiScalar::zero()),
            Some(lead) => {
                let lead = lead.clone();
                let inv = QiScalar::one() / lead.clone();
                (self.scale(&inv), lead)
            }
        }
    }

    pub fn derivative(&self) -> PolyQi {
        if self.coeffs.len() <= 1 {
            return PolyQi::zero();
        }
        PolyQi::from_coeffs(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c * crate::qi::qi(k as i64, 0))
                .collect(),
        )
    }

    pub fn pow(&self, n: usize) -> PolyQi {
        let mut acc = PolyQi::one();
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    pub fn eval(&self, x: &QiScalar) -> QiScalar {
        let mut acc = QiScalar::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn eval_f64(&self, x: Complex<f64>) -> Complex<f64> {
        let mut acc = Complex::new(0.0, 0.0);
        for c in self.coeffs.iter().rev() {
            acc = acc * x + qi_to_f64(c);
        }
        acc
    }

    /// For a polynomial even in `t`, returns `q` with `self(t) = q(t^2)`.
    /// Panics if an odd-degree coefficient is nonzero.
    pub fn compress_even(&self) -> PolyQi {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .filter_map(|(k, c)| {
                if k % 2 == 1 {
                    assert!(c.is_zero(), "polynomial is not even");
                    None
                } else {
                    Some(c.clone())
                }
            })
            .collect();
        PolyQi::from_coeffs(coeffs)
    }

    /// Substitutes `-t` for `t` (negates odd coefficients).
    pub fn subst_neg(&self) -> PolyQi {
        PolyQi::from_coeffs(
            self.coeffs
                .iter()
                .enumerate()
                .map(|(k, c)| if k % 2 == 1 { -c } else { c.clone() })
                .collect(),
        )
    }

    /// Euclidean division: `self = q * div + r` with `deg r < deg div`.
    /// Panics on a zero divisor.
    pub fn divrem(&self, div: &PolyQi) -> (PolyQi, PolyQi) {
        let dd = div.degree().expect("division by the zero polynomial");
        let lead_inv = QiScalar::one() / div.leading().unwrap().clone();
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return (PolyQi::zero(), self.clone());
        }
        let mut quot = vec![QiScalar::zero(); rem.len() - dd];
        for k in (dd..rem.len()).rev() {
            let c = &rem[k] * &lead_inv;
            if !c.is_zero() {
                for j in 0..dd {
                    let sub = &c * &div.coeffs[j];
                    rem[k - dd + j] = &rem[k - dd + j] - &sub;
                }
            }
            rem[k] = QiScalar::zero();
            quot[k - dd] = c;
        }
        (PolyQi::from_coeffs(quot), PolyQi::from_coeffs(rem))
    }

    /// Exact division; panics if the remainder is nonzero.
    pub fn exact_div(&self, div: &PolyQi) -> PolyQi {
        let (q, r) = self.divrem(div);
        assert!(r.is_zero(), "exact_div with nonzero remainder");
        q
    }

    /// Monic gcd over `Q(i)`, computed by a primitive polynomial remainder
    /// sequence over `Z[i]` (denominators cleared once, every
    /// pseudo-remainder stripped of its content) to keep coefficients from
    /// exploding. `gcd(f, 0)` is monic `f`, `gcd(0, 0) = 0`.
    pub fn gcd(&self, other: &PolyQi) -> PolyQi {
        if self.is_zero() {
            return other.monic().0;
        }
        if other.is_zero() {
            return self.monic().0;
        }
        let mut a = gauss_primitive(self);
        let mut b = gauss_primitive(other);
        if a.len() < b.len() {
            core::mem::swap(&mut a, &mut b);
        }
        loop {
            if b.len() == 1 {
                return PolyQi::one();
            }
            let r = gauss_pseudo_rem(&a, &b);
            if r.is_empty() {
                return gauss_to_monic(&b);
            }
            let content = r
                .iter()
                .fold(GaussInt::zero(), |acc, c| gauss_gcd(&acc, c));
            let r = r.iter().map(|c| c.div_exact(&content)).collect();
            a = b;
            b = r;
        }
    }

    /// Yun squarefree decomposition of a monic polynomial:
    /// `self = prod f_i^i` with the `f_i` monic, squarefree, pairwise
    /// coprime. Constant input gives an empty list.
    pub fn squarefree_decomposition(&self) -> Vec<(PolyQi, usize)> {
        assert!(self.is_monic() || self.is_constant());
        if self.is_constant() {
            return vec![];
        }
        let deriv = self.derivative();
        let c = self.gcd(&deriv);
        let mut w = self.exact_div(&c);
        let mut y = deriv.exact_div(&c);
        let mut out = Vec::new();
        let mut i = 1usize;
        while !w.is_constant() {
            let z = &y - &w.derivative();
            let a = w.gcd(&z);
            if !a.is_constant() {
                out.push((a.clone(), i));
            }
            w = w.exact_div(&a);
            y = z.exact_div(&a);
            i += 1;
        }
        out
    }

    /// Whether `gcd(self, self')` is constant.
    pub fn is_squarefree(&self) -> bool {
        self.gcd(&self.derivative()).is_constant()
    }

    /// Squarefree part `self / gcd(self, self')`, made monic.
    pub fn radical(&self) -> PolyQi {
        if self.is_zero() {
            return PolyQi::zero();
        }
        let monic = self.monic().0;
        let g = monic.gcd(&monic.derivative());
        monic.exact_div(&g)
    }

    /// Exact `m`-th root of a monic perfect power, via the squarefree
    /// decomposition; `None` if some exponent is not a multiple of `m`.
    pub fn monic_nth_root(&self, m: usize) -> Option<PolyQi> {
        assert!(self.is_monic() || self.is_constant());
        if self.is_constant() {
            return if self.is_zero() { None } else { Some(PolyQi::one()) };
        }
        let mut root = PolyQi::one();
        for (factor, exp) in self.squarefree_decomposition() {
            if exp % m != 0 {
                return None;
            }
            root = &root * &factor.pow(exp / m);
        }
        if &root.pow(m) == self {
            Some(root)
        } else {
            None
        }
    }
}

/// Clears denominators and Gaussian-integer content; input must be
/// nonzero.
fn gauss_primitive(p: &PolyQi) -> Vec<GaussInt> {
    let mut l = BigInt::one();
    for c in p.coeffs() {
        l = l.lcm(c.re.denom());
        l = l.lcm(c.im.denom());
    }
    let ints: Vec<GaussInt> = p
        .coeffs()
        .iter()
        .map(|c| GaussInt {
            re: (&c.re * &l).to_integer(),
            im: (&c.im * &l).to_integer(),
        })
        .collect();
    let content = ints
        .iter()
        .fold(GaussInt::zero(), |acc, c| gauss_gcd(&acc, c));
    ints.iter().map(|c| c.div_exact(&content)).collect()
}

/// Pseudo-remainder `lc(b)^(da-db+1) * a mod b` over `Z[i]`, trailing
/// zeros trimmed.
fn gauss_pseudo_rem(a: &[GaussInt], b: &[GaussInt]) -> Vec<GaussInt> {
    let db = b.len() - 1;
    let lc = b[db].clone();
    let mut r = a.to_vec();
    while r.len() > db {
        let dr = r.len() - 1;
        let lead = r[dr].clone();
        r.pop();
        if lead.is_zero() {
            continue;
        }
        let shift = dr - db;
        for c in r.iter_mut() {
            *c = &*c * &lc;
        }
        for (i, bc) in b.iter().take(db).enumerate() {
            let sub = &lead * bc;
            r[shift + i] = &r[shift + i] - &sub;
        }
    }
    while r.last().is_some_and(GaussInt::is_zero) {
        r.pop();
    }
    r
}

fn gauss_to_monic(p: &[GaussInt]) -> PolyQi {
    let coeffs = p
        .iter()
        .map(|c| {
            QiScalar::new(
                num_rational::BigRational::from_integer(c.re.clone()),
                num_rational::BigRational::from_integer(c.im.clone()),
            )
        })
        .collect();
    PolyQi::from_coeffs(coeffs).monic().0
}

impl Add for &PolyQi {
    type Output = PolyQi;
    fn add(self, rhs: &PolyQi) -> PolyQi {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..n).map(|k| self.coeff(k) + rhs.coeff(k)).collect();
        PolyQi::from_coeffs(coeffs)
    }
}

impl Sub for &PolyQi {
    type Output = PolyQi;
    fn sub(self, rhs: &PolyQi) -> PolyQi {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..n).map(|k| self.coeff(k) - rhs.coeff(k)).collect();
        PolyQi::from_coeffs(coeffs)
    }
}

impl Neg for &PolyQi {
    type Output = PolyQi;
    fn neg(self) -> PolyQi {
        PolyQi::from_coeffs(self.coeffs.iter().map(|c| -c).collect())
    }
}

impl Mul for &PolyQi {
    type Output = PolyQi;
    fn mul(self, rhs: &PolyQi) -> PolyQi {
        if self.is_zero() || rhs.is_zero() {
            return PolyQi::zero();
        }
        let mut coeffs = vec![QiScalar::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (j, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (k, b) in rhs.coeffs.iter().enumerate() {
                coeffs[j + k] = &coeffs[j + k] + &(a * b);
            }
        }
        PolyQi::from_coeffs(coeffs)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qi::{qi, qi_one};

    fn t() -> PolyQi {
        PolyQi::var()
    }

    #[test]
    fn arithmetic_basics() {
        // (t+1)(t-1) = t^2 - 1.
        let p = PolyQi::from_i64_coeffs(&[(1, 0), (1, 0)]);
        let q = PolyQi::from_i64_coeffs(&[(-1, 0), (1, 0)]);
        let prod = &p * &q;
        assert_eq!(prod, PolyQi::from_i64_coeffs(&[(-1, 0), (0, 0), (1, 0)]));
        assert_eq!(&prod + &PolyQi::one(), &t() * &t());
        assert_eq!(prod.degree(), Some(2));
    }

    #[test]
    fn canonical_trim() {
        let p = PolyQi::from_coeffs(vec![qi_one(), QiScalar::zero(), QiScalar::zero()]);
        assert_eq!(p.degree(), Some(0));
        assert!(PolyQi::from_coeffs(vec![]).is_zero());
    }

    #[test]
    fn divrem_roundtrip() {
        let f = PolyQi::from_i64_coeffs(&[(2, 1), (0, 3), (5, 0), (1, 1), (3, 0)]);
        let g = PolyQi::from_i64_coeffs(&[(1, 2), (0, 1), (1, 0)]);
        let (q, r) = f.divrem(&g);
        assert!(r.degree_or_zero() < g.degree().unwrap() || r.is_zero());
        assert_eq!(&(&q * &g) + &r, f);
    }

    #[test]
    fn gcd_of_products() {
        let a = PolyQi::from_i64_coeffs(&[(1, 0), (1, 0)]); // t + 1
        let b = PolyQi::from_i64_coeffs(&[(0, -1), (1, 0)]); // t - i
        let c = PolyQi::from_i64_coeffs(&[(3, 0), (1, 0)]); // t + 3
        let f = &a * &b;
        let g = &a * &c;
        assert_eq!(f.gcd(&g), a.monic().0);
        assert_eq!(a.gcd(&c), PolyQi::one());
        assert_eq!(PolyQi::zero().gcd(&PolyQi::zero()), PolyQi::zero());
        assert_eq!(f.gcd(&PolyQi::zero()), f);
    }

    #[test]
    fn derivative_product_rule() {
        let f = PolyQi::from_i64_coeffs(&[(2, 0), (0, 1), (1, 0)]);
        let g = PolyQi::from_i64_coeffs(&[(1, 1), (3, 0)]);
        let lhs = (&f * &g).derivative();
        let rhs = &(&f.derivative() * &g) + &(&f * &g.derivative());
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn squarefree_decomposition_of_square() {
        // (t^2 + 1)^2: one factor with exponent 2.
        let r = PolyQi::from_i64_coeffs(&[(1, 0), (0, 0), (1, 0)]);
        let f = r.pow(2);
        let decomp = f.squarefree_decomposition();
        assert_eq!(decomp, vec![(r.clone(), 2)]);
        assert_eq!(f.monic_nth_root(2), Some(r));
    }

    #[test]
    fn squarefree_decomposition_mixed() {
        // t * (t-1)^2 * (t+2)^3.
        let a = t();
        let b = PolyQi::from_i64_coeffs(&[(-1, 0), (1, 0)]);
        let c = PolyQi::from_i64_coeffs(&[(2, 0), (1, 0)]);
        let f = &(&a * &b.pow(2)) * &c.pow(3);
        let decomp = f.squarefree_decomposition();
        assert_eq!(decomp, vec![(a, 1), (b, 2), (c, 3)]);
        assert_eq!(f.monic_nth_root(2), None);
    }

    #[test]
    fn fourth_root_of_fourth_power() {
        let p = PolyQi::from_i64_coeffs(&[(0, 1), (2, 0), (1, 0)]);
        let f = p.pow(4);
        assert_eq!(f.monic_nth_root(4), Some(p));
    }

    #[test]
    fn squarefree_checks() {
        let a = PolyQi::from_i64_coeffs(&[(1, 0), (1, 0)]);
        assert!(a.is_squarefree());
        assert!(!a.pow(2).is_squarefree());
        let f = &a.pow(2) * &t();
        assert_eq!(f.radical(), &a * &t());
    }

    #[test]
    fn eval_horner() {
        // f(t) = t^2 + it + 2 at t = 1+i: (1+i)^2 = 2i, i(1+i) = -1+i,
        // total = 1 + 3i.
        let f = PolyQi::from_i64_coeffs(&[(2, 0), (0, 1), (1, 0)]);
        assert_eq!(f.eval(&qi(1, 1)), qi(1, 3));
    }

    #[test]
    fn subst_neg_parity() {
        let f = PolyQi::from_i64_coeffs(&[(1, 0), (2, 0), (3, 0), (4, 0)]);
        let g = f.subst_neg();
        assert_eq!(g, PolyQi::from_i64_coeffs(&[(1, 0), (-2, 0), (3, 0), (-4, 0)]));
        assert_eq!(g.subst_neg(), f);
    }
}
