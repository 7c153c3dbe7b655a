//! Exact scalars of the field `Q(i)`: complex numbers with unbounded
//! rational components, plus square- and fourth-root extraction used when
//! absorbing constants into polynomial factors.

use alloc::string::String;
use num_bigint::BigInt;
use num_complex::Complex;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// An element of `Q(i)`, with `i^2 = -1` and exact field arithmetic.
pub type QiScalar = Complex<BigRational>;

pub fn qi(re: i64, im: i64) -> QiScalar {
    Complex::new(
        BigRational::from_integer(BigInt::from(re)),
        BigRational::from_integer(BigInt::from(im)),
    )
}

pub fn qi_zero() -> QiScalar {
    Complex::new(BigRational::zero(), BigRational::zero())
}

pub fn qi_one() -> QiScalar {
    qi(1, 0)
}

pub fn qi_i() -> QiScalar {
    qi(0, 1)
}

pub fn qi_rational(num: i64, den: i64) -> QiScalar {
    Complex::new(
        BigRational::new(BigInt::from(num), BigInt::from(den)),
        BigRational::zero(),
    )
}

/// Exact square root of a non-negative rational, when it is a square.
pub fn sqrt_rational(q: &BigRational) -> Option<BigRational> {
    if q.is_negative() {
        return None;
    }
    let n = q.numer().sqrt();
    let d = q.denom().sqrt();
    if &(&n * &n) == q.numer() && &(&d * &d) == q.denom() {
        Some(BigRational::new(n, d))
    } else {
        None
    }
}

/// Exact square root in `Q(i)`, when one exists. Roots come in pairs
/// `{w, -w}`; this returns one of them deterministically.
pub fn sqrt_qi(z: &QiScalar) -> Option<QiScalar> {
    if z.is_zero() {
        return Some(qi_zero());
    }
    if z.im.is_zero() {
        if let Some(c) = sqrt_rational(&z.re) {
            return Some(Complex::new(c, BigRational::zero()));
        }
        let d = sqrt_rational(&-z.re.clone())?;
        return Some(Complex::new(BigRational::zero(), d));
    }
    // For z = a+bi with b != 0: |w|^2 = sqrt(a^2+b^2) must be rational,
    // then Re(w)^2 = (a + |z|)/2 must be a rational square and
    // Im(w) = b / (2 Re(w)).
    let norm = &z.re * &z.re + &z.im * &z.im;
    let r = sqrt_rational(&norm)?;
    let half = BigRational::new(BigInt::one(), BigInt::from(2));
    let c2 = (&z.re + &r) * &half;
    let c = sqrt_rational(&c2)?;
    if c.is_zero() {
        return None;
    }
    let d = &z.im / (&c + &c);
    let w = Complex::new(c, d);
    if &w * &w == *z {
        Some(w)
    } else {
        None
    }
}

/// Exact fourth root in `Q(i)`, when one exists: `w` with `w^4 = z`.
pub fn fourth_root_qi(z: &QiScalar) -> Option<QiScalar> {
    let s = sqrt_qi(z)?;
    sqrt_qi(&s).or_else(|| sqrt_qi(&-s))
}

pub fn qi_to_f64(z: &QiScalar) -> Complex<f64> {
    Complex::new(
        z.re.to_f64().unwrap_or(f64::NAN),
        z.im.to_f64().unwrap_or(f64::NAN),
    )
}

/// Exact rational rendering for JSON payloads: `"3"`, `"-3/2"`.
pub fn rational_string(q: &BigRational) -> String {
    if q.denom().is_one() {
        alloc::format!("{}", q.numer())
    } else {
        alloc::format!("{}/{}", q.numer(), q.denom())
    }
}
