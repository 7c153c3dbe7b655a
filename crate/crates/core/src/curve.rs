//! Chord-tangent arithmetic on the CM curve `y^2 = x^3 - x`, both for
//! generic points over the function field `Q(i)(x)` and for concrete points
//! over any field.
//!
//! Generic points are stored as `(X, Yf)` meaning `(X(x), Yf(x) * y)`: the
//! even part of the y-coordinate is always a multiple of the generic `y`,
//! so slopes `s = sigma(x) * y` square to `sigma^2 * (x^3 - x)` and the
//! group law closes on this shape. The order-4 automorphism is
//! `iota: (x, y) -> (-x, i*y)`, and multiplication by `a+bi` is
//! `[a]P + [b] iota(P)` by double-and-add.

use crate::qi::{qi, QiScalar};
use crate::ratfunc::RatQi;
use alloc::vec::Vec;
use num_traits::Num;

/// A point of `y^2 = x^3 - x` over the function field: either infinity or
/// `(X(x), Yf(x) * y)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CurvePoint {
    Infinity,
    Affine { x: RatQi, yf: RatQi },
}

/// `x^3 - x` as a rational function of `x`.
pub fn curve_cubic() -> RatQi {
    RatQi::from_poly(crate::poly::PolyQi::from_i64_coeffs(&[
        (0, 0),
        (-1, 0),
        (0, 0),
        (1, 0),
    ]))
}

impl CurvePoint {
    /// The generic point `(x, y)`.
    pub fn generic() -> Self {
        CurvePoint::Affine {
            x: RatQi::var(),
            yf: RatQi::one(),
        }
    }

    /// Builds an affine generic point, checking the on-curve identity
    /// `Yf^2 * (x^3 - x) = X^3 - X`.
    pub fn affine(x: RatQi, yf: RatQi) -> Self {
        let p = CurvePoint::Affine { x, yf };
        debug_assert!(p.on_curve());
        p
    }

    pub fn on_curve(&self) -> bool {
        match self {
            CurvePoint::Infinity => true,
            CurvePoint::Affine { x, yf } => {
                let lhs = yf.square().mul(&curve_cubic());
                let rhs = x.mul(x).mul(x).sub(x);
                lhs == rhs
            }
        }
    }

    pub fn negate(&self) -> CurvePoint {
        match self {
            CurvePoint::Infinity => CurvePoint::Infinity,
            CurvePoint::Affine { x, yf } => CurvePoint::Affine {
                x: x.clone(),
                yf: yf.neg(),
            },
        }
    }

    /// Map degree of the x-coordinate function (0 for infinity).
    pub fn map_degree(&self) -> usize {
        match self {
            CurvePoint::Infinity => 0,
            CurvePoint::Affine { x, .. } => x.map_degree(),
        }
    }
}

/// Group sum of two generic points, with full case analysis.
pub fn ec_add(p1: &CurvePoint, p2: &CurvePoint) -> CurvePoint {
    let (x1, yf1) = match p1 {
        CurvePoint::Infinity => return p2.clone(),
        CurvePoint::Affine { x, yf } => (x, yf),
    };
    let (x2, yf2) = match p2 {
        CurvePoint::Infinity => return p1.clone(),
        CurvePoint::Affine { x, yf } => (x, yf),
    };

    let cubic = curve_cubic();
    let sigma = if x1 == x2 {
        if yf1.add(yf2).is_zero() {
            // Inverse points; includes 2-torsion doubled.
            return CurvePoint::Infinity;
        }
        // Tangent slope (3X^2 - 1)/(2 Yf y), rewritten with 1/y = y/(x^3-x).
        debug_assert_eq!(yf1, yf2);
        let num = x1.square().scale(&qi(3, 0)).sub(&RatQi::one());
        let den = yf1.scale(&qi(2, 0)).mul(&cubic);
        num.div(&den)
    } else {
        yf2.sub(yf1).div(&x2.sub(x1))
    };
    let x3 = sigma.square().mul(&cubic).sub(&x1.add(x2));
    let yf3 = sigma.mul(&x1.sub(&x3)).sub(yf1);
    CurvePoint::affine(x3, yf3)
}

/// The order-4 automorphism `iota: (x, y) -> (-x, i*y)`; fixes infinity.
pub fn apply_iota(p: &CurvePoint) -> CurvePoint {
    match p {
        CurvePoint::Infinity => CurvePoint::Infinity,
        CurvePoint::Affine { x, yf } => CurvePoint::Affine {
            x: x.neg(),
            yf: yf.scale(&qi(0, 1)),
        },
    }
}

/// `[n] p` by double-and-add.
pub fn scalar_mul(n: u64, p: &CurvePoint) -> CurvePoint {
    let mut acc = CurvePoint::Infinity;
    let mut base = p.clone();
    let mut n = n;
    while n > 0 {
        if n & 1 == 1 {
            acc = ec_add(&acc, &base);
        }
        n >>= 1;
        if n > 0 {
            base = ec_add(&base, &base);
        }
    }
    acc
}

/// The endomorphism of multiplication by `a+bi`:
/// `[a](x,y) + [b] iota(x,y)` on generic points.
pub fn endomorphism(a: i64, b: i64) -> CurvePoint {
    let g = CurvePoint::generic();
    let mut pa = scalar_mul(a.unsigned_abs(), &g);
    if a < 0 {
        pa = pa.negate();
    }
    let gi = apply_iota(&g);
    let mut pb = scalar_mul(b.unsigned_abs(), &gi);
    if b < 0 {
        pb = pb.negate();
    }
    ec_add(&pa, &pb)
}

/// A concrete point of `y^2 = x^3 - x` with coordinates in a field `K`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AffinePoint<K> {
    Infinity,
    Point { x: K, y: K },
}

impl<K> AffinePoint<K> {
    pub fn point(x: K, y: K) -> Self {
        AffinePoint::Point { x, y }
    }
}

/// Chord-tangent sum of concrete points; works for exact fields and for
/// floating complex samples alike.
pub fn affine_add<K: Num + Clone>(p: &AffinePoint<K>, q: &AffinePoint<K>) -> AffinePoint<K> {
    let (x1, y1) = match p {
        AffinePoint::Infinity => return q.clone(),
        AffinePoint::Point { x, y } => (x.clone(), y.clone()),
    };
    let (x2, y2) = match q {
        AffinePoint::Infinity => return p.clone(),
        AffinePoint::Point { x, y } => (x.clone(), y.clone()),
    };
    let s = if x1 == x2 {
        if (y1.clone() + y2.clone()).is_zero() {
            return AffinePoint::Infinity;
        }
        let two = K::one() + K::one();
        let three = two.clone() + K::one();
        (three * x1.clone() * x1.clone() - K::one()) / (two * y1.clone())
    } else {
        (y2 - y1.clone()) / (x2.clone() - x1.clone())
    };
    let x3 = s.clone() * s.clone() - x1.clone() - x2;
    let y3 = s * (x1 - x3.clone()) - y1;
    AffinePoint::Point { x: x3, y: y3 }
}

/// `[n] p` on concrete points by repeated addition.
pub fn affine_scalar_mul<K: Num + Clone>(n: u64, p: &AffinePoint<K>) -> AffinePoint<K> {
    let mut acc = AffinePoint::Infinity;
    for _ in 0..n {
        acc = affine_add(&acc, p);
    }
    acc
}

/// Evaluates a generic point at a concrete place `(x0, y0)` of the curve;
/// `None` if a coordinate function has a pole there.
pub fn evaluate_at(p: &CurvePoint, x0: &QiScalar, y0: &QiScalar) -> Option<AffinePoint<QiScalar>> {
    match p {
        CurvePoint::Infinity => Some(AffinePoint::Infinity),
        CurvePoint::Affine { x, yf } => {
            let xv = x.eval(x0)?;
            let yv = yf.eval(x0)? * y0;
            Some(AffinePoint::Point { x: xv, y: yv })
        }
    }
}

/// All `(a, b)` with `0 < a^2 + b^2 <= bound`, signs included.
pub fn gauss_range(bound: u64) -> Vec<(i64, i64)> {
    let mut out = Vec::new();
    let mut r = 0i64;
    while (r + 1) * (r + 1) <= bound as i64 {
        r += 1;
    }
    for a in -r..=r {
        for b in -r..=r {
            let n = a * a + b * b;
            if n > 0 && n as u64 <= bound {
                out.push((a, b));
            }
        }
    }
    out
}
