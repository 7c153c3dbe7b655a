//! Rational functions over `Q(i)` in canonical form: numerator and
//! denominator coprime, denominator monic and nonzero.

use crate::poly::PolyQi;
use crate::qi::QiScalar;
use alloc::vec::Vec;
use num_complex::Complex;
use num_traits::Zero;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RatQi {
    num: PolyQi,
    den: PolyQi,
}

impl RatQi {
    /// Builds `num/den` in lowest terms with monic denominator.
    /// Panics on a zero denominator.
    pub fn new(num: PolyQi, den: PolyQi) -> Self {
        assert!(!den.is_zero(), "rational function with zero denominator");
        if num.is_zero() {
            return RatQi {
                num: PolyQi::zero(),
                den: PolyQi::one(),
            };
        }
        let g = num.gcd(&den);
        let num = num.exact_div(&g);
        let den = den.exact_div(&g);
        let (den, lead) = den.monic();
        let inv = crate::qi::qi_one() / lead;
        RatQi {
            num: num.scale(&inv),
            den,
        }
    }

    pub fn zero() -> Self {
        RatQi {
            num: PolyQi::zero(),
            den: PolyQi::one(),
        }
    }

    pub fn one() -> Self {
        RatQi::from_poly(PolyQi::one())
    }

    pub fn from_poly(p: PolyQi) -> Self {
        RatQi {
            num: p,
            den: PolyQi::one(),
        }
    }

    pub fn constant(c: QiScalar) -> Self {
        RatQi::from_poly(PolyQi::constant(c))
    }

    /// The coordinate function `x`.
    pub fn var() -> Self {
        RatQi::from_poly(PolyQi::var())
    }

    pub fn num(&self) -> &PolyQi {
        &self.num
    }

    pub fn den(&self) -> &PolyQi {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_constant(&self) -> bool {
        self.num.is_constant() && self.den.is_constant()
    }

    /// Degree as a map of the projective line: `max(deg num, deg den)`.
    pub fn map_degree(&self) -> usize {
        self.num.degree_or_zero().max(self.den.degree_or_zero())
    }

    pub fn add(&self, other: &RatQi) -> RatQi {
        RatQi::new(
            &(&self.num * &other.den) + &(&other.num * &self.den),
            &self.den * &other.den,
        )
    }

    pub fn sub(&self, other: &RatQi) -> RatQi {
        RatQi::new(
            &(&self.num * &other.den) - &(&other.num * &self.den),
            &self.den * &other.den,
        )
    }

    pub fn mul(&self, other: &RatQi) -> RatQi {
        RatQi::new(&self.num * &other.num, &self.den * &other.den)
    }

    pub fn div(&self, other: &RatQi) -> RatQi {
        assert!(!other.is_zero(), "division by the zero rational function");
        RatQi::new(&self.num * &other.den, &self.den * &other.num)
    }

    pub fn neg(&self) -> RatQi {
        RatQi {
            num: -&self.num,
            den: self.den.clone(),
        }
    }

    pub fn scale(&self, c: &QiScalar) -> RatQi {
        if c.is_zero() {
            return RatQi::zero();
        }
        RatQi {
            num: self.num.scale(c),
            den: self.den.clone(),
        }
    }

    pub fn square(&self) -> RatQi {
        self.mul(self)
    }

    /// Exact evaluation; `None` at a pole.
    pub fn eval(&self, x: &QiScalar) -> Option<QiScalar> {
        let den = self.den.eval(x);
        if den.is_zero() {
            return None;
        }
        Some(self.num.eval(x) / den)
    }

    /// Floating evaluation together with the denominator magnitude, so
    /// callers can reject near-pole samples.
    pub fn eval_f64(&self, x: Complex<f64>) -> (Complex<f64>, f64) {
        let den = self.den.eval_f64(x);
        (self.num.eval_f64(x) / den, den.norm())
    }

    /// Substitutes `-x` for `x`.
    pub fn subst_neg(&self) -> RatQi {
        RatQi::new(self.num.subst_neg(), self.den.subst_neg())
    }

    /// `p(self)` for a polynomial `p`: homogenized Horner-free expansion
    /// `sum p_j num^j den^(deg p - j) / den^(deg p)`.
    pub fn compose_poly(p: &PolyQi, inner: &RatQi) -> RatQi {
        if p.is_zero() {
            return RatQi::zero();
        }
        let deg = p.degree().unwrap();
        let mut num_powers: Vec<PolyQi> = Vec::with_capacity(deg + 1);
        let mut den_powers: Vec<PolyQi> = Vec::with_capacity(deg + 1);
        num_powers.push(PolyQi::one());
        den_powers.push(PolyQi::one());
        for j in 1..=deg {
            num_powers.push(&num_powers[j - 1] * &inner.num);
            den_powers.push(&den_powers[j - 1] * &inner.den);
        }
        let mut acc = PolyQi::zero();
        for (j, c) in p.coeffs().iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let term = &num_powers[j] * &den_powers[deg - j];
            acc = &acc + &term.scale(c);
        }
        RatQi::new(acc, den_powers[deg].clone())
    }

    /// `self(inner)`, the composition of rational functions.
    pub fn compose(&self, inner: &RatQi) -> RatQi {
        let n = RatQi::compose_poly(&self.num, inner);
        let d = RatQi::compose_poly(&self.den, inner);
        n.div(&d)
    }
}
