//! From a CM endomorphism to the polynomial triple: the invariant function
//! `Z(t)` with `Z(t(x)) = t(X(x))`, the extraction of `(P, Q, R)` from
//! `Z = c t P^4 / R^2`, verification of the identity
//! `t P^4 = (t-1) Q^4 + R^2` with its squarefreeness, coprimality and
//! extremality side conditions, and an independent floating-point oracle.
//!
//! Everything runs on the model `y^2 = x^3 - x`; the quartic model
//! `v^2 = u^4 - 1` enters only through the pullback
//! `t(x) = 4x^2/(x^2+1)^2` of `u^4/v^2`, an identity asserted at the start
//! of the pipeline.

use crate::curve::{affine_add, affine_scalar_mul, endomorphism, AffinePoint, CurvePoint};
use crate::gaussian::GaussInt;
use crate::poly::PolyQi;
use crate::qi::{fourth_root_qi, qi, qi_one, QiScalar};
use crate::ratfunc::RatQi;
use alloc::vec;
use alloc::vec::Vec;
use num_bigint::BigInt;
use num_complex::Complex;
use num_integer::Integer;
use num_traits::{One, Zero};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PqrError {
    #[error("norm {0} is even; the invariant-function argument needs odd degree")]
    EvenNorm(u64),
    #[error("(a, b) must be nonzero")]
    ZeroInput,
    #[error("no rational function Z with Z(t(x)) = t(X(x)) at the degree bound")]
    NoSolution,
    #[error("the solution space for Z is not one-dimensional after normalization")]
    NonUniqueSolution,
    #[error("denominator of Z is not a perfect square")]
    NotAPerfectSquare,
    #[error("numerator structure of Z is not t times a perfect fourth power")]
    NotAPerfectFourthPower,
    #[error("extracted degrees do not match the pattern (k, k, 2k)")]
    DegreeMismatch,
    #[error("all floating samples hit poles; resample")]
    AllSamplesDegenerate,
}

/// `t(x) = 4x^2/(x^2+1)^2`, the degree-4 pullback of the quartic model's
/// invariant `u^4/v^2` to the x-line.
pub fn t_of_x() -> RatQi {
    RatQi::new(
        PolyQi::from_i64_coeffs(&[(0, 0), (0, 0), (4, 0)]),
        PolyQi::from_i64_coeffs(&[(1, 0), (0, 0), (1, 0)]).pow(2),
    )
}

/// Checks, as exact rational-function identities in `x`, that the model
/// transformation `u = (1+i)x/y`, `v = i + 2ix/y^2` satisfies
/// `v^2 = u^4 - 1` on `y^2 = x^3 - x`, and that `u^4/v^2 = t(x)`.
pub fn model_identities_hold() -> bool {
    let cubic = crate::curve::curve_cubic();
    // u = (1+i)x/y has odd part f = (1+i)x/(x^3-x), so u^4 = f^4 (x^3-x)^2.
    let f = RatQi::var().scale(&qi(1, 1)).div(&cubic);
    let u4 = f.square().square().mul(&cubic.square());
    // v = i + 2ix/(x^3-x) is a function of x alone.
    let v = RatQi::constant(qi(0, 1)).add(&RatQi::var().scale(&qi(0, 2)).div(&cubic));
    let quartic_curve = v.square() == u4.sub(&RatQi::one());
    let pullback = u4.div(&v.square()) == t_of_x();
    quartic_curve && pullback
}

// Dense Gaussian-integer polynomials, constant term first: the scratch
// representation for the fraction-free kernel solve.
type IPoly = Vec<GaussInt>;

fn ipoly_trim(mut p: IPoly) -> IPoly {
    while p.last().is_some_and(GaussInt::is_zero) {
        p.pop();
    }
    p
}

fn ipoly_mul(a: &IPoly, b: &IPoly) -> IPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![GaussInt::zero(); a.len() + b.len() - 1];
    for (j, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (k, y) in b.iter().enumerate() {
            out[j + k] = &out[j + k] + &(x * y);
        }
    }
    ipoly_trim(out)
}

/// Clears denominators of an even polynomial by the common factor `scale`
/// and compresses `p(x) = q(x^2)` to integer coefficients of `q`.
fn compress_to_ints(p: &PolyQi, scale: &BigInt) -> IPoly {
    let q = p.compress_even();
    q.coeffs()
        .iter()
        .map(|c| {
            let re = &c.re * scale;
            let im = &c.im * scale;
            assert!(re.is_integer() && im.is_integer(), "scale clears all denominators");
            GaussInt {
                re: re.to_integer(),
                im: im.to_integer(),
            }
        })
        .collect()
}

fn denominator_lcm(polys: &[&PolyQi]) -> BigInt {
    let mut l = BigInt::one();
    for p in polys {
        for c in p.coeffs() {
            l = l.lcm(c.re.denom());
            l = l.lcm(c.im.denom());
        }
    }
    l
}

fn gauss_to_qi(z: &GaussInt) -> QiScalar {
    QiScalar::new(
        num_rational::BigRational::from_integer(z.re.clone()),
        num_rational::BigRational::from_integer(z.im.clone()),
    )
}

/// Kernel basis over `Q(i)` of the matrix with Gaussian-integer entries,
/// by fraction-free (Bareiss) forward elimination followed by rational
/// back-substitution.
fn kernel_basis(mut rows: Vec<Vec<GaussInt>>, cols: usize) -> Vec<Vec<QiScalar>> {
    rows.retain(|r| r.iter().any(|c| !c.is_zero()));
    let nrows = rows.len();
    let mut pivots: Vec<(usize, usize)> = Vec::new();
    let mut rank = 0usize;
    let mut prev = GaussInt::one();
    for col in 0..cols {
        let Some(pr) = (rank..nrows).find(|&i| !rows[i][col].is_zero()) else {
            continue;
        };
        rows.swap(rank, pr);
        let pivot = rows[rank][col].clone();
        for i in (rank + 1)..nrows {
            let head = rows[i][col].clone();
            let (above, below) = rows.split_at_mut(i);
            let pivot_row = &above[rank];
            let row = &mut below[0];
            if head.is_zero() {
                for entry in row.iter_mut().skip(col + 1) {
                    if !entry.is_zero() {
                        *entry = (&pivot * &*entry).div_exact(&prev);
                    }
                }
            } else {
                for (entry, pe) in row.iter_mut().zip(pivot_row.iter()).skip(col + 1) {
                    let num = &(&pivot * &*entry) - &(&head * pe);
                    *entry = num.div_exact(&prev);
                }
                row[col] = GaussInt::zero();
            }
        }
        prev = pivot;
        pivots.push((rank, col));
        rank += 1;
        if rank == nrows {
            break;
        }
    }

    let pivot_cols: Vec<usize> = pivots.iter().map(|&(_, c)| c).collect();
    let mut basis = Vec::new();
    for free in (0..cols).filter(|c| !pivot_cols.contains(c)) {
        let mut v = vec![QiScalar::zero(); cols];
        v[free] = qi_one();
        for &(pr, pc) in pivots.iter().rev() {
            let mut s = QiScalar::zero();
            for j in (pc + 1)..cols {
                if !v[j].is_zero() && !rows[pr][j].is_zero() {
                    s += gauss_to_qi(&rows[pr][j]) * v[j].clone();
                }
            }
            v[pc] = -s / gauss_to_qi(&rows[pr][pc]);
        }
        basis.push(v);
    }
    basis
}

/// Solves `Z(t(x)) = t(X(x))` for the invariant rational function `Z`,
/// where `X` is the x-coordinate of the degree-`d` endomorphism, by an
/// exact undetermined-coefficients kernel solve with numerator and
/// denominator degrees bounded by `d`.
pub fn z_function(a: i64, b: i64) -> Result<RatQi, PqrError> {
    let d = norm_checked(a, b)?;
    assert!(model_identities_hold());
    let endo = endomorphism(a, b);
    let CurvePoint::Affine { x: big_x, .. } = &endo else {
        return Err(PqrError::ZeroInput);
    };
    z_from_x(big_x, d as usize)
}

fn norm_checked(a: i64, b: i64) -> Result<u64, PqrError> {
    let d = (a * a + b * b) as u64;
    if d == 0 {
        return Err(PqrError::ZeroInput);
    }
    if d.is_multiple_of(2) {
        return Err(PqrError::EvenNorm(d));
    }
    Ok(d)
}

fn z_from_x(big_x: &RatQi, d: usize) -> Result<RatQi, PqrError> {
    // F = t(X) = 4 Xn^2 Xd^2 / (Xn^2 + Xd^2)^2, already in lowest terms:
    // Xn, Xd are coprime, so Xn^2 Xd^2 and (Xn^2 + Xd^2)^2 share no factor.
    let xn2 = big_x.num() * big_x.num();
    let xd2 = big_x.den() * big_x.den();
    let f_num = (&xn2 * &xd2).scale(&qi(4, 0));
    let f_den = (&xn2 + &xd2).pow(2);

    // X is odd in x, so f_num, f_den and the powers of tn = 4x^2 and
    // td = (x^2+1)^2 are all even: substitute w = x^2 throughout (the
    // compression asserts evenness) and clear denominators by one common
    // factor, which leaves the kernel unchanged.
    let scale = denominator_lcm(&[&f_num, &f_den]);
    let fn_int = compress_to_ints(&f_num, &scale);
    let fd_int = compress_to_ints(&f_den, &scale);
    let tn_w: IPoly = vec![GaussInt::zero(), GaussInt::new(4, 0)];
    let td_w: IPoly = vec![GaussInt::one(), GaussInt::new(2, 0), GaussInt::one()];

    // Z = N/D with deg N, deg D <= d. Homogenizing Z(t(x)) by td^d turns
    // N(t(x)) Fd(x) - D(t(x)) Fn(x) = 0 into a polynomial identity that is
    // linear in the unknown coefficients of N and D.
    let mut tn_pow: Vec<IPoly> = vec![vec![GaussInt::one()]];
    let mut td_pow: Vec<IPoly> = vec![vec![GaussInt::one()]];
    for j in 1..=d {
        tn_pow.push(ipoly_mul(&tn_pow[j - 1], &tn_w));
        td_pow.push(ipoly_mul(&td_pow[j - 1], &td_w));
    }
    let cols = 2 * (d + 1);
    let mut col_polys: Vec<IPoly> = Vec::with_capacity(cols);
    for j in 0..=d {
        col_polys.push(ipoly_mul(&ipoly_mul(&tn_pow[j], &td_pow[d - j]), &fd_int));
    }
    for j in 0..=d {
        let p = ipoly_mul(&ipoly_mul(&tn_pow[j], &td_pow[d - j]), &fn_int);
        col_polys.push(p.iter().map(|c| -c).collect());
    }
    let max_len = col_polys.iter().map(Vec::len).max().unwrap_or(0);
    let rows: Vec<Vec<GaussInt>> = (0..max_len)
        .map(|i| {
            col_polys
                .iter()
                .map(|p| p.get(i).cloned().unwrap_or_else(GaussInt::zero))
                .collect()
        })
        .collect();

    let basis = kernel_basis(rows, cols);
    if basis.is_empty() {
        return Err(PqrError::NoSolution);
    }
    let to_ratqi = |v: &Vec<QiScalar>| -> Option<RatQi> {
        let num = PolyQi::from_coeffs(v[..=d].to_vec());
        let den = PolyQi::from_coeffs(v[d + 1..].to_vec());
        if den.is_zero() {
            None
        } else {
            Some(RatQi::new(num, den))
        }
    };
    let candidates: Vec<RatQi> = basis.iter().filter_map(to_ratqi).collect();
    let Some(z) = candidates.first() else {
        return Err(PqrError::NoSolution);
    };
    if candidates.iter().any(|c| c != z) {
        return Err(PqrError::NonUniqueSolution);
    }

    // Recomposition check: Z(t(x)) = t(X(x)) exactly, as the polynomial
    // identity Nhom * Fd = Dhom * Fn in w.
    let fn_w = f_num.compress_even();
    let fd_w = f_den.compress_even();
    let tn_w_q = PolyQi::from_i64_coeffs(&[(0, 0), (4, 0)]);
    let td_w_q = PolyQi::from_i64_coeffs(&[(1, 0), (2, 0), (1, 0)]);
    let hom = |p: &PolyQi| -> PolyQi {
        let mut acc = PolyQi::zero();
        for (j, c) in p.coeffs().iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let term = &tn_w_q.pow(j) * &td_w_q.pow(d - j);
            acc = &acc + &term.scale(c);
        }
        acc
    };
    if &hom(z.num()) * &fd_w != &hom(z.den()) * &fn_w {
        return Err(PqrError::NoSolution);
    }
    assert_eq!(z.map_degree(), d);
    Ok(z.clone())
}

/// The triple of the cover identity `cP t P^4 = cQ (t-1) Q^4 + R^2`.
/// `P` and `Q` are monic unless a fourth-power constant was absorbed into
/// them (then the constant is 1); `R` is monic.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TriplePQR {
    pub p: PolyQi,
    pub q: PolyQi,
    pub r: PolyQi,
    pub k: usize,
    pub c_p: QiScalar,
    pub c_q: QiScalar,
}

/// Extracts `(P, Q, R)` from `Z = cP t P^4 / R^2` in lowest terms with
/// monic denominator: `R` by square root of the denominator, `P` by fourth
/// root of the numerator over `t`, `Q` by fourth root of `(num - den)` over
/// `t - 1`; constants are recorded and absorbed when they are fourth powers
/// in `Q(i)`.
pub fn extract_pqr(z: &RatQi, k: usize) -> Result<TriplePQR, PqrError> {
    let num = z.num();
    let den = z.den();

    let r = den.monic_nth_root(2).ok_or(PqrError::NotAPerfectSquare)?;

    if num.coeff(0) != QiScalar::zero() || num.is_zero() {
        return Err(PqrError::NotAPerfectFourthPower);
    }
    let m = num.exact_div(&PolyQi::var());
    let (m_monic, c_p) = m.monic();
    let p = m_monic
        .monic_nth_root(4)
        .ok_or(PqrError::NotAPerfectFourthPower)?;

    let diff = num - den;
    let t_minus_one = PolyQi::from_i64_coeffs(&[(-1, 0), (1, 0)]);
    if !diff.eval(&qi_one()).is_zero() || diff.is_zero() {
        return Err(PqrError::NotAPerfectFourthPower);
    }
    let g = diff.exact_div(&t_minus_one);
    let (g_monic, c_q) = g.monic();
    let q = g_monic
        .monic_nth_root(4)
        .ok_or(PqrError::NotAPerfectFourthPower)?;

    let (p, c_p) = absorb_fourth_power(p, c_p);
    let (q, c_q) = absorb_fourth_power(q, c_q);

    if p.degree_or_zero() != k || q.degree_or_zero() != k || r.degree_or_zero() != 2 * k {
        return Err(PqrError::DegreeMismatch);
    }
    Ok(TriplePQR {
        p,
        q,
        r,
        k,
        c_p,
        c_q,
    })
}

fn absorb_fourth_power(poly: PolyQi, c: QiScalar) -> (PolyQi, QiScalar) {
    if c.is_one() {
        return (poly, c);
    }
    match fourth_root_qi(&c) {
        Some(w) => (poly.scale(&w), qi_one()),
        None => (poly, c),
    }
}

/// Independent re-verification of a triple.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PqrReport {
    /// `cP t P^4 = cQ (t-1) Q^4 + R^2` by exact expansion.
    pub identity: bool,
    /// `t (t-1) P Q R` has no multiple roots.
    pub squarefree: bool,
    /// `t P`, `(t-1) Q`, `R` are pairwise coprime.
    pub pairwise_coprime: bool,
    /// Degrees are `(k, k, 2k)`.
    pub degrees: bool,
    /// Largest term degree; `4k+1` for a valid triple.
    pub max_term_degree: usize,
    /// Distinct roots of the product of the three terms.
    pub distinct_roots: usize,
    /// Mason-Stothers extremality: `max_term_degree = distinct_roots - 1`.
    pub mason_stothers_extremal: bool,
}

impl PqrReport {
    pub fn all_pass(&self) -> bool {
        self.identity
            && self.squarefree
            && self.pairwise_coprime
            && self.degrees
            && self.mason_stothers_extremal
    }
}

pub fn verify_pqr(triple: &TriplePQR) -> PqrReport {
    let t = PolyQi::var();
    let t_minus_one = PolyQi::from_i64_coeffs(&[(-1, 0), (1, 0)]);

    let term_p = (&t * &triple.p.pow(4)).scale(&triple.c_p);
    let term_q = (&t_minus_one * &triple.q.pow(4)).scale(&triple.c_q);
    let term_r = triple.r.pow(2);
    let identity = term_p == &term_q + &term_r;

    let product_small = &(&(&t * &t_minus_one) * &triple.p) * &(&triple.q * &triple.r);
    let squarefree = product_small.is_squarefree();

    let tp = &t * &triple.p;
    let t1q = &t_minus_one * &triple.q;
    let pairwise_coprime = tp.gcd(&t1q).is_constant()
        && tp.gcd(&triple.r).is_constant()
        && t1q.gcd(&triple.r).is_constant();

    let k = triple.k;
    let degrees = triple.p.degree_or_zero() == k
        && triple.q.degree_or_zero() == k
        && triple.r.degree_or_zero() == 2 * k;

    let max_term_degree = term_p
        .degree_or_zero()
        .max(term_q.degree_or_zero())
        .max(term_r.degree_or_zero());
    let product_full = &(&term_p * &term_q) * &term_r;
    let distinct_roots = product_full.radical().degree_or_zero();
    let mason_stothers_extremal = max_term_degree + 1 == distinct_roots;

    PqrReport {
        identity,
        squarefree,
        pairwise_coprime,
        degrees,
        max_term_degree,
        distinct_roots,
        mason_stothers_extremal,
    }
}

/// Everything the pipeline produces for one `a+bi`.
#[derive(Debug, Clone)]
pub struct CoverMapData {
    pub a: i64,
    pub b: i64,
    pub d: usize,
    pub k: usize,
    pub endo: CurvePoint,
    pub z: RatQi,
    pub triple: TriplePQR,
}

/// Runs endomorphism -> Z -> (P, Q, R) for odd `d = a^2 + b^2`.
pub fn cover_map(a: i64, b: i64) -> Result<CoverMapData, PqrError> {
    let d = norm_checked(a, b)? as usize;
    let k = (d - 1) / 4;
    assert!(model_identities_hold());
    let endo = endomorphism(a, b);
    let CurvePoint::Affine { x: big_x, .. } = &endo else {
        return Err(PqrError::ZeroInput);
    };
    let z = z_from_x(big_x, d)?;
    let triple = extract_pqr(&z, k)?;
    Ok(CoverMapData {
        a,
        b,
        d,
        k,
        endo,
        z,
        triple,
    })
}

/// Deterministic non-real sample abscissae, away from `0`, `±1`, `±i`.
const SAMPLE_POINTS: [(f64, f64); 8] = [
    (0.731, 0.412),
    (-1.372, 0.255),
    (0.118, -1.604),
    (2.214, 1.331),
    (-0.577, -0.842),
    (1.618, -0.314),
    (-2.031, 1.209),
    (0.421, 2.731),
];

const POLE_GUARD: f64 = 1e-8;

fn rel_err(u: Complex<f64>, v: Complex<f64>) -> f64 {
    (u - v).norm() / u.norm().max(v.norm()).max(1.0)
}

/// Compares, at floating sample points, (1) the symbolic endomorphism
/// against repeated floating group-law addition and (2) `Z(t(x0))` against
/// `t` evaluated at the symbolic image. Returns the max relative error over
/// the usable samples.
///
/// The double-precision samples convert exactly to rationals, so the
/// symbolic side is evaluated with exact arithmetic and rounded once at the
/// end; the reported error is then genuinely the distance between the two
/// computation routes, not evaluation noise from ill-conditioned Horner
/// sums.
pub fn numeric_crosscheck(data: &CoverMapData, samples: usize) -> Result<f64, PqrError> {
    let CurvePoint::Affine { x: big_x, yf } = &data.endo else {
        return Err(PqrError::ZeroInput);
    };
    let t = t_of_x();
    let mut max_err: Option<f64> = None;
    let mut used = 0usize;
    for &(re, im) in SAMPLE_POINTS.iter() {
        if used >= samples {
            break;
        }
        let x0 = Complex::new(re, im);
        let x0_exact = QiScalar::new(
            num_rational::BigRational::from_float(re).expect("finite sample"),
            num_rational::BigRational::from_float(im).expect("finite sample"),
        );
        let y0 = (x0 * x0 * x0 - x0).sqrt();

        // Exact symbolic route, rounded once.
        let (Some(sym_x), Some(sym_yf), Some(t_at_x0)) = (
            big_x.eval(&x0_exact),
            yf.eval(&x0_exact),
            t.eval(&x0_exact),
        ) else {
            continue;
        };
        let Some(z_at_t) = data.z.eval(&t_at_x0) else {
            continue;
        };
        let sym_x_f = crate::qi::qi_to_f64(&sym_x);
        let sym_y_f = crate::qi::qi_to_f64(&sym_yf) * y0;
        let z_at_t_f = crate::qi::qi_to_f64(&z_at_t);

        // Floating group law: [a] P + [b] iota(P) by repeated addition.
        let p0 = AffinePoint::point(x0, y0);
        let mut pa = affine_scalar_mul(data.a.unsigned_abs(), &p0);
        if data.a < 0 {
            pa = negate_affine(&pa);
        }
        let iota_p0 = AffinePoint::point(-x0, Complex::new(0.0, 1.0) * y0);
        let mut pb = affine_scalar_mul(data.b.unsigned_abs(), &iota_p0);
        if data.b < 0 {
            pb = negate_affine(&pb);
        }
        let float_sum = affine_add(&pa, &pb);
        let AffinePoint::Point {
            x: float_x,
            y: float_y,
        } = float_sum
        else {
            continue;
        };

        // t at the symbolic image, in floating arithmetic.
        let (t_at_image, dti) = t.eval_f64(sym_x_f);
        if dti < POLE_GUARD {
            continue;
        }

        let err = rel_err(sym_x_f, float_x)
            .max(rel_err(sym_y_f, float_y))
            .max(rel_err(z_at_t_f, t_at_image));
        if !err.is_finite() {
            continue;
        }
        max_err = Some(max_err.map_or(err, |m: f64| m.max(err)));
        used += 1;
    }
    max_err.ok_or(PqrError::AllSamplesDegenerate)
}

fn negate_affine(p: &AffinePoint<Complex<f64>>) -> AffinePoint<Complex<f64>> {
    match p {
        AffinePoint::Infinity => AffinePoint::Infinity,
        AffinePoint::Point { x, y } => AffinePoint::Point { x: *x, y: -*y },
    }
}
