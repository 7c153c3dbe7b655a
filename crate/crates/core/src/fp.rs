//! The explicit prime-case certificate of the affine construction: for a
//! prime `p = 1 mod 4`, the maps `L(x) = l*x` and `T(x) = x + 1` of the line
//! over `F_p` (with `l` of multiplicative order 4) give
//! `sigma0 = L`, `sigma1 = T^{-1} L T`, `sigma_inf = L T^{-1} L T`.

use crate::perm::{CoverCertificate, Perm, Provenance};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PrimeCoverError {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("{0} is not congruent to 1 mod 4")]
    WrongResidueClass(u64),
}

/// Parameters of the prime construction: `p = 1 mod 4` prime and the
/// smallest `l >= 2` with `l^2 = -1 mod p`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PrimeCoverParams {
    pub p: u64,
    pub ell: u64,
}

/// Deterministic trial division; callers bound `p` below `2^31`.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n.is_multiple_of(2) {
        return n == 2;
    }
    let mut f = 3u64;
    while f * f <= n {
        if n.is_multiple_of(f) {
            return false;
        }
        f += 2;
    }
    true
}

/// Smallest `ell >= 2` with `ell^2 = -1 mod p`.
pub fn find_order4(p: u64) -> Result<u64, PrimeCoverError> {
    if !is_prime(p) {
        return Err(PrimeCoverError::NotPrime(p));
    }
    if p % 4 != 1 {
        return Err(PrimeCoverError::WrongResidueClass(p));
    }
    let target = p - 1;
    (2..p)
        .find(|&ell| ell * ell % p == target)
        .ok_or(PrimeCoverError::NotPrime(p))
}

fn affine_perm(p: u64, a: i64, b: i64) -> Perm {
    Perm::from_fn(p as usize, |x| {
        (a * x as i64 + b).rem_euclid(p as i64) as usize
    })
}

/// Builds the prime-construction certificate on the points `F_p`:
/// `sigma0(x) = l*x`, `sigma1(x) = l*x + l - 1` (the closed form of
/// `T^{-1} L T`), `sigma_inf(x) = -x - (l+1)`.
pub fn build_prime_cover(p: u64) -> Result<(CoverCertificate, PrimeCoverParams), PrimeCoverError> {
    let ell = find_order4(p)?;
    let l = ell as i64;
    let sigma0 = affine_perm(p, l, 0);
    let sigma1 = affine_perm(p, l, l - 1);
    let sigma_inf = affine_perm(p, -1, -(l + 1));
    let cert = CoverCertificate::new(sigma0, sigma1, sigma_inf, Provenance::Prime)
        .expect("p = 1 mod 4 and all degrees equal");
    Ok((cert, PrimeCoverParams { p, ell }))
}
