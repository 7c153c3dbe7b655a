//! Exact constructions and certificate checks for branched covers of the
//! sphere of degree `d = 4k+1` with branching types `(1,4,...,4)`,
//! `(1,4,...,4)`, `(1,2,...,2)`, and for the arithmetic these covers encode:
//! Gaussian-integer residue systems, the plane signature group of type
//! `(4,4,2)`, CM endomorphisms of `y^2 = x^3 - x`, and representations of
//! integers as sums of two squares.
//!
//! Everything in this crate is pure and allocation-only (`no_std` +
//! `alloc`); IO, JSON rendering, and the parallel search driver live in the
//! companion CLI crate.
//!
//! The universal currency between modules is the [`perm::CoverCertificate`]:
//! a triple of permutations `(sigma0, sigma1, sigma_inf)` with
//! `sigma0 sigma1 = sigma_inf`, prescribed cycle types, and transitive joint
//! action. Certificates are produced three independent ways (the affine
//! construction over a prime field ([`fp`]), the coset action of the plane
//! group on a Gaussian ideal ([`lattice`]), and exhaustive backtracking
//! search ([`search`])) and every producer's output is re-checked by the
//! same verifier.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod curve;
pub mod fp;
pub mod galois;
pub mod gaussian;
pub mod lattice;
pub mod perm;
pub mod poly;
pub mod pqr;
pub mod qi;
pub mod ratfunc;
pub mod search;

pub use perm::{CoverCertificate, CycleType, Perm, Provenance, VerificationReport};
