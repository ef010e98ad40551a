//! Exact arithmetic for framed vertex operator algebra structure data.
//!
//! A framed VOA of central charge c = n/2 carries n commuting Ising frame
//! vectors, and its module theory is controlled by a pair of binary linear
//! codes (D, S) with D ⊆ S⊥: D collects the frame labels of the even part,
//! S the 1/16-words of the module decomposition.  This crate mechanizes the
//! combinatorial side of that story for the two pairs relevant to the moonshine
//! module and the baby monster VOA:
//!
//! * [`codes`]: GF(2) linear codes, duals, cosets, the Hamming cover
//!   condition on structure-code pairs;
//! * [`fusion`]: fusion rings with natural-number multiplicities: the Ising
//!   ring, frame tuple rings, Hamming code rings, simple-current bookkeeping;
//! * [`qseries`]: formal q-series with exact rational coefficients and
//!   fractional exponents: Ising characters, j, the 2A McKay-Thompson series,
//!   and the linear solve producing the baby monster VOA characters;
//! * [`fock`]: a free-fermion Fock space oracle (NS and Ramond sectors) with
//!   Virasoro modes built from fermion bilinears;
//! * [`framed`]: the assembled structure-code pipeline for the moonshine
//!   and baby monster descriptors.
//!
//! Everything outside [`qseries::numeric`] is exact: coefficients are
//! arbitrary-precision rationals, Ramond coefficients live in ℚ(√2), and
//! fusion multiplicities are natural numbers.  Floating point appears only
//! when a q-series is evaluated at a point of the upper half-plane, and every
//! such evaluation reports an explicit truncation tail bound.

#![no_std]

extern crate alloc;

pub mod codes;
pub mod fock;
pub mod framed;
pub mod fusion;
pub mod qseries;
pub mod sqrt2;

pub use num_bigint::BigInt;
pub use num_complex::Complex64;
pub use num_rational::BigRational;

/// Exponents of q are rationals with small numerator and denominator.
pub type Exp = num_rational::Ratio<i64>;
