//! Exact arithmetic for a few concrete groups, quasimorphisms with certified
//! homogenization, exhaustive length search, and machine-checkable bound
//! certificates.
//!
//! Everything in this crate is pure and allocation-only: no IO, no floating
//! point on any certificate path. Serialization, parsing, and the CLI live in
//! the companion `qmlen` crate.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod cert;
pub mod group;
pub mod length;
pub mod qm;

pub use num_bigint::BigInt;
pub use num_rational::BigRational;
