//! Exact-arithmetic invariants of the representation theory of `GL_n(F_q)` and
//! `SL_n(F_q)`, together with the transvection random walk on `SL_n(F_q)`.
//!
//! The crate is organised around three layers that check each other:
//!
//! * **Formula layer** — [`partitions`], [`qseries`], [`sps`], and [`pcf`]
//!   compute dimensions, transvection character ratios, tensor ranks, the eta
//!   correspondence, and counting/bound tables as exact integer polynomials in
//!   the field size `q`.
//! * **Oracle layer** — [`matgroup`] enumerates small matrix groups over
//!   `GF(p^m)` and [`chartab`] computes their exact character tables with the
//!   Dixon–Schneider algorithm in cyclotomic arithmetic, from which tensor
//!   ranks and `GL → SL` restrictions are derived directly from definitions.
//! * **Dynamics layer** — [`walk`] runs the transvection random walk with
//!   exact rational convolution, the character-sum (Fourier) expansion, total
//!   variation distances, and spectral upper bounds.
//!
//! The core is `no_std`-compatible (`alloc` required); disable the default
//! `std` feature for embedded/const environments. File formats, caching and
//! the command-line interface live in the companion `glnq-cli` crate.

#![cfg_attr(not(feature = "std"), no_std)]
#![deny(unsafe_code)]

extern crate alloc;

pub mod error;
pub mod partitions;
pub mod qseries;
pub mod matgroup;
pub mod sps;
pub mod chartab;
pub mod pcf;
pub mod walk;

pub use error::{Error, Result};
