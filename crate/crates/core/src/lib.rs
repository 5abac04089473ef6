//! Exact arithmetic for products of the matrices `A = [[1,0],[1,1]]` and
//! `B = [[1,1],[0,1]]`: the word/matrix/continued-fraction correspondence,
//! trace census functions built from modular-inverse counts over planar
//! regions, the closed-form main-term constants, and reduced quadratic
//! irrationals with their Pell fundamental units.
//!
//! The crate is `no_std`-compatible (`alloc` required); float transcendentals
//! go through `libm` so results do not depend on the host `std`.

#![cfg_attr(not(feature = "std"), no_std)]

extern crate alloc;

pub mod asymptotics;
pub mod census;
pub mod error;
pub mod inverse;
pub mod monoid;
pub mod quadratics;

pub use error::Error;

pub type Result<T> = core::result::Result<T, Error>;
