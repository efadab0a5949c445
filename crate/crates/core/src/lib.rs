//! Exact symbolic engine for the orthosymplectic Lie superalgebra osp(1|2n).
//!
//! The crate builds osp(1|2n) from its block matrix realization inside
//! gl(1|2n), provides a PBW normal-form engine for the universal enveloping
//! algebra, computes the center, anticenter and ghost center by exact linear
//! algebra, and realizes the principal finite W-algebra through the Whittaker
//! model together with the Miura map. Everything runs over exact rationals;
//! there is no floating point anywhere.
//!
//! The crate is `no_std` (with `alloc`); IO, JSON formats and the command
//! line live in the companion `ghostw` crate.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod centers;
pub mod exactmath;
pub mod hc;
pub mod osp;
pub mod uea;
pub mod whittaker;

pub use exactmath::Rat;
pub use osp::Algebra;
