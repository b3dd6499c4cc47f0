//! Exact BLM-style computations in q-Schur algebras and the stable algebra
//! realizing quantum gl over an infinite index set.
//!
//! Everything here is `no_std` + `alloc`: sparse Laurent arithmetic, integer
//! matrices with their corner-sum order, the finite-window algebras K(eta, r),
//! the v'-stabilized algebra, generator calculus, the Hecke algebra and
//! tensor space, weight multiplicities, and a flag-counting oracle over small
//! finite fields.
#![no_std]
extern crate alloc;

mod poly;

pub mod hecke;
pub mod linalg;
pub mod matrix;
pub mod oracle;
pub mod quantum;
pub mod reps;
pub mod ring;
pub mod schur;
pub mod stab;
pub mod verify;

mod error;
pub use error::Error;

pub use matrix::{Composition, IntMatZ, Window};
pub use ring::{BiLaurent, Laurent, LaurentFrac};
