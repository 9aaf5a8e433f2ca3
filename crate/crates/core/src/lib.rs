//! Exact computations in finite-dimensional semisimple algebras over the
//! rationals: splittable subalgebras with verifiable certificates, and rational
//! matrix models of endomorphism actions on Tate modules.

pub mod algebra;
pub mod decomp;
pub mod error;
pub mod groups;
pub mod qpoly;
pub mod splittable;
pub mod tatemodel;
pub mod ratlin;

pub use error::{Error, Result};
