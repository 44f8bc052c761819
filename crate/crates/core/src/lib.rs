//! Exact verification of the checkable hypotheses behind witness
//! hypersurfaces for stable irrationality.
//!
//! The crate is organised bottom-up:
//!
//! * [`squareclass`]: the square-class group of `k(P^n)` generated by the
//!   coordinates, the distinguished element `b` and the parameter `t`.
//! * [`symbol`]: mod-2 symbols, residues along coordinate divisors and the
//!   iterated-residue nonvanishing certificate.
//! * [`quadform`]: diagonal forms, the Pfister form, scaling witnesses and
//!   finite-field oracles.
//! * [`poly`]: sparse homogeneous polynomials over `Q` and `F_p`.
//! * [`witness`]: construction of the witness objects and their
//!   certificates.
//! * [`bounds`]: the dimension/degree numerology.
//!
//! All arithmetic is exact. `-1` is treated as a square throughout, so signs
//! never appear in square classes.

pub mod bounds;
pub mod error;
pub mod poly;
pub mod quadform;
pub mod squareclass;
pub mod symbol;
pub mod witness;

pub use error::{Error, Result};
