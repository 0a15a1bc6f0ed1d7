//! Subword complexes, pipe dreams and slide complexes.
//!
//! The crate computes Schubert, Grothendieck, slide and glide polynomials by
//! two independent routes (divided-difference recursions and pipe-dream or
//! complex-face sums) and checks the topology of subword and slide complexes
//! at small rank: interior/boundary splits, Euler characteristics,
//! vertex-decomposition shellings and flip graphs.

pub mod complex;
pub mod coxeter;
pub mod pipedream;
pub mod polynomial;
pub mod verify;

pub use complex::{Complex, ComplexError, Face, FaceQuery, FlipGraph, Target, Topology};
pub use coxeter::{CoxeterError, Permutation, Word};
pub use pipedream::{PipeDream, PipeDreamError};
pub use polynomial::{Polynomial, PolynomialError};
