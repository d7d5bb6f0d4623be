//! Dense linear algebra over GF(2).
//!
//! Vectors and matrices are bit-packed into `u64` words. The packing is an
//! implementation detail: every public operation is indexed by coordinate.
//!
//! Besides the one-shot routines ([`row_reduce`], [`kernel_basis`],
//! [`quotient_basis`], [`solve`]) the crate provides [`SpanTracker`], an
//! incremental echelon basis that remembers which tagged input vectors were
//! combined to produce each row. Degreewise module computations use it to
//! express arbitrary vectors in a chosen quotient basis.

mod matrix;
mod tracker;
mod vector;

pub use matrix::{kernel_basis, quotient_basis, row_reduce, solve, BitMatrix, EchelonForm};
pub use tracker::SpanTracker;
pub use vector::BitVector;
