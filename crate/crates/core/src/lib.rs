//! Exact-arithmetic kernel for one-dimensional free probability: the
//! convolution group laws, their linearising transforms, and the matching
//! Witt-vector, λ-ring and Hurwitz structures, all over exact scalars.

pub mod algebra;
pub mod error;
pub mod freeconv;
pub mod harness;
pub mod measures;
pub mod noncrossing;
pub mod series;
pub mod transforms;
pub mod witt;

#[cfg(test)]
pub(crate) mod testutil;

pub use algebra::{GaussianRational, MultiPoly, Rational};
pub use error::{Error, Result};
pub use series::{Seq, TruncSeries};

/// Rational sequence.
pub type QSeq = Seq<Rational>;
/// Rational truncated series.
pub type QSeries = TruncSeries<Rational>;
