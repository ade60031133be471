//! Exact scalars, the coefficient-ring contract and sparse polynomials.

pub mod poly;
pub mod ring;
pub mod text;

pub use poly::{x, y, Grading, Monomial, MultiPoly, Side, Var};
pub use ring::{binomial, int, ratio, rational_sqrt, Field, GaussianRational, QAlgebra, Rational, Ring};
pub use text::{parse_rational, JsonScalar};
