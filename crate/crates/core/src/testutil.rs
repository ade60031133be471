//! Proptest strategies shared by the unit tests.

use proptest::prelude::*;

use crate::algebra::{ratio, Rational};
use crate::series::{Seq, TruncSeries};

pub fn rational() -> impl Strategy<Value = Rational> {
    (-9i64..=9, 1i64..=9).prop_map(|(p, q)| ratio(p, q))
}

pub fn nonzero_rational() -> impl Strategy<Value = Rational> {
    (1i64..=9, 1i64..=9, any::<bool>()).prop_map(|(p, q, neg)| ratio(if neg { -p } else { p }, q))
}

pub fn seq(order: usize) -> impl Strategy<Value = Seq<Rational>> {
    prop::collection::vec(rational(), order).prop_map(Seq::new)
}

/// Sequences with invertible first entry.
pub fn invertible_seq(order: usize) -> impl Strategy<Value = Seq<Rational>> {
    (nonzero_rational(), prop::collection::vec(rational(), order - 1)).prop_map(|(a, mut rest)| {
        rest.insert(0, a);
        Seq::new(rest)
    })
}

/// Sequences with first entry 1.
pub fn gplus_seq(order: usize) -> impl Strategy<Value = Seq<Rational>> {
    prop::collection::vec(rational(), order - 1).prop_map(|mut rest| {
        rest.insert(0, ratio(1, 1));
        Seq::new(rest)
    })
}

pub fn series(order: usize) -> impl Strategy<Value = TruncSeries<Rational>> {
    prop::collection::vec(rational(), order + 1).prop_map(TruncSeries::new)
}

/// Invertible constant term.
pub fn unit_series(order: usize) -> impl Strategy<Value = TruncSeries<Rational>> {
    invertible_seq(order + 1).prop_map(|s| TruncSeries::new(s.into_entries()))
}

/// Zero constant term and invertible linear term.
pub fn tangent_series(order: usize) -> impl Strategy<Value = TruncSeries<Rational>> {
    invertible_seq(order).prop_map(|s| s.to_moment_series())
}
