//! Classical cumulant families, the `★` product and the pair-level
//! Bercovici–Pata correspondence.

use num_traits::{One, Signed, Zero};

use super::{charpair_to_r, CharPair};
use crate::algebra::Rational;
use crate::error::{Error, Result};
use crate::series::Seq;

#[derive(Clone, Debug, PartialEq)]
pub enum ClassicalFamily {
    Dirac { a: Rational },
    Normal { mean: Rational, variance: Rational },
    Poisson { rate: Rational },
}

impl ClassicalFamily {
    /// Zero variance collapses to the Dirac mass.
    pub fn normal(mean: Rational, variance: Rational) -> Result<Self> {
        if variance.is_negative() {
            return Err(Error::Parameter(format!("variance {variance} is negative")));
        }
        Ok(if variance.is_zero() {
            ClassicalFamily::Dirac { a: mean }
        } else {
            ClassicalFamily::Normal { mean, variance }
        })
    }

    pub fn poisson(rate: Rational) -> Result<Self> {
        if !rate.is_positive() {
            return Err(Error::Parameter(format!("Poisson rate {rate} is not positive")));
        }
        Ok(ClassicalFamily::Poisson { rate })
    }

    fn first_two(&self) -> (Rational, Rational) {
        match self {
            ClassicalFamily::Dirac { a } => (a.clone(), Rational::zero()),
            ClassicalFamily::Normal { mean, variance } => (mean.clone(), variance.clone()),
            ClassicalFamily::Poisson { rate } => (rate.clone(), rate.clone()),
        }
    }
}

pub fn classical_cumulants(family: &ClassicalFamily, order: usize) -> Seq<Rational> {
    match family {
        ClassicalFamily::Poisson { rate } => Seq::ones(order).scale(rate),
        other => {
            let (c1, c2) = other.first_two();
            let mut e = vec![Rational::zero(); order];
            for (slot, c) in e.iter_mut().zip([c1, c2]) {
                *slot = c;
            }
            Seq::new(e)
        }
    }
}

/// Componentwise product of classical cumulant sequences.
pub fn star_classical(c: &Seq<Rational>, d: &Seq<Rational>) -> Result<Seq<Rational>> {
    c.require_same_order(d)?;
    Ok(c.hadamard(d))
}

/// `★` inside the Dirac, normal and Poisson families.
pub fn star_family(a: &ClassicalFamily, b: &ClassicalFamily) -> Result<ClassicalFamily> {
    use ClassicalFamily::*;
    match (a, b) {
        (Poisson { rate: l }, Poisson { rate: m }) => ClassicalFamily::poisson(l * m),
        (Poisson { rate }, other) | (other, Poisson { rate }) if rate.is_one() => Ok(other.clone()),
        (Dirac { a }, other) | (other, Dirac { a }) => Ok(Dirac { a: a * other.first_two().0 }),
        _ => {
            let ((m1, v1), (m2, v2)) = (a.first_two(), b.first_two());
            ClassicalFamily::normal(m1 * m2, v1 * v2)
        }
    }
}

/// The free cumulants of the pair together with the pair itself, which
/// parameterises the classical law in the same fibre.
pub fn bp_map(p: &CharPair, order: usize) -> (Seq<Rational>, CharPair) {
    (charpair_to_r(p, order), p.clone())
}
