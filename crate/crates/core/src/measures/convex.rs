//! Convex structure: moment mixtures, cumulant-level conic combinations and
//! the finite distribution monad.

use num_traits::{One, Signed, Zero};

use crate::algebra::Rational;
use crate::error::{Error, Result};
use crate::freeconv::{convolve, ConvKind};
use crate::series::Seq;

fn unit_interval(q: &Rational) -> Result<()> {
    if q.is_negative() || *q > Rational::one() {
        return Err(Error::Parameter(format!("{q} is outside [0, 1]")));
    }
    Ok(())
}

/// `q m_A + (1 - q) m_B`, the mixture of measures read on moments.
pub fn mix_moments(q: &Rational, a: &Seq<Rational>, b: &Seq<Rational>) -> Result<Seq<Rational>> {
    unit_interval(q)?;
    a.require_same_order(b)?;
    Ok(a.scale(q).add(&b.scale(&(Rational::one() - q))))
}

/// `α κ_a + β κ_b` on cumulant sequences.
pub fn plus_alpha_beta(
    alpha: &Rational,
    beta: &Rational,
    a: &Seq<Rational>,
    b: &Seq<Rational>,
) -> Result<Seq<Rational>> {
    if alpha.is_negative() || beta.is_negative() {
        return Err(Error::Parameter("cone weights must be nonnegative".into()));
    }
    a.require_same_order(b)?;
    Ok(a.scale(alpha).add(&b.scale(beta)))
}

/// `+_q := +_{q, 1-q}`.
pub fn plus_q(q: &Rational, a: &Seq<Rational>, b: &Seq<Rational>) -> Result<Seq<Rational>> {
    unit_interval(q)?;
    plus_alpha_beta(q, &(Rational::one() - q), a, b)
}

/// Moments of `(½(δ₋₁ + δ₊₁)) ⊞ μ` and of `½(δ₋₁ ⊞ μ) + ½(δ₊₁ ⊞ μ)` for
/// `μ` the symmetric Bernoulli law, mixtures taken on moments.
pub fn moment_mixing_counterexample(order: usize) -> Result<(Seq<Rational>, Seq<Rational>)> {
    let one = Rational::one();
    let half = Rational::new(1.into(), 2.into());
    let (minus, plus) = (Seq::powers(&-one.clone(), order), Seq::powers(&one, order));
    let bernoulli = mix_moments(&half, &minus, &plus)?;
    let lhs = convolve(ConvKind::BoxPlus, &bernoulli, &bernoulli)?;
    let rhs = mix_moments(
        &half,
        &convolve(ConvKind::BoxPlus, &minus, &bernoulli)?,
        &convolve(ConvKind::BoxPlus, &plus, &bernoulli)?,
    )?;
    Ok((lhs, rhs))
}

/// A finite formal sum `Σ s_i x_i` with nonnegative weights summing to 1;
/// repeated points and zero weights are kept.
#[derive(Clone, Debug, PartialEq)]
pub struct FormalSum<X> {
    terms: Vec<(Rational, X)>,
}

impl<X> FormalSum<X> {
    pub fn new(terms: Vec<(Rational, X)>) -> Result<Self> {
        if let Some((w, _)) = terms.iter().find(|(w, _)| w.is_negative()) {
            return Err(Error::Parameter(format!("negative weight {w}")));
        }
        let total = terms.iter().fold(Rational::zero(), |acc, (w, _)| acc + w);
        if !total.is_one() {
            return Err(Error::WeightSum(total.to_string()));
        }
        Ok(FormalSum { terms })
    }

    pub fn terms(&self) -> &[(Rational, X)] {
        &self.terms
    }

    pub fn map<Y>(self, mut f: impl FnMut(X) -> Y) -> FormalSum<Y> {
        FormalSum { terms: self.terms.into_iter().map(|(w, x)| (w, f(x))).collect() }
    }
}

pub fn giry_unit<X>(x: X) -> FormalSum<X> {
    FormalSum { terms: vec![(Rational::one(), x)] }
}

/// Flattens `Σ s_i (Σ t_ij x_ij)` to `Σ s_i t_ij x_ij`.
pub fn giry_join<X>(nested: FormalSum<FormalSum<X>>) -> FormalSum<X> {
    let terms = nested
        .terms
        .into_iter()
        .flat_map(|(s, inner)| inner.terms.into_iter().map(move |(t, x)| (&s * t, x)))
        .collect();
    FormalSum { terms }
}

/// `R⁻¹(Σ λ_i R_{μ_i})` on cumulant sequences.
pub fn giry_algebra(sum: &FormalSum<Seq<Rational>>) -> Result<Seq<Rational>> {
    let (_, first) = &sum.terms[0];
    sum.terms.iter().try_fold(Seq::zeros(first.order()), |acc, (w, k)| {
        acc.require_same_order(k)?;
        Ok(acc.add(&k.scale(w)))
    })
}

/// `μ_1 +_{q_1} (μ_2 +_{q_2} (⋯ +_{q_{n-1}} μ_n))` with
/// `q_i = λ_i / (1 - λ_1 - ⋯ - λ_{i-1})`, and `q_i = 0` once no weight remains.
pub fn giry_fold(sum: &FormalSum<Seq<Rational>>) -> Result<Seq<Rational>> {
    let n = sum.terms.len();
    let mut qs = Vec::with_capacity(n);
    let mut remaining = Rational::one();
    for (w, _) in &sum.terms {
        qs.push(if remaining.is_zero() { Rational::zero() } else { w / &remaining });
        remaining -= w;
    }
    let mut acc = sum.terms[n - 1].1.clone();
    for i in (0..n - 1).rev() {
        acc = plus_q(&qs[i], &sum.terms[i].1, &acc)?;
    }
    Ok(acc)
}
