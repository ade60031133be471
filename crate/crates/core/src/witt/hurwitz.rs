//! Zero-indexed sequences `a_0..a_N` with the weight-`λ` Hurwitz product
//!
//! ```text
//! (a ·_λ b)_n = Σ_k Σ_j C(n,k) C(n-k,j) λ^k a_{n-j} b_{k+j}
//! ```
//!
//! and the map `γ(a)_n = Σ_j C(n,j) λ^j a_j` onto the Hadamard ring.

use num_bigint::BigInt;

use crate::algebra::{binomial, QAlgebra, Rational, Ring};
use crate::error::{Error, Result};
use crate::series::TruncSeries;

#[derive(Clone, Debug, PartialEq)]
pub struct HurwitzSeq<R> {
    entries: Vec<R>,
    lambda: R,
}

fn binom<R: Ring>(n: usize, k: usize) -> R {
    let b: BigInt = binomial(n as u32, k as u32);
    R::from_i64(i64::try_from(b).expect("binomial fits in i64"))
}

impl<R: Ring> HurwitzSeq<R> {
    /// Takes `a_0..a_N`.
    pub fn new(entries: Vec<R>, lambda: R) -> Self {
        assert!(!entries.is_empty(), "a Hurwitz sequence carries at least a_0");
        HurwitzSeq { entries, lambda }
    }

    /// `(1, 0, 0, …)`.
    pub fn one(order: usize, lambda: R) -> Self {
        let mut entries = vec![R::zero(); order + 1];
        entries[0] = R::one();
        HurwitzSeq { entries, lambda }
    }

    pub fn order(&self) -> usize {
        self.entries.len() - 1
    }

    pub fn entries(&self) -> &[R] {
        &self.entries
    }

    pub fn lambda(&self) -> &R {
        &self.lambda
    }

    pub fn truncate(&self, order: usize) -> Self {
        HurwitzSeq { entries: self.entries[..=order.min(self.order())].to_vec(), lambda: self.lambda.clone() }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.compatible(other)?;
        let entries = self.entries.iter().zip(&other.entries).map(|(a, b)| a.clone() + b.clone()).collect();
        Ok(HurwitzSeq { entries, lambda: self.lambda.clone() })
    }

    pub fn scale(&self, c: &R) -> Self {
        HurwitzSeq {
            entries: self.entries.iter().map(|a| a.clone() * c.clone()).collect(),
            lambda: self.lambda.clone(),
        }
    }

    fn compatible(&self, other: &Self) -> Result<()> {
        if self.lambda != other.lambda {
            return Err(Error::LambdaMismatch);
        }
        if self.order() != other.order() {
            return Err(Error::OrderMismatch(self.order(), other.order()));
        }
        Ok(())
    }

    /// The shift `(d a)_n = a_{n+1}`; order drops by one.
    pub fn derivation(&self) -> Result<Self> {
        if self.order() == 0 {
            return Err(Error::InsufficientOrder { needed: 1, got: 0 });
        }
        Ok(HurwitzSeq { entries: self.entries[1..].to_vec(), lambda: self.lambda.clone() })
    }
}

pub fn hurwitz_mul<R: Ring>(a: &HurwitzSeq<R>, b: &HurwitzSeq<R>) -> Result<HurwitzSeq<R>> {
    a.compatible(b)?;
    let lam = &a.lambda;
    let (x, y) = (&a.entries, &b.entries);
    let out = (0..=a.order())
        .map(|n| {
            let mut acc = R::zero();
            for k in 0..=n {
                let lk = lam.pow(k as u32);
                if lk.is_zero() {
                    continue;
                }
                let ck: R = binom(n, k);
                for j in 0..=n - k {
                    let t = x[n - j].clone() * y[k + j].clone();
                    if !t.is_zero() {
                        acc = acc + ck.clone() * binom::<R>(n - k, j) * lk.clone() * t;
                    }
                }
            }
            acc
        })
        .collect();
    Ok(HurwitzSeq { entries: out, lambda: lam.clone() })
}

/// `γ(a)_n = Σ_j C(n,j) λ^j a_j`, as a series read coefficientwise.
pub fn hurwitz_gamma<R: Ring>(a: &HurwitzSeq<R>) -> TruncSeries<R> {
    let out = (0..=a.order())
        .map(|n| {
            (0..=n).fold(R::zero(), |acc, j| acc + binom::<R>(n, j) * a.lambda.pow(j as u32) * a.entries[j].clone())
        })
        .collect();
    TruncSeries::new(out)
}

/// Inverse of [`hurwitz_gamma`]: `a_j = λ^{-j} Σ_i C(j,i) (-1)^{j-i} γ_i`.
pub fn hurwitz_gamma_inverse<R: Ring>(lambda: &R, g: &TruncSeries<R>) -> Result<HurwitzSeq<R>> {
    let inv = lambda.try_inverse().ok_or_else(|| Error::Parameter("the weight must be invertible".into()))?;
    let c = g.coeffs();
    let out = (0..c.len())
        .map(|j| {
            let s = (0..=j).fold(R::zero(), |acc, i| {
                let t = binom::<R>(j, i) * c[i].clone();
                if (j - i) % 2 == 0 {
                    acc + t
                } else {
                    acc - t
                }
            });
            s * inv.pow(j as u32)
        })
        .collect();
    Ok(HurwitzSeq { entries: out, lambda: lambda.clone() })
}

/// Rational weight convenience.
pub fn hurwitz_q(entries: Vec<Rational>, lambda: Rational) -> HurwitzSeq<Rational> {
    HurwitzSeq::new(entries, lambda)
}

/// The carré du champ `d(ab) - d(a)b - a d(b)`, computed at order `N - 1`.
pub fn carre_du_champ<R: QAlgebra>(a: &HurwitzSeq<R>, b: &HurwitzSeq<R>) -> Result<HurwitzSeq<R>> {
    let n = a.order();
    let d_ab = hurwitz_mul(a, b)?.derivation()?;
    let da_b = hurwitz_mul(&a.derivation()?, &b.truncate(n - 1))?;
    let a_db = hurwitz_mul(&a.truncate(n - 1), &b.derivation()?)?;
    d_ab.add(&da_b.scale(&-R::one()))?.add(&a_db.scale(&-R::one()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{int, ratio};
    use crate::testutil::*;
    use proptest::prelude::*;

    #[test]
    fn low_degree_products() {
        let lam = ratio(2, 3);
        let a = hurwitz_q(vec![int(2), int(5), int(1)], lam.clone());
        let b = hurwitz_q(vec![int(-1), int(3), int(4)], lam.clone());
        let p = hurwitz_mul(&a, &b).unwrap();
        assert_eq!(p.entries()[0], int(-2));
        assert_eq!(p.entries()[1], int(5) * int(-1) + int(2) * int(3) + lam * int(5) * int(3));
        let other = hurwitz_q(vec![int(1), int(0), int(0)], int(1));
        assert_eq!(hurwitz_mul(&a, &other), Err(Error::LambdaMismatch));
    }

    #[test]
    fn gamma_examples() {
        let unit = HurwitzSeq::one(5, int(1));
        assert_eq!(hurwitz_gamma(&unit), TruncSeries::geometric(&int(1), 5));
        let a = hurwitz_q(vec![int(3), int(-1), int(2)], int(0));
        assert_eq!(hurwitz_gamma(&a).coeffs(), &[int(3), int(3), int(3)]);
        assert!(hurwitz_gamma_inverse(&int(0), &hurwitz_gamma(&a)).is_err());
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn hurwitz_ring_laws(lam in rational(), a in seq(9), b in seq(9), c in seq(9)) {
            let a = HurwitzSeq::new(a.into_entries(), lam.clone());
            let b = HurwitzSeq::new(b.into_entries(), lam.clone());
            let c = HurwitzSeq::new(c.into_entries(), lam.clone());
            let m = |x: &HurwitzSeq<Rational>, y: &HurwitzSeq<Rational>| hurwitz_mul(x, y).unwrap();
            prop_assert_eq!(m(&a, &HurwitzSeq::one(8, lam.clone())), a.clone());
            prop_assert_eq!(m(&a, &b), m(&b, &a));
            prop_assert_eq!(m(&m(&a, &b), &c), m(&a, &m(&b, &c)));
        }

        #[test]
        fn gamma_is_a_ring_isomorphism(lam in nonzero_rational(), a in seq(9), b in seq(9)) {
            let a = HurwitzSeq::new(a.into_entries(), lam.clone());
            let b = HurwitzSeq::new(b.into_entries(), lam.clone());
            let ab = hurwitz_mul(&a, &b).unwrap();
            prop_assert_eq!(hurwitz_gamma(&ab), hurwitz_gamma(&a).hadamard(&hurwitz_gamma(&b)));
            prop_assert_eq!(hurwitz_gamma_inverse(&lam, &hurwitz_gamma(&a)).unwrap(), a);
        }

        #[test]
        fn shift_is_a_weighted_derivation(lam in rational(), a in seq(9), b in seq(9)) {
            let a = HurwitzSeq::new(a.into_entries(), lam.clone());
            let b = HurwitzSeq::new(b.into_entries(), lam.clone());
            let gamma = carre_du_champ(&a, &b).unwrap();
            let want = hurwitz_mul(&a.derivation().unwrap(), &b.derivation().unwrap()).unwrap().scale(&lam);
            prop_assert_eq!(gamma, want);
        }
    }
}
