//! The coefficient-ring contract shared by every series, sequence and
//! convolution routine in the crate.

use std::fmt::Debug;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_complex::Complex;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Exact rational scalar.
pub type Rational = BigRational;

/// Rational complex numbers `re + i·im`.
pub type GaussianRational = Complex<Rational>;

/// Commutative ring with exact equality.
///
/// `try_inverse` is the partial inverse: `Some` exactly on units.
pub trait Ring:
    Clone
    + Debug
    + PartialEq
    + Zero
    + One
    + Neg<Output = Self>
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Send
    + Sync
{
    fn from_i64(n: i64) -> Self;

    fn try_inverse(&self) -> Option<Self>;

    fn pow(&self, exp: u32) -> Self {
        let mut acc = Self::one();
        let mut base = self.clone();
        let mut e = exp;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base.clone();
            }
            e >>= 1;
            if e > 0 {
                base = base.clone() * base;
            }
        }
        acc
    }

    fn scale_int(&self, n: i64) -> Self {
        if n == 1 {
            self.clone()
        } else {
            self.clone() * Self::from_i64(n)
        }
    }
}

/// Rings containing the rationals: needed by exp/log, ghost inversion and
/// anything dividing by integers.
pub trait QAlgebra: Ring {
    fn from_rational(q: &Rational) -> Self;

    fn div_int(&self, n: i64) -> Self {
        self.clone() * Self::from_rational(&Rational::new(BigInt::one(), BigInt::from(n)))
    }
}

/// Fields expose a total inverse on nonzero elements.
pub trait Field: QAlgebra {
    /// Panics on zero.
    fn inverse(&self) -> Self {
        self.try_inverse().expect("zero is not invertible")
    }
}

impl Ring for Rational {
    fn from_i64(n: i64) -> Self {
        Rational::from_integer(BigInt::from(n))
    }

    fn try_inverse(&self) -> Option<Self> {
        if self.is_zero() {
            None
        } else {
            Some(self.recip())
        }
    }
}

impl QAlgebra for Rational {
    fn from_rational(q: &Rational) -> Self {
        q.clone()
    }
}

impl Field for Rational {}

impl Ring for GaussianRational {
    fn from_i64(n: i64) -> Self {
        Complex::new(Rational::from_i64(n), Rational::zero())
    }

    fn try_inverse(&self) -> Option<Self> {
        let norm = self.norm_sqr();
        if norm.is_zero() {
            return None;
        }
        Some(Complex::new(&self.re / &norm, -&self.im / &norm))
    }
}

impl QAlgebra for GaussianRational {
    fn from_rational(q: &Rational) -> Self {
        Complex::new(q.clone(), Rational::zero())
    }
}

impl Field for GaussianRational {}

/// `p/q` as a rational.
pub fn ratio(p: i64, q: i64) -> Rational {
    Rational::new(BigInt::from(p), BigInt::from(q))
}

/// Integer as a rational.
pub fn int(n: i64) -> Rational {
    Rational::from_i64(n)
}

/// Exact rational square root when `q` is a perfect square.
pub fn rational_sqrt(q: &Rational) -> Option<Rational> {
    if q.is_negative() {
        return None;
    }
    let n = q.numer().sqrt();
    let d = q.denom().sqrt();
    if &(&n * &n) == q.numer() && &(&d * &d) == q.denom() {
        Some(Rational::new(n, d))
    } else {
        None
    }
}

pub fn binomial(n: u32, k: u32) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn small_rational() -> impl Strategy<Value = Rational> {
        (-9i64..=9, 1i64..=9).prop_map(|(p, q)| ratio(p, q))
    }

    proptest! {
        #[test]
        fn rationals_form_a_field(a in small_rational(), b in small_rational(), c in small_rational()) {
            prop_assert_eq!((&a + &b) + &c, &a + (&b + &c));
            prop_assert_eq!((&a * &b) * &c, &a * (&b * &c));
            prop_assert_eq!(&a * (&b + &c), &a * &b + &a * &c);
            if !a.is_zero() {
                prop_assert_eq!(&a * a.try_inverse().unwrap(), Rational::one());
            }
        }

        #[test]
        fn gaussian_conjugation(ar in small_rational(), ai in small_rational(),
                                br in small_rational(), bi in small_rational()) {
            let z = Complex::new(ar, ai);
            let w = Complex::new(br, bi);
            prop_assert_eq!(z.conj().conj(), z.clone());
            prop_assert_eq!((z.clone() * w.clone()).conj(), z.conj() * w.conj());
            if !z.is_zero() {
                prop_assert_eq!(z.clone() * z.try_inverse().unwrap(), GaussianRational::one());
            }
        }
    }

    #[test]
    fn pow_and_zero_inverse() {
        assert_eq!(ratio(2, 3).pow(3), ratio(8, 27));
        assert_eq!(int(5).pow(0), int(1));
        assert!(Rational::zero().try_inverse().is_none());
        assert!(GaussianRational::zero().try_inverse().is_none());
    }

    #[test]
    fn exact_square_roots() {
        assert_eq!(rational_sqrt(&ratio(9, 4)), Some(ratio(3, 2)));
        assert_eq!(rational_sqrt(&int(8)), None);
        assert_eq!(rational_sqrt(&int(-4)), None);
        assert_eq!(binomial(6, 2), BigInt::from(15));
    }
}
