//! Witt-vector operations against hand-rolled divisor-sum and power-series
//! oracles.

use fpk::algebra::{ratio, Rational};
use fpk::witt::{artin_hasse, ghost, ghost_inverse, witt_add, witt_mul, WittVector};
use fpk::QSeq;
use num_traits::{One, Zero};
use proptest::prelude::*;

fn pow(x: &Rational, k: usize) -> Rational {
    (0..k).fold(Rational::one(), |acc, _| acc * x)
}

fn ghost_oracle(x: &[Rational]) -> Vec<Rational> {
    (1..=x.len())
        .map(|n| (1..=n).filter(|d| n % d == 0).map(|d| Rational::from_integer(d.into()) * pow(&x[d - 1], n / d)).sum())
        .collect()
}

fn series_mul(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    let n = a.len();
    (0..n).map(|k| (0..=k).map(|i| &a[i] * &b[k - i]).sum()).collect()
}

fn artin_hasse_oracle(x: &[Rational]) -> Vec<Rational> {
    let n = x.len();
    let mut acc = vec![Rational::zero(); n + 1];
    acc[0] = Rational::one();
    for (i, xi) in x.iter().enumerate() {
        let step = i + 1;
        let mut factor = vec![Rational::zero(); n + 1];
        for k in 0..=n / step {
            factor[k * step] = pow(xi, k);
        }
        acc = series_mul(&acc, &factor);
    }
    acc
}

/// Newton: `n a_n = Σ_{k=1}^{n} c_k a_{n-k}` for `c = z f'/f` with `a_0 = 1`.
fn zlogd_oracle(a: &[Rational]) -> Vec<Rational> {
    let mut c: Vec<Rational> = Vec::new();
    for n in 1..a.len() {
        let known: Rational = (1..n).map(|k| &c[k - 1] * &a[n - k]).sum();
        c.push(Rational::from_integer(n.into()) * &a[n] - known);
    }
    c
}

fn small() -> impl Strategy<Value = Rational> {
    (-5i64..=5, 1i64..=3).prop_map(|(p, q)| ratio(p, q))
}

fn witt(order: usize) -> impl Strategy<Value = WittVector<Rational>> {
    prop::collection::vec(small(), order).prop_map(WittVector::new)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn ghost_matches_divisor_sum(x in witt(10)) {
        prop_assert_eq!(ghost(&x).into_entries(), ghost_oracle(x.components()));
    }

    #[test]
    fn operations_are_ghostwise(x in witt(8), y in witt(8)) {
        let (gx, gy) = (ghost_oracle(x.components()), ghost_oracle(y.components()));
        let sum: Vec<Rational> = gx.iter().zip(&gy).map(|(a, b)| a + b).collect();
        let prod: Vec<Rational> = gx.iter().zip(&gy).map(|(a, b)| a * b).collect();
        prop_assert_eq!(ghost_oracle(witt_add(&x, &y).unwrap().components()), sum);
        prop_assert_eq!(ghost_oracle(witt_mul(&x, &y).unwrap().components()), prod);
        prop_assert_eq!(ghost_inverse(&QSeq::new(gx)), x);
    }

    #[test]
    fn artin_hasse_matches_product_expansion(x in witt(9)) {
        let ah = artin_hasse(&x);
        prop_assert_eq!(ah.coeffs(), &artin_hasse_oracle(x.components())[..]);
        prop_assert_eq!(zlogd_oracle(ah.coeffs()), ghost_oracle(x.components()));
    }

    #[test]
    fn low_sum_and_product_polynomials(x in witt(2), y in witt(2)) {
        let (x1, x2) = (&x.components()[0], &x.components()[1]);
        let (y1, y2) = (&y.components()[0], &y.components()[1]);
        let s = witt_add(&x, &y).unwrap();
        let p = witt_mul(&x, &y).unwrap();
        prop_assert_eq!(&s.components()[1], &(x2 + y2 - x1 * y1));
        let two = Rational::from_integer(2.into());
        prop_assert_eq!(&p.components()[1], &(&two * x2 * y2 + x2 * y1 * y1 + x1 * x1 * y2));
    }
}

#[test]
fn teichmuller_vectors_multiply() {
    let t = |a: i64| WittVector::new(vec![ratio(a, 1), Rational::zero(), Rational::zero(), Rational::zero()]);
    let p = witt_mul(&t(3), &t(-2)).unwrap();
    assert_eq!(p, t(-6));
}
