//! Truncated power series `c_0 + c_1 z + … + c_N z^N` and one-indexed
//! sequences `a_1..a_N` over any [`Ring`].
//!
//! Binary operations on operands of different order truncate to the smaller
//! order. Moment sequences embed as `f(z) = m_1 z + … + m_N z^N`; cumulant
//! sequences embed as `R(z) = κ_1 + κ_2 z + … + κ_N z^{N-1}`.

use serde_json::{json, Value};

use crate::algebra::{JsonScalar, QAlgebra, Ring};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq)]
pub struct TruncSeries<R> {
    coeffs: Vec<R>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Seq<R> {
    entries: Vec<R>,
}

impl<R: Ring> TruncSeries<R> {
    /// Takes `c_0..c_N`; the order is `coeffs.len() - 1`.
    pub fn new(coeffs: Vec<R>) -> Self {
        assert!(!coeffs.is_empty(), "a series carries at least c_0");
        TruncSeries { coeffs }
    }

    pub fn zero(order: usize) -> Self {
        TruncSeries { coeffs: vec![R::zero(); order + 1] }
    }

    pub fn constant(c: R, order: usize) -> Self {
        let mut s = Self::zero(order);
        s.coeffs[0] = c;
        s
    }

    pub fn one(order: usize) -> Self {
        Self::constant(R::one(), order)
    }

    /// The identity series `z`.
    pub fn z(order: usize) -> Self {
        let mut s = Self::zero(order);
        if order >= 1 {
            s.coeffs[1] = R::one();
        }
        s
    }

    /// `1/(1 - a z)`.
    pub fn geometric(a: &R, order: usize) -> Self {
        let mut coeffs = Vec::with_capacity(order + 1);
        let mut p = R::one();
        for _ in 0..=order {
            coeffs.push(p.clone());
            p = p * a.clone();
        }
        TruncSeries { coeffs }
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[R] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<R> {
        self.coeffs
    }

    /// `c_k`, zero beyond the order.
    pub fn coeff(&self, k: usize) -> R {
        self.coeffs.get(k).cloned().unwrap_or_else(R::zero)
    }

    pub fn truncate(&self, order: usize) -> Self {
        let n = order.min(self.order());
        TruncSeries { coeffs: self.coeffs[..=n].to_vec() }
    }

    fn zip_with(&self, other: &Self, op: impl Fn(&R, &R) -> R) -> Self {
        TruncSeries { coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| op(a, b)).collect() }
    }

    pub fn add(&self, other: &Self) -> Self {
        self.zip_with(other, |a, b| a.clone() + b.clone())
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.zip_with(other, |a, b| a.clone() - b.clone())
    }

    pub fn neg(&self) -> Self {
        TruncSeries { coeffs: self.coeffs.iter().map(|c| -c.clone()).collect() }
    }

    pub fn scale(&self, c: &R) -> Self {
        TruncSeries { coeffs: self.coeffs.iter().map(|a| a.clone() * c.clone()).collect() }
    }

    /// Cauchy product.
    pub fn mul(&self, other: &Self) -> Self {
        let n = self.order().min(other.order());
        let mut coeffs = vec![R::zero(); n + 1];
        for (i, a) in self.coeffs.iter().take(n + 1).enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().take(n + 1 - i).enumerate() {
                if !b.is_zero() {
                    coeffs[i + j] = coeffs[i + j].clone() + a.clone() * b.clone();
                }
            }
        }
        TruncSeries { coeffs }
    }

    /// Coefficientwise product.
    pub fn hadamard(&self, other: &Self) -> Self {
        self.zip_with(other, |a, b| a.clone() * b.clone())
    }

    /// `self ∘ g` by Horner evaluation; `g` must have zero constant term.
    pub fn compose(&self, g: &Self) -> Result<Self> {
        if !g.coeffs[0].is_zero() {
            return Err(Error::NonZeroConstantTerm);
        }
        let n = self.order().min(g.order());
        let g = g.truncate(n);
        let mut acc = Self::constant(self.coeffs[n].clone(), n);
        for k in (0..n).rev() {
            acc = acc.mul(&g);
            acc.coeffs[0] = acc.coeffs[0].clone() + self.coeffs[k].clone();
        }
        Ok(acc)
    }

    /// Compositional inverse, solved one degree at a time.
    pub fn comp_inverse(&self) -> Result<Self> {
        if !self.coeffs[0].is_zero() {
            return Err(Error::NonZeroConstantTerm);
        }
        let n = self.order();
        if n == 0 {
            return Ok(Self::zero(0));
        }
        let inv1 = self.coeffs[1].try_inverse().ok_or(Error::NonInvertibleLeading)?;
        let mut g = Self::zero(n);
        g.coeffs[1] = inv1.clone();
        for k in 2..=n {
            let e = self.truncate(k).compose(&g.truncate(k))?.coeffs[k].clone();
            g.coeffs[k] = -(e * inv1.clone());
        }
        Ok(g)
    }

    /// Multiplicative inverse; needs an invertible constant term.
    pub fn mul_inverse(&self) -> Result<Self> {
        let inv0 = self.coeffs[0].try_inverse().ok_or(Error::NonInvertibleConstant)?;
        let n = self.order();
        let mut g: Vec<R> = Vec::with_capacity(n + 1);
        g.push(inv0.clone());
        for k in 1..=n {
            let mut s = R::zero();
            for j in 1..=k {
                if !self.coeffs[j].is_zero() {
                    s = s + self.coeffs[j].clone() * g[k - j].clone();
                }
            }
            g.push(-(s * inv0.clone()));
        }
        Ok(TruncSeries { coeffs: g })
    }

    /// `c_1 + c_2 z + …`; requires `c_0 = 0`.
    pub fn div_z(&self) -> Result<Self> {
        if !self.coeffs[0].is_zero() {
            return Err(Error::NonZeroConstantTerm);
        }
        if self.order() == 0 {
            return Err(Error::InsufficientOrder { needed: 1, got: 0 });
        }
        Ok(TruncSeries { coeffs: self.coeffs[1..].to_vec() })
    }

    /// `z · self`, order raised by one.
    pub fn mul_z(&self) -> Self {
        let mut coeffs = Vec::with_capacity(self.coeffs.len() + 1);
        coeffs.push(R::zero());
        coeffs.extend(self.coeffs.iter().cloned());
        TruncSeries { coeffs }
    }

    /// `z f'(z)`.
    pub fn z_derivative(&self) -> Self {
        TruncSeries { coeffs: self.coeffs.iter().enumerate().map(|(k, c)| c.scale_int(k as i64)).collect() }
    }

    fn require_one(&self) -> Result<()> {
        if self.coeffs[0] != R::one() {
            return Err(Error::ConstantTermNotOne);
        }
        Ok(())
    }

    /// The ghost map `z f'/f` on series with constant term 1.
    pub fn zlogd(&self) -> Result<Self> {
        self.require_one()?;
        Ok(self.z_derivative().mul(&self.mul_inverse()?))
    }

    /// `zlogd` read as the sequence of its coefficients `1..N`.
    pub fn zlogd_seq(&self) -> Result<Seq<R>> {
        Ok(Seq::from_moment_series(&self.zlogd()?))
    }

    pub fn map<S>(&self, f: impl Fn(&R) -> S) -> TruncSeries<S> {
        TruncSeries { coeffs: self.coeffs.iter().map(f).collect() }
    }
}

impl<R: QAlgebra> TruncSeries<R> {
    /// The unique series with constant term 1 whose `zlogd` has coefficients `s`.
    pub fn zlogd_inverse(s: &Seq<R>) -> Self {
        let n = s.order();
        let mut f: Vec<R> = Vec::with_capacity(n + 1);
        f.push(R::one());
        for k in 1..=n {
            let mut acc = R::zero();
            for j in 1..=k {
                let sj = &s.entries[j - 1];
                if !sj.is_zero() {
                    acc = acc + sj.clone() * f[k - j].clone();
                }
            }
            f.push(acc.div_int(k as i64));
        }
        TruncSeries { coeffs: f }
    }

    pub fn exp(&self) -> Result<Self> {
        if !self.coeffs[0].is_zero() {
            return Err(Error::NonZeroConstantTerm);
        }
        let h = self.z_derivative();
        Ok(Self::zlogd_inverse(&Seq::from_moment_series(&h)))
    }

    pub fn log(&self) -> Result<Self> {
        let g = self.zlogd()?;
        let mut coeffs = g.coeffs;
        for (k, c) in coeffs.iter_mut().enumerate().skip(1) {
            *c = c.div_int(k as i64);
        }
        Ok(TruncSeries { coeffs })
    }
}

impl<R: Ring> Seq<R> {
    /// Takes `a_1..a_N`.
    pub fn new(entries: Vec<R>) -> Self {
        Seq { entries }
    }

    pub fn zeros(order: usize) -> Self {
        Seq { entries: vec![R::zero(); order] }
    }

    pub fn ones(order: usize) -> Self {
        Seq { entries: vec![R::one(); order] }
    }

    /// `(1, 0, …, 0)`.
    pub fn unit_vector(order: usize) -> Self {
        let mut s = Self::zeros(order);
        if order > 0 {
            s.entries[0] = R::one();
        }
        s
    }

    /// `(a, a², …, a^N)`.
    pub fn powers(a: &R, order: usize) -> Self {
        let mut entries = Vec::with_capacity(order);
        let mut p = a.clone();
        for _ in 0..order {
            entries.push(p.clone());
            p = p * a.clone();
        }
        Seq { entries }
    }

    pub fn order(&self) -> usize {
        self.entries.len()
    }

    pub fn entries(&self) -> &[R] {
        &self.entries
    }

    pub fn into_entries(self) -> Vec<R> {
        self.entries
    }

    /// One-indexed access `a_n`.
    pub fn get(&self, n: usize) -> Result<&R> {
        if n == 0 || n > self.order() {
            return Err(Error::IndexOutOfRange { index: n, order: self.order() });
        }
        Ok(&self.entries[n - 1])
    }

    /// `a_1`; panics on an empty sequence.
    pub fn first(&self) -> &R {
        &self.entries[0]
    }

    pub fn truncate(&self, order: usize) -> Self {
        Seq { entries: self.entries[..order.min(self.order())].to_vec() }
    }

    fn zip_with(&self, other: &Self, op: impl Fn(&R, &R) -> R) -> Self {
        Seq { entries: self.entries.iter().zip(&other.entries).map(|(a, b)| op(a, b)).collect() }
    }

    pub fn add(&self, other: &Self) -> Self {
        self.zip_with(other, |a, b| a.clone() + b.clone())
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.zip_with(other, |a, b| a.clone() - b.clone())
    }

    pub fn neg(&self) -> Self {
        self.map(|a| -a.clone())
    }

    pub fn hadamard(&self, other: &Self) -> Self {
        self.zip_with(other, |a, b| a.clone() * b.clone())
    }

    pub fn scale(&self, c: &R) -> Self {
        self.map(|a| a.clone() * c.clone())
    }

    pub fn map<S>(&self, f: impl Fn(&R) -> S) -> Seq<S> {
        Seq { entries: self.entries.iter().map(f).collect() }
    }

    /// `f(z) = a_1 z + … + a_N z^N`.
    pub fn to_moment_series(&self) -> TruncSeries<R> {
        let mut coeffs = Vec::with_capacity(self.order() + 1);
        coeffs.push(R::zero());
        coeffs.extend(self.entries.iter().cloned());
        TruncSeries { coeffs }
    }

    /// Coefficients `1..N` of `f`; `c_0` is ignored.
    pub fn from_moment_series(f: &TruncSeries<R>) -> Self {
        Seq { entries: f.coeffs[1..].to_vec() }
    }

    /// `R(z) = a_1 + a_2 z + … + a_N z^{N-1}`; needs `N ≥ 1`.
    pub fn to_r_series(&self) -> TruncSeries<R> {
        TruncSeries::new(self.entries.clone())
    }

    /// Coefficients `c_0..c_N` read as `a_1..a_{N+1}`.
    pub fn from_r_series(r: &TruncSeries<R>) -> Self {
        Seq { entries: r.coeffs.clone() }
    }

    pub(crate) fn require_same_order(&self, other: &Self) -> Result<()> {
        if self.order() != other.order() {
            return Err(Error::OrderMismatch(self.order(), other.order()));
        }
        Ok(())
    }
}

fn read_list<R: JsonScalar>(v: &Value, list_key: &str) -> Result<Vec<R>> {
    let list =
        v.get(list_key).and_then(Value::as_array).ok_or_else(|| Error::Parse(format!("missing array {list_key:?}")))?;
    let mut items: Vec<R> = list.iter().map(R::from_json).collect::<Result<_>>()?;
    if let Some(order) = v.get("order") {
        let order =
            order.as_u64().ok_or_else(|| Error::Parse("\"order\" must be a nonnegative integer".into()))? as usize;
        let want = if list_key == "coeffs" { order + 1 } else { order };
        if want > items.len() {
            return Err(Error::Parse(format!(
                "order {order} needs {want} items in {list_key:?}, found {}",
                items.len()
            )));
        }
        items.truncate(want);
    }
    Ok(items)
}

impl<R: Ring + JsonScalar> Seq<R> {
    pub fn to_json(&self) -> Value {
        json!({
            "order": self.order(),
            "entries": self.entries.iter().map(R::to_json).collect::<Vec<_>>(),
        })
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        Ok(Seq::new(read_list(v, "entries")?))
    }
}

impl<R: Ring + JsonScalar> TruncSeries<R> {
    pub fn to_json(&self) -> Value {
        json!({
            "order": self.order(),
            "coeffs": self.coeffs.iter().map(R::to_json).collect::<Vec<_>>(),
        })
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let coeffs = read_list(v, "coeffs")?;
        if coeffs.is_empty() {
            return Err(Error::Parse("a series needs at least one coefficient".into()));
        }
        Ok(TruncSeries::new(coeffs))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{int, ratio, x, MultiPoly, Rational};
    use crate::testutil::*;
    use num_traits::{One, Zero};
    use proptest::prelude::*;

    fn s(v: &[i64]) -> TruncSeries<Rational> {
        TruncSeries::new(v.iter().map(|&c| int(c)).collect())
    }

    #[test]
    fn cauchy_product_examples() {
        assert_eq!(s(&[1, 1, 0, 0]).mul(&s(&[1, -1, 0, 0])), s(&[1, 0, -1, 0]));
        assert_eq!(s(&[1, 1, 1, 1]).mul(&s(&[1, -1, 0, 0])), s(&[1, 0, 0, 0]));
    }

    #[test]
    fn product_of_geometric_factors_over_polynomials() {
        let x1 = MultiPoly::var(x(1));
        let x2 = MultiPoly::var(x(2));
        let e1 = TruncSeries::geometric(&x1, 3);
        // (1 - x2 z^2)^{-1} = 1 + x2 z^2 at order 3
        let e2 = TruncSeries::new(vec![MultiPoly::one(), MultiPoly::zero(), x2, MultiPoly::zero()]);
        let got = e1.mul(&e2);
        let want: Vec<MultiPoly> =
            ["1", "x1", "x1^2 + x2", "x1^3 + x1*x2"].iter().map(|t| t.parse().unwrap()).collect();
        assert_eq!(got.coeffs(), &want[..]);
    }

    #[test]
    fn hadamard_examples() {
        let f = s(&[1, 1, 2, 5]);
        assert_eq!(f.hadamard(&s(&[1, 1, 1, 1])), f);
        let a = TruncSeries::geometric(&int(2), 5);
        let b = TruncSeries::geometric(&int(-3), 5);
        assert_eq!(a.hadamard(&b), TruncSeries::geometric(&int(-6), 5));
    }

    #[test]
    fn composition_examples() {
        let f = s(&[0, 1, 1, 0]);
        assert_eq!(f.compose(&f).unwrap(), s(&[0, 1, 2, 2]));
        let g = s(&[3, 1, 4, 1]);
        assert_eq!(g.compose(&TruncSeries::z(3)).unwrap(), g);
        assert_eq!(g.compose(&TruncSeries::zero(3)).unwrap(), TruncSeries::constant(int(3), 3));
        assert_eq!(g.compose(&s(&[1, 1, 0, 0])), Err(Error::NonZeroConstantTerm));
    }

    #[test]
    fn compositional_inverse_examples() {
        let f = s(&[0, 1, 1, 1, 1, 1]);
        assert_eq!(f.comp_inverse().unwrap(), s(&[0, 1, -1, 1, -1, 1]));
        let az = TruncSeries::new(vec![int(0), ratio(2, 3), int(0), int(0)]);
        assert_eq!(az.comp_inverse().unwrap(), TruncSeries::new(vec![int(0), ratio(3, 2), int(0), int(0)]));
        assert_eq!(s(&[0, 0, 1]).comp_inverse(), Err(Error::NonInvertibleLeading));
    }

    #[test]
    fn multiplicative_inverse_examples() {
        assert_eq!(s(&[1, -1, 0, 0]).mul_inverse().unwrap(), s(&[1, 1, 1, 1]));
        assert_eq!(s(&[2]).mul_inverse().unwrap(), TruncSeries::new(vec![ratio(1, 2)]));
        assert_eq!(s(&[0, 1]).mul_inverse(), Err(Error::NonInvertibleConstant));
    }

    #[test]
    fn zlogd_examples() {
        let a = ratio(-2, 3);
        let g = TruncSeries::geometric(&a, 6);
        assert_eq!(g.zlogd_seq().unwrap(), Seq::powers(&a, 6));
        assert_eq!(TruncSeries::<Rational>::one(4).zlogd().unwrap(), TruncSeries::zero(4));
        assert_eq!(s(&[2, 1]).zlogd(), Err(Error::ConstantTermNotOne));
        assert_eq!(TruncSeries::zlogd_inverse(&Seq::powers(&a, 6)), g);
        assert_eq!(TruncSeries::zlogd_inverse(&Seq::<Rational>::zeros(5)), TruncSeries::one(5));
    }

    #[test]
    fn exp_log_examples() {
        assert_eq!(TruncSeries::<Rational>::zero(3).exp().unwrap(), TruncSeries::one(3));
        assert_eq!(TruncSeries::<Rational>::one(3).log().unwrap(), TruncSeries::zero(3));
        let e = s(&[0, -1, 0, 0]).exp().unwrap();
        assert_eq!(e.coeffs(), &[int(1), int(-1), ratio(1, 2), ratio(-1, 6)]);
    }

    #[test]
    fn seq_series_conventions() {
        let m = Seq::new(vec![int(1), int(2), int(5)]);
        assert_eq!(m.to_moment_series(), s(&[0, 1, 2, 5]));
        assert_eq!(m.to_r_series(), s(&[1, 2, 5]));
        assert_eq!(Seq::from_moment_series(&m.to_moment_series()), m);
        assert_eq!(Seq::from_r_series(&m.to_r_series()), m);
        assert_eq!(m.get(0), Err(Error::IndexOutOfRange { index: 0, order: 3 }));
        assert_eq!(m.get(3).unwrap(), &int(5));
    }

    #[test]
    fn json_forms() {
        let m = Seq::new(vec![ratio(1, 2), int(-3)]);
        let v = m.to_json();
        assert_eq!(v, json!({"order": 2, "entries": ["1/2", "-3"]}));
        assert_eq!(Seq::<Rational>::from_json(&v).unwrap(), m);
        let f = s(&[1, 0, 2]);
        assert_eq!(f.to_json(), json!({"order": 2, "coeffs": ["1", "0", "2"]}));
        assert_eq!(TruncSeries::<Rational>::from_json(&f.to_json()).unwrap(), f);
        assert!(Seq::<Rational>::from_json(&json!({"order": 3, "entries": ["1"]})).is_err());
    }

    proptest! {
        #[test]
        fn truncation_is_natural(f in series(10), g in series(10), m in 1usize..10) {
            let t = |x: &TruncSeries<Rational>| x.truncate(m);
            prop_assert_eq!(t(&f.mul(&g)), t(&f).mul(&t(&g)));
            prop_assert_eq!(t(&f.add(&g)), t(&f).add(&t(&g)));
            prop_assert_eq!(t(&f.hadamard(&g)), t(&f).hadamard(&t(&g)));
            let mut g0 = g.clone().into_coeffs();
            g0[0] = int(0);
            let g0 = TruncSeries::new(g0);
            prop_assert_eq!(t(&f.compose(&g0).unwrap()), t(&f).compose(&t(&g0)).unwrap());
        }

        #[test]
        fn mismatched_orders_truncate(f in series(8), g in series(5)) {
            prop_assert_eq!(f.mul(&g).order(), 5);
            prop_assert_eq!(f.mul(&g), f.truncate(5).mul(&g));
        }

        #[test]
        fn comp_inverse_is_an_involution(f in tangent_series(10)) {
            let g = f.comp_inverse().unwrap();
            prop_assert_eq!(f.compose(&g).unwrap(), TruncSeries::z(10));
            prop_assert_eq!(g.compose(&f).unwrap(), TruncSeries::z(10));
            prop_assert_eq!(g.comp_inverse().unwrap(), f);
        }

        #[test]
        fn mul_inverse_defining_property(f in unit_series(10)) {
            prop_assert_eq!(f.mul(&f.mul_inverse().unwrap()), TruncSeries::one(10));
        }

        #[test]
        fn zlogd_is_additive_and_invertible(f in unit_series(10), g in unit_series(10)) {
            let f = f.scale(&f.coeff(0).recip());
            let g = g.scale(&g.coeff(0).recip());
            prop_assert_eq!(f.mul(&g).zlogd().unwrap(), f.zlogd().unwrap().add(&g.zlogd().unwrap()));
            prop_assert_eq!(TruncSeries::zlogd_inverse(&f.zlogd_seq().unwrap()), f);
        }

        #[test]
        fn exp_and_log_are_inverse(v in seq(10)) {
            let f = v.to_moment_series();
            prop_assert_eq!(f.exp().unwrap().log().unwrap(), f);
        }
    }
}
