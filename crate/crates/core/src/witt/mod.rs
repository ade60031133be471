//! Big Witt vectors through ghost components, the Artin–Hasse
//! exponential, and the bridge `φ = S⁻¹ ∘ AH` into the `⊠`-group.

pub mod comonad;
pub mod hurwitz;

use std::str::FromStr;

use serde_json::{json, Value};

use crate::algebra::{x, y, JsonScalar, MultiPoly, QAlgebra, Ring};
use crate::error::{Error, Result};
use crate::freeconv::{require_integral, symbolic_seq};
use crate::series::{Seq, TruncSeries};
use crate::transforms::{inverse_transform, TransformKind};

/// Witt components `x_1..x_N`.
#[derive(Clone, Debug, PartialEq)]
pub struct WittVector<R> {
    components: Seq<R>,
}

impl<R: Ring> WittVector<R> {
    pub fn new(components: Vec<R>) -> Self {
        WittVector { components: Seq::new(components) }
    }

    pub fn zero(order: usize) -> Self {
        WittVector { components: Seq::zeros(order) }
    }

    /// `(1, 0, 0, …)`.
    pub fn one(order: usize) -> Self {
        WittVector { components: Seq::unit_vector(order) }
    }

    pub fn order(&self) -> usize {
        self.components.order()
    }

    pub fn components(&self) -> &[R] {
        self.components.entries()
    }

    pub fn as_seq(&self) -> &Seq<R> {
        &self.components
    }

    pub fn truncate(&self, order: usize) -> Self {
        WittVector { components: self.components.truncate(order) }
    }
}

impl<R: Ring> From<Seq<R>> for WittVector<R> {
    fn from(components: Seq<R>) -> Self {
        WittVector { components }
    }
}

impl<R: Ring + JsonScalar> WittVector<R> {
    pub fn to_json(&self) -> Value {
        let mut v = self.components.to_json();
        v["kind"] = json!("witt");
        v
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        Ok(WittVector { components: Seq::from_json(v)? })
    }
}

/// `w_n = Σ_{d | n} d · x_d^{n/d}`.
pub fn ghost<R: Ring>(x: &WittVector<R>) -> Seq<R> {
    let c = x.components();
    let out = (1..=c.len())
        .map(|n| {
            (1..=n)
                .filter(|d| n % d == 0)
                .fold(R::zero(), |acc, d| acc + c[d - 1].pow((n / d) as u32).scale_int(d as i64))
        })
        .collect();
    Seq::new(out)
}

/// `x_n = (v_n - Σ_{d | n, d < n} d · x_d^{n/d}) / n`.
pub fn ghost_inverse<R: QAlgebra>(v: &Seq<R>) -> WittVector<R> {
    let mut xs: Vec<R> = Vec::with_capacity(v.order());
    for n in 1..=v.order() {
        let lower = (1..n)
            .filter(|d| n % d == 0)
            .fold(R::zero(), |acc, d| acc + xs[d - 1].pow((n / d) as u32).scale_int(d as i64));
        xs.push((v.entries()[n - 1].clone() - lower).div_int(n as i64));
    }
    WittVector::new(xs)
}

fn same_order<R: Ring>(a: &WittVector<R>, b: &WittVector<R>) -> Result<()> {
    a.as_seq().require_same_order(b.as_seq())
}

pub fn witt_add<R: QAlgebra>(a: &WittVector<R>, b: &WittVector<R>) -> Result<WittVector<R>> {
    same_order(a, b)?;
    Ok(ghost_inverse(&ghost(a).add(&ghost(b))))
}

pub fn witt_mul<R: QAlgebra>(a: &WittVector<R>, b: &WittVector<R>) -> Result<WittVector<R>> {
    same_order(a, b)?;
    Ok(ghost_inverse(&ghost(a).hadamard(&ghost(b))))
}

pub fn witt_neg<R: QAlgebra>(a: &WittVector<R>) -> WittVector<R> {
    ghost_inverse(&ghost(a).neg())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum WittLaw {
    /// Addition polynomials `S_W`.
    Sum,
    /// Multiplication polynomials `P_W`.
    Product,
}

impl FromStr for WittLaw {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "S" | "SW" => Ok(WittLaw::Sum),
            "P" | "PW" => Ok(WittLaw::Product),
            _ => Err(Error::Parse(format!("unknown Witt law {s:?}"))),
        }
    }
}

/// The `n`-th universal Witt addition or multiplication polynomial; errors
/// if a coefficient fails to be integral.
pub fn witt_polynomial_law(law: WittLaw, n: usize) -> Result<MultiPoly> {
    if n == 0 {
        return Err(Error::Parameter("n must be positive".into()));
    }
    let a = WittVector::from(symbolic_seq(n, x));
    let b = WittVector::from(symbolic_seq(n, y));
    let r = match law {
        WittLaw::Sum => witt_add(&a, &b)?,
        WittLaw::Product => witt_mul(&a, &b)?,
    };
    require_integral(r.components()[n - 1].clone())
}

/// The `n`-th Witt polynomial `w_n(x_1..x_n)`.
pub fn ghost_polynomial(n: usize) -> Result<MultiPoly> {
    if n == 0 {
        return Err(Error::Parameter("n must be positive".into()));
    }
    Ok(ghost(&WittVector::from(symbolic_seq(n, x))).entries()[n - 1].clone())
}

/// `Π_{n ≤ N} (1 - x_n z^n)⁻¹`.
pub fn artin_hasse<R: Ring>(x: &WittVector<R>) -> TruncSeries<R> {
    let order = x.order();
    let mut acc = TruncSeries::one(order);
    for (i, xn) in x.components().iter().enumerate() {
        if xn.is_zero() {
            continue;
        }
        let n = i + 1;
        let mut coeffs = vec![R::zero(); order + 1];
        let mut p = R::one();
        for k in (0..=order).step_by(n) {
            coeffs[k] = p.clone();
            p = p * xn.clone();
        }
        acc = acc.mul(&TruncSeries::new(coeffs));
    }
    acc
}

/// `S⁻¹(AH(x))`, a sequence of order `N + 1` with first entry 1.
pub fn phi_to_gplus<R: QAlgebra>(x: &WittVector<R>) -> Result<Seq<R>> {
    inverse_transform(TransformKind::S, &artin_hasse(x))
}
