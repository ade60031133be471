//! The R, S and F transforms, the linearising logarithms, the EXP/LOG
//! isomorphisms and the second multiplications `⊡`, `·_Λ`, `⧆`, `⧆_NS`.
//!
//! Degree bookkeeping: a sequence of order `N` has transforms of order
//! `N - 1`, and inverse transforms of an order-`M` series return order
//! `M + 1`.

use std::fmt;
use std::str::FromStr;

use serde_json::{json, Value};

use crate::algebra::{GaussianRational, JsonScalar, QAlgebra, Rational, Ring};
use crate::error::{Error, Result};
use crate::noncrossing::{cumulants_from_moments, moments_from_cumulants};
use crate::series::{Seq, TruncSeries};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum TransformKind {
    R,
    S,
    F,
}

impl TransformKind {
    pub fn name(self) -> &'static str {
        match self {
            TransformKind::R => "r",
            TransformKind::S => "s",
            TransformKind::F => "f",
        }
    }
}

impl fmt::Display for TransformKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for TransformKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "r" => Ok(TransformKind::R),
            "s" => Ok(TransformKind::S),
            "f" => Ok(TransformKind::F),
            _ => Err(Error::Parse(format!("unknown transform {s:?}"))),
        }
    }
}

fn require_nonempty<R>(m: &Seq<R>) -> Result<()>
where
    R: Ring,
{
    if m.order() == 0 {
        return Err(Error::InsufficientOrder { needed: 1, got: 0 });
    }
    Ok(())
}

/// `f⁻¹(z)/z` for `f(z) = Σ m_n z^n`.
fn inverse_over_z<R: Ring>(m: &Seq<R>) -> Result<TruncSeries<R>> {
    require_nonempty(m)?;
    if m.first().try_inverse().is_none() {
        return Err(Error::NonInvertibleFirstEntry);
    }
    m.to_moment_series().comp_inverse()?.div_z()
}

pub fn transform<R: Ring>(kind: TransformKind, m: &Seq<R>) -> Result<TruncSeries<R>> {
    match kind {
        TransformKind::R => {
            require_nonempty(m)?;
            Ok(cumulants_from_moments(m)?.to_r_series())
        }
        TransformKind::S => {
            let g = inverse_over_z(m)?;
            let one_plus_z = TruncSeries::one(g.order()).add(&TruncSeries::z(g.order()));
            Ok(g.mul(&one_plus_z))
        }
        TransformKind::F => inverse_over_z(m),
    }
}

pub fn inverse_transform<R: Ring>(kind: TransformKind, t: &TruncSeries<R>) -> Result<Seq<R>> {
    match kind {
        TransformKind::R => moments_from_cumulants(&Seq::from_r_series(t)),
        TransformKind::S | TransformKind::F => {
            if t.coeff(0).try_inverse().is_none() {
                return Err(Error::NonInvertibleConstant);
            }
            let g = if kind == TransformKind::S {
                let n = t.order();
                let one_plus_z = TruncSeries::one(n).add(&TruncSeries::z(n));
                t.mul(&one_plus_z.mul_inverse()?)
            } else {
                t.clone()
            };
            Ok(Seq::from_moment_series(&g.mul_z().comp_inverse()?))
        }
    }
}

fn require_first_one<R: Ring>(a: &Seq<R>) -> Result<()> {
    require_nonempty(a)?;
    if *a.first() != R::one() {
        return Err(Error::FirstEntryNotOne);
    }
    Ok(())
}

/// `zlogd ∘ S` on sequences with `m_1 = 1`; order drops by one.
pub fn log_boxtimes<R: Ring>(m: &Seq<R>) -> Result<Seq<R>> {
    require_first_one(m)?;
    transform(TransformKind::S, m)?.zlogd_seq()
}

/// `zlogd ∘ F` on sequences with `k_1 = 1`; order drops by one.
pub fn log_boxtimes_ns<R: Ring>(k: &Seq<R>) -> Result<Seq<R>> {
    require_first_one(k)?;
    transform(TransformKind::F, k)?.zlogd_seq()
}

/// Inverse of [`log_boxtimes`]; order rises by one.
pub fn exp_boxtimes<R: QAlgebra>(v: &Seq<R>) -> Result<Seq<R>> {
    inverse_transform(TransformKind::S, &TruncSeries::zlogd_inverse(v))
}

/// Inverse of [`log_boxtimes_ns`]; order rises by one.
pub fn exp_boxtimes_ns<R: QAlgebra>(v: &Seq<R>) -> Result<Seq<R>> {
    inverse_transform(TransformKind::F, &TruncSeries::zlogd_inverse(v))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ExpDirection {
    Exp,
    Log,
}

/// `EXP = S⁻¹ ∘ zlogd⁻¹ ∘ R` (order `N` to `N + 1`), with
/// `LOG = R⁻¹ ∘ zlogd ∘ S` its inverse.
pub fn exp_iso<R: QAlgebra>(dir: ExpDirection, x: &Seq<R>) -> Result<Seq<R>> {
    match dir {
        ExpDirection::Exp => {
            require_nonempty(x)?;
            exp_boxtimes(&cumulants_from_moments(x)?)
        }
        ExpDirection::Log => moments_from_cumulants(&log_boxtimes(x)?),
    }
}

/// `R⁻¹(R(a) ⊙ R(b))`, i.e. cumulants multiply entrywise.
pub fn boxdot<R: Ring>(a: &Seq<R>, b: &Seq<R>) -> Result<Seq<R>> {
    a.require_same_order(b)?;
    moments_from_cumulants(&cumulants_from_moments(a)?.hadamard(&cumulants_from_moments(b)?))
}

/// Moments of the `⊡`-unit: all cumulants 1.
pub fn boxdot_unit<R: Ring>(order: usize) -> Result<Seq<R>> {
    moments_from_cumulants(&Seq::ones(order))
}

/// `zlogd⁻¹(zlogd f ⊙ zlogd g)` on series with constant term 1.
pub fn lambda_mul<R: QAlgebra>(f: &TruncSeries<R>, g: &TruncSeries<R>) -> Result<TruncSeries<R>> {
    let gf = f.zlogd_seq()?;
    let gg = g.zlogd_seq()?;
    Ok(TruncSeries::zlogd_inverse(&gf.hadamard(&gg)))
}

/// `1/(1 - z)`, whose ghost vector is all ones.
pub fn lambda_unit<R: Ring>(order: usize) -> TruncSeries<R> {
    TruncSeries::geometric(&R::one(), order)
}

/// `S⁻¹(S(a) ·_Λ S(b))` on sequences with first entry 1.
pub fn squareast<R: QAlgebra>(a: &Seq<R>, b: &Seq<R>) -> Result<Seq<R>> {
    a.require_same_order(b)?;
    require_first_one(a)?;
    require_first_one(b)?;
    let s = lambda_mul(&transform(TransformKind::S, a)?, &transform(TransformKind::S, b)?)?;
    inverse_transform(TransformKind::S, &s)
}

/// `F⁻¹(F(a) ·_Λ F(b))` on cumulant sequences with first entry 1.
pub fn squareast_ns<R: QAlgebra>(a: &Seq<R>, b: &Seq<R>) -> Result<Seq<R>> {
    a.require_same_order(b)?;
    require_first_one(a)?;
    require_first_one(b)?;
    let f = lambda_mul(&transform(TransformKind::F, a)?, &transform(TransformKind::F, b)?)?;
    inverse_transform(TransformKind::F, &f)
}

/// The `⧆`-unit: `S⁻¹(1/(1 - z))`.
pub fn squareast_unit<R: Ring>(order: usize) -> Result<Seq<R>> {
    if order == 0 {
        return Ok(Seq::new(Vec::new()));
    }
    inverse_transform(TransformKind::S, &lambda_unit(order - 1))
}

/// A sequence `δ_{e^L} ⊠ u` whose first moment `e^L` is transcendental:
/// moments are `m_n = e^{nL} · u_n`, `u` has first entry 1.
#[derive(Clone, Debug, PartialEq)]
pub struct ExpImage<R> {
    pub log_scale: R,
    pub unipotent: Seq<R>,
}

impl<R: QAlgebra> ExpImage<R> {
    /// `S⁻¹(e^u)`, split as `e^u = e^{u_0} · e^{u - u_0}`.
    pub fn from_exponent(u: &TruncSeries<R>) -> Result<Self> {
        let c = u.coeff(0);
        let v = u.sub(&TruncSeries::constant(c.clone(), u.order()));
        let unipotent = inverse_transform(TransformKind::S, &v.exp()?)?;
        Ok(ExpImage { log_scale: -c, unipotent })
    }

    /// The `⊠`-product on images.
    pub fn boxtimes(&self, other: &Self) -> Result<Self> {
        Ok(ExpImage {
            log_scale: self.log_scale.clone() + other.log_scale.clone(),
            unipotent: crate::freeconv::convolve(
                crate::freeconv::ConvKind::BoxTimes,
                &self.unipotent,
                &other.unipotent,
            )?,
        })
    }
}

impl<R: Ring + JsonScalar> ExpImage<R> {
    pub fn to_json(&self) -> Value {
        json!({
            "kind": "exp_image",
            "log_scale": self.log_scale.to_json(),
            "unipotent": self.unipotent.to_json(),
        })
    }
}

/// `μ ↦ S⁻¹(e^{-R_μ(z)})`.
pub fn exp_neg_r(m: &Seq<Rational>) -> Result<ExpImage<Rational>> {
    ExpImage::from_exponent(&transform(TransformKind::R, m)?.neg())
}

/// `μ ↦ S⁻¹(e^{-i R_μ(i(z + 1/2))})`, with the truncated `R` read as a
/// polynomial.
pub fn exp_circle(m: &Seq<Rational>) -> Result<ExpImage<GaussianRational>> {
    let r = transform(TransformKind::R, m)?.map(GaussianRational::from_rational);
    let n = r.order();
    let i = GaussianRational::new(Rational::from_i64(0), Rational::from_i64(1));
    let mut arg = TruncSeries::constant(i.clone() * GaussianRational::from_rational(&crate::algebra::ratio(1, 2)), n);
    if n >= 1 {
        arg = arg.add(&TruncSeries::z(n).scale(&i));
    }
    let mut acc = TruncSeries::zero(n);
    let mut power = TruncSeries::one(n);
    for k in 0..=n {
        acc = acc.add(&power.scale(&r.coeff(k)));
        power = power.mul(&arg);
    }
    ExpImage::from_exponent(&acc.scale(&-i))
}
