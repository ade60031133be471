//! The convolution group laws `⊞`, `⊠` (moment coordinates) and `⊠_NS`
//! (cumulant coordinates), their units and inverses, the universal
//! polynomials they define, and the torus splitting of `⊠`.
//!
//! `⊞` and `⊠` are evaluated by conjugating with the moment/cumulant
//! passage:
//!
//! ```text
//! a ⊞ b = m(κ(a) + κ(b))
//! a ⊠ b = m(κ(a) ⊠_NS κ(b))
//! ```
//!
//! Both are division-free, so the same code runs over polynomial rings.

use std::fmt;
use std::str::FromStr;

use num_traits::One;

use crate::algebra::{x, y, MultiPoly, Ring, Var};
use crate::error::{Error, Result};
use crate::noncrossing::{
    boxtimes_ns, boxtimes_ns_inverse, boxtimes_ns_kernel, cumulants_from_moments, moments_from_cumulants,
};
use crate::series::Seq;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ConvKind {
    BoxPlus,
    BoxTimes,
    BoxTimesNs,
}

impl ConvKind {
    pub const ALL: [ConvKind; 3] = [ConvKind::BoxPlus, ConvKind::BoxTimes, ConvKind::BoxTimesNs];

    pub fn name(self) -> &'static str {
        match self {
            ConvKind::BoxPlus => "boxplus",
            ConvKind::BoxTimes => "boxtimes",
            ConvKind::BoxTimesNs => "boxtimesns",
        }
    }
}

impl fmt::Display for ConvKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ConvKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        ConvKind::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| Error::Parse(format!("unknown convolution {s:?}")))
    }
}

pub fn convolve<R: Ring>(kind: ConvKind, a: &Seq<R>, b: &Seq<R>) -> Result<Seq<R>> {
    a.require_same_order(b)?;
    match kind {
        ConvKind::BoxPlus => {
            let k = cumulants_from_moments(a)?.add(&cumulants_from_moments(b)?);
            moments_from_cumulants(&k)
        }
        ConvKind::BoxTimes => {
            let k = boxtimes_ns(&cumulants_from_moments(a)?, &cumulants_from_moments(b)?)?;
            moments_from_cumulants(&k)
        }
        ConvKind::BoxTimesNs => boxtimes_ns(a, b),
    }
}

pub fn conv_unit<R: Ring>(kind: ConvKind, order: usize) -> Seq<R> {
    match kind {
        ConvKind::BoxPlus => Seq::zeros(order),
        ConvKind::BoxTimes => Seq::ones(order),
        ConvKind::BoxTimesNs => Seq::unit_vector(order),
    }
}

pub fn conv_inverse<R: Ring>(kind: ConvKind, a: &Seq<R>) -> Result<Seq<R>> {
    match kind {
        ConvKind::BoxPlus => moments_from_cumulants(&cumulants_from_moments(a)?.neg()),
        ConvKind::BoxTimes => boxtimes_inverse(a),
        ConvKind::BoxTimesNs => boxtimes_ns_inverse(a),
    }
}

/// `y_1 = 1/x_1` and `y_n = (1 - Q_n(x, y)|_{y_n = 0}) / x_1^n`.
fn boxtimes_inverse<R: Ring>(x: &Seq<R>) -> Result<Seq<R>> {
    let n = x.order();
    if n == 0 {
        return Ok(Seq::new(Vec::new()));
    }
    let inv1 = x.first().try_inverse().ok_or(Error::NonInvertibleFirstEntry)?;
    let kx = cumulants_from_moments(x)?;
    let mut y = vec![R::zero(); n];
    y[0] = inv1.clone();
    let mut inv_pow = inv1.clone();
    for k in 2..=n {
        inv_pow = inv_pow * inv1.clone();
        let partial = Seq::new(y[..k].to_vec());
        let ky = cumulants_from_moments(&partial)?;
        let kz = (1..=k).map(|j| boxtimes_ns_kernel(&kx, &ky, j)).collect::<Result<Vec<_>>>()?;
        let q = moments_from_cumulants(&Seq::new(kz))?.entries()[k - 1].clone();
        y[k - 1] = (R::one() - q) * inv_pow.clone();
    }
    Ok(Seq::new(y))
}

/// Universal polynomial families exposed by `universal_polynomial`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Law {
    /// `⊞` in moment coordinates.
    P,
    /// `⊠` in moment coordinates.
    Q,
    /// `⊠_NS`.
    K,
    /// The formal group law `Q(x + 1, y + 1) - 1`.
    F,
    /// `F` restricted to `x_1 = y_1 = 0`, i.e. `Q` with first entries 1.
    FPlus,
}

impl Law {
    pub const ALL: [Law; 5] = [Law::P, Law::Q, Law::K, Law::F, Law::FPlus];

    pub fn name(self) -> &'static str {
        match self {
            Law::P => "P",
            Law::Q => "Q",
            Law::K => "K",
            Law::F => "F",
            Law::FPlus => "F+",
        }
    }
}

impl FromStr for Law {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Law::ALL.into_iter().find(|l| l.name() == s).ok_or_else(|| Error::Parse(format!("unknown law {s:?}")))
    }
}

/// `(v(1), …, v(n))` as polynomials.
pub fn symbolic_seq(n: usize, var: fn(u32) -> Var) -> Seq<MultiPoly> {
    Seq::new((1..=n as u32).map(|i| MultiPoly::var(var(i))).collect())
}

/// Errors unless every coefficient is an integer.
pub fn require_integral(p: MultiPoly) -> Result<MultiPoly> {
    match p.non_integer_coefficient() {
        Some(c) => Err(Error::NonIntegerCoefficient(c.to_string())),
        None => Ok(p),
    }
}

/// The `n`-th coordinate polynomial of a law, obtained by running the
/// numeric code over `ℚ[x_1..x_n, y_1..y_n]`.
pub fn universal_polynomial(law: Law, n: usize) -> Result<MultiPoly> {
    if n == 0 {
        return Err(Error::Parameter("n must be positive".into()));
    }
    let xs = symbolic_seq(n, x);
    let ys = symbolic_seq(n, y);
    let one = MultiPoly::one();
    let shift = |s: &Seq<MultiPoly>, first_is_one: bool| {
        Seq::new(
            s.entries()
                .iter()
                .enumerate()
                .map(|(i, v)| if i == 0 && first_is_one { one.clone() } else { v.clone() + one.clone() })
                .collect(),
        )
    };
    let p = match law {
        Law::P => convolve(ConvKind::BoxPlus, &xs, &ys)?,
        Law::Q => convolve(ConvKind::BoxTimes, &xs, &ys)?,
        Law::K => convolve(ConvKind::BoxTimesNs, &xs, &ys)?,
        Law::F => convolve(ConvKind::BoxTimes, &shift(&xs, false), &shift(&ys, false))?,
        Law::FPlus => convolve(ConvKind::BoxTimes, &shift(&xs, true), &shift(&ys, true))?,
    };
    let mut out = p.entries()[n - 1].clone();
    if matches!(law, Law::F | Law::FPlus) {
        out = out - one;
    }
    require_integral(out)
}

/// `(c, c², …, c^N)`, the moments of the point mass at `c`.
pub fn torus_iota<R: Ring>(c: &R, order: usize) -> Result<Seq<R>> {
    if c.try_inverse().is_none() {
        return Err(Error::NonInvertibleFirstEntry);
    }
    Ok(Seq::powers(c, order))
}

/// `a_n / a_1^n`; lands in the sequences with first entry 1.
pub fn torus_project<R: Ring>(a: &Seq<R>) -> Result<Seq<R>> {
    if a.order() == 0 {
        return Ok(a.clone());
    }
    let inv = a.first().try_inverse().ok_or(Error::NonInvertibleFirstEntry)?;
    let scales = Seq::powers(&inv, a.order());
    Ok(a.hadamard(&scales))
}
