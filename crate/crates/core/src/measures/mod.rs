//! Compactly supported freely infinitely divisible laws, handled through
//! their free cumulants.
//!
//! A [`MeasureSpec`] is either a closed-form family or raw moment, cumulant
//! or characteristic-pair data. Operations return a family tag whenever the
//! family's parameter law applies and fall back to raw cumulants otherwise.
//! Only Hankel positivity is decided; exponential boundedness of the
//! cumulants cannot be checked at finite order.

pub mod classical;
pub mod convex;
pub mod cpd;

use num_traits::{One, Signed, Zero};
use serde_json::{json, Value};

use crate::algebra::{rational_sqrt, JsonScalar, Rational, Ring};
use crate::error::{Error, Result};
use crate::noncrossing::{cumulants_from_moments, moments_from_cumulants};
use crate::series::Seq;

pub use classical::{bp_map, classical_cumulants, star_classical, star_family, ClassicalFamily};
pub use convex::{
    giry_algebra, giry_fold, giry_join, giry_unit, mix_moments, moment_mixing_counterexample, plus_alpha_beta, plus_q,
    FormalSum,
};
pub use cpd::{hankel, is_cond_pos_def, quadratic_form, CpdDecision};

/// Drift `γ` and an atomic finite measure `σ` given as `(atom, mass)`.
#[derive(Clone, Debug, PartialEq)]
pub struct CharPair {
    gamma: Rational,
    sigma: Vec<(Rational, Rational)>,
}

fn check_atoms(atoms: &[(Rational, Rational)]) -> Result<()> {
    for (i, (x, m)) in atoms.iter().enumerate() {
        if m.is_negative() {
            return Err(Error::Parameter(format!("negative mass {m} at atom {x}")));
        }
        if atoms[..i].iter().any(|(y, _)| y == x) {
            return Err(Error::Parameter(format!("repeated atom {x}")));
        }
    }
    Ok(())
}

/// `Σ mass · atom^k`.
pub fn atomic_moment(atoms: &[(Rational, Rational)], k: usize) -> Rational {
    atoms.iter().fold(Rational::zero(), |acc, (x, m)| acc + m * Ring::pow(x, k as u32))
}

impl CharPair {
    pub fn new(gamma: Rational, sigma: Vec<(Rational, Rational)>) -> Result<Self> {
        check_atoms(&sigma)?;
        Ok(CharPair { gamma, sigma })
    }

    pub fn gamma(&self) -> &Rational {
        &self.gamma
    }

    pub fn sigma(&self) -> &[(Rational, Rational)] {
        &self.sigma
    }

    /// The fibre action: moves `γ` by `a`.
    pub fn shift_gamma(&self, a: &Rational) -> Self {
        CharPair { gamma: &self.gamma + a, sigma: self.sigma.clone() }
    }

    /// `(αγ_p + βγ_q, ασ_p + βσ_q)`, merging equal atoms.
    pub fn conic(alpha: &Rational, p: &CharPair, beta: &Rational, q: &CharPair) -> Result<Self> {
        if alpha.is_negative() || beta.is_negative() {
            return Err(Error::Parameter("conic weights must be nonnegative".into()));
        }
        let mut sigma: Vec<(Rational, Rational)> = Vec::new();
        let scaled = p.sigma.iter().map(|(x, m)| (x, alpha * m)).chain(q.sigma.iter().map(|(x, m)| (x, beta * m)));
        for (x, m) in scaled {
            match sigma.iter_mut().find(|(y, _)| y == x) {
                Some(slot) => slot.1 += m,
                None => sigma.push((x.clone(), m)),
            }
        }
        Ok(CharPair { gamma: alpha * &p.gamma + beta * &q.gamma, sigma })
    }

    pub fn to_json(&self) -> Value {
        json!({
            "gamma": self.gamma.to_json(),
            "sigma": atoms_to_json(&self.sigma),
        })
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let gamma = Rational::from_json(field(v, "gamma")?)?;
        CharPair::new(gamma, atoms_from_json(field(v, "sigma")?)?)
    }
}

/// The `(s_1, ρ)` description with `ρ = (1 + x²) σ`.
#[derive(Clone, Debug, PartialEq)]
pub struct RhoPair {
    pub s1: Rational,
    pub rho: Vec<(Rational, Rational)>,
}

fn atoms_to_json(atoms: &[(Rational, Rational)]) -> Value {
    Value::Array(atoms.iter().map(|(x, m)| json!({"atom": x.to_json(), "mass": m.to_json()})).collect())
}

fn atoms_from_json(v: &Value) -> Result<Vec<(Rational, Rational)>> {
    let list = v.as_array().ok_or_else(|| Error::Parse("expected a list of atoms".into()))?;
    list.iter()
        .map(|a| Ok((Rational::from_json(field(a, "atom")?)?, Rational::from_json(field(a, "mass")?)?)))
        .collect()
}

fn field<'a>(v: &'a Value, key: &str) -> Result<&'a Value> {
    v.get(key).ok_or_else(|| Error::Parse(format!("missing field {key:?}")))
}

/// `κ_1 = γ + m_1(σ)`, `κ_{n+1} = m_{n-1}(σ) + m_{n+1}(σ)`.
pub fn charpair_to_r(p: &CharPair, order: usize) -> Seq<Rational> {
    let out = (1..=order)
        .map(|n| match n {
            1 => &p.gamma + atomic_moment(&p.sigma, 1),
            _ => atomic_moment(&p.sigma, n - 2) + atomic_moment(&p.sigma, n),
        })
        .collect();
    Seq::new(out)
}

pub fn sigma_to_rho(p: &CharPair) -> RhoPair {
    RhoPair {
        s1: &p.gamma + atomic_moment(&p.sigma, 1),
        rho: p.sigma.iter().map(|(x, m)| (x.clone(), m * (Rational::one() + x * x))).collect(),
    }
}

/// `κ_1 = s_1`, `κ_{n+1} = m_{n-1}(ρ)`.
pub fn rho_to_r(s1: &Rational, rho: &[(Rational, Rational)], order: usize) -> Result<Seq<Rational>> {
    check_atoms(rho)?;
    let out = (1..=order).map(|n| if n == 1 { s1.clone() } else { atomic_moment(rho, n - 2) }).collect();
    Ok(Seq::new(out))
}

#[derive(Clone, Debug, PartialEq)]
pub enum MeasureSpec {
    Dirac {
        a: Rational,
    },
    /// Centre `a`, squared radius `r2`; `R(z) = a + (r2/4) z`.
    Semicircle {
        a: Rational,
        r2: Rational,
    },
    /// Cumulants `λ α^n`.
    FreePoisson {
        rate: Rational,
        jump: Rational,
    },
    Moments(Seq<Rational>),
    Cumulants(Seq<Rational>),
    CharPair(CharPair),
}

impl MeasureSpec {
    pub fn dirac(a: Rational) -> Self {
        MeasureSpec::Dirac { a }
    }

    /// Radius `r ≥ 0`; radius zero collapses to the Dirac mass.
    pub fn semicircle(a: Rational, r: Rational) -> Result<Self> {
        if r.is_negative() {
            return Err(Error::Parameter(format!("semicircle radius {r} is negative")));
        }
        Self::semicircle_r2(a, &r * &r)
    }

    pub fn semicircle_r2(a: Rational, r2: Rational) -> Result<Self> {
        if r2.is_negative() {
            return Err(Error::Parameter(format!("squared radius {r2} is negative")));
        }
        Ok(if r2.is_zero() { MeasureSpec::Dirac { a } } else { MeasureSpec::Semicircle { a, r2 } })
    }

    pub fn free_poisson(rate: Rational, jump: Rational) -> Result<Self> {
        if rate.is_negative() {
            return Err(Error::Parameter(format!("free Poisson rate {rate} is negative")));
        }
        Ok(MeasureSpec::FreePoisson { rate, jump })
    }

    pub fn family(&self) -> &'static str {
        match self {
            MeasureSpec::Dirac { .. } => "dirac",
            MeasureSpec::Semicircle { .. } => "semicircle",
            MeasureSpec::FreePoisson { .. } => "free_poisson",
            MeasureSpec::Moments(_) => "moments",
            MeasureSpec::Cumulants(_) => "cumulants",
            MeasureSpec::CharPair(_) => "char_pair",
        }
    }

    pub fn to_json(&self) -> Value {
        let entries = |s: &Seq<Rational>| Value::Array(s.entries().iter().map(JsonScalar::to_json).collect());
        match self {
            MeasureSpec::Dirac { a } => json!({"family": "dirac", "a": a.to_json()}),
            MeasureSpec::Semicircle { a, r2 } => match rational_sqrt(r2) {
                Some(r) => json!({"family": "semicircle", "a": a.to_json(), "r": r.to_json()}),
                None => json!({"family": "semicircle", "a": a.to_json(), "r2": r2.to_json()}),
            },
            MeasureSpec::FreePoisson { rate, jump } => {
                json!({"family": "free_poisson", "rate": rate.to_json(), "jump": jump.to_json()})
            }
            MeasureSpec::Moments(s) => json!({"family": "moments", "entries": entries(s)}),
            MeasureSpec::Cumulants(s) => json!({"family": "cumulants", "entries": entries(s)}),
            MeasureSpec::CharPair(p) => {
                let mut v = p.to_json();
                v["family"] = json!("char_pair");
                v
            }
        }
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let q = |key: &str| Rational::from_json(field(v, key)?);
        let entries = || -> Result<Seq<Rational>> {
            let list = field(v, "entries")?.as_array().ok_or_else(|| Error::Parse("entries must be a list".into()))?;
            Ok(Seq::new(list.iter().map(Rational::from_json).collect::<Result<_>>()?))
        };
        let family = field(v, "family")?.as_str().ok_or_else(|| Error::Parse("family must be a string".into()))?;
        match family {
            "dirac" => Ok(MeasureSpec::dirac(q("a")?)),
            "semicircle" => match v.get("r2") {
                Some(r2) => MeasureSpec::semicircle_r2(q("a")?, Rational::from_json(r2)?),
                None => MeasureSpec::semicircle(q("a")?, q("r")?),
            },
            "free_poisson" => MeasureSpec::free_poisson(q("rate")?, q("jump")?),
            "moments" => Ok(MeasureSpec::Moments(entries()?)),
            "cumulants" => Ok(MeasureSpec::Cumulants(entries()?)),
            "char_pair" => Ok(MeasureSpec::CharPair(CharPair::from_json(v)?)),
            other => Err(Error::Parse(format!("unknown measure family {other:?}"))),
        }
    }
}

fn four() -> Rational {
    Rational::from_integer(4.into())
}

fn prefix(s: &Seq<Rational>, order: usize) -> Result<Seq<Rational>> {
    if s.order() < order {
        return Err(Error::InsufficientOrder { needed: order, got: s.order() });
    }
    Ok(s.truncate(order))
}

pub fn cumulants_of(spec: &MeasureSpec, order: usize) -> Result<Seq<Rational>> {
    let mut k = Seq::zeros(order);
    match spec {
        MeasureSpec::Dirac { a } => {
            if order > 0 {
                k = Seq::unit_vector(order).scale(a);
            }
        }
        MeasureSpec::Semicircle { a, r2 } => {
            let mut e = vec![Rational::zero(); order];
            if order > 0 {
                e[0] = a.clone();
            }
            if order > 1 {
                e[1] = r2 / four();
            }
            k = Seq::new(e);
        }
        MeasureSpec::FreePoisson { rate, jump } => k = Seq::powers(jump, order).scale(rate),
        MeasureSpec::Moments(m) => k = cumulants_from_moments(&prefix(m, order)?)?,
        MeasureSpec::Cumulants(c) => k = prefix(c, order)?,
        MeasureSpec::CharPair(p) => k = charpair_to_r(p, order),
    }
    Ok(k)
}

pub fn moments_of(spec: &MeasureSpec, order: usize) -> Result<Seq<Rational>> {
    match spec {
        MeasureSpec::Moments(m) => prefix(m, order),
        MeasureSpec::Dirac { a } => Ok(Seq::powers(a, order)),
        _ => moments_from_cumulants(&cumulants_of(spec, order)?),
    }
}

fn first_two(spec: &MeasureSpec) -> Result<(Rational, Rational)> {
    let k = cumulants_of(spec, 2)?;
    Ok((k.entries()[0].clone(), k.entries()[1].clone()))
}

/// `μ ⊞ ν`; `order` is used when no family law applies.
pub fn boxplus_spec(a: &MeasureSpec, b: &MeasureSpec, order: usize) -> Result<MeasureSpec> {
    use MeasureSpec::*;
    let centre_and_r2 = |s: &MeasureSpec| match s {
        Dirac { a } => Some((a.clone(), Rational::zero())),
        Semicircle { a, r2 } => Some((a.clone(), r2.clone())),
        _ => None,
    };
    if let (Some((a1, r1)), Some((a2, r2))) = (centre_and_r2(a), centre_and_r2(b)) {
        return MeasureSpec::semicircle_r2(a1 + a2, r1 + r2);
    }
    match (a, b) {
        (FreePoisson { rate: l1, jump: j1 }, FreePoisson { rate: l2, jump: j2 }) if j1 == j2 => {
            MeasureSpec::free_poisson(l1 + l2, j1.clone())
        }
        (Dirac { a }, other) | (other, Dirac { a }) if a.is_zero() => Ok(other.clone()),
        _ => Ok(Cumulants(cumulants_of(a, order)?.add(&cumulants_of(b, order)?))),
    }
}

/// `μ ⊡ ν`, the cumulantwise product.
pub fn boxdot_spec(a: &MeasureSpec, b: &MeasureSpec, order: usize) -> Result<MeasureSpec> {
    use MeasureSpec::*;
    match (a, b) {
        (Dirac { a }, other) | (other, Dirac { a }) => {
            let k1 = cumulants_of(other, 1)?.first().clone();
            Ok(Dirac { a: a * k1 })
        }
        (Semicircle { a, r2 }, other) | (other, Semicircle { a, r2 }) if !first_two(other)?.1.is_negative() => {
            let (k1, k2) = first_two(other)?;
            MeasureSpec::semicircle_r2(a * k1, r2 * k2)
        }
        (FreePoisson { rate: l1, jump: j1 }, FreePoisson { rate: l2, jump: j2 }) => {
            MeasureSpec::free_poisson(l1 * l2, j1 * j2)
        }
        (FreePoisson { rate, jump }, other) | (other, FreePoisson { rate, jump }) if rate.is_one() && jump.is_one() => {
            Ok(other.clone())
        }
        _ => Ok(Cumulants(cumulants_of(a, order)?.hadamard(&cumulants_of(b, order)?))),
    }
}

/// `V`: drops the first two cumulants.
pub fn v_shift(spec: &MeasureSpec, order: usize) -> Result<MeasureSpec> {
    use MeasureSpec::*;
    match spec {
        Dirac { .. } | Semicircle { .. } => Ok(Dirac { a: Rational::zero() }),
        FreePoisson { rate, jump } => MeasureSpec::free_poisson(rate * jump * jump, jump.clone()),
        _ => {
            let k = cumulants_of(spec, order + 2)?;
            Ok(Cumulants(Seq::new(k.entries()[2..].to_vec())))
        }
    }
}

/// `f_n`: entrywise `n`-th power of the cumulants, with `0^0 = 1`.
pub fn frobenius(n: u32, spec: &MeasureSpec, order: usize) -> Result<MeasureSpec> {
    use MeasureSpec::*;
    match spec {
        FreePoisson { rate, jump } if n > 0 => MeasureSpec::free_poisson(Ring::pow(rate, n), Ring::pow(jump, n)),
        Dirac { a } if n > 0 => Ok(Dirac { a: Ring::pow(a, n) }),
        Semicircle { a, r2 } if n > 0 => {
            MeasureSpec::semicircle_r2(Ring::pow(a, n), Ring::pow(&(r2 / four()), n) * four())
        }
        _ => Ok(Cumulants(cumulants_of(spec, order)?.map(|c| Ring::pow(c, n)))),
    }
}

/// `τ(a) = ν_{∞,1,a}`, cumulants `(a, a², a³, …)`.
pub fn teichmuller(a: &Rational, order: usize) -> Seq<Rational> {
    Seq::powers(a, order)
}

/// `r.μ = δ_r ⊞ μ`.
pub fn act_shift(r: &Rational, spec: &MeasureSpec, order: usize) -> Result<MeasureSpec> {
    use MeasureSpec::*;
    match spec {
        Dirac { a } => Ok(Dirac { a: a + r }),
        Semicircle { a, r2 } => Ok(Semicircle { a: a + r, r2: r2.clone() }),
        CharPair(p) => Ok(CharPair(p.shift_gamma(r))),
        _ => {
            let mut k = cumulants_of(spec, order)?.into_entries();
            if let Some(k1) = k.first_mut() {
                *k1 += r;
            }
            Ok(Cumulants(Seq::new(k)))
        }
    }
}

/// `c.μ = ν_{∞,c,1} ⊡ μ` for `c ≥ 0`.
pub fn act_scale(c: &Rational, spec: &MeasureSpec, order: usize) -> Result<MeasureSpec> {
    if c.is_negative() {
        return Err(Error::Parameter(format!("scaling factor {c} is negative")));
    }
    use MeasureSpec::*;
    match spec {
        Dirac { a } => Ok(Dirac { a: c * a }),
        Semicircle { a, r2 } => MeasureSpec::semicircle_r2(c * a, c * r2),
        FreePoisson { rate, jump } => MeasureSpec::free_poisson(c * rate, jump.clone()),
        _ => Ok(Cumulants(cumulants_of(spec, order)?.scale(c))),
    }
}
