//! Suite bodies. Each runs one trial's worth of checks against fresh
//! random inputs.

use std::collections::BTreeMap;

use num_traits::{One, Zero};
use serde_json::{json, Value};

use super::Trial;
use crate::algebra::{x, y, MultiPoly, Rational, Ring, Var};
use crate::error::Result;
use crate::freeconv::{
    conv_inverse, conv_unit, convolve, torus_iota, torus_project, universal_polynomial, ConvKind, Law,
};
use crate::measures::{
    self, act_scale, act_shift, boxdot_spec, boxplus_spec, charpair_to_r, cumulants_of, frobenius, giry_algebra,
    giry_fold, hankel, is_cond_pos_def, moment_mixing_counterexample, plus_q, quadratic_form, rho_to_r, sigma_to_rho,
    teichmuller, v_shift, CharPair, FormalSum, MeasureSpec,
};
use crate::noncrossing::{cumulants_from_moments, moments_from_cumulants};
use crate::series::{Seq, TruncSeries};
use crate::transforms::{
    boxdot, boxdot_unit, exp_boxtimes, exp_boxtimes_ns, exp_circle, exp_iso, exp_neg_r, inverse_transform, lambda_mul,
    log_boxtimes, log_boxtimes_ns, squareast, squareast_ns, squareast_unit, transform, ExpDirection, TransformKind,
};
use crate::witt::comonad::{adams, coassociativity_sides, comonad_counit, comonad_delta, vplus_counit, vplus_delta};
use crate::witt::hurwitz::{carre_du_champ, hurwitz_gamma, hurwitz_gamma_inverse, hurwitz_mul, HurwitzSeq};
use crate::witt::{
    artin_hasse, ghost, ghost_inverse, phi_to_gplus, witt_add, witt_mul, witt_neg, witt_polynomial_law, WittLaw,
    WittVector,
};

/// Data computed once per run and shared by all trials.
pub struct Shared {
    /// `(identity, n, law polynomial, convolution it must match)`.
    group_polys: Vec<(Law, usize, MultiPoly)>,
    witt_polys: Vec<(WittLaw, usize, MultiPoly)>,
}

const SYMBOLIC_LIMIT: usize = 4;

impl Shared {
    pub fn new(suite: &str, order: usize) -> Result<Self> {
        let top = order.min(SYMBOLIC_LIMIT);
        let mut shared = Shared { group_polys: Vec::new(), witt_polys: Vec::new() };
        if suite == "group_laws" {
            for law in [Law::P, Law::Q, Law::K] {
                for n in 1..=top {
                    shared.group_polys.push((law, n, universal_polynomial(law, n)?));
                }
            }
        }
        if suite == "witt" {
            for law in [WittLaw::Sum, WittLaw::Product] {
                for n in 1..=top {
                    shared.witt_polys.push((law, n, witt_polynomial_law(law, n)?));
                }
            }
        }
        Ok(shared)
    }
}

fn seqs(items: &[(&str, &Seq<Rational>)]) -> Value {
    Value::Object(items.iter().map(|(k, v)| (k.to_string(), v.to_json())).collect())
}

fn assignment(a: &Seq<Rational>, b: &Seq<Rational>) -> BTreeMap<Var, Rational> {
    let mut env = BTreeMap::new();
    for (i, v) in a.entries().iter().enumerate() {
        env.insert(x(i as u32 + 1), v.clone());
    }
    for (i, v) in b.entries().iter().enumerate() {
        env.insert(y(i as u32 + 1), v.clone());
    }
    env
}

pub fn group_laws(t: &mut Trial, shared: &Shared) {
    let n = t.order();
    for kind in ConvKind::ALL {
        let (a, b, c) = (t.invertible_seq(n), t.invertible_seq(n), t.invertible_seq(n));
        let name = kind.name();
        let inputs = || seqs(&[("a", &a), ("b", &b), ("c", &c)]);
        let conv = |p: &Seq<Rational>, q: &Seq<Rational>| convolve(kind, p, q);
        t.check(&format!("{name} commutative"), inputs, || Ok(conv(&a, &b)? == conv(&b, &a)?));
        t.check(&format!("{name} associative"), inputs, || Ok(conv(&conv(&a, &b)?, &c)? == conv(&a, &conv(&b, &c)?)?));
        t.check(&format!("{name} unit"), inputs, || Ok(conv(&a, &conv_unit(kind, n))? == a));
        t.check(&format!("{name} inverse"), inputs, || Ok(conv(&a, &conv_inverse(kind, &a)?)? == conv_unit(kind, n)));
        t.check(&format!("{name} truncation"), inputs, || {
            Ok(conv(&a.truncate(n - 1), &b.truncate(n - 1))? == conv(&a, &b)?.truncate(n - 1))
        });
    }
    let (a, b) = (t.invertible_seq(n), t.invertible_seq(n));
    let inputs = || seqs(&[("a", &a), ("b", &b)]);
    let env = assignment(&a, &b);
    for (law, k, poly) in &shared.group_polys {
        let kind = match law {
            Law::P => ConvKind::BoxPlus,
            Law::Q => ConvKind::BoxTimes,
            _ => ConvKind::BoxTimesNs,
        };
        t.check(&format!("{} polynomial {k}", law.name()), inputs, || {
            Ok(poly.eval(&env)? == convolve(kind, &a, &b)?.entries()[k - 1])
        });
    }
    t.check("torus split", inputs, || {
        let iota = torus_iota(a.first(), n)?;
        let p = torus_project(&a)?;
        Ok(p.first().is_one() && convolve(ConvKind::BoxTimes, &iota, &p)? == a)
    });
    t.check("torus projection homomorphism", inputs, || {
        let ab = convolve(ConvKind::BoxTimes, &a, &b)?;
        Ok(torus_project(&ab)? == convolve(ConvKind::BoxTimes, &torus_project(&a)?, &torus_project(&b)?)?)
    });
    let (g, h) = (t.gplus_seq(n), t.gplus_seq(n));
    t.check(
        "boxtimes closed on first entry one",
        || seqs(&[("a", &g), ("b", &h)]),
        || Ok(convolve(ConvKind::BoxTimes, &g, &h)?.first().is_one()),
    );
}

pub fn transforms(t: &mut Trial, _: &Shared) {
    let n = t.order();
    let (a, b) = (t.invertible_seq(n), t.invertible_seq(n));
    let inputs = || seqs(&[("a", &a), ("b", &b)]);
    let tr = |k, m: &Seq<Rational>| transform(k, m);
    t.check("R additive", inputs, || {
        Ok(tr(TransformKind::R, &convolve(ConvKind::BoxPlus, &a, &b)?)?
            == tr(TransformKind::R, &a)?.add(&tr(TransformKind::R, &b)?))
    });
    t.check("S multiplicative", inputs, || {
        Ok(tr(TransformKind::S, &convolve(ConvKind::BoxTimes, &a, &b)?)?
            == tr(TransformKind::S, &a)?.mul(&tr(TransformKind::S, &b)?))
    });
    t.check("F multiplicative", inputs, || {
        Ok(tr(TransformKind::F, &convolve(ConvKind::BoxTimesNs, &a, &b)?)?
            == tr(TransformKind::F, &a)?.mul(&tr(TransformKind::F, &b)?))
    });
    t.check("S equals F of cumulants", inputs, || {
        Ok(tr(TransformKind::S, &a)? == tr(TransformKind::F, &cumulants_from_moments(&a)?)?)
    });
    for kind in [TransformKind::R, TransformKind::S, TransformKind::F] {
        t.check(&format!("{} inverse", kind.name()), inputs, || Ok(inverse_transform(kind, &tr(kind, &a)?)? == a));
    }

    let (g, h) = (t.gplus_seq(n), t.gplus_seq(n));
    let inputs = || seqs(&[("a", &g), ("b", &h)]);
    t.check("log boxtimes additive", inputs, || {
        Ok(log_boxtimes(&convolve(ConvKind::BoxTimes, &g, &h)?)? == log_boxtimes(&g)?.add(&log_boxtimes(&h)?))
    });
    t.check("log boxtimes_ns additive", inputs, || {
        Ok(log_boxtimes_ns(&convolve(ConvKind::BoxTimesNs, &g, &h)?)?
            == log_boxtimes_ns(&g)?.add(&log_boxtimes_ns(&h)?))
    });
    t.check("exp inverts log boxtimes", inputs, || Ok(exp_boxtimes(&log_boxtimes(&g)?)? == g));
    t.check("exp inverts log boxtimes_ns", inputs, || Ok(exp_boxtimes_ns(&log_boxtimes_ns(&g)?)? == g));
    t.check("squareast unit", inputs, || Ok(squareast(&g, &squareast_unit(n)?)? == g));
    t.check("cumulants intertwine squareast", inputs, || {
        Ok(cumulants_from_moments(&squareast(&g, &h)?)?
            == squareast_ns(&cumulants_from_moments(&g)?, &cumulants_from_moments(&h)?)?)
    });

    let (u, v) = (t.seq(n - 1), t.seq(n - 1));
    let inputs = || seqs(&[("x", &u), ("y", &v), ("g", &g)]);
    let exp = |m: &Seq<Rational>| exp_iso(ExpDirection::Exp, m);
    let log = |m: &Seq<Rational>| exp_iso(ExpDirection::Log, m);
    t.check("LOG inverts EXP", inputs, || Ok(log(&exp(&u)?)? == u));
    t.check("EXP inverts LOG", inputs, || Ok(exp(&log(&g)?)? == g));
    t.check("EXP boxplus to boxtimes", inputs, || {
        Ok(exp(&convolve(ConvKind::BoxPlus, &u, &v)?)? == convolve(ConvKind::BoxTimes, &exp(&u)?, &exp(&v)?)?)
    });
    t.check("EXP boxdot to squareast", inputs, || Ok(exp(&boxdot(&u, &v)?)? == squareast(&exp(&u)?, &exp(&v)?)?));
    t.check("boxdot unit", inputs, || Ok(boxdot(&u, &boxdot_unit(n - 1)?)? == u));

    let (c, d) = (t.seq(n - 2), t.seq(n - 2));
    let inputs = || seqs(&[("a", &c), ("b", &d)]);
    t.check("exp of -R homomorphism", inputs, || {
        let lhs = exp_neg_r(&convolve(ConvKind::BoxPlus, &c, &d)?)?;
        Ok(lhs == exp_neg_r(&c)?.boxtimes(&exp_neg_r(&d)?)?)
    });
    t.check("circle exponential homomorphism", inputs, || {
        let lhs = exp_circle(&convolve(ConvKind::BoxPlus, &c, &d)?)?;
        Ok(lhs == exp_circle(&c)?.boxtimes(&exp_circle(&d)?)?)
    });
}

fn reindex(s: &Seq<Rational>) -> TruncSeries<Rational> {
    TruncSeries::new(s.entries().to_vec())
}

pub fn ring_diagram(t: &mut Trial, _: &Shared) {
    let n = t.order();
    let (wx, wy) = (WittVector::from(t.seq(n)), WittVector::from(t.seq(n)));
    let inputs = || json!({"x": wx.to_json(), "y": wy.to_json()});
    let one = Rational::one();
    let node = |w: &WittVector<Rational>| -> Result<_> {
        let g = ghost(w);
        let s = phi_to_gplus(w)?;
        let k = cumulants_from_moments(&s)?;
        let h = hurwitz_gamma_inverse(&one, &reindex(&g))?;
        Ok((g, artin_hasse(w), moments_from_cumulants(&ghost(w))?, s, k, h))
    };
    let (sum, prod) = match (witt_add(&wx, &wy), witt_mul(&wx, &wy)) {
        (Ok(s), Ok(p)) => (s, p),
        _ => {
            t.check("witt operations defined", inputs, || Ok(false));
            return;
        }
    };
    t.check("zlogd after AH equals ghost", inputs, || Ok(artin_hasse(&wx).zlogd_seq()? == ghost(&wx)));
    t.check("S of phi equals AH", inputs, || Ok(transform(TransformKind::S, &phi_to_gplus(&wx)?)? == artin_hasse(&wx)));
    t.check("F of cumulants of phi equals AH", inputs, || {
        Ok(transform(TransformKind::F, &cumulants_from_moments(&phi_to_gplus(&wx)?)?)? == artin_hasse(&wx))
    });
    t.check("log boxtimes of phi equals ghost", inputs, || Ok(log_boxtimes(&phi_to_gplus(&wx)?)? == ghost(&wx)));
    t.check("log boxtimes_ns of cumulants of phi equals ghost", inputs, || {
        Ok(log_boxtimes_ns(&cumulants_from_moments(&phi_to_gplus(&wx)?)?)? == ghost(&wx))
    });
    t.check("LOG of phi has cumulants ghost", inputs, || {
        Ok(cumulants_from_moments(&exp_iso(ExpDirection::Log, &phi_to_gplus(&wx)?)?)? == ghost(&wx))
    });
    t.check("EXP of ghost moments equals phi", inputs, || {
        Ok(exp_iso(ExpDirection::Exp, &moments_from_cumulants(&ghost(&wx))?)? == phi_to_gplus(&wx)?)
    });
    t.check("hurwitz gamma closes the square", inputs, || {
        let (g, .., h) = node(&wx)?;
        Ok(hurwitz_gamma(&h) == reindex(&g))
    });
    t.check("addition commutes around the diagram", inputs, || {
        let (gx, ax, px, sx, kx, hx) = node(&wx)?;
        let (gy, ay, py, sy, ky, hy) = node(&wy)?;
        let (g, a, p, s, k, h) = node(&sum)?;
        Ok(g == gx.add(&gy)
            && a == ax.mul(&ay)
            && p == convolve(ConvKind::BoxPlus, &px, &py)?
            && s == convolve(ConvKind::BoxTimes, &sx, &sy)?
            && k == convolve(ConvKind::BoxTimesNs, &kx, &ky)?
            && h == hx.add(&hy)?)
    });
    t.check("multiplication commutes around the diagram", inputs, || {
        let (gx, ax, px, sx, kx, hx) = node(&wx)?;
        let (gy, ay, py, sy, ky, hy) = node(&wy)?;
        let (g, a, p, s, k, h) = node(&prod)?;
        Ok(g == gx.hadamard(&gy)
            && a == lambda_mul(&ax, &ay)?
            && p == boxdot(&px, &py)?
            && s == squareast(&sx, &sy)?
            && k == squareast_ns(&kx, &ky)?
            && h == hurwitz_mul(&hx, &hy)?)
    });
}

pub fn witt(t: &mut Trial, shared: &Shared) {
    let n = t.order();
    let (a, b, c) = (WittVector::from(t.seq(n)), WittVector::from(t.seq(n)), WittVector::from(t.seq(n)));
    let inputs = || json!({"x": a.to_json(), "y": b.to_json(), "z": c.to_json()});
    t.check("ghost additive", inputs, || Ok(ghost(&witt_add(&a, &b)?) == ghost(&a).add(&ghost(&b))));
    t.check("ghost multiplicative", inputs, || Ok(ghost(&witt_mul(&a, &b)?) == ghost(&a).hadamard(&ghost(&b))));
    t.check("ghost inverse", inputs, || Ok(ghost_inverse(&ghost(&a)) == a));
    t.check("witt addition associative", inputs, || {
        Ok(witt_add(&witt_add(&a, &b)?, &c)? == witt_add(&a, &witt_add(&b, &c)?)?)
    });
    t.check("witt distributive", inputs, || {
        Ok(witt_mul(&a, &witt_add(&b, &c)?)? == witt_add(&witt_mul(&a, &b)?, &witt_mul(&a, &c)?)?)
    });
    t.check("witt units", inputs, || {
        Ok(witt_mul(&a, &WittVector::one(n))? == a
            && witt_add(&a, &WittVector::zero(n))? == a
            && witt_add(&a, &witt_neg(&a))? == WittVector::zero(n))
    });
    let env = assignment(a.as_seq(), b.as_seq());
    for (law, k, poly) in &shared.witt_polys {
        let label = if *law == WittLaw::Sum { "sum" } else { "product" };
        t.check(&format!("witt {label} polynomial {k}"), inputs, || {
            let r = if *law == WittLaw::Sum { witt_add(&a, &b)? } else { witt_mul(&a, &b)? };
            Ok(poly.eval(&env)? == r.components()[k - 1])
        });
    }
    t.check("AH triangle", inputs, || Ok(artin_hasse(&a).zlogd_seq()? == ghost(&a)));
    t.check("AH additive to multiplicative", inputs, || {
        Ok(artin_hasse(&witt_add(&a, &b)?) == artin_hasse(&a).mul(&artin_hasse(&b)))
    });
    t.check("phi homomorphism", inputs, || {
        Ok(phi_to_gplus(&witt_add(&a, &b)?)? == convolve(ConvKind::BoxTimes, &phi_to_gplus(&a)?, &phi_to_gplus(&b)?)?)
    });
    t.check("phi inverts the S route", inputs, || {
        Ok(inverse_transform(TransformKind::S, &artin_hasse(&a))? == phi_to_gplus(&a)?)
    });
}

pub fn hurwitz(t: &mut Trial, _: &Shared) {
    let n = t.order();
    let lambda = t.nonzero();
    let draw = |t: &mut Trial| HurwitzSeq::new(t.seq(n + 1).into_entries(), lambda.clone());
    let (a, b, c) = (draw(t), draw(t), draw(t));
    let hj = |h: &HurwitzSeq<Rational>| Seq::new(h.entries().to_vec()).to_json();
    let inputs = || json!({"lambda": lambda.to_string(), "a": hj(&a), "b": hj(&b), "c": hj(&c)});
    let mul = |p: &HurwitzSeq<Rational>, q: &HurwitzSeq<Rational>| hurwitz_mul(p, q);
    t.check("hurwitz commutative", inputs, || Ok(mul(&a, &b)? == mul(&b, &a)?));
    t.check("hurwitz associative", inputs, || Ok(mul(&mul(&a, &b)?, &c)? == mul(&a, &mul(&b, &c)?)?));
    t.check("hurwitz unit", inputs, || Ok(mul(&a, &HurwitzSeq::one(n, lambda.clone()))? == a));
    t.check("gamma multiplicative", inputs, || {
        Ok(hurwitz_gamma(&mul(&a, &b)?) == hurwitz_gamma(&a).hadamard(&hurwitz_gamma(&b)))
    });
    t.check("gamma inverse", inputs, || Ok(hurwitz_gamma_inverse(&lambda, &hurwitz_gamma(&a))? == a));
    t.check("carre du champ", inputs, || {
        Ok(carre_du_champ(&a, &b)? == mul(&a.derivation()?, &b.derivation()?)?.scale(&lambda))
    });

    let (m, s) = (t.seq(n), t.seq(n));
    let inputs = || seqs(&[("m", &m), ("s", &s)]);
    t.check("comonad counit", inputs, || {
        let d = comonad_delta(&s);
        Ok(d[0] == s && Seq::new(d.iter().map(comonad_counit).collect()) == s)
    });
    t.check("comonad coassociative", inputs, || {
        let (outer, inner) = coassociativity_sides(s.entries());
        Ok(outer == inner)
    });
    t.check("transported counit", inputs, || {
        let d = vplus_delta(&m)?;
        let eps = Seq::new(d.iter().map(vplus_counit).collect::<Result<Vec<_>>>()?);
        Ok(d[0] == m && moments_from_cumulants(&eps)? == m)
    });
    t.check("transported coassociativity", inputs, || {
        let d = vplus_delta(&m)?;
        let outer = super::super::witt::comonad::delta_seq(&d);
        for (row, want) in d.iter().zip(&outer) {
            if vplus_delta(row)? != *want {
                return Ok(false);
            }
        }
        Ok(true)
    });
    t.check("adams reads cumulants", inputs, || {
        let k = cumulants_from_moments(&m)?;
        Ok((1..=n).map(|j| adams(j, &m)).collect::<Result<Vec<_>>>()? == k.entries())
    });
    let a0 = t.rational();
    t.check(
        "adams on point masses",
        || json!({"a": a0.to_string()}),
        || {
            let m = Seq::powers(&a0, n);
            Ok(adams(1, &m)? == a0 && (2..=n).all(|j| adams(j, &m).map(|v| v.is_zero()).unwrap_or(false)))
        },
    );
}

fn forward_cpd(t: &mut Trial, order: usize) -> (Rational, Vec<(Rational, Rational)>, Result<Seq<Rational>>) {
    let s1 = t.rational();
    let rho = t.atoms();
    let k = rho_to_r(&s1, &rho, order);
    (s1, rho, k)
}

fn atoms_json(atoms: &[(Rational, Rational)]) -> Value {
    Value::Array(atoms.iter().map(|(x, m)| json!({"atom": x.to_string(), "mass": m.to_string()})).collect())
}

pub fn measures(t: &mut Trial, _: &Shared) {
    let n = t.order();
    let (s1, rho1, k1) = forward_cpd(t, n);
    let (s2, rho2, k2) = forward_cpd(t, n);
    let inputs = || json!({"s1": [s1.to_string(), s2.to_string()], "rho": [atoms_json(&rho1), atoms_json(&rho2)]});
    let accepted = |k: &Seq<Rational>| -> Result<bool> { Ok(is_cond_pos_def(k)?.accepted) };
    t.check("forward generated accepted", inputs, || accepted(&k1.clone()?));
    t.check("boxplus closure", inputs, || accepted(&k1.clone()?.add(&k2.clone()?)));
    t.check("boxdot closure", inputs, || accepted(&k1.clone()?.hadamard(&k2.clone()?)));
    t.check("V preserves positivity", inputs, || {
        let shifted = v_shift(&MeasureSpec::Cumulants(k1.clone()?), n - 2)?;
        accepted(&cumulants_of(&shifted, n - 2)?)
    });

    let (a, b, r, s, c) = (t.rational(), t.rational(), t.nonnegative(), t.nonnegative(), t.nonnegative());
    let (l, m, al, be) = (t.nonnegative(), t.nonnegative(), t.rational(), t.rational());
    let params = || {
        json!({"a": a.to_string(), "b": b.to_string(), "r": r.to_string(), "s": s.to_string(),
        "c": c.to_string(), "lambda": l.to_string(), "mu": m.to_string(), "alpha": al.to_string(), "beta": be.to_string()})
    };
    let semi = |a: &Rational, r2: Rational| MeasureSpec::semicircle_r2(a.clone(), r2);
    let fp = |l: &Rational, a: &Rational| MeasureSpec::free_poisson(l.clone(), a.clone());
    let four = Rational::from_integer(4.into());
    t.check("semicircle boxplus law", params, || {
        Ok(boxplus_spec(&semi(&a, &r * &r)?, &semi(&b, &s * &s)?, n)? == semi(&(&a + &b), &r * &r + &s * &s)?)
    });
    t.check("semicircle boxdot law", params, || {
        Ok(boxdot_spec(&semi(&a, &r * &r)?, &semi(&b, &s * &s)?, n)? == semi(&(&a * &b), &r * &r * &s * &s / &four)?)
    });
    t.check("free Poisson boxdot law", params, || {
        Ok(boxdot_spec(&fp(&l, &al)?, &fp(&m, &be)?, n)? == fp(&(&l * &m), &(&al * &be))?)
    });
    t.check("dirac ideal", params, || {
        let mu = fp(&l, &al)?;
        Ok(boxdot_spec(&MeasureSpec::dirac(a.clone()), &mu, n)? == MeasureSpec::dirac(&a * &l * &al))
    });
    t.check("V on free Poisson", params, || Ok(v_shift(&fp(&l, &al)?, n)? == fp(&(&l * &al * &al), &al)?));
    t.check("frobenius on free Poisson", params, || {
        Ok(frobenius(2, &fp(&l, &al)?, n)? == fp(&(&l * &l), &(&al * &al))?)
    });
    t.check("scaling action table", params, || {
        Ok(act_scale(&c, &MeasureSpec::dirac(a.clone()), n)? == MeasureSpec::dirac(&c * &a)
            && act_scale(&c, &semi(&a, &r * &r)?, n)? == semi(&(&c * &a), &c * &r * &r)?
            && act_scale(&c, &fp(&l, &al)?, n)? == fp(&(&c * &l), &al)?)
    });
    t.check("shift action", params, || {
        let mu = fp(&l, &al)?;
        let twice = act_shift(&a, &act_shift(&b, &mu, n)?, n)?;
        Ok(cumulants_of(&twice, n)? == cumulants_of(&act_shift(&(&a + &b), &mu, n)?, n)?
            && cumulants_of(&act_shift(&Rational::zero(), &mu, n)?, n)? == cumulants_of(&mu, n)?)
    });
    t.check("teichmuller multiplicative", params, || {
        Ok(teichmuller(&al, n).hadamard(&teichmuller(&be, n)) == teichmuller(&(&al * &be), n))
    });
    t.check("pair descriptions agree", inputs, || {
        let p = CharPair::new(s1.clone(), rho1.clone())?;
        let r = sigma_to_rho(&p);
        Ok(rho_to_r(&r.s1, &r.rho, n)? == charpair_to_r(&p, n))
    });

    let v = num_traits::Signed::abs(&t.rational()) + Rational::one();
    let mut bad = t.seq(n);
    bad =
        Seq::new(bad.entries().iter().enumerate().map(|(i, e)| if i == 1 { -v.clone() } else { e.clone() }).collect());
    t.check(
        "negative variance rejected with witness",
        || seqs(&[("kappa", &bad)]),
        || {
            let d = is_cond_pos_def(&bad)?;
            let w = d.witness.unwrap_or_default();
            Ok(!d.accepted && quadratic_form(&hankel(&bad), &w) < Rational::zero())
        },
    );
    let raw = t.seq(n);
    t.check(
        "decision is certified",
        || seqs(&[("kappa", &raw)]),
        || {
            let d = is_cond_pos_def(&raw)?;
            Ok(match &d.witness {
                Some(w) => quadratic_form(&hankel(&raw), w) < Rational::zero(),
                None => d.accepted,
            })
        },
    );
}

pub fn convex(t: &mut Trial, _: &Shared) {
    let n = t.order();
    let (p, q) = (t.unit_interval(), t.unit_interval());
    let (x, y, z) = (t.seq(n), t.seq(n), t.seq(n));
    let inputs = || {
        let mut v = seqs(&[("x", &x), ("y", &y), ("z", &z)]);
        v["p"] = json!(p.to_string());
        v["q"] = json!(q.to_string());
        v
    };
    let one = Rational::one();
    t.check("convex symmetry", inputs, || Ok(plus_q(&q, &x, &y)? == plus_q(&(&one - &q), &y, &x)?));
    t.check("convex idempotence", inputs, || Ok(plus_q(&q, &x, &x)? == x));
    t.check("convex zero weight", inputs, || Ok(plus_q(&Rational::zero(), &x, &y)? == y));
    t.check("convex reassociation", inputs, || {
        let s = &p + (&one - &p) * &q;
        if s.is_zero() {
            return Ok(true);
        }
        Ok(plus_q(&p, &x, &plus_q(&q, &y, &z)?)? == plus_q(&s, &plus_q(&(&p / &s), &x, &y)?, &z)?)
    });
    t.check("boxplus distributes", inputs, || Ok(plus_q(&q, &x, &y)?.add(&z) == plus_q(&q, &x.add(&z), &y.add(&z))?));
    t.check("boxdot distributes", inputs, || {
        Ok(plus_q(&q, &x, &y)?.hadamard(&z) == plus_q(&q, &x.hadamard(&z), &y.hadamard(&z))?)
    });

    let len = t.index_in(1, 5);
    let raw: Vec<(i64, Seq<Rational>)> = (0..len).map(|_| (t.index_in(0, 9) as i64, t.seq(n))).collect();
    let total: i64 = raw.iter().map(|(w, _)| w).sum::<i64>().max(1);
    let mut terms: Vec<(Rational, Seq<Rational>)> =
        raw.into_iter().map(|(w, k)| (Rational::new(w.into(), total.into()), k)).collect();
    if terms.iter().all(|(w, _)| w.is_zero()) {
        terms[0].0 = Rational::one();
    }
    let sum_json = || {
        json!(terms.iter().map(|(w, k)| json!({"weight": w.to_string(), "cumulants": k.to_json()})).collect::<Vec<_>>())
    };
    t.check("giry fold equals linear form", sum_json, || {
        let sum = FormalSum::new(terms.clone())?;
        Ok(giry_fold(&sum)? == giry_algebra(&sum)?)
    });
    t.check("giry unit", sum_json, || {
        let k = &terms[0].1;
        Ok(giry_algebra(&measures::giry_unit(k.clone()))? == *k)
    });
    t.check(
        "moment mixing counterexample",
        || json!({"order": 4}),
        || {
            let (lhs, rhs) = moment_mixing_counterexample(4)?;
            Ok(lhs.entries()[3] < rhs.entries()[3])
        },
    );
}

/// Left shift on the pointwise carrier.
fn shift(s: &Seq<Rational>) -> Seq<Rational> {
    Seq::new(s.entries()[1..].to_vec())
}

/// `R⁻¹ ∘ ∂² ∘ R` on moment sequences.
fn shift2_hat(m: &Seq<Rational>) -> Result<Seq<Rational>> {
    let k = cumulants_from_moments(m)?;
    moments_from_cumulants(&Seq::new(k.entries()[2..].to_vec()))
}

pub fn omega_e(t: &mut Trial, _: &Shared) {
    let n = t.order();
    let (a, b, c) = (t.seq(n), t.seq(n), t.seq(n));
    let q = t.unit_interval();
    let e = t.index_in(1, 4) as u32;
    let inputs = || {
        let mut v = seqs(&[("a", &a), ("b", &b), ("c", &c)]);
        v["q"] = json!(q.to_string());
        v["n"] = json!(e);
        v
    };
    let (zero, one) = (Seq::<Rational>::zeros(n), Seq::<Rational>::ones(n));
    t.check("pointwise semiring", inputs, || {
        Ok(a.add(&b) == b.add(&a)
            && a.hadamard(&b) == b.hadamard(&a)
            && a.add(&b).add(&c) == a.add(&b.add(&c))
            && a.hadamard(&b).hadamard(&c) == a.hadamard(&b.hadamard(&c))
            && a.hadamard(&b.add(&c)) == a.hadamard(&b).add(&a.hadamard(&c))
            && a.add(&zero) == a
            && a.hadamard(&one) == a
            && a.hadamard(&zero) == zero)
    });
    t.check("pointwise shift endomorphism", inputs, || {
        Ok(shift(&a.add(&b)) == shift(&a).add(&shift(&b))
            && shift(&a.hadamard(&b)) == shift(&a).hadamard(&shift(&b))
            && shift(&plus_q(&q, &a, &b)?) == plus_q(&q, &shift(&a), &shift(&b))?)
    });
    let f = |s: &Seq<Rational>| s.map(|v| Ring::pow(v, e));
    t.check("pointwise frobenius endomorphism", inputs, || Ok(f(&a.hadamard(&b)) == f(&a).hadamard(&f(&b))));

    let (ma, mb, mc) = match (moments_from_cumulants(&a), moments_from_cumulants(&b), moments_from_cumulants(&c)) {
        (Ok(ma), Ok(mb), Ok(mc)) => (ma, mb, mc),
        _ => {
            t.check("moments defined", inputs, || Ok(false));
            return;
        }
    };
    let plus = |x: &Seq<Rational>, y: &Seq<Rational>| convolve(ConvKind::BoxPlus, x, y);
    let mix = |x: &Seq<Rational>, y: &Seq<Rational>| -> Result<Seq<Rational>> {
        moments_from_cumulants(&plus_q(&q, &cumulants_from_moments(x)?, &cumulants_from_moments(y)?)?)
    };
    t.check("measure semiring", inputs, || {
        let delta0 = Seq::zeros(n);
        let nu = boxdot_unit(n)?;
        Ok(plus(&ma, &mb)? == plus(&mb, &ma)?
            && boxdot(&ma, &mb)? == boxdot(&mb, &ma)?
            && boxdot(&ma, &plus(&mb, &mc)?)? == plus(&boxdot(&ma, &mb)?, &boxdot(&ma, &mc)?)?
            && plus(&ma, &delta0)? == ma
            && boxdot(&ma, &nu)? == ma)
    });
    t.check("measure double shift endomorphism", inputs, || {
        Ok(shift2_hat(&plus(&ma, &mb)?)? == plus(&shift2_hat(&ma)?, &shift2_hat(&mb)?)?
            && shift2_hat(&boxdot(&ma, &mb)?)? == boxdot(&shift2_hat(&ma)?, &shift2_hat(&mb)?)?
            && shift2_hat(&mix(&ma, &mb)?)? == mix(&shift2_hat(&ma)?, &shift2_hat(&mb)?)?
            && shift2_hat(&Seq::zeros(n))? == Seq::zeros(n - 2)
            && shift2_hat(&boxdot_unit(n)?)? == boxdot_unit(n - 2)?)
    });
    t.check("measure frobenius endomorphism", inputs, || {
        let fm =
            |m: &Seq<Rational>| -> Result<Seq<Rational>> { moments_from_cumulants(&f(&cumulants_from_moments(m)?)) };
        let power = (1..e).try_fold(ma.clone(), |acc, _| boxdot(&acc, &ma))?;
        Ok(fm(&boxdot(&ma, &mb)?)? == boxdot(&fm(&ma)?, &fm(&mb)?)? && fm(&ma)? == power)
    });
    t.check("measure convex axioms", inputs, || {
        Ok(mix(&ma, &ma)? == ma && cumulants_from_moments(&mix(&ma, &mb)?)? == plus_q(&q, &a, &b)?)
    });
}
