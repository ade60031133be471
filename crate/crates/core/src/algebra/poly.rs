//! Sparse multivariate polynomials over the rationals in the variables
//! `x1, x2, …` and `y1, y2, …`.
//!
//! Terms are stored in a map keyed by sparse exponent vectors. The canonical
//! printed order is graded-lex: larger total weight first (with
//! `deg(x_i) = deg(y_i) = i`), ties broken lexicographically with the variable
//! priority `x_N > … > x_1 > y_N > … > y_1`. Inside a monomial variables print
//! as `x` before `y`, ascending index.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::ring::{QAlgebra, Rational, Ring};
use super::text::parse_rational;
use crate::error::{Error, Result};

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub enum Side {
    X,
    Y,
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct Var {
    pub side: Side,
    pub index: u32,
}

pub fn x(index: u32) -> Var {
    Var { side: Side::X, index }
}

pub fn y(index: u32) -> Var {
    Var { side: Side::Y, index }
}

impl Ord for Var {
    /// Priority order: `x` before `y`, higher index first.
    fn cmp(&self, other: &Self) -> Ordering {
        self.side.cmp(&other.side).then_with(|| other.index.cmp(&self.index))
    }
}

impl PartialOrd for Var {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.side {
            Side::X => write!(f, "x{}", self.index),
            Side::Y => write!(f, "y{}", self.index),
        }
    }
}

/// Variable grading used by the homogeneity checks.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Grading {
    /// `deg(x_i) = deg(y_i) = i`
    Index,
    /// `deg(x_i) = deg(y_i) = i - 1`, the grading of the unipotent part.
    IndexMinusOne,
}

impl Grading {
    pub fn weight(self, v: Var) -> u64 {
        match self {
            Grading::Index => v.index as u64,
            Grading::IndexMinusOne => v.index.saturating_sub(1) as u64,
        }
    }
}

/// Sparse exponent vector, sorted by variable priority, exponents positive.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Default)]
pub struct Monomial(Vec<(Var, u32)>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(Vec::new())
    }

    pub fn var(v: Var) -> Self {
        Monomial(vec![(v, 1)])
    }

    pub fn from_powers(powers: impl IntoIterator<Item = (Var, u32)>) -> Self {
        let mut acc: BTreeMap<Var, u32> = BTreeMap::new();
        for (v, e) in powers {
            *acc.entry(v).or_insert(0) += e;
        }
        Monomial(acc.into_iter().filter(|&(_, e)| e > 0).collect())
    }

    pub fn powers(&self) -> &[(Var, u32)] {
        &self.0
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn weight(&self, grading: Grading, side: Option<Side>) -> u64 {
        self.0
            .iter()
            .filter(|(v, _)| side.is_none_or(|s| v.side == s))
            .map(|&(v, e)| grading.weight(v) * e as u64)
            .sum()
    }

    fn mul(&self, other: &Monomial) -> Monomial {
        let (a, b) = (&self.0, &other.0);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                Ordering::Less => {
                    out.push(a[i]);
                    i += 1;
                }
                Ordering::Greater => {
                    out.push(b[j]);
                    j += 1;
                }
                Ordering::Equal => {
                    out.push((a[i].0, a[i].1 + b[j].1));
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        Monomial(out)
    }

    /// Lexicographic comparison of exponent vectors under the variable
    /// priority; `Greater` means `self` is lex-larger.
    fn lex_cmp(&self, other: &Monomial) -> Ordering {
        let (a, b) = (&self.0, &other.0);
        let (mut i, mut j) = (0, 0);
        loop {
            match (a.get(i), b.get(j)) {
                (None, None) => return Ordering::Equal,
                (Some(_), None) => return Ordering::Greater,
                (None, Some(_)) => return Ordering::Less,
                (Some(&(va, ea)), Some(&(vb, eb))) => match va.cmp(&vb) {
                    Ordering::Equal => {
                        if ea != eb {
                            return ea.cmp(&eb);
                        }
                        i += 1;
                        j += 1;
                    }
                    Ordering::Less => return Ordering::Greater,
                    Ordering::Greater => return Ordering::Less,
                },
            }
        }
    }

    /// Graded-lex order used for printing; `Less` sorts first.
    fn print_cmp(&self, other: &Monomial) -> Ordering {
        let wa = self.weight(Grading::Index, None);
        let wb = other.weight(Grading::Index, None);
        wb.cmp(&wa).then_with(|| other.lex_cmp(self))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut vars = self.0.clone();
        vars.sort_by_key(|(v, _)| (v.side, v.index));
        for (k, (v, e)) in vars.iter().enumerate() {
            if k > 0 {
                f.write_str("*")?;
            }
            if *e == 1 {
                write!(f, "{v}")?;
            } else {
                write!(f, "{v}^{e}")?;
            }
        }
        Ok(())
    }
}

/// Polynomial with rational coefficients; no zero coefficient is ever stored.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct MultiPoly {
    terms: BTreeMap<Monomial, Rational>,
}

impl MultiPoly {
    pub fn constant(c: Rational) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(Monomial::one(), c);
        }
        MultiPoly { terms }
    }

    pub fn var(v: Var) -> Self {
        Self::term(Rational::one(), Monomial::var(v))
    }

    pub fn term(c: Rational, m: Monomial) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        MultiPoly { terms }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn constant_term(&self) -> Rational {
        self.coefficient(&Monomial::one())
    }

    /// Terms in canonical (graded-lex) print order.
    pub fn sorted_terms(&self) -> Vec<(&Monomial, &Rational)> {
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by(|a, b| a.0.print_cmp(b.0));
        v
    }

    pub fn variables(&self) -> Vec<Var> {
        let mut vars: Vec<Var> = self.terms.keys().flat_map(|m| m.0.iter().map(|&(v, _)| v)).collect();
        vars.sort();
        vars.dedup();
        vars
    }

    fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let s = e.get() + c;
                if s.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = s;
                }
            }
        }
    }

    pub fn add_ref(&self, other: &MultiPoly) -> MultiPoly {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn mul_ref(&self, other: &MultiPoly) -> MultiPoly {
        let mut out = MultiPoly::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        out
    }

    pub fn scale(&self, c: &Rational) -> MultiPoly {
        if c.is_zero() {
            return MultiPoly::zero();
        }
        MultiPoly { terms: self.terms.iter().map(|(m, v)| (m.clone(), v * c)).collect() }
    }

    /// Exact evaluation in any ring containing the rationals.
    pub fn eval<R: QAlgebra>(&self, assignment: &BTreeMap<Var, R>) -> Result<R> {
        let mut acc = R::zero();
        for (m, c) in &self.terms {
            let mut t = R::from_rational(c);
            for &(v, e) in m.powers() {
                let val = assignment.get(&v).ok_or_else(|| Error::MissingVariable(v.to_string()))?;
                t = t * val.pow(e);
            }
            acc = acc + t;
        }
        Ok(acc)
    }

    /// Every term has x-weight `x_total` and y-weight `y_total`.
    pub fn is_bihomogeneous(&self, x_total: u64, y_total: u64, grading: Grading) -> bool {
        self.terms
            .keys()
            .all(|m| m.weight(grading, Some(Side::X)) == x_total && m.weight(grading, Some(Side::Y)) == y_total)
    }

    /// Every term has combined weight `total`.
    pub fn is_homogeneous(&self, total: u64, grading: Grading) -> bool {
        self.terms.keys().all(|m| m.weight(grading, None) == total)
    }

    pub fn has_integer_coefficients(&self) -> bool {
        self.terms.values().all(|c| c.is_integer())
    }

    /// First non-integer coefficient, if any.
    pub fn non_integer_coefficient(&self) -> Option<&Rational> {
        self.terms.values().find(|c| !c.is_integer())
    }
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (k, (m, c)) in self.sorted_terms().into_iter().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            match (k, neg) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            if m.is_one() {
                write!(f, "{abs}")?;
            } else if abs.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{abs}*{m}")?;
            }
        }
        Ok(())
    }
}

fn parse_factor(tok: &str) -> Result<MultiPoly> {
    let bad = || Error::Parse(format!("bad polynomial factor {tok:?}"));
    let (base, exp) = match tok.split_once('^') {
        Some((b, e)) => (b.trim(), e.trim().parse::<u32>().map_err(|_| bad())?),
        None => (tok.trim(), 1),
    };
    let side = match base.chars().next() {
        Some('x') => Some(Side::X),
        Some('y') => Some(Side::Y),
        _ => None,
    };
    match side {
        Some(side) => {
            let index: u32 = base[1..].trim_start_matches('_').parse().map_err(|_| bad())?;
            if index == 0 {
                return Err(bad());
            }
            Ok(MultiPoly::term(Rational::one(), Monomial::from_powers([(Var { side, index }, exp)])))
        }
        None => Ok(MultiPoly::constant(parse_rational(base)?.pow(exp as i32))),
    }
}

impl FromStr for MultiPoly {
    type Err = Error;

    /// Parses the canonical text form (and any reordering of it), e.g.
    /// `x2*y1^2 + x1^2*y2 - x1^2*y1^2` or `3*x1*x2*y1*y2 - 1/2*x1`.
    fn from_str(s: &str) -> Result<Self> {
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(Error::Parse("empty polynomial".into()));
        }
        let mut out = MultiPoly::zero();
        let mut sign = 1i64;
        let mut current = String::new();
        let flush = |term: &str, sign: i64, out: &mut MultiPoly| -> Result<()> {
            if term.is_empty() {
                return Err(Error::Parse(format!("dangling operator in {s:?}")));
            }
            let mut t = MultiPoly::constant(Rational::from_i64(sign));
            for factor in term.split('*') {
                t = t.mul_ref(&parse_factor(factor)?);
            }
            *out = out.add_ref(&t);
            Ok(())
        };
        for (i, ch) in compact.char_indices() {
            if (ch == '+' || ch == '-') && !current.ends_with('^') {
                if i == 0 && current.is_empty() {
                    sign = if ch == '-' { -1 } else { 1 };
                    continue;
                }
                flush(&current, sign, &mut out)?;
                current.clear();
                sign = if ch == '-' { -1 } else { 1 };
            } else {
                current.push(ch);
            }
        }
        flush(&current, sign, &mut out)?;
        Ok(out)
    }
}

impl Zero for MultiPoly {
    fn zero() -> Self {
        MultiPoly { terms: BTreeMap::new() }
    }

    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

impl One for MultiPoly {
    fn one() -> Self {
        MultiPoly::constant(Rational::one())
    }
}

impl Add for MultiPoly {
    type Output = MultiPoly;
    fn add(mut self, rhs: MultiPoly) -> MultiPoly {
        for (m, c) in rhs.terms {
            self.add_term(m, c);
        }
        self
    }
}

impl Sub for MultiPoly {
    type Output = MultiPoly;
    fn sub(self, rhs: MultiPoly) -> MultiPoly {
        self + (-rhs)
    }
}

impl Neg for MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        MultiPoly { terms: self.terms.into_iter().map(|(m, c)| (m, -c)).collect() }
    }
}

impl Mul for MultiPoly {
    type Output = MultiPoly;
    fn mul(self, rhs: MultiPoly) -> MultiPoly {
        self.mul_ref(&rhs)
    }
}

impl Ring for MultiPoly {
    fn from_i64(n: i64) -> Self {
        MultiPoly::constant(Rational::from_integer(BigInt::from(n)))
    }

    fn try_inverse(&self) -> Option<Self> {
        if self.terms.len() == 1 {
            let (m, c) = self.terms.iter().next().unwrap();
            if m.is_one() {
                return Some(MultiPoly::constant(c.recip()));
            }
        }
        None
    }
}

impl QAlgebra for MultiPoly {
    fn from_rational(q: &Rational) -> Self {
        MultiPoly::constant(q.clone())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::ring::{int, ratio};
    use proptest::prelude::*;

    fn p(s: &str) -> MultiPoly {
        s.parse().unwrap()
    }

    #[test]
    fn difference_of_squares() {
        let a = p("x1 + y1");
        let b = p("x1 - y1");
        assert_eq!(a * b, p("x1^2 - y1^2"));
    }

    #[test]
    fn unit_law() {
        let q = p("x2*y1^2 + x1^2*y2 - x1^2*y1^2");
        assert_eq!(MultiPoly::one() * q.clone(), q);
    }

    #[test]
    fn canonical_print_order() {
        let q = p("x1^2*y2 - x1^2*y1^2 + x2*y1^2");
        assert_eq!(q.to_string(), "x2*y1^2 + x1^2*y2 - x1^2*y1^2");
        assert_eq!(p("-x1 + 1/2").to_string(), "-x1 + 1/2");
        assert_eq!(MultiPoly::zero().to_string(), "0");
        assert_eq!(p("2*x1*3*x1").to_string(), "6*x1^2");
        assert_eq!(p("x_2 - x_2").to_string(), "0");
    }

    #[test]
    fn eval_printed_q2() {
        let q = p("x2*y1^2 + x1^2*y2 - x1^2*y1^2");
        let assign: BTreeMap<Var, Rational> = [(x(1), int(1)), (x(2), int(2)), (y(1), int(1)), (y(2), int(3))].into();
        assert_eq!(q.eval(&assign).unwrap(), int(4));
    }

    #[test]
    fn eval_unit_sequence_into_q2() {
        // x = (1, 0), y = (b1, b2) symbolic: Q_2 = 0*b1^2 + b2 - b1^2
        let q = p("x2*y1^2 + x1^2*y2 - x1^2*y1^2");
        let assign: BTreeMap<Var, MultiPoly> =
            [(x(1), MultiPoly::one()), (x(2), MultiPoly::zero()), (y(1), p("y1")), (y(2), p("y2"))].into();
        assert_eq!(q.eval(&assign).unwrap(), p("y2 - y1^2"));
    }

    #[test]
    fn eval_witt_polynomial_and_constant() {
        let w2 = p("x1^2 + 2*x2");
        let assign: BTreeMap<Var, Rational> = [(x(1), int(3)), (x(2), int(1))].into();
        assert_eq!(w2.eval(&assign).unwrap(), int(11));
        let c = p("x1*y1 + 7/3");
        let zero: BTreeMap<Var, Rational> = [(x(1), int(0)), (y(1), int(0))].into();
        assert_eq!(c.eval(&zero).unwrap(), ratio(7, 3));
    }

    #[test]
    fn eval_missing_variable_names_it() {
        let e = p("x1 + y3").eval::<Rational>(&[(x(1), int(1))].into()).unwrap_err();
        assert_eq!(e, Error::MissingVariable("y3".into()));
    }

    #[test]
    fn homogeneity() {
        let k2 = p("x2*y1^2 + x1^2*y2");
        assert!(k2.is_bihomogeneous(2, 2, Grading::Index));
        let k3 = p("x3*y1^3 + x1^3*y3 + 3*x1*x2*y1*y2");
        assert!(k3.is_bihomogeneous(3, 3, Grading::Index));
        let p1 = p("x1 + y1");
        assert!(!p1.is_bihomogeneous(1, 1, Grading::Index));
        assert!(p1.is_homogeneous(1, Grading::Index));
        let fplus3 = p("x3 + y3 + 3*x2*y2");
        assert!(fplus3.is_homogeneous(2, Grading::IndexMinusOne));
    }

    fn small_poly() -> impl Strategy<Value = MultiPoly> {
        let term = (-4i64..=4, 0u32..3, 0u32..3, 0u32..2)
            .prop_map(|(c, a, b, d)| MultiPoly::term(int(c), Monomial::from_powers([(x(1), a), (y(1), b), (x(2), d)])));
        prop::collection::vec(term, 0..4).prop_map(|ts| ts.into_iter().fold(MultiPoly::zero(), |acc, t| acc + t))
    }

    proptest! {
        #[test]
        fn ring_axioms_and_eval_homomorphism(a in small_poly(), b in small_poly(), c in small_poly(),
                                             vx1 in -5i64..5, vy1 in -5i64..5, vx2 in -5i64..5) {
            prop_assert_eq!((a.clone() * b.clone()) * c.clone(), a.clone() * (b.clone() * c.clone()));
            prop_assert_eq!(a.clone() * (b.clone() + c.clone()), a.clone() * b.clone() + a.clone() * c.clone());
            prop_assert_eq!(a.clone() * b.clone(), b.clone() * a.clone());
            let assign: BTreeMap<Var, Rational> = [(x(1), int(vx1)), (y(1), int(vy1)), (x(2), int(vx2))].into();
            let ea = a.eval(&assign).unwrap();
            let eb = b.eval(&assign).unwrap();
            prop_assert_eq!((a.clone() * b.clone()).eval(&assign).unwrap(), &ea * &eb);
            prop_assert_eq!((a.clone() + b.clone()).eval(&assign).unwrap(), ea + eb);
        }

        #[test]
        fn print_parse_roundtrip(a in small_poly()) {
            prop_assert_eq!(a.to_string().parse::<MultiPoly>().unwrap(), a);
        }
    }
}
