//! Exact positive-semidefiniteness of the shifted Hankel matrix.

use num_traits::{Signed, Zero};
use serde_json::{json, Value};

use crate::algebra::{JsonScalar, Rational};
use crate::error::{Error, Result};
use crate::series::Seq;

#[derive(Clone, Debug, PartialEq)]
pub struct CpdDecision {
    pub accepted: bool,
    /// On rejection, `v` with `vᵀ H v < 0`.
    pub witness: Option<Vec<Rational>>,
}

impl CpdDecision {
    pub fn to_json(&self) -> Value {
        match &self.witness {
            Some(w) => json!({
                "accepted": self.accepted,
                "witness": w.iter().map(JsonScalar::to_json).collect::<Vec<_>>(),
            }),
            None => json!({"accepted": self.accepted}),
        }
    }
}

/// `H_{ij} = s_{i+j}` for `1 ≤ i, j ≤ ⌊N/2⌋`.
pub fn hankel(s: &Seq<Rational>) -> Vec<Vec<Rational>> {
    let k = s.order() / 2;
    (1..=k).map(|i| (1..=k).map(|j| s.entries()[i + j - 1].clone()).collect()).collect()
}

pub fn quadratic_form(h: &[Vec<Rational>], v: &[Rational]) -> Rational {
    let mut acc = Rational::zero();
    for (i, row) in h.iter().enumerate() {
        for (j, hij) in row.iter().enumerate() {
            acc += hij * &v[i] * &v[j];
        }
    }
    acc
}

fn unit(k: usize, i: usize) -> Vec<Rational> {
    let mut v = vec![Rational::zero(); k];
    v[i] = Rational::from_integer(1.into());
    v
}

/// `None` when `m` is positive semidefinite, otherwise a witness.
fn negative_direction(m: &[Vec<Rational>]) -> Option<Vec<Rational>> {
    let k = m.len();
    if k == 0 {
        return None;
    }
    if let Some(i) = (0..k).find(|&i| m[i][i].is_negative()) {
        return Some(unit(k, i));
    }
    for i in (0..k).filter(|&i| m[i][i].is_zero()) {
        if let Some(j) = (0..k).find(|&j| j != i && !m[i][j].is_zero()) {
            // (t e_i + e_j)ᵀ M (t e_i + e_j) = 2t M_ij + M_jj = -1
            let t = -(&m[j][j] + Rational::from_integer(1.into())) / (&m[i][j] * Rational::from_integer(2.into()));
            let mut v = unit(k, j);
            v[i] = t;
            return Some(v);
        }
    }
    let keep: Vec<usize> = (0..k).filter(|&i| !m[i][i].is_zero()).collect();
    if keep.is_empty() {
        return None;
    }
    let p = keep[0];
    let rest = &keep[1..];
    let pivot = &m[p][p];
    let schur: Vec<Vec<Rational>> =
        rest.iter().map(|&i| rest.iter().map(|&j| &m[i][j] - &m[i][p] * &m[p][j] / pivot).collect()).collect();
    let w = negative_direction(&schur)?;
    let mut v = vec![Rational::zero(); k];
    let mut bw = Rational::zero();
    for (slot, &i) in rest.iter().enumerate() {
        v[i] = w[slot].clone();
        bw += &m[p][i] * &w[slot];
    }
    v[p] = -bw / pivot;
    Some(v)
}

/// Decides positive semidefiniteness of [`hankel`]`(s)`.
pub fn is_cond_pos_def(s: &Seq<Rational>) -> Result<CpdDecision> {
    if s.order() < 3 {
        return Err(Error::InsufficientOrder { needed: 3, got: s.order() });
    }
    let witness = negative_direction(&hankel(s));
    Ok(CpdDecision { accepted: witness.is_none(), witness })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{int, ratio};
    use crate::measures::rho_to_r;
    use crate::testutil::*;
    use proptest::prelude::*;

    fn q(v: &[i64]) -> Seq<Rational> {
        Seq::new(v.iter().map(|&c| int(c)).collect())
    }

    fn rejects_with_witness(s: &Seq<Rational>) {
        let d = is_cond_pos_def(s).unwrap();
        assert!(!d.accepted, "{s:?} accepted");
        assert!(quadratic_form(&hankel(s), d.witness.as_ref().unwrap()).is_negative());
    }

    /// Brute-force oracle on tiny grids: any integer vector in [-3,3]^k with
    /// a negative value refutes positivity.
    fn grid_refutes(h: &[Vec<Rational>]) -> bool {
        let k = h.len();
        let mut v = vec![-3i64; k];
        loop {
            let r: Vec<Rational> = v.iter().map(|&c| int(c)).collect();
            if quadratic_form(h, &r).is_negative() {
                return true;
            }
            let mut i = 0;
            while i < k && v[i] == 3 {
                v[i] = -3;
                i += 1;
            }
            if i == k {
                return false;
            }
            v[i] += 1;
        }
    }

    #[test]
    fn curated_examples() {
        let semi = q(&[0, 1, 0, 0, 0, 0]);
        assert_eq!(hankel(&semi), vec![vec![int(1), int(0), int(0)], vec![int(0); 3], vec![int(0); 3]]);
        assert!(is_cond_pos_def(&semi).unwrap().accepted);
        let d = is_cond_pos_def(&q(&[0, -1, 0, 0, 0, 0])).unwrap();
        assert_eq!(d.witness, Some(vec![int(1), int(0), int(0)]));
        assert!(is_cond_pos_def(&Seq::ones(6)).unwrap().accepted);
        rejects_with_witness(&q(&[0, 1, 2, 1, 0, 0]));
        rejects_with_witness(&q(&[5, 0, 1, 0, 0, 0]));
        rejects_with_witness(&Seq::new(vec![int(0), int(1), int(1), int(1), int(1), ratio(1, 2)]));
        assert_eq!(is_cond_pos_def(&q(&[1, 2])), Err(Error::InsufficientOrder { needed: 3, got: 2 }));
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(128))]

        #[test]
        fn forward_generated_are_accepted(s1 in rational(), atoms in prop::collection::btree_map(rational(), rational(), 0..5)) {
            let rho: Vec<_> = atoms.into_iter().map(|(x, m)| (x, m.abs())).collect();
            let k = rho_to_r(&s1, &rho, 10).unwrap();
            prop_assert!(is_cond_pos_def(&k).unwrap().accepted);
        }

        #[test]
        fn decision_matches_grid_search(s in seq(6)) {
            let d = is_cond_pos_def(&s).unwrap();
            let h = hankel(&s);
            match &d.witness {
                Some(w) => prop_assert!(quadratic_form(&h, w).is_negative()),
                None => prop_assert!(!grid_refutes(&h)),
            }
        }
    }
}
