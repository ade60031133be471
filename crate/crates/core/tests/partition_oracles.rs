//! Brute-force oracles over all set partitions, compared against the
//! non-crossing machinery.

use fpk::algebra::{ratio, Rational};
use fpk::freeconv::{convolve, ConvKind};
use fpk::noncrossing::{cumulants_from_moments, enumerate_nc, moments_from_cumulants};
use fpk::transforms::{inverse_transform, transform, TransformKind};
use fpk::QSeq;
use num_traits::{One, Zero};
use proptest::prelude::*;

/// All set partitions of `{0..n}` as restricted growth strings.
fn set_partitions(n: usize) -> Vec<Vec<usize>> {
    fn go(prefix: &mut Vec<usize>, n: usize, max: usize, out: &mut Vec<Vec<usize>>) {
        if prefix.len() == n {
            out.push(prefix.clone());
            return;
        }
        for label in 0..=max + 1 {
            prefix.push(label);
            go(prefix, n, max.max(label), out);
            prefix.pop();
        }
    }
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    let mut prefix = vec![0];
    go(&mut prefix, n, 0, &mut out);
    out
}

fn is_noncrossing(labels: &[usize]) -> bool {
    let n = labels.len();
    for a in 0..n {
        for b in a + 1..n {
            for c in b + 1..n {
                for d in c + 1..n {
                    if labels[a] == labels[c] && labels[b] == labels[d] && labels[a] != labels[b] {
                        return false;
                    }
                }
            }
        }
    }
    true
}

fn blocks(labels: &[usize]) -> Vec<usize> {
    let count = labels.iter().max().map_or(0, |m| m + 1);
    let mut sizes = vec![0; count];
    for &l in labels {
        sizes[l] += 1;
    }
    sizes
}

fn brute_nc(n: usize) -> Vec<Vec<usize>> {
    set_partitions(n).into_iter().filter(|p| is_noncrossing(p)).collect()
}

fn catalan(n: u64) -> u64 {
    (0..n).fold(1, |c, k| c * 2 * (2 * k + 1) / (k + 2))
}

fn kappa_product(k: &QSeq, labels: &[usize]) -> Rational {
    blocks(labels).iter().fold(Rational::one(), |acc, &s| acc * &k.entries()[s - 1])
}

fn moments_oracle(k: &QSeq) -> QSeq {
    QSeq::new((1..=k.order()).map(|n| brute_nc(n).iter().map(|p| kappa_product(k, p)).sum()).collect())
}

/// Kreweras complement: the coarsest partition of the primed points whose
/// interleaving with `labels` stays non-crossing.
fn kreweras_oracle(labels: &[usize]) -> Vec<usize> {
    let n = labels.len();
    let k = blocks(labels).len();
    let offset = n;
    set_partitions(n)
        .into_iter()
        .filter(|sigma| blocks(sigma).len() == n + 1 - k)
        .find(|sigma| {
            let mut merged = Vec::with_capacity(2 * n);
            for i in 0..n {
                merged.push(labels[i]);
                merged.push(sigma[i] + offset);
            }
            is_noncrossing(&merged)
        })
        .expect("complement exists")
}

fn small() -> impl Strategy<Value = Rational> {
    (-6i64..=6, 1i64..=4).prop_map(|(p, q)| ratio(p, q))
}

fn seq(order: usize) -> impl Strategy<Value = QSeq> {
    prop::collection::vec(small(), order).prop_map(QSeq::new)
}

fn gplus(order: usize) -> impl Strategy<Value = QSeq> {
    prop::collection::vec(small(), order - 1).prop_map(|mut v| {
        v.insert(0, Rational::one());
        QSeq::new(v)
    })
}

#[test]
fn nc_count_is_catalan() {
    for n in 1..=8 {
        let brute = brute_nc(n);
        assert_eq!(brute.len() as u64, catalan(n as u64), "n = {n}");
        let mut ours: Vec<Vec<usize>> = enumerate_nc(n).unwrap().iter().map(|p| p.labels()).collect();
        let mut theirs = brute.clone();
        ours.sort();
        theirs.sort();
        assert_eq!(ours, theirs, "n = {n}");
    }
}

#[test]
fn kreweras_matches_interleaving_oracle() {
    for n in 1..=6 {
        for p in enumerate_nc(n).unwrap() {
            let mut want = kreweras_oracle(&p.labels());
            let got = p.kreweras().labels();
            // Canonical relabelling by first appearance.
            let mut seen = Vec::new();
            for l in want.iter_mut() {
                let pos = seen.iter().position(|s| s == l).unwrap_or_else(|| {
                    seen.push(*l);
                    seen.len() - 1
                });
                *l = pos;
            }
            assert_eq!(got, want, "{:?}", p.labels());
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn moment_cumulant_matches_brute_force(k in seq(7)) {
        let m = moments_oracle(&k);
        prop_assert_eq!(moments_from_cumulants(&k).unwrap(), m.clone());
        prop_assert_eq!(cumulants_from_moments(&m).unwrap(), k);
    }

    #[test]
    fn boxplus_adds_brute_force_cumulants(a in seq(6), b in seq(6)) {
        let (ma, mb) = (moments_oracle(&a), moments_oracle(&b));
        prop_assert_eq!(convolve(ConvKind::BoxPlus, &ma, &mb).unwrap(), moments_oracle(&a.add(&b)));
    }

    #[test]
    fn boxtimes_cumulants_follow_kreweras_formula(a in seq(6), b in seq(6)) {
        let (ma, mb) = (moments_oracle(&a), moments_oracle(&b));
        let want = QSeq::new((1..=6).map(|n| {
            brute_nc(n).iter().map(|p| kappa_product(&a, p) * kappa_product(&b, &kreweras_oracle(p))).sum()
        }).collect());
        let got = cumulants_from_moments(&convolve(ConvKind::BoxTimes, &ma, &mb).unwrap()).unwrap();
        prop_assert_eq!(got, want);
    }

    #[test]
    fn convolution_matches_transform_routes(a in gplus(8), b in gplus(8)) {
        let r = |m: &QSeq| transform(TransformKind::R, m).unwrap();
        let s = |m: &QSeq| transform(TransformKind::S, m).unwrap();
        let plus = inverse_transform(TransformKind::R, &r(&a).add(&r(&b))).unwrap();
        let times = inverse_transform(TransformKind::S, &s(&a).mul(&s(&b))).unwrap();
        prop_assert_eq!(convolve(ConvKind::BoxPlus, &a, &b).unwrap(), plus);
        prop_assert_eq!(convolve(ConvKind::BoxTimes, &a, &b).unwrap(), times);
    }
}

#[test]
fn semicircle_even_moments_are_catalan() {
    let mut k = vec![Rational::zero(); 10];
    k[1] = Rational::one();
    let m = moments_from_cumulants(&QSeq::new(k)).unwrap();
    for n in 1..=5u64 {
        assert_eq!(m.entries()[2 * n as usize - 1], Rational::from_integer(catalan(n).into()));
        assert!(m.entries()[2 * n as usize - 2].is_zero());
    }
}
