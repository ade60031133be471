//! Non-crossing partitions, the Kreweras complement, and the boxed
//! convolution kernel `Σ_{π ∈ NC(n)} Π_{V∈π} f_{|V|} Π_{W∈K(π)} g_{|W|}`.
//!
//! Kernel evaluations go through per-`n` tables that count partitions by
//! (block-size type of π, block-size type of K(π)). Tables are built once by
//! enumeration and shared process-wide.

use std::collections::BTreeMap;
use std::sync::{Arc, Mutex, OnceLock};

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::algebra::Ring;
use crate::error::{Error, Result};
use crate::series::Seq;

pub const DEFAULT_NC_CAP: usize = 14;

/// Enumeration cap; `FPK_NC_CAP` overrides the default, read once.
pub fn nc_cap() -> usize {
    static CAP: OnceLock<usize> = OnceLock::new();
    *CAP.get_or_init(|| std::env::var("FPK_NC_CAP").ok().and_then(|v| v.trim().parse().ok()).unwrap_or(DEFAULT_NC_CAP))
}

fn check_cap(n: usize) -> Result<()> {
    let cap = nc_cap();
    if n > cap {
        return Err(Error::CapExceeded { n, cap });
    }
    Ok(())
}

/// A non-crossing partition of `{1..n}`; blocks sorted and ordered by minimum.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct NCPartition {
    n: usize,
    blocks: Vec<Vec<usize>>,
}

impl NCPartition {
    /// Validates coverage, disjointness and the non-crossing condition, then
    /// normalises block order.
    pub fn new(n: usize, blocks: Vec<Vec<usize>>) -> Result<Self> {
        let mut labels = vec![usize::MAX; n];
        for (b, block) in blocks.iter().enumerate() {
            if block.is_empty() {
                return Err(Error::Parse("empty block".into()));
            }
            for &e in block {
                if e == 0 || e > n || labels[e - 1] != usize::MAX {
                    return Err(Error::Parse(format!("element {e} is out of range or repeated")));
                }
                labels[e - 1] = b;
            }
        }
        if labels.contains(&usize::MAX) {
            return Err(Error::Parse(format!("blocks do not cover 1..{n}")));
        }
        let p = Self::from_labels(&labels);
        if !p.is_noncrossing() {
            return Err(Error::Parse("blocks cross".into()));
        }
        Ok(p)
    }

    /// Builds from a block label per element (element `i+1` has `labels[i]`).
    pub fn from_labels(labels: &[usize]) -> Self {
        let mut index: BTreeMap<usize, usize> = BTreeMap::new();
        let mut blocks: Vec<Vec<usize>> = Vec::new();
        for (i, &l) in labels.iter().enumerate() {
            let b = *index.entry(l).or_insert_with(|| {
                blocks.push(Vec::new());
                blocks.len() - 1
            });
            blocks[b].push(i + 1);
        }
        NCPartition { n: labels.len(), blocks }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    /// All singletons.
    pub fn finest(n: usize) -> Self {
        NCPartition { n, blocks: (1..=n).map(|i| vec![i]).collect() }
    }

    /// One block.
    pub fn coarsest(n: usize) -> Self {
        NCPartition { n, blocks: vec![(1..=n).collect()] }
    }

    pub fn labels(&self) -> Vec<usize> {
        let mut labels = vec![0; self.n];
        for (b, block) in self.blocks.iter().enumerate() {
            for &e in block {
                labels[e - 1] = b;
            }
        }
        labels
    }

    pub fn is_noncrossing(&self) -> bool {
        crosses_none(&self.labels())
    }

    /// Block sizes, descending.
    pub fn block_type(&self) -> Vec<u8> {
        let mut t: Vec<u8> = self.blocks.iter().map(|b| b.len() as u8).collect();
        t.sort_unstable_by(|a, b| b.cmp(a));
        t
    }

    pub fn kreweras(&self) -> NCPartition {
        NCPartition::from_labels(&kreweras_labels(&self.labels(), self.len()))
    }

    pub fn to_json(&self) -> Value {
        serde_json::to_value(self).expect("partition serialises")
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let raw: NCPartition = serde_json::from_value(v.clone()).map_err(|e| Error::Parse(e.to_string()))?;
        NCPartition::new(raw.n, raw.blocks)
    }
}

fn crosses_none(labels: &[usize]) -> bool {
    let n = labels.len();
    for a in 0..n {
        for b in a + 1..n {
            if labels[b] == labels[a] {
                continue;
            }
            for c in b + 1..n {
                if labels[c] != labels[a] {
                    continue;
                }
                if labels[c + 1..].iter().any(|&l| l == labels[b]) {
                    return false;
                }
            }
        }
    }
    true
}

/// Visits every non-crossing partition of `{1..n}` as a label vector and its
/// block count. Block labels follow order of first appearance.
pub fn for_each_nc(n: usize, mut visit: impl FnMut(&[usize], usize)) -> Result<()> {
    check_cap(n)?;
    if n == 0 {
        return Ok(());
    }
    let mut labels = Vec::with_capacity(n);
    let mut stack = Vec::with_capacity(n);
    walk(n, &mut labels, &mut stack, 0, &mut visit);
    Ok(())
}

// Each element opens a new block or joins an open one; joining block `j`
// closes every block opened after it.
fn walk(
    n: usize,
    labels: &mut Vec<usize>,
    stack: &mut Vec<usize>,
    blocks: usize,
    visit: &mut impl FnMut(&[usize], usize),
) {
    if labels.len() == n {
        visit(labels, blocks);
        return;
    }
    for j in (0..stack.len()).rev() {
        let closed: Vec<usize> = stack.drain(j + 1..).collect();
        labels.push(stack[j]);
        walk(n, labels, stack, blocks, visit);
        labels.pop();
        stack.extend(closed);
    }
    stack.push(blocks);
    labels.push(blocks);
    walk(n, labels, stack, blocks + 1, visit);
    labels.pop();
    stack.pop();
}

pub fn enumerate_nc(n: usize) -> Result<Vec<NCPartition>> {
    let mut out = Vec::new();
    for_each_nc(n, |labels, _| out.push(NCPartition::from_labels(labels)))?;
    Ok(out)
}

pub fn kreweras(p: &NCPartition) -> NCPartition {
    p.kreweras()
}

/// Labels of `K(π) = π⁻¹γ`, where π cycles each block upward and
/// `γ = (1 2 … n)`.
fn kreweras_labels(labels: &[usize], blocks: usize) -> Vec<usize> {
    let n = labels.len();
    let mut prev = vec![0usize; n];
    let mut last: Vec<Option<usize>> = vec![None; blocks];
    let mut first: Vec<usize> = vec![0; blocks];
    for (i, &l) in labels.iter().enumerate() {
        match last[l] {
            Some(p) => prev[i] = p,
            None => first[l] = i,
        }
        last[l] = Some(i);
    }
    for l in 0..blocks {
        if let Some(end) = last[l] {
            prev[first[l]] = end;
        }
    }
    let mut out = vec![usize::MAX; n];
    let mut next_label = 0;
    for start in 0..n {
        if out[start] != usize::MAX {
            continue;
        }
        let mut i = start;
        while out[i] == usize::MAX {
            out[i] = next_label;
            i = prev[(i + 1) % n];
        }
        next_label += 1;
    }
    out
}

fn label_type(labels: &[usize], blocks: usize) -> Vec<u8> {
    let mut sizes = vec![0u8; blocks];
    for &l in labels {
        sizes[l] += 1;
    }
    sizes.sort_unstable_by(|a, b| b.cmp(a));
    sizes
}

/// `(type of π, number of π, [(type of K(π), count)])`
pub type KernelRow = (Vec<u8>, u64, Vec<(Vec<u8>, u64)>);

/// Partition counts of `NC(n)` grouped by the type of π and of `K(π)`.
#[derive(Debug)]
pub struct KernelTable {
    pub n: usize,
    pub rows: Vec<KernelRow>,
}

fn build_table(n: usize) -> Result<KernelTable> {
    let mut acc: BTreeMap<Vec<u8>, BTreeMap<Vec<u8>, u64>> = BTreeMap::new();
    for_each_nc(n, |labels, blocks| {
        let k = kreweras_labels(labels, blocks);
        let kb = n + 1 - blocks;
        *acc.entry(label_type(labels, blocks)).or_default().entry(label_type(&k, kb)).or_insert(0) += 1;
    })?;
    let rows = acc
        .into_iter()
        .map(|(p, ks)| {
            let total = ks.values().sum();
            (p, total, ks.into_iter().collect())
        })
        .collect();
    Ok(KernelTable { n, rows })
}

pub fn kernel_table(n: usize) -> Result<Arc<KernelTable>> {
    check_cap(n)?;
    static TABLES: OnceLock<Mutex<BTreeMap<usize, Arc<KernelTable>>>> = OnceLock::new();
    let tables = TABLES.get_or_init(|| Mutex::new(BTreeMap::new()));
    if let Some(t) = tables.lock().unwrap().get(&n) {
        return Ok(t.clone());
    }
    let t = Arc::new(build_table(n)?);
    Ok(tables.lock().unwrap().entry(n).or_insert(t).clone())
}

fn type_product<R: Ring>(a: &Seq<R>, ty: &[u8]) -> R {
    let mut acc = R::one();
    for &s in ty {
        let v = &a.entries()[s as usize - 1];
        if v.is_zero() {
            return R::zero();
        }
        acc = acc * v.clone();
    }
    acc
}

fn require_order<R>(a: &Seq<R>, n: usize) -> Result<()>
where
    R: Ring,
{
    if a.order() < n {
        return Err(Error::InsufficientOrder { needed: n, got: a.order() });
    }
    Ok(())
}

/// The `n`-th component of `f ⊠_NS g`.
pub fn boxtimes_ns_kernel<R: Ring>(f: &Seq<R>, g: &Seq<R>, n: usize) -> Result<R> {
    require_order(f, n)?;
    require_order(g, n)?;
    let table = kernel_table(n)?;
    let mut g_products: BTreeMap<&[u8], R> = BTreeMap::new();
    let mut acc = R::zero();
    for (pi, _, ks) in &table.rows {
        let fp = type_product(f, pi);
        if fp.is_zero() {
            continue;
        }
        let mut inner = R::zero();
        for (k, count) in ks {
            let gp = g_products.entry(k).or_insert_with(|| type_product(g, k));
            if !gp.is_zero() {
                inner = inner + gp.scale_int(*count as i64);
            }
        }
        acc = acc + fp * inner;
    }
    Ok(acc)
}

/// `f ⊠_NS g` in all components `1..N`.
pub fn boxtimes_ns<R: Ring>(f: &Seq<R>, g: &Seq<R>) -> Result<Seq<R>> {
    let n = f.order().min(g.order());
    (1..=n).map(|k| boxtimes_ns_kernel(f, g, k)).collect::<Result<Vec<_>>>().map(Seq::new)
}

/// The `⊠_NS`-inverse: `y_1 = 1/x_1`, and for `n ≥ 2`
/// `y_n = -(K_n(x, y) with y_n = 0) / x_1^n`.
pub fn boxtimes_ns_inverse<R: Ring>(x: &Seq<R>) -> Result<Seq<R>> {
    let n = x.order();
    if n == 0 {
        return Ok(Seq::new(Vec::new()));
    }
    let inv1 = x.first().try_inverse().ok_or(Error::NonInvertibleFirstEntry)?;
    let mut y = Seq::zeros(n);
    let mut entries = y.clone().into_entries();
    entries[0] = inv1.clone();
    let mut inv_pow = inv1.clone();
    for k in 2..=n {
        inv_pow = inv_pow * inv1.clone();
        y = Seq::new(entries.clone());
        let partial = boxtimes_ns_kernel(&x.truncate(k), &y.truncate(k), k)?;
        entries[k - 1] = -(partial * inv_pow.clone());
    }
    Ok(Seq::new(entries))
}

/// `m_n = Σ_{π ∈ NC(n)} Π_{V∈π} κ_{|V|}`.
pub fn moments_from_cumulants<R: Ring>(k: &Seq<R>) -> Result<Seq<R>> {
    let mut out = Vec::with_capacity(k.order());
    for n in 1..=k.order() {
        let table = kernel_table(n)?;
        let mut acc = R::zero();
        for (pi, count, _) in &table.rows {
            let p = type_product(k, pi);
            if !p.is_zero() {
                acc = acc + p.scale_int(*count as i64);
            }
        }
        out.push(acc);
    }
    Ok(Seq::new(out))
}

/// Inverts [`moments_from_cumulants`] by `κ_n = m_n - Σ_{π ≠ 1̂} Π κ_{|V|}`.
pub fn cumulants_from_moments<R: Ring>(m: &Seq<R>) -> Result<Seq<R>> {
    let mut kappa: Vec<R> = Vec::with_capacity(m.order());
    for n in 1..=m.order() {
        let table = kernel_table(n)?;
        kappa.push(R::zero());
        let partial = Seq::new(kappa.clone());
        let mut acc = m.entries()[n - 1].clone();
        for (pi, count, _) in &table.rows {
            if pi.len() == 1 {
                continue;
            }
            let p = type_product(&partial, pi);
            if !p.is_zero() {
                acc = acc - p.scale_int(*count as i64);
            }
        }
        kappa[n - 1] = acc;
    }
    Ok(Seq::new(kappa))
}

/// `(1, 1, …, 1)`.
pub fn zeta_vector<R: Ring>(order: usize) -> Seq<R> {
    Seq::ones(order)
}

/// The `⊠_NS`-inverse of the zeta vector: signed Catalan numbers
/// `(-1)^{n-1} C_{n-1}`.
pub fn moeb_vector<R: Ring>(order: usize) -> Result<Seq<R>> {
    check_cap(order)?;
    boxtimes_ns_inverse(&zeta_vector(order))
}
