//! The shift comonad on one-indexed sequences, its transport to moment
//! sequences along `R`, and the Adams operations.

use crate::algebra::Ring;
use crate::error::{Error, Result};
use crate::noncrossing::{cumulants_from_moments, moments_from_cumulants};
use crate::series::Seq;

/// Drops `a_1`.
pub fn decalage<R: Ring>(a: &Seq<R>) -> Result<Seq<R>> {
    if a.order() < 2 {
        return Err(Error::InsufficientOrder { needed: 2, got: a.order() });
    }
    Ok(Seq::new(a.entries()[1..].to_vec()))
}

/// Row-truncated `(m, n) ↦ s_{m+n-1}` over any list.
pub fn delta_seq<T: Clone>(s: &[T]) -> Vec<Vec<T>> {
    (0..s.len()).map(|m| s[m..].to_vec()).collect()
}

/// Row `m` holds `a_m, a_{m+1}, …, a_N`.
pub fn comonad_delta<R: Ring>(a: &Seq<R>) -> Vec<Seq<R>> {
    delta_seq(a.entries()).into_iter().map(Seq::new).collect()
}

pub fn comonad_counit<R: Ring>(a: &Seq<R>) -> R {
    a.first().clone()
}

type Triple<T> = Vec<Vec<Vec<T>>>;

/// `(δ ⊗ id) δ` and `(id ⊗ δ) δ` as triple arrays.
pub fn coassociativity_sides<T: Clone>(s: &[T]) -> (Triple<T>, Triple<T>) {
    let d = delta_seq(s);
    let outer = delta_seq(&d);
    let inner = d.iter().map(|row| delta_seq(row)).collect();
    (outer, inner)
}

/// `R⁻¹ ∘ δ ∘ R` applied rowwise: row `m` is the moment sequence with
/// cumulants `κ_m, …, κ_N`.
pub fn vplus_delta<R: Ring>(m: &Seq<R>) -> Result<Vec<Seq<R>>> {
    comonad_delta(&cumulants_from_moments(m)?).iter().map(moments_from_cumulants).collect()
}

pub fn vplus_counit<R: Ring>(m: &Seq<R>) -> Result<R> {
    Ok(comonad_counit(&cumulants_from_moments(m)?))
}

/// `ε(∂^{n-1} κ(m))`, i.e. the `n`-th free cumulant.
pub fn adams<R: Ring>(n: usize, m: &Seq<R>) -> Result<R> {
    if n == 0 || n > m.order() {
        return Err(Error::IndexOutOfRange { index: n, order: m.order() });
    }
    let mut k = cumulants_from_moments(&m.truncate(n))?;
    for _ in 1..n {
        k = decalage(&k)?;
    }
    Ok(comonad_counit(&k))
}
