//! Seeded verification suites.
//!
//! Trial `t` of a run with seed `s` draws from ChaCha8 seeded with `s` on
//! stream `t`, so every trial is reproducible on its own and the report
//! does not depend on how trials are scheduled across threads.
//!
//! | suite | identities |
//! |---|---|
//! | `group_laws` | `⊞`, `⊠`, `⊠_NS` group axioms; universal polynomials `P`, `Q`, `K`; torus split |
//! | `transforms` | `R`, `S`, `F` linearise; `log_⊠`, `log_⊠NS`; `EXP`/`LOG`; `⧆` and `⊡` units |
//! | `ring_diagram` | ghost, `zlogd ∘ AH`, `S`, `F`, `R`, `LOG`, Hurwitz `γ` agree on shared points, for sums and products |
//! | `witt` | ring axioms, ghost isomorphism, `S_W`/`P_W` polynomials, Artin–Hasse, `φ` |
//! | `hurwitz` | Hurwitz ring, `γ`, carré du champ, décalage comonad and its transport, Adams operations |
//! | `measures` | cpd closure and witnesses, family laws, `V`, `f_n`, actions, Teichmüller, pair descriptions |
//! | `convex` | `+_q` axioms, distributivity, Giry fold and monad, moment-mixing counterexample |
//! | `omega_e` | pointwise and measure carriers: semiring, `+_q`, `∂`/`∂̂²` and `f_n` endomorphisms |

mod suites;

use std::time::Instant;

use num_traits::{Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::algebra::{ratio, Rational};
use crate::error::{Error, Result};
use crate::series::Seq;

/// Registered suites in the order `all` runs them.
pub const SUITES: [&str; 8] =
    ["group_laws", "transforms", "ring_diagram", "witt", "hurwitz", "measures", "convex", "omega_e"];

#[derive(Clone, Debug, PartialEq)]
pub struct Failure {
    pub identity: String,
    pub trial: u64,
    pub counterexample: Value,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SuiteReport {
    pub suite: String,
    pub trials: u64,
    pub order: usize,
    pub seed: u64,
    pub checks: u64,
    pub failures: Vec<Failure>,
    pub elapsed_ms: u128,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    /// Everything except the wall-clock time, which would break
    /// byte-identical reruns.
    pub fn to_json(&self) -> Value {
        json!({
            "suite": self.suite,
            "order": self.order,
            "trials": self.trials,
            "seed": self.seed,
            "checks": self.checks,
            "passed": self.passed(),
            "failures": self.failures.iter().map(|f| json!({
                "identity": f.identity,
                "trial": f.trial,
                "counterexample": f.counterexample,
            })).collect::<Vec<_>>(),
        })
    }
}

/// Per-trial random source and check accumulator.
pub struct Trial {
    index: u64,
    order: usize,
    rng: ChaCha8Rng,
    checks: u64,
    failures: Vec<Failure>,
}

impl Trial {
    pub fn new(seed: u64, index: u64, order: usize) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(index);
        Trial { index, order, rng, checks: 0, failures: Vec::new() }
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn index(&self) -> u64 {
        self.index
    }

    /// `p/q` with `p ∈ [-9, 9]`, `q ∈ [1, 9]`.
    pub fn rational(&mut self) -> Rational {
        ratio(self.rng.random_range(-9..=9), self.rng.random_range(1..=9))
    }

    pub fn nonzero(&mut self) -> Rational {
        loop {
            let r = self.rational();
            if !r.is_zero() {
                return r;
            }
        }
    }

    pub fn nonnegative(&mut self) -> Rational {
        self.rational().abs()
    }

    /// A weight in `[0, 1]`.
    pub fn unit_interval(&mut self) -> Rational {
        let q = self.rng.random_range(1..=9);
        ratio(self.rng.random_range(0..=q), q)
    }

    pub fn index_in(&mut self, lo: usize, hi: usize) -> usize {
        self.rng.random_range(lo..=hi)
    }

    pub fn seq(&mut self, order: usize) -> Seq<Rational> {
        Seq::new((0..order).map(|_| self.rational()).collect())
    }

    pub fn invertible_seq(&mut self, order: usize) -> Seq<Rational> {
        let mut s = self.seq(order);
        if order > 0 {
            s = Seq::new(std::iter::once(self.nonzero()).chain(s.entries()[1..].iter().cloned()).collect());
        }
        s
    }

    /// First entry 1.
    pub fn gplus_seq(&mut self, order: usize) -> Seq<Rational> {
        let rest = self.seq(order.saturating_sub(1));
        Seq::new(std::iter::once(Rational::from_integer(1.into())).chain(rest.into_entries()).take(order).collect())
    }

    /// Up to four distinct atoms with nonnegative masses.
    pub fn atoms(&mut self) -> Vec<(Rational, Rational)> {
        let count = self.index_in(0, 4);
        let mut out: Vec<(Rational, Rational)> = Vec::with_capacity(count);
        while out.len() < count {
            let x = self.rational();
            let m = self.nonnegative();
            if !out.iter().any(|(y, _)| *y == x) {
                out.push((x, m));
            }
        }
        out
    }

    /// Records one identity check. `inputs` is evaluated only on failure;
    /// an error from `test` counts as a failure and is recorded with it.
    pub fn check(&mut self, identity: &str, inputs: impl FnOnce() -> Value, test: impl FnOnce() -> Result<bool>) {
        self.checks += 1;
        let outcome = test();
        if matches!(outcome, Ok(true)) {
            return;
        }
        let mut counterexample = inputs();
        if let Err(e) = outcome {
            counterexample = json!({"inputs": counterexample, "error": e.kind(), "message": e.to_string()});
        }
        self.failures.push(Failure { identity: identity.to_string(), trial: self.index, counterexample });
    }
}

type SuiteFn = fn(&mut Trial, &suites::Shared);

fn suite_fn(name: &str) -> Result<SuiteFn> {
    Ok(match name {
        "group_laws" => suites::group_laws,
        "transforms" => suites::transforms,
        "ring_diagram" => suites::ring_diagram,
        "witt" => suites::witt,
        "hurwitz" => suites::hurwitz,
        "measures" => suites::measures,
        "convex" => suites::convex,
        "omega_e" => suites::omega_e,
        other => return Err(Error::UnknownSuite(other.to_string())),
    })
}

/// Runs one registered suite; `all` is handled by [`run_suites`].
pub fn run_suite(name: &str, order: usize, trials: u64, seed: u64) -> Result<SuiteReport> {
    let f = suite_fn(name)?;
    if order < 4 {
        return Err(Error::InsufficientOrder { needed: 4, got: order });
    }
    let start = Instant::now();
    let shared = suites::Shared::new(name, order)?;
    let results: Vec<(u64, Vec<Failure>)> = (0..trials)
        .into_par_iter()
        .map(|t| {
            let mut trial = Trial::new(seed, t, order);
            f(&mut trial, &shared);
            (trial.checks, trial.failures)
        })
        .collect();
    let mut checks = 0;
    let mut failures = Vec::new();
    for (c, f) in results {
        checks += c;
        failures.extend(f);
    }
    Ok(SuiteReport {
        suite: name.to_string(),
        trials,
        order,
        seed,
        checks,
        failures,
        elapsed_ms: start.elapsed().as_millis(),
    })
}

/// Expands `all` to every registered suite.
pub fn run_suites(name: &str, order: usize, trials: u64, seed: u64) -> Result<Vec<SuiteReport>> {
    if name == "all" {
        SUITES.iter().map(|s| run_suite(s, order, trials, seed)).collect()
    } else {
        Ok(vec![run_suite(name, order, trials, seed)?])
    }
}
