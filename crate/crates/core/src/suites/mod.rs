//! Seeded invariant suites.
//!
//! Each suite draws its instances from independent ChaCha streams keyed by
//! `(seed, suite, index)`, so results do not depend on the execution order.
//! With the `parallel` feature the instances of a suite run on the rayon
//! pool; otherwise, or with [`Execution::Sequential`], they run in order.

mod algebroids;
mod calculus;
pub mod examples;
mod fixed;
pub mod random;

use std::fmt;

pub use algebroids::{im_verdicts, ImVerdicts};
pub use fixed::{clean_tables, group_law, wide_examples};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Execution {
    Sequential,
    Parallel,
}

impl Default for Execution {
    fn default() -> Self {
        if cfg!(feature = "parallel") {
            Execution::Parallel
        } else {
            Execution::Sequential
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct SuiteConfig {
    pub seed: u64,
    pub execution: Execution,
}

impl SuiteConfig {
    pub fn new(seed: u64) -> Self {
        SuiteConfig {
            seed,
            execution: Execution::default(),
        }
    }

    /// RNG for instance `index` of suite number `suite`.
    pub fn rng(&self, suite: u64, index: u64) -> random::SuiteRng {
        random::instance_rng(self.seed, (suite << 32) | index)
    }
}

/// Runs `f` on `0..count`, keeping results in index order.
pub fn run_indexed<T, F>(count: usize, execution: Execution, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(u64) -> T + Sync + Send,
{
    match execution {
        #[cfg(feature = "parallel")]
        Execution::Parallel => {
            use rayon::prelude::*;
            (0..count as u64).into_par_iter().map(f).collect()
        }
        _ => (0..count as u64).map(f).collect(),
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SuiteOutcome {
    pub name: &'static str,
    pub instances: usize,
    pub failures: Vec<String>,
}

impl SuiteOutcome {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    fn collect(name: &'static str, results: Vec<Result<(), String>>) -> Self {
        let instances = results.len();
        let failures = results
            .into_iter()
            .enumerate()
            .filter_map(|(n, r)| r.err().map(|e| format!("instance {n}: {e}")))
            .collect();
        SuiteOutcome {
            name,
            instances,
            failures,
        }
    }
}

impl fmt::Display for SuiteOutcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.passed() {
            write!(f, "{}: ok ({} instances)", self.name, self.instances)
        } else {
            write!(
                f,
                "{}: FAILED {}/{}; first: {}",
                self.name,
                self.failures.len(),
                self.instances,
                self.failures[0]
            )
        }
    }
}

pub type Suite = fn(&SuiteConfig) -> SuiteOutcome;

/// Every invariant suite, in a fixed order.
pub fn all_suites() -> Vec<(&'static str, Suite)> {
    vec![
        ("degree-oracle", calculus::degree_oracle as Suite),
        ("worked-examples", fixed::worked_examples),
        ("gr-rees", calculus::gr_rees_laws),
        ("linear-weightings", calculus::linear_weightings),
        ("tangent-lifts", calculus::tangent_lifts),
        ("im-equivalence", algebroids::im_equivalence),
        ("limit-algebroids", algebroids::limit_algebroids),
        ("nilpotent-fibres", fixed::nilpotent_fibres),
        ("cleanness", fixed::cleanness),
        ("wide-hypotheses", fixed::wide_hypotheses),
    ]
}

pub fn suite(name: &str) -> Option<Suite> {
    all_suites().into_iter().find(|(n, _)| *n == name).map(|(_, s)| s)
}

pub fn run_all(config: &SuiteConfig) -> Vec<SuiteOutcome> {
    all_suites().into_iter().map(|(_, s)| s(config)).collect()
}
