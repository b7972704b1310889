//! Rayon-backed implementations of the core crate's execution traits.
//!
//! Work is always split into the same fixed pieces, whatever the pool size, so
//! results (including case counts of failing checks) do not depend on the
//! number of threads.

use infbin_core::automaton::{normalize_alphabet, transition_row, BinAutomaton};
use infbin_core::enumerate::{check_universe, universe_size};
use infbin_core::oracle::{run_range, CheckResult, ConfigCheck, RangeOutcome, Runner};
use infbin_core::simulate::ReplicaMap;
use rayon::prelude::*;

/// Masks per work unit.
pub const CHUNK: u32 = 1 << 12;

#[derive(Debug, Clone, Copy, Default)]
pub struct RayonRunner;

impl Runner for RayonRunner {
    fn run(&self, check: &dyn ConfigCheck) -> CheckResult {
        let size = universe_size(check.l()) as u32;
        let chunks = size.div_ceil(CHUNK);
        (0..chunks)
            .into_par_iter()
            .map(|c| run_range(check, c * CHUNK..((c + 1) * CHUNK).min(size)))
            .reduce(RangeOutcome::default, RangeOutcome::merge)
            .into_result(check.name())
    }
}

#[derive(Debug, Clone, Copy, Default)]
pub struct RayonMap;

impl ReplicaMap for RayonMap {
    fn map<T: Send, F: Fn(u64) -> T + Sync>(&self, n: u64, f: F) -> Vec<T> {
        // `F` is only `Sync`, so it is called through a reference.
        #[allow(clippy::redundant_closure)]
        (0..n).into_par_iter().map(|i| f(i)).collect()
    }
}

/// [`BinAutomaton::build`] with the transition rows computed in parallel.
pub fn build_automaton(l: u64, alphabet: &[u64]) -> infbin_core::Result<BinAutomaton> {
    check_universe(l)?;
    let alphabet = normalize_alphabet(l, alphabet)?;
    let rows = (0..universe_size(l) as u32)
        .into_par_iter()
        .map(|m| transition_row(l, &alphabet, m))
        .collect();
    Ok(BinAutomaton::from_rows(l, alphabet, rows))
}

/// A worker pool of fixed size, or the global pool.
#[derive(Debug, Default)]
pub struct Pool(Option<rayon::ThreadPool>);

impl Pool {
    /// `None` uses the global pool (machine parallelism).
    pub fn new(threads: Option<usize>) -> Result<Self, rayon::ThreadPoolBuildError> {
        match threads {
            Some(n) => Ok(Self(Some(
                rayon::ThreadPoolBuilder::new().num_threads(n.max(1)).build()?,
            ))),
            None => Ok(Self(None)),
        }
    }

    pub fn install<T: Send>(&self, f: impl FnOnce() -> T + Send) -> T {
        match &self.0 {
            Some(pool) => pool.install(f),
            None => f(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use infbin_core::oracle::{CommutationCheck, Sequential};

    #[test]
    fn rayon_matches_sequential() {
        let check = CommutationCheck::new(14);
        assert_eq!(RayonRunner.run(&check), Sequential.run(&check));
        let a = build_automaton(6, &[2, 6]).unwrap();
        assert_eq!(a, BinAutomaton::build(6, &[2, 6]).unwrap());
        assert_eq!(RayonMap.map(5, |i| i * i), vec![0, 1, 4, 9, 16]);
    }
}
