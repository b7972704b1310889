//! The infinite-bin model: configurations of balls in bins, the moves
//! `phi_k`, explicit coupling words, exhaustive verification of the coupling
//! construction, synchronizing-word search, and a seeded chain simulator.
//!
//! The crate is `no_std` and only needs `alloc`.
//!
//! Move words are written and applied left to right (see [`word`]).

#![no_std]

extern crate alloc;

pub mod automaton;
pub mod config;
pub mod coupling;
pub mod enumerate;
pub mod error;
pub mod lazy;
pub mod oracle;
pub mod simulate;
pub mod word;

pub use automaton::{BinAutomaton, SyncMethod, SyncResult};
pub use config::Configuration;
pub use coupling::{make_y, CouplingParams, CouplingPlan, LengthAccounting};
pub use enumerate::{enumerate_configs, MAX_ENUMERATION_L};
pub use error::{Error, Result};
pub use lazy::LazyInfiniteConfiguration;
pub use oracle::{CheckResult, Counterexample, VerificationReport};
pub use simulate::{DistributionSpec, SimulationReport, TwoChainReport};
pub use word::MoveWord;
