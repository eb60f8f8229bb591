//! Exhaustive verification oracles over the tree class of a generating tuple.

mod brute;
mod generate;
mod huffman_set;
mod prufer;
mod search;

use num_bigint::BigUint;
use thiserror::Error;

use crate::huffman::HuffmanError;

pub use brute::{
    brute_force_optimum, brute_force_optimum_blocks, check_majorization, BruteForceReport, MajorizationReport,
};
pub use generate::{random_degrees, random_tree, random_tree_in_class, random_tuple, random_weight, TupleShape, WeightOrder};
pub use huffman_set::all_huffman_trees;
pub use prufer::{count_trees, decode, enumerate_trees, first_sequence, next_permutation, unrank, TreeEnumerator};
pub use search::{find_counterexample, CounterexampleReport, SearchLimits};

/// Default bound on the size of an enumerated class.
pub const DEFAULT_ENUM_CAP: u64 = 10_000_000;
/// Default bound on the number of stored argmin trees.
pub const DEFAULT_ARGMIN_CAP: usize = 10_000;
/// Environment variable overriding [`DEFAULT_ENUM_CAP`].
pub const ENUM_CAP_ENV: &str = "WH_ENUM_CAP";

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("class has {count} trees, above the enumeration cap {cap}")]
    EnumerationCapExceeded { count: BigUint, cap: u64 },
    #[error(transparent)]
    Huffman(#[from] HuffmanError),
    #[error("no counterexample found after {attempts} attempts")]
    NotFound { attempts: u64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EnumerationConfig {
    pub cap: u64,
    pub argmin_cap: usize,
}

impl Default for EnumerationConfig {
    fn default() -> Self {
        EnumerationConfig {
            cap: DEFAULT_ENUM_CAP,
            argmin_cap: DEFAULT_ARGMIN_CAP,
        }
    }
}

impl EnumerationConfig {
    /// Defaults, with the cap taken from `WH_ENUM_CAP` when it parses.
    pub fn from_env() -> Self {
        let mut config = Self::default();
        if let Some(cap) = std::env::var(ENUM_CAP_ENV).ok().and_then(|s| s.trim().parse().ok()) {
            config.cap = cap;
        }
        config
    }
}
