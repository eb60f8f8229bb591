//! Trees minimizing the vertex-weighted Wiener index over a prescribed
//! weight and degree assignment.
//!
//! [`huffman::build_huffman`] constructs the optimal tree bottom-up by
//! repeatedly merging the cheapest star. The remaining modules supply what is
//! needed to check that claim independently: exact index evaluation by two
//! routes ([`indices`]), weak majorization of subordinate-weight vectors
//! ([`majorization`]), exhaustive enumeration of every tree with the given
//! degrees ([`oracle`]), and the exchange transformations that relate
//! non-optimal trees to better ones ([`transforms`]).

pub mod huffman;
pub mod indices;
pub mod majorization;
pub mod oracle;
pub mod rational;
pub mod transforms;
pub mod tree;
pub mod tuple;

pub use huffman::{build_huffman, is_huffman, minimal_star, HuffmanChecker, HuffmanError, HuffmanResult, Star, StarSequence};
pub use indices::{chi, gutman_index, vwwi_pairwise, vwwi_pairwise_with, vwwi_rooted, wiener_index, IndexValue, PairwiseBackend};
pub use majorization::{sum_chi, weak_compare, MajorizationOrder};
pub use oracle::{
    brute_force_optimum, count_trees, enumerate_trees, find_counterexample, BruteForceReport, CounterexampleReport,
    EnumerationConfig, OracleError, SearchLimits,
};
pub use rational::Rational;
pub use transforms::{apply_swap, centroid_walk_root, is_proper, proper_root, rollup, SwapSpec, TransformError};
pub use tree::{f_vector, root_tree, tree_matches_tuple, FVector, RootedTree, TreeError, WeightedTree};
pub use tuple::{is_degree_monotone, validate_tuple, GeneratingTuple, RawVertex, TupleError, VertexId, Weight};
