//! Brute-force optimum and majorization checks over a whole tree class.

use std::cmp::Ordering;
use std::collections::BTreeSet;

use num_traits::ToPrimitive;
use rayon::prelude::*;

use crate::huffman::{build_huffman, HuffmanChecker};
use crate::indices::{vwwi_pairwise, IndexValue};
use crate::majorization::{weak_compare, MajorizationOrder};
use crate::tree::{f_vector, root_tree, WeightedTree};
use crate::tuple::{GeneratingTuple, VertexId};

use super::huffman_set::{all_huffman_trees, EdgeList};
use super::prufer::{count_trees, TreeEnumerator};
use super::{EnumerationConfig, OracleError};

/// Classes at least this large are split across threads.
const PARALLEL_THRESHOLD: u64 = 20_000;

#[derive(Debug, Clone)]
pub struct BruteForceReport {
    pub tuple: GeneratingTuple,
    pub trees_enumerated: u64,
    pub min_vwwi: IndexValue,
    /// Argmin trees in canonical edge order, at most `argmin_cap` of them
    /// (the canonically smallest).
    pub argmin_trees: Vec<WeightedTree>,
    /// Size of the full argmin set.
    pub argmin_count: u64,
    pub argmin_overflow: bool,
    pub huffman_vwwi: IndexValue,
    pub huffman_is_optimal: bool,
    pub all_argmins_are_huffman: bool,
    /// Trees of the class passing `is_huffman`.
    pub huffman_trees: u64,
    /// Every tree passing `is_huffman` attains the minimum.
    pub all_huffman_trees_optimal: bool,
    pub optimality_guaranteed: bool,
}

/// Mergeable summary of one block of the class.
#[derive(Debug, Clone)]
struct Partial {
    trees: u64,
    min: Option<IndexValue>,
    argmins: BTreeSet<EdgeList>,
    argmin_count: u64,
    argmins_huffman: bool,
    huffman_trees: u64,
    huffman_range: Option<(IndexValue, IndexValue)>,
}

impl Partial {
    fn empty() -> Self {
        Partial {
            trees: 0,
            min: None,
            argmins: BTreeSet::new(),
            argmin_count: 0,
            argmins_huffman: true,
            huffman_trees: 0,
            huffman_range: None,
        }
    }

    fn merge(mut self, other: Partial, argmin_cap: usize) -> Partial {
        self.trees += other.trees;
        self.huffman_trees += other.huffman_trees;
        self.huffman_range = match (self.huffman_range, other.huffman_range) {
            (Some((a, b)), Some((c, d))) => Some((a.min(c), b.max(d))),
            (x, None) | (None, x) => x,
        };
        let order = match (&self.min, &other.min) {
            (_, None) => Ordering::Less,
            (None, _) => Ordering::Greater,
            (Some(a), Some(b)) => a.cmp(b),
        };
        match order {
            Ordering::Less => {}
            Ordering::Greater => {
                self.min = other.min;
                self.argmins = other.argmins;
                self.argmin_count = other.argmin_count;
                self.argmins_huffman = other.argmins_huffman;
            }
            Ordering::Equal => {
                self.argmin_count += other.argmin_count;
                self.argmins_huffman &= other.argmins_huffman;
                self.argmins.extend(other.argmins);
                while self.argmins.len() > argmin_cap {
                    self.argmins.pop_last();
                }
            }
        }
        self
    }

    fn record(&mut self, edges: EdgeList, value: IndexValue, huffman: bool, argmin_cap: usize) {
        self.trees += 1;
        if huffman {
            self.huffman_trees += 1;
            self.huffman_range = Some(match self.huffman_range.take() {
                Some((lo, hi)) => (lo.min(value.clone()), hi.max(value.clone())),
                None => (value.clone(), value.clone()),
            });
        }
        let better = match &self.min {
            None => true,
            Some(m) => value < *m,
        };
        if better {
            self.min = Some(value);
            self.argmins.clear();
            self.argmin_count = 0;
            self.argmins_huffman = true;
        } else if self.min.as_ref() != Some(&value) {
            return;
        }
        self.argmin_count += 1;
        self.argmins_huffman &= huffman;
        self.argmins.insert(edges);
        if self.argmins.len() > argmin_cap {
            self.argmins.pop_last();
        }
    }
}

fn canonical(mut edges: EdgeList) -> EdgeList {
    for e in edges.iter_mut() {
        if e.0 > e.1 {
            *e = (e.1, e.0);
        }
    }
    edges.sort_unstable();
    edges
}

fn scan_block(
    tuple: &GeneratingTuple,
    checker: &HuffmanChecker,
    start: u64,
    len: u64,
    argmin_cap: usize,
) -> Partial {
    let mut partial = Partial::empty();
    let mut it = TreeEnumerator::block(tuple, start, len);
    while let Some(edges) = it.next_edges() {
        let edges = canonical(edges);
        let tree = WeightedTree::from_edges_unchecked(tuple.weights().to_vec(), &edges);
        let value = vwwi_pairwise(&tree);
        let huffman = checker.huffman_root(&tree).is_some();
        partial.record(edges, value, huffman, argmin_cap);
    }
    partial
}

fn class_size(tuple: &GeneratingTuple, config: &EnumerationConfig) -> Result<u64, OracleError> {
    let count = count_trees(tuple);
    match count.to_u64() {
        Some(c) if c <= config.cap => Ok(c),
        _ => Err(OracleError::EnumerationCapExceeded { count, cap: config.cap }),
    }
}

/// Exact minimum of the VWWI over the whole class, compared with the Huffman
/// construction. Large classes are split into blocks and scanned in parallel.
pub fn brute_force_optimum(tuple: &GeneratingTuple, config: &EnumerationConfig) -> Result<BruteForceReport, OracleError> {
    let count = class_size(tuple, config)?;
    let blocks = if count >= PARALLEL_THRESHOLD {
        rayon::current_num_threads() * 4
    } else {
        1
    };
    brute_force_optimum_blocks(tuple, config, blocks)
}

/// [`brute_force_optimum`] with the class split into `blocks` contiguous
/// ranges of Prüfer ranks. The report does not depend on `blocks`.
pub fn brute_force_optimum_blocks(
    tuple: &GeneratingTuple,
    config: &EnumerationConfig,
    blocks: usize,
) -> Result<BruteForceReport, OracleError> {
    let count = class_size(tuple, config)?;
    let huffman = build_huffman(tuple)?;
    let checker = HuffmanChecker::new(tuple)?;
    let blocks = (blocks.max(1) as u64).min(count.max(1));
    let ranges: Vec<(u64, u64)> = (0..blocks)
        .map(|b| {
            let start = count * b / blocks;
            let end = count * (b + 1) / blocks;
            (start, end - start)
        })
        .collect();
    let cap = config.argmin_cap;
    let merged = if ranges.len() == 1 {
        scan_block(tuple, &checker, 0, count, cap)
    } else {
        ranges
            .par_iter()
            .map(|&(start, len)| scan_block(tuple, &checker, start, len, cap))
            .collect::<Vec<_>>()
            .into_iter()
            .fold(Partial::empty(), |acc, p| acc.merge(p, cap))
    };

    let min_vwwi = merged.min.expect("every class is non-empty");
    let argmin_trees = merged
        .argmins
        .iter()
        .map(|e| WeightedTree::from_edges_unchecked(tuple.weights().to_vec(), e))
        .collect();
    let all_huffman_trees_optimal = match &merged.huffman_range {
        Some((_, hi)) => *hi == min_vwwi,
        None => false,
    };
    Ok(BruteForceReport {
        tuple: tuple.clone(),
        trees_enumerated: merged.trees,
        huffman_is_optimal: huffman.vwwi == min_vwwi,
        min_vwwi,
        argmin_trees,
        argmin_count: merged.argmin_count,
        argmin_overflow: merged.argmin_count > cap as u64,
        huffman_vwwi: huffman.vwwi,
        all_argmins_are_huffman: merged.argmins_huffman,
        huffman_trees: merged.huffman_trees,
        all_huffman_trees_optimal,
        optimality_guaranteed: huffman.optimality_guaranteed,
    })
}

/// Outcome of comparing the Huffman f-vector with every rooting of every tree.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct MajorizationReport {
    pub trees: u64,
    /// Rootings at internal vertices.
    pub rootings: u64,
    pub huffman_strictly_majorizes: u64,
    pub equal: u64,
    /// Rootings whose f-vector strictly majorizes the Huffman one.
    pub huffman_strictly_majorized: u64,
    pub incomparable: u64,
    /// Rootings with the Huffman f-vector on trees no minimal-star sequence
    /// produces.
    pub equal_but_not_huffman: u64,
    /// Trees produced by some minimal-star sequence that have no rooting with
    /// the Huffman f-vector.
    pub huffman_without_equal: u64,
    /// Whether the set of Huffman trees fit under the enumeration limit; when
    /// false the last two counters are not computed.
    pub huffman_set_complete: bool,
}

impl MajorizationReport {
    /// The Huffman vector weakly majorizes every other one, and equality
    /// occurs exactly on Huffman trees.
    pub fn holds(&self) -> bool {
        self.huffman_strictly_majorized == 0
            && self.incomparable == 0
            && self.equal_but_not_huffman == 0
            && self.huffman_without_equal == 0
    }
}

/// Compares the Huffman f-vector with every internal rooting of every tree of
/// the class. Huffman membership is decided independently, by listing every
/// tree some minimal-star sequence produces.
pub fn check_majorization(tuple: &GeneratingTuple, config: &EnumerationConfig) -> Result<MajorizationReport, OracleError> {
    class_size(tuple, config)?;
    let target = HuffmanChecker::new(tuple)?.target().clone();
    let huffman_set = all_huffman_trees(tuple, config.argmin_cap)?;
    let mut report = MajorizationReport {
        huffman_set_complete: huffman_set.is_some(),
        ..Default::default()
    };
    let mut it = TreeEnumerator::new(tuple, config.cap)?;
    while let Some(edges) = it.next_edges() {
        let edges = canonical(edges);
        let tree = WeightedTree::from_edges_unchecked(tuple.weights().to_vec(), &edges);
        report.trees += 1;
        let member = huffman_set.as_ref().map(|s| s.contains(&edges));
        let mut any_equal = false;
        let roots: Vec<VertexId> = tree.internal_vertices().collect();
        for r in roots {
            let fv = f_vector(&root_tree(&tree, r).expect("internal root"));
            report.rootings += 1;
            match weak_compare(target.values(), fv.values()).expect("f-vectors of one class have equal length") {
                MajorizationOrder::LeftMajorizesStrictly => report.huffman_strictly_majorizes += 1,
                MajorizationOrder::RightMajorizesStrictly => report.huffman_strictly_majorized += 1,
                MajorizationOrder::Incomparable => report.incomparable += 1,
                MajorizationOrder::EqualSorted => {
                    report.equal += 1;
                    any_equal = true;
                    if member == Some(false) {
                        report.equal_but_not_huffman += 1;
                    }
                }
            }
        }
        if member == Some(true) && !any_equal && tuple.internal_count() > 0 {
            report.huffman_without_equal += 1;
        }
    }
    Ok(report)
}
