//! Search for tuples on which the Huffman construction is not optimal.
//!
//! Optimality is only guaranteed for degree-monotone weights, so the search
//! looks at tuples where some internal vertex of lower degree is heavier than
//! one of higher degree.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::huffman::build_huffman;
use crate::indices::IndexValue;
use crate::rational::Rational;
use crate::tree::WeightedTree;
use crate::tuple::{is_degree_monotone, GeneratingTuple};

use super::brute::brute_force_optimum;
use super::generate::{random_tuple, TupleShape, WeightOrder};
use super::{EnumerationConfig, OracleError};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchLimits {
    pub max_vertices: usize,
    pub max_weight: i64,
    pub seed: u64,
    /// Number of tuples examined before giving up.
    pub attempts: u64,
    /// Search degree-monotone tuples instead; a hit would contradict
    /// optimality.
    pub monotone_only: bool,
    /// Tuples whose class is larger than this are skipped.
    pub class_cap: u64,
}

impl Default for SearchLimits {
    fn default() -> Self {
        SearchLimits {
            max_vertices: 8,
            max_weight: 20,
            seed: 42,
            attempts: 10_000,
            monotone_only: false,
            class_cap: 20_000,
        }
    }
}

#[derive(Debug, Clone)]
pub struct CounterexampleReport {
    pub tuple: GeneratingTuple,
    pub huffman_vwwi: IndexValue,
    pub oracle_min: IndexValue,
    /// `huffman_vwwi - oracle_min`, strictly positive.
    pub gap: IndexValue,
    /// A tree attaining `oracle_min`.
    pub witness_tree: WeightedTree,
    pub huffman_tree: WeightedTree,
    /// Tuples examined, including the hit.
    pub attempts_used: u64,
}

/// The first tuple, in a fixed order determined by `limits.seed`, whose
/// Huffman tree is beaten by the class optimum. A structured sweep over small
/// degree sequences runs before the random phase.
pub fn find_counterexample(limits: &SearchLimits) -> Result<CounterexampleReport, OracleError> {
    let config = EnumerationConfig {
        cap: limits.class_cap,
        argmin_cap: 1,
    };
    let mut used = 0u64;
    if limits.max_vertices >= 5 {
        for tuple in structured_tuples(limits) {
            if used == limits.attempts {
                return Err(OracleError::NotFound { attempts: used });
            }
            used += 1;
            if let Some(report) = examine(&tuple, &config, used)? {
                return Ok(report);
            }
        }
    }
    let shape = TupleShape {
        min_vertices: 5,
        max_vertices: limits.max_vertices,
        max_weight: limits.max_weight,
        max_denominator: 1,
        order: if limits.monotone_only {
            WeightOrder::Monotone
        } else {
            WeightOrder::Inverted
        },
    };
    let mut rng = ChaCha8Rng::seed_from_u64(limits.seed);
    while used < limits.attempts && limits.max_vertices >= 5 {
        used += 1;
        let Some(tuple) = random_tuple(&mut rng, &shape) else {
            continue;
        };
        if let Some(report) = examine(&tuple, &config, used)? {
            return Ok(report);
        }
    }
    Err(OracleError::NotFound { attempts: used })
}

fn examine(
    tuple: &GeneratingTuple,
    config: &EnumerationConfig,
    used: u64,
) -> Result<Option<CounterexampleReport>, OracleError> {
    let report = match brute_force_optimum(tuple, config) {
        Ok(r) => r,
        Err(OracleError::EnumerationCapExceeded { .. }) => return Ok(None),
        Err(e) => return Err(e),
    };
    if report.huffman_is_optimal {
        return Ok(None);
    }
    let huffman = build_huffman(tuple)?;
    Ok(Some(CounterexampleReport {
        tuple: tuple.clone(),
        gap: &report.huffman_vwwi - &report.min_vwwi,
        huffman_vwwi: report.huffman_vwwi,
        oracle_min: report.min_vwwi,
        witness_tree: report.argmin_trees.into_iter().next().expect("argmin set is non-empty"),
        huffman_tree: huffman.tree,
        attempts_used: used,
    }))
}

/// Every way to write `total` as a non-increasing sum of positive parts.
fn partitions(total: usize) -> Vec<Vec<usize>> {
    fn go(rest: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if rest == 0 {
            out.push(cur.clone());
            return;
        }
        for part in (1..=rest.min(max)).rev() {
            cur.push(part);
            go(rest - part, part, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(total, total, &mut Vec::new(), &mut out);
    out
}

/// For each vertex count and internal degree multiset, extreme weightings:
/// light pendents with one heavy pendent or none, and internal weights either
/// inverted against degree or (when monotone) aligned with it.
fn structured_tuples(limits: &SearchLimits) -> Vec<GeneratingTuple> {
    let heavy = Rational::from_integer(limits.max_weight.max(1));
    let mut out = Vec::new();
    for n in 5..=limits.max_vertices {
        for parts in partitions(n - 2) {
            let q = parts.len();
            if n - q < 2 {
                continue;
            }
            // internals ascending by degree
            let mut internal: Vec<usize> = parts.iter().map(|p| p + 1).collect();
            internal.sort_unstable();
            if !limits.monotone_only && internal.first() == internal.last() {
                continue;
            }
            let internal_weights: Vec<Rational> = (0..q)
                .map(|i| {
                    let is_heavy = if limits.monotone_only { i + 1 == q } else { i == 0 };
                    if is_heavy {
                        heavy.clone()
                    } else {
                        Rational::zero()
                    }
                })
                .collect();
            let p = n - q;
            for heavy_pendents in 0..=1usize {
                let mut weights = internal_weights.clone();
                let mut degrees = internal.clone();
                for j in 0..p {
                    weights.push(if j < heavy_pendents { heavy.clone() } else { Rational::one() });
                    degrees.push(1);
                }
                let tuple = GeneratingTuple::from_parts(weights, degrees).expect("partition gives a valid tuple");
                if is_degree_monotone(&tuple) == limits.monotone_only {
                    out.push(tuple);
                }
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn partitions_are_complete() {
        assert_eq!(partitions(4).len(), 5);
        assert_eq!(partitions(6).len(), 11);
    }

    #[test]
    fn structured_sweep_respects_the_order() {
        let mut limits = SearchLimits::default();
        assert!(structured_tuples(&limits).iter().all(|t| !is_degree_monotone(t)));
        limits.monotone_only = true;
        assert!(structured_tuples(&limits).iter().all(is_degree_monotone));
    }

    #[test]
    fn four_vertices_never_yield_a_gap() {
        let limits = SearchLimits {
            max_vertices: 4,
            ..Default::default()
        };
        assert!(matches!(find_counterexample(&limits), Err(OracleError::NotFound { .. })));
    }

    #[test]
    fn default_search_finds_a_gap() {
        let report = find_counterexample(&SearchLimits::default()).unwrap();
        assert!(report.gap.is_positive());
        assert!(!is_degree_monotone(&report.tuple));
        assert_eq!(&report.huffman_vwwi - &report.oracle_min, report.gap);
        assert_eq!(crate::indices::vwwi_pairwise(&report.witness_tree), report.oracle_min);
    }
}
