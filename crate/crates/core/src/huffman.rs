//! Generalized Huffman construction.
//!
//! The tree is assembled bottom-up from a sequence of stars. At every step
//! the cheapest internal vertex (ties: lower degree, then lower id) becomes a
//! center and absorbs its `d - 1` lightest pendent vertices (ties: lower id);
//! the merged star then re-enters the pendent pool as a single vertex whose
//! weight is the star's total. The last internal vertex takes every pendent
//! vertex left in the pool.

use std::cmp::Reverse;
use std::collections::BinaryHeap;

use thiserror::Error;

use crate::indices::{vwwi_rooted, IndexValue};
use crate::rational::Rational;
use crate::tree::{f_vector, root_tree, tree_matches_tuple, FVector, RootedTree, WeightedTree};
use crate::tuple::{is_degree_monotone, GeneratingTuple, RawVertex, VertexId, Weight};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HuffmanError {
    #[error("tuple has no internal vertex")]
    NoInternalVertex,
    #[error("center {center} needs {needed} pendent vertices but only {available} remain")]
    NotEnoughPendents {
        center: VertexId,
        needed: usize,
        available: usize,
    },
    #[error("tree does not realize the given tuple")]
    TupleMismatch,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Star {
    pub center: VertexId,
    pub leaves: Vec<VertexId>,
    /// Center weight plus the current weights of all leaves.
    pub total_weight: Weight,
}

/// The minimal star of `tuple`, in the tuple's dense ids.
pub fn minimal_star(tuple: &GeneratingTuple) -> Result<Star, HuffmanError> {
    let center = tuple
        .internals()
        .iter()
        .copied()
        .min_by(|&a, &b| internal_key(tuple, a).cmp(&internal_key(tuple, b)))
        .ok_or(HuffmanError::NoInternalVertex)?;
    let needed = tuple.degree(center) - 1;
    let mut pool: Vec<VertexId> = tuple.pendents().to_vec();
    if pool.len() < needed {
        return Err(HuffmanError::NotEnoughPendents {
            center,
            needed,
            available: pool.len(),
        });
    }
    pool.sort_by(|&a, &b| (tuple.weight(a), a).cmp(&(tuple.weight(b), b)));
    pool.truncate(needed);
    let total_weight = tuple.weight(center) + &pool.iter().map(|&v| tuple.weight(v)).sum::<Rational>();
    Ok(Star {
        center,
        leaves: pool,
        total_weight,
    })
}

fn internal_key(tuple: &GeneratingTuple, m: VertexId) -> (&Weight, usize, VertexId) {
    (tuple.weight(m), tuple.degree(m), m)
}

/// Trace of a construction: `stars[i]` was merged at step `i + 1`.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct StarSequence {
    stars: Vec<Star>,
}

impl StarSequence {
    pub fn stars(&self) -> &[Star] {
        &self.stars
    }

    pub fn len(&self) -> usize {
        self.stars.len()
    }

    pub fn is_empty(&self) -> bool {
        self.stars.is_empty()
    }

    pub fn centers(&self) -> impl Iterator<Item = VertexId> + '_ {
        self.stars.iter().map(|s| s.center)
    }

    /// The tuple the algorithm works on before step `step` (1-based, so step 1
    /// is `tuple` itself): earlier leaves are removed and earlier centers are
    /// pendent, carrying their star totals. Labels are the dense ids of
    /// `tuple`.
    ///
    /// Snapshots are rebuilt on demand; storing all of them would cost
    /// quadratic memory.
    pub fn snapshot(&self, tuple: &GeneratingTuple, step: usize) -> GeneratingTuple {
        assert!(step >= 1 && step <= self.stars.len().max(1), "step out of range");
        let mut weights: Vec<Option<Weight>> = tuple.weights().iter().cloned().map(Some).collect();
        let mut degrees = tuple.degrees().to_vec();
        for star in &self.stars[..step - 1] {
            for &l in &star.leaves {
                weights[l] = None;
            }
            weights[star.center] = Some(star.total_weight.clone());
            degrees[star.center] = 1;
        }
        let raw: Vec<RawVertex> = (0..tuple.len())
            .filter_map(|v| {
                weights[v]
                    .clone()
                    .map(|w| RawVertex::new(v as i64, w, degrees[v] as i64))
            })
            .collect();
        crate::tuple::validate_tuple(&raw).expect("snapshots preserve the degree identity")
    }
}

#[derive(Debug, Clone)]
pub struct HuffmanResult {
    pub tree: WeightedTree,
    /// Rooted at the center of the final star.
    pub rooted: RootedTree,
    pub sequence: StarSequence,
    pub fvec: FVector,
    pub vwwi: IndexValue,
    /// Optimality is proven only for degree-monotone weights.
    pub optimality_guaranteed: bool,
}

/// Builds the canonical Huffman tree of `tuple`. Runs in `O(|V| log |V|)`.
pub fn build_huffman(tuple: &GeneratingTuple) -> Result<HuffmanResult, HuffmanError> {
    let optimality_guaranteed = is_degree_monotone(tuple);
    if tuple.internal_count() == 0 {
        // single edge
        let tree = WeightedTree::from_edges_unchecked(tuple.weights().to_vec(), &[(0, 1)]);
        let rooted = root_tree(&tree, 0).expect("single edge roots anywhere");
        let vwwi = vwwi_rooted(&rooted);
        return Ok(HuffmanResult {
            tree,
            rooted,
            sequence: StarSequence::default(),
            fvec: FVector::default(),
            vwwi,
            optimality_guaranteed,
        });
    }

    let (stars, edges) = merge_stars(tuple)?;
    let last = stars.last().expect("q >= 1").center;
    let tree = WeightedTree::from_edges_unchecked(tuple.weights().to_vec(), &edges);
    let rooted = RootedTree::new(tree.clone(), last).expect("final center is internal");
    let fvec = FVector::from_unsorted(stars[..stars.len() - 1].iter().map(|s| s.total_weight.clone()).collect());
    let vwwi = vwwi_rooted(&rooted);
    Ok(HuffmanResult {
        tree,
        rooted,
        sequence: StarSequence { stars },
        fvec,
        vwwi,
        optimality_guaranteed,
    })
}

type Edges = Vec<(VertexId, VertexId)>;

fn merge_stars(tuple: &GeneratingTuple) -> Result<(Vec<Star>, Edges), HuffmanError> {
    let mut centers: Vec<VertexId> = tuple.internals().to_vec();
    centers.sort_unstable_by(|&a, &b| internal_key(tuple, a).cmp(&internal_key(tuple, b)));

    let mut pool: BinaryHeap<Reverse<(Weight, VertexId)>> = tuple
        .pendents()
        .iter()
        .map(|&w| Reverse((tuple.weight(w).clone(), w)))
        .collect();
    let mut stars = Vec::with_capacity(centers.len());
    let mut edges = Vec::with_capacity(tuple.len() - 1);
    let q = centers.len();
    for (step, &m) in centers.iter().enumerate() {
        let is_last = step + 1 == q;
        let needed = if is_last {
            tuple.degree(m)
        } else {
            tuple.degree(m) - 1
        };
        if pool.len() < needed {
            return Err(HuffmanError::NotEnoughPendents {
                center: m,
                needed,
                available: pool.len(),
            });
        }
        let mut total = tuple.weight(m).clone();
        let mut leaves = Vec::with_capacity(needed);
        for _ in 0..needed {
            let Reverse((w, v)) = pool.pop().expect("length checked");
            total += &w;
            edges.push((v, m));
            leaves.push(v);
        }
        if !is_last {
            pool.push(Reverse((total.clone(), m)));
        }
        stars.push(Star {
            center: m,
            leaves,
            total_weight: total,
        });
    }
    debug_assert!(pool.is_empty());
    Ok((stars, edges))
}

/// The f-vector shared by every Huffman tree of `tuple`, without building the
/// tree.
pub fn huffman_fvec(tuple: &GeneratingTuple) -> Result<FVector, HuffmanError> {
    if tuple.internal_count() == 0 {
        return Ok(FVector::default());
    }
    let (stars, _) = merge_stars(tuple)?;
    Ok(FVector::from_unsorted(
        stars[..stars.len() - 1].iter().map(|s| s.total_weight.clone()).collect(),
    ))
}

/// Membership test against a fixed tuple, reusable across many trees.
#[derive(Debug, Clone)]
pub struct HuffmanChecker {
    tuple: GeneratingTuple,
    target: FVector,
}

impl HuffmanChecker {
    pub fn new(tuple: &GeneratingTuple) -> Result<Self, HuffmanError> {
        Ok(HuffmanChecker {
            tuple: tuple.clone(),
            target: huffman_fvec(tuple)?,
        })
    }

    pub fn target(&self) -> &FVector {
        &self.target
    }

    /// True iff some internal rooting of `tree` has the Huffman f-vector.
    pub fn check(&self, tree: &WeightedTree) -> Result<bool, HuffmanError> {
        if !tree_matches_tuple(tree, &self.tuple) {
            return Err(HuffmanError::TupleMismatch);
        }
        Ok(self.huffman_root(tree).is_some())
    }

    /// An internal root under which `tree` carries the Huffman f-vector.
    pub fn huffman_root(&self, tree: &WeightedTree) -> Option<VertexId> {
        if self.tuple.internal_count() == 0 {
            return Some(0);
        }
        tree.internal_vertices().find(|&r| {
            let rooted = root_tree(tree, r).expect("internal root");
            f_vector(&rooted) == self.target
        })
    }
}

/// Whether `tree` is a Huffman tree of `tuple`: some rooting at an internal
/// vertex reproduces the Huffman f-vector, which characterizes membership.
pub fn is_huffman(tree: &WeightedTree, tuple: &GeneratingTuple) -> Result<bool, HuffmanError> {
    HuffmanChecker::new(tuple)?.check(tree)
}
