//! Labeled trees with a prescribed degree sequence, via Prüfer sequences.
//!
//! A labeled tree on `n` vertices corresponds to exactly one sequence of
//! length `n - 2` in which vertex `v` occurs `d(v) - 1` times, so the trees
//! of a tuple are the distinct permutations of one multiset.

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive};

use crate::tree::WeightedTree;
use crate::tuple::{GeneratingTuple, VertexId};

use super::OracleError;

/// `(|V| - 2)! / prod (d(v) - 1)!`.
pub fn count_trees(tuple: &GeneratingTuple) -> BigUint {
    let mut count = factorial(tuple.len() - 2);
    for &d in tuple.degrees() {
        count /= factorial(d - 1);
    }
    count
}

fn factorial(n: usize) -> BigUint {
    (2..=n).fold(BigUint::one(), |acc, k| acc * BigUint::from(k))
}

/// The lexicographically smallest Prüfer sequence of the tuple's class.
pub fn first_sequence(degrees: &[usize]) -> Vec<VertexId> {
    degrees
        .iter()
        .enumerate()
        .flat_map(|(v, &d)| std::iter::repeat_n(v, d - 1))
        .collect()
}

/// Advances `seq` to the next distinct permutation in lexicographic order;
/// returns false (leaving `seq` untouched) when it is already the last one.
pub fn next_permutation(seq: &mut [VertexId]) -> bool {
    if seq.len() < 2 {
        return false;
    }
    let mut i = seq.len() - 1;
    while i > 0 && seq[i - 1] >= seq[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = seq.len() - 1;
    while seq[j] <= seq[i - 1] {
        j -= 1;
    }
    seq.swap(i - 1, j);
    seq[i..].reverse();
    true
}

/// Linear-time Prüfer decoding into an edge list.
pub fn decode(seq: &[VertexId], n: usize) -> Vec<(VertexId, VertexId)> {
    debug_assert_eq!(seq.len() + 2, n);
    let mut degree = vec![1usize; n];
    for &x in seq {
        degree[x] += 1;
    }
    let mut edges = Vec::with_capacity(n - 1);
    let mut ptr = degree.iter().position(|&d| d == 1).expect("a tree has a leaf");
    let mut leaf = ptr;
    for &x in seq {
        edges.push((leaf, x));
        degree[x] -= 1;
        degree[leaf] = 0;
        if degree[x] == 1 && x < ptr {
            leaf = x;
        } else {
            ptr += 1;
            while degree[ptr] != 1 {
                ptr += 1;
            }
            leaf = ptr;
        }
    }
    edges.push((leaf, n - 1));
    edges
}

/// Number of distinct permutations of a multiset with the given counts, when
/// it fits in `u128`.
fn multinomial(counts: &[usize]) -> Option<u128> {
    let mut acc: u128 = 1;
    let mut total: usize = 0;
    for &c in counts {
        for k in 1..=c {
            total += 1;
            // acc * total / k stays integral: acc is C(total - 1, k - 1) times earlier factors
            acc = acc.checked_mul(total as u128)? / k as u128;
        }
    }
    Some(acc)
}

/// The Prüfer sequence at lexicographic rank `rank` (0-based).
pub fn unrank(degrees: &[usize], mut rank: u128) -> Option<Vec<VertexId>> {
    let mut counts: Vec<usize> = degrees.iter().map(|&d| d - 1).collect();
    let len: usize = counts.iter().sum();
    let mut seq = Vec::with_capacity(len);
    for _ in 0..len {
        let mut chosen = None;
        for v in 0..counts.len() {
            if counts[v] == 0 {
                continue;
            }
            counts[v] -= 1;
            let block = multinomial(&counts)?;
            if rank < block {
                chosen = Some(v);
                break;
            }
            rank -= block;
            counts[v] += 1;
        }
        seq.push(chosen?);
    }
    (rank == 0).then_some(seq)
}

/// Streams every tree of a tuple's class exactly once, in lexicographic order
/// of Prüfer sequences.
#[derive(Debug, Clone)]
pub struct TreeEnumerator<'a> {
    tuple: &'a GeneratingTuple,
    seq: Vec<VertexId>,
    remaining: u64,
}

impl<'a> TreeEnumerator<'a> {
    /// The whole class; fails when it has more than `cap` members.
    pub fn new(tuple: &'a GeneratingTuple, cap: u64) -> Result<Self, OracleError> {
        let count = count_trees(tuple);
        match count.to_u64() {
            Some(c) if c <= cap => Ok(TreeEnumerator {
                tuple,
                seq: first_sequence(tuple.degrees()),
                remaining: c,
            }),
            _ => Err(OracleError::EnumerationCapExceeded { count, cap }),
        }
    }

    /// The contiguous block of `len` sequences starting at rank `start`.
    pub fn block(tuple: &'a GeneratingTuple, start: u64, len: u64) -> Self {
        let seq = if len == 0 {
            Vec::new()
        } else {
            unrank(tuple.degrees(), start as u128).expect("block start within class")
        };
        TreeEnumerator {
            tuple,
            seq,
            remaining: len,
        }
    }

    /// Current sequence and its edges, then advance.
    pub fn next_edges(&mut self) -> Option<Vec<(VertexId, VertexId)>> {
        if self.remaining == 0 {
            return None;
        }
        let edges = decode(&self.seq, self.tuple.len());
        self.remaining -= 1;
        if self.remaining > 0 {
            let advanced = next_permutation(&mut self.seq);
            debug_assert!(advanced, "class count and permutations disagree");
        }
        Some(edges)
    }
}

impl Iterator for TreeEnumerator<'_> {
    type Item = WeightedTree;

    fn next(&mut self) -> Option<WeightedTree> {
        let edges = self.next_edges()?;
        Some(WeightedTree::from_edges_unchecked(self.tuple.weights().to_vec(), &edges))
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let r = self.remaining as usize;
        (r, Some(r))
    }
}

/// Every tree of the tuple's class, in Prüfer order.
pub fn enumerate_trees(tuple: &GeneratingTuple, cap: u64) -> Result<TreeEnumerator<'_>, OracleError> {
    TreeEnumerator::new(tuple, cap)
}
