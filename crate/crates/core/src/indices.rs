//! Vertex-weighted Wiener index and its classical specialisations.

use std::collections::VecDeque;

use thiserror::Error;

use crate::rational::Rational;
use crate::tree::{RootedTree, WeightedTree};
use crate::tuple::Weight;

/// Index values are exact non-negative rationals.
pub type IndexValue = Rational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum IndexError {
    #[error("argument {x} outside [0, {total}]")]
    OutOfRange { x: Rational, total: Rational },
}

/// How the pairwise definition is evaluated.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum PairwiseBackend {
    /// Every edge contributes the product of the weights on its two sides.
    #[default]
    EdgeCut,
    /// One breadth-first search per vertex, summing weighted distances.
    Bfs,
}

/// `VWWI(T) = 1/2 * sum over ordered pairs of mu(u) mu(v) dist(u, v)`.
pub fn vwwi_pairwise(tree: &WeightedTree) -> IndexValue {
    vwwi_pairwise_with(tree, PairwiseBackend::EdgeCut)
}

pub fn vwwi_pairwise_with(tree: &WeightedTree, backend: PairwiseBackend) -> IndexValue {
    match backend {
        PairwiseBackend::EdgeCut => edge_cut(tree),
        PairwiseBackend::Bfs => bfs_all_pairs(tree),
    }
}

fn edge_cut(tree: &WeightedTree) -> IndexValue {
    // Iterative DFS from vertex 0; side weight of the edge above v is the
    // weight of v's DFS subtree.
    let n = tree.len();
    let total = tree.total_weight();
    let mut parent = vec![usize::MAX; n];
    let mut stack = vec![0usize];
    let mut postorder = Vec::with_capacity(n);
    parent[0] = 0;
    while let Some(u) = stack.pop() {
        postorder.push(u);
        for &w in tree.neighbors(u) {
            if parent[w] == usize::MAX {
                parent[w] = u;
                stack.push(w);
            }
        }
    }
    let mut side: Vec<Weight> = tree.weights().to_vec();
    let mut sum = Rational::zero();
    for &v in postorder.iter().rev() {
        if v == 0 {
            continue;
        }
        let below = std::mem::take(&mut side[v]);
        sum += &below * &(&total - &below);
        side[parent[v]] += &below;
    }
    sum
}

fn bfs_all_pairs(tree: &WeightedTree) -> IndexValue {
    let n = tree.len();
    let mut dist = vec![usize::MAX; n];
    let mut queue = VecDeque::with_capacity(n);
    let mut twice = Rational::zero();
    for source in 0..n {
        if tree.weight(source).is_zero() {
            continue;
        }
        dist.iter_mut().for_each(|d| *d = usize::MAX);
        dist[source] = 0;
        queue.push_back(source);
        let mut reach = Rational::zero();
        while let Some(u) = queue.pop_front() {
            if dist[u] > 0 {
                reach += &(tree.weight(u) * &Rational::from_integer(dist[u] as i64));
            }
            for &w in tree.neighbors(u) {
                if dist[w] == usize::MAX {
                    dist[w] = dist[u] + 1;
                    queue.push_back(w);
                }
            }
        }
        twice += &(tree.weight(source) * &reach);
    }
    twice.half()
}

/// `chi(x) = x (total - x)`, defined for `0 <= x <= total`.
pub fn chi(x: &Weight, total: &Weight) -> Result<IndexValue, IndexError> {
    if x.is_negative() || x > total {
        return Err(IndexError::OutOfRange {
            x: x.clone(),
            total: total.clone(),
        });
    }
    Ok(x * &(total - x))
}

/// Sum of `chi(f(v))` over all non-root vertices.
pub fn vwwi_rooted(rooted: &RootedTree) -> IndexValue {
    let total = rooted.total_weight();
    let root = rooted.root();
    let mut sum = Rational::zero();
    for (v, f) in rooted.subordinate_weights().iter().enumerate() {
        if v != root {
            sum += &(f * &(total - f));
        }
    }
    sum
}

/// Classical Wiener index: all weights forced to one.
pub fn wiener_index(tree: &WeightedTree) -> IndexValue {
    vwwi_pairwise(&tree.reweighted(|_| Rational::one()))
}

/// Gutman index: each weight replaced by the vertex degree.
pub fn gutman_index(tree: &WeightedTree) -> IndexValue {
    vwwi_pairwise(&tree.reweighted(|v| Rational::from_integer(tree.degree(v) as i64)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tree::root_tree;
    use crate::tree::tests::{ints, unit_path4, unit_star4, worked_example};

    fn both(t: &WeightedTree) -> IndexValue {
        let a = vwwi_pairwise_with(t, PairwiseBackend::EdgeCut);
        let b = vwwi_pairwise_with(t, PairwiseBackend::Bfs);
        assert_eq!(a, b);
        a
    }

    fn r(n: i64) -> Rational {
        Rational::from_integer(n)
    }

    /// Direct sum over unordered pairs with distances read off a Floyd-Warshall
    /// table; shares nothing with either backend.
    fn hand_oracle(t: &WeightedTree) -> Rational {
        let n = t.len();
        let mut d = vec![vec![usize::MAX / 4; n]; n];
        for u in 0..n {
            d[u][u] = 0;
            for &v in t.neighbors(u) {
                d[u][v] = 1;
            }
        }
        for k in 0..n {
            for i in 0..n {
                for j in 0..n {
                    d[i][j] = d[i][j].min(d[i][k] + d[k][j]);
                }
            }
        }
        let mut s = Rational::zero();
        for u in 0..n {
            for v in u + 1..n {
                s += &(&(t.weight(u) * t.weight(v)) * &r(d[u][v] as i64));
            }
        }
        s
    }

    #[test]
    fn pairwise_examples() {
        assert_eq!(both(&unit_star4()), r(9));
        assert_eq!(both(&unit_path4()), r(10));
        assert_eq!(hand_oracle(&worked_example()), r(46));
        assert_eq!(both(&worked_example()), r(46));
    }

    #[test]
    fn chi_examples() {
        assert_eq!(chi(&r(0), &r(8)).unwrap(), r(0));
        assert_eq!(chi(&r(8), &r(8)).unwrap(), r(0));
        assert_eq!(chi(&r(2), &r(8)).unwrap(), r(12));
        assert!(chi(&r(9), &r(8)).is_err());
        assert!(chi(&r(-1), &r(8)).is_err());
    }

    #[test]
    fn rooted_examples() {
        assert_eq!(vwwi_rooted(&root_tree(&unit_path4(), 1).unwrap()), r(10));
        assert_eq!(vwwi_rooted(&root_tree(&unit_star4(), 0).unwrap()), r(9));
        assert_eq!(vwwi_rooted(&root_tree(&worked_example(), 0).unwrap()), r(46));
        assert_eq!(vwwi_rooted(&root_tree(&worked_example(), 1).unwrap()), r(46));
    }

    #[test]
    fn wiener_examples() {
        assert_eq!(wiener_index(&unit_path4()), r(10));
        assert_eq!(wiener_index(&unit_star4()), r(9));
        let p5 = WeightedTree::new(ints(&[3, 1, 4, 1, 5]), &[(0, 1), (1, 2), (2, 3), (3, 4)]).unwrap();
        assert_eq!(hand_oracle(&p5.reweighted(|_| r(1))), r(20));
        assert_eq!(wiener_index(&p5), r(20));
    }

    #[test]
    fn gutman_examples() {
        let p4 = unit_path4();
        assert_eq!(hand_oracle(&p4.reweighted(|v| r(p4.degree(v) as i64))), r(19));
        assert_eq!(gutman_index(&p4), r(19));
        assert_eq!(gutman_index(&unit_star4()), r(15));
        let p2 = WeightedTree::new(ints(&[7, 7]), &[(0, 1)]).unwrap();
        assert_eq!(gutman_index(&p2), r(1));
    }

    #[test]
    fn zero_weight_vertices_contribute_nothing() {
        let t = WeightedTree::new(ints(&[0, 2, 3]), &[(0, 1), (0, 2)]).unwrap();
        assert_eq!(both(&t), r(12));
    }

    #[test]
    fn rational_weights_stay_exact() {
        let t = WeightedTree::new(
            vec![Rational::new(1, 3), Rational::new(1, 2), Rational::new(5, 7)],
            &[(0, 1), (1, 2)],
        )
        .unwrap();
        assert_eq!(both(&t), hand_oracle(&t));
        assert_eq!(both(&t), vwwi_rooted(&root_tree(&t, 1).unwrap()));
    }
}
