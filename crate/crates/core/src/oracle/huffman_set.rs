//! Every Huffman tree of a tuple, by branching over all tie choices.
//!
//! Independent of the f-vector characterization used by `is_huffman`: here a
//! tree is a Huffman tree because some sequence of minimal stars produces it.

use std::collections::BTreeSet;

use crate::tuple::{GeneratingTuple, VertexId, Weight};

use super::OracleError;
use crate::huffman::HuffmanError;

pub type EdgeList = Vec<(VertexId, VertexId)>;

/// Canonical edge lists of all Huffman trees of `tuple`. Stops exploring once
/// `limit` distinct trees were found and returns `None` in that case.
pub fn all_huffman_trees(tuple: &GeneratingTuple, limit: usize) -> Result<Option<BTreeSet<EdgeList>>, OracleError> {
    let mut found = BTreeSet::new();
    if tuple.internal_count() == 0 {
        found.insert(vec![(0, 1)]);
        return Ok(Some(found));
    }
    let pool: Vec<(Weight, VertexId)> = tuple.pendents().iter().map(|&v| (tuple.weight(v).clone(), v)).collect();
    let mut search = Search {
        tuple,
        limit,
        found,
        overflow: false,
    };
    search.step(tuple.internals().to_vec(), pool, Vec::new())?;
    Ok((!search.overflow).then_some(search.found))
}

struct Search<'a> {
    tuple: &'a GeneratingTuple,
    limit: usize,
    found: BTreeSet<EdgeList>,
    overflow: bool,
}

impl Search<'_> {
    fn step(
        &mut self,
        centers: Vec<VertexId>,
        mut pool: Vec<(Weight, VertexId)>,
        edges: EdgeList,
    ) -> Result<(), OracleError> {
        if self.overflow {
            return Ok(());
        }
        let t = self.tuple;
        if centers.len() == 1 {
            let m = centers[0];
            if pool.len() != t.degree(m) {
                return Err(HuffmanError::NotEnoughPendents {
                    center: m,
                    needed: t.degree(m),
                    available: pool.len(),
                }
                .into());
            }
            let mut edges = edges;
            edges.extend(pool.iter().map(|&(_, v)| (v.min(m), v.max(m))));
            edges.sort_unstable();
            self.found.insert(edges);
            if self.found.len() > self.limit {
                self.overflow = true;
            }
            return Ok(());
        }

        let best = centers
            .iter()
            .map(|&m| (t.weight(m), t.degree(m)))
            .min()
            .expect("centers non-empty");
        let candidates: Vec<VertexId> = centers
            .iter()
            .copied()
            .filter(|&m| (t.weight(m), t.degree(m)) == best)
            .collect();

        pool.sort();
        for m in candidates {
            let need = t.degree(m) - 1;
            if pool.len() < need {
                return Err(HuffmanError::NotEnoughPendents {
                    center: m,
                    needed: need,
                    available: pool.len(),
                }
                .into());
            }
            let threshold = &pool[need - 1].0;
            let forced: Vec<usize> = (0..pool.len()).filter(|&i| &pool[i].0 < threshold).collect();
            let ties: Vec<usize> = (0..pool.len()).filter(|&i| &pool[i].0 == threshold).collect();
            let rest_centers: Vec<VertexId> = centers.iter().copied().filter(|&c| c != m).collect();
            for chosen in combinations(&ties, need - forced.len()) {
                let leaves: BTreeSet<usize> = forced.iter().chain(&chosen).copied().collect();
                let mut total = t.weight(m).clone();
                let mut next_edges = edges.clone();
                let mut next_pool = Vec::with_capacity(pool.len() - need + 1);
                for (i, (w, v)) in pool.iter().enumerate() {
                    if leaves.contains(&i) {
                        total += w;
                        next_edges.push(((*v).min(m), (*v).max(m)));
                    } else {
                        next_pool.push((w.clone(), *v));
                    }
                }
                next_pool.push((total, m));
                self.step(rest_centers.clone(), next_pool, next_edges)?;
            }
        }
        Ok(())
    }
}

fn combinations(items: &[usize], k: usize) -> Vec<Vec<usize>> {
    fn go(items: &[usize], k: usize, start: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..items.len() {
            if items.len() - i < k - cur.len() {
                break;
            }
            cur.push(items[i]);
            go(items, k, i + 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(items, k, 0, &mut Vec::new(), &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::huffman::build_huffman;
    use crate::tree::tests::ints;

    #[test]
    fn worked_example_has_one_huffman_tree() {
        let t = GeneratingTuple::from_parts(ints(&[1, 1, 1, 2, 3]), vec![3, 2, 1, 1, 1]).unwrap();
        let set = all_huffman_trees(&t, 100).unwrap().unwrap();
        assert_eq!(set.len(), 1);
        assert!(set.contains(&build_huffman(&t).unwrap().tree.edges()));
    }

    #[test]
    fn unit_ties_branch() {
        // two degree-3 centers, four unit pendents: either center may go first
        // and take any two pendents, which covers the whole class of 6 trees
        let t = GeneratingTuple::from_parts(ints(&[1, 1, 1, 1, 1, 1]), vec![3, 3, 1, 1, 1, 1]).unwrap();
        let set = all_huffman_trees(&t, 100).unwrap().unwrap();
        assert_eq!(set.len(), 6);
        assert!(set.contains(&build_huffman(&t).unwrap().tree.edges()));
        assert!(all_huffman_trees(&t, 5).unwrap().is_none());
    }

    #[test]
    fn combinations_count() {
        assert_eq!(combinations(&[1, 2, 3, 4], 2).len(), 6);
        assert_eq!(combinations(&[1, 2], 0), vec![Vec::<usize>::new()]);
    }
}
