//! Random tuples and trees for property checks and searches.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::rational::Rational;
use crate::tree::WeightedTree;
use crate::tuple::{is_degree_monotone, GeneratingTuple, Weight};

use super::prufer::{decode, first_sequence};

/// How internal weights relate to internal degrees.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WeightOrder {
    /// Degree-monotone, pendents strictly positive.
    Monotone,
    /// Some internal vertex of lower degree is strictly heavier than one of
    /// higher degree; pendents strictly positive.
    Inverted,
    /// No constraint beyond non-negativity.
    Any,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TupleShape {
    pub min_vertices: usize,
    pub max_vertices: usize,
    /// Weights are drawn from `[0, max_weight]`.
    pub max_weight: i64,
    /// Largest denominator of a drawn weight; 1 gives integer weights.
    pub max_denominator: i64,
    pub order: WeightOrder,
}

/// A uniformly random degree sequence on `n >= 2` vertices: every vertex
/// starts at degree one and `n - 2` extra units are spread at random.
pub fn random_degrees<R: Rng + ?Sized>(rng: &mut R, n: usize) -> Vec<usize> {
    assert!(n >= 2);
    let mut degrees = vec![1; n];
    for _ in 0..n - 2 {
        degrees[rng.gen_range(0..n)] += 1;
    }
    degrees
}

/// `p / q` in `[lo, max]` with `1 <= q <= max_denominator`.
pub fn random_weight<R: Rng + ?Sized>(rng: &mut R, lo: i64, max: i64, max_denominator: i64) -> Weight {
    let q = rng.gen_range(1..=max_denominator.max(1));
    let p = rng.gen_range(lo * q..=max * q);
    Rational::new(p, q)
}

/// A random tuple of the requested shape, or `None` when the drawn degree
/// sequence admits no weights of the requested order (an inversion needs two
/// distinct internal degrees).
pub fn random_tuple<R: Rng + ?Sized>(rng: &mut R, shape: &TupleShape) -> Option<GeneratingTuple> {
    let n = rng.gen_range(shape.min_vertices.max(2)..=shape.max_vertices.max(2));
    let degrees = random_degrees(rng, n);
    let draw = |rng: &mut R, lo: i64| random_weight(rng, lo, shape.max_weight, shape.max_denominator);

    let mut internals: Vec<usize> = (0..n).filter(|&v| degrees[v] > 1).collect();
    let mut weights = vec![Rational::zero(); n];
    match shape.order {
        WeightOrder::Any => {
            for w in weights.iter_mut() {
                *w = draw(rng, 0);
            }
        }
        WeightOrder::Monotone | WeightOrder::Inverted => {
            let positive_lo = i64::from(shape.max_weight >= 1);
            for v in 0..n {
                if degrees[v] == 1 {
                    weights[v] = loop {
                        let w = draw(rng, positive_lo);
                        if w.is_positive() {
                            break w;
                        }
                    };
                }
            }
            let mut drawn: Vec<Weight> = internals.iter().map(|_| draw(rng, 0)).collect();
            drawn.sort();
            internals.shuffle(rng);
            internals.sort_by_key(|&m| degrees[m]);
            if shape.order == WeightOrder::Inverted {
                let lowest = internals.first().map(|&m| degrees[m]);
                let highest = internals.last().map(|&m| degrees[m]);
                if lowest == highest {
                    return None;
                }
                drawn.reverse();
                if drawn.first() == drawn.last() {
                    // all equal: lift the weight given to the lowest degree
                    drawn[0] = &drawn[0] + &Rational::one();
                }
            }
            for (&m, w) in internals.iter().zip(drawn) {
                weights[m] = w;
            }
        }
    }
    let tuple = GeneratingTuple::from_parts(weights, degrees).expect("generated degrees satisfy the identity");
    match shape.order {
        WeightOrder::Monotone => debug_assert!(is_degree_monotone(&tuple)),
        WeightOrder::Inverted => debug_assert!(!is_degree_monotone(&tuple)),
        WeightOrder::Any => {}
    }
    Some(tuple)
}

/// A uniformly random labeled tree on `n >= 2` vertices with weights drawn
/// from `[0, max_weight]`.
pub fn random_tree<R: Rng + ?Sized>(rng: &mut R, n: usize, max_weight: i64, max_denominator: i64) -> WeightedTree {
    assert!(n >= 2);
    let seq: Vec<usize> = (0..n - 2).map(|_| rng.gen_range(0..n)).collect();
    let edges = decode(&seq, n);
    let weights = (0..n).map(|_| random_weight(rng, 0, max_weight, max_denominator)).collect();
    WeightedTree::new(weights, &edges).expect("decoded sequences are trees")
}

/// A uniformly random member of the tuple's tree class.
pub fn random_tree_in_class<R: Rng + ?Sized>(rng: &mut R, tuple: &GeneratingTuple) -> WeightedTree {
    let mut seq = first_sequence(tuple.degrees());
    seq.shuffle(rng);
    WeightedTree::from_edges_unchecked(tuple.weights().to_vec(), &decode(&seq, tuple.len()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn shape(order: WeightOrder) -> TupleShape {
        TupleShape {
            min_vertices: 2,
            max_vertices: 12,
            max_weight: 20,
            max_denominator: 4,
            order,
        }
    }

    #[test]
    fn generated_tuples_have_the_requested_order() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let mut inverted = 0;
        for _ in 0..500 {
            let t = random_tuple(&mut rng, &shape(WeightOrder::Monotone)).unwrap();
            assert!(is_degree_monotone(&t));
            if let Some(t) = random_tuple(&mut rng, &shape(WeightOrder::Inverted)) {
                assert!(!is_degree_monotone(&t));
                inverted += 1;
            }
            let w = random_weight(&mut rng, 0, 20, 4);
            assert!(!w.is_negative() && w <= Rational::from_integer(20) && w.denom() <= 4.into());
        }
        assert!(inverted > 100);
    }

    #[test]
    fn random_trees_are_valid() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for n in 2..40 {
            let t = random_tree(&mut rng, n, 20, 4);
            assert_eq!(t.len(), n);
            assert_eq!(t.edges().len(), n - 1);
        }
        let shape = shape(WeightOrder::Any);
        for _ in 0..50 {
            let tuple = random_tuple(&mut rng, &shape).unwrap();
            let tree = random_tree_in_class(&mut rng, &tuple);
            assert!(crate::tree::tree_matches_tuple(&tree, &tuple));
        }
    }
}
