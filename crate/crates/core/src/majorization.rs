//! Weak majorization on non-negative vectors.
//!
//! Convention: `x` weakly majorizes `y` when every prefix sum of `x` sorted
//! ascending is at most the matching prefix sum of `y` sorted ascending. This
//! is the reverse of the usual textbook direction, where larger prefix sums
//! majorize. Majorization is strict when the sorted vectors differ.

use thiserror::Error;

use crate::indices::{chi, IndexError, IndexValue};
use crate::rational::Rational;
use crate::tree::FVector;
use crate::tuple::Weight;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum MajorizationOrder {
    /// The left vector strictly weakly majorizes the right one.
    LeftMajorizesStrictly,
    /// The right vector strictly weakly majorizes the left one.
    RightMajorizesStrictly,
    /// Identical after sorting.
    EqualSorted,
    Incomparable,
}

impl MajorizationOrder {
    /// Left weakly majorizes right, strictly or not.
    pub fn left_majorizes(self) -> bool {
        matches!(self, Self::LeftMajorizesStrictly | Self::EqualSorted)
    }

    pub fn right_majorizes(self) -> bool {
        matches!(self, Self::RightMajorizesStrictly | Self::EqualSorted)
    }

    pub fn reversed(self) -> Self {
        match self {
            Self::LeftMajorizesStrictly => Self::RightMajorizesStrictly,
            Self::RightMajorizesStrictly => Self::LeftMajorizesStrictly,
            other => other,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MajorizationError {
    #[error("vectors have different lengths: {0} and {1}")]
    LengthMismatch(usize, usize),
    #[error("negative entry {0}")]
    NegativeEntry(Rational),
}

pub fn weak_compare(x: &[Weight], y: &[Weight]) -> Result<MajorizationOrder, MajorizationError> {
    if x.len() != y.len() {
        return Err(MajorizationError::LengthMismatch(x.len(), y.len()));
    }
    if let Some(neg) = x.iter().chain(y).find(|v| v.is_negative()) {
        return Err(MajorizationError::NegativeEntry(neg.clone()));
    }
    let mut xs = x.to_vec();
    let mut ys = y.to_vec();
    xs.sort_unstable();
    ys.sort_unstable();
    if xs == ys {
        return Ok(MajorizationOrder::EqualSorted);
    }
    let (mut px, mut py) = (Rational::zero(), Rational::zero());
    let (mut left, mut right) = (true, true);
    for (a, b) in xs.iter().zip(&ys) {
        px += a;
        py += b;
        left &= px <= py;
        right &= py <= px;
        if !left && !right {
            return Ok(MajorizationOrder::Incomparable);
        }
    }
    Ok(if left {
        MajorizationOrder::LeftMajorizesStrictly
    } else {
        MajorizationOrder::RightMajorizesStrictly
    })
}

/// [`weak_compare`] on two f-vectors.
pub fn compare_fvectors(x: &FVector, y: &FVector) -> Result<MajorizationOrder, MajorizationError> {
    weak_compare(x.values(), y.values())
}

/// `sum_i chi(f_i)` with `chi(x) = x (total - x)`.
pub fn sum_chi(fvec: &[Weight], total: &Weight) -> Result<IndexValue, IndexError> {
    fvec.iter().try_fold(Rational::zero(), |acc, f| Ok(&acc + &chi(f, total)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tree::tests::ints;
    use proptest::prelude::*;
    use MajorizationOrder::*;

    fn cmp(x: &[i64], y: &[i64]) -> MajorizationOrder {
        weak_compare(&ints(x), &ints(y)).unwrap()
    }

    #[test]
    fn compare_examples() {
        assert_eq!(cmp(&[1, 3], &[2, 2]), LeftMajorizesStrictly);
        assert_eq!(cmp(&[2, 2], &[1, 3]), RightMajorizesStrictly);
        assert_eq!(cmp(&[5, 7], &[7, 5]), EqualSorted);
        assert_eq!(cmp(&[1, 4], &[2, 2]), Incomparable);
        assert_eq!(cmp(&[], &[]), EqualSorted);
        assert_eq!(
            weak_compare(&ints(&[1]), &ints(&[1, 2])),
            Err(MajorizationError::LengthMismatch(1, 2))
        );
        assert!(matches!(
            weak_compare(&ints(&[-1]), &ints(&[1])),
            Err(MajorizationError::NegativeEntry(_))
        ));
    }

    #[test]
    fn sum_chi_examples() {
        let r = Rational::from_integer;
        assert_eq!(sum_chi(&ints(&[2]), &r(8)).unwrap(), r(12));
        assert_eq!(sum_chi(&[], &r(8)).unwrap(), r(0));
        assert_eq!(sum_chi(&ints(&[1, 2, 1]), &r(4)).unwrap(), r(10));
        assert!(sum_chi(&ints(&[9]), &r(8)).is_err());
    }

    fn vec_pair(len: usize) -> impl Strategy<Value = (Vec<i64>, Vec<i64>)> {
        (
            prop::collection::vec(0i64..12, len),
            prop::collection::vec(0i64..12, len),
        )
    }

    fn vectors() -> impl Strategy<Value = (Vec<i64>, Vec<i64>, Vec<i64>)> {
        (0usize..6).prop_flat_map(|len| {
            (
                prop::collection::vec(0i64..10, len),
                prop::collection::vec(0i64..10, len),
                prop::collection::vec(0i64..10, len),
            )
        })
    }

    proptest! {
        #[test]
        fn reflexive_and_antisymmetric((x, y) in (0usize..7).prop_flat_map(vec_pair)) {
            prop_assert_eq!(cmp(&x, &x), EqualSorted);
            prop_assert_eq!(cmp(&x, &y), cmp(&y, &x).reversed());
            let mut shuffled = x.clone();
            shuffled.reverse();
            prop_assert_eq!(cmp(&x, &shuffled), EqualSorted);
        }

        #[test]
        fn transitive((x, y, z) in vectors()) {
            if cmp(&x, &y).left_majorizes() && cmp(&y, &z).left_majorizes() {
                prop_assert!(cmp(&x, &z).left_majorizes());
            }
        }

        #[test]
        fn concatenation_preserves_order(
            (a, b) in (0usize..5).prop_flat_map(vec_pair),
            (c, d) in (0usize..5).prop_flat_map(vec_pair),
        ) {
            // y majorizes x and y' majorizes x'  =>  (y, y') majorizes (x, x')
            let first = cmp(&b, &a);
            let second = cmp(&d, &c);
            if first.left_majorizes() && second.left_majorizes() {
                let joined = cmp(&[b.clone(), d.clone()].concat(), &[a.clone(), c.clone()].concat());
                prop_assert!(joined.left_majorizes());
                if second == LeftMajorizesStrictly {
                    prop_assert_eq!(joined, LeftMajorizesStrictly);
                }
            }
        }

        #[test]
        fn concave_sum_follows_majorization(
            (x, y) in (1usize..6).prop_flat_map(|len| (
                prop::collection::vec(0i64..=10, len),
                prop::collection::vec(0i64..=10, len),
            )),
        ) {
            // entries in [0, total/2] where chi is increasing and concave
            let total = Rational::from_integer(20);
            let order = cmp(&x, &y);
            let sx = sum_chi(&ints(&x), &total).unwrap();
            let sy = sum_chi(&ints(&y), &total).unwrap();
            match order {
                LeftMajorizesStrictly => prop_assert!(sx < sy),
                RightMajorizesStrictly => prop_assert!(sy < sx),
                EqualSorted => prop_assert_eq!(sx, sy),
                Incomparable => {}
            }
        }

        #[test]
        fn shifting_mass_forward_majorizes(
            (head, tail, b) in (0usize..4).prop_flat_map(|k| (k.max(1)..6).prop_flat_map(move |l| (
                prop::collection::vec(0i64..20, k),
                prop::collection::vec(0i64..20, l),
                1i64..6,
            ))),
        ) {
            // x = (x_1..x_k, y_1..y_l) with x_i >= y_i, tail entries >= b;
            // adding b to the head and removing it from the tail majorizes x.
            let k = head.len();
            let tail: Vec<i64> = tail.iter().map(|t| t + b).collect();
            let head: Vec<i64> = head.iter().zip(&tail).map(|(h, t)| h + t).collect();
            let x = [head.clone(), tail.clone()].concat();
            let shifted: Vec<i64> = head.iter().map(|h| h + b)
                .chain(tail.iter().map(|t| t - b))
                .collect();
            prop_assert!(k <= tail.len());
            prop_assert_eq!(cmp(&shifted, &x), LeftMajorizesStrictly);
        }
    }
}
