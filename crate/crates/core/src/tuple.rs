//! Generating tuples: vertex weights and prescribed degrees.

use std::collections::HashSet;

use thiserror::Error;

use crate::rational::Rational;

/// Dense vertex index, `0..|V|`.
pub type VertexId = usize;

/// Vertex weights are non-negative exact rationals.
pub type Weight = Rational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TupleError {
    #[error("degree identity violated: sum={sum}, required={required}")]
    DegreeIdentityViolated { sum: u64, required: u64 },
    #[error("too few vertices: {0} (at least 2 required)")]
    TooFewVertices(usize),
    #[error("non-positive degree {degree} for vertex {id}")]
    NonPositiveDegree { id: i64, degree: i64 },
    #[error("negative weight {weight} for vertex {id}")]
    NegativeWeight { id: i64, weight: Rational },
    #[error("duplicate vertex id {0}")]
    DuplicateId(i64),
}

/// One raw input row: external id, weight, degree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RawVertex {
    pub id: i64,
    pub weight: Rational,
    pub degree: i64,
}

impl RawVertex {
    pub fn new(id: i64, weight: impl Into<Rational>, degree: i64) -> Self {
        RawVertex {
            id,
            weight: weight.into(),
            degree,
        }
    }
}

/// A validated weight/degree assignment whose degrees satisfy
/// `sum d(v) = 2(|V| - 1)`, so that at least one tree realizes it.
///
/// Vertices are stored in ascending order of their external label and
/// addressed by dense position; `label(v)` recovers the input id.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeneratingTuple {
    labels: Vec<i64>,
    weights: Vec<Weight>,
    degrees: Vec<usize>,
    pendents: Vec<VertexId>,
    internals: Vec<VertexId>,
    total: Weight,
}

/// Validates raw rows into a [`GeneratingTuple`], relabeling ids densely in
/// ascending order of the input ids.
pub fn validate_tuple(raw: &[RawVertex]) -> Result<GeneratingTuple, TupleError> {
    let mut seen = HashSet::with_capacity(raw.len());
    for row in raw {
        if !seen.insert(row.id) {
            return Err(TupleError::DuplicateId(row.id));
        }
        if row.degree < 1 {
            return Err(TupleError::NonPositiveDegree {
                id: row.id,
                degree: row.degree,
            });
        }
        if row.weight.is_negative() {
            return Err(TupleError::NegativeWeight {
                id: row.id,
                weight: row.weight.clone(),
            });
        }
    }
    if raw.len() < 2 {
        return Err(TupleError::TooFewVertices(raw.len()));
    }
    let sum: u64 = raw.iter().map(|r| r.degree as u64).sum();
    let required = 2 * (raw.len() as u64 - 1);
    if sum != required {
        return Err(TupleError::DegreeIdentityViolated { sum, required });
    }

    let mut order: Vec<usize> = (0..raw.len()).collect();
    order.sort_unstable_by_key(|&i| raw[i].id);
    let labels = order.iter().map(|&i| raw[i].id).collect();
    let weights = order.iter().map(|&i| raw[i].weight.clone()).collect();
    let degrees = order.iter().map(|&i| raw[i].degree as usize).collect();
    Ok(GeneratingTuple::assemble(labels, weights, degrees))
}

impl GeneratingTuple {
    fn assemble(labels: Vec<i64>, weights: Vec<Weight>, degrees: Vec<usize>) -> Self {
        let (pendents, internals): (Vec<VertexId>, Vec<VertexId>) =
            (0..degrees.len()).partition(|&v| degrees[v] == 1);
        let total = weights.iter().sum();
        GeneratingTuple {
            labels,
            weights,
            degrees,
            pendents,
            internals,
            total,
        }
    }

    /// Builds a tuple whose labels are the dense ids themselves.
    pub fn from_parts(weights: Vec<Weight>, degrees: Vec<usize>) -> Result<Self, TupleError> {
        let raw: Vec<RawVertex> = weights
            .into_iter()
            .zip(degrees)
            .enumerate()
            .map(|(i, (w, d))| RawVertex::new(i as i64, w, d as i64))
            .collect();
        validate_tuple(&raw)
    }

    /// Same as [`GeneratingTuple::from_parts`] with explicit labels, which must
    /// be strictly ascending.
    pub fn from_labeled_parts(
        labels: Vec<i64>,
        weights: Vec<Weight>,
        degrees: Vec<usize>,
    ) -> Result<Self, TupleError> {
        assert!(labels.windows(2).all(|w| w[0] < w[1]), "labels must ascend");
        let raw: Vec<RawVertex> = labels
            .iter()
            .zip(weights.iter().zip(&degrees))
            .map(|(&id, (w, &d))| RawVertex::new(id, w.clone(), d as i64))
            .collect();
        validate_tuple(&raw)
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    pub fn weight(&self, v: VertexId) -> &Weight {
        &self.weights[v]
    }

    pub fn degree(&self, v: VertexId) -> usize {
        self.degrees[v]
    }

    pub fn label(&self, v: VertexId) -> i64 {
        self.labels[v]
    }

    pub fn labels(&self) -> &[i64] {
        &self.labels
    }

    pub fn weights(&self) -> &[Weight] {
        &self.weights
    }

    pub fn degrees(&self) -> &[usize] {
        &self.degrees
    }

    /// Dense id of an external label.
    pub fn vertex_of_label(&self, label: i64) -> Option<VertexId> {
        self.labels.binary_search(&label).ok()
    }

    /// Pendent vertices (degree 1), ascending.
    pub fn pendents(&self) -> &[VertexId] {
        &self.pendents
    }

    /// Internal vertices (degree > 1), ascending.
    pub fn internals(&self) -> &[VertexId] {
        &self.internals
    }

    /// `n`, the number of pendent vertices.
    pub fn pendent_count(&self) -> usize {
        self.pendents.len()
    }

    /// `q`, the number of internal vertices.
    pub fn internal_count(&self) -> usize {
        self.internals.len()
    }

    /// Total weight of all vertices.
    pub fn total_weight(&self) -> &Weight {
        &self.total
    }

    /// The tuple with all vertices renamed by `perm` (new dense id of old
    /// vertex `v` is `perm[v]`); labels become the new dense ids.
    pub fn permuted(&self, perm: &[VertexId]) -> GeneratingTuple {
        assert_eq!(perm.len(), self.len());
        let mut weights = vec![Rational::zero(); self.len()];
        let mut degrees = vec![0; self.len()];
        for v in 0..self.len() {
            weights[perm[v]] = self.weights[v].clone();
            degrees[perm[v]] = self.degrees[v];
        }
        GeneratingTuple::assemble((0..self.len() as i64).collect(), weights, degrees)
    }

    pub fn to_raw(&self) -> Vec<RawVertex> {
        (0..self.len())
            .map(|v| RawVertex::new(self.labels[v], self.weights[v].clone(), self.degrees[v] as i64))
            .collect()
    }
}

/// True when, among internal vertices, a strictly smaller degree never carries
/// a strictly larger weight, and every pendent vertex has positive weight.
pub fn is_degree_monotone(tuple: &GeneratingTuple) -> bool {
    if tuple.pendents().iter().any(|&w| !tuple.weight(w).is_positive()) {
        return false;
    }
    // Sort internals by degree; the heaviest vertex of every smaller degree
    // class must not exceed the lightest vertex of any larger class.
    let mut internals: Vec<VertexId> = tuple.internals().to_vec();
    internals.sort_unstable_by_key(|&m| tuple.degree(m));
    let mut heaviest_below: Option<&Weight> = None;
    let mut i = 0;
    while i < internals.len() {
        let d = tuple.degree(internals[i]);
        let mut j = i;
        let mut class_min = tuple.weight(internals[i]);
        let mut class_max = tuple.weight(internals[i]);
        while j < internals.len() && tuple.degree(internals[j]) == d {
            let w = tuple.weight(internals[j]);
            class_min = class_min.min(w);
            class_max = class_max.max(w);
            j += 1;
        }
        if let Some(h) = heaviest_below {
            if h > class_min {
                return false;
            }
        }
        heaviest_below = Some(heaviest_below.map_or(class_max, |h| h.max(class_max)));
        i = j;
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    fn raw(rows: &[(i64, i64, i64)]) -> Vec<RawVertex> {
        rows.iter().map(|&(id, w, d)| RawVertex::new(id, w, d)).collect()
    }

    #[test]
    fn validates_worked_example() {
        let t = validate_tuple(&raw(&[(0, 1, 3), (1, 1, 2), (2, 1, 1), (3, 2, 1), (4, 3, 1)])).unwrap();
        assert_eq!(t.pendent_count(), 3);
        assert_eq!(t.internal_count(), 2);
        assert_eq!(*t.total_weight(), Rational::from_integer(8));
        assert_eq!(t.internals(), &[0, 1]);
        assert_eq!(t.pendents(), &[2, 3, 4]);
    }

    #[test]
    fn rejects_bad_degree_sum() {
        let err = validate_tuple(&raw(&[(0, 1, 1), (1, 1, 1), (2, 1, 1)])).unwrap_err();
        assert_eq!(err, TupleError::DegreeIdentityViolated { sum: 3, required: 4 });
        let err = validate_tuple(&raw(&[(0, 1, 3), (1, 1, 1), (2, 1, 1), (3, 1, 1), (4, 1, 1)]))
            .unwrap_err();
        assert_eq!(err.to_string(), "degree identity violated: sum=7, required=8");
    }

    #[test]
    fn rejects_single_vertex() {
        assert_eq!(
            validate_tuple(&raw(&[(0, 5, 1)])).unwrap_err(),
            TupleError::TooFewVertices(1)
        );
        assert_eq!(validate_tuple(&[]).unwrap_err(), TupleError::TooFewVertices(0));
    }

    #[test]
    fn rejects_bad_rows() {
        assert!(matches!(
            validate_tuple(&raw(&[(0, 1, 1), (0, 1, 1)])),
            Err(TupleError::DuplicateId(0))
        ));
        assert!(matches!(
            validate_tuple(&raw(&[(0, 1, 0), (1, 1, 2)])),
            Err(TupleError::NonPositiveDegree { id: 0, degree: 0 })
        ));
        assert!(matches!(
            validate_tuple(&raw(&[(0, -1, 1), (1, 1, 1)])),
            Err(TupleError::NegativeWeight { id: 0, .. })
        ));
    }

    #[test]
    fn sparse_ids_are_relabeled_in_ascending_order() {
        let t = validate_tuple(&raw(&[(40, 7, 1), (-3, 1, 2), (12, 2, 1)])).unwrap();
        assert_eq!(t.labels(), &[-3, 12, 40]);
        assert_eq!(t.degree(0), 2);
        assert_eq!(*t.weight(2), Rational::from_integer(7));
        assert_eq!(t.vertex_of_label(12), Some(1));
        assert_eq!(t.vertex_of_label(13), None);
    }

    #[test]
    fn two_vertex_tuple_has_no_internal_vertex() {
        let t = validate_tuple(&raw(&[(0, 1, 1), (1, 2, 1)])).unwrap();
        assert_eq!(t.internal_count(), 0);
        assert_eq!(t.pendent_count(), 2);
    }

    #[test]
    fn zero_weights_pass_validation() {
        let t = validate_tuple(&raw(&[(0, 0, 2), (1, 0, 1), (2, 1, 1)])).unwrap();
        assert!(!is_degree_monotone(&t));
    }

    #[test]
    fn degree_monotone_cases() {
        // internal (d=3, w=1), (d=2, w=1); pendents 1, 2, 3
        let t = validate_tuple(&raw(&[(0, 1, 3), (1, 1, 2), (2, 1, 1), (3, 2, 1), (4, 3, 1)])).unwrap();
        assert!(is_degree_monotone(&t));
        // internal (d=3, w=0), (d=2, w=10)
        let t = validate_tuple(&raw(&[(0, 0, 3), (1, 10, 2), (2, 1, 1), (3, 1, 1), (4, 1, 1)])).unwrap();
        assert!(!is_degree_monotone(&t));
        // pendent with zero weight
        let t = validate_tuple(&raw(&[(0, 1, 3), (1, 1, 2), (2, 0, 1), (3, 1, 1), (4, 1, 1)])).unwrap();
        assert!(!is_degree_monotone(&t));
        // equal degrees may carry any weights
        let t = validate_tuple(&raw(&[(0, 9, 2), (1, 1, 2), (2, 1, 1), (3, 1, 1)])).unwrap();
        assert!(is_degree_monotone(&t));
    }

    #[test]
    fn monotonicity_checks_non_adjacent_degree_classes() {
        // degrees 2, 3, 4 with weights 5, 5, 4: class 2 (max 5) > class 4 (min 4)
        let t = GeneratingTuple::from_parts(
            [5, 5, 4, 1, 1, 1, 1, 1]
                .iter()
                .map(|&w| Rational::from_integer(w))
                .collect(),
            vec![2, 3, 4, 1, 1, 1, 1, 1],
        )
        .unwrap();
        assert!(!is_degree_monotone(&t));
    }
}
