//! JSON interchange documents for tuples and trees.
//!
//! Weights travel as strings (`"3"`, `"3/2"`, `"0.5"`) so values stay exact.
//! Emitted documents always use the canonical `p/q` rendering.

use std::collections::HashMap;
use std::fmt;

use serde::de::{self, Deserializer, Visitor};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use wh_core::{GeneratingTuple, HuffmanResult, RawVertex, Rational, TreeError, TupleError, WeightedTree};

pub const FORMAT_VERSION: &str = "1";

#[derive(Debug, Error)]
pub enum DocumentError {
    #[error("malformed document: {0}")]
    Json(#[from] serde_json::Error),
    #[error("unsupported document version {0:?} (expected \"1\")")]
    Version(String),
    #[error("vertex {id}: invalid weight {text:?}: {reason}")]
    Weight { id: i64, text: String, reason: String },
    #[error(transparent)]
    Tuple(#[from] TupleError),
    #[error("invalid tree: {0}")]
    Tree(#[from] TreeError),
    #[error("invalid tree: duplicate vertex id {0}")]
    DuplicateVertex(i64),
    #[error("invalid tree: edge references unknown vertex {0}")]
    UnknownVertex(i64),
    #[error("invalid edge list line {line}: {text:?}")]
    EdgeLine { line: usize, text: String },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TupleDocument {
    pub version: String,
    pub vertices: Vec<TupleVertex>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TupleVertex {
    pub id: i64,
    #[serde(deserialize_with = "weight_text")]
    pub weight: String,
    pub degree: i64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TreeDocument {
    pub version: String,
    pub vertices: Vec<TreeVertex>,
    pub edges: Vec<[i64; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub metadata: Option<TreeMetadata>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TreeVertex {
    pub id: i64,
    #[serde(deserialize_with = "weight_text")]
    pub weight: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TreeMetadata {
    pub vwwi: String,
    pub fvec: Vec<String>,
    pub is_huffman: bool,
    pub proper_root: i64,
    pub optimality_guaranteed: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub star_sequence: Option<Vec<StarRecord>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StarRecord {
    pub center: i64,
    pub leaves: Vec<i64>,
    pub total_weight: String,
}

/// Accepts a weight given either as a string or as a JSON integer. Floats
/// are rejected since they are not exact.
fn weight_text<'de, D: Deserializer<'de>>(deserializer: D) -> Result<String, D::Error> {
    struct WeightVisitor;

    impl Visitor<'_> for WeightVisitor {
        type Value = String;

        fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
            f.write_str("a weight string such as \"3/2\" or an integer")
        }

        fn visit_str<E: de::Error>(self, v: &str) -> Result<String, E> {
            Ok(v.to_owned())
        }

        fn visit_u64<E: de::Error>(self, v: u64) -> Result<String, E> {
            Ok(v.to_string())
        }

        fn visit_i64<E: de::Error>(self, v: i64) -> Result<String, E> {
            Ok(v.to_string())
        }
    }

    deserializer.deserialize_any(WeightVisitor)
}

fn parse_weight(id: i64, text: &str) -> Result<Rational, DocumentError> {
    text.parse().map_err(|e: wh_core::rational::ParseRationalError| DocumentError::Weight {
        id,
        text: text.to_owned(),
        reason: e.to_string(),
    })
}

fn check_version(version: &str) -> Result<(), DocumentError> {
    if version == FORMAT_VERSION {
        Ok(())
    } else {
        Err(DocumentError::Version(version.to_owned()))
    }
}

impl TupleDocument {
    pub fn parse(text: &str) -> Result<Self, DocumentError> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn from_tuple(tuple: &GeneratingTuple) -> Self {
        TupleDocument {
            version: FORMAT_VERSION.into(),
            vertices: (0..tuple.len())
                .map(|v| TupleVertex {
                    id: tuple.label(v),
                    weight: tuple.weight(v).to_string(),
                    degree: tuple.degree(v) as i64,
                })
                .collect(),
        }
    }

    pub fn to_tuple(&self) -> Result<GeneratingTuple, DocumentError> {
        check_version(&self.version)?;
        let raw = self
            .vertices
            .iter()
            .map(|v| Ok(RawVertex::new(v.id, parse_weight(v.id, &v.weight)?, v.degree)))
            .collect::<Result<Vec<_>, DocumentError>>()?;
        Ok(wh_core::validate_tuple(&raw)?)
    }
}

/// A parsed tree together with the external id of each dense vertex.
pub struct LabeledTree {
    pub tree: WeightedTree,
    pub labels: Vec<i64>,
}

impl TreeDocument {
    pub fn parse(text: &str) -> Result<Self, DocumentError> {
        Ok(serde_json::from_str(text)?)
    }

    /// Parses either a JSON tree document or a flat edge list of `u v` lines
    /// (unit weights, `#` starts a comment).
    pub fn parse_any(text: &str) -> Result<Self, DocumentError> {
        if text.trim_start().starts_with('{') {
            Self::parse(text)
        } else {
            Self::parse_edge_list(text)
        }
    }

    fn parse_edge_list(text: &str) -> Result<Self, DocumentError> {
        let mut edges = Vec::new();
        let mut ids = Vec::new();
        for (i, line) in text.lines().enumerate() {
            let content = line.split('#').next().unwrap_or("").trim();
            if content.is_empty() {
                continue;
            }
            let bad = || DocumentError::EdgeLine {
                line: i + 1,
                text: line.to_owned(),
            };
            let parts: Vec<&str> = content.split_whitespace().collect();
            let [a, b] = parts[..] else { return Err(bad()) };
            let (a, b): (i64, i64) = (a.parse().map_err(|_| bad())?, b.parse().map_err(|_| bad())?);
            edges.push([a, b]);
            ids.extend([a, b]);
        }
        ids.sort_unstable();
        ids.dedup();
        Ok(TreeDocument {
            version: FORMAT_VERSION.into(),
            vertices: ids.into_iter().map(|id| TreeVertex { id, weight: "1".into() }).collect(),
            edges,
            metadata: None,
        })
    }

    pub fn from_tree(tree: &WeightedTree, labels: &[i64]) -> Self {
        let mut edges: Vec<[i64; 2]> = tree
            .edges()
            .into_iter()
            .map(|(u, v)| {
                let (a, b) = (labels[u], labels[v]);
                [a.min(b), a.max(b)]
            })
            .collect();
        edges.sort_unstable();
        TreeDocument {
            version: FORMAT_VERSION.into(),
            vertices: (0..tree.len())
                .map(|v| TreeVertex {
                    id: labels[v],
                    weight: tree.weight(v).to_string(),
                })
                .collect(),
            edges,
            metadata: None,
        }
    }

    pub fn from_huffman(result: &HuffmanResult, tuple: &GeneratingTuple, trace: bool) -> Self {
        let labels = tuple.labels();
        let mut doc = Self::from_tree(&result.tree, labels);
        let star_sequence = trace.then(|| {
            result
                .sequence
                .stars()
                .iter()
                .map(|s| StarRecord {
                    center: labels[s.center],
                    leaves: s.leaves.iter().map(|&v| labels[v]).collect(),
                    total_weight: s.total_weight.to_string(),
                })
                .collect()
        });
        doc.metadata = Some(TreeMetadata {
            vwwi: result.vwwi.to_string(),
            fvec: result.fvec.values().iter().map(ToString::to_string).collect(),
            is_huffman: true,
            proper_root: labels[wh_core::proper_root(&result.tree)],
            optimality_guaranteed: result.optimality_guaranteed,
            star_sequence,
        });
        doc
    }

    pub fn to_tree(&self) -> Result<LabeledTree, DocumentError> {
        check_version(&self.version)?;
        let mut order: Vec<&TreeVertex> = self.vertices.iter().collect();
        order.sort_by_key(|v| v.id);
        if let Some(pair) = order.windows(2).find(|w| w[0].id == w[1].id) {
            return Err(DocumentError::DuplicateVertex(pair[0].id));
        }
        let labels: Vec<i64> = order.iter().map(|v| v.id).collect();
        let index: HashMap<i64, usize> = labels.iter().enumerate().map(|(i, &id)| (id, i)).collect();
        let weights = order
            .iter()
            .map(|v| parse_weight(v.id, &v.weight))
            .collect::<Result<Vec<_>, _>>()?;
        let lookup = |id: i64| index.get(&id).copied().ok_or(DocumentError::UnknownVertex(id));
        let edges = self
            .edges
            .iter()
            .map(|&[a, b]| Ok((lookup(a)?, lookup(b)?)))
            .collect::<Result<Vec<_>, DocumentError>>()?;
        let tree = WeightedTree::new(weights, &edges)?;
        Ok(LabeledTree { tree, labels })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const WORKED: &str = r#"{"version":"1","vertices":[
        {"id":0,"weight":"1","degree":3},{"id":1,"weight":"1","degree":2},
        {"id":2,"weight":"1","degree":1},{"id":3,"weight":2,"degree":1},
        {"id":4,"weight":"3","degree":1}]}"#;

    #[test]
    fn tuple_document_round_trips() {
        let doc = TupleDocument::parse(WORKED).unwrap();
        let tuple = doc.to_tuple().unwrap();
        assert_eq!(tuple.total_weight(), &Rational::from_integer(8));
        let emitted = TupleDocument::from_tuple(&tuple);
        let text = serde_json::to_string(&emitted).unwrap();
        assert_eq!(TupleDocument::parse(&text).unwrap(), emitted);
        assert_eq!(serde_json::to_string(&TupleDocument::parse(&text).unwrap()).unwrap(), text);
    }

    #[test]
    fn weights_accept_decimals_and_reject_floats() {
        let doc = TupleDocument::parse(&WORKED.replace(r#""weight":"3""#, r#""weight":"0.75""#)).unwrap();
        assert_eq!(doc.to_tuple().unwrap().weight(4), &Rational::new(3, 4));
        assert!(TupleDocument::parse(&WORKED.replace(r#""weight":2,"#, r#""weight":2.5,"#)).is_err());
        let bad = TupleDocument::parse(&WORKED.replace(r#""weight":"3""#, r#""weight":"x""#)).unwrap();
        assert!(matches!(bad.to_tuple(), Err(DocumentError::Weight { id: 4, .. })));
    }

    #[test]
    fn tree_document_round_trips() {
        let tuple = TupleDocument::parse(WORKED).unwrap().to_tuple().unwrap();
        let result = wh_core::build_huffman(&tuple).unwrap();
        let doc = TreeDocument::from_huffman(&result, &tuple, true);
        let text = serde_json::to_string_pretty(&doc).unwrap();
        let parsed = TreeDocument::parse(&text).unwrap();
        assert_eq!(parsed, doc);
        assert_eq!(serde_json::to_string_pretty(&parsed).unwrap(), text);
        let tree = parsed.to_tree().unwrap();
        assert_eq!(tree.tree, result.tree);
        assert_eq!(doc.metadata.unwrap().star_sequence.unwrap().len(), 2);
    }

    #[test]
    fn sparse_ids_are_kept_as_labels() {
        let doc = TreeDocument::parse_any("10 30\n30 20 # middle\n").unwrap();
        let parsed = doc.to_tree().unwrap();
        assert_eq!(parsed.labels, vec![10, 20, 30]);
        let back = TreeDocument::from_tree(&parsed.tree, &parsed.labels);
        assert_eq!(back.edges, vec![[10, 30], [20, 30]]);
    }

    #[test]
    fn malformed_trees_are_rejected() {
        assert!(matches!(
            TreeDocument::parse_any("0 1\n1 2\n2 0\n").unwrap().to_tree(),
            Err(DocumentError::Tree(_))
        ));
        assert!(matches!(
            TreeDocument::parse_any("0 1 2\n"),
            Err(DocumentError::EdgeLine { line: 1, .. })
        ));
    }
}
