//! Vertex-weighted trees, their inward-directed rootings, and subordinate
//! group weights.

use std::collections::VecDeque;

use thiserror::Error;

use crate::rational::Rational;
use crate::tuple::{GeneratingTuple, VertexId, Weight};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TreeError {
    #[error("a tree needs at least 2 vertices, got {0}")]
    TooFewVertices(usize),
    #[error("edge count {edges} does not equal vertex count minus one ({vertices} vertices)")]
    EdgeCount { vertices: usize, edges: usize },
    #[error("edge ({0}, {1}) references a vertex outside 0..{2}")]
    VertexOutOfRange(usize, usize, usize),
    #[error("self-loop at vertex {0}")]
    SelfLoop(VertexId),
    #[error("edge ({0}, {1}) closes a cycle")]
    Cycle(VertexId, VertexId),
    #[error("negative weight {1} at vertex {0}")]
    NegativeWeight(VertexId, Rational),
    #[error("vertex {0} is not in the tree")]
    VertexNotInTree(VertexId),
    #[error("root {0} is a pendent vertex")]
    PendentRoot(VertexId),
    #[error("parent array does not describe a single tree: {0}")]
    MalformedParents(&'static str),
}

/// An undirected tree with a non-negative weight on every vertex.
///
/// Adjacency is kept in compressed form (`offsets` into `targets`) so trees
/// with millions of vertices stay compact.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightedTree {
    weights: Vec<Weight>,
    offsets: Vec<usize>,
    targets: Vec<VertexId>,
}

impl WeightedTree {
    pub fn new(weights: Vec<Weight>, edges: &[(VertexId, VertexId)]) -> Result<Self, TreeError> {
        let n = weights.len();
        if n < 2 {
            return Err(TreeError::TooFewVertices(n));
        }
        if edges.len() != n - 1 {
            return Err(TreeError::EdgeCount {
                vertices: n,
                edges: edges.len(),
            });
        }
        if let Some(v) = weights.iter().position(|w| w.is_negative()) {
            return Err(TreeError::NegativeWeight(v, weights[v].clone()));
        }
        let mut dsu = DisjointSets::new(n);
        for &(a, b) in edges {
            if a >= n || b >= n {
                return Err(TreeError::VertexOutOfRange(a, b, n));
            }
            if a == b {
                return Err(TreeError::SelfLoop(a));
            }
            if !dsu.union(a, b) {
                return Err(TreeError::Cycle(a, b));
            }
        }
        // n - 1 acyclic edges on n vertices: connected
        Ok(Self::from_edges_unchecked(weights, edges))
    }

    pub(crate) fn from_edges_unchecked(weights: Vec<Weight>, edges: &[(VertexId, VertexId)]) -> Self {
        let n = weights.len();
        let mut offsets = vec![0usize; n + 1];
        for &(a, b) in edges {
            offsets[a + 1] += 1;
            offsets[b + 1] += 1;
        }
        for i in 0..n {
            offsets[i + 1] += offsets[i];
        }
        let mut fill = offsets.clone();
        let mut targets = vec![0; 2 * edges.len()];
        for &(a, b) in edges {
            targets[fill[a]] = b;
            fill[a] += 1;
            targets[fill[b]] = a;
            fill[b] += 1;
        }
        for v in 0..n {
            targets[offsets[v]..offsets[v + 1]].sort_unstable();
        }
        WeightedTree {
            weights,
            offsets,
            targets,
        }
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

    pub fn weights(&self) -> &[Weight] {
        &self.weights
    }

    pub fn degree(&self, v: VertexId) -> usize {
        self.offsets[v + 1] - self.offsets[v]
    }

    /// Neighbors of `v` in ascending order.
    pub fn neighbors(&self, v: VertexId) -> &[VertexId] {
        &self.targets[self.offsets[v]..self.offsets[v + 1]]
    }

    pub fn is_internal(&self, v: VertexId) -> bool {
        self.degree(v) > 1
    }

    pub fn internal_vertices(&self) -> impl Iterator<Item = VertexId> + '_ {
        (0..self.len()).filter(move |&v| self.is_internal(v))
    }

    pub fn total_weight(&self) -> Weight {
        self.weights.iter().sum()
    }

    /// Edges as `(u, v)` with `u < v`, sorted: the canonical encoding of the
    /// labeled tree.
    pub fn edges(&self) -> Vec<(VertexId, VertexId)> {
        let mut out = Vec::with_capacity(self.len() - 1);
        for u in 0..self.len() {
            for &v in self.neighbors(u) {
                if u < v {
                    out.push((u, v));
                }
            }
        }
        out
    }

    /// The weight/degree tuple this tree realizes, labeled by dense id.
    pub fn induced_tuple(&self) -> GeneratingTuple {
        GeneratingTuple::from_parts(
            self.weights.clone(),
            (0..self.len()).map(|v| self.degree(v)).collect(),
        )
        .expect("a valid tree always induces a valid tuple")
    }

    /// The same shape with every weight replaced by `f(v)`.
    pub fn reweighted(&self, f: impl Fn(VertexId) -> Weight) -> WeightedTree {
        WeightedTree {
            weights: (0..self.len()).map(f).collect(),
            offsets: self.offsets.clone(),
            targets: self.targets.clone(),
        }
    }
}

/// True iff `tree` has exactly the tuple's vertices, weights and degrees.
pub fn tree_matches_tuple(tree: &WeightedTree, tuple: &GeneratingTuple) -> bool {
    tree.len() == tuple.len()
        && (0..tree.len()).all(|v| tree.degree(v) == tuple.degree(v) && tree.weight(v) == tuple.weight(v))
}

/// A tree with every edge directed toward `root`, carrying the subordinate
/// group weight `f(v)`: the total weight of `v` and all its descendants.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RootedTree {
    tree: WeightedTree,
    root: VertexId,
    parent: Vec<Option<VertexId>>,
    /// Breadth-first order from the root; parents precede children.
    order: Vec<VertexId>,
    subordinate: Vec<Weight>,
}

/// Orients `tree` toward `root`. The root must be internal unless the tree is
/// a single edge.
pub fn root_tree(tree: &WeightedTree, root: VertexId) -> Result<RootedTree, TreeError> {
    RootedTree::new(tree.clone(), root)
}

impl RootedTree {
    pub fn new(tree: WeightedTree, root: VertexId) -> Result<Self, TreeError> {
        if root >= tree.len() {
            return Err(TreeError::VertexNotInTree(root));
        }
        if tree.len() > 2 && !tree.is_internal(root) {
            return Err(TreeError::PendentRoot(root));
        }
        let n = tree.len();
        let mut parent = vec![None; n];
        let mut order = Vec::with_capacity(n);
        let mut seen = vec![false; n];
        let mut queue = VecDeque::from([root]);
        seen[root] = true;
        while let Some(u) = queue.pop_front() {
            order.push(u);
            for &w in tree.neighbors(u) {
                if !seen[w] {
                    seen[w] = true;
                    parent[w] = Some(u);
                    queue.push_back(w);
                }
            }
        }
        let subordinate = accumulate(&tree, &parent, &order);
        Ok(RootedTree {
            tree,
            root,
            parent,
            order,
            subordinate,
        })
    }

    /// Builds a rooted tree from a parent array; exactly one entry is `None`.
    pub fn from_parents(weights: Vec<Weight>, parent: Vec<Option<VertexId>>) -> Result<Self, TreeError> {
        let n = weights.len();
        if parent.len() != n {
            return Err(TreeError::MalformedParents("length mismatch"));
        }
        let roots: Vec<VertexId> = (0..n).filter(|&v| parent[v].is_none()).collect();
        if roots.len() != 1 {
            return Err(TreeError::MalformedParents("expected exactly one root"));
        }
        let mut edges = Vec::with_capacity(n.saturating_sub(1));
        for (v, p) in parent.iter().enumerate() {
            if let Some(p) = *p {
                edges.push((v, p));
            }
        }
        let tree = WeightedTree::new(weights, &edges)?;
        RootedTree::new(tree, roots[0])
    }

    pub fn tree(&self) -> &WeightedTree {
        &self.tree
    }

    pub fn into_tree(self) -> WeightedTree {
        self.tree
    }

    pub fn root(&self) -> VertexId {
        self.root
    }

    pub fn len(&self) -> usize {
        self.tree.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tree.is_empty()
    }

    pub fn parent(&self, v: VertexId) -> Option<VertexId> {
        self.parent[v]
    }

    pub fn parents(&self) -> &[Option<VertexId>] {
        &self.parent
    }

    pub fn children(&self, v: VertexId) -> impl Iterator<Item = VertexId> + '_ {
        let p = self.parent[v];
        self.tree.neighbors(v).iter().copied().filter(move |&w| Some(w) != p)
    }

    /// Vertices in breadth-first order from the root.
    pub fn order(&self) -> &[VertexId] {
        &self.order
    }

    /// Subordinate group weight of `v`.
    pub fn f(&self, v: VertexId) -> &Weight {
        &self.subordinate[v]
    }

    pub fn subordinate_weights(&self) -> &[Weight] {
        &self.subordinate
    }

    pub fn weight(&self, v: VertexId) -> &Weight {
        self.tree.weight(v)
    }

    pub fn degree(&self, v: VertexId) -> usize {
        self.tree.degree(v)
    }

    pub fn total_weight(&self) -> &Weight {
        &self.subordinate[self.root]
    }

    /// Number of arcs from `v` to the root.
    pub fn depths(&self) -> Vec<usize> {
        let mut depth = vec![0; self.len()];
        for &v in &self.order {
            if let Some(p) = self.parent[v] {
                depth[v] = depth[p] + 1;
            }
        }
        depth
    }

    /// The arc path from `v` up to the root, starting with `v`.
    pub fn path_to_root(&self, v: VertexId) -> Vec<VertexId> {
        let mut path = vec![v];
        let mut cur = v;
        while let Some(p) = self.parent[cur] {
            path.push(p);
            cur = p;
        }
        path
    }

    /// Whether `a` lies on the path from `b` to the root (`a == b` counts).
    pub fn is_ancestor(&self, a: VertexId, b: VertexId) -> bool {
        let mut cur = Some(b);
        while let Some(c) = cur {
            if c == a {
                return true;
            }
            cur = self.parent[c];
        }
        false
    }

    /// The subordinate group of `v`: `v` and all its descendants.
    pub fn group(&self, v: VertexId) -> Vec<VertexId> {
        let mut out = vec![v];
        let mut i = 0;
        while i < out.len() {
            let u = out[i];
            out.extend(self.children(u));
            i += 1;
        }
        out
    }

    /// Re-derives every `f(v)` from the weights and parent links.
    pub fn recompute_subordinate_weights(&self) -> Vec<Weight> {
        accumulate(&self.tree, &self.parent, &self.order)
    }
}

fn accumulate(tree: &WeightedTree, parent: &[Option<VertexId>], order: &[VertexId]) -> Vec<Weight> {
    let mut f: Vec<Weight> = tree.weights().to_vec();
    for &v in order.iter().rev() {
        if let Some(p) = parent[v] {
            let child = std::mem::take(&mut f[v]);
            f[p] += &child;
            f[v] = child;
        }
    }
    f
}

/// Ascending vector of subordinate group weights over the internal vertices
/// other than the root; length `q - 1`.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FVector(Vec<Weight>);

impl FVector {
    /// Sorts `values` ascending.
    pub fn from_unsorted(mut values: Vec<Weight>) -> Self {
        values.sort_unstable();
        FVector(values)
    }

    pub fn values(&self) -> &[Weight] {
        &self.0
    }

    pub fn into_values(self) -> Vec<Weight> {
        self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

pub fn f_vector(rooted: &RootedTree) -> FVector {
    let root = rooted.root();
    FVector::from_unsorted(
        rooted
            .tree()
            .internal_vertices()
            .filter(|&m| m != root)
            .map(|m| rooted.f(m).clone())
            .collect(),
    )
}

struct DisjointSets {
    parent: Vec<usize>,
    rank: Vec<u8>,
}

impl DisjointSets {
    fn new(n: usize) -> Self {
        DisjointSets {
            parent: (0..n).collect(),
            rank: vec![0; n],
        }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    /// Returns false when `a` and `b` were already connected.
    fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        match self.rank[ra].cmp(&self.rank[rb]) {
            std::cmp::Ordering::Less => self.parent[ra] = rb,
            std::cmp::Ordering::Greater => self.parent[rb] = ra,
            std::cmp::Ordering::Equal => {
                self.parent[rb] = ra;
                self.rank[ra] += 1;
            }
        }
        true
    }
}
