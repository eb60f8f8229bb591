//! Structural operations on rooted trees: rollups, arc exchanges that push
//! the f-vector up in the weak majorization order, and proper rootings.

use std::collections::BTreeSet;

use thiserror::Error;

use crate::rational::Rational;
use crate::tree::{f_vector, root_tree, RootedTree, TreeError, WeightedTree};
use crate::tuple::{is_degree_monotone, GeneratingTuple, VertexId, Weight};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TransformError {
    #[error("vertex {0} is not in the tree")]
    VertexOutOfRange(VertexId),
    #[error("vertex {0} is not internal")]
    NotInternal(VertexId),
    #[error("cannot roll up the root {0}")]
    RollupOfRoot(VertexId),
    #[error("precondition violated: {0}")]
    PreconditionViolated(&'static str),
    #[error("transformation would change vertex degrees")]
    WouldChangeDegrees,
    #[error(transparent)]
    Tree(#[from] TreeError),
}

fn violated<T>(clause: &'static str) -> Result<T, TransformError> {
    Err(TransformError::PreconditionViolated(clause))
}

/// Result of collapsing a subordinate group into its top vertex.
#[derive(Debug, Clone)]
pub struct Rollup {
    pub tree: RootedTree,
    /// Induced tuple, labeled by the original vertex ids.
    pub tuple: GeneratingTuple,
    /// `kept[i]` is the original id of vertex `i` of `tree`.
    pub kept: Vec<VertexId>,
}

/// Deletes the descendants of `m` and gives `m` the weight `f(m)`.
pub fn rollup(rooted: &RootedTree, m: VertexId) -> Result<Rollup, TransformError> {
    check_vertex(rooted, m)?;
    if !rooted.tree().is_internal(m) {
        return Err(TransformError::NotInternal(m));
    }
    if m == rooted.root() {
        return Err(TransformError::RollupOfRoot(m));
    }
    let removed: BTreeSet<VertexId> = rooted.group(m).into_iter().filter(|&v| v != m).collect();
    let kept: Vec<VertexId> = (0..rooted.len()).filter(|v| !removed.contains(v)).collect();
    let mut new_id = vec![usize::MAX; rooted.len()];
    for (i, &v) in kept.iter().enumerate() {
        new_id[v] = i;
    }
    let weights: Vec<Weight> = kept
        .iter()
        .map(|&v| if v == m { rooted.f(m).clone() } else { rooted.weight(v).clone() })
        .collect();
    let parents: Vec<Option<VertexId>> = kept.iter().map(|&v| rooted.parent(v).map(|p| new_id[p])).collect();
    let tree = RootedTree::from_parents(weights, parents)?;
    let degrees = (0..tree.len()).map(|v| tree.degree(v)).collect();
    let labels = kept.iter().map(|&v| v as i64).collect();
    let tuple = GeneratingTuple::from_labeled_parts(labels, tree.tree().weights().to_vec(), degrees)
        .expect("a tree induces a valid tuple");
    Ok(Rollup { tree, tuple, kept })
}

/// One arc-exchange transformation. Every kind keeps all weights and degrees.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SwapSpec {
    /// `v` and `v_prime` reach a common vertex `m` along disjoint paths with
    /// `k` and `l` intermediate vertices, `k <= l`, `l >= 1`; they trade
    /// parents. Needs `f(v) < f(v')` and `f(m_i) >= f(m'_i)` for `i <= k`.
    OutboundExchange { v: VertexId, v_prime: VertexId },
    /// Disjoint paths with `1 <= l <= k`, `f(v) < f(v')`, `f(m_1) = f(m'_1)`
    /// and `f(m_i) <= f(m'_i)` for `2 <= i <= l`. The leaves trade first
    /// parents and `m_1`, `m'_1` trade their parents.
    ChainExchange { v: VertexId, v_prime: VertexId },
    /// Internal `v`, `v_prime` on disjoint paths with `k <= l`,
    /// `d(v') > d(v)`, `f(v) >= f(v')`, `f(m_i) >= f(m'_i)` for `i <= k`, on a
    /// degree-monotone tree. The two trade parents, every child of `v` moves
    /// to `v'` and `d(v) - 1` of the lightest children of `v'` move to `v`.
    DegreeExchange { v: VertexId, v_prime: VertexId },
    /// Equal degrees and `mu(v) <= mu(v')`; the two trade all incident arcs.
    /// With `mu(v) < mu(v')` either `v` is an ancestor of `v'`, or both are
    /// internal on disjoint paths with `k <= l`, `f(v) >= f(v')` and
    /// `f(m_i) >= f(m'_i)` for `i <= k`.
    PositionExchange { v: VertexId, v_prime: VertexId },
    /// Arc `m -> m_prime` with `d(m) > d(m')` on a degree-monotone tree: the
    /// arc is reversed, `m` takes over the parent and other children of `m'`,
    /// and `d(m') - 1` of the lightest children of `m` move to `m'`.
    ArcReversalRebalance { m: VertexId, m_prime: VertexId },
}

#[derive(Debug, Clone)]
pub struct SwapOutcome {
    pub tree: RootedTree,
    /// The amount moved between subordinate groups; positive whenever the
    /// f-vector strictly improves.
    pub shift: Weight,
}

/// Applies `spec` after checking its preconditions.
pub fn apply_swap(rooted: &RootedTree, spec: SwapSpec) -> Result<SwapOutcome, TransformError> {
    let mut parent = rooted.parents().to_vec();
    let shift = match spec {
        SwapSpec::OutboundExchange { v, v_prime } => outbound(rooted, v, v_prime, &mut parent)?,
        SwapSpec::ChainExchange { v, v_prime } => chain(rooted, v, v_prime, &mut parent)?,
        SwapSpec::DegreeExchange { v, v_prime } => degree_exchange(rooted, v, v_prime, &mut parent)?,
        SwapSpec::PositionExchange { v, v_prime } => position(rooted, v, v_prime, &mut parent)?,
        SwapSpec::ArcReversalRebalance { m, m_prime } => arc_reversal(rooted, m, m_prime, &mut parent)?,
    };
    let tree = RootedTree::from_parents(rooted.tree().weights().to_vec(), parent)?;
    if (0..tree.len()).any(|v| tree.degree(v) != rooted.degree(v)) {
        return Err(TransformError::WouldChangeDegrees);
    }
    Ok(SwapOutcome { tree, shift })
}

fn check_vertex(rooted: &RootedTree, v: VertexId) -> Result<(), TransformError> {
    if v < rooted.len() {
        Ok(())
    } else {
        Err(TransformError::VertexOutOfRange(v))
    }
}

/// Intermediate vertices of the two paths to the meeting vertex `m`.
struct DisjointPaths {
    mids: Vec<VertexId>,
    mids_prime: Vec<VertexId>,
    meet: VertexId,
}

fn disjoint_paths(rooted: &RootedTree, v: VertexId, v_prime: VertexId) -> Result<DisjointPaths, TransformError> {
    check_vertex(rooted, v)?;
    check_vertex(rooted, v_prime)?;
    if v == v_prime {
        return violated("v and v' must differ");
    }
    if rooted.is_ancestor(v, v_prime) || rooted.is_ancestor(v_prime, v) {
        return violated("paths to the meeting vertex must be disjoint");
    }
    let up = rooted.path_to_root(v);
    let up_prime = rooted.path_to_root(v_prime);
    let on_prime: BTreeSet<VertexId> = up_prime.iter().copied().collect();
    let k = up.iter().position(|x| on_prime.contains(x)).expect("paths meet at the root");
    let meet = up[k];
    let l = up_prime.iter().position(|&x| x == meet).expect("meeting vertex is common");
    Ok(DisjointPaths {
        mids: up[1..k].to_vec(),
        mids_prime: up_prime[1..l].to_vec(),
        meet,
    })
}

/// `f(m_i) >= f(m'_i)` for every `i` below `upto`.
fn dominates(rooted: &RootedTree, a: &[VertexId], b: &[VertexId], upto: usize) -> bool {
    (0..upto).all(|i| rooted.f(a[i]) >= rooted.f(b[i]))
}

fn require_monotone(rooted: &RootedTree) -> Result<(), TransformError> {
    if is_degree_monotone(&rooted.tree().induced_tuple()) {
        Ok(())
    } else {
        violated("weights must be degree-monotone")
    }
}

fn outbound(
    rooted: &RootedTree,
    v: VertexId,
    v_prime: VertexId,
    parent: &mut [Option<VertexId>],
) -> Result<Weight, TransformError> {
    let p = disjoint_paths(rooted, v, v_prime)?;
    let (k, l) = (p.mids.len(), p.mids_prime.len());
    if l == 0 {
        return violated("path from v' needs at least one intermediate vertex");
    }
    if k > l {
        return violated("path from v must not be longer than the path from v'");
    }
    if rooted.f(v) >= rooted.f(v_prime) {
        return violated("f(v) < f(v') required");
    }
    if !dominates(rooted, &p.mids, &p.mids_prime, k) {
        return violated("f(m_i) >= f(m'_i) required along the shorter path");
    }
    let shift = rooted.f(v_prime) - rooted.f(v);
    parent.swap(v, v_prime);
    Ok(shift)
}

fn chain(
    rooted: &RootedTree,
    v: VertexId,
    v_prime: VertexId,
    parent: &mut [Option<VertexId>],
) -> Result<Weight, TransformError> {
    let p = disjoint_paths(rooted, v, v_prime)?;
    let (k, l) = (p.mids.len(), p.mids_prime.len());
    if l == 0 {
        return violated("path from v' needs at least one intermediate vertex");
    }
    if l > k {
        return violated("path from v' must not be longer than the path from v");
    }
    if rooted.f(v) >= rooted.f(v_prime) {
        return violated("f(v) < f(v') required");
    }
    let (m1, m1_prime) = (p.mids[0], p.mids_prime[0]);
    if rooted.f(m1) != rooted.f(m1_prime) {
        return violated("f(m_1) = f(m'_1) required");
    }
    if (1..l).any(|i| rooted.f(p.mids[i]) > rooted.f(p.mids_prime[i])) {
        return violated("f(m_i) <= f(m'_i) required for i >= 2");
    }
    let u = p.mids.get(1).copied().unwrap_or(p.meet);
    let u_prime = p.mids_prime.get(1).copied().unwrap_or(p.meet);
    parent[v] = Some(m1_prime);
    parent[v_prime] = Some(m1);
    parent[m1] = Some(u_prime);
    parent[m1_prime] = Some(u);
    Ok(rooted.f(v_prime) - rooted.f(v))
}

/// Children of `x` sorted by `(f, id)`.
fn children_by_weight(rooted: &RootedTree, x: VertexId) -> Vec<VertexId> {
    let mut c: Vec<VertexId> = rooted.children(x).collect();
    c.sort_by(|&a, &b| (rooted.f(a), a).cmp(&(rooted.f(b), b)));
    c
}

fn degree_exchange(
    rooted: &RootedTree,
    v: VertexId,
    v_prime: VertexId,
    parent: &mut [Option<VertexId>],
) -> Result<Weight, TransformError> {
    let p = disjoint_paths(rooted, v, v_prime)?;
    for x in [v, v_prime] {
        if !rooted.tree().is_internal(x) {
            return Err(TransformError::NotInternal(x));
        }
    }
    let (k, l) = (p.mids.len(), p.mids_prime.len());
    if k > l {
        return violated("path from v must not be longer than the path from v'");
    }
    if rooted.degree(v_prime) <= rooted.degree(v) {
        return violated("d(v') > d(v) required");
    }
    if rooted.f(v) < rooted.f(v_prime) {
        return violated("f(v) >= f(v') required");
    }
    if !dominates(rooted, &p.mids, &p.mids_prime, k) {
        return violated("f(m_i) >= f(m'_i) required along the shorter path");
    }
    require_monotone(rooted)?;

    let own: Vec<VertexId> = rooted.children(v).collect();
    let theirs = children_by_weight(rooted, v_prime);
    let (moving, staying) = theirs.split_at(own.len());
    parent.swap(v, v_prime);
    for &c in &own {
        parent[c] = Some(v_prime);
    }
    for &c in moving {
        parent[c] = Some(v);
    }
    let stay: Rational = staying.iter().map(|&c| rooted.f(c)).sum();
    Ok(&stay + &(rooted.weight(v_prime) - rooted.weight(v)))
}

fn position(
    rooted: &RootedTree,
    v: VertexId,
    v_prime: VertexId,
    parent: &mut [Option<VertexId>],
) -> Result<Weight, TransformError> {
    check_vertex(rooted, v)?;
    check_vertex(rooted, v_prime)?;
    if v == v_prime {
        return violated("v and v' must differ");
    }
    if rooted.degree(v) != rooted.degree(v_prime) {
        return violated("d(v) = d(v') required");
    }
    let (w, w_prime) = (rooted.weight(v), rooted.weight(v_prime));
    if w > w_prime {
        return violated("mu(v) <= mu(v') required");
    }
    if w < w_prime && !rooted.is_ancestor(v, v_prime) {
        if rooted.is_ancestor(v_prime, v) {
            return violated("the heavier vertex must not be the ancestor");
        }
        let p = disjoint_paths(rooted, v, v_prime)?;
        for x in [v, v_prime] {
            if !rooted.tree().is_internal(x) {
                return Err(TransformError::NotInternal(x));
            }
        }
        if p.mids.len() > p.mids_prime.len() {
            return violated("path from v must not be longer than the path from v'");
        }
        if rooted.f(v) < rooted.f(v_prime) {
            return violated("f(v) >= f(v') required");
        }
        if !dominates(rooted, &p.mids, &p.mids_prime, p.mids.len()) {
            return violated("f(m_i) >= f(m'_i) required along the shorter path");
        }
    }
    let swap = |x: VertexId| {
        if x == v {
            v_prime
        } else if x == v_prime {
            v
        } else {
            x
        }
    };
    let old = parent.to_vec();
    for x in 0..parent.len() {
        parent[x] = old[swap(x)].map(swap);
    }
    Ok(w_prime - w)
}

fn arc_reversal(
    rooted: &RootedTree,
    m: VertexId,
    m_prime: VertexId,
    parent: &mut [Option<VertexId>],
) -> Result<Weight, TransformError> {
    check_vertex(rooted, m)?;
    check_vertex(rooted, m_prime)?;
    if rooted.parent(m) != Some(m_prime) {
        return violated("arc m -> m' must exist");
    }
    if rooted.degree(m) <= rooted.degree(m_prime) {
        return violated("d(m) > d(m') required");
    }
    require_monotone(rooted)?;

    let others: Vec<VertexId> = rooted.children(m_prime).filter(|&c| c != m).collect();
    let mine = children_by_weight(rooted, m);
    let (moving, staying) = mine.split_at(rooted.degree(m_prime) - 1);
    parent[m] = rooted.parent(m_prime);
    parent[m_prime] = Some(m);
    for &c in &others {
        parent[c] = Some(m);
    }
    for &c in moving {
        parent[c] = Some(m_prime);
    }
    let stay: Rational = staying.iter().map(|&c| rooted.f(c)).sum();
    Ok(&stay + &(rooted.weight(m) - rooted.weight(m_prime)))
}

/// Every f-vector entry is at most half the total weight.
pub fn is_proper(rooted: &RootedTree) -> bool {
    let total = rooted.total_weight();
    f_vector(rooted).values().iter().all(|f| &(f + f) <= total)
}

/// The smallest internal vertex whose rooting is proper; vertex 0 for a
/// single edge. Linear time.
pub fn proper_root(tree: &WeightedTree) -> VertexId {
    let n = tree.len();
    if n <= 2 {
        return 0;
    }
    // Base rooting at vertex 0 with pre-order intervals. An internal m makes
    // rooting r improper iff r lies beyond one of m's edges and m's side of
    // that edge weighs more than half.
    let base = root_tree(tree, internal_vertex(tree)).expect("internal root");
    let (tin, tout) = preorder_intervals(&base);
    let total = base.total_weight();
    let heavy = |x: &Weight| &(x + x) > total;
    let mut diff = vec![0i64; n + 1];
    let mut mark = |lo: usize, hi: usize| {
        diff[lo] += 1;
        diff[hi] -= 1;
    };
    for m in tree.internal_vertices() {
        for &x in tree.neighbors(m) {
            if base.parent(m) == Some(x) {
                if heavy(base.f(m)) {
                    // r outside the subtree of m
                    mark(0, tin[m]);
                    mark(tout[m], n);
                }
            } else if heavy(&(total - base.f(x))) {
                mark(tin[x], tout[x]);
            }
        }
    }
    let mut bad = vec![0i64; n];
    let mut run = 0;
    for i in 0..n {
        run += diff[i];
        bad[i] = run;
    }
    tree.internal_vertices()
        .find(|&r| bad[tin[r]] == 0)
        .expect("a proper rooting always exists")
}

fn internal_vertex(tree: &WeightedTree) -> VertexId {
    tree.internal_vertices().next().expect("trees with three or more vertices have an internal vertex")
}

/// `[tin, tout)` pre-order intervals of every subtree.
fn preorder_intervals(rooted: &RootedTree) -> (Vec<usize>, Vec<usize>) {
    let n = rooted.len();
    let mut tin = vec![0; n];
    let mut tout = vec![0; n];
    let mut clock = 0;
    let mut stack = vec![(rooted.root(), false)];
    while let Some((v, done)) = stack.pop() {
        if done {
            tout[v] = clock;
            continue;
        }
        tin[v] = clock;
        clock += 1;
        stack.push((v, true));
        for c in rooted.children(v) {
            stack.push((c, false));
        }
    }
    (tin, tout)
}

/// Walks toward the heavier side until every component left by deleting the
/// current vertex weighs at most half the total; a pendent stopping point is
/// replaced by its neighbor. The result always roots a proper tree.
pub fn centroid_walk_root(tree: &WeightedTree) -> VertexId {
    let n = tree.len();
    if n <= 2 {
        return 0;
    }
    let base = root_tree(tree, internal_vertex(tree)).expect("internal root");
    let total = base.total_weight();
    let side = |from: VertexId, to: VertexId| -> Weight {
        // weight of the component containing `to` after deleting edge (from, to)
        if base.parent(to) == Some(from) {
            base.f(to).clone()
        } else {
            total - base.f(from)
        }
    };
    let mut cur = base.root();
    'walk: loop {
        for &x in tree.neighbors(cur) {
            let s = side(cur, x);
            if &(&s + &s) > total {
                cur = x;
                continue 'walk;
            }
        }
        break;
    }
    if tree.is_internal(cur) {
        cur
    } else {
        tree.neighbors(cur)[0]
    }
}
