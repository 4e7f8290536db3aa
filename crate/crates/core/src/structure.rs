//! Nested cut systems, the trees they define, and the canonical
//! level-by-level system of a network.

use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};

use crate::cutring::{CutFamily, Oracle, DEFAULT_ORACLE_LIMIT};
use crate::error::{Error, Result};
use crate::flow::{all_pairs_connectivity, ConnectivityTable, Residual};
use crate::netcore::{self, Capacity, Cut, Network, VertexId};
use crate::vset::VertexSet;

/// A complement-closed, pairwise nested family of cuts, each tagged with
/// its level (capacity).
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct NestedSystem {
    cuts: BTreeMap<Cut, Capacity>,
}

impl NestedSystem {
    pub fn new() -> Self {
        Self::default()
    }

    /// Builds a system from cuts and levels, adding complements, and
    /// checks that it is nested.
    pub fn from_cuts(cuts: impl IntoIterator<Item = (Cut, Capacity)>) -> Result<Self> {
        let mut s = NestedSystem::new();
        for (c, l) in cuts {
            s.insert_pair(c, l);
        }
        s.validate()?;
        Ok(s)
    }

    /// Inserts `cut` and its complement at level `level`.
    pub fn insert_pair(&mut self, cut: Cut, level: Capacity) {
        self.cuts.insert(cut.complement(), level);
        self.cuts.insert(cut, level);
    }

    pub fn len(&self) -> usize {
        self.cuts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cuts.is_empty()
    }

    pub fn contains(&self, cut: &Cut) -> bool {
        self.cuts.contains_key(cut)
    }

    pub fn level(&self, cut: &Cut) -> Option<Capacity> {
        self.cuts.get(cut).copied()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Cut, Capacity)> {
        self.cuts.iter().map(|(c, &l)| (c, l))
    }

    pub fn cuts(&self) -> impl Iterator<Item = &Cut> {
        self.cuts.keys()
    }

    pub fn family(&self) -> CutFamily {
        let mut f = CutFamily::new();
        for (c, l) in self.iter() {
            f.insert_with_level(c.clone(), l);
        }
        f
    }

    /// Members with level at most `n`.
    pub fn truncated(&self, n: Capacity) -> NestedSystem {
        NestedSystem { cuts: self.cuts.iter().filter(|(_, &l)| l <= n).map(|(c, &l)| (c.clone(), l)).collect() }
    }

    /// Image under the vertex map `v -> perm[v]`.
    pub fn map(&self, perm: &[usize]) -> NestedSystem {
        NestedSystem { cuts: self.cuts.iter().map(|(c, &l)| (c.map(perm), l)).collect() }
    }

    /// Checks complement closure and pairwise nesting.
    pub fn validate(&self) -> Result<()> {
        for c in self.cuts.keys() {
            if self.cuts.get(&c.complement()) != self.cuts.get(c) {
                return Err(Error::InvalidCut(format!("complement of {c:?} missing")));
            }
        }
        let list: Vec<&Cut> = self.cuts.keys().collect();
        for (i, a) in list.iter().enumerate() {
            for b in &list[i + 1..] {
                if !netcore::is_nested(a, b) {
                    return Err(Error::InvalidCut(format!("{a:?} and {b:?} cross")));
                }
            }
        }
        Ok(())
    }
}

/// A node of a structure tree and the network vertices mapped to it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TreeNode {
    pub image_of: Vec<VertexId>,
}

/// A tree edge; `side` holds the vertices on `b`'s side.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TreeEdge {
    pub a: usize,
    pub b: usize,
    pub capacity: Capacity,
    pub side: VertexSet,
}

/// A tree whose directed edges are the cuts of a nested system, with the
/// map `ν` from network vertices to nodes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StructureTree {
    names: Vec<String>,
    nodes: Vec<TreeNode>,
    edges: Vec<TreeEdge>,
    nu: Vec<usize>,
}

impl StructureTree {
    /// Assembles a tree from parts, checking that they are consistent.
    pub fn from_parts(names: Vec<String>, nodes: Vec<TreeNode>, edges: Vec<TreeEdge>) -> Result<Self> {
        let mut nu = vec![usize::MAX; names.len()];
        for (i, n) in nodes.iter().enumerate() {
            for &v in &n.image_of {
                if v >= names.len() || nu[v] != usize::MAX {
                    return Err(Error::Parse(format!("vertex #{v} mapped twice or unknown")));
                }
                nu[v] = i;
            }
        }
        if nu.contains(&usize::MAX) {
            return Err(Error::Parse("vertex without a tree node".into()));
        }
        let t = StructureTree { names, nodes, edges, nu };
        if !t.is_tree() {
            return Err(Error::Parse("edges do not form a tree".into()));
        }
        Ok(t)
    }

    pub fn vertex_names(&self) -> &[String] {
        &self.names
    }

    pub fn nodes(&self) -> &[TreeNode] {
        &self.nodes
    }

    pub fn edges(&self) -> &[TreeEdge] {
        &self.edges
    }

    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    /// `ν(v)`.
    pub fn nu(&self, v: VertexId) -> usize {
        self.nu[v]
    }

    pub fn nu_map(&self) -> &[usize] {
        &self.nu
    }

    pub fn is_image(&self, node: usize) -> bool {
        !self.nodes[node].image_of.is_empty()
    }

    pub fn non_image_nodes(&self) -> Vec<usize> {
        (0..self.nodes.len()).filter(|&i| !self.is_image(i)).collect()
    }

    pub fn degree(&self, node: usize) -> usize {
        self.edges.iter().filter(|e| e.a == node || e.b == node).count()
    }

    /// Edge indices incident with `node`.
    pub fn incident(&self, node: usize) -> Vec<usize> {
        (0..self.edges.len()).filter(|&i| self.edges[i].a == node || self.edges[i].b == node).collect()
    }

    fn adjacency(&self) -> Vec<Vec<(usize, usize)>> {
        let mut adj = vec![Vec::new(); self.nodes.len()];
        for (i, e) in self.edges.iter().enumerate() {
            adj[e.a].push((e.b, i));
            adj[e.b].push((e.a, i));
        }
        adj
    }

    fn is_tree(&self) -> bool {
        if self.nodes.is_empty() || self.edges.len() + 1 != self.nodes.len() {
            return false;
        }
        let adj = self.adjacency();
        let mut seen = vec![false; self.nodes.len()];
        seen[0] = true;
        let mut stack = vec![0];
        while let Some(x) = stack.pop() {
            for &(y, _) in &adj[x] {
                if !seen[y] {
                    seen[y] = true;
                    stack.push(y);
                }
            }
        }
        seen.into_iter().all(|s| s)
    }

    /// Edge indices on the path between two nodes, in order.
    pub fn geodesic(&self, from: usize, to: usize) -> Vec<usize> {
        let adj = self.adjacency();
        let mut via = vec![usize::MAX; self.nodes.len()];
        let mut seen = vec![false; self.nodes.len()];
        seen[from] = true;
        let mut queue = VecDeque::from([from]);
        while let Some(x) = queue.pop_front() {
            for &(y, e) in &adj[x] {
                if !seen[y] {
                    seen[y] = true;
                    via[y] = e;
                    queue.push_back(y);
                }
            }
        }
        let mut path = Vec::new();
        let mut cur = to;
        while cur != from {
            let e = via[cur];
            path.push(e);
            let edge = &self.edges[e];
            cur = if edge.a == cur { edge.b } else { edge.a };
        }
        path.reverse();
        path
    }

    /// Smallest edge capacity between `ν(u)` and `ν(v)`; `None` when they
    /// coincide.
    pub fn min_cut_value(&self, u: VertexId, v: VertexId) -> Option<Capacity> {
        self.geodesic(self.nu[u], self.nu[v]).iter().map(|&e| self.edges[e].capacity).min()
    }

    /// The directed cuts of the tree with their capacities.
    pub fn cut_system(&self) -> NestedSystem {
        let mut s = NestedSystem::new();
        for e in &self.edges {
            s.insert_pair(Cut::from_set_unchecked(e.side.clone()), e.capacity);
        }
        s
    }
}

/// The tree of a nested system.
///
/// Nodes are the orientations `ιA`, `τA = ιA*` of the cuts, deduplicated;
/// `ιA(B) = 1` iff `A ⊆ B` or `A* ⊊ B`.
pub fn tree_from_nested(net: &Network, e: &NestedSystem) -> StructureTree {
    tree_from_cuts(net.names().to_vec(), e)
}

pub(crate) fn tree_from_cuts(names: Vec<String>, e: &NestedSystem) -> StructureTree {
    let nv = names.len();
    let cuts: Vec<(&Cut, Capacity)> = e.iter().collect();
    let m = cuts.len();
    if m == 0 {
        let nodes = vec![TreeNode { image_of: (0..nv).collect() }];
        return StructureTree { names, nodes, edges: Vec::new(), nu: vec![0; nv] };
    }
    let iota = |a: &Cut| -> VertexSet {
        let star = a.side().complement();
        VertexSet::from_iter(
            m,
            cuts.iter().enumerate().filter_map(|(j, (b, _))| {
                let inside = a.side().is_subset(b.side()) || (star.is_subset(b.side()) && star != *b.side());
                inside.then_some(j)
            }),
        )
    };

    let mut node_of: HashMap<VertexSet, usize> = HashMap::new();
    let mut orient: Vec<VertexSet> = Vec::new();
    let mut intern = |o: VertexSet, orient: &mut Vec<VertexSet>| -> usize {
        *node_of.entry(o.clone()).or_insert_with(|| {
            orient.push(o);
            orient.len() - 1
        })
    };
    // (node on the A side, node on the A* side, A, capacity)
    let mut raw_edges = Vec::new();
    for (a, cap) in &cuts {
        let star = a.complement();
        if *a > &star {
            continue;
        }
        let x = intern(iota(a), &mut orient);
        let y = intern(iota(&star), &mut orient);
        raw_edges.push((x, y, (*a).clone(), *cap));
    }
    let nu: Vec<usize> = (0..nv)
        .map(|v| {
            let alpha = VertexSet::from_iter(m, cuts.iter().enumerate().filter(|(_, (b, _))| b.contains(v)).map(|(j, _)| j));
            intern(alpha, &mut orient)
        })
        .collect();
    canonical_numbering(names, orient.len(), raw_edges, nu)
}

/// Renumbers nodes by breadth-first search from `ν(0)`, visiting
/// neighbours in order of the vertex set on their side.
fn canonical_numbering(
    names: Vec<String>,
    count: usize,
    raw_edges: Vec<(usize, usize, Cut, Capacity)>,
    nu: Vec<usize>,
) -> StructureTree {
    let mut adj: Vec<Vec<(usize, VertexSet, Capacity)>> = vec![Vec::new(); count];
    for (x, y, a, cap) in raw_edges {
        let star = a.side().complement();
        adj[y].push((x, a.into_side(), cap));
        adj[x].push((y, star, cap));
    }
    for a in adj.iter_mut() {
        a.sort_by(|p, q| p.1.cmp(&q.1));
    }
    let root = nu.first().copied().unwrap_or(0);
    let mut id = vec![usize::MAX; count];
    id[root] = 0;
    let mut order = vec![root];
    let mut edges = Vec::new();
    let mut queue = VecDeque::from([root]);
    while let Some(x) = queue.pop_front() {
        for (y, side, cap) in &adj[x] {
            if id[*y] == usize::MAX {
                id[*y] = order.len();
                order.push(*y);
                edges.push(TreeEdge { a: id[x], b: id[*y], capacity: *cap, side: side.clone() });
                queue.push_back(*y);
            }
        }
    }
    let mut nodes = vec![TreeNode { image_of: Vec::new() }; order.len()];
    let nu: Vec<usize> = nu.into_iter().map(|n| id[n]).collect();
    for (v, &n) in nu.iter().enumerate() {
        nodes[n].image_of.push(v);
    }
    StructureTree { names, nodes, edges, nu }
}

/// `ν` of a tree built from a nested system of `net`.
pub fn nu_map(net: &Network, t: &StructureTree) -> Result<Vec<usize>> {
    if t.vertex_names() != net.names() {
        return Err(Error::InvalidNetwork("tree belongs to a different network".into()));
    }
    Ok(t.nu_map().to_vec())
}

/// Settings for the canonical construction.
#[derive(Clone, Debug)]
pub struct CanonicalOptions {
    /// Vertices standing for infinitely many vertices; a side containing
    /// one counts as infinite when comparing sizes.
    pub infinite: Option<VertexSet>,
    /// Largest network the exhaustive fallback may handle.
    pub oracle_limit: usize,
    /// Largest number of minimum cuts enumerated per pair.
    pub cut_budget: usize,
}

impl Default for CanonicalOptions {
    fn default() -> Self {
        CanonicalOptions { infinite: None, oracle_limit: DEFAULT_ORACLE_LIMIT, cut_budget: 1 << 16 }
    }
}

/// Size of a side for the tie-break between the two extremal separators.
fn side_size(s: &VertexSet, opts: &CanonicalOptions) -> Option<usize> {
    match &opts.infinite {
        Some(inf) if !s.is_disjoint(inf) => None,
        _ => Some(s.len()),
    }
}

/// Of the separator chosen from `u`'s end and the one chosen from `v`'s
/// end, keeps the strictly smaller side, or both on a tie.
fn keep_smaller(a: VertexSet, b: VertexSet, opts: &CanonicalOptions) -> Vec<VertexSet> {
    match (side_size(&a, opts), side_size(&b, opts)) {
        (Some(x), Some(y)) if x < y => vec![a],
        (Some(x), Some(y)) if y < x => vec![b],
        (Some(_), None) => vec![a],
        (None, Some(_)) => vec![b],
        _ => vec![a, b],
    }
}

/// Chooses, among the separators with fewest crossings, the
/// inclusion-smallest one.
fn pick(cands: &[&VertexSet], mu: &HashMap<VertexSet, usize>) -> VertexSet {
    let best = cands.iter().map(|c| mu[*c]).min().expect("pair has a separator");
    let fewest: Vec<&VertexSet> = cands.iter().copied().filter(|c| mu[*c] == best).collect();
    let smallest = fewest.iter().min_by_key(|c| (c.len(), (**c).clone())).expect("nonempty");
    debug_assert!(fewest.iter().all(|c| smallest.is_subset(c)));
    (*smallest).clone()
}

/// Adds the level-`n` cuts given the separators of each pending pair.
///
/// `sep[(u, v)]` lists the candidate cuts containing `u` and not `v`;
/// `pool` is the set the crossing counts are taken over.
fn select_level(
    pairs: &[(VertexId, VertexId)],
    sep: &HashMap<(VertexId, VertexId), Vec<VertexSet>>,
    pool: &BTreeSet<VertexSet>,
    opts: &CanonicalOptions,
) -> BTreeSet<VertexSet> {
    let pool_list: Vec<&VertexSet> = pool.iter().collect();
    let mut mu: HashMap<VertexSet, usize> = HashMap::new();
    for a in &pool_list {
        let k = pool_list.iter().filter(|b| !netcore::sets_nested(a, b)).count();
        mu.insert((*a).clone(), k);
    }
    let mut out = BTreeSet::new();
    for &(u, v) in pairs {
        let fwd = &sep[&(u, v)];
        let back: Vec<VertexSet> = fwd.iter().map(|s| s.complement()).collect();
        let a = pick(&fwd.iter().collect::<Vec<_>>(), &mu);
        let b = pick(&back.iter().collect::<Vec<_>>(), &mu);
        for s in keep_smaller(a, b, opts) {
            out.insert(s.complement());
            out.insert(s);
        }
    }
    out
}

/// One canonical level by exhaustive enumeration.
pub fn level_up_oracle(oracle: &Oracle<'_>, prev: &NestedSystem, n: Capacity) -> Result<NestedSystem> {
    level_up_oracle_with(oracle, prev, n, &CanonicalOptions::default())
}

pub fn level_up_oracle_with(
    oracle: &Oracle<'_>,
    prev: &NestedSystem,
    n: Capacity,
    opts: &CanonicalOptions,
) -> Result<NestedSystem> {
    if n < 1 {
        return Err(Error::InvalidLevel);
    }
    let lambda = oracle.lambda();
    let pairs: Vec<(VertexId, VertexId)> = lambda.pairs_at(n).collect();
    if pairs.is_empty() {
        return Ok(prev.clone());
    }
    let fresh: Vec<VertexSet> = oracle
        .thin_cuts(n)
        .into_iter()
        .filter(|a| prev.cuts().all(|c| netcore::is_nested(a, c)))
        .map(Cut::into_side)
        .collect();
    let pool: BTreeSet<VertexSet> = fresh.iter().cloned().collect();
    let mut sep = HashMap::new();
    for &(u, v) in &pairs {
        let s: Vec<VertexSet> = fresh.iter().filter(|a| a.contains(u) && !a.contains(v)).cloned().collect();
        sep.insert((u, v), s);
    }
    let mut out = prev.clone();
    for s in select_level(&pairs, &sep, &pool, opts) {
        out.insert_pair(Cut::from_set_unchecked(s), n);
    }
    Ok(out)
}

/// One canonical level: adds to `prev` the chosen minimum cuts for every
/// pair with `λ = n`.
pub fn level_up(net: &Network, lambda: &ConnectivityTable, prev: &NestedSystem, n: Capacity) -> Result<NestedSystem> {
    level_up_with(net, lambda, prev, n, &CanonicalOptions::default())
}

pub fn level_up_with(
    net: &Network,
    lambda: &ConnectivityTable,
    prev: &NestedSystem,
    n: Capacity,
    opts: &CanonicalOptions,
) -> Result<NestedSystem> {
    if n < 1 {
        return Err(Error::InvalidLevel);
    }
    match level_up_fast(net, lambda, prev, n, opts) {
        Some(e) => Ok(e),
        None => {
            let oracle = Oracle::new(net, opts.oracle_limit)?;
            level_up_oracle_with(&oracle, prev, n, opts)
        }
    }
}

/// Works node by node in the tree of `prev`: contracts every branch
/// away from the node to a single vertex, enumerates all minimum cuts of
/// the pending pairs there, and expands them back. Returns `None` when
/// an internal check fails; `level_up` then falls back to enumeration.
pub fn level_up_fast(
    net: &Network,
    lambda: &ConnectivityTable,
    prev: &NestedSystem,
    n: Capacity,
    opts: &CanonicalOptions,
) -> Option<NestedSystem> {
    let nv = net.vertex_count();
    let pairs: Vec<(VertexId, VertexId)> = lambda.pairs_at(n).collect();
    if pairs.is_empty() {
        return Some(prev.clone());
    }
    let prev_cuts: Vec<&Cut> = prev.cuts().collect();
    let mut group_of: BTreeMap<VertexSet, Vec<VertexId>> = BTreeMap::new();
    let mut key_of = Vec::with_capacity(nv);
    for v in 0..nv {
        let key = VertexSet::from_iter(prev_cuts.len(), (0..prev_cuts.len()).filter(|&j| prev_cuts[j].contains(v)));
        group_of.entry(key.clone()).or_default().push(v);
        key_of.push(key);
    }
    let mut pending: BTreeMap<VertexId, Vec<(VertexId, VertexId)>> = BTreeMap::new();
    for &(u, v) in &pairs {
        if key_of[u] != key_of[v] {
            return None;
        }
        pending.entry(group_of[&key_of[u]][0]).or_default().push((u, v));
    }

    let mut out = prev.clone();
    let mut added: Vec<VertexSet> = Vec::new();
    for (root, node_pairs) in pending {
        let reals = &group_of[&key_of[root]];
        let quotient = Quotient::build(net, prev_cuts.as_slice(), reals, root);
        let mut sep = HashMap::new();
        let mut pool = BTreeSet::new();
        for &(u, v) in &node_pairs {
            let mut r = quotient.residual.clone();
            let (qu, qv) = (quotient.map[u], quotient.map[v]);
            if r.max_flow(qu, qv) != n {
                return None;
            }
            let sides = closed_sets(&r, qu, qv, opts.cut_budget)?;
            let expanded: Vec<VertexSet> = sides.iter().map(|s| quotient.expand(s)).collect();
            for s in &expanded {
                pool.insert(s.complement());
                pool.insert(s.clone());
            }
            sep.insert((u, v), expanded);
        }
        for s in select_level(&node_pairs, &sep, &pool, opts) {
            added.push(s);
        }
    }
    for (i, a) in added.iter().enumerate() {
        if added[i + 1..].iter().any(|b| !netcore::sets_nested(a, b)) {
            return None;
        }
    }
    for s in added {
        out.insert_pair(Cut::from_set_unchecked(s), n);
    }
    Some(out)
}

/// A network with every branch away from one tree node collapsed.
struct Quotient {
    /// Quotient vertex of each network vertex.
    map: Vec<usize>,
    /// Network vertices of each quotient vertex.
    parts: Vec<VertexSet>,
    residual: Residual,
}

impl Quotient {
    fn build(net: &Network, prev: &[&Cut], reals: &[VertexId], root: VertexId) -> Quotient {
        let nv = net.vertex_count();
        // The branch of w is the largest member containing w but not root.
        let mut branch: Vec<Option<usize>> = vec![None; nv];
        for (j, c) in prev.iter().enumerate() {
            if c.contains(root) {
                continue;
            }
            for w in c.side().iter() {
                if branch[w].is_none_or(|b| prev[b].len() < c.len()) {
                    branch[w] = Some(j);
                }
            }
        }
        let mut map = vec![usize::MAX; nv];
        let mut parts: Vec<VertexSet> = Vec::new();
        for &r in reals {
            map[r] = parts.len();
            parts.push(VertexSet::singleton(nv, r));
        }
        let mut branch_id: BTreeMap<usize, usize> = BTreeMap::new();
        for w in 0..nv {
            if map[w] != usize::MAX {
                continue;
            }
            let j = branch[w].expect("vertex off the node lies in a branch");
            let id = *branch_id.entry(j).or_insert_with(|| {
                parts.push(prev[j].side().clone());
                parts.len() - 1
            });
            map[w] = id;
        }
        let mut caps: BTreeMap<(usize, usize), Capacity> = BTreeMap::new();
        for e in net.edges() {
            let (x, y) = (map[e.u], map[e.v]);
            if x != y {
                *caps.entry((x.min(y), x.max(y))).or_insert(0) += e.cap;
            }
        }
        let residual = Residual::new(parts.len(), caps.into_iter().map(|((x, y), c)| (x, y, c)));
        Quotient { map, parts, residual }
    }

    fn expand(&self, s: &VertexSet) -> VertexSet {
        let nv = self.map.len();
        s.iter().fold(VertexSet::empty(nv), |acc, q| acc.union(&self.parts[q]))
    }
}

/// Source sides of all minimum cuts after a maximum flow: the sets that
/// contain `s`, miss `t`, and are closed under residual arcs.
fn closed_sets(r: &Residual, s: usize, t: usize, budget: usize) -> Option<Vec<VertexSet>> {
    let nv = r.vertex_count();
    let base = r.reach_from(s);
    let sink_side = r.reach_to(t);
    let free: Vec<usize> = (0..nv).filter(|&x| !base.contains(x) && !sink_side.contains(x)).collect();
    // Strong components of the free part, each with its residual closure.
    let down = free_closures(r, &free, &base);
    let mut out = Vec::new();
    let mut stack = vec![(0usize, base, VertexSet::empty(nv))];
    while let Some((i, cur, excl)) = stack.pop() {
        if i == down.len() {
            out.push(cur);
            if out.len() > budget {
                return None;
            }
            continue;
        }
        let (first, closure) = &down[i];
        if cur.contains(*first) {
            stack.push((i + 1, cur, excl));
            continue;
        }
        if closure.is_disjoint(&excl) {
            stack.push((i + 1, cur.union(closure), excl.clone()));
        }
        let mut without = excl;
        without.insert(*first);
        stack.push((i + 1, cur, without));
    }
    out.sort();
    Some(out)
}

/// For each strong component of the residual graph on `free`, one member
/// and the set reachable from it outside `base`.
fn free_closures(r: &Residual, free: &[usize], base: &VertexSet) -> Vec<(usize, VertexSet)> {
    let nv = r.vertex_count();
    let mut index = vec![usize::MAX; nv];
    let mut low = vec![0usize; nv];
    let mut on_stack = vec![false; nv];
    let mut comp_of = vec![usize::MAX; nv];
    let mut tarjan: Vec<usize> = Vec::new();
    let mut comps: Vec<(usize, VertexSet)> = Vec::new();
    let mut counter = 0;
    let succ = |x: usize| -> Vec<usize> { r.residual_succ(x).filter(|&y| !base.contains(y)).collect() };
    for &root in free {
        if index[root] != usize::MAX {
            continue;
        }
        let mut calls: Vec<(usize, Vec<usize>, usize)> = vec![(root, succ(root), 0)];
        index[root] = counter;
        low[root] = counter;
        counter += 1;
        tarjan.push(root);
        on_stack[root] = true;
        while let Some((x, next, pos)) = calls.last_mut() {
            let x = *x;
            if *pos < next.len() {
                let y = next[*pos];
                *pos += 1;
                if index[y] == usize::MAX {
                    index[y] = counter;
                    low[y] = counter;
                    counter += 1;
                    tarjan.push(y);
                    on_stack[y] = true;
                    calls.push((y, succ(y), 0));
                } else if on_stack[y] {
                    low[x] = low[x].min(index[y]);
                }
                continue;
            }
            calls.pop();
            if let Some((parent, _, _)) = calls.last() {
                low[*parent] = low[*parent].min(low[x]);
            }
            if low[x] == index[x] {
                // Components finish after everything they reach.
                let id = comps.len();
                let mut closure = VertexSet::empty(nv);
                let mut members = Vec::new();
                loop {
                    let y = tarjan.pop().expect("tarjan stack");
                    on_stack[y] = false;
                    comp_of[y] = id;
                    closure.insert(y);
                    members.push(y);
                    if y == x {
                        break;
                    }
                }
                for &m in &members {
                    for z in succ(m) {
                        if comp_of[z] != id {
                            closure = closure.union(&comps[comp_of[z]].1);
                        }
                    }
                }
                comps.push((x, closure));
            }
        }
    }
    comps
}

/// The canonical systems `E_1 ⊆ E_2 ⊆ …` of a network.
#[derive(Clone, Debug)]
pub struct CanonicalSystem {
    pub lambda: ConnectivityTable,
    /// `levels[i]` is `E_{i+1}`.
    pub levels: Vec<NestedSystem>,
}

impl CanonicalSystem {
    /// `E_n`, with `E_0` empty and `E_n` constant past the top level.
    pub fn level(&self, n: Capacity) -> NestedSystem {
        if n == 0 || self.levels.is_empty() {
            return NestedSystem::new();
        }
        let i = (n as usize).min(self.levels.len()) - 1;
        self.levels[i].clone()
    }

    pub fn top(&self) -> NestedSystem {
        self.levels.last().cloned().unwrap_or_default()
    }
}

/// Runs the canonical construction up to `max_level`, or to the largest
/// pairwise connectivity when `None`.
pub fn canonical_system(net: &Network, max_level: Option<Capacity>, opts: &CanonicalOptions) -> Result<CanonicalSystem> {
    let lambda = all_pairs_connectivity(net);
    let top = max_level.unwrap_or_else(|| lambda.max());
    let mut levels: Vec<NestedSystem> = Vec::new();
    let mut cur = NestedSystem::new();
    for n in 1..=top {
        cur = level_up_with(net, &lambda, &cur, n, opts)?;
        levels.push(cur.clone());
    }
    Ok(CanonicalSystem { lambda, levels })
}

/// The canonical structure tree of a network.
pub fn build_canonical_tree(net: &Network) -> Result<StructureTree> {
    let sys = canonical_system(net, None, &CanonicalOptions::default())?;
    Ok(tree_from_nested(net, &sys.top()))
}

/// Contracts one edge at each node outside the image of `ν` until `ν` is
/// a bijection.
///
/// At a node the edge of largest capacity is contracted, so every
/// geodesic minimum survives; ties go to the edge whose far side holds
/// the smallest vertex.
pub fn gomory_hu_extract(t: &StructureTree) -> StructureTree {
    let mut tree = t.clone();
    while let Some(&z) = tree.non_image_nodes().first() {
        let best = tree
            .incident(z)
            .into_iter()
            .map(|i| {
                let e = &tree.edges[i];
                let far = if e.a == z { e.side.clone() } else { e.side.complement() };
                (std::cmp::Reverse(e.capacity), far.first(), i)
            })
            .min()
            .map(|(_, _, i)| i)
            .expect("a non-image node has an incident edge");
        let mut sys = tree.cut_system();
        let side = Cut::from_set_unchecked(tree.edges[best].side.clone());
        sys.cuts.remove(&side.complement());
        sys.cuts.remove(&side);
        tree = tree_from_cuts(tree.names.clone(), &sys);
    }
    tree
}

fn check_permutation(net: &Network, perm: &[usize]) -> Result<()> {
    let n = net.vertex_count();
    let mut seen = vec![false; n];
    if perm.len() != n || perm.iter().any(|&p| p >= n || std::mem::replace(&mut seen[p], true)) {
        return Err(Error::NotAutomorphism);
    }
    for e in net.edges() {
        match net.edge_between(perm[e.u], perm[e.v]) {
            Some(i) if net.edge(i).cap == e.cap => {}
            _ => return Err(Error::NotAutomorphism),
        }
    }
    Ok(())
}

/// Whether the image of `e` under the automorphism `perm` is `e` itself.
pub fn check_automorphism_invariance(net: &Network, perm: &[usize], e: &NestedSystem) -> Result<bool> {
    check_permutation(net, perm)?;
    Ok(e.map(perm) == *e)
}

/// How the canonical level compares with the alternative selections.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct LevelComparison {
    pub level: Capacity,
    /// New cuts in the canonical level.
    pub canonical: usize,
    /// Cuts that are separators of least crossing for some pair.
    pub optimally_nested: usize,
    /// Whether every canonical cut is among them.
    pub canonical_within_optimal: bool,
    /// Whether the optimally nested separators are pairwise nested.
    pub optimal_is_nested: bool,
    /// Vertices whose smallest fresh cut is not unique.
    pub smallest_undefined: usize,
    /// Whether the per-vertex smallest fresh cuts are pairwise nested.
    pub smallest_is_nested: bool,
}

/// Compares a canonical level with the least-crossing separators and
/// with the per-vertex smallest cuts, by exhaustive enumeration.
pub fn compare_level(oracle: &Oracle<'_>, prev: &NestedSystem, next: &NestedSystem, n: Capacity) -> LevelComparison {
    let lambda = oracle.lambda();
    let fresh: Vec<Cut> =
        oracle.thin_cuts(n).into_iter().filter(|a| prev.cuts().all(|c| netcore::is_nested(a, c))).collect();
    let fam: CutFamily = fresh.iter().cloned().collect();
    let mu: HashMap<&Cut, usize> = fresh.iter().map(|a| (a, crate::cutring::crossing_count(a, &fam))).collect();
    let nv = oracle.network().vertex_count();

    let mut optimal = BTreeSet::new();
    let mut smallest = BTreeSet::new();
    let mut undefined = 0;
    for u in 0..nv {
        let partners: Vec<VertexId> = (0..nv).filter(|&v| v != u && lambda.get(u, v) == n).collect();
        if partners.is_empty() {
            continue;
        }
        for &v in &partners {
            let sep: Vec<&Cut> = fresh.iter().filter(|a| a.contains(u) && !a.contains(v)).collect();
            if let Some(best) = sep.iter().map(|a| mu[a]).min() {
                optimal.extend(sep.into_iter().filter(|a| mu[a] == best).cloned());
            }
        }
        let containing: Vec<&Cut> =
            fresh.iter().filter(|a| a.contains(u) && partners.iter().any(|&v| !a.contains(v))).collect();
        match containing.iter().find(|a| containing.iter().all(|b| a.side().is_subset(b.side()))) {
            Some(a) => {
                smallest.insert((*a).clone());
            }
            None => undefined += 1,
        }
    }
    let new: Vec<&Cut> = next.cuts().filter(|c| !prev.contains(c)).collect();
    let pairwise = |s: &BTreeSet<Cut>| {
        let v: Vec<&Cut> = s.iter().collect();
        v.iter().enumerate().all(|(i, a)| v[i + 1..].iter().all(|b| netcore::is_nested(a, b)))
    };
    LevelComparison {
        level: n,
        canonical: new.len(),
        optimally_nested: optimal.len(),
        canonical_within_optimal: new.iter().all(|c| optimal.contains(*c)),
        optimal_is_nested: pairwise(&optimal),
        smallest_undefined: undefined,
        smallest_is_nested: pairwise(&smallest),
    }
}
