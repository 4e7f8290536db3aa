//! Max-flow by shortest augmenting paths, extremal min-cuts and the
//! all-pairs connectivity table.

use std::collections::VecDeque;

use crate::error::{Error, Result};
use crate::netcore::{Capacity, Cut, Network, VertexId};
use crate::vset::VertexSet;

/// Capacity used for edges that must never be cut.
pub const INFINITE: Capacity = 1 << 60;

/// Residual graph of an undirected capacitated graph.
///
/// Edge `i` becomes arcs `2i` (u→v) and `2i+1` (v→u), each starting with
/// the full capacity; pushing along one arc credits the other.
#[derive(Clone, Debug)]
pub(crate) struct Residual {
    adj: Vec<Vec<usize>>,
    head: Vec<usize>,
    res: Vec<Capacity>,
    cap: Vec<Capacity>,
}

impl Residual {
    pub(crate) fn new(n: usize, edges: impl IntoIterator<Item = (usize, usize, Capacity)>) -> Self {
        let mut r = Residual { adj: vec![Vec::new(); n], head: Vec::new(), res: Vec::new(), cap: Vec::new() };
        for (u, v, c) in edges {
            let i = r.cap.len();
            r.cap.push(c);
            r.head.extend([v, u]);
            r.res.extend([c, c]);
            r.adj[u].push(2 * i);
            r.adj[v].push(2 * i + 1);
        }
        r
    }

    pub(crate) fn from_network(net: &Network) -> Self {
        Residual::new(net.vertex_count(), net.edges().iter().map(|e| (e.u, e.v, e.cap)))
    }

    pub(crate) fn vertex_count(&self) -> usize {
        self.adj.len()
    }

    /// Runs Edmonds-Karp from the current state and returns the total value.
    pub(crate) fn max_flow(&mut self, s: usize, t: usize) -> Capacity {
        let n = self.vertex_count();
        let mut total = 0;
        let mut parent = vec![usize::MAX; n];
        loop {
            parent.iter_mut().for_each(|p| *p = usize::MAX);
            let mut queue = VecDeque::from([s]);
            let mut found = false;
            'bfs: while let Some(x) = queue.pop_front() {
                for &arc in &self.adj[x] {
                    let y = self.head[arc];
                    if y != s && parent[y] == usize::MAX && self.res[arc] > 0 {
                        parent[y] = arc;
                        if y == t {
                            found = true;
                            break 'bfs;
                        }
                        queue.push_back(y);
                    }
                }
            }
            if !found {
                return total;
            }
            let mut push = Capacity::MAX;
            let mut y = t;
            while y != s {
                let arc = parent[y];
                push = push.min(self.res[arc]);
                y = self.head[arc ^ 1];
            }
            let mut y = t;
            while y != s {
                let arc = parent[y];
                self.res[arc] -= push;
                self.res[arc ^ 1] += push;
                y = self.head[arc ^ 1];
            }
            total += push;
        }
    }

    /// Vertices reachable from `s` along arcs with spare capacity.
    pub(crate) fn reach_from(&self, s: usize) -> VertexSet {
        let mut seen = VertexSet::singleton(self.vertex_count(), s);
        let mut queue = VecDeque::from([s]);
        while let Some(x) = queue.pop_front() {
            for &arc in &self.adj[x] {
                let y = self.head[arc];
                if self.res[arc] > 0 && !seen.contains(y) {
                    seen.insert(y);
                    queue.push_back(y);
                }
            }
        }
        seen
    }

    /// Vertices that can reach `t` along arcs with spare capacity.
    pub(crate) fn reach_to(&self, t: usize) -> VertexSet {
        let mut seen = VertexSet::singleton(self.vertex_count(), t);
        let mut queue = VecDeque::from([t]);
        while let Some(y) = queue.pop_front() {
            for &arc in &self.adj[y] {
                // arc leaves y; its partner enters y from head[arc].
                let x = self.head[arc];
                if self.res[arc ^ 1] > 0 && !seen.contains(x) {
                    seen.insert(x);
                    queue.push_back(x);
                }
            }
        }
        seen
    }

    /// Successors of `x` in the residual graph.
    pub(crate) fn residual_succ(&self, x: usize) -> impl Iterator<Item = usize> + '_ {
        self.adj[x].iter().filter(|&&a| self.res[a] > 0).map(|&a| self.head[a])
    }

    /// Net flow on edge `i` in the u→v direction.
    pub(crate) fn net_flow(&self, i: usize) -> i64 {
        self.cap[i] as i64 - self.res[2 * i] as i64
    }
}

/// An integral flow between `s` and `t`.
///
/// `flow[i]` is the net flow on edge `i`; positive means from the edge's
/// `u` to its `v`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FlowAssignment {
    pub s: VertexId,
    pub t: VertexId,
    pub flow: Vec<i64>,
}

impl FlowAssignment {
    pub fn zero(net: &Network, s: VertexId, t: VertexId) -> Self {
        FlowAssignment { s, t, flow: vec![0; net.edge_count()] }
    }

    /// Amount of flow on edge `i`.
    pub fn f(&self, i: usize) -> Capacity {
        self.flow[i].unsigned_abs()
    }

    /// Direction `(ιe, τe)` of edge `i`, if it carries flow.
    pub fn orient(&self, net: &Network, i: usize) -> Option<(VertexId, VertexId)> {
        let e = net.edge(i);
        match self.flow[i].signum() {
            1 => Some((e.u, e.v)),
            -1 => Some((e.v, e.u)),
            _ => None,
        }
    }

    /// Net outflow at the source.
    pub fn value(&self, net: &Network) -> i64 {
        net_out(net, self, self.s)
    }

    /// Sets the flow on the edge `x`-`y` to `amount` in the x→y direction.
    pub fn set(&mut self, net: &Network, x: VertexId, y: VertexId, amount: Capacity) -> Result<()> {
        let i = net
            .edge_between(x, y)
            .ok_or_else(|| Error::InvalidNetwork(format!("no edge {}-{}", net.name(x), net.name(y))))?;
        let a = amount as i64;
        self.flow[i] = if net.edge(i).u == x { a } else { -a };
        Ok(())
    }
}

fn net_out(net: &Network, f: &FlowAssignment, v: VertexId) -> i64 {
    net.neighbors(v)
        .iter()
        .map(|&(_, i)| if net.edge(i).u == v { f.flow[i] } else { -f.flow[i] })
        .sum()
}

fn check_endpoints(net: &Network, s: VertexId, t: VertexId) -> Result<()> {
    if s >= net.vertex_count() || t >= net.vertex_count() {
        return Err(Error::UnknownVertex(format!("#{}", s.max(t))));
    }
    if s == t {
        return Err(Error::IdenticalEndpoints);
    }
    Ok(())
}

fn solve(net: &Network, s: VertexId, t: VertexId) -> Result<(Residual, Capacity)> {
    check_endpoints(net, s, t)?;
    let mut r = Residual::from_network(net);
    let value = r.max_flow(s, t);
    Ok((r, value))
}

/// A maximum `s`-`t` flow and its value.
pub fn max_flow(net: &Network, s: VertexId, t: VertexId) -> Result<(FlowAssignment, Capacity)> {
    let (r, value) = solve(net, s, t)?;
    let flow = (0..net.edge_count()).map(|i| r.net_flow(i)).collect();
    Ok((FlowAssignment { s, t, flow }, value))
}

/// The inclusion-smallest minimum cut containing `s` and not `t`.
pub fn min_cut_smallest(net: &Network, s: VertexId, t: VertexId) -> Result<Cut> {
    let (r, _) = solve(net, s, t)?;
    Cut::new(r.reach_from(s))
}

/// The inclusion-largest minimum cut containing `s` and not `t`.
pub fn min_cut_largest(net: &Network, s: VertexId, t: VertexId) -> Result<Cut> {
    let (r, _) = solve(net, s, t)?;
    Cut::new(r.reach_to(t).complement())
}

/// Flow out of `a` minus flow into `a`, for `a` separating `s` from `t`
/// with `s ∈ a`.
pub fn flow_value_across_cut(net: &Network, f: &FlowAssignment, a: &Cut) -> Result<i64> {
    if !a.contains(f.s) || a.contains(f.t) {
        return Err(Error::NonSeparating);
    }
    let mut total = 0;
    for (i, e) in net.edges().iter().enumerate() {
        match (a.contains(e.u), a.contains(e.v)) {
            (true, false) => total += f.flow[i],
            (false, true) => total -= f.flow[i],
            _ => {}
        }
    }
    Ok(total)
}

/// A violated flow constraint.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    /// Flow on the edge exceeds its capacity.
    Capacity { edge: usize, flow: Capacity, cap: Capacity },
    /// Inflow and outflow differ at an inner vertex.
    Conservation { vertex: VertexId, excess: i64 },
}

/// All capacity and conservation violations of `f`.
pub fn flow_violations(net: &Network, f: &FlowAssignment) -> Vec<Violation> {
    let mut out = Vec::new();
    if f.flow.len() != net.edge_count() {
        return vec![Violation::Capacity { edge: net.edge_count(), flow: 0, cap: 0 }];
    }
    for (i, e) in net.edges().iter().enumerate() {
        if f.f(i) > e.cap {
            out.push(Violation::Capacity { edge: i, flow: f.f(i), cap: e.cap });
        }
    }
    for v in 0..net.vertex_count() {
        if v != f.s && v != f.t {
            let excess = net_out(net, f, v);
            if excess != 0 {
                out.push(Violation::Conservation { vertex: v, excess });
            }
        }
    }
    out
}

pub fn verify_flow(net: &Network, f: &FlowAssignment) -> bool {
    flow_violations(net, f).is_empty()
}

/// Minimum cut capacity `λ(u, v)` for every vertex pair.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConnectivityTable {
    n: usize,
    lambda: Vec<Capacity>,
}

impl ConnectivityTable {
    pub(crate) fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> Capacity) -> Self {
        let mut lambda = vec![0; n * n];
        for u in 0..n {
            for v in u + 1..n {
                let l = f(u, v);
                lambda[u * n + v] = l;
                lambda[v * n + u] = l;
            }
        }
        ConnectivityTable { n, lambda }
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    /// `λ(u, v)`; zero on the diagonal.
    pub fn get(&self, u: VertexId, v: VertexId) -> Capacity {
        self.lambda[u * self.n + v]
    }

    pub fn max(&self) -> Capacity {
        self.lambda.iter().copied().max().unwrap_or(0)
    }

    /// Unordered pairs `u < v` with `λ(u, v) = n`.
    pub fn pairs_at(&self, n: Capacity) -> impl Iterator<Item = (VertexId, VertexId)> + '_ {
        (0..self.n).flat_map(move |u| (u + 1..self.n).filter(move |&v| self.get(u, v) == n).map(move |v| (u, v)))
    }
}

/// Builds the table from `|V| - 1` max-flow computations (Gusfield).
pub fn all_pairs_connectivity(net: &Network) -> ConnectivityTable {
    let n = net.vertex_count();
    let mut parent = vec![0usize; n];
    let mut weight = vec![0 as Capacity; n];
    for s in 1..n {
        let t = parent[s];
        let mut r = Residual::from_network(net);
        weight[s] = r.max_flow(s, t);
        let side = r.reach_from(s);
        for (i, p) in parent.iter_mut().enumerate().skip(s + 1) {
            if side.contains(i) && *p == t {
                *p = s;
            }
        }
    }
    // Minimum edge weight on tree paths, one traversal per source.
    let mut tree = vec![Vec::new(); n];
    for s in 1..n {
        tree[s].push((parent[s], weight[s]));
        tree[parent[s]].push((s, weight[s]));
    }
    let mut lambda = vec![0; n * n];
    for src in 0..n {
        let mut best = vec![Capacity::MAX; n];
        let mut stack = vec![src];
        let mut seen = vec![false; n];
        seen[src] = true;
        while let Some(x) = stack.pop() {
            for &(y, w) in &tree[x] {
                if !seen[y] {
                    seen[y] = true;
                    best[y] = best[x].min(w);
                    stack.push(y);
                }
            }
        }
        for v in 0..n {
            lambda[src * n + v] = if v == src { 0 } else { best[v] };
        }
    }
    ConnectivityTable { n, lambda }
}
