//! Cut families, the exhaustive cut oracle, thinness, tight-cut
//! enumeration and uncrossing.

use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};
use std::rc::Rc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::flow::ConnectivityTable;
use crate::netcore::{self, Capacity, Cut, Network, VertexId};
use crate::vset::VertexSet;

/// Default vertex cap for exhaustive enumeration.
pub const DEFAULT_ORACLE_LIMIT: usize = 16;

/// Hard ceiling on the oracle, whatever limit is requested.
const ORACLE_CEILING: usize = 26;

/// An ordered, duplicate-free set of cuts with optional level tags.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CutFamily {
    members: BTreeMap<Cut, Option<Capacity>>,
}

impl CutFamily {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn insert(&mut self, cut: Cut) -> bool {
        if self.members.contains_key(&cut) {
            return false;
        }
        self.members.insert(cut, None);
        true
    }

    pub fn insert_with_level(&mut self, cut: Cut, level: Capacity) -> bool {
        self.members.insert(cut, Some(level)).is_none()
    }

    pub fn contains(&self, cut: &Cut) -> bool {
        self.members.contains_key(cut)
    }

    pub fn level(&self, cut: &Cut) -> Option<Capacity> {
        self.members.get(cut).copied().flatten()
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &Cut> {
        self.members.keys()
    }

    pub fn to_vec(&self) -> Vec<Cut> {
        self.members.keys().cloned().collect()
    }
}

impl FromIterator<Cut> for CutFamily {
    fn from_iter<I: IntoIterator<Item = Cut>>(iter: I) -> Self {
        let mut f = CutFamily::new();
        for c in iter {
            f.insert(c);
        }
        f
    }
}

fn check_limit(net: &Network, limit: usize) -> Result<()> {
    let n = net.vertex_count();
    if n > limit.min(ORACLE_CEILING) {
        return Err(Error::OracleLimit { vertices: n, limit: limit.min(ORACLE_CEILING) });
    }
    Ok(())
}

/// Capacity of every vertex subset, indexed by bitmask.
fn subset_capacities(net: &Network) -> Vec<Capacity> {
    let n = net.vertex_count();
    let mut caps = vec![0 as Capacity; 1 << n];
    let nbr: Vec<Vec<(usize, Capacity)>> = (0..n)
        .map(|v| net.neighbors(v).iter().map(|&(w, i)| (w, net.edge(i).cap)).collect())
        .collect();
    for mask in 1usize..(1 << n) {
        let i = mask.trailing_zeros() as usize;
        let rest = mask & (mask - 1);
        let inner: Capacity = nbr[i].iter().filter(|(w, _)| rest >> w & 1 == 1).map(|(_, c)| c).sum();
        caps[mask] = caps[rest] + net.degree(i) - 2 * inner;
    }
    caps
}

fn mask_to_set(n: usize, mask: usize) -> VertexSet {
    VertexSet::from_iter(n, (0..n).filter(|v| mask >> v & 1 == 1))
}

/// Ground truth by brute force over all `2^|V| - 2` cuts.
pub struct Oracle<'a> {
    net: &'a Network,
    caps: Vec<Capacity>,
    lambda: ConnectivityTable,
}

impl<'a> Oracle<'a> {
    pub fn new(net: &'a Network, limit: usize) -> Result<Self> {
        check_limit(net, limit)?;
        let n = net.vertex_count();
        let caps = subset_capacities(net);
        let full = (1usize << n) - 1;
        let mut best = vec![Capacity::MAX; n * n];
        // Masks containing vertex 0 cover every partition once.
        for mask in (1..full).step_by(2) {
            let c = caps[mask];
            for u in (0..n).filter(|u| mask >> u & 1 == 1) {
                for v in (0..n).filter(|v| mask >> v & 1 == 0) {
                    let slot = &mut best[u * n + v];
                    if c < *slot {
                        *slot = c;
                    }
                }
            }
        }
        let lambda = ConnectivityTable::from_fn(n, |u, v| best[u * n + v].min(best[v * n + u]));
        Ok(Oracle { net, caps, lambda })
    }

    pub fn network(&self) -> &Network {
        self.net
    }

    pub fn lambda(&self) -> &ConnectivityTable {
        &self.lambda
    }

    pub fn capacity(&self, s: &VertexSet) -> Capacity {
        self.caps[self.mask(s)]
    }

    fn mask(&self, s: &VertexSet) -> usize {
        s.iter().fold(0, |m, v| m | 1 << v)
    }

    /// Every cut, in bitmask order.
    pub fn cuts(&self) -> impl Iterator<Item = (Cut, Capacity)> + '_ {
        let n = self.net.vertex_count();
        let full = (1usize << n) - 1;
        (1..full).map(move |m| (Cut::from_set_unchecked(mask_to_set(n, m)), self.caps[m]))
    }

    pub fn is_thin(&self, a: &Cut) -> bool {
        is_thin_with(&self.lambda, a, self.capacity(a.side()))
    }

    /// Thin cuts of capacity exactly `n`.
    pub fn thin_cuts(&self, n: Capacity) -> Vec<Cut> {
        self.cuts().filter(|(a, c)| *c == n && self.is_thin(a)).map(|(a, _)| a).collect()
    }

    /// All minimum cuts containing `s` and not `t`.
    pub fn min_cuts(&self, s: VertexId, t: VertexId) -> Vec<Cut> {
        let l = self.lambda.get(s, t);
        self.cuts()
            .filter(|(a, c)| *c == l && a.contains(s) && !a.contains(t))
            .map(|(a, _)| a)
            .collect()
    }
}

/// All `2^|V| - 2` cuts, tagged with their capacities.
pub fn enumerate_all_cuts(net: &Network, max_vertices: usize) -> Result<CutFamily> {
    check_limit(net, max_vertices)?;
    let n = net.vertex_count();
    let caps = subset_capacities(net);
    let mut fam = CutFamily::new();
    for (m, &cap) in caps.iter().enumerate().take((1usize << n) - 1).skip(1) {
        fam.insert_with_level(Cut::from_set_unchecked(mask_to_set(n, m)), cap);
    }
    Ok(fam)
}

/// Minimum cuts containing `s` and not `t`, by brute force over the
/// subsets that separate them.
pub fn enumerate_min_cuts(net: &Network, s: VertexId, t: VertexId, limit: usize) -> Result<Vec<Cut>> {
    check_limit(net, limit)?;
    if s == t {
        return Err(Error::IdenticalEndpoints);
    }
    let n = net.vertex_count();
    let caps = subset_capacities(net);
    let full = (1usize << n) - 1;
    let sep = (1..full).filter(|m| m >> s & 1 == 1 && m >> t & 1 == 0);
    let best = sep.clone().map(|m| caps[m]).min().unwrap_or(0);
    Ok(sep
        .filter(|&m| caps[m] == best)
        .map(|m| Cut::from_set_unchecked(mask_to_set(n, m)))
        .collect())
}

/// One record of an oracle dump.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OracleRecord {
    pub side: Vec<String>,
    pub capacity: Capacity,
    pub thin: bool,
    pub tight: bool,
}

/// Every cut with its capacity, thinness and tightness.
pub fn oracle_dump(net: &Network, limit: usize) -> Result<Vec<OracleRecord>> {
    let o = Oracle::new(net, limit)?;
    Ok(o
        .cuts()
        .map(|(a, c)| OracleRecord {
            side: net.names_of(a.side()),
            capacity: c,
            thin: o.is_thin(&a),
            tight: netcore::is_tight(net, &a).unwrap_or(false),
        })
        .collect())
}

/// Whether `a` lies in the ring generated by cuts of capacity at most
/// `m`: every pair it separates has `λ ≤ m`.
pub fn in_ring(lambda: &ConnectivityTable, a: &Cut, m: Capacity) -> bool {
    let comp = a.side().complement();
    a.side().iter().all(|u| comp.iter().all(|v| lambda.get(u, v) <= m))
}

fn is_thin_with(lambda: &ConnectivityTable, a: &Cut, cap: Capacity) -> bool {
    let comp = a.side().complement();
    a.side().iter().any(|u| comp.iter().any(|v| lambda.get(u, v) == cap))
}

/// Whether `a` is a minimum cut for some pair it separates.
pub fn is_thin(net: &Network, lambda: &ConnectivityTable, a: &Cut) -> Result<bool> {
    let cap = netcore::capacity(net, a)?;
    Ok(is_thin_with(lambda, a, cap))
}

/// Number of members of `family` not nested with `a`.
pub fn crossing_count(a: &Cut, family: &CutFamily) -> usize {
    family.iter().filter(|b| !netcore::is_nested(a, b)).count()
}

type Memo = HashMap<(Vec<Capacity>, usize, Capacity), Rc<Vec<VertexSet>>>;

/// Enumerates tight cuts through an edge, memoized within one network.
pub struct TightCuts<'a> {
    net: &'a Network,
    memo: Memo,
}

impl<'a> TightCuts<'a> {
    pub fn new(net: &'a Network) -> Self {
        TightCuts { net, memo: HashMap::new() }
    }

    /// All tight cuts `A` with `c(A) = k` and edge `e` in `δA`.
    pub fn through_edge(&mut self, e: usize, k: Capacity) -> CutFamily {
        let caps: Vec<Capacity> = self.net.edges().iter().map(|e| e.cap).collect();
        let found = self.rec(&caps, e, k);
        found.iter().map(|s| Cut::from_set_unchecked(s.clone())).collect()
    }

    fn rec(&mut self, caps: &[Capacity], e: usize, k: Capacity) -> Rc<Vec<VertexSet>> {
        if k == 0 || caps[e] == 0 || caps[e] > k {
            return Rc::new(Vec::new());
        }
        let key = (caps.to_vec(), e, k);
        if let Some(hit) = self.memo.get(&key) {
            return hit.clone();
        }
        let net = self.net;
        let edge = net.edge(e);
        let (x, y) = (edge.u, edge.v);
        let mut reduced = caps.to_vec();
        reduced[e] -= 1;

        let mut out = BTreeSet::new();
        match bfs_path(net, &reduced, x, y) {
            Err(reached) => {
                // e was a bridge: the two components are the only tight
                // cuts through it, of capacity 1.
                if k == 1 {
                    out.insert(reached.complement());
                    out.insert(reached);
                }
            }
            Ok(path) => {
                for ep in path {
                    for a in self.rec(&reduced, ep, k - 1).iter() {
                        if a.contains(x) != a.contains(y) {
                            out.insert(a.clone());
                        }
                    }
                }
            }
        }
        let out = Rc::new(out.into_iter().collect::<Vec<_>>());
        self.memo.insert(key, out.clone());
        out
    }
}

/// Edge indices of a shortest `x`-`y` path using edges with positive
/// capacity, or the set reached from `x` if there is none.
fn bfs_path(net: &Network, caps: &[Capacity], x: VertexId, y: VertexId) -> std::result::Result<Vec<usize>, VertexSet> {
    let n = net.vertex_count();
    let mut via = vec![usize::MAX; n];
    let mut seen = VertexSet::singleton(n, x);
    let mut queue = VecDeque::from([x]);
    while let Some(v) = queue.pop_front() {
        for &(w, i) in net.neighbors(v) {
            if caps[i] > 0 && !seen.contains(w) {
                seen.insert(w);
                via[w] = i;
                if w == y {
                    let mut path = Vec::new();
                    let mut cur = y;
                    while cur != x {
                        let i = via[cur];
                        path.push(i);
                        cur = net.edge(i).other(cur);
                    }
                    path.reverse();
                    return Ok(path);
                }
                queue.push_back(w);
            }
        }
    }
    Err(seen)
}

/// All tight cuts of capacity `k` whose coboundary contains edge `e`.
pub fn tight_cuts_through_edge(net: &Network, e: usize, k: Capacity) -> CutFamily {
    TightCuts::new(net).through_edge(e, k)
}

/// Replaces two crossing thin cuts by a pair of opposite corners.
///
/// Returns `(X, Y)` where `X` is a corner with capacity `c(a)`, `Y` the
/// opposite corner with capacity `c(b)`, and both are thin.
pub fn uncross(net: &Network, lambda: &ConnectivityTable, a: &Cut, b: &Cut) -> Result<(Cut, Cut)> {
    if netcore::is_nested(a, b) {
        return Err(Error::AlreadyNested);
    }
    if !is_thin(net, lambda, a)? || !is_thin(net, lambda, b)? {
        return Err(Error::NotThin);
    }
    let (m, n) = (netcore::capacity(net, a)?, netcore::capacity(net, b)?);
    if m > n {
        let (y, x) = uncross_ordered(net, lambda, b, a, n, m)?;
        Ok((x, y))
    } else {
        uncross_ordered(net, lambda, a, b, m, n)
    }
}

fn uncross_ordered(
    net: &Network,
    lambda: &ConnectivityTable,
    a: &Cut,
    b: &Cut,
    m: Capacity,
    n: Capacity,
) -> Result<(Cut, Cut)> {
    let (mut a, mut b) = (a.side().clone(), b.side().clone());
    if netcore::corners_of(net, &a, &b).a > netcore::corners_of(net, &a, &b).b {
        b = b.complement();
    }
    if netcore::corners_of(net, &a, &b).c > netcore::corners_of(net, &a, &b).d {
        a = a.complement();
    }
    let cd = netcore::corners_of(net, &a, &b);
    let [ab, ab_, a_b, a_b_] = cd.corners.clone();
    let mut order = Vec::new();
    if cd.a < cd.b || cd.e != 0 {
        order.push((ab_.clone(), a_b.clone()));
    } else if cd.f != 0 {
        order.push((a_b_.clone(), ab.clone()));
    }
    // Remaining relabelings, tried in a fixed order.
    order.extend([(ab_.clone(), a_b.clone()), (ab.clone(), a_b_.clone()), (a_b_, ab), (a_b, ab_)]);

    let ok = |x: &VertexSet, cap: Capacity| -> bool {
        if x.is_empty() || x.is_full() {
            return false;
        }
        let c = Cut::from_set_unchecked(x.clone());
        netcore::set_capacity(net, x) == cap && is_thin_with(lambda, &c, cap)
    };
    order
        .into_iter()
        .find(|(x, y)| ok(x, m) && ok(y, n))
        .map(|(x, y)| (Cut::from_set_unchecked(x), Cut::from_set_unchecked(y)))
        .ok_or(Error::NotThin)
}
