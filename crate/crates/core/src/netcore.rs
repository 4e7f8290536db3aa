//! Networks, cuts and the corner calculus of two cuts.

use std::collections::{BTreeSet, HashMap, VecDeque};
use std::fmt;

use crate::error::{Error, Result};
use crate::vset::VertexSet;

pub type VertexId = usize;
pub type Capacity = u64;

/// An undirected edge with `u < v`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Edge {
    pub u: VertexId,
    pub v: VertexId,
    pub cap: Capacity,
}

impl Edge {
    pub fn other(&self, x: VertexId) -> VertexId {
        if x == self.u {
            self.v
        } else {
            self.u
        }
    }
}

/// A finite simple connected graph with positive integer capacities.
///
/// Vertices are stored in sorted name order and addressed by their
/// position in that order; edges are sorted by endpoint pair.
#[derive(Clone)]
pub struct Network {
    names: Vec<String>,
    index: HashMap<String, VertexId>,
    edges: Vec<Edge>,
    adj: Vec<Vec<(VertexId, usize)>>,
}

impl Network {
    /// Builds and validates a network.
    pub fn new<S: AsRef<str>>(vertices: &[S], edges: &[(S, S, Capacity)]) -> Result<Network> {
        let mut names: Vec<String> = vertices.iter().map(|s| s.as_ref().to_string()).collect();
        names.sort();
        if names.is_empty() {
            return Err(Error::InvalidNetwork("no vertices".into()));
        }
        if let Some(w) = names.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::InvalidNetwork(format!("duplicate vertex `{}`", w[0])));
        }
        let index: HashMap<String, VertexId> =
            names.iter().enumerate().map(|(i, s)| (s.clone(), i)).collect();
        let lookup = |s: &str| index.get(s).copied().ok_or_else(|| Error::UnknownVertex(s.to_string()));

        let mut list = Vec::with_capacity(edges.len());
        let mut seen = BTreeSet::new();
        for (a, b, c) in edges {
            let (x, y) = (lookup(a.as_ref())?, lookup(b.as_ref())?);
            if x == y {
                return Err(Error::InvalidNetwork(format!("loop at `{}`", a.as_ref())));
            }
            if *c == 0 {
                return Err(Error::InvalidNetwork(format!(
                    "edge {}-{} has zero capacity",
                    a.as_ref(),
                    b.as_ref()
                )));
            }
            let (u, v) = (x.min(y), x.max(y));
            if !seen.insert((u, v)) {
                return Err(Error::InvalidNetwork(format!(
                    "parallel edge {}-{}",
                    a.as_ref(),
                    b.as_ref()
                )));
            }
            list.push(Edge { u, v, cap: *c });
        }
        list.sort();

        let mut adj = vec![Vec::new(); names.len()];
        for (i, e) in list.iter().enumerate() {
            adj[e.u].push((e.v, i));
            adj[e.v].push((e.u, i));
        }
        for a in adj.iter_mut() {
            a.sort();
        }
        let net = Network { names, index, edges: list, adj };
        if !net.is_connected() {
            return Err(Error::InvalidNetwork("graph is not connected".into()));
        }
        Ok(net)
    }

    pub fn vertex_count(&self) -> usize {
        self.names.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, v: VertexId) -> &str {
        &self.names[v]
    }

    pub fn id(&self, name: &str) -> Result<VertexId> {
        self.index.get(name).copied().ok_or_else(|| Error::UnknownVertex(name.to_string()))
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge(&self, i: usize) -> &Edge {
        &self.edges[i]
    }

    /// Neighbours of `v` with the index of the connecting edge.
    pub fn neighbors(&self, v: VertexId) -> &[(VertexId, usize)] {
        &self.adj[v]
    }

    pub fn edge_between(&self, u: VertexId, v: VertexId) -> Option<usize> {
        self.adj[u].iter().find(|(w, _)| *w == v).map(|(_, i)| *i)
    }

    /// Total capacity at `v`.
    pub fn degree(&self, v: VertexId) -> Capacity {
        self.adj[v].iter().map(|&(_, i)| self.edges[i].cap).sum()
    }

    pub fn all(&self) -> VertexSet {
        VertexSet::full(self.vertex_count())
    }

    /// Vertex set from names.
    pub fn set_of<S: AsRef<str>>(&self, names: &[S]) -> Result<VertexSet> {
        let mut s = VertexSet::empty(self.vertex_count());
        for n in names {
            s.insert(self.id(n.as_ref())?);
        }
        Ok(s)
    }

    pub fn names_of(&self, s: &VertexSet) -> Vec<String> {
        s.iter().map(|v| self.names[v].clone()).collect()
    }

    /// Returns the same network with vertex `v` renamed to `names[v]`.
    pub fn relabel(&self, names: &[String]) -> Result<Network> {
        let edges: Vec<(String, String, Capacity)> = self
            .edges
            .iter()
            .map(|e| (names[e.u].clone(), names[e.v].clone(), e.cap))
            .collect();
        Network::new(names, &edges)
    }

    fn is_connected(&self) -> bool {
        connected_within(self, &self.all())
    }
}

impl fmt::Debug for Network {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Network")
            .field("vertices", &self.names)
            .field("edges", &self.edges.len())
            .finish()
    }
}

/// A cut: a vertex set `A` with `∅ ≠ A ≠ V`.
///
/// `A` and its complement are distinct cuts.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Cut {
    side: VertexSet,
}

impl Cut {
    pub fn new(side: VertexSet) -> Result<Cut> {
        if side.is_empty() || side.is_full() {
            return Err(Error::InvalidCut("side must be a nonempty proper subset".into()));
        }
        Ok(Cut { side })
    }

    pub fn from_names<S: AsRef<str>>(net: &Network, names: &[S]) -> Result<Cut> {
        Cut::new(net.set_of(names)?)
    }

    pub(crate) fn from_set_unchecked(side: VertexSet) -> Cut {
        debug_assert!(!side.is_empty() && !side.is_full());
        Cut { side }
    }

    pub fn side(&self) -> &VertexSet {
        &self.side
    }

    pub fn into_side(self) -> VertexSet {
        self.side
    }

    pub fn contains(&self, v: VertexId) -> bool {
        self.side.contains(v)
    }

    pub fn len(&self) -> usize {
        self.side.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn complement(&self) -> Cut {
        Cut { side: self.side.complement() }
    }

    /// True if the cut has `u` on one side and `v` on the other.
    pub fn separates(&self, u: VertexId, v: VertexId) -> bool {
        self.side.contains(u) != self.side.contains(v)
    }

    /// Side and complement in a fixed order, for partition-level comparison.
    pub fn partition_key(&self) -> VertexSet {
        if self.side.contains(0) {
            self.side.clone()
        } else {
            self.side.complement()
        }
    }

    pub fn map(&self, perm: &[usize]) -> Cut {
        Cut { side: self.side.map(perm) }
    }
}

impl fmt::Debug for Cut {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Cut{:?}", self.side)
    }
}

fn check_cut(net: &Network, a: &Cut) -> Result<()> {
    if a.side.universe() != net.vertex_count() {
        return Err(Error::InvalidCut("cut belongs to a different network".into()));
    }
    Ok(())
}

/// Edges with exactly one endpoint in `a`, as edge indices.
pub fn coboundary(net: &Network, a: &Cut) -> Result<Vec<usize>> {
    check_cut(net, a)?;
    Ok(coboundary_of(net, a.side()))
}

pub(crate) fn coboundary_of(net: &Network, s: &VertexSet) -> Vec<usize> {
    net.edges()
        .iter()
        .enumerate()
        .filter(|(_, e)| s.contains(e.u) != s.contains(e.v))
        .map(|(i, _)| i)
        .collect()
}

pub fn capacity(net: &Network, a: &Cut) -> Result<Capacity> {
    check_cut(net, a)?;
    Ok(set_capacity(net, a.side()))
}

/// Capacity of the coboundary of an arbitrary vertex set.
pub fn set_capacity(net: &Network, s: &VertexSet) -> Capacity {
    net.edges()
        .iter()
        .filter(|e| s.contains(e.u) != s.contains(e.v))
        .map(|e| e.cap)
        .sum()
}

/// The four corners of two cuts and the capacity between corner pairs.
///
/// `corners` is `[A∩B, A∩B*, A*∩B, A*∩B*]`. The counts are:
/// `a` between A∩B and A*∩B, `b` between A∩B* and A*∩B*,
/// `c` between A∩B and A∩B*, `d` between A*∩B and A*∩B*,
/// `e` between A∩B* and A*∩B, `f` between A∩B and A*∩B*.
/// Hence `c(A) = a+b+e+f`, `c(B) = c+d+e+f` and `c(A∩B) = a+c+f`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CornerData {
    pub corners: [VertexSet; 4],
    pub a: Capacity,
    pub b: Capacity,
    pub c: Capacity,
    pub d: Capacity,
    pub e: Capacity,
    pub f: Capacity,
}

impl CornerData {
    pub fn cap_a(&self) -> Capacity {
        self.a + self.b + self.e + self.f
    }

    pub fn cap_b(&self) -> Capacity {
        self.c + self.d + self.e + self.f
    }

    /// Capacities of the four corners, in `corners` order.
    pub fn corner_caps(&self) -> [Capacity; 4] {
        [
            self.a + self.c + self.f,
            self.b + self.c + self.e,
            self.a + self.d + self.e,
            self.b + self.d + self.f,
        ]
    }
}

pub fn corners(net: &Network, a: &Cut, b: &Cut) -> Result<CornerData> {
    check_cut(net, a)?;
    check_cut(net, b)?;
    Ok(corners_of(net, a.side(), b.side()))
}

pub(crate) fn corners_of(net: &Network, a: &VertexSet, b: &VertexSet) -> CornerData {
    let corner = |v: VertexId| -> usize {
        match (a.contains(v), b.contains(v)) {
            (true, true) => 0,
            (true, false) => 1,
            (false, true) => 2,
            (false, false) => 3,
        }
    };
    let mut cd = CornerData {
        corners: [
            a.intersection(b),
            a.difference(b),
            b.difference(a),
            a.union(b).complement(),
        ],
        a: 0,
        b: 0,
        c: 0,
        d: 0,
        e: 0,
        f: 0,
    };
    for e in net.edges() {
        let (x, y) = (corner(e.u), corner(e.v));
        let slot = match (x.min(y), x.max(y)) {
            (0, 2) => &mut cd.a,
            (1, 3) => &mut cd.b,
            (0, 1) => &mut cd.c,
            (2, 3) => &mut cd.d,
            (1, 2) => &mut cd.e,
            (0, 3) => &mut cd.f,
            _ => continue,
        };
        *slot += e.cap;
    }
    cd
}

/// True if some corner of `a` and `b` is empty.
pub fn is_nested(a: &Cut, b: &Cut) -> bool {
    sets_nested(a.side(), b.side())
}

pub(crate) fn sets_nested(a: &VertexSet, b: &VertexSet) -> bool {
    a.is_disjoint(b) || a.is_subset(b) || b.is_subset(a) || a.covers_with(b)
}

/// True if both sides of the cut induce connected subgraphs.
pub fn is_tight(net: &Network, a: &Cut) -> Result<bool> {
    check_cut(net, a)?;
    Ok(connected_within(net, a.side()) && connected_within(net, &a.side().complement()))
}

/// Whether the subgraph induced on `s` is connected (false when empty).
pub fn connected_within(net: &Network, s: &VertexSet) -> bool {
    let Some(start) = s.first() else {
        return false;
    };
    let mut seen = VertexSet::singleton(net.vertex_count(), start);
    let mut queue = VecDeque::from([start]);
    let mut count = 1;
    while let Some(x) = queue.pop_front() {
        for &(y, _) in net.neighbors(x) {
            if s.contains(y) && !seen.contains(y) {
                seen.insert(y);
                count += 1;
                queue.push_back(y);
            }
        }
    }
    count == s.len()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c4() -> Network {
        Network::new(
            &["1", "2", "3", "4"],
            &[("1", "2", 1), ("2", "3", 1), ("3", "4", 1), ("4", "1", 1)],
        )
        .unwrap()
    }

    fn path() -> Network {
        Network::new(&["a", "b", "c"], &[("a", "b", 1), ("b", "c", 1)]).unwrap()
    }

    #[test]
    fn rejects_bad_input() {
        assert!(Network::new(&["a", "b"], &[("a", "a", 1)]).is_err());
        assert!(Network::new(&["a", "b"], &[("a", "b", 1), ("b", "a", 2)]).is_err());
        assert!(Network::new(&["a", "b", "c"], &[("a", "b", 1)]).is_err());
        assert!(Network::new(&["a", "b"], &[("a", "b", 0)]).is_err());
        assert!(Network::new(&["a", "a"], &[("a", "a", 1)]).is_err());
        assert!(matches!(
            Network::new(&["a", "b"], &[("a", "z", 1)]),
            Err(Error::UnknownVertex(_))
        ));
    }

    #[test]
    fn coboundary_examples() {
        let p = path();
        let a = Cut::from_names(&p, &["a"]).unwrap();
        assert_eq!(coboundary(&p, &a).unwrap(), vec![0]);
        assert_eq!(capacity(&p, &a).unwrap(), 1);

        let g = c4();
        let a = Cut::from_names(&g, &["1", "3"]).unwrap();
        assert_eq!(coboundary(&g, &a).unwrap().len(), 4);
        assert_eq!(capacity(&g, &a).unwrap(), capacity(&g, &a.complement()).unwrap());
    }

    #[test]
    fn corners_of_crossing_arcs() {
        let g = c4();
        let a = Cut::from_names(&g, &["1", "2"]).unwrap();
        let b = Cut::from_names(&g, &["2", "3"]).unwrap();
        let cd = corners(&g, &a, &b).unwrap();
        assert_eq!(cd.corners[0], g.set_of(&["2"]).unwrap());
        assert_eq!(cd.corners[1], g.set_of(&["1"]).unwrap());
        assert_eq!(cd.corners[2], g.set_of(&["3"]).unwrap());
        assert_eq!(cd.corners[3], g.set_of(&["4"]).unwrap());
        assert_eq!((cd.a, cd.b, cd.c, cd.d, cd.e, cd.f), (1, 1, 1, 1, 0, 0));
        assert!(!is_nested(&a, &b));
    }

    #[test]
    fn diagonal_counts() {
        // A = {x, y}, B = {x, z} in K4: edge x-w is the only A∩B to A*∩B* edge.
        let k4 = Network::new(
            &["w", "x", "y", "z"],
            &[("w", "x", 1), ("w", "y", 2), ("w", "z", 3), ("x", "y", 4), ("x", "z", 5), ("y", "z", 6)],
        )
        .unwrap();
        let a = Cut::from_names(&k4, &["x", "y"]).unwrap();
        let b = Cut::from_names(&k4, &["x", "z"]).unwrap();
        let cd = corners(&k4, &a, &b).unwrap();
        assert_eq!(cd.f, 1);
        assert_eq!(cd.e, 6);
        assert_eq!(cd.cap_a(), capacity(&k4, &a).unwrap());
        assert_eq!(cd.cap_b(), capacity(&k4, &b).unwrap());
        assert_eq!(cd.corner_caps()[0], set_capacity(&k4, &cd.corners[0]));
    }

    #[test]
    fn identity_and_disjoint_corners() {
        let g = c4();
        let a = Cut::from_names(&g, &["1", "2"]).unwrap();
        let cd = corners(&g, &a, &a).unwrap();
        assert!(cd.corners[1].is_empty() && cd.corners[2].is_empty());

        let k3 = Network::new(&["u", "v", "w"], &[("u", "v", 1), ("v", "w", 1), ("u", "w", 1)]).unwrap();
        let u = Cut::from_names(&k3, &["u"]).unwrap();
        let v = Cut::from_names(&k3, &["v"]).unwrap();
        let cd = corners(&k3, &u, &v).unwrap();
        assert!(cd.corners[0].is_empty());
        assert!(cd.corners[1..].iter().all(|c| !c.is_empty()));
        assert!(is_nested(&u, &v));
        assert!(is_nested(&u, &u.complement()));
    }

    #[test]
    fn tightness() {
        let g = c4();
        assert!(is_tight(&g, &Cut::from_names(&g, &["1", "2"]).unwrap()).unwrap());
        assert!(!is_tight(&g, &Cut::from_names(&g, &["1", "3"]).unwrap()).unwrap());
        let p = path();
        assert!(!is_tight(&p, &Cut::from_names(&p, &["a", "c"]).unwrap()).unwrap());
    }

    #[test]
    fn rejects_degenerate_cuts() {
        let p = path();
        assert!(Cut::new(VertexSet::empty(3)).is_err());
        assert!(Cut::new(p.all()).is_err());
    }
}
