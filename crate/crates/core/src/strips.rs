//! Periodic two-ended strips `ℤ × pattern`, their finite truncations,
//! separation levels and windowed structure trees.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::flow::{self, FlowAssignment, INFINITE};
use crate::netcore::{Capacity, Network, VertexId};
use crate::structure::{canonical_system, tree_from_nested, CanonicalOptions, NestedSystem, StructureTree};
use crate::vset::VertexSet;

/// Widest truncation tried by [`separation_level`].
pub const MAX_WIDTH: usize = 64;

pub const LEFT_NAME: &str = "end:left";
pub const RIGHT_NAME: &str = "end:right";

/// A periodic strip: one copy of `pattern` per integer column.
///
/// `internal` edges join rails within a column; a `forward` edge `(p, q)`
/// joins rail `p` of column `i` to rail `q` of column `i + 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StripNetwork {
    pattern: Vec<String>,
    internal: Vec<(usize, usize, Capacity)>,
    forward: Vec<(usize, usize, Capacity)>,
}

impl StripNetwork {
    pub fn new<S: AsRef<str>>(
        pattern: &[S],
        internal: &[(S, S, Capacity)],
        forward: &[(S, S, Capacity)],
    ) -> Result<StripNetwork> {
        let pattern: Vec<String> = pattern.iter().map(|s| s.as_ref().to_string()).collect();
        if pattern.is_empty() {
            return Err(Error::InvalidStrip("empty pattern".into()));
        }
        let mut seen = BTreeSet::new();
        for p in &pattern {
            if p.is_empty() || p.contains('/') || p.contains(':') {
                return Err(Error::InvalidStrip(format!("bad rail name `{p}`")));
            }
            if !seen.insert(p.clone()) {
                return Err(Error::InvalidStrip(format!("duplicate rail `{p}`")));
            }
        }
        let rail = |s: &S| {
            pattern
                .iter()
                .position(|p| p == s.as_ref())
                .ok_or_else(|| Error::InvalidStrip(format!("unknown rail `{}`", s.as_ref())))
        };
        let mut inner = Vec::new();
        let mut pairs = BTreeSet::new();
        for (a, b, c) in internal {
            let (x, y) = (rail(a)?, rail(b)?);
            if x == y || *c == 0 || !pairs.insert((x.min(y), x.max(y))) {
                return Err(Error::InvalidStrip(format!("bad internal edge {}-{}", a.as_ref(), b.as_ref())));
            }
            inner.push((x.min(y), x.max(y), *c));
        }
        let mut fwd = Vec::new();
        let mut pairs = BTreeSet::new();
        for (a, b, c) in forward {
            let (x, y) = (rail(a)?, rail(b)?);
            if *c == 0 || !pairs.insert((x, y)) {
                return Err(Error::InvalidStrip(format!("bad forward edge {}-{}", a.as_ref(), b.as_ref())));
            }
            fwd.push((x, y, *c));
        }
        if fwd.is_empty() {
            return Err(Error::InvalidStrip("no forward edges: the strip has no ends".into()));
        }
        inner.sort();
        fwd.sort();
        let s = StripNetwork { pattern, internal: inner, forward: fwd };
        s.check_connected()?;
        Ok(s)
    }

    pub fn pattern(&self) -> &[String] {
        &self.pattern
    }

    pub fn internal(&self) -> &[(usize, usize, Capacity)] {
        &self.internal
    }

    pub fn forward(&self) -> &[(usize, usize, Capacity)] {
        &self.forward
    }

    pub fn rail(&self, name: &str) -> Result<usize> {
        self.pattern.iter().position(|p| p == name).ok_or_else(|| Error::UnknownVertex(name.to_string()))
    }

    /// A window of `2|pattern| + 2` columns must be connected.
    fn check_connected(&self) -> Result<()> {
        let k = self.pattern.len();
        let cols = 2 * k + 2;
        let id = |c: usize, r: usize| c * k + r;
        let mut adj = vec![Vec::new(); cols * k];
        for c in 0..cols {
            for &(x, y, _) in &self.internal {
                adj[id(c, x)].push(id(c, y));
                adj[id(c, y)].push(id(c, x));
            }
            if c + 1 < cols {
                for &(x, y, _) in &self.forward {
                    adj[id(c, x)].push(id(c + 1, y));
                    adj[id(c + 1, y)].push(id(c, x));
                }
            }
        }
        let mut seen = vec![false; cols * k];
        seen[0] = true;
        let mut queue = VecDeque::from([0]);
        while let Some(v) = queue.pop_front() {
            for &w in &adj[v] {
                if !seen[w] {
                    seen[w] = true;
                    queue.push_back(w);
                }
            }
        }
        if seen.iter().all(|&s| s) {
            Ok(())
        } else {
            Err(Error::InvalidStrip("strip graph is not connected".into()))
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum EndPoint {
    Left,
    Right,
}

/// A vertex `(column, rail)` of a strip, or one of its two ends.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum StripPoint {
    Vertex { col: i64, rail: usize },
    End(EndPoint),
}

impl StripPoint {
    /// Parses `end:left`, `end:right`, `col:<i>/<rail>` or `<i>/<rail>`.
    pub fn parse(s: &str, strip: &StripNetwork) -> Result<StripPoint> {
        match s {
            LEFT_NAME => return Ok(StripPoint::End(EndPoint::Left)),
            RIGHT_NAME => return Ok(StripPoint::End(EndPoint::Right)),
            _ => {}
        }
        let body = s.strip_prefix("col:").unwrap_or(s);
        let (col, rail) = body.split_once('/').ok_or_else(|| Error::UnknownVertex(s.to_string()))?;
        let col = i64::from_str(col).map_err(|_| Error::UnknownVertex(s.to_string()))?;
        Ok(StripPoint::Vertex { col, rail: strip.rail(rail)? })
    }

    fn reach(&self) -> usize {
        match self {
            StripPoint::Vertex { col, .. } => col.unsigned_abs() as usize,
            StripPoint::End(_) => 0,
        }
    }
}

impl fmt::Display for StripPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            StripPoint::Vertex { col, rail } => write!(f, "col:{col}/#{rail}"),
            StripPoint::End(EndPoint::Left) => f.write_str(LEFT_NAME),
            StripPoint::End(EndPoint::Right) => f.write_str(RIGHT_NAME),
        }
    }
}

fn vertex_name(strip: &StripNetwork, col: i64, rail: usize) -> String {
    format!("{col}/{}", strip.pattern[rail])
}

/// The finite network on columns `-w..=w`, with one apex per end that
/// absorbs everything beyond.
#[derive(Clone, Debug)]
pub struct Truncation {
    pub width: usize,
    pub network: Network,
    pub left: VertexId,
    pub right: VertexId,
    points: Vec<StripPoint>,
}

impl Truncation {
    /// The network vertex of a point, if it lies in the window.
    pub fn vertex(&self, p: StripPoint) -> Result<VertexId> {
        match p {
            StripPoint::End(EndPoint::Left) => Ok(self.left),
            StripPoint::End(EndPoint::Right) => Ok(self.right),
            StripPoint::Vertex { col, .. } if col.unsigned_abs() as usize > self.width => {
                Err(Error::UnknownVertex(format!("{p} lies outside width {}", self.width)))
            }
            _ => Ok(self.points.iter().position(|q| *q == p).expect("window vertex")),
        }
    }

    /// The strip point a network vertex stands for.
    pub fn point(&self, v: VertexId) -> StripPoint {
        self.points[v]
    }

    /// The two apexes.
    pub fn apexes(&self) -> VertexSet {
        VertexSet::from_iter(self.network.vertex_count(), [self.left, self.right])
    }
}

pub fn truncate(strip: &StripNetwork, w: usize) -> Result<Truncation> {
    truncate_with(strip, w, false)
}

/// With `pinned`, apex edges get infinite capacity so that no cut may
/// use them.
fn truncate_with(strip: &StripNetwork, w: usize, pinned: bool) -> Result<Truncation> {
    let wi = w as i64;
    let mut names = vec![LEFT_NAME.to_string(), RIGHT_NAME.to_string()];
    for c in -wi..=wi {
        for r in 0..strip.pattern.len() {
            names.push(vertex_name(strip, c, r));
        }
    }
    let mut caps: BTreeMap<(String, String), Capacity> = BTreeMap::new();
    let mut add = |a: String, b: String, c: Capacity| {
        let key = if a < b { (a, b) } else { (b, a) };
        *caps.entry(key).or_insert(0) += c;
    };
    let apex_cap = |c: Capacity| if pinned { INFINITE } else { c };
    for c in -wi..=wi {
        for &(x, y, cap) in &strip.internal {
            add(vertex_name(strip, c, x), vertex_name(strip, c, y), cap);
        }
    }
    for c in -wi - 1..=wi {
        for &(x, y, cap) in &strip.forward {
            match (c < -wi, c + 1 > wi) {
                (false, false) => add(vertex_name(strip, c, x), vertex_name(strip, c + 1, y), cap),
                (true, false) => add(LEFT_NAME.to_string(), vertex_name(strip, c + 1, y), apex_cap(cap)),
                (false, true) => add(vertex_name(strip, c, x), RIGHT_NAME.to_string(), apex_cap(cap)),
                (true, true) => {}
            }
        }
    }
    let edges: Vec<(String, String, Capacity)> = caps.into_iter().map(|((a, b), c)| (a, b, c)).collect();
    let network = Network::new(&names, &edges)?;
    let mut points = vec![StripPoint::End(EndPoint::Left); network.vertex_count()];
    for c in -wi..=wi {
        for r in 0..strip.pattern.len() {
            points[network.id(&vertex_name(strip, c, r))?] = StripPoint::Vertex { col: c, rail: r };
        }
    }
    let left = network.id(LEFT_NAME)?;
    let right = network.id(RIGHT_NAME)?;
    points[right] = StripPoint::End(EndPoint::Right);
    Ok(Truncation { width: w, network, left, right, points })
}

fn truncated_value(strip: &StripNetwork, w: usize, x: StripPoint, y: StripPoint, pinned: bool) -> Result<Capacity> {
    let t = truncate_with(strip, w, pinned)?;
    let (_, v) = flow::max_flow(&t.network, t.vertex(x)?, t.vertex(y)?)?;
    Ok(v)
}

/// Least capacity of a cut of the strip separating `x` from `y`.
///
/// Widths grow from just past the two points until two consecutive
/// truncations agree and a minimum cut avoids the apex edges.
pub fn separation_level(strip: &StripNetwork, x: StripPoint, y: StripPoint) -> Result<Capacity> {
    if x == y {
        return Err(Error::IdenticalEndpoints);
    }
    let start = x.reach().max(y.reach()) + 1;
    let mut cur = truncated_value(strip, start, x, y, false)?;
    for w in start..MAX_WIDTH {
        let next = truncated_value(strip, w + 1, x, y, false)?;
        if next == cur && truncated_value(strip, w, x, y, true)? == cur {
            return Ok(cur);
        }
        cur = next;
    }
    Err(Error::Unstable(MAX_WIDTH))
}

/// A canonical tree of a truncation, with the apex nodes standing in for
/// the two ends.
#[derive(Clone, Debug)]
pub struct WindowedTree {
    pub truncation: Truncation,
    pub system: NestedSystem,
    pub tree: StructureTree,
    pub left_end: usize,
    pub right_end: usize,
}

impl WindowedTree {
    /// Node of a strip point.
    pub fn node(&self, p: StripPoint) -> Result<usize> {
        Ok(self.tree.nu(self.truncation.vertex(p)?))
    }
}

/// `T_n` of the truncation at width `w`.
pub fn windowed_tree(strip: &StripNetwork, n: Capacity, w: usize) -> Result<WindowedTree> {
    if n < 1 {
        return Err(Error::InvalidLevel);
    }
    if (w as u64) < n {
        return Err(Error::InvalidStrip(format!("width {w} below level {n}")));
    }
    let t = truncate(strip, w)?;
    let opts = CanonicalOptions { infinite: Some(t.apexes()), ..CanonicalOptions::default() };
    let sys = canonical_system(&t.network, Some(n), &opts)?;
    let system = sys.level(n);
    let tree = tree_from_nested(&t.network, &system);
    let (left_end, right_end) = (tree.nu(t.left), tree.nu(t.right));
    Ok(WindowedTree { truncation: t, system, tree, left_end, right_end })
}

/// A maximum flow between the images of `x` and `y` in the truncation at
/// width `w`.
pub fn end_flow_certificate(
    strip: &StripNetwork,
    x: StripPoint,
    y: StripPoint,
    w: usize,
) -> Result<(Truncation, FlowAssignment, Capacity)> {
    let t = truncate(strip, w)?;
    let (f, v) = flow::max_flow(&t.network, t.vertex(x)?, t.vertex(y)?)?;
    Ok((t, f, v))
}

/// The infinite ladder: two rails joined by a rung in every column.
pub fn ladder() -> StripNetwork {
    StripNetwork::new(&["a", "b"], &[("a", "b", 1)], &[("a", "a", 1), ("b", "b", 1)]).expect("valid strip")
}

/// Five horizontal lines with a vertical path in every column.
pub fn five_line() -> StripNetwork {
    let rails = ["r0", "r1", "r2", "r3", "r4"];
    let internal: Vec<(&str, &str, Capacity)> = rails.windows(2).map(|w| (w[0], w[1], 1)).collect();
    let forward: Vec<(&str, &str, Capacity)> = rails.iter().map(|r| (*r, *r, 1)).collect();
    StripNetwork::new(&rails, &internal, &forward).expect("valid strip")
}
