//! JSON, DIMACS and DOT formats.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::flow::FlowAssignment;
use crate::netcore::{Capacity, Network};
use crate::strips::StripNetwork;
use crate::structure::{StructureTree, TreeEdge, TreeNode};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EdgeJson {
    pub u: String,
    pub v: String,
    pub c: Capacity,
    /// Free-form annotation, ignored by the loader.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NetworkJson {
    pub vertices: Vec<String>,
    pub edges: Vec<EdgeJson>,
}

impl NetworkJson {
    pub fn to_network(&self) -> Result<Network> {
        let edges: Vec<(&str, &str, Capacity)> = self.edges.iter().map(|e| (e.u.as_str(), e.v.as_str(), e.c)).collect();
        let names: Vec<&str> = self.vertices.iter().map(String::as_str).collect();
        Network::new(&names, &edges)
    }

    pub fn from_network(net: &Network) -> Self {
        NetworkJson {
            vertices: net.names().to_vec(),
            edges: net
                .edges()
                .iter()
                .map(|e| EdgeJson { u: net.name(e.u).into(), v: net.name(e.v).into(), c: e.cap, note: None })
                .collect(),
        }
    }
}

/// Loads a network from JSON or DIMACS text, whichever it looks like.
pub fn parse_network(text: &str) -> Result<Network> {
    if text.trim_start().starts_with('{') {
        let j: NetworkJson = serde_json::from_str(text)?;
        j.to_network()
    } else {
        parse_dimacs(text)
    }
}

/// Reads `p max n m` / `a u v cap` text. Arcs are taken as undirected
/// edges; an arc and its reverse must agree on capacity.
pub fn parse_dimacs(text: &str) -> Result<Network> {
    let mut n: Option<usize> = None;
    let mut edges: BTreeMap<(usize, usize), Capacity> = BTreeMap::new();
    for (lineno, line) in text.lines().enumerate() {
        let bad = |msg: &str| Error::Parse(format!("line {}: {msg}", lineno + 1));
        let mut it = line.split_whitespace();
        match it.next() {
            None | Some("c") | Some("n") => {}
            Some("p") => {
                if it.next() != Some("max") {
                    return Err(bad("expected `p max n m`"));
                }
                let count = it.next().and_then(|s| s.parse().ok()).ok_or_else(|| bad("bad vertex count"))?;
                n = Some(count);
            }
            Some("a") => {
                let nv = n.ok_or_else(|| bad("arc before problem line"))?;
                let nums: Vec<&str> = it.collect();
                if nums.len() != 3 {
                    return Err(bad("expected `a u v cap`"));
                }
                let u: usize = nums[0].parse().map_err(|_| bad("bad vertex"))?;
                let v: usize = nums[1].parse().map_err(|_| bad("bad vertex"))?;
                let c: Capacity = nums[2].parse().map_err(|_| bad("capacity must be a nonnegative integer"))?;
                if u == 0 || v == 0 || u > nv || v > nv {
                    return Err(bad("vertex out of range"));
                }
                let key = (u.min(v), u.max(v));
                match edges.get(&key) {
                    Some(&old) if old != c => return Err(bad("arc and reverse arc disagree")),
                    _ => {
                        edges.insert(key, c);
                    }
                }
            }
            Some(other) => return Err(bad(&format!("unknown line type `{other}`"))),
        }
    }
    let nv = n.ok_or_else(|| Error::Parse("missing problem line".into()))?;
    let names: Vec<String> = (1..=nv).map(|i| i.to_string()).collect();
    let list: Vec<(String, String, Capacity)> =
        edges.into_iter().map(|((u, v), c)| (u.to_string(), v.to_string(), c)).collect();
    Network::new(&names, &list)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FlowEdgeJson {
    pub u: String,
    pub v: String,
    pub flow: Capacity,
}

/// A flow; each edge is listed in its flow direction.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FlowJson {
    pub value: i64,
    pub edges: Vec<FlowEdgeJson>,
}

impl FlowJson {
    pub fn from_flow(net: &Network, f: &FlowAssignment) -> Self {
        let edges = (0..net.edge_count())
            .filter_map(|i| {
                f.orient(net, i).map(|(x, y)| FlowEdgeJson { u: net.name(x).into(), v: net.name(y).into(), flow: f.f(i) })
            })
            .collect();
        FlowJson { value: f.value(net), edges }
    }

    /// Rebuilds the assignment on `net` for the given endpoints.
    pub fn to_flow(&self, net: &Network, s: &str, t: &str) -> Result<FlowAssignment> {
        let mut f = FlowAssignment::zero(net, net.id(s)?, net.id(t)?);
        for e in &self.edges {
            f.set(net, net.id(&e.u)?, net.id(&e.v)?, e.flow)?;
        }
        Ok(f)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NodeJson {
    pub id: usize,
    pub image_of: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TreeEdgeJson {
    pub a: usize,
    pub b: usize,
    pub capacity: Capacity,
    pub cut_side: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EndJson {
    pub end: String,
    pub node: usize,
    /// Always true: the node is the image of an apex, and the window
    /// alone cannot tell whether it stands for a node or an end of the
    /// infinite tree.
    pub surrogate: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TreeJson {
    pub nodes: Vec<NodeJson>,
    pub edges: Vec<TreeEdgeJson>,
    /// Nodes standing in for the ends of a strip.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub ends: Vec<EndJson>,
}

impl TreeJson {
    pub fn from_tree(t: &StructureTree) -> Self {
        let names = t.vertex_names();
        let list = |vs: &mut dyn Iterator<Item = usize>| vs.map(|v| names[v].clone()).collect::<Vec<_>>();
        TreeJson {
            nodes: t
                .nodes()
                .iter()
                .enumerate()
                .map(|(id, n)| NodeJson { id, image_of: list(&mut n.image_of.iter().copied()) })
                .collect(),
            edges: t
                .edges()
                .iter()
                .map(|e| TreeEdgeJson { a: e.a, b: e.b, capacity: e.capacity, cut_side: list(&mut e.side.iter()) })
                .collect(),
            ends: Vec::new(),
        }
    }

    pub fn to_tree(&self) -> Result<StructureTree> {
        let mut names: Vec<String> = self.nodes.iter().flat_map(|n| n.image_of.iter().cloned()).collect();
        names.sort();
        let index: BTreeMap<&str, usize> = names.iter().enumerate().map(|(i, s)| (s.as_str(), i)).collect();
        let lookup = |s: &String| index.get(s.as_str()).copied().ok_or_else(|| Error::UnknownVertex(s.clone()));
        let mut nodes = vec![TreeNode { image_of: Vec::new() }; self.nodes.len()];
        for n in &self.nodes {
            let slot = nodes.get_mut(n.id).ok_or_else(|| Error::Parse(format!("node id {} out of range", n.id)))?;
            slot.image_of = n.image_of.iter().map(lookup).collect::<Result<_>>()?;
            slot.image_of.sort();
        }
        let nv = names.len();
        let mut edges = Vec::new();
        for e in &self.edges {
            let side = crate::VertexSet::from_iter(nv, e.cut_side.iter().map(lookup).collect::<Result<Vec<_>>>()?);
            if e.a >= nodes.len() || e.b >= nodes.len() {
                return Err(Error::Parse("edge endpoint out of range".into()));
            }
            edges.push(TreeEdge { a: e.a, b: e.b, capacity: e.capacity, side });
        }
        StructureTree::from_parts(names, nodes, edges)
    }
}

/// Graphviz rendering; nodes outside the image of `ν` are drawn as
/// filled points.
pub fn tree_to_dot(t: &StructureTree) -> String {
    let mut out = String::from("graph structure_tree {\n");
    let names = t.vertex_names();
    for (i, n) in t.nodes().iter().enumerate() {
        if n.image_of.is_empty() {
            let _ = writeln!(out, "  n{i} [shape=point, width=0.15, label=\"\"];");
        } else {
            let label: Vec<&str> = n.image_of.iter().map(|&v| names[v].as_str()).collect();
            let _ = writeln!(out, "  n{i} [label=\"{}\"];", label.join(",").replace('"', "\\\""));
        }
    }
    for e in t.edges() {
        let _ = writeln!(out, "  n{} -- n{} [label=\"{}\"];", e.a, e.b, e.capacity);
    }
    out.push_str("}\n");
    out
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StripJson {
    pub pattern: Vec<String>,
    pub internal: Vec<EdgeJson>,
    pub forward: Vec<EdgeJson>,
}

impl StripJson {
    pub fn to_strip(&self) -> Result<StripNetwork> {
        fn conv(es: &[EdgeJson]) -> Vec<(&str, &str, Capacity)> {
            es.iter().map(|e| (e.u.as_str(), e.v.as_str(), e.c)).collect()
        }
        let pattern: Vec<&str> = self.pattern.iter().map(String::as_str).collect();
        StripNetwork::new(&pattern, &conv(&self.internal), &conv(&self.forward))
    }

    pub fn from_strip(s: &StripNetwork) -> Self {
        let p = s.pattern();
        let conv = |es: &[(usize, usize, Capacity)]| {
            es.iter().map(|&(x, y, c)| EdgeJson { u: p[x].clone(), v: p[y].clone(), c, note: None }).collect()
        };
        StripJson { pattern: p.to_vec(), internal: conv(s.internal()), forward: conv(s.forward()) }
    }
}

impl TreeJson {
    /// A windowed strip tree, with the apex nodes listed as ends.
    pub fn from_windowed(wt: &crate::strips::WindowedTree) -> Self {
        let mut j = TreeJson::from_tree(&wt.tree);
        j.ends = vec![
            EndJson { end: crate::strips::LEFT_NAME.into(), node: wt.left_end, surrogate: true },
            EndJson { end: crate::strips::RIGHT_NAME.into(), node: wt.right_end, surrogate: true },
        ];
        j
    }
}

pub fn parse_strip(text: &str) -> Result<StripNetwork> {
    let j: StripJson = serde_json::from_str(text)?;
    j.to_strip()
}
