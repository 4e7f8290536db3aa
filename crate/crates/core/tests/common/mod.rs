#![allow(dead_code)]

use std::collections::BTreeSet;
use std::path::PathBuf;

use cuttree::formats::{parse_network, parse_strip};
use cuttree::{Capacity, Network, StripNetwork, StructureTree};
use rand::seq::SliceRandom;
use rand::Rng;

pub fn fixture_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures").join(name)
}

pub fn fixture(name: &str) -> Network {
    parse_network(&std::fs::read_to_string(fixture_path(name)).unwrap()).unwrap()
}

pub fn strip_fixture(name: &str) -> StripNetwork {
    parse_strip(&std::fs::read_to_string(fixture_path(name)).unwrap()).unwrap()
}

pub fn net(names: &[&str], edges: &[(&str, &str, Capacity)]) -> Network {
    Network::new(names, edges).unwrap()
}

pub fn cycle(n: usize) -> Network {
    let names: Vec<String> = (0..n).map(|i| i.to_string()).collect();
    let edges: Vec<(String, String, Capacity)> =
        (0..n).map(|i| (names[i].clone(), names[(i + 1) % n].clone(), 1)).collect();
    Network::new(&names, &edges).unwrap()
}

/// A random connected network: a random spanning tree plus each other
/// pair with probability `density`.
pub fn random_network<R: Rng>(rng: &mut R, n: usize, density: f64, max_cap: Capacity) -> Network {
    let names: Vec<String> = (0..n).map(|i| format!("v{i}")).collect();
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(rng);
    let mut pairs = BTreeSet::new();
    for i in 1..n {
        let j = rng.gen_range(0..i);
        let (x, y) = (order[i], order[j]);
        pairs.insert((x.min(y), x.max(y)));
    }
    for x in 0..n {
        for y in x + 1..n {
            if rng.gen_bool(density) {
                pairs.insert((x, y));
            }
        }
    }
    let edges: Vec<(String, String, Capacity)> =
        pairs.into_iter().map(|(x, y)| (names[x].clone(), names[y].clone(), rng.gen_range(1..=max_cap))).collect();
    Network::new(&names, &edges).unwrap()
}

/// The tree as name-level data: node images, and each directed edge as
/// (side, far side, capacity), all sorted.
pub type NormalTree = (BTreeSet<Vec<String>>, BTreeSet<(Vec<String>, Vec<String>, Capacity)>);

pub fn normalize(t: &StructureTree) -> NormalTree {
    let names = t.vertex_names();
    let images = t
        .nodes()
        .iter()
        .map(|n| {
            let mut v: Vec<String> = n.image_of.iter().map(|&i| names[i].clone()).collect();
            v.sort();
            v
        })
        .collect();
    let edges = t
        .edges()
        .iter()
        .flat_map(|e| {
            let mut side: Vec<String> = e.side.iter().map(|i| names[i].clone()).collect();
            let mut rest: Vec<String> = e.side.complement().iter().map(|i| names[i].clone()).collect();
            side.sort();
            rest.sort();
            [(side.clone(), rest.clone(), e.capacity), (rest, side, e.capacity)]
        })
        .collect();
    (images, edges)
}

pub fn degree_sequence(t: &StructureTree) -> Vec<usize> {
    let mut d: Vec<usize> = (0..t.node_count()).map(|i| t.degree(i)).collect();
    d.sort();
    d
}

/// Networks for property tests, generated from a seed so failures can be
/// replayed.
pub fn arb_network(min_n: usize, max_n: usize, max_cap: Capacity) -> impl proptest::strategy::Strategy<Value = Network> {
    use proptest::prelude::*;
    (min_n..=max_n, 0.05f64..0.9, any::<u64>()).prop_map(move |(n, density, seed)| {
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        random_network(&mut rng, n, density, max_cap)
    })
}

/// A network with a cut side drawn from a bit mask.
pub fn arb_network_with_cuts(
    min_n: usize,
    max_n: usize,
    k: usize,
) -> impl proptest::strategy::Strategy<Value = (Network, Vec<cuttree::Cut>)> {
    use proptest::prelude::*;
    (arb_network(min_n, max_n, 4), proptest::collection::vec(any::<u32>(), k)).prop_map(|(net, masks)| {
        let nv = net.vertex_count();
        let cuts = masks
            .into_iter()
            .map(|m| {
                let full = (1u32 << nv) - 1;
                let mut m = m & full;
                if m == 0 {
                    m = 1;
                } else if m == full {
                    m ^= 1;
                }
                let side = cuttree::VertexSet::from_iter(nv, (0..nv).filter(|i| m >> i & 1 == 1));
                cuttree::Cut::new(side).unwrap()
            })
            .collect();
        (net, cuts)
    })
}
