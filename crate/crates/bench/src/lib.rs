//! Input generators shared by the benchmarks.

use std::collections::BTreeSet;

use cuttree::{Capacity, Network};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// A connected network on `n` vertices: a random spanning tree plus
/// `extra` further edges, capacities uniform in `1..=max_cap`.
pub fn random_network(seed: u64, n: usize, extra: usize, max_cap: Capacity) -> Network {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let names: Vec<String> = (0..n).map(|i| format!("v{i:04}")).collect();
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(&mut rng);
    let mut pairs = BTreeSet::new();
    for i in 1..n {
        let j = rng.gen_range(0..i);
        pairs.insert((order[i].min(order[j]), order[i].max(order[j])));
    }
    let limit = n * (n - 1) / 2;
    while pairs.len() < (n - 1 + extra).min(limit) {
        let (x, y) = (rng.gen_range(0..n), rng.gen_range(0..n));
        if x != y {
            pairs.insert((x.min(y), x.max(y)));
        }
    }
    let edges: Vec<(String, String, Capacity)> = pairs
        .into_iter()
        .map(|(x, y)| (names[x].clone(), names[y].clone(), rng.gen_range(1..=max_cap)))
        .collect();
    Network::new(&names, &edges).expect("generated network is valid")
}

/// A `rows × cols` grid with unit capacities.
pub fn grid(rows: usize, cols: usize) -> Network {
    let name = |r: usize, c: usize| format!("{r:03}:{c:03}");
    let names: Vec<String> = (0..rows).flat_map(|r| (0..cols).map(move |c| name(r, c))).collect();
    let mut edges = Vec::new();
    for r in 0..rows {
        for c in 0..cols {
            if r + 1 < rows {
                edges.push((name(r, c), name(r + 1, c), 1));
            }
            if c + 1 < cols {
                edges.push((name(r, c), name(r, c + 1), 1));
            }
        }
    }
    Network::new(&names, &edges).expect("grid is valid")
}
