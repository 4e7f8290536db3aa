mod common;

use common::*;
use cuttree::netcore::{capacity, coboundary, corners, is_nested, is_tight, set_capacity};
use cuttree::VertexSet;
use proptest::prelude::*;

fn cap_or_zero(net: &cuttree::Network, s: &VertexSet) -> u64 {
    if s.is_empty() || s.is_full() {
        0
    } else {
        set_capacity(net, s)
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn counts_reproduce_capacities((net, cuts) in arb_network_with_cuts(2, 12, 2)) {
        let (a, b) = (&cuts[0], &cuts[1]);
        let d = corners(&net, a, b).unwrap();
        prop_assert_eq!(capacity(&net, a).unwrap(), d.a + d.b + d.e + d.f);
        prop_assert_eq!(capacity(&net, b).unwrap(), d.c + d.d + d.e + d.f);
        let caps = d.corner_caps();
        for (k, side) in d.corners.iter().enumerate() {
            prop_assert_eq!(caps[k], cap_or_zero(&net, side));
        }
        // Each boundary edge of A or B is counted once.
        let mut boundary: Vec<usize> = coboundary(&net, a).unwrap();
        boundary.extend(coboundary(&net, b).unwrap());
        boundary.sort();
        boundary.dedup();
        let total: u64 = boundary.iter().map(|&i| net.edge(i).cap).sum();
        prop_assert_eq!(total, d.a + d.b + d.c + d.d + d.e + d.f);
    }

    #[test]
    fn submodular((net, cuts) in arb_network_with_cuts(2, 12, 2)) {
        let (a, b) = (&cuts[0], &cuts[1]);
        let meet = a.side().intersection(b.side());
        let join = a.side().union(b.side());
        prop_assert!(
            capacity(&net, a).unwrap() + capacity(&net, b).unwrap()
                >= cap_or_zero(&net, &meet) + cap_or_zero(&net, &join)
        );
    }

    #[test]
    fn nesting_is_symmetric_and_complement_blind((_net, cuts) in arb_network_with_cuts(2, 12, 2)) {
        let (a, b) = (&cuts[0], &cuts[1]);
        let n = is_nested(a, b);
        prop_assert_eq!(n, is_nested(b, a));
        prop_assert_eq!(n, is_nested(&a.complement(), b));
        prop_assert_eq!(n, is_nested(a, &b.complement()));
        prop_assert!(is_nested(a, &a.complement()));
        prop_assert!(is_nested(a, a));
    }

    #[test]
    fn complement_is_involution((net, cuts) in arb_network_with_cuts(2, 12, 1)) {
        let a = &cuts[0];
        prop_assert_eq!(&a.complement().complement(), a);
        prop_assert_eq!(capacity(&net, a).unwrap(), capacity(&net, &a.complement()).unwrap());
        prop_assert_eq!(is_tight(&net, a).unwrap(), is_tight(&net, &a.complement()).unwrap());
    }

    #[test]
    fn coboundary_is_the_crossing_edges((net, cuts) in arb_network_with_cuts(2, 12, 1)) {
        let a = &cuts[0];
        let got = coboundary(&net, a).unwrap();
        let want: Vec<usize> = (0..net.edge_count())
            .filter(|&i| a.contains(net.edge(i).u) != a.contains(net.edge(i).v))
            .collect();
        prop_assert_eq!(got, want);
    }
}

#[test]
fn tree_example_cut_has_capacity_twelve() {
    let net = fixture("tree_example.json");
    let a = cuttree::Cut::from_names(&net, &["q", "r", "s", "t", "u", "v", "w"]).unwrap();
    let edges = coboundary(&net, &a).unwrap();
    assert_eq!(edges.len(), 4);
    assert_eq!(capacity(&net, &a).unwrap(), 12);
}

#[test]
fn json_loader_rejects_invalid_networks() {
    use cuttree::formats::parse_network;
    let bad = [
        r#"{"vertices":["a","b"],"edges":[]}"#,
        r#"{"vertices":["a","b"],"edges":[{"u":"a","v":"b","c":0}]}"#,
        r#"{"vertices":["a","b"],"edges":[{"u":"a","v":"a","c":1}]}"#,
        r#"{"vertices":["a","b"],"edges":[{"u":"a","v":"b","c":1},{"u":"b","v":"a","c":1}]}"#,
        r#"{"vertices":["a","a"],"edges":[]}"#,
        r#"{"vertices":["a","b"],"edges":[{"u":"a","v":"x","c":1}]}"#,
        r#"{"vertices":["a","b"],"edges":[{"u":"a","v":"b","c":-1}]}"#,
        r#"{"vertices":[],"edges":[]}"#,
    ];
    for text in bad {
        assert!(parse_network(text).is_err(), "{text}");
    }
}
