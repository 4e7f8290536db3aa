mod common;

use common::*;
use cuttree::cutring::{enumerate_min_cuts, Oracle};
use cuttree::flow::{all_pairs_connectivity, flow_value_across_cut, flow_violations, verify_flow, Violation};
use cuttree::{max_flow, min_cut_largest, min_cut_smallest, Error, FlowAssignment};
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(150))]

    #[test]
    fn max_flow_matches_oracle(net in arb_network(2, 9, 5), s in 0usize..9, t in 0usize..9) {
        let n = net.vertex_count();
        let (s, t) = (s % n, t % n);
        prop_assume!(s != t);
        let oracle = Oracle::new(&net, 16).unwrap();
        let (f, value) = max_flow(&net, s, t).unwrap();
        prop_assert!(verify_flow(&net, &f));
        prop_assert_eq!(f.value(&net), value as i64);
        prop_assert_eq!(value, oracle.lambda().get(s, t));
        let best = oracle.cuts().filter(|(c, _)| c.separates(s, t)).map(|(_, k)| k).min().unwrap();
        prop_assert_eq!(value, best);
    }

    #[test]
    fn extremal_cuts_bracket_all_min_cuts(net in arb_network(2, 9, 4), s in 0usize..9, t in 0usize..9) {
        let n = net.vertex_count();
        let (s, t) = (s % n, t % n);
        prop_assume!(s != t);
        let small = min_cut_smallest(&net, s, t).unwrap();
        let large = min_cut_largest(&net, s, t).unwrap();
        let all = enumerate_min_cuts(&net, s, t, 16).unwrap();
        prop_assert!(all.contains(&small));
        prop_assert!(all.contains(&large));
        for c in &all {
            prop_assert!(small.side().is_subset(c.side()));
            prop_assert!(c.side().is_subset(large.side()));
        }
    }

    #[test]
    fn flow_is_constant_across_separating_cuts((net, cuts) in arb_network_with_cuts(2, 12, 8)) {
        let n = net.vertex_count();
        let (s, t) = (0, n - 1);
        let (f, value) = max_flow(&net, s, t).unwrap();
        for c in &cuts {
            let c = if c.contains(s) { c.clone() } else { c.complement() };
            if c.contains(t) {
                prop_assert!(matches!(flow_value_across_cut(&net, &f, &c), Err(Error::NonSeparating)));
            } else {
                prop_assert_eq!(flow_value_across_cut(&net, &f, &c).unwrap(), value as i64);
            }
        }
    }

    #[test]
    fn connectivity_table_is_symmetric_and_ultrametric(net in arb_network(2, 10, 4)) {
        let l = all_pairs_connectivity(&net);
        let n = net.vertex_count();
        for u in 0..n {
            for v in 0..n {
                if u == v { continue; }
                prop_assert_eq!(l.get(u, v), l.get(v, u));
                prop_assert_eq!(l.get(u, v), max_flow(&net, u, v).unwrap().1);
                for w in 0..n {
                    if w != u && w != v {
                        prop_assert!(l.get(u, w) >= l.get(u, v).min(l.get(v, w)));
                    }
                }
            }
        }
    }
}

#[test]
fn identical_endpoints_are_rejected() {
    let p = fixture("path.json");
    assert!(matches!(max_flow(&p, 0, 0), Err(Error::IdenticalEndpoints)));
    assert!(matches!(min_cut_smallest(&p, 1, 1), Err(Error::IdenticalEndpoints)));
}

#[test]
fn tree_example_flow_value() {
    let net = fixture("tree_example.json");
    let (f, v) = max_flow(&net, net.id("u").unwrap(), net.id("p").unwrap()).unwrap();
    assert_eq!(v, 12);
    assert!(flow_violations(&net, &f).is_empty());
}

#[test]
fn overfull_flow_is_reported() {
    let p = fixture("path.json");
    let mut f = FlowAssignment::zero(&p, 0, 2);
    f.set(&p, 0, 1, 1).unwrap();
    assert!(!verify_flow(&p, &f));
    assert!(flow_violations(&p, &f).iter().any(|v| matches!(v, Violation::Conservation { .. })));
    f.set(&p, 1, 2, 1).unwrap();
    assert!(verify_flow(&p, &f));
    f.set(&p, 1, 2, 3).unwrap();
    assert!(flow_violations(&p, &f).iter().any(|v| matches!(v, Violation::Capacity { .. })));
}
