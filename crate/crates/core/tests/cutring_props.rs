mod common;

use common::*;
use cuttree::cutring::{
    crossing_count, enumerate_all_cuts, in_ring, is_thin, oracle_dump, tight_cuts_through_edge, uncross, CutFamily,
    Oracle,
};
use cuttree::flow::all_pairs_connectivity;
use cuttree::netcore::{capacity, corners, is_nested, is_tight};
use cuttree::{Cut, Error};
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(120))]

    #[test]
    fn ring_membership_is_monotone((net, cuts) in arb_network_with_cuts(2, 12, 1)) {
        let l = all_pairs_connectivity(&net);
        let a = &cuts[0];
        let c = capacity(&net, a).unwrap();
        prop_assert!(in_ring(&l, a, c));
        let mut seen = false;
        for m in 0..=c + 1 {
            let now = in_ring(&l, a, m);
            prop_assert!(!seen || now);
            seen = now;
        }
    }

    #[test]
    fn thin_cuts_are_tight(net in arb_network(2, 9, 4)) {
        let o = Oracle::new(&net, 16).unwrap();
        for (a, _) in o.cuts() {
            if o.is_thin(&a) {
                prop_assert!(is_tight(&net, &a).unwrap(), "{:?}", a);
            }
        }
    }

    #[test]
    fn tight_cut_enumeration_matches_oracle(net in arb_network(2, 8, 3), pick in any::<usize>(), k in 1u64..7) {
        let e = pick % net.edge_count();
        let (x, y) = (net.edge(e).u, net.edge(e).v);
        let want: CutFamily = enumerate_all_cuts(&net, 16)
            .unwrap()
            .iter()
            .filter(|a| a.separates(x, y) && capacity(&net, a).unwrap() == k && is_tight(&net, a).unwrap())
            .cloned()
            .collect();
        prop_assert_eq!(tight_cuts_through_edge(&net, e, k), want);
    }

    #[test]
    fn uncrossing_returns_thin_opposite_corners(net in arb_network(3, 9, 3)) {
        let o = Oracle::new(&net, 16).unwrap();
        let l = o.lambda();
        let thin: Vec<Cut> = o.cuts().map(|(a, _)| a).filter(|a| o.is_thin(a)).collect();
        for a in thin.iter().take(40) {
            for b in thin.iter().take(40) {
                if is_nested(a, b) {
                    prop_assert!(matches!(uncross(&net, l, a, b), Err(Error::AlreadyNested)));
                    continue;
                }
                let (x, y) = uncross(&net, l, a, b).unwrap();
                prop_assert_eq!(capacity(&net, &x).unwrap(), capacity(&net, a).unwrap());
                prop_assert_eq!(capacity(&net, &y).unwrap(), capacity(&net, b).unwrap());
                prop_assert!(o.is_thin(&x) && o.is_thin(&y));
                prop_assert!(x.side().is_disjoint(y.side()));
                let cs = corners(&net, a, b).unwrap().corners;
                prop_assert!(cs.contains(x.side()) && cs.contains(y.side()));
            }
        }
    }

    #[test]
    fn corner_crossing_counts_drop(net in arb_network(3, 8, 3)) {
        let o = Oracle::new(&net, 16).unwrap();
        let sys = cuttree::canonical_system(&net, None, &Default::default()).unwrap().top();
        let fam: CutFamily = sys.cuts().cloned().collect();
        for b in sys.cuts() {
            for (a, _) in o.cuts() {
                if !o.is_thin(&a) || is_nested(&a, b) {
                    continue;
                }
                let meet = Cut::new(a.side().intersection(b.side())).unwrap();
                let rest = Cut::new(a.side().difference(b.side())).unwrap();
                prop_assert!(crossing_count(&meet, &fam) + crossing_count(&rest, &fam) < crossing_count(&a, &fam));
            }
        }
    }
}

#[test]
fn oracle_dump_records() {
    let k3 = net(&["u", "v", "w"], &[("u", "v", 1), ("v", "w", 1), ("u", "w", 1)]);
    let dump = oracle_dump(&k3, 16).unwrap();
    assert_eq!(dump.len(), 6);
    assert!(dump.iter().all(|r| r.capacity == 2 && r.thin && r.tight));
    let text = serde_json::to_string(&dump[0]).unwrap();
    assert_eq!(text, r#"{"side":["u"],"capacity":2,"thin":true,"tight":true}"#);
}

#[test]
fn fat_cuts_are_not_thin() {
    let c4 = cycle(4);
    let l = all_pairs_connectivity(&c4);
    let a = Cut::from_names(&c4, &["0", "2"]).unwrap();
    assert!(!is_thin(&c4, &l, &a).unwrap());
    assert!(in_ring(&l, &a, 2));
    assert!(!in_ring(&l, &a, 1));
}
