use std::collections::BTreeSet;

use geowb::markov::*;
use num_bigint::BigUint;
use proptest::prelude::*;

fn triple(a: u64, b: u64, c: u64) -> MarkovTriple {
    MarkovTriple::new(a.into(), b.into(), c.into())
}

fn isqrt(n: u128) -> Option<u128> {
    let r = (n as f64).sqrt() as u128;
    (r.saturating_sub(2)..=r + 2).find(|s| s * s == n)
}

// every a <= b <= c <= n with c a root of c² - 3ab c + a² + b² = 0
fn brute_force(n: u64) -> BTreeSet<MarkovTriple> {
    let mut out = BTreeSet::new();
    for a in 1..=n as u128 {
        for b in a..=n as u128 {
            let p = 3 * a * b;
            let Some(disc) = (p * p).checked_sub(4 * (a * a + b * b)) else { continue };
            let Some(s) = isqrt(disc) else { continue };
            for twice in [p - s, p + s] {
                let c = twice / 2;
                if twice % 2 == 0 && c >= b && c <= n as u128 {
                    out.insert(triple(a as u64, b as u64, c as u64));
                }
            }
            if 3 * a * b > 2 * n as u128 + b {
                break;
            }
        }
    }
    out
}

#[test]
fn triples_up_to_thirty() {
    let want: BTreeSet<_> =
        [(1, 1, 1), (1, 1, 2), (1, 2, 5), (1, 5, 13), (2, 5, 29)].iter().map(|&(a, b, c)| triple(a, b, c)).collect();
    assert_eq!(markov_tree(&BigUint::from(30u32)), want);
    assert_eq!(brute_force(30), want);
}

#[test]
fn bound_one_is_the_root() {
    assert_eq!(markov_tree(&BigUint::from(1u32)), BTreeSet::from([MarkovTriple::root()]));
}

#[test]
fn tree_matches_brute_force() {
    for n in [2, 5, 100, 1000, 10_000] {
        assert_eq!(markov_tree(&BigUint::from(n)), brute_force(n), "bound {n}");
    }
}

#[test]
fn first_markov_numbers() {
    let scan = frobenius_scan(&BigUint::from(200u32));
    let want: Vec<BigUint> = [1u32, 2, 5, 13, 29, 34, 89, 169, 194].map(BigUint::from).to_vec();
    assert_eq!(scan.markov_numbers, want);
    assert!(scan.unique());
    assert_eq!(scan.triples, 9);
}

#[test]
fn uniqueness_holds_to_a_million() {
    let scan = frobenius_scan(&BigUint::from(1_000_000u32));
    assert!(scan.unique());
    assert!(markov_tree(&scan.bound).iter().all(MarkovTriple::satisfies_cubic));
}

#[test]
fn huge_bounds_stay_exact() {
    let bound = BigUint::from(10u32).pow(40);
    let t = markov_tree(&bound);
    assert!(t.iter().all(MarkovTriple::satisfies_cubic));
    assert!(t.iter().any(|m| m.c > BigUint::from(u64::MAX)));
}

#[test]
fn modular_traces_are_markov_numbers() {
    let c = modular_correspondence(200).unwrap();
    assert!(c.exact_match, "{:?}", c.offending);
    assert_eq!(c.markov_traces, c.geodesic_traces);
    assert_eq!(c.multiplicities[0], (3, 3));
    assert!(c.multiplicities.iter().all(|(_, n)| n % 3 == 0));
}

#[test]
fn report_fields() {
    let scan = frobenius_scan(&BigUint::from(30u32));
    let v = report_json(&scan, None);
    assert_eq!(v["bound"], 30);
    assert_eq!(v["triple_count"], 5);
    assert_eq!(v["correspondence_status"], "not requested");
    assert_eq!(v["collisions"].as_array().map(Vec::len), Some(0));
}

proptest! {
    #[test]
    fn children_are_triples_and_grow(path in prop::collection::vec(any::<bool>(), 0..16)) {
        let mut t = MarkovTriple::root();
        for &left in &path {
            let [x, y] = t.children();
            let next = if left { x } else { y };
            prop_assert!(next.satisfies_cubic());
            prop_assert!(next.c >= t.c);
            t = next;
        }
    }
}
