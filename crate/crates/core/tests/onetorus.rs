use geowb::fenchel_nielsen::{word_length, OneHoledTorus};
use geowb::onetorus::*;
use proptest::prelude::*;

const MODULAR_SYSTOLE: f64 = 1.9248473002384139;
const BOUND_AT_SIX: f64 = 2.6829616679034602;

fn modular() -> TraceTriple {
    TraceTriple::new(3.0, 3.0, 3.0)
}

#[test]
fn modular_systoles() {
    let s = trace_tree(&modular(), 2.0).unwrap();
    assert_eq!(s.entries.len(), 3);
    for e in &s.entries {
        assert!((e.length - MODULAR_SYSTOLE).abs() < 1e-12);
    }
    assert_eq!(multiplicity_histogram(&s, 1e-9).buckets[0].1, 3);
}

#[test]
fn nothing_below_the_systole() {
    let s = trace_tree(&modular(), MODULAR_SYSTOLE - 1e-6).unwrap();
    assert!(s.entries.is_empty());
    assert_eq!(s.systole(), None);
    assert_eq!(mcshane_sum(&modular(), 1.0).unwrap().sum, 0.0);
}

#[test]
fn systole_bound() {
    assert!((max_systole_bound(0.0).unwrap() - MODULAR_SYSTOLE).abs() < 1e-12);
    assert!((max_systole_bound(6.0).unwrap() - BOUND_AT_SIX).abs() < 1e-12);
    let values: Vec<f64> = (0..40).map(|k| max_systole_bound(0.25 * k as f64).unwrap()).collect();
    assert!(values.windows(2).all(|w| w[0] < w[1]));
    assert!(max_systole_bound(-0.1).is_err());
}

#[test]
fn half_twist_maximizer_has_three_systoles() {
    for b in [0.0, 1.0, 3.0] {
        let t = half_twist_maximizer(b).unwrap();
        let bound = max_systole_bound(b).unwrap();
        let s = trace_tree(&TraceTriple::from_torus(&t), bound * (1.0 + 1e-9)).unwrap();
        assert_eq!(s.entries.len(), 3, "b = {b}");
    }
}

#[test]
fn half_twist_pairs_mirror_curves() {
    // the two curves beside the pants curve are mirror images
    let t = OneHoledTorus::new(2.2, 1.1, 1.0).unwrap();
    let s = trace_tree(&TraceTriple::from_torus(&t), 12.0).unwrap();
    let m = multiplicity_histogram(&s, 1e-9);
    assert!(m.buckets.iter().skip(1).any(|b| b.1 >= 2));
}

#[test]
fn generic_torus_has_simple_spectrum() {
    let t = OneHoledTorus::new(1.37, 0.211, 0.53).unwrap();
    let s = trace_tree(&TraceTriple::from_torus(&t), 10.0).unwrap();
    assert!(s.entries.len() > 20);
    assert_eq!(multiplicity_histogram(&s, 1e-9).max, 1);
}

#[test]
fn mcshane_partial_sums_increase_toward_one_half() {
    let sums: Vec<f64> = [5.0, 10.0, 15.0, 20.0, 25.0]
        .iter()
        .map(|&l| mcshane_sum(&modular(), l).unwrap().sum)
        .collect();
    assert!(sums.windows(2).all(|w| w[0] <= w[1]));
    assert!((sums[4] - 0.5).abs() < 1e-3);
    let bordered = TraceTriple::from_torus(&OneHoledTorus::new(1.0, 0.0, 1.0).unwrap());
    assert!(mcshane_sum(&bordered, 10.0).is_err());
}

#[test]
fn counts_grow_quadratically() {
    let cutoffs: Vec<f64> = (0..=12).map(|k| 20.0 + 5.0 * k as f64).collect();
    let counts = count_simple(&modular(), &cutoffs).unwrap();
    assert!(counts.windows(2).all(|w| w[0].1 <= w[1].1));
    let fit = growth_fit(&counts).unwrap();
    assert!((fit.exponent - 2.0).abs() < 0.1, "{fit:?}");
    let ratio = counts[12].1 as f64 / counts[0].1 as f64;
    assert!((ratio / 16.0 - 1.0).abs() < 0.25, "{ratio}");
    assert!(growth_fit(&counts[..3]).is_err());
}

#[test]
fn modular_norm_ball() {
    let ball = stable_norm_ball(&modular(), 64).unwrap();
    let v = &ball.vertices;
    let n = v.len();
    assert!(ball.area > 0.0);
    for i in 0..n {
        let (a, b, c) = (v[i], v[(i + 1) % n], v[(i + 2) % n]);
        assert!((b.0 - a.0) * (c.1 - a.1) - (b.1 - a.1) * (c.0 - a.0) > 0.0);
    }
    let near = |p: (f64, f64)| v.iter().any(|w| (w.0 - p.0).abs() < 1e-12 && (w.1 - p.1).abs() < 1e-12);
    // (p, q) -> (p - q, p) has order 6 and permutes the three systoles
    for &(p, q) in v {
        assert!(near((-p, -q)));
        assert!(near((p - q, p)), "({p}, {q})");
    }
    assert!(stable_norm_ball(&modular(), 15).is_err());
}

#[test]
fn coefficient_is_proportional_to_ball_area() {
    // unoriented primitive classes are half the primitive lattice points,
    // whose density is 6/pi^2
    let cutoffs: Vec<f64> = (0..=8).map(|k| 30.0 + 5.0 * k as f64).collect();
    let density = 3.0 / std::f64::consts::PI.powi(2);
    let tori = [
        modular(),
        TraceTriple::from_torus(&OneHoledTorus::new(1.5, 0.4, 0.0).unwrap()),
        TraceTriple::from_torus(&OneHoledTorus::new(0.6, 0.1, 0.0).unwrap()),
    ];
    let mut areas = Vec::new();
    for t in &tori {
        let fit = growth_fit(&count_simple(t, &cutoffs).unwrap()).unwrap();
        let area = stable_norm_ball(t, 256).unwrap().area;
        assert!((fit.quadratic_coefficient / area / density - 1.0).abs() < 0.02, "{fit:?}, area {area}");
        areas.push(area);
    }
    assert!(areas[2] > 1.2 * areas[0]);
}

#[test]
fn larger_cutoff_adds_nothing_below() {
    for t in [modular(), TraceTriple::from_torus(&OneHoledTorus::new(0.8, 0.3, 2.0).unwrap())] {
        let l = 9.0;
        let s = trace_tree(&t, l).unwrap();
        let wider = trace_tree(&t, 1.1 * l).unwrap();
        assert_eq!(&wider.entries[..wider.count(l)], &s.entries[..]);
    }
}

#[test]
fn elliptic_seed_is_rejected() {
    assert!(trace_tree(&TraceTriple::new(1.5, 3.0, 3.0), 5.0).is_err());
}

#[test]
fn csv_is_ordered() {
    let csv = trace_tree(&modular(), 6.0).unwrap().to_csv();
    let mut lines = csv.lines();
    assert_eq!(lines.next(), Some("slope_p,slope_q,trace,length"));
    let lengths: Vec<f64> = lines.map(|l| l.rsplit(',').next().unwrap().parse().unwrap()).collect();
    assert!(lengths.windows(2).all(|w| w[0] <= w[1]));
}

fn torus() -> impl Strategy<Value = OneHoledTorus> {
    (0.3..4.0f64, -2.0..2.0f64, 0.0..4.0f64).prop_map(|(l, t, b)| OneHoledTorus::new(l, t, b).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn tree_and_words_agree(t in torus()) {
        let tt = TraceTriple::from_torus(&t);
        let rep = t.rep();
        for p in -8i64..=8 {
            for q in 0i64..=8 {
                let Ok(s) = Slope::new(p, q) else { continue };
                let tree = 2.0 * (slope_trace(&tt, s).unwrap().abs() / 2.0).acosh();
                let words = word_length(&rep, &s.word()).unwrap();
                prop_assert!((tree - words).abs() <= 1e-9 * tree.max(1.0), "({p}, {q}): {tree} vs {words}");
            }
        }
    }

    #[test]
    fn crossing_curves_clear_the_collar(t in torus()) {
        let s = trace_tree(&TraceTriple::from_torus(&t), 9.0).unwrap();
        for a in &s.entries {
            let bound = collar_crossing_bound(a.length).unwrap();
            for b in &s.entries {
                if a.slope.intersection(&b.slope) != 0 {
                    prop_assert!(b.length >= bound - 1e-9);
                }
            }
        }
    }

    #[test]
    fn spectrum_is_sorted_and_certified(t in torus(), l in 3.0..9.0f64) {
        let tt = TraceTriple::from_torus(&t);
        let s = trace_tree(&tt, l).unwrap();
        prop_assert!(s.entries.windows(2).all(|w| w[0].length <= w[1].length));
        prop_assert!(s.entries.iter().all(|e| e.length <= l));
        let wider = trace_tree(&tt, 1.1 * l).unwrap();
        prop_assert_eq!(&wider.entries[..wider.count(l)], &s.entries[..]);
    }
}
