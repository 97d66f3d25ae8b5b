use std::collections::BTreeSet;

use geowb::fenchel_nielsen::{holonomy, word_length, FNCoordinates, OneHoledTorus, PantsGraph};
use geowb::onetorus::{self, Slope, TraceTriple};
use geowb::spectra::dirichlet::{self, DirichletDomain};
use geowb::spectra::{bers_upper, enumerate_geodesics, gendulphe_constant, huber_check, systole};
use geowb::word;
use num_complex::Complex64;
use rand::{RngExt, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn genus2(lengths: [f64; 3], twists: [f64; 3]) -> geowb::fenchel_nielsen::HolonomyRep {
    holonomy(&PantsGraph::genus2_theta(), &FNCoordinates::closed(lengths.to_vec(), twists.to_vec())).unwrap()
}

// counts of primitive unoriented classes on the modular torus, from an
// independent enumeration of hyperbolic conjugacy classes in the commutator
// subgroup of PSL(2, Z)
#[test]
fn modular_counts_match_oracle() {
    let en = enumerate_geodesics(&OneHoledTorus::modular().rep(), 10.0).unwrap();
    assert_eq!(en.count(6.0), 36);
    assert_eq!(en.count(8.0), 201);
    assert_eq!(en.count(10.0), 1196);
    // traces are integers
    assert!(en.classes.iter().all(|c| (c.trace - c.trace.round()).abs() < 1e-8 * c.trace));
}

#[test]
fn holonomy_torus_gives_same_spectrum() {
    let t = OneHoledTorus::new(1.3, 0.4, 0.7).unwrap();
    let rep = holonomy(&PantsGraph::one_holed_torus(), &FNCoordinates::one_holed_torus(1.3, 0.4, 0.7)).unwrap();
    let a = enumerate_geodesics(&t.rep(), 7.0).unwrap();
    let b = enumerate_geodesics(&rep, 7.0).unwrap();
    assert_eq!(a.classes.len(), b.classes.len());
    for (x, y) in a.classes.iter().zip(&b.classes) {
        assert!((x.length - y.length).abs() < 1e-9);
        assert!((word_length(&rep, &y.word).unwrap() - y.length).abs() < 1e-9);
    }
}

fn simple_slopes(t: &OneHoledTorus, cutoff: f64) -> (BTreeSet<(i64, i64)>, BTreeSet<(i64, i64)>) {
    let en = enumerate_geodesics(&t.rep(), cutoff).unwrap();
    let from_words: BTreeSet<(i64, i64)> = en
        .classes
        .iter()
        .filter(|c| c.simple == Some(true))
        .map(|c| {
            let w: Vec<i32> = c.key.iter().map(|&l| l as i32).collect();
            let (p, q) = word::abelianization2(&w);
            let s = Slope::new(p, q).unwrap();
            (s.p, s.q)
        })
        .collect();
    let tree = onetorus::trace_tree(&TraceTriple::from_torus(t), cutoff).unwrap();
    let from_tree = tree.entries.iter().map(|e| (e.slope.p, e.slope.q)).collect();
    (from_words, from_tree)
}

#[test]
fn simple_classes_match_trace_tree() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut tori = vec![OneHoledTorus::modular()];
    for _ in 0..4 {
        let l = rng.random_range(0.8..2.5);
        let b = [0.0, 0.5, 1.5, 3.0][rng.random_range(0..4usize)];
        tori.push(OneHoledTorus::new(l, rng.random_range(0.0..l), b).unwrap());
    }
    for t in &tori {
        let (w, tree) = simple_slopes(t, 8.0);
        assert_eq!(w, tree, "torus {} {} {}", t.length, t.twist, t.boundary);
    }
}

#[test]
fn classes_are_unique_and_canonical() {
    let en = enumerate_geodesics(&OneHoledTorus::new(1.7, 0.3, 1.0).unwrap().rep(), 7.0).unwrap();
    let keys: BTreeSet<_> = en.classes.iter().map(|c| c.key.clone()).collect();
    assert_eq!(keys.len(), en.classes.len());
    for c in &en.classes {
        assert_eq!(word::canonical_class(&c.word), c.word);
        assert_eq!(word::canonical_class(&word::inverse(&c.word)), c.word);
        assert!(c.trace > 2.0);
    }
}

#[test]
fn modular_systole_and_witnesses() {
    let s = systole(&OneHoledTorus::modular().rep(), 20.0, 1e-9).unwrap();
    assert!((s.length - 2.0 * 1.5f64.acosh()).abs() < 1e-10);
    assert_eq!(s.witnesses.len(), 3);
}

#[test]
fn systole_invariant_under_full_twist() {
    let t = OneHoledTorus::new(1.6, 0.3, 0.0).unwrap();
    let u = OneHoledTorus::new(1.6, 1.9, 0.0).unwrap();
    let a = systole(&t.rep(), 20.0, 1e-9).unwrap().length;
    let b = systole(&u.rep(), 20.0, 1e-9).unwrap().length;
    assert!((a - b).abs() < 1e-9);

    let g = genus2([1.2, 2.0, 2.7], [0.3, -0.5, 1.1]);
    let h = genus2([1.2, 2.0, 2.7], [1.5, -0.5, 1.1]);
    let a = systole(&g, 20.0, 1e-9).unwrap().length;
    let b = systole(&h, 20.0, 1e-9).unwrap().length;
    assert!((a - b).abs() < 1e-9);
}

#[test]
fn dirichlet_domain_tiles() {
    let rep = genus2([2.0, 2.5, 3.0], [0.3, 0.7, -0.4]);
    let d = DirichletDomain::new(&rep).unwrap();
    assert!((d.area - 4.0 * std::f64::consts::PI).abs() < 1e-8);
    assert_eq!(d.sides.len() % 2, 0);
    for (k, s) in d.sides.iter().enumerate() {
        assert_eq!(d.sides[s.pair].pair, k);
        assert_ne!(s.pair, k);
    }
}

#[test]
fn closed_spectrum_independent_of_base_point() {
    let rep = genus2([2.0, 2.5, 3.0], [0.3, 0.7, -0.4]);
    let run = |z| {
        let d = DirichletDomain::with_base(&rep, z).unwrap();
        dirichlet::enumerate_in_domain(&d, 6.5, 10_000_000).unwrap().0
    };
    let a = run(Complex64::new(0.1234, 1.0731));
    let b = run(Complex64::new(-0.377, 0.61));
    assert_eq!(a.len(), b.len());
    for (x, y) in a.iter().zip(&b) {
        assert!((x.length - y.length).abs() < 1e-8, "{} {}", x.length, y.length);
    }
}

#[test]
fn closed_spectrum_contains_short_words() {
    let rep = genus2([1.5, 2.2, 2.9], [0.1, 0.9, -0.6]);
    let cutoff = 5.5;
    let en = enumerate_geodesics(&rep, cutoff).unwrap();
    // every reduced word of length <= 4 is a class of the enumeration, or a
    // proper power of one (primitive in the free group is not primitive in
    // the surface group)
    let power_of_class = |l: f64| {
        (2..=4).any(|k| en.classes.iter().any(|c| (k as f64 * c.length - l).abs() < 1e-8))
    };
    let n = rep.gens.len() as i32;
    let letters: Vec<i32> = (1..=n).flat_map(|l| [l, -l]).collect();
    let mut words: Vec<Vec<i32>> = vec![vec![]];
    for _ in 0..4 {
        let mut next = Vec::new();
        for w in &words {
            for &l in &letters {
                if w.last() != Some(&-l) {
                    next.push([w.clone(), vec![l]].concat());
                }
            }
        }
        for w in &next {
            let w = &word::cyclic_reduce(w);
            let tr = rep.trace(w).abs();
            if tr > 2.0 + 1e-8 {
                let l = 2.0 * (tr / 2.0).acosh();
                if l <= cutoff - 1e-6 && !w.is_empty() && word::primitive_period(w) == w.len() {
                    assert!(
                        en.classes.iter().any(|c| (c.length - l).abs() < 1e-8) || power_of_class(l),
                        "length {l} of {w:?} missing"
                    );
                }
            }
        }
        words = next;
    }
    // the enumerated words have the lengths they claim
    for c in &en.classes {
        assert!((word_length(&rep, &c.word).unwrap() - c.length).abs() < 1e-8);
    }
}

#[test]
fn genus2_systole_below_bound() {
    let bound = 2.0 * (1.0 + 2f64.sqrt()).acosh();
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..5 {
        let l = [rng.random_range(0.5..4.0), rng.random_range(0.5..4.0), rng.random_range(0.5..4.0)];
        let t = [rng.random_range(-2.0..2.0), rng.random_range(-2.0..2.0), rng.random_range(-2.0..2.0)];
        let s = systole(&genus2(l, t), 20.0, 1e-9).unwrap();
        assert!(s.length <= bound + 1e-9);
        assert!(s.length <= l.iter().copied().fold(f64::INFINITY, f64::min) + 1e-9);
    }
}

#[test]
fn huber_growth_on_modular_torus() {
    let grid: Vec<f64> = (0..=12).map(|k| 6.0 + 0.5 * k as f64).collect();
    let rep = OneHoledTorus::modular().rep();
    let r = huber_check(&rep, &grid).unwrap();
    assert!(r.slope > 0.85 && r.slope < 1.15, "slope {}", r.slope);
    assert!(r.points.windows(2).all(|w| w[0].count <= w[1].count));
    let simple = onetorus::count_simple(&TraceTriple::from_torus(&OneHoledTorus::modular()), &grid).unwrap();
    for (p, (_, n)) in r.points.iter().zip(&simple) {
        assert!(p.count >= *n);
    }
    assert!(huber_check(&rep, &grid[..3]).is_err());
}

#[test]
fn quintic_root() {
    let q = gendulphe_constant();
    assert!(q.bracket.1 - q.bracket.0 <= 1e-12);
    assert!((q.root - 1.069_414_534_785_346_2).abs() < 1e-12);
    assert!(q.derivative_lower_bound > 0.0);
    assert!(q.value >= q.interval.0 && q.value <= q.interval.1);
}

#[test]
fn bers_reports() {
    let unit = genus2([1.0, 1.0, 1.0], [0.0, 0.0, 0.0]);
    let r = bers_upper(&PantsGraph::genus2_theta(), &unit).unwrap();
    assert!((r.defining_max - 1.0).abs() < 1e-9);
    assert_eq!(r.curves.len(), 3);
    assert!(r.upper_bound <= r.defining_max);

    let rep = genus2([4.0, 1.0, 1.5], [0.2, 0.0, 0.3]);
    let r = bers_upper(&PantsGraph::genus2_theta(), &rep).unwrap();
    let sys = systole(&rep, 20.0, 1e-9).unwrap().length;
    assert!(r.upper_bound >= sys - 1e-9);
    assert!(r.upper_bound <= r.defining_max);
    assert!(r.upper_bound < 4.0, "a flip should shorten the long curve");
    for f in &r.flips {
        assert!(f.length >= sys - 1e-9);
    }

    let graph = PantsGraph::one_holed_torus();
    let rep = holonomy(&graph, &FNCoordinates::one_holed_torus(3.0, 0.2, 0.0)).unwrap();
    let r = bers_upper(&graph, &rep).unwrap();
    assert_eq!(r.curves.len(), 1);
    // the dual curve at small twist is shorter than 3
    assert!(r.upper_bound < 3.0);
    assert!(bers_upper(&graph, &OneHoledTorus::modular().rep()).is_err());
}
