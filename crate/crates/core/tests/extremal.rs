use geowb::extremal::{
    genus2_bound, maximize_genus2_systole, maximize_torus_systole, maximize_torus_systole_with, scan_multiplicity_family,
    Genus2Search, Status, TorusSearch,
};
use geowb::fenchel_nielsen::{holonomy, FNCoordinates, OneHoledTorus, PantsGraph};
use geowb::onetorus::max_systole_bound;
use geowb::spectra::systole;
use proptest::prelude::*;

#[test]
fn modular_torus_is_the_cusped_maximizer() {
    let r = maximize_torus_systole(0.0).unwrap();
    assert!((r.best_value - 2.0 * 1.5f64.acosh()).abs() < 1e-4);
    assert!((r.best_point[1] / r.best_point[0] - 0.5).abs() < 1e-6);
    assert_eq!(r.witness_count, 3);
    assert_eq!(r.status, Status::Converged);
    assert!((r.recomputed - r.best_value).abs() < 1e-8);
}

#[test]
fn torus_optimum_sandwiched_by_bound() {
    let mut last = 0.0;
    for b in [0.5, 2.0, 3.5, 5.0] {
        let r = maximize_torus_systole(b).unwrap();
        let bound = max_systole_bound(b).unwrap();
        assert!(r.best_value >= bound - 1e-4 && r.max_sampled <= bound + 1e-8, "b = {b}");
        assert!(r.best_value > last);
        last = r.best_value;
    }
}

#[test]
fn coarse_torus_search_still_below_bound() {
    let s = TorusSearch { grid: 4, top: 1, simplex_evals: 60 };
    let r = maximize_torus_systole_with(1.0, &s).unwrap();
    assert!(r.max_sampled <= r.bound + 1e-8);
    assert!(maximize_torus_systole(-1.0).is_err());
    assert!(maximize_torus_systole_with(1.0, &TorusSearch { grid: 1, top: 1, simplex_evals: 60 }).is_err());
}

fn small_search(seed: u64) -> Genus2Search {
    Genus2Search { starts: 3, simplex_evals: 120, polish_top: 1, seed, ..Genus2Search::default() }
}

#[test]
fn genus2_search_is_deterministic() {
    let a = maximize_genus2_systole(&small_search(11)).unwrap();
    let b = maximize_genus2_systole(&small_search(11)).unwrap();
    assert_eq!(a, b);
    assert_eq!(a.to_json().to_string(), b.to_json().to_string());
    assert!(a.max_sampled <= genus2_bound() + 1e-6);
    assert!((a.recomputed - a.best_value).abs() < 1e-8);
    let c = maximize_genus2_systole(&small_search(12)).unwrap();
    assert_ne!(a.refinements[0].start, c.refinements[0].start);
}

#[test]
fn genus2_budget_below_minimum_is_rejected() {
    let s = Genus2Search { simplex_evals: 10, ..Genus2Search::default() };
    assert!(maximize_genus2_systole(&s).is_err());
}

#[test]
fn half_twist_family() {
    let fam = scan_multiplicity_family(&[0.0, 0.5, 1.0, 2.0, 4.0, 6.0], 10.0).unwrap();
    assert_eq!(fam[0].systole_multiplicity, 3);
    for m in &fam {
        assert!((m.systole - m.bound).abs() < 1e-9);
        assert_eq!(m.systole_multiplicity, 3);
        assert!(m.max_multiplicity <= 6, "b = {}: {}", m.boundary, m.max_multiplicity);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn genus2_systole_never_beats_bound(
        l in proptest::array::uniform3(0.8f64..5.0),
        t in proptest::array::uniform3(-3.0f64..3.0),
    ) {
        let rep = holonomy(&PantsGraph::genus2_theta(), &FNCoordinates::closed(l.to_vec(), t.to_vec())).unwrap();
        let s = systole(&rep, 20.0, 1e-9).unwrap();
        prop_assert!(s.length <= genus2_bound() + 1e-9);
    }

    #[test]
    fn torus_systole_never_beats_bound(l in 0.2f64..6.0, frac in 0.0f64..1.0, b in 0.0f64..6.0) {
        let t = OneHoledTorus::new(l, frac * l, b).unwrap();
        let s = systole(&t.rep(), 40.0, 1e-9).unwrap();
        prop_assert!(s.length <= max_systole_bound(b).unwrap() + 1e-9);
    }
}
