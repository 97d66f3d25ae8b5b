//! Derivative-free maximization of the systole over Fenchel–Nielsen
//! coordinates.
//!
//! Both searches sample coarsely, refine the best samples with a simplex
//! search and finish with [`polish`], which equalizes the competing shortest
//! curves. Every value reported is the systole of an actual surface, so it
//! can never exceed the known sharp bounds; an overshoot is an error.

pub mod nelder_mead;
pub mod polish;

use rand::{RngExt, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{GeoError, Result};
use crate::fenchel_nielsen::{holonomy, word_length, FNCoordinates, HolonomyRep, OneHoledTorus, PantsGraph};
use crate::onetorus::{self, Slope, TraceTriple};
use crate::spectra::{self, render_word};
use crate::tol;
use crate::word::Word;

use polish::PolishOptions;

/// Witnesses are counted within this relative distance of the systole.
pub const WITNESS_BUCKET: f64 = 1e-4;

/// Sharp upper bound for the systole in genus 2, `2 arccosh(1 + √2)`.
pub fn genus2_bound() -> f64 {
    2.0 * (1.0 + 2f64.sqrt()).acosh()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Converged,
    BudgetExhausted,
}

/// One local refinement: where it started, best value per simplex iteration
/// and per accepted polishing step, and where it ended.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Refinement {
    pub start: Vec<f64>,
    pub simplex: Vec<f64>,
    pub polish: Vec<f64>,
    pub end: Vec<f64>,
    pub value: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OptRun {
    pub problem: String,
    pub parameters: Vec<String>,
    pub bounds: Vec<(f64, f64)>,
    pub sampling: String,
    pub seed: Option<u64>,
    pub refinements: Vec<Refinement>,
    /// Lengths first, then twists in `[0, length)`.
    pub best_point: Vec<f64>,
    pub best_value: f64,
    /// Systole at the best point recomputed by enumerating all closed geodesics.
    pub recomputed: f64,
    /// Largest systole seen at any sampled point.
    pub max_sampled: f64,
    pub bound: f64,
    pub witnesses: Vec<String>,
    pub witness_count: usize,
    pub bucket: f64,
    pub evaluations: usize,
    pub status: Status,
}

impl OptRun {
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("OptRun serializes")
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TorusSearch {
    pub grid: usize,
    pub top: usize,
    pub simplex_evals: usize,
}

impl Default for TorusSearch {
    fn default() -> Self {
        TorusSearch { grid: 48, top: 5, simplex_evals: 400 }
    }
}

fn torus_triple(p: &[f64], b: f64) -> Option<TraceTriple> {
    let t = OneHoledTorus::new(p[0], p[1] * p[0], b).ok()?;
    TraceTriple::from_torus(&t).validated().ok()
}

// systole of a one-holed torus from the vertex of the trace tree where the
// traces are smallest; the shortest curve is always one of its three regions
fn torus_systole(p: &[f64], b: f64) -> Option<f64> {
    let t = torus_triple(p, b)?;
    let s = onetorus::sink(&t).ok()?;
    let m = s.iter().map(|r| r.1).fold(f64::INFINITY, f64::min);
    Some(2.0 * (m / 2.0).acosh())
}

fn torus_near(p: &[f64], b: f64, margin: f64) -> Option<(f64, Vec<Slope>)> {
    let t = torus_triple(p, b)?;
    let sys = torus_systole(p, b)?;
    let tree = onetorus::trace_tree(&t, sys + margin).ok()?;
    Some((sys, tree.entries.iter().map(|e| e.slope).collect()))
}

fn torus_length(p: &[f64], b: f64, s: &Slope) -> Option<f64> {
    let t = torus_triple(p, b)?;
    let tr = onetorus::slope_trace(&t, *s).ok()?.abs();
    (tr > 2.0).then(|| 2.0 * (tr / 2.0).acosh())
}

fn overshoot(value: f64, bound: f64, slack: f64) -> Result<()> {
    if value > bound + slack {
        return Err(GeoError::Domain(format!("systole {value} exceeds the sharp bound {bound}")));
    }
    Ok(())
}

/// Maximize the systole of one-holed tori with boundary length `b` over
/// length and twist of one curve.
pub fn maximize_torus_systole(b: f64) -> Result<OptRun> {
    maximize_torus_systole_with(b, &TorusSearch::default())
}

pub fn maximize_torus_systole_with(b: f64, search: &TorusSearch) -> Result<OptRun> {
    let bound = onetorus::max_systole_bound(b)?;
    if search.grid < 2 || search.top == 0 {
        return Err(GeoError::Domain("torus search needs a grid of at least 2 and one refinement".into()));
    }
    // coordinates (length, twist / length); the twist fraction is periodic
    let lmax = 3.0 * bound;
    let bounds = vec![(0.1, lmax), (-0.5, 1.5)];
    let n = search.grid;
    let cells: Vec<(Vec<f64>, f64)> = (0..n * n)
        .into_par_iter()
        .map(|k| {
            let (i, j) = (k / n, k % n);
            let p = vec![0.1 + (lmax - 0.1) * (i as f64 + 0.5) / n as f64, (j as f64 + 0.5) / n as f64];
            let v = torus_systole(&p, b).unwrap_or(f64::NEG_INFINITY);
            (p, v)
        })
        .collect();
    let mut evaluations = cells.len();
    let mut max_sampled = cells.iter().map(|c| c.1).fold(f64::NEG_INFINITY, f64::max);
    let mut order: Vec<usize> = (0..cells.len()).collect();
    order.sort_by(|&x, &y| cells[y].1.total_cmp(&cells[x].1).then(x.cmp(&y)));

    let objective = |p: &[f64]| {
        if p[0] < bounds[0].0 || p[0] > bounds[0].1 {
            return f64::INFINITY;
        }
        torus_systole(p, b).map_or(f64::INFINITY, |v| -v)
    };
    let step = [(lmax - 0.1) / n as f64, 1.0 / n as f64];
    let refinements: Vec<(Refinement, usize, bool)> = order[..search.top.min(order.len())]
        .par_iter()
        .map(|&k| {
            let start = cells[k].0.clone();
            let s = nelder_mead::minimize(objective, &start, &step, 1e-12, search.simplex_evals);
            let pol = polish::polish(
                &s.best,
                &bounds,
                |p, m| torus_near(p, b, m),
                |p, c| torus_length(p, b, c),
                &PolishOptions::default(),
            );
            let simplex: Vec<f64> = s.history.iter().map(|v| -v).collect();
            let r = Refinement { start, simplex, polish: pol.history.clone(), end: pol.point.clone(), value: pol.value };
            (r, s.evaluations + pol.evaluations, pol.converged)
        })
        .collect();
    for (r, e, _) in &refinements {
        evaluations += e;
        for v in r.simplex.iter().chain(&r.polish) {
            max_sampled = max_sampled.max(*v);
        }
    }
    // ties (the same surface under another marking) go to the shortest curve
    let best = (0..refinements.len())
        .max_by(|&x, &y| {
            let (a, c) = (&refinements[x].0, &refinements[y].0);
            if (a.value - c.value).abs() <= 1e-9 * a.value.max(1.0) {
                c.end[0].total_cmp(&a.end[0])
            } else {
                a.value.total_cmp(&c.value)
            }
        })
        .unwrap();
    let (run, _, converged) = &refinements[best];
    let frac = run.end[1].rem_euclid(1.0);
    let best_point = vec![run.end[0], frac * run.end[0]];
    overshoot(max_sampled, bound, 1e-8)?;

    let t = torus_triple(&[run.end[0], frac], b)
        .ok_or_else(|| GeoError::Domain("best point is not a one-holed torus".into()))?;
    let best_value = run.value;
    let tree = onetorus::trace_tree(&t, best_value * (1.0 + 2.0 * WITNESS_BUCKET))?;
    let witnesses: Vec<String> = tree
        .entries
        .iter()
        .filter(|e| tol::same_bucket(best_value, e.length, WITNESS_BUCKET))
        .map(|e| format!("({}, {})", e.slope.p, e.slope.q))
        .collect();
    let torus = OneHoledTorus::new(best_point[0], best_point[1], b)?;
    let recomputed = spectra::systole(&torus.rep(), 40.0, tol::BUCKET_REL)?.length;

    Ok(OptRun {
        problem: format!("one-holed torus, boundary {b}"),
        parameters: vec!["length".into(), "twist".into()],
        bounds: vec![(0.1, lmax), (0.0, lmax)],
        sampling: format!("{n}x{n} grid of cell centres, top {} refined", search.top),
        seed: None,
        witness_count: witnesses.len(),
        witnesses,
        refinements: refinements.iter().map(|r| r.0.clone()).collect(),
        best_point,
        best_value,
        recomputed,
        max_sampled,
        bound,
        bucket: WITNESS_BUCKET,
        evaluations,
        status: if *converged { Status::Converged } else { Status::BudgetExhausted },
    })
}

/// Topological type of the genus-2 pants decomposition searched over.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Genus2Graph {
    Theta,
    Dumbbell,
}

impl Genus2Graph {
    pub fn graph(self) -> PantsGraph {
        match self {
            Genus2Graph::Theta => PantsGraph::genus2_theta(),
            Genus2Graph::Dumbbell => PantsGraph::genus2_dumbbell(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Genus2Search {
    pub starts: usize,
    pub simplex_evals: usize,
    /// Number of best simplex results passed to the polishing stage.
    pub polish_top: usize,
    pub seed: u64,
    pub length_range: (f64, f64),
    pub graph: Genus2Graph,
}

/// Smallest accepted `starts` and `simplex_evals`.
pub const MIN_STARTS: usize = 1;
pub const MIN_SIMPLEX_EVALS: usize = 50;

impl Default for Genus2Search {
    fn default() -> Self {
        Genus2Search {
            starts: 48,
            simplex_evals: 600,
            polish_top: 6,
            seed: 1,
            length_range: (1.5, 4.5),
            graph: Genus2Graph::Theta,
        }
    }
}

struct Genus2 {
    graph: PantsGraph,
}

impl Genus2 {
    // p = three lengths, three twist fractions
    fn rep(&self, p: &[f64]) -> Option<HolonomyRep> {
        let twists = (0..3).map(|i| p[3 + i] * p[i]).collect();
        holonomy(&self.graph, &FNCoordinates::closed(p[..3].to_vec(), twists)).ok()
    }

    fn near(&self, p: &[f64], margin: f64) -> Option<(f64, Vec<Word>)> {
        let rep = self.rep(p)?;
        // the bucket is relative to max(systole, 1), so at least `margin`
        let s = spectra::systole_with_budget(&rep, 8.0 + margin, margin, 5_000_000).ok()?;
        Some((s.length, s.witnesses.into_iter().map(|c| c.word).collect()))
    }

    fn systole(&self, p: &[f64]) -> Option<f64> {
        let rep = self.rep(p)?;
        spectra::systole_with_budget(&rep, 8.0, 0.0, 5_000_000).ok().map(|s| s.length)
    }

    fn length(&self, p: &[f64], w: &Word) -> Option<f64> {
        word_length(&self.rep(p)?, w).ok()
    }
}

/// Multi-start search for the genus-2 surface with the longest systole.
pub fn maximize_genus2_systole(search: &Genus2Search) -> Result<OptRun> {
    if search.starts < MIN_STARTS || search.simplex_evals < MIN_SIMPLEX_EVALS || search.polish_top == 0 {
        return Err(GeoError::Domain(format!(
            "genus-2 search needs at least {MIN_STARTS} start, {MIN_SIMPLEX_EVALS} simplex evaluations and one polished result"
        )));
    }
    let (lo, hi) = search.length_range;
    if !(lo > 0.0 && hi > lo) {
        return Err(GeoError::Domain(format!("bad length range ({lo}, {hi})")));
    }
    let bound = genus2_bound();
    let g = Genus2 { graph: search.graph.graph() };
    let bounds: Vec<(f64, f64)> = vec![(lo, hi), (lo, hi), (lo, hi), (-1.0, 2.0), (-1.0, 2.0), (-1.0, 2.0)];

    let mut rng = ChaCha8Rng::seed_from_u64(search.seed);
    let starts: Vec<Vec<f64>> = (0..search.starts)
        .map(|_| {
            let mut p: Vec<f64> = (0..3).map(|_| rng.random_range(lo..hi)).collect();
            p.extend((0..3).map(|_| rng.random_range(0.0..1.0)));
            p
        })
        .collect();
    let objective = |p: &[f64]| {
        if p.iter().zip(&bounds).any(|(x, (a, b))| x < a || x > b) {
            return f64::INFINITY;
        }
        g.systole(p).map_or(f64::INFINITY, |v| -v)
    };
    let step = [0.3, 0.3, 0.3, 0.15, 0.15, 0.15];
    let simplexes: Vec<nelder_mead::Simplex> = starts
        .par_iter()
        .map(|s| nelder_mead::minimize(objective, s, &step, 1e-9, search.simplex_evals))
        .collect();
    let mut evaluations: usize = simplexes.iter().map(|s| s.evaluations).sum();
    let mut order: Vec<usize> = (0..simplexes.len()).collect();
    order.sort_by(|&x, &y| simplexes[x].value.total_cmp(&simplexes[y].value).then(x.cmp(&y)));
    let chosen = &order[..search.polish_top.min(order.len())];

    let opts = PolishOptions { margin: 0.25, radius: 0.05, ..PolishOptions::default() };
    let polished: Vec<polish::Polished> = chosen
        .par_iter()
        .map(|&k| polish::polish(&simplexes[k].best, &bounds, |p, m| g.near(p, m), |p, w| g.length(p, w), &opts))
        .collect();
    let mut max_sampled = simplexes.iter().map(|s| -s.value).fold(f64::NEG_INFINITY, f64::max);
    let mut refinements: Vec<Refinement> = starts
        .iter()
        .zip(&simplexes)
        .map(|(st, s)| Refinement {
            start: st.clone(),
            simplex: s.history.iter().map(|v| -v).collect(),
            polish: vec![],
            end: s.best.clone(),
            value: -s.value,
        })
        .collect();
    for (&k, pol) in chosen.iter().zip(&polished) {
        evaluations += pol.evaluations;
        max_sampled = pol.history.iter().copied().fold(max_sampled, f64::max);
        refinements[k].polish = pol.history.clone();
        refinements[k].end = pol.point.clone();
        refinements[k].value = pol.value;
    }
    overshoot(max_sampled, bound, 1e-6)?;

    let best = (0..polished.len()).max_by(|&x, &y| polished[x].value.total_cmp(&polished[y].value).then(y.cmp(&x))).unwrap();
    let pol = &polished[best];
    let mut best_point = pol.point.clone();
    for i in 0..3 {
        best_point[3 + i] = best_point[3 + i].rem_euclid(1.0) * best_point[i];
    }
    let rep = g.rep(&pol.point).ok_or_else(|| GeoError::Domain("best point has no holonomy".into()))?;
    let s = spectra::systole(&rep, 10.0, WITNESS_BUCKET)?;
    let witnesses: Vec<String> = s.witnesses.iter().map(|c| render_word(&rep.names, &c.word)).collect();

    Ok(OptRun {
        problem: format!("closed genus 2, {:?} pants graph", search.graph).to_lowercase(),
        parameters: ["length1", "length2", "length3", "twist1", "twist2", "twist3"].map(String::from).to_vec(),
        bounds: vec![(lo, hi), (lo, hi), (lo, hi), (0.0, hi), (0.0, hi), (0.0, hi)],
        sampling: format!(
            "{} uniform random starts, {} simplex evaluations each, best {} polished",
            search.starts, search.simplex_evals, search.polish_top
        ),
        seed: Some(search.seed),
        refinements,
        best_point,
        best_value: pol.value,
        recomputed: s.length,
        max_sampled,
        bound,
        witness_count: witnesses.len(),
        witnesses,
        bucket: WITNESS_BUCKET,
        evaluations,
        status: if pol.converged && (bound - pol.value) <= 1e-2 { Status::Converged } else { Status::BudgetExhausted },
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FamilyMember {
    pub boundary: f64,
    pub bound: f64,
    pub systole: f64,
    pub systole_multiplicity: usize,
    /// `(length, count)` buckets of the simple spectrum up to the cutoff.
    pub histogram: Vec<(f64, usize)>,
    pub max_multiplicity: usize,
}

/// Simple-spectrum multiplicities of the half-twist maximizers for each
/// boundary length.
pub fn scan_multiplicity_family(boundaries: &[f64], cutoff: f64) -> Result<Vec<FamilyMember>> {
    boundaries
        .iter()
        .map(|&b| {
            let bound = onetorus::max_systole_bound(b)?;
            let t = onetorus::half_twist_maximizer(b)?;
            let spec = onetorus::trace_tree(&TraceTriple::from_torus(&t), cutoff)?;
            let h = onetorus::multiplicity_histogram(&spec, 1e-9);
            let (systole, systole_multiplicity) = h.buckets.first().copied().unwrap_or((f64::NAN, 0));
            Ok(FamilyMember {
                boundary: b,
                bound,
                systole,
                systole_multiplicity,
                max_multiplicity: h.max,
                histogram: h.buckets,
            })
        })
        .collect()
}
