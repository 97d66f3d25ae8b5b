//! All closed geodesics of a surface up to a length cutoff, systoles, growth
//! checks and Bers-constant bounds.

pub mod bers;
pub mod dirichlet;
pub mod torus_domain;

use std::fmt::Write as _;

use serde::Serialize;

use crate::error::{GeoError, Result};
use crate::fenchel_nielsen::HolonomyRep;
use crate::hyptrig::Isometry;
use crate::onetorus;
use crate::tol;
use crate::word::{self, Letter, Word};

pub use bers::{bers_upper, BersReport};

/// Default number of search nodes (words or tiles) before giving up.
pub const DEFAULT_BUDGET: u64 = 200_000_000;

/// One unoriented primitive conjugacy class.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GeodesicClass {
    /// Least rotation of the cyclically reduced word or of its inverse, in
    /// the generators of the representation.
    pub word: Word,
    /// Identity of the class: the canonical word in the torus marking, or
    /// the canonical cutting sequence of a Dirichlet domain.
    pub key: Vec<i64>,
    pub trace: f64,
    pub length: f64,
    pub primitive: bool,
    /// Known only on the one-holed torus.
    pub simple: Option<bool>,
}

pub(crate) fn sort_classes(v: &mut [GeodesicClass]) {
    v.sort_by(|a, b| a.length.total_cmp(&b.length).then_with(|| a.key.cmp(&b.key)));
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Enumeration {
    pub cutoff: f64,
    /// Sorted by length.
    pub classes: Vec<GeodesicClass>,
    /// Words or tiles visited.
    pub nodes: u64,
    /// Radius of the compact core or Dirichlet domain used for pruning.
    pub core_radius: f64,
}

impl Enumeration {
    pub fn count(&self, l: f64) -> usize {
        self.classes.partition_point(|c| c.length <= l)
    }

    /// Lengths shared by several classes, with their multiplicity.
    pub fn coincidences(&self, rel: f64) -> Vec<(f64, usize)> {
        let mut out = Vec::new();
        let mut i = 0;
        while i < self.classes.len() {
            let l = self.classes[i].length;
            let mut j = i + 1;
            while j < self.classes.len() && tol::same_bucket(l, self.classes[j].length, rel) {
                j += 1;
            }
            if j - i > 1 {
                out.push((l, j - i));
            }
            i = j;
        }
        out
    }

    /// CSV with columns `word,trace,length,primitive`.
    pub fn to_csv(&self, names: &[String]) -> String {
        let mut s = String::from("word,trace,length,primitive\n");
        for c in &self.classes {
            writeln!(s, "{},{:?},{:?},{}", render_word(names, &c.word), c.trace, c.length, c.primitive).unwrap();
        }
        s
    }
}

/// Space-separated generator names, inverses as `NAME^-1`.
pub fn render_word(names: &[String], w: &[Letter]) -> String {
    w.iter()
        .map(|&l| {
            let n = &names[(l.unsigned_abs() - 1) as usize];
            if l < 0 {
                format!("{n}^-1")
            } else {
                n.clone()
            }
        })
        .collect::<Vec<_>>()
        .join(" ")
}

/// The marking `(A, B)` of a one-holed torus representation with the word of
/// `A` and `B` in the generators of `rep`.
fn torus_marking(rep: &HolonomyRep) -> Option<([Isometry; 2], [Word; 2])> {
    if rep.signature.genus != 1 || rep.signature.boundaries != 1 {
        return None;
    }
    match rep.names.iter().map(String::as_str).collect::<Vec<_>>()[..] {
        ["A", "B"] => Some(([rep.gens[0], rep.gens[1]], [vec![1], vec![2]])),
        ["P0.1", "P0.2", "S1"] => Some(([rep.gens[2], rep.gens[0].inverse()], [vec![3], vec![-1]])),
        _ => None,
    }
}

/// All primitive classes of length `<= cutoff`, once each.
pub fn enumerate_geodesics(rep: &HolonomyRep, cutoff: f64) -> Result<Enumeration> {
    enumerate_with_budget(rep, cutoff, DEFAULT_BUDGET)
}

pub fn enumerate_with_budget(rep: &HolonomyRep, cutoff: f64, budget: u64) -> Result<Enumeration> {
    if !(cutoff.is_finite() && cutoff > 0.0) {
        return Err(GeoError::Domain(format!("cutoff must be > 0, got {cutoff}")));
    }
    if let Some((gens, words)) = torus_marking(rep) {
        let (mut classes, stats) = torus_domain::enumerate_torus(&gens[0], &gens[1], cutoff, budget)?;
        for c in &mut classes {
            let w: Word = c.word.iter().flat_map(|&l| {
                let x = &words[(l.unsigned_abs() - 1) as usize];
                if l > 0 {
                    x.clone()
                } else {
                    word::inverse(x)
                }
            }).collect();
            c.word = word::canonical_class(&w);
        }
        return Ok(Enumeration { cutoff, classes, nodes: stats.nodes, core_radius: stats.radius });
    }
    let (classes, stats) = dirichlet::enumerate_closed(rep, cutoff, budget)?;
    Ok(Enumeration { cutoff, classes, nodes: stats.tiles, core_radius: stats.radius })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Systole {
    pub length: f64,
    /// Classes within the bucket tolerance of the minimum.
    pub witnesses: Vec<GeodesicClass>,
    /// Cutoff of the enumeration that certified the minimum.
    pub cutoff: f64,
}

/// Start of the adaptive cutoff: the genus-2 systole bound plus one.
pub fn initial_cutoff() -> f64 {
    2.0 * (1.0 + 2f64.sqrt()).acosh() + 1.0
}

/// Shortest closed geodesic, growing the cutoff by 25% until a class is
/// found; beyond `cap` the result is inconclusive.
pub fn systole(rep: &HolonomyRep, cap: f64, bucket: f64) -> Result<Systole> {
    systole_with_budget(rep, cap, bucket, DEFAULT_BUDGET)
}

pub fn systole_with_budget(rep: &HolonomyRep, cap: f64, bucket: f64, budget: u64) -> Result<Systole> {
    // any interior curve of the decomposition is a closed geodesic, so its
    // length already bounds the systole
    let known = rep
        .curves
        .iter()
        .filter(|(n, _)| n.starts_with('c'))
        .filter_map(|(_, w)| crate::fenchel_nielsen::word_length(rep, w).ok())
        .fold(f64::INFINITY, f64::min);
    let mut cutoff = initial_cutoff().min(known * (1.0 + 1e-6) + 1e-9);
    loop {
        if cutoff > cap {
            return Err(GeoError::Inconclusive(format!("no closed geodesic below the cap {cap}")));
        }
        let en = enumerate_with_budget(rep, cutoff, budget)?;
        if let Some(first) = en.classes.first() {
            let length = first.length;
            let top = length + bucket * length.max(1.0);
            if top <= cutoff {
                let witnesses = en.classes.iter().take_while(|c| c.length <= top).cloned().collect();
                return Ok(Systole { length, witnesses, cutoff });
            }
            cutoff = top * (1.0 + 1e-9);
        } else {
            cutoff *= 1.25;
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct HuberPoint {
    pub cutoff: f64,
    pub count: usize,
    /// `N(L) L e^-L`.
    pub normalized: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct HuberReport {
    pub points: Vec<HuberPoint>,
    /// Least-squares slope of `log N` against `L` over the upper half of the
    /// grid.
    pub slope: f64,
    /// Relative change of `N L e^-L` across the upper half of the grid.
    pub drift: f64,
}

/// Compare the class count with `e^L / L` on a grid of cutoffs.
pub fn huber_check(rep: &HolonomyRep, grid: &[f64]) -> Result<HuberReport> {
    if grid.len() < 4 {
        return Err(GeoError::Fit(format!("need at least 4 grid points, got {}", grid.len())));
    }
    if grid.windows(2).any(|w| w[1] <= w[0]) {
        return Err(GeoError::Fit("grid must be increasing".into()));
    }
    let en = enumerate_geodesics(rep, *grid.last().unwrap())?;
    let points: Vec<HuberPoint> = grid
        .iter()
        .map(|&l| {
            let count = en.count(l);
            HuberPoint { cutoff: l, count, normalized: count as f64 * l * (-l).exp() }
        })
        .collect();
    let upper = &points[points.len() / 2..];
    let pts: Vec<(f64, f64)> =
        upper.iter().filter(|p| p.count > 0).map(|p| (p.cutoff, (p.count as f64).ln())).collect();
    if pts.len() < 2 {
        return Err(GeoError::Fit("too few nonzero counts in the upper half of the grid".into()));
    }
    let (slope, _) = onetorus::least_squares(&pts);
    let first = upper.first().unwrap().normalized;
    let drift = (upper.last().unwrap().normalized - first) / first;
    Ok(HuberReport { points, slope, drift })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct QuinticRoot {
    /// Root of `32x⁵ - 32x⁴ - 24x³ + 24x² - 1` in `(1, 2]`.
    pub root: f64,
    /// Final bisection bracket.
    pub bracket: (f64, f64),
    /// Positive lower bound for the derivative on `[1, 2]`.
    pub derivative_lower_bound: f64,
    /// `12 arccosh(root)`.
    pub value: f64,
    /// `[√12 - 2, 6√(3π)]`.
    pub interval: (f64, f64),
}

fn quintic(x: f64) -> f64 {
    ((((32.0 * x - 32.0) * x - 24.0) * x + 24.0) * x) * x - 1.0
}

/// The constant `12 arccosh(x₀)` for the unique root `x₀ > 1` of the quintic.
///
/// Uniqueness: `f(1) = -1 < 0 < f(2)` and on each of 1000 subintervals
/// `[a, b]` of `[1, 2]` the derivative `160x⁴ - 128x³ - 72x² + 48x` is at
/// least `160a⁴ - 128b³ - 72b² + 48a > 0`.
pub fn gendulphe_constant() -> QuinticRoot {
    let pieces = 1000;
    let mut dmin = f64::INFINITY;
    for k in 0..pieces {
        let a = 1.0 + k as f64 / pieces as f64;
        let b = 1.0 + (k + 1) as f64 / pieces as f64;
        dmin = dmin.min(160.0 * a.powi(4) - 128.0 * b.powi(3) - 72.0 * b * b + 48.0 * a);
    }
    assert!(dmin > 0.0 && quintic(1.0) < 0.0 && quintic(2.0) > 0.0);
    let (mut lo, mut hi) = (1.0f64, 2.0f64);
    while hi - lo > 1e-13 {
        let mid = 0.5 * (lo + hi);
        if quintic(mid) < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let root = 0.5 * (lo + hi);
    QuinticRoot {
        root,
        bracket: (lo, hi),
        derivative_lower_bound: dmin,
        value: 12.0 * root.acosh(),
        interval: (12f64.sqrt() - 2.0, 6.0 * (3.0 * std::f64::consts::PI).sqrt()),
    }
}
