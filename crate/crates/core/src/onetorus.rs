//! Simple closed geodesics on the one-holed torus through trace coordinates.
//!
//! A simple closed curve is labelled by its primitive homology class
//! `(p, q)` in the basis `A = (1, 0)`, `B = (0, 1)`. Complementary regions of
//! the trivalent tree carry the traces; moving across an edge replaces the
//! trace `c` opposite that edge by `ab - c`.

use std::fmt::Write as _;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{GeoError, Result};
use crate::fenchel_nielsen::OneHoledTorus;
use crate::hyptrig::{self, collar_width, Isometry};
use crate::tol;
use crate::word::{self, Word};

/// Primitive class up to sign, stored with `q > 0` or `(p, q) = (1, 0)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Slope {
    pub p: i64,
    pub q: i64,
}

impl Slope {
    pub fn new(p: i64, q: i64) -> Result<Self> {
        if word::gcd(p.unsigned_abs(), q.unsigned_abs()) != 1 {
            return Err(GeoError::Domain(format!("slope ({p}, {q}) is not primitive")));
        }
        Ok(Self::canonical(p, q))
    }

    fn canonical(p: i64, q: i64) -> Self {
        if q < 0 || (q == 0 && p < 0) {
            Slope { p: -p, q: -q }
        } else {
            Slope { p, q }
        }
    }

    /// Christoffel word in `A` = 1, `B` = 2 representing this class.
    pub fn word(&self) -> Word {
        word::christoffel(self.p, self.q)
    }

    /// Absolute determinant; 1 for curves meeting once.
    pub fn intersection(&self, o: &Slope) -> i64 {
        (self.p * o.q - self.q * o.p).abs()
    }
}

/// Traces of `A`, `B`, `AB`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TraceTriple {
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl TraceTriple {
    pub fn new(x: f64, y: f64, z: f64) -> Self {
        TraceTriple { x, y, z }
    }

    pub fn from_torus(t: &OneHoledTorus) -> Self {
        let (x, y, z) = t.traces();
        TraceTriple { x, y, z }
    }

    /// Trace of the commutator `[A, B]`.
    pub fn boundary_trace(&self) -> f64 {
        let (x, y, z) = (self.x, self.y, self.z);
        x * x + y * y + z * z - x * y * z - 2.0
    }

    /// Boundary length, 0 for a cusp.
    pub fn boundary_length(&self) -> Result<f64> {
        hyptrig::trace_to_length(self.boundary_trace())
    }

    /// Sign-normalized copy, checked to come from a one-holed torus.
    pub fn validated(&self) -> Result<Self> {
        let (mut x, mut y, mut z) = (self.x, self.y, self.z);
        for v in [x, y, z] {
            if !v.is_finite() {
                return Err(GeoError::Domain(format!("trace {v} is not finite")));
            }
        }
        if x < 0.0 {
            x = -x;
            z = -z;
        }
        if y < 0.0 {
            y = -y;
            z = -z;
        }
        for v in [x, y, z] {
            if v.abs() <= 2.0 + tol::TRACE {
                return Err(GeoError::Elliptic { trace: v });
            }
        }
        if z < 0.0 {
            return Err(GeoError::Domain("trace signs do not fit a one-holed torus".into()));
        }
        let t = TraceTriple { x, y, z };
        if t.boundary_trace() > -2.0 + 1e-9 * t.x.max(t.y).max(t.z).powi(3) {
            return Err(GeoError::Domain(format!(
                "commutator trace {} > -2: not a one-holed torus group",
                t.boundary_trace()
            )));
        }
        Ok(t)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SimpleGeodesic {
    pub slope: Slope,
    pub trace: f64,
    pub length: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SimpleSpectrum {
    pub cutoff: f64,
    /// Sorted by length, then slope.
    pub entries: Vec<SimpleGeodesic>,
}

type Region = ((i64, i64), f64);

// the slope on the far side of the edge between regions j and k, given the
// slope of the region i on the near side
fn flip_slope(si: (i64, i64), sj: (i64, i64), sk: (i64, i64)) -> (i64, i64) {
    let sum = (sj.0 + sk.0, sj.1 + sk.1);
    if si == sum || si == (-sum.0, -sum.1) {
        (sj.0 - sk.0, sj.1 - sk.1)
    } else {
        sum
    }
}

/// Vertex of the tree minimizing the traces, with its three regions.
pub fn sink(t: &TraceTriple) -> Result<[Region; 3]> {
    let t = t.validated()?;
    let mut v: [Region; 3] = [((1, 0), t.x), ((0, 1), t.y), ((1, 1), t.z)];
    for _ in 0..100_000 {
        let i = (0..3).max_by(|&a, &b| v[a].1.total_cmp(&v[b].1)).unwrap();
        let (j, k) = ((i + 1) % 3, (i + 2) % 3);
        let new = v[j].1 * v[k].1 - v[i].1;
        if new >= v[i].1 {
            return Ok(v);
        }
        v[i] = (flip_slope(v[i].0, v[j].0, v[k].0), new);
    }
    Err(GeoError::Domain("trace descent did not terminate".into()))
}

fn region_entry(r: &Region) -> SimpleGeodesic {
    SimpleGeodesic {
        slope: Slope::canonical(r.0 .0, r.0 .1),
        trace: r.1,
        length: 2.0 * (r.1 / 2.0).acosh(),
    }
}

/// All simple closed geodesics of length `<= cutoff`, once per unoriented
/// class.
///
/// Starting from the sink every move away from it produces a trace at least
/// as large as the three it replaces or borders, so a branch is dropped as
/// soon as its newest trace exceeds the cutoff trace.
pub fn trace_tree(t: &TraceTriple, cutoff: f64) -> Result<SimpleSpectrum> {
    if !(cutoff > 0.0) {
        return Err(GeoError::Domain(format!("cutoff must be > 0, got {cutoff}")));
    }
    let v = sink(t)?;
    let limit = hyptrig::length_to_trace(cutoff);
    let keep = |tr: f64| 2.0 * (tr / 2.0).acosh() <= cutoff;
    let mut found: Vec<Region> = v.iter().filter(|r| keep(r.1)).copied().collect();
    // state: (a, b, c) with c the region entered last; its two children lie
    // across edges (a, c) and (b, c)
    let mut frontier: Vec<[Region; 3]> = Vec::new();
    for i in 0..3 {
        let (j, k) = ((i + 1) % 3, (i + 2) % 3);
        let c = (flip_slope(v[i].0, v[j].0, v[k].0), v[j].1 * v[k].1 - v[i].1);
        if c.1 <= limit {
            frontier.push([v[j], v[k], c]);
        }
    }
    // widen the frontier breadth-first, then finish branches in parallel
    while !frontier.is_empty() && frontier.len() < 256 {
        let mut next = Vec::with_capacity(2 * frontier.len());
        for s in frontier {
            if keep(s[2].1) {
                found.push(s[2]);
            }
            next.extend(children(&s, limit));
        }
        frontier = next;
    }
    let rest: Vec<Vec<Region>> = frontier
        .par_iter()
        .map(|s| {
            let mut out = Vec::new();
            let mut stack = vec![*s];
            while let Some(s) = stack.pop() {
                if keep(s[2].1) {
                    out.push(s[2]);
                }
                stack.extend(children(&s, limit));
            }
            out
        })
        .collect();
    found.extend(rest.into_iter().flatten());
    let mut entries: Vec<SimpleGeodesic> = found.iter().map(region_entry).collect();
    sort_entries(&mut entries);
    Ok(SimpleSpectrum { cutoff, entries })
}

/// Simple geodesics at most `moves` Vieta moves away from the three regions
/// of the sink (`moves = 0` gives those three), sorted like [`trace_tree`].
pub fn near_sink(t: &TraceTriple, moves: usize) -> Result<Vec<SimpleGeodesic>> {
    let v = sink(t)?;
    let mut found: Vec<Region> = v.to_vec();
    let mut frontier: Vec<[Region; 3]> = (0..3)
        .map(|i| {
            let (j, k) = ((i + 1) % 3, (i + 2) % 3);
            [v[j], v[k], (flip_slope(v[i].0, v[j].0, v[k].0), v[j].1 * v[k].1 - v[i].1)]
        })
        .collect();
    for _ in 0..moves {
        let mut next = Vec::with_capacity(2 * frontier.len());
        for s in frontier {
            found.push(s[2]);
            next.extend(children(&s, f64::INFINITY));
        }
        frontier = next;
    }
    let mut entries: Vec<SimpleGeodesic> = found.iter().map(region_entry).collect();
    sort_entries(&mut entries);
    Ok(entries)
}

fn children(s: &[Region; 3], limit: f64) -> impl Iterator<Item = [Region; 3]> {
    let [a, b, c] = *s;
    let ac = ((flip_slope(b.0, a.0, c.0)), a.1 * c.1 - b.1);
    let bc = ((flip_slope(a.0, b.0, c.0)), b.1 * c.1 - a.1);
    [(ac.1 <= limit).then_some([a, c, ac]), (bc.1 <= limit).then_some([b, c, bc])]
        .into_iter()
        .flatten()
}

fn sort_entries(e: &mut [SimpleGeodesic]) {
    e.sort_by(|a, b| a.length.total_cmp(&b.length).then(a.slope.cmp(&b.slope)));
}

/// Trace of the word of a slope in matrices built from the triple alone:
/// `A = [[x, -1], [1, 0]]`, `B = [[u, 0], [xu - z, y - u]]` with
/// `u² - yu + 1 = 0`. Any such pair has the prescribed traces.
pub fn slope_trace(t: &TraceTriple, s: Slope) -> Result<f64> {
    let t = t.validated()?;
    let (x, y, z) = (t.x, t.y, t.z);
    let u = (y + (y * y - 4.0).sqrt()) / 2.0;
    let a = Isometry { a: x, b: -1.0, c: 1.0, d: 0.0 };
    let b = Isometry { a: u, b: 0.0, c: x * u - z, d: y - u };
    let gens: Vec<Isometry> = s
        .word()
        .iter()
        .map(|&l| match l {
            1 => a,
            -1 => a.inverse(),
            2 => b,
            _ => b.inverse(),
        })
        .collect();
    Ok(hyptrig::product(&gens).trace())
}

/// Upper bound for the systole of a one-holed torus with boundary `b`:
/// `2 arccosh(cosh(b/6) + 1/2)`.
pub fn max_systole_bound(b: f64) -> Result<f64> {
    if !(b.is_finite() && b >= 0.0) {
        return Err(GeoError::Domain(format!("boundary length must be >= 0, got {b}")));
    }
    let direct = ((b / 6.0).cosh() + 0.5).acosh() * 2.0;
    let root = cubic_root_form(b);
    let via_root = 2.0 * root.acosh();
    if (direct - via_root).abs() > 1e-10 * direct.max(1.0) {
        return Err(GeoError::Domain(format!("closed forms disagree: {direct} vs {via_root}")));
    }
    Ok(direct)
}

/// `cosh(l/2)` at the maximizer as the real root of the cubic, with
/// `C = cosh²(b/4)`.
pub fn cubic_root_form(b: f64) -> f64 {
    let c = (b / 4.0).cosh().powi(2);
    let u = -1.0 + 2.0 * c + 2.0 * (c * c - c).max(0.0).sqrt();
    0.5 * u.cbrt() + 0.5 / u.cbrt() + 0.5
}

/// Length of the curve of slope `(1, 0)` at the half-twist maximizer, equal
/// to the two other systoles there.
pub fn half_twist_maximizer(b: f64) -> Result<OneHoledTorus> {
    let l = max_systole_bound(b)?;
    OneHoledTorus::new(l, l / 2.0, b)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct McShaneReport {
    pub cutoff: f64,
    pub sum: f64,
    /// Bound on the omitted terms, `C (L² + 2L + 2) e^-L` with `C` fitted.
    pub tail_bound: f64,
    pub count: usize,
}

/// Partial sum of `1 / (1 + e^l)` over simple geodesics of length `<= cutoff`.
pub fn mcshane_sum(t: &TraceTriple, cutoff: f64) -> Result<McShaneReport> {
    let t = t.validated()?;
    if (t.boundary_trace() + 2.0).abs() > 1e-8 * t.x.max(t.y).max(t.z).powi(3) {
        return Err(GeoError::Domain("McShane's identity needs a cusped torus".into()));
    }
    let spec = trace_tree(&t, cutoff)?;
    let sum = spec.entries.iter().map(|e| 1.0 / (1.0 + e.length.exp())).sum();
    // N(s) <= C s² for s >= cutoff, with C taken 1.5 times the worst ratio
    // observed on [cutoff/2, cutoff]
    let mut ratio: f64 = 0.0;
    for (k, e) in spec.entries.iter().enumerate() {
        if e.length >= cutoff / 2.0 {
            ratio = ratio.max((k + 1) as f64 / (e.length * e.length));
        }
    }
    let c = 1.5 * ratio.max(spec.entries.len() as f64 / (cutoff * cutoff));
    let tail_bound = c * (cutoff * cutoff + 2.0 * cutoff + 2.0) * (-cutoff).exp();
    Ok(McShaneReport { cutoff, sum, tail_bound, count: spec.entries.len() })
}

impl SimpleSpectrum {
    /// Number of classes of length `<= l`.
    pub fn count(&self, l: f64) -> usize {
        self.entries.partition_point(|e| e.length <= l)
    }

    pub fn systole(&self) -> Option<f64> {
        self.entries.first().map(|e| e.length)
    }

    pub fn to_csv(&self) -> String {
        let mut s = String::from("slope_p,slope_q,trace,length\n");
        for e in &self.entries {
            writeln!(s, "{},{},{:?},{:?}", e.slope.p, e.slope.q, e.trace, e.length).unwrap();
        }
        s
    }
}

/// `N(L)` for a nondecreasing cutoff list.
pub fn count_simple(t: &TraceTriple, cutoffs: &[f64]) -> Result<Vec<(f64, usize)>> {
    let top = cutoffs.iter().copied().fold(0.0, f64::max);
    let spec = trace_tree(t, top)?;
    Ok(cutoffs.iter().map(|&l| (l, spec.count(l))).collect())
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GrowthFit {
    /// Least-squares slope of `log N` against `log L`.
    pub exponent: f64,
    pub intercept: f64,
    /// Mean of `N / L^2` over the upper half of the samples.
    pub quadratic_coefficient: f64,
}

/// Fit `log N = exponent · log L + intercept`.
pub fn growth_fit(points: &[(f64, usize)]) -> Result<GrowthFit> {
    let pts: Vec<(f64, f64)> =
        points.iter().filter(|(_, n)| *n > 0).map(|&(l, n)| (l.ln(), (n as f64).ln())).collect();
    if pts.len() < 4 {
        return Err(GeoError::Fit(format!("need at least 4 nonzero samples, got {}", pts.len())));
    }
    let (exponent, intercept) = least_squares(&pts);
    let upper = &points[points.len() / 2..];
    let quadratic_coefficient =
        upper.iter().map(|&(l, n)| n as f64 / (l * l)).sum::<f64>() / upper.len() as f64;
    Ok(GrowthFit { exponent, intercept, quadratic_coefficient })
}

pub(crate) fn least_squares(pts: &[(f64, f64)]) -> (f64, f64) {
    let n = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / n;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / n;
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
    let slope = sxy / sxx;
    (slope, my - slope * mx)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct StableNormBall {
    /// Hull vertices in homology coordinates, counter-clockwise.
    pub vertices: Vec<(f64, f64)>,
    pub area: f64,
    pub directions: usize,
}

/// Polygonal approximation of the unit ball of the norm `(p, q) ↦ l(p, q)`.
pub fn stable_norm_ball(t: &TraceTriple, resolution: usize) -> Result<StableNormBall> {
    if resolution < 16 {
        return Err(GeoError::Domain(format!("resolution must be >= 16, got {resolution}")));
    }
    let t = t.validated()?;
    let sys = sink(&t)?.iter().map(|r| r.1).fold(f64::INFINITY, f64::min);
    let mut cutoff = 3.0 * 2.0 * (sys / 2.0).acosh();
    let spec = loop {
        let s = trace_tree(&t, cutoff)?;
        if 2 * s.entries.len() >= resolution {
            break s;
        }
        cutoff *= 1.5;
    };
    let mut pts = Vec::with_capacity(2 * spec.entries.len());
    for e in &spec.entries {
        let (p, q) = (e.slope.p as f64 / e.length, e.slope.q as f64 / e.length);
        pts.push((p, q));
        pts.push((-p, -q));
    }
    let vertices = convex_hull(pts);
    let area = shoelace(&vertices);
    Ok(StableNormBall { vertices, area, directions: 2 * spec.entries.len() })
}

pub(crate) fn convex_hull(mut pts: Vec<(f64, f64)>) -> Vec<(f64, f64)> {
    pts.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.total_cmp(&b.1)));
    pts.dedup();
    if pts.len() < 3 {
        return pts;
    }
    let cross = |o: (f64, f64), a: (f64, f64), b: (f64, f64)| {
        (a.0 - o.0) * (b.1 - o.1) - (a.1 - o.1) * (b.0 - o.0)
    };
    let mut lower: Vec<(f64, f64)> = Vec::new();
    for &p in &pts {
        while lower.len() >= 2 && cross(lower[lower.len() - 2], lower[lower.len() - 1], p) <= 0.0 {
            lower.pop();
        }
        lower.push(p);
    }
    let mut upper: Vec<(f64, f64)> = Vec::new();
    for &p in pts.iter().rev() {
        while upper.len() >= 2 && cross(upper[upper.len() - 2], upper[upper.len() - 1], p) <= 0.0 {
            upper.pop();
        }
        upper.push(p);
    }
    lower.pop();
    upper.pop();
    lower.extend(upper);
    lower
}

pub(crate) fn shoelace(v: &[(f64, f64)]) -> f64 {
    let n = v.len();
    (0..n).map(|i| v[i].0 * v[(i + 1) % n].1 - v[(i + 1) % n].0 * v[i].1).sum::<f64>() / 2.0
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Multiplicity {
    /// `(length, count)` per bucket, by increasing length.
    pub buckets: Vec<(f64, usize)>,
    pub max: usize,
}

/// Group lengths that agree within `rel · max(1, l)`.
pub fn multiplicity_histogram(spec: &SimpleSpectrum, rel: f64) -> Multiplicity {
    let mut buckets: Vec<(f64, usize)> = Vec::new();
    for e in &spec.entries {
        match buckets.last_mut() {
            Some((l, n)) if tol::same_bucket(*l, e.length, rel) => *n += 1,
            _ => buckets.push((e.length, 1)),
        }
    }
    let max = buckets.iter().map(|b| b.1).max().unwrap_or(0);
    Multiplicity { buckets, max }
}

/// Minimum length any curve crossing a simple geodesic of length `l` can have.
pub fn collar_crossing_bound(l: f64) -> Result<f64> {
    Ok(2.0 * collar_width(l)?)
}
