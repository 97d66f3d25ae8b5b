//! Hyperbolic surfaces from Fenchel–Nielsen coordinates on a pants graph,
//! compiled to a holonomy representation.
//!
//! Conventions. Cuffs are indexed `0, 1, 2` internally and `1, 2, 3` in text.
//! Each pair of pants is the double of a right-angled hexagon; the seam
//! `(k, k+1)` is the common perpendicular of cuffs `k` and `k+1`. The cuff
//! generator `X_k` is the product of the reflections in the two seams that
//! meet cuff `k`, so `X_0 X_1 X_2 = 1`. Seen along the direction `X_k`
//! translates, the pants lies on the left.
//!
//! Twist. For a gluing `(P, i) ↔ (Q, j)` the twist is the signed distance,
//! measured along cuff `i` in the direction of `X_i`, from the foot of seam
//! `(i, i+1)` of `P` to the foot of seam `(j-1, j)` of `Q`. Twist zero is the
//! reflection-symmetric gluing. Adding the cuff length to the twist is a full
//! Dehn twist.

pub mod format;

use std::collections::VecDeque;
use std::f64::consts::PI;

use crate::error::{GeoError, Result};
use crate::hyptrig::{self, Isometry};
use crate::tol;
use crate::word::{Letter, Word};

/// One cuff of one pants (both 0-based).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CuffRef {
    pub pants: usize,
    pub cuff: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Gluing {
    pub first: CuffRef,
    pub second: CuffRef,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PantsGraph {
    pub n_pants: usize,
    pub gluings: Vec<Gluing>,
}

/// `(genus, boundary count)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Signature {
    pub genus: usize,
    pub boundaries: usize,
}

impl PantsGraph {
    /// One pants with cuffs 1 and 2 glued; cuff 3 is the boundary.
    pub fn one_holed_torus() -> Self {
        PantsGraph {
            n_pants: 1,
            gluings: vec![Gluing {
                first: CuffRef { pants: 0, cuff: 0 },
                second: CuffRef { pants: 0, cuff: 1 },
            }],
        }
    }

    /// Two pants glued cuff-to-cuff along all three cuffs.
    pub fn genus2_theta() -> Self {
        PantsGraph {
            n_pants: 2,
            gluings: (0..3)
                .map(|k| Gluing {
                    first: CuffRef { pants: 0, cuff: k },
                    second: CuffRef { pants: 1, cuff: k },
                })
                .collect(),
        }
    }

    /// Two self-glued pants joined along their third cuffs.
    pub fn genus2_dumbbell() -> Self {
        let c = |pants, cuff| CuffRef { pants, cuff };
        PantsGraph {
            n_pants: 2,
            gluings: vec![
                Gluing { first: c(0, 0), second: c(0, 1) },
                Gluing { first: c(1, 0), second: c(1, 1) },
                Gluing { first: c(0, 2), second: c(1, 2) },
            ],
        }
    }

    /// Unglued cuffs in `(pants, cuff)` order.
    pub fn free_cuffs(&self) -> Vec<CuffRef> {
        let mut out = Vec::new();
        for p in 0..self.n_pants {
            for k in 0..3 {
                let r = CuffRef { pants: p, cuff: k };
                if !self.gluings.iter().any(|g| g.first == r || g.second == r) {
                    out.push(r);
                }
            }
        }
        out
    }

    pub fn validate(&self) -> Result<Signature> {
        if self.n_pants == 0 {
            return Err(GeoError::Structural("graph has no pants".into()));
        }
        let mut used = vec![[false; 3]; self.n_pants];
        for g in &self.gluings {
            for r in [g.first, g.second] {
                if r.pants >= self.n_pants || r.cuff >= 3 {
                    return Err(GeoError::Structural(format!(
                        "cuff P{}.{} does not exist",
                        r.pants,
                        r.cuff + 1
                    )));
                }
                if used[r.pants][r.cuff] {
                    return Err(GeoError::Structural(format!(
                        "cuff P{}.{} glued twice",
                        r.pants,
                        r.cuff + 1
                    )));
                }
                used[r.pants][r.cuff] = true;
            }
        }
        let mut seen = vec![false; self.n_pants];
        let mut queue = VecDeque::from([0usize]);
        seen[0] = true;
        while let Some(p) = queue.pop_front() {
            for g in &self.gluings {
                for (a, b) in [(g.first.pants, g.second.pants), (g.second.pants, g.first.pants)] {
                    if a == p && !seen[b] {
                        seen[b] = true;
                        queue.push_back(b);
                    }
                }
            }
        }
        if seen.iter().any(|s| !s) {
            return Err(GeoError::Structural("pants graph is disconnected".into()));
        }
        let nb = self.free_cuffs().len();
        let twice_genus = 2 + self.n_pants - nb;
        if twice_genus % 2 != 0 || 2 + self.n_pants < nb {
            return Err(GeoError::Structural("inconsistent Euler characteristic".into()));
        }
        let genus = twice_genus / 2;
        if 3 * genus + nb < 3 || self.gluings.len() != 3 * genus + nb - 3 {
            return Err(GeoError::Structural(format!(
                "{} gluings but signature ({genus}, {nb}) needs {}",
                self.gluings.len(),
                (3 * genus + nb).saturating_sub(3)
            )));
        }
        Ok(Signature { genus, boundaries: nb })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct FNCoordinates {
    /// Per gluing.
    pub lengths: Vec<f64>,
    /// Per gluing.
    pub twists: Vec<f64>,
    /// Per free cuff, in [`PantsGraph::free_cuffs`] order; 0 is a cusp.
    pub boundary: Vec<f64>,
}

impl FNCoordinates {
    pub fn one_holed_torus(length: f64, twist: f64, boundary: f64) -> Self {
        FNCoordinates { lengths: vec![length], twists: vec![twist], boundary: vec![boundary] }
    }

    pub fn closed(lengths: Vec<f64>, twists: Vec<f64>) -> Self {
        FNCoordinates { lengths, twists, boundary: Vec::new() }
    }
}

/// A pair of pants in its own coordinates.
#[derive(Debug, Clone)]
pub struct Pants {
    pub lengths: [f64; 3],
    /// Boundary generators, `X_0 X_1 X_2 = 1`.
    pub gens: [Isometry; 3],
    /// Seam lengths `(0,1)`, `(1,2)`, `(2,0)`; infinite next to a cusp.
    pub seams: [f64; 3],
    /// Frame at the foot of seam `(k, k+1)` on cuff `k`, facing the direction
    /// of `X_k` with the pants on the left. `None` for a cusp.
    frames: [Option<Isometry>; 3],
}

fn rot(theta: f64) -> Isometry {
    Isometry::rotation(theta)
}

fn tr(s: f64) -> Isometry {
    Isometry::translation(s)
}

// (F R0 F^-1)(G R0 G^-1) with R0 the reflection in the imaginary axis
fn reflection_product(f: &Isometry, g: &Isometry) -> Isometry {
    let m = f.inverse() * *g;
    let flipped = Isometry { a: m.a, b: -m.b, c: -m.c, d: m.d };
    (*f * flipped * g.inverse()).renormalized()
}

fn seam_length(h_a: f64, h_b: f64, h_opp: f64) -> f64 {
    ((h_opp.cosh() + h_a.cosh() * h_b.cosh()) / (h_a.sinh() * h_b.sinh())).acosh()
}

/// Build a pair of pants with cuff lengths `l` (0 = cusp, at most one).
pub fn build_pants(l1: f64, l2: f64, l3: f64) -> Result<Pants> {
    let l = [l1, l2, l3];
    for (k, v) in l.iter().enumerate() {
        if !(v.is_finite() && *v >= 0.0) {
            return Err(GeoError::Domain(format!("cuff {} length must be >= 0, got {v}", k + 1)));
        }
    }
    let cusps = l.iter().filter(|v| **v == 0.0).count();
    if cusps > 1 {
        return Err(GeoError::Structural("pants with more than one cusp".into()));
    }
    // walk with any cusp in the last slot, then rotate back
    let r = match l.iter().position(|v| *v == 0.0) {
        Some(0) => 1,
        Some(1) => 2,
        _ => 0,
    };
    let rl = [l[r], l[(r + 1) % 3], l[(r + 2) % 3]];
    let built = walk_pants(rl);
    let mut gens = [Isometry::IDENTITY; 3];
    let mut seams = [0.0; 3];
    let mut frames = [None; 3];
    for k in 0..3 {
        let o = (k + r) % 3;
        gens[o] = built.gens[k];
        seams[o] = built.seams[k];
        frames[o] = built.frames[k];
    }
    Ok(Pants { lengths: l, gens, seams, frames })
}

// Cuff 3 may be a cusp; cuffs 1 and 2 are positive.
fn walk_pants(l: [f64; 3]) -> Pants {
    let h = [l[0] / 2.0, l[1] / 2.0, l[2] / 2.0];
    let a01 = seam_length(h[0], h[1], h[2]);
    let right = rot(-PI / 2.0);
    let back = rot(PI);
    // clockwise around the hexagon, starting at the foot of seam (2,0)
    let start = tr(h[0]) * back;
    let e0 = start * tr(h[0]);
    let s01 = e0 * right;
    let c1 = s01 * tr(a01) * right;
    let e1 = c1 * tr(h[1]);
    let s12 = e1 * right;
    let s20 = start * rot(PI / 2.0);
    let mut frames = [Some(e0 * back), Some(e1 * back), None];
    let mut seams = [a01, f64::INFINITY, f64::INFINITY];
    if l[2] > 0.0 {
        let a12 = seam_length(h[1], h[2], h[0]);
        let a20 = seam_length(h[2], h[0], h[1]);
        let c2 = s12 * tr(a12) * right;
        frames[2] = Some(c2 * tr(h[2]) * back);
        seams[1] = a12;
        seams[2] = a20;
    }
    let x0 = reflection_product(&s20, &s01);
    let x1 = reflection_product(&s01, &s12);
    let x2 = reflection_product(&s12, &s20);
    Pants { lengths: l, gens: [x0, x1, x2], seams, frames: frames.map(|f| f.map(|m| m.renormalized())) }
}

impl Pants {
    /// Frame at the foot of seam `(k, k+1)` on cuff `k`.
    pub fn end_frame(&self, k: usize) -> Option<Isometry> {
        self.frames[k]
    }

    /// Frame at the foot of seam `(k-1, k)` on cuff `k`.
    pub fn start_frame(&self, k: usize) -> Option<Isometry> {
        self.frames[k].map(|f| (f * tr(self.lengths[k] / 2.0)).renormalized())
    }
}

/// Images of a generating set plus the relators they satisfy.
#[derive(Debug, Clone)]
pub struct HolonomyRep {
    pub names: Vec<String>,
    pub gens: Vec<Isometry>,
    pub relators: Vec<Word>,
    /// Largest distance of a relator image from ±identity.
    pub residual: f64,
    /// Word for each interior curve (gluing order), then each boundary cuff.
    pub curves: Vec<(String, Word)>,
    pub signature: Signature,
    /// Some interior length is below [`tol::THIN_LENGTH`].
    pub thin: bool,
}

impl HolonomyRep {
    pub fn eval(&self, w: &[Letter]) -> Isometry {
        let mut acc = Isometry::IDENTITY;
        for (k, &l) in w.iter().enumerate() {
            let g = self.gens[(l.unsigned_abs() - 1) as usize];
            acc = acc * if l > 0 { g } else { g.inverse() };
            if (k + 1) % tol::RENORM_EVERY == 0 {
                acc = acc.renormalized();
            }
        }
        acc.renormalized()
    }

    pub fn trace(&self, w: &[Letter]) -> f64 {
        self.eval(w).trace()
    }

    pub fn generator_count(&self) -> usize {
        self.gens.len()
    }
}

/// Geodesic length of the class of `w`.
pub fn word_length(rep: &HolonomyRep, w: &[Letter]) -> Result<f64> {
    if w.is_empty() {
        return Err(GeoError::Domain("empty word".into()));
    }
    hyptrig::trace_to_length(rep.trace(w))
}

fn cuff_lengths(graph: &PantsGraph, coords: &FNCoordinates) -> Result<Vec<[f64; 3]>> {
    let free = graph.free_cuffs();
    if coords.lengths.len() != graph.gluings.len() || coords.twists.len() != graph.gluings.len() {
        return Err(GeoError::Structural(format!(
            "graph has {} gluings, coordinates give {} lengths and {} twists",
            graph.gluings.len(),
            coords.lengths.len(),
            coords.twists.len()
        )));
    }
    if coords.boundary.len() != free.len() {
        return Err(GeoError::Structural(format!(
            "graph has {} free cuffs, coordinates give {} boundary lengths",
            free.len(),
            coords.boundary.len()
        )));
    }
    let mut out = vec![[f64::NAN; 3]; graph.n_pants];
    for (g, &l) in graph.gluings.iter().zip(&coords.lengths) {
        if !(l.is_finite() && l > 0.0) {
            return Err(GeoError::Structural(format!("interior length must be > 0, got {l}")));
        }
        out[g.first.pants][g.first.cuff] = l;
        out[g.second.pants][g.second.cuff] = l;
    }
    for t in &coords.twists {
        if !t.is_finite() {
            return Err(GeoError::Structural(format!("twist must be finite, got {t}")));
        }
    }
    for (r, &b) in free.iter().zip(&coords.boundary) {
        out[r.pants][r.cuff] = b;
    }
    Ok(out)
}

/// Word of a cuff in the generators of [`holonomy`].
pub fn cuff_word(r: CuffRef) -> Word {
    let g1 = (2 * r.pants + 1) as Letter;
    let g2 = g1 + 1;
    match r.cuff {
        0 => vec![g1],
        1 => vec![g2],
        _ => vec![-g2, -g1],
    }
}

/// Holonomy of the surface glued from `graph` with coordinates `coords`.
///
/// Generators: for every pants `p`, its cuff elements `P{p}.1`, `P{p}.2`
/// (cuff 3 is `(X_1 X_2)^-1`), then one stable letter `S{e}` for every gluing
/// `e` outside the breadth-first spanning tree rooted at pants 0.
pub fn holonomy(graph: &PantsGraph, coords: &FNCoordinates) -> Result<HolonomyRep> {
    let signature = graph.validate()?;
    let lengths = cuff_lengths(graph, coords)?;
    let pants: Vec<Pants> =
        lengths.iter().map(|l| build_pants(l[0], l[1], l[2])).collect::<Result<_>>()?;

    // placement J of the second pants relative to the first, per gluing
    let mut joins = Vec::with_capacity(graph.gluings.len());
    for (e, g) in graph.gluings.iter().enumerate() {
        let nf = pants[g.first.pants].end_frame(g.first.cuff);
        let ns = pants[g.second.pants].start_frame(g.second.cuff);
        let (Some(nf), Some(ns)) = (nf, ns) else {
            return Err(GeoError::Structural("cannot glue along a cusp".into()));
        };
        joins.push((nf * tr(coords.twists[e]) * rot(PI) * ns.inverse()).renormalized());
    }

    // Base point on the first cuff pants 0 shares with another pants, so the
    // conjugators on both sides stay small. Rooting inside pants 0 makes the
    // far generators large and the relators lose precision to cancellation.
    let base = graph
        .gluings
        .iter()
        .find_map(|g| match (g.first.pants, g.second.pants) {
            (0, q) if q != 0 => pants[0].end_frame(g.first.cuff),
            (q, 0) if q != 0 => pants[0].start_frame(g.second.cuff),
            _ => None,
        })
        .unwrap_or(Isometry::IDENTITY);
    let mut place: Vec<Option<Isometry>> = vec![None; graph.n_pants];
    place[0] = Some(base.inverse());
    let mut tree = vec![false; graph.gluings.len()];
    let mut queue = VecDeque::from([0usize]);
    while let Some(p) = queue.pop_front() {
        let mp = place[p].unwrap();
        for (e, g) in graph.gluings.iter().enumerate() {
            if g.first.pants == p && place[g.second.pants].is_none() {
                place[g.second.pants] = Some((mp * joins[e]).renormalized());
                tree[e] = true;
                queue.push_back(g.second.pants);
            } else if g.second.pants == p && place[g.first.pants].is_none() {
                place[g.first.pants] = Some((mp * joins[e].inverse()).renormalized());
                tree[e] = true;
                queue.push_back(g.first.pants);
            }
        }
    }
    let place: Vec<Isometry> = place.into_iter().map(|m| m.unwrap()).collect();

    let mut names = Vec::new();
    let mut gens = Vec::new();
    for (p, pa) in pants.iter().enumerate() {
        for k in 0..2 {
            names.push(format!("P{p}.{}", k + 1));
            gens.push(pa.gens[k].conjugate_by(&place[p]).renormalized());
        }
    }
    let mut relators = Vec::new();
    for (e, g) in graph.gluings.iter().enumerate() {
        let wf = cuff_word(g.first);
        let ws = cuff_word(g.second);
        if tree[e] {
            relators.push([ws, wf].concat());
        } else {
            let mq = place[g.second.pants];
            let s = (place[g.first.pants] * joins[e] * mq.inverse()).renormalized();
            names.push(format!("S{}", e + 1));
            gens.push(s);
            let sl = gens.len() as Letter;
            relators.push([vec![sl], ws, vec![-sl], wf].concat());
        }
    }
    let mut curves = Vec::new();
    for (e, g) in graph.gluings.iter().enumerate() {
        curves.push((format!("c{}", e + 1), cuff_word(g.first)));
    }
    for r in graph.free_cuffs() {
        curves.push((format!("P{}.{}", r.pants, r.cuff + 1), cuff_word(r)));
    }
    let thin = coords.lengths.iter().any(|&l| l < tol::THIN_LENGTH);
    let mut rep = HolonomyRep { names, gens, relators, residual: 0.0, curves, signature, thin };
    rep.residual = rep
        .relators
        .iter()
        .map(|w| rep.eval(w).distance_from_pm_identity())
        .fold(0.0, f64::max);
    if rep.residual > 1e-8 {
        return Err(GeoError::Structural(format!("relator residual {} exceeds 1e-8", rep.residual)));
    }
    Ok(rep)
}

/// One-holed torus in the marking `A` (dual curve), `B` (pants curve),
/// normalized so that `tr A, tr B, tr AB > 0`. The boundary is `[A, B]`.
///
/// `A` has twist `tau` and `AB` twist `tau - length` relative to `B`, so
/// `cosh(l_A/2) = cosh(c/2) cosh(tau/2)` with `c` the perpendicular from `B`
/// to itself. Raising `tau` by `length` sends `(A, B)` to `(B^-1 A, B)`.
#[derive(Debug, Clone)]
pub struct OneHoledTorus {
    pub length: f64,
    pub twist: f64,
    pub boundary: f64,
    pub a: Isometry,
    pub b: Isometry,
}

impl OneHoledTorus {
    pub fn new(length: f64, twist: f64, boundary: f64) -> Result<Self> {
        let rep = holonomy(
            &PantsGraph::one_holed_torus(),
            &FNCoordinates::one_holed_torus(length, twist, boundary),
        )?;
        // B is the inverse of P0.1 so that AB is the curve of twist l - tau
        let mut b = rep.gens[0].inverse();
        let mut a = rep.gens[2];
        if a.trace() < 0.0 {
            a = a.neg();
        }
        if b.trace() < 0.0 {
            b = b.neg();
        }
        Ok(OneHoledTorus { length, twist, boundary, a, b })
    }

    /// The torus whose three systoles have trace 3 and whose isometry group
    /// has order 12.
    pub fn modular() -> Self {
        let length = 2.0 * 1.5f64.acosh();
        Self::new(length, length / 2.0, 0.0).expect("modular torus builds")
    }

    pub fn traces(&self) -> (f64, f64, f64) {
        (self.a.trace(), self.b.trace(), (self.a * self.b).trace())
    }

    pub fn commutator(&self) -> Isometry {
        self.a * self.b * self.a.inverse() * self.b.inverse()
    }

    pub fn is_cusped(&self) -> bool {
        self.boundary == 0.0
    }

    /// Two-generator representation with generators `A` = 1, `B` = 2.
    pub fn rep(&self) -> HolonomyRep {
        HolonomyRep {
            names: vec!["A".into(), "B".into()],
            gens: vec![self.a, self.b],
            relators: Vec::new(),
            residual: 0.0,
            curves: vec![("c1".into(), vec![2]), ("P0.3".into(), vec![1, 2, -1, -2])],
            signature: Signature { genus: 1, boundaries: 1 },
            thin: self.length < tol::THIN_LENGTH,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hyptrig::{hexagon_perp, length_to_trace};

    fn close(a: f64, b: f64, eps: f64) -> bool {
        (a - b).abs() <= eps * a.abs().max(1.0)
    }

    #[test]
    fn pants_relation_and_traces() {
        for l in [[1.0, 2.0, 3.0], [0.5, 0.5, 0.0], [0.0, 1.0, 2.0], [2.0, 0.0, 1.5], [4.0, 0.3, 2.2]] {
            let p = build_pants(l[0], l[1], l[2]).unwrap();
            let prod = p.gens[0] * p.gens[1] * p.gens[2];
            assert!(prod.distance_from_pm_identity() < 1e-10, "{l:?}");
            for k in 0..3 {
                assert!(close(p.gens[k].trace().abs(), length_to_trace(l[k]), 1e-10), "{l:?} cuff {k}");
            }
        }
    }

    #[test]
    fn symmetric_pants_has_equal_seams() {
        let p = build_pants(1.3, 1.3, 1.3).unwrap();
        assert!(close(p.seams[0], p.seams[1], 1e-12) && close(p.seams[1], p.seams[2], 1e-12));
    }

    #[test]
    fn seam_matches_hexagon_perp() {
        let p = build_pants(2.0, 2.0, 2.0).unwrap();
        assert!(close(p.seams[0], hexagon_perp(2.0, 2.0).unwrap(), 1e-12));
        let p = build_pants(1.7, 1.7, 0.4).unwrap();
        assert!(close(p.seams[0], hexagon_perp(0.4, 1.7).unwrap(), 1e-12));
    }

    #[test]
    fn frames_sit_on_axes() {
        let p = build_pants(1.0, 2.0, 3.0).unwrap();
        for k in 0..3 {
            for f in [p.end_frame(k).unwrap(), p.start_frame(k).unwrap()] {
                let local = p.gens[k].conjugate_by(&f.inverse());
                // translation along the imaginary axis towards infinity
                let t = if local.a + local.d < 0.0 { local.neg() } else { local };
                assert!(t.b.abs() < 1e-10 && t.c.abs() < 1e-10, "cuff {k}: {t:?}");
                assert!(t.a > 1.0);
            }
        }
    }

    #[test]
    fn modular_torus_traces() {
        let t = OneHoledTorus::modular();
        let (x, y, z) = t.traces();
        assert!(close(x, 3.0, 1e-10) && close(y, 3.0, 1e-10) && close(z, 3.0, 1e-10), "{x} {y} {z}");
        assert!(close(t.commutator().trace(), -2.0, 1e-10));
    }

    #[test]
    fn torus_dual_formula() {
        let (l, b) = (1.3, 0.8);
        let c = hexagon_perp(b, l).unwrap();
        for tau in [0.0, 0.3, 0.65, -1.1] {
            let t = OneHoledTorus::new(l, tau, b).unwrap();
            let (x, y, z) = t.traces();
            assert!(close(y, length_to_trace(l), 1e-10));
            let la = 2.0 * ((c / 2.0).cosh() * (tau / 2.0f64).cosh()).acosh();
            let lab = 2.0 * ((c / 2.0).cosh() * ((l - tau) / 2.0f64).cosh()).acosh();
            assert!(close(x, length_to_trace(la), 1e-9), "tau {tau}: {x} vs {}", length_to_trace(la));
            assert!(close(z, length_to_trace(lab), 1e-9), "tau {tau}: {z} vs {}", length_to_trace(lab));
            assert!(close(t.commutator().trace(), -length_to_trace(b), 1e-9));
        }
    }

    #[test]
    fn genus2_graphs_close_up() {
        let coords = FNCoordinates::closed(vec![1.0, 1.5, 2.0], vec![0.2, -0.4, 0.9]);
        for graph in [PantsGraph::genus2_theta(), PantsGraph::genus2_dumbbell()] {
            let rep = holonomy(&graph, &coords).unwrap();
            assert!(rep.residual <= 1e-8);
            assert_eq!(rep.signature, Signature { genus: 2, boundaries: 0 });
            for (k, (_, w)) in rep.curves.iter().enumerate() {
                let l = word_length(&rep, w).unwrap();
                assert!(close(l, coords.lengths[k], tol::LEN));
            }
        }
    }

    #[test]
    fn structural_errors() {
        let g = PantsGraph {
            n_pants: 1,
            gluings: vec![Gluing {
                first: CuffRef { pants: 0, cuff: 0 },
                second: CuffRef { pants: 0, cuff: 0 },
            }],
        };
        assert!(g.validate().is_err());
        let bad = FNCoordinates::closed(vec![1.0], vec![0.0]);
        assert!(holonomy(&PantsGraph::genus2_theta(), &bad).is_err());
    }
}
