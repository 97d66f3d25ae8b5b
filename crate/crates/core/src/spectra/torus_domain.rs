//! Closed geodesics of a one-holed torus by a pruned search over reduced
//! words in `A`, `B`.
//!
//! The fundamental quadrilateral has vertices at the four lifts of the cusp
//! (or of the boundary axis) `v0 = fix [A,B]`, `v1 = B^-1 v0`,
//! `v2 = A^-1 B^-1 v0`, `v3 = A^-1 v0`, and `A`, `B` pair its sides.
//! Removing cusp neighbourhoods bounded by horocycles of length 2 (or the
//! funnels beyond the boundary) leaves a compact core `K` of radius `r` about
//! the base point `p`. Every closed geodesic meets the translates of `K`;
//! pick a lift `h` whose axis meets `K` at `x`. Follow `[x, hx]`, replacing
//! each excursion into a horoball by the horocyclic arc between its entry and
//! exit points. An arc point is within the excursion length of the entry
//! point, so every point `y` of the modified path has `d(x, y) <= l(h)`, and
//! the tiles it crosses spell a reduced word for `h` whose prefixes `g`
//! satisfy `d(p, g p) <= l(h) + 2r`. Searching all reduced words under that
//! bound therefore meets every conjugacy class of length `<= L`.

use std::collections::HashMap;

use rayon::prelude::*;

use crate::error::{GeoError, Result};
use crate::geom::{self, Vec3};
use crate::hyptrig::{self, Isometry};
use crate::tol;
use crate::word::{self, Letter, Word};

use super::GeodesicClass;

#[derive(Debug, Clone)]
pub struct TorusCore {
    pub base: Vec3,
    /// Corners of the compact core, two per side.
    pub corners: Vec<Vec3>,
    pub radius: f64,
    /// `A`, `B` conjugated so that the base point is `i`.
    pub gens: [Isometry; 2],
}

fn boundary_angle(v: &Vec3) -> f64 {
    v.y.atan2(v.x)
}

// true when the angles are in strictly cyclic order (either direction)
fn cyclic_order(angles: &[f64]) -> bool {
    let tau = 2.0 * std::f64::consts::PI;
    let offsets: Vec<f64> = angles[1..].iter().map(|a| (a - angles[0]).rem_euclid(tau)).collect();
    let gap = 1e-9;
    offsets.iter().all(|&o| o > gap && o < tau - gap)
        && (offsets.windows(2).all(|w| w[1] > w[0] + gap) || offsets.windows(2).all(|w| w[1] < w[0] - gap))
}

impl TorusCore {
    pub fn new(a: &Isometry, b: &Isometry) -> Result<Self> {
        let (a, b) = (*a, *b);
        let k = (a * b * a.inverse() * b.inverse()).renormalized();
        let conj = [
            Isometry::IDENTITY,
            b.inverse(),
            (a.inverse() * b.inverse()).renormalized(),
            a.inverse(),
        ];
        let mut corners = Vec::with_capacity(8);
        let unavailable = |why: &str| GeoError::Domain(format!("core radius unavailable: {why}"));
        if k.kind() == hyptrig::Kind::Parabolic {
            let v0 = geom::parabolic_null_vector(&k);
            let verts: Vec<Vec3> = conj.iter().map(|g| geom::act(g, &v0)).collect();
            let angles: Vec<f64> = verts.iter().map(boundary_angle).collect();
            if !cyclic_order(&angles) {
                return Err(unavailable("cusp lifts are not in cyclic order"));
            }
            for i in 0..4 {
                let j = (i + 1) % 4;
                let side = geom::line_through(&verts[i], &verts[j]);
                let mid = geom::foot(&Vec3::ORIGIN, &side);
                for (v, g) in [(verts[i], conj[i]), (verts[j], conj[j])] {
                    let par = k.conjugate_by(&g);
                    corners.push(horocycle_point(&mid, &v, &par)?);
                }
            }
        } else {
            let axis0 = geom::axis(&k).ok_or_else(|| unavailable("commutator is not hyperbolic"))?;
            let axes: Vec<Vec3> = conj.iter().map(|g| geom::act(g, &axis0)).collect();
            let k_fix = geom::fixed_null_vectors(&k).ok_or_else(|| unavailable("commutator is not hyperbolic"))?;
            let mut angles = Vec::new();
            for g in &conj {
                for x in [k_fix.0, k_fix.1] {
                    angles.push(boundary_angle(&geom::act(g, &x)));
                }
            }
            // each axis' endpoints must be adjacent, axes in cyclic order
            let ordered = (0..16u32).any(|flips| {
                let seq: Vec<f64> = (0..4)
                    .flat_map(|i| {
                        let (s, e) = (angles[2 * i], angles[2 * i + 1]);
                        if flips >> i & 1 == 1 { [e, s] } else { [s, e] }
                    })
                    .collect();
                cyclic_order(&seq)
            });
            if !ordered {
                return Err(unavailable("boundary lifts are not in cyclic order"));
            }
            for i in 0..4 {
                let j = (i + 1) % 4;
                let side = geom::common_perpendicular(&axes[i], &axes[j])
                    .ok_or_else(|| unavailable("adjacent boundary lifts meet"))?;
                for ax in [axes[i], axes[j]] {
                    corners.push(
                        geom::line_intersection(&side, &ax).ok_or_else(|| unavailable("degenerate side"))?,
                    );
                }
            }
        }
        let sum = corners.iter().fold(Vec3::new(0.0, 0.0, 0.0), |s, c| s.add(c));
        let base = sum.to_point();
        let radius = corners.iter().map(|c| geom::distance(&base, c)).fold(0.0, f64::max);
        let z = geom::to_upper(&base);
        let s = z.im.sqrt();
        let to_base = Isometry { a: s, b: z.re / s, c: 0.0, d: 1.0 / s };
        let gens = [
            a.conjugate_by(&to_base.inverse()).renormalized(),
            b.conjugate_by(&to_base.inverse()).renormalized(),
        ];
        Ok(TorusCore { base, corners, radius, gens })
    }
}

// point on the geodesic from `start` towards the ideal point `v` where the
// parabolic `par` fixing `v` moves points by 2 asinh(1)
fn horocycle_point(start: &Vec3, v: &Vec3, par: &Isometry) -> Result<Vec3> {
    let w = v.scale(1.0 / start.mink(v));
    let u = w.sub(start);
    let at = |s: f64| start.scale(s.cosh()).add(&u.scale(s.sinh())).to_point();
    let target = 2.0 * 1f64.asinh();
    let disp = |s: f64| {
        let q = at(s);
        geom::distance(&q, &geom::act(par, &q))
    };
    let (mut lo, mut hi) = (-10.0, 10.0);
    if !(disp(lo) > target && disp(hi) < target) {
        return Err(GeoError::Domain("cusp horocycle not bracketed".into()));
    }
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if disp(mid) > target {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(at(0.5 * (lo + hi)))
}

/// Search statistics.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct SearchStats {
    pub nodes: u64,
    pub radius: f64,
}

fn letter_matrix(gens: &[Isometry; 2], l: Letter) -> Isometry {
    match l {
        1 => gens[0],
        -1 => gens[0].inverse(),
        2 => gens[1],
        _ => gens[1].inverse(),
    }
}

/// Nielsen moves lowering `|tr A| + |tr B| + |tr AB|` until no move helps,
/// with the new generators as words in the old ones. The quadrilateral of
/// the original pair need not be embedded; that of the reduced pair is.
pub fn reduce_marking(a: &Isometry, b: &Isometry) -> ([Isometry; 2], [Word; 2]) {
    let cost = |x: &Isometry, y: &Isometry| x.trace().abs() + y.trace().abs() + (*x * *y).trace().abs();
    let (mut a, mut b) = (*a, *b);
    let (mut wa, mut wb): (Word, Word) = (vec![1], vec![2]);
    let mut best = cost(&a, &b);
    for _ in 0..10_000 {
        let moves = [
            ((a * b).renormalized(), b, word::reduce(&[wa.clone(), wb.clone()].concat()), wb.clone()),
            ((a * b.inverse()).renormalized(), b, word::reduce(&[wa.clone(), word::inverse(&wb)].concat()), wb.clone()),
            (a, (b * a).renormalized(), wa.clone(), word::reduce(&[wb.clone(), wa.clone()].concat())),
            (a, (b * a.inverse()).renormalized(), wa.clone(), word::reduce(&[wb.clone(), word::inverse(&wa)].concat())),
            (a, b.inverse(), wa.clone(), word::inverse(&wb)),
        ];
        let Some(m) = moves
            .into_iter()
            .map(|m| (cost(&m.0, &m.1), m))
            .filter(|(c, _)| *c < best * (1.0 - 1e-12))
            .min_by(|x, y| x.0.total_cmp(&y.0))
        else {
            break;
        };
        best = m.0;
        (a, b, wa, wb) = m.1;
    }
    ([a, b], [wa, wb])
}

/// A reduced pair whose quadrilateral is embedded: among the pairs formed by
/// two of the three curves of the trace sink (with either orientation), the
/// first that passes the cyclic order test.
pub fn embedded_marking(a: &Isometry, b: &Isometry) -> Result<([Isometry; 2], [Word; 2], TorusCore)> {
    let ([a, b], [wa, wb]) = reduce_marking(a, b);
    let ab = (a * b).renormalized();
    let wab = word::reduce(&[wa.clone(), wb.clone()].concat());
    let curves = [(a, wa), (b, wb), (ab, wab)];
    let mut last = None;
    for i in 0..3 {
        for j in 0..3 {
            if i == j {
                continue;
            }
            for (si, sj) in [(false, false), (false, true), (true, false), (true, true)] {
                let pick = |k: usize, inv: bool| {
                    let (m, w) = &curves[k];
                    if inv {
                        (m.inverse(), word::inverse(w))
                    } else {
                        (*m, w.clone())
                    }
                };
                let (x, wx) = pick(i, si);
                let (y, wy) = pick(j, sj);
                match TorusCore::new(&x, &y) {
                    Ok(core) => return Ok(([x, y], [wx, wy], core)),
                    Err(e) => last = Some(e),
                }
            }
        }
    }
    Err(last.unwrap())
}

/// All primitive, non-peripheral classes of length `<= cutoff`, with words
/// and keys in the letters `A` = 1, `B` = 2 of the given pair.
pub fn enumerate_torus(
    a: &Isometry,
    b: &Isometry,
    cutoff: f64,
    node_budget: u64,
) -> Result<(Vec<GeodesicClass>, SearchStats)> {
    let (_, words, core) = embedded_marking(a, b)?;
    let reach = cutoff + 2.0 * core.radius;
    let limit = reach.cosh() * (1.0 + 1e-9);
    let peripheral = word::canonical_class(&[1, 2, -1, -2]);

    // words of length 1 and 2 are visited here, longer ones in parallel
    // below their length-3 prefix
    let layers = prefix_layers(&core.gens, limit, 3);
    let short: Vec<&(Word, Isometry)> = layers[0].iter().chain(&layers[1]).collect();
    let seeds = &layers[2];

    let per_seed_budget = node_budget;
    let results: Vec<Result<(HashMap<Word, GeodesicClass>, u64)>> = seeds
        .par_iter()
        .map(|(w, m)| {
            let mut found = HashMap::new();
            let mut nodes = 0u64;
            let mut stack = vec![(w.clone(), *m)];
            while let Some((w, m)) = stack.pop() {
                nodes += 1;
                if nodes > per_seed_budget {
                    return Err(GeoError::Inconclusive(format!(
                        "node budget {node_budget} exhausted at cutoff {cutoff}"
                    )));
                }
                visit(&w, &m, cutoff, &peripheral, &mut found);
                for l in [1, -1, 2, -2] {
                    if w.last() == Some(&-l) {
                        continue;
                    }
                    let mut g = m * letter_matrix(&core.gens, l);
                    if (w.len() + 1) % tol::RENORM_EVERY == 0 {
                        g = g.renormalized();
                    }
                    if g.cosh_displacement_at_i() <= limit {
                        let mut w2 = w.clone();
                        w2.push(l);
                        stack.push((w2, g));
                    }
                }
            }
            Ok((found, nodes))
        })
        .collect();
    let mut all: HashMap<Word, GeodesicClass> = HashMap::new();
    let mut nodes = short.len() as u64;
    for (w, m) in short {
        visit(w, m, cutoff, &peripheral, &mut all);
    }
    for r in results {
        let (found, n) = r?;
        nodes += n;
        if nodes > node_budget {
            return Err(GeoError::Inconclusive(format!(
                "node budget {node_budget} exhausted at cutoff {cutoff}"
            )));
        }
        for (k, v) in found {
            all.entry(k).or_insert(v);
        }
    }
    let mut classes: Vec<GeodesicClass> = all
        .into_values()
        .map(|mut c| {
            let w: Word = c
                .word
                .iter()
                .flat_map(|&l| {
                    let x = &words[(l.unsigned_abs() - 1) as usize];
                    if l > 0 {
                        x.clone()
                    } else {
                        word::inverse(x)
                    }
                })
                .collect();
            c.word = word::canonical_class(&w);
            c.key = c.word.iter().map(|&l| l as i64).collect();
            c.simple = Some(word::is_torus_simple(&c.word));
            c
        })
        .collect();
    super::sort_classes(&mut classes);
    Ok((classes, SearchStats { nodes, radius: core.radius }))
}

fn prefix_layers(gens: &[Isometry; 2], limit: f64, depth: usize) -> Vec<Vec<(Word, Isometry)>> {
    let mut layers: Vec<Vec<(Word, Isometry)>> = Vec::with_capacity(depth);
    let mut layer: Vec<(Word, Isometry)> = vec![(Vec::new(), Isometry::IDENTITY)];
    for _ in 0..depth {
        let mut next = Vec::new();
        for (w, m) in &layer {
            for l in [1, -1, 2, -2] {
                if w.last() == Some(&-l) {
                    continue;
                }
                let g = *m * letter_matrix(gens, l);
                if g.cosh_displacement_at_i() <= limit {
                    let mut w2 = w.clone();
                    w2.push(l);
                    next.push((w2, g));
                }
            }
        }
        layers.push(next.clone());
        layer = next;
    }
    layers
}

fn visit(w: &[Letter], m: &Isometry, cutoff: f64, peripheral: &[Letter], found: &mut HashMap<Word, GeodesicClass>) {
    let tr = m.trace().abs();
    if tr <= 2.0 + tol::TRACE {
        return;
    }
    let len = 2.0 * (tr / 2.0).acosh();
    if len > cutoff {
        return;
    }
    let key = word::canonical_class(w);
    if word::is_proper_power(&key) || key == peripheral {
        return;
    }
    if found.contains_key(&key) {
        return;
    }
    found.insert(
        key.clone(),
        GeodesicClass {
            word: key.clone(),
            key: key.iter().map(|&l| l as i64).collect(),
            trace: tr,
            length: len,
            primitive: true,
            simple: None,
        },
    );
}
