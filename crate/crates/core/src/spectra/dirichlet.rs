//! Dirichlet domains of closed surface groups and geodesic enumeration by a
//! tile search.
//!
//! The domain `D` about a generic base point `o` is cut out of the Klein disk
//! by the bisectors of `o` and its orbit points. Orbit points are added
//! (products of current side elements) until the polygon is bounded and its
//! area equals `4π(g-1)`; then `D` is a fundamental domain and its side
//! elements generate the group.
//!
//! Every closed geodesic of length `l` has a lift through `D`, and one period
//! of it crosses tiles `g D` with `d(o, g o) <= l + 2r`, where `r` is the
//! circumradius of `D`. A breadth-first search over tiles within that radius
//! therefore meets every class of length `<= L`. Classes are identified by
//! the cyclic sequence of sides crossed by the geodesic, up to rotation and
//! reversal.

use std::collections::{HashMap, VecDeque};
use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{GeoError, Result};
use crate::fenchel_nielsen::HolonomyRep;
use crate::geom::{self, Vec3};
use crate::hyptrig::Isometry;
use crate::tol;
use crate::word::{self, Letter, Word};

use super::GeodesicClass;

const MAX_ROUNDS: usize = 40;
const MAX_ELEMENTS: usize = 20_000;

/// One side of the domain: the bisector of `o` and `element · o`.
#[derive(Debug, Clone)]
pub struct Side {
    pub element: Isometry,
    /// The element as a word in the surface generators.
    pub word: Word,
    /// Unit normal, positive on the inside of the domain.
    pub normal: Vec3,
    /// Index of the side paired with this one by `element^-1`.
    pub pair: usize,
}

#[derive(Debug, Clone)]
pub struct DirichletDomain {
    /// Maps `i` to the base point in the coordinates of the representation.
    pub to_base: Isometry,
    /// Side `k` runs from vertex `k` to vertex `k + 1`, counter-clockwise.
    pub vertices: Vec<Vec3>,
    pub sides: Vec<Side>,
    pub radius: f64,
    pub area: f64,
}

#[derive(Debug, Clone)]
struct Element {
    m: Isometry,
    word: Word,
    q: Vec3,
}

/// Orbit points deduplicated up to a distance of about `1e-6`. Coordinates
/// are compared relative to `t`, since rounding in `B(u, v)` grows like `t²`.
#[derive(Default)]
pub(crate) struct OrbitSet {
    cells: HashMap<i64, Vec<Vec3>>,
}

impl OrbitSet {
    const CELL: f64 = 1e-3;

    fn cell(p: &Vec3) -> i64 {
        (p.t.max(1.0).acosh() / Self::CELL).floor() as i64
    }

    pub(crate) fn insert(&mut self, p: Vec3) -> bool {
        let k = Self::cell(&p);
        for j in k - 1..=k + 1 {
            if let Some(v) = self.cells.get(&j) {
                if v.iter().any(|u| same_point(u, &p)) {
                    return false;
                }
            }
        }
        self.cells.entry(k).or_default().push(p);
        true
    }
}

fn same_point(u: &Vec3, v: &Vec3) -> bool {
    let d = (u.t - v.t).abs().max((u.x - v.x).abs()).max((u.y - v.y).abs());
    d < 1e-6 * u.t
}

fn letter_element(gens: &[Isometry], l: Letter) -> Isometry {
    let g = gens[(l.unsigned_abs() - 1) as usize];
    if l > 0 {
        g
    } else {
        g.inverse()
    }
}

// vertex list with the label of the edge leaving each vertex
type Polygon = Vec<([f64; 2], Option<usize>)>;

// cosh of the displacement of the base point `i`
fn displacement(g: &Isometry) -> f64 {
    (g.a * g.a + g.b * g.b + g.c * g.c + g.d * g.d) / 2.0
}

/// Nielsen moves `g_i -> g_i g_j^±1, g_j^±1 g_i` while they bring a generator
/// closer to the base point. Returns the new generators with their words in
/// the old ones.
fn shorten_generators(mut gens: Vec<Isometry>) -> (Vec<Isometry>, Vec<Word>) {
    let n = gens.len();
    let mut words: Vec<Word> = (1..=n as Letter).map(|l| vec![l]).collect();
    for _ in 0..1000 {
        let mut improved = false;
        for i in 0..n {
            for j in 0..n {
                if i == j {
                    continue;
                }
                for (inv, left) in [(false, false), (true, false), (false, true), (true, true)] {
                    let (gj, wj) = if inv {
                        (gens[j].inverse(), word::inverse(&words[j]))
                    } else {
                        (gens[j], words[j].clone())
                    };
                    let (m, w) = if left {
                        (gj * gens[i], [wj, words[i].clone()].concat())
                    } else {
                        (gens[i] * gj, [words[i].clone(), wj].concat())
                    };
                    let c = displacement(&m);
                    if c > 1.0 + 1e-9 && c < displacement(&gens[i]) * (1.0 - 1e-12) {
                        gens[i] = m.renormalized();
                        words[i] = word::reduce(&w);
                        improved = true;
                    }
                }
            }
        }
        if !improved {
            break;
        }
    }
    (gens, words)
}

fn clip(poly: &Polygon, a: [f64; 2], c: f64, label: usize) -> Polygon {
    let n = poly.len();
    let f = |p: &[f64; 2]| a[0] * p[0] + a[1] * p[1] - c;
    let mut out: Polygon = Vec::with_capacity(n + 1);
    for i in 0..n {
        let (cur, lab) = poly[i];
        let (nxt, _) = poly[(i + 1) % n];
        let (fc, fnx) = (f(&cur), f(&nxt));
        let cut = |s: f64| [cur[0] + s * (nxt[0] - cur[0]), cur[1] + s * (nxt[1] - cur[1])];
        if fc <= 0.0 {
            out.push((cur, lab));
            if fnx > 0.0 {
                out.push((cut(fc / (fc - fnx)), Some(label)));
            }
        } else if fnx <= 0.0 {
            out.push((cut(fc / (fc - fnx)), lab));
        }
    }
    // drop vertices repeated by cuts through existing corners
    let mut clean: Polygon = Vec::with_capacity(out.len());
    for i in 0..out.len() {
        let (p, _) = out[i];
        let (q, _) = out[(i + 1) % out.len()];
        if (p[0] - q[0]).hypot(p[1] - q[1]) > 1e-13 {
            clean.push(out[i]);
        }
    }
    clean
}

fn polygon_area(vertices: &[Vec3]) -> f64 {
    let n = vertices.len();
    let mut angles = 0.0;
    for i in 0..n {
        let v = &vertices[i];
        let t1 = geom::direction(v, &vertices[(i + n - 1) % n]);
        let t2 = geom::direction(v, &vertices[(i + 1) % n]);
        angles += (-t1.mink(&t2)).clamp(-1.0, 1.0).acos();
    }
    (n as f64 - 2.0) * PI - angles
}

impl DirichletDomain {
    /// Domain for a closed surface of genus `>= 2`.
    pub fn new(rep: &HolonomyRep) -> Result<Self> {
        Self::with_base(rep, Complex64::new(0.1234, 1.0731))
    }

    /// Domain about the upper half-plane point `z`, which must not be fixed
    /// by any element.
    pub fn with_base(rep: &HolonomyRep, z: Complex64) -> Result<Self> {
        let sig = rep.signature;
        if sig.boundaries != 0 || sig.genus < 2 {
            return Err(GeoError::Domain(format!(
                "Dirichlet domains need a closed surface of genus >= 2, got genus {} with {} boundaries",
                sig.genus, sig.boundaries
            )));
        }
        let target = 4.0 * PI * (sig.genus as f64 - 1.0);
        let s = z.im.sqrt();
        let to_base = Isometry { a: s, b: z.re / s, c: 0.0, d: 1.0 / s };
        let back = to_base.inverse();
        let gens: Vec<Isometry> = rep.gens.iter().map(|g| g.conjugate_by(&back).renormalized()).collect();
        let (gens, gen_words) = shorten_generators(gens);
        let n = gens.len() as Letter;
        let letters: Vec<Letter> = (1..=n).flat_map(|l| [l, -l]).collect();
        // element words are kept in the letters of `rep`
        let orig = |l: Letter| -> Word {
            let w = &gen_words[(l.unsigned_abs() - 1) as usize];
            if l < 0 {
                word::inverse(w)
            } else {
                w.clone()
            }
        };

        let mut seen = OrbitSet::default();
        seen.insert(Vec3::ORIGIN);
        let mut elems: Vec<Element> = Vec::new();
        let mut push = |m: Isometry, w: Word, elems: &mut Vec<Element>| {
            let q = geom::act(&m, &Vec3::ORIGIN);
            if seen.insert(q) {
                elems.push(Element { m, word: w, q });
            }
        };
        for &l in &letters {
            push(letter_element(&gens, l), orig(l), &mut elems);
        }
        for &l in &letters {
            for &k in &letters {
                if k != -l {
                    push(letter_element(&gens, l) * letter_element(&gens, k), word::reduce(&[orig(l), orig(k)].concat()), &mut elems);
                }
            }
        }

        for _ in 0..MAX_ROUNDS {
            let mut poly: Polygon = vec![
                ([-1.0, -1.0], None),
                ([1.0, -1.0], None),
                ([1.0, 1.0], None),
                ([-1.0, 1.0], None),
            ];
            for (i, e) in elems.iter().enumerate() {
                poly = clip(&poly, [e.q.x, e.q.y], e.q.t - 1.0, i);
            }
            let bounded = poly.iter().all(|(p, lab)| lab.is_some() && p[0].hypot(p[1]) < 1.0 - 1e-12);
            if bounded {
                let vertices: Vec<Vec3> = poly.iter().map(|(p, _)| Vec3::from_klein(p[0], p[1])).collect();
                let area = polygon_area(&vertices);
                if (area - target).abs() <= 1e-8 * target {
                    let labels: Vec<usize> = poly.iter().map(|(_, l)| l.unwrap()).collect();
                    return Self::finish(to_base, vertices, &labels, &elems, area);
                }
            }
            let side_elems: Vec<Element> = poly.iter().filter_map(|(_, l)| l.map(|i| elems[i].clone())).collect();
            let mut factors = side_elems.clone();
            for &l in &letters {
                factors.push(Element { m: letter_element(&gens, l), word: orig(l), q: Vec3::ORIGIN });
            }
            let before = elems.len();
            for a in &side_elems {
                for b in &factors {
                    let w = word::reduce(&[a.word.clone(), b.word.clone()].concat());
                    if !w.is_empty() {
                        push((a.m * b.m).renormalized(), w, &mut elems);
                    }
                }
            }
            if elems.len() == before {
                // the sides found so far do not generate the missing ones:
                // grow the whole word ball by one letter
                let all = elems.clone();
                for a in &all {
                    for &l in &letters {
                        let w = word::reduce(&[a.word.clone(), orig(l)].concat());
                        if !w.is_empty() {
                            push((a.m * letter_element(&gens, l)).renormalized(), w, &mut elems);
                        }
                    }
                }
            }
            if elems.len() > MAX_ELEMENTS {
                break;
            }
        }
        Err(GeoError::Inconclusive("Dirichlet domain did not close".into()))
    }

    fn finish(to_base: Isometry, vertices: Vec<Vec3>, labels: &[usize], elems: &[Element], area: f64) -> Result<Self> {
        let mut sides: Vec<Side> = labels
            .iter()
            .map(|&i| {
                let e = &elems[i];
                Side {
                    element: e.m,
                    word: e.word.clone(),
                    normal: e.q.sub(&Vec3::ORIGIN).to_line(),
                    pair: usize::MAX,
                }
            })
            .collect();
        for k in 0..sides.len() {
            let back = geom::act(&sides[k].element.inverse(), &Vec3::ORIGIN);
            let j = (0..sides.len())
                .find(|&j| same_point(&geom::act(&sides[j].element, &Vec3::ORIGIN), &back))
                .ok_or_else(|| GeoError::Structural("unpaired side in Dirichlet domain".into()))?;
            sides[k].pair = j;
        }
        let radius = vertices.iter().map(|v| geom::distance(&Vec3::ORIGIN, v)).fold(0.0, f64::max);
        Ok(DirichletDomain { to_base, vertices, sides, radius, area })
    }

    fn contains(&self, p: &Vec3, eps: f64) -> Option<usize> {
        self.sides.iter().position(|s| p.mink(&s.normal) < -eps)
    }

    /// Cyclic sequence of sides crossed by one period of the axis of `h`
    /// (given in domain coordinates), canonical up to rotation and reversal.
    pub fn cutting_sequence(&self, h: &Isometry) -> Option<Vec<i64>> {
        let len = h.translation_length().ok()?;
        let (rv, av) = geom::fixed_null_vectors(h)?;
        let axis = geom::line_through(&rv, &av);
        let mut y = geom::foot(&Vec3::ORIGIN, &axis);
        let mut u = av.scale(1.0 / y.mink(&av)).sub(&y);
        let mut steps = 0;
        while let Some(k) = self.contains(&y, 1e-12) {
            let back = geom::Lorentz::from_isometry(&self.sides[k].element.inverse());
            y = back.apply(&y).to_point();
            u = back.apply(&u);
            steps += 1;
            if steps > 100_000 {
                return None;
            }
        }
        let mut seq: Vec<i64> = Vec::new();
        let mut travelled = 0.0;
        let mut entered: Option<usize> = None;
        loop {
            let mut best: Option<(f64, usize)> = None;
            for (k, s) in self.sides.iter().enumerate() {
                if Some(k) == entered {
                    continue;
                }
                let alpha = y.mink(&s.normal).max(0.0);
                let beta = u.mink(&s.normal);
                if beta < 0.0 && alpha < -beta {
                    let t = (alpha / -beta).atanh();
                    if best.is_none_or(|(b, _)| t < b) {
                        best = Some((t, k));
                    }
                }
            }
            let (t, k) = best?;
            if travelled + t >= len - 1e-9 {
                break;
            }
            travelled += t;
            seq.push(k as i64);
            let y2 = geom::walk(&y, &u, t);
            let u2 = y.scale(t.sinh()).add(&u.scale(t.cosh()));
            let back = geom::Lorentz::from_isometry(&self.sides[k].element.inverse());
            y = back.apply(&y2).to_point();
            u = back.apply(&u2);
            entered = Some(self.sides[k].pair);
            if seq.len() > 1_000_000 {
                return None;
            }
        }
        if seq.is_empty() {
            return None;
        }
        let rev: Vec<i64> = seq.iter().rev().map(|&k| self.sides[k as usize].pair as i64).collect();
        Some(std::cmp::min(min_rotation(&seq), min_rotation(&rev)))
    }
}

fn min_rotation(s: &[i64]) -> Vec<i64> {
    (0..s.len())
        .map(|k| [&s[k..], &s[..k]].concat())
        .min()
        .unwrap_or_default()
}

fn is_periodic(s: &[i64]) -> bool {
    let n = s.len();
    (1..n).any(|p| n % p == 0 && (p..n).all(|i| s[i] == s[i - p]))
}

/// Search statistics.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct TileStats {
    pub tiles: u64,
    pub radius: f64,
}

/// All primitive classes of length `<= cutoff` on a closed surface.
pub fn enumerate_closed(rep: &HolonomyRep, cutoff: f64, tile_budget: u64) -> Result<(Vec<GeodesicClass>, TileStats)> {
    let dom = DirichletDomain::new(rep)?;
    enumerate_in_domain(&dom, cutoff, tile_budget)
}

pub fn enumerate_in_domain(
    dom: &DirichletDomain,
    cutoff: f64,
    tile_budget: u64,
) -> Result<(Vec<GeodesicClass>, TileStats)> {
    let limit = (cutoff + 2.0 * dom.radius).cosh() * (1.0 + 1e-9);
    let mut seen = OrbitSet::default();
    seen.insert(Vec3::ORIGIN);
    let mut queue: VecDeque<(Isometry, Word, usize)> = VecDeque::from([(Isometry::IDENTITY, Vec::new(), 0)]);
    let mut found: HashMap<Vec<i64>, GeodesicClass> = HashMap::new();
    let mut tiles = 0u64;
    while let Some((g, w, depth)) = queue.pop_front() {
        tiles += 1;
        if tiles > tile_budget {
            return Err(GeoError::Inconclusive(format!(
                "tile budget {tile_budget} exhausted at cutoff {cutoff}"
            )));
        }
        if !w.is_empty() {
            let tr = g.trace().abs();
            if tr > 2.0 + tol::TRACE {
                let len = 2.0 * (tr / 2.0).acosh();
                if len <= cutoff {
                    if let Some(key) = dom.cutting_sequence(&g) {
                        if !is_periodic(&key) && !found.contains_key(&key) {
                            found.insert(
                                key.clone(),
                                GeodesicClass {
                                    word: word::canonical_class(&w),
                                    key,
                                    trace: tr,
                                    length: len,
                                    primitive: true,
                                    simple: None,
                                },
                            );
                        }
                    }
                }
            }
        }
        for s in &dom.sides {
            let mut h = g * s.element;
            if (depth + 1) % 8 == 0 {
                h = h.renormalized();
            }
            let q = geom::act(&h, &Vec3::ORIGIN);
            if q.t <= limit && seen.insert(q) {
                queue.push_back((h, word::reduce(&[w.clone(), s.word.clone()].concat()), depth + 1));
            }
        }
    }
    let mut classes: Vec<GeodesicClass> = found.into_values().collect();
    super::sort_classes(&mut classes);
    Ok((classes, TileStats { tiles, radius: dom.radius }))
}
