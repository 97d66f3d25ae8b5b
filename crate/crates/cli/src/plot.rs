//! Simple closed geodesics of a one-holed torus folded into a fundamental
//! polygon, drawn in the Poincaré disk.
//!
//! Work happens in the Klein model, where geodesics are chords and the
//! polygon is a convex Euclidean polygon. A cusped torus gets the ideal
//! quadrilateral spanned by four lifts of the cusp; a torus with geodesic
//! boundary gets the octagon cut from the four boundary lifts by their
//! common perpendiculars. Sides `0..4` of the quadrilateral are paired by
//! `A^-1, B, A, B^-1`.

use std::fmt::Write as _;

use geowb::fenchel_nielsen::OneHoledTorus;
use geowb::geom::{self, Vec3};
use geowb::hyptrig::{self, Isometry, Kind};
use geowb::onetorus::{self, TraceTriple};
use geowb::spectra::torus_domain::embedded_marking;
use geowb::word::{self, Letter};
use geowb::{GeoError, Result};

type P2 = [f64; 2];

#[derive(Debug, Clone, PartialEq)]
pub struct FoldedCurve {
    pub slope: (i64, i64),
    pub length: f64,
    /// Chord pieces inside the polygon, Klein coordinates.
    pub segments: Vec<[P2; 2]>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct TorusPlot {
    /// Vertices in Klein coordinates, counterclockwise.
    pub polygon: Vec<P2>,
    pub curves: Vec<FoldedCurve>,
}

/// True when `p` is inside the convex counterclockwise `polygon` up to `eps`.
pub fn inside(polygon: &[P2], p: P2, eps: f64) -> bool {
    let n = polygon.len();
    (0..n).all(|i| {
        let (a, b) = (polygon[i], polygon[(i + 1) % n]);
        let (ex, ey) = (b[0] - a[0], b[1] - a[1]);
        let len = ex.hypot(ey);
        (ex * (p[1] - a[1]) - ey * (p[0] - a[0])) / len >= -eps
    })
}

struct Domain {
    polygon: Vec<P2>,
}

fn klein(v: &Vec3) -> P2 {
    [v.x / v.t, v.y / v.t]
}

fn build_domain(x: &Isometry, y: &Isometry) -> Result<Domain> {
    let k = (*x * *y * x.inverse() * y.inverse()).renormalized();
    let conj = [Isometry::IDENTITY, y.inverse(), (x.inverse() * y.inverse()).renormalized(), x.inverse()];
    let mut polygon = Vec::new();
    if k.kind() == Kind::Parabolic {
        let v0 = geom::parabolic_null_vector(&k);
        for g in &conj {
            polygon.push(klein(&geom::act(g, &v0)));
        }
    } else {
        let axis0 = geom::axis(&k).ok_or_else(|| GeoError::Domain("commutator is not hyperbolic".into()))?;
        let axes: Vec<Vec3> = conj.iter().map(|g| geom::act(g, &axis0)).collect();
        for i in 0..4 {
            let j = (i + 1) % 4;
            let side = geom::common_perpendicular(&axes[i], &axes[j])
                .ok_or_else(|| GeoError::Domain("adjacent boundary lifts meet".into()))?;
            for ax in [axes[i], axes[j]] {
                let c = geom::line_intersection(&side, &ax)
                    .ok_or_else(|| GeoError::Domain("degenerate side".into()))?;
                polygon.push(klein(&c.to_point()));
            }
        }
    }
    if signed_area(&polygon) < 0.0 {
        polygon.reverse();
    }
    Ok(Domain { polygon })
}

fn signed_area(p: &[P2]) -> f64 {
    let n = p.len();
    (0..n).map(|i| p[i][0] * p[(i + 1) % n][1] - p[(i + 1) % n][0] * p[i][1]).sum::<f64>() / 2.0
}

// parameter interval of the chord a + s (b - a) inside the polygon
fn clip(polygon: &[P2], a: P2, b: P2) -> Option<(f64, f64)> {
    let n = polygon.len();
    let (mut lo, mut hi) = (f64::NEG_INFINITY, f64::INFINITY);
    let d = [b[0] - a[0], b[1] - a[1]];
    for i in 0..n {
        let (p, q) = (polygon[i], polygon[(i + 1) % n]);
        let inward = [-(q[1] - p[1]), q[0] - p[0]];
        let num = inward[0] * (a[0] - p[0]) + inward[1] * (a[1] - p[1]);
        let den = inward[0] * d[0] + inward[1] * d[1];
        if den.abs() < 1e-300 {
            if num < 0.0 {
                return None;
            }
            continue;
        }
        let s = -num / den;
        if den > 0.0 {
            lo = lo.max(s);
        } else {
            hi = hi.min(s);
        }
    }
    (lo < hi).then_some((lo, hi))
}

fn at(a: P2, b: P2, s: f64) -> P2 {
    [a[0] + s * (b[0] - a[0]), a[1] + s * (b[1] - a[1])]
}

// Crossing a side of the domain applies one of the marking generators, so
// the sides a geodesic crosses spell its cyclically reduced word in them and
// each cyclic rotation of that word has its axis through the domain. Every
// chord comes straight from a short product instead of being pushed from
// tile to tile, which would amplify rounding like e^length.
fn fold(dom: &Domain, gens: &[Isometry; 2], cyclic: &[Letter]) -> Result<Vec<[P2; 2]>> {
    let mut segments = Vec::with_capacity(cyclic.len());
    for k in 0..cyclic.len() {
        let g = hyptrig::product(word::rotate(cyclic, k).iter().map(|&l| letter(gens, l)).collect::<Vec<_>>().iter());
        let (e1, e2) =
            geom::fixed_null_vectors(&g).ok_or_else(|| GeoError::Domain("curve is not hyperbolic".into()))?;
        let (a, b) = (klein(&e1), klein(&e2));
        let (lo, hi) = clip(&dom.polygon, a, b).ok_or_else(|| GeoError::Domain("chord misses the polygon".into()))?;
        segments.push([at(a, b, lo.max(0.0)), at(a, b, hi.min(1.0))]);
    }
    Ok(segments)
}

fn letter(gens: &[Isometry; 2], l: Letter) -> Isometry {
    let g = gens[(l.unsigned_abs() - 1) as usize];
    if l > 0 {
        g
    } else {
        g.inverse()
    }
}

/// Simple geodesics within `slope_bound - 1` Vieta moves of the sink (none
/// for a bound of 0), folded into the polygon.
pub fn fold_simple_geodesics(t: &OneHoledTorus, slope_bound: usize) -> Result<TorusPlot> {
    let ([x, y], words, core) = embedded_marking(&t.a, &t.b)?;
    let in_marking =
        word::invert_basis(&words).ok_or_else(|| GeoError::Domain("marking is not a basis".into()))?;
    let z = geom::to_upper(&core.base);
    let s = z.im.sqrt();
    let to_base = Isometry { a: s, b: z.re / s, c: 0.0, d: 1.0 / s };
    let back = to_base.inverse();
    let frame = |g: &Isometry| g.conjugate_by(&back).renormalized();
    let gens = [frame(&x), frame(&y)];
    let dom = build_domain(&gens[0], &gens[1])?;

    let mut curves = Vec::new();
    if slope_bound > 0 {
        for e in onetorus::near_sink(&TraceTriple::from_torus(t), slope_bound - 1)? {
            let cyclic = word::cyclic_reduce(&word::substitute(&e.slope.word(), &in_marking));
            curves.push(FoldedCurve {
                slope: (e.slope.p, e.slope.q),
                length: e.length,
                segments: fold(&dom, &gens, &cyclic)?,
            });
        }
    }
    Ok(TorusPlot { polygon: dom.polygon, curves })
}

const SIZE: f64 = 800.0;
const RADIUS: f64 = 380.0;
const PALETTE: [&str; 6] = ["#1b6ca8", "#c0392b", "#27ae60", "#8e44ad", "#d35400", "#16a085"];

fn screen(k: P2) -> (f64, f64) {
    let r2 = (k[0] * k[0] + k[1] * k[1]).min(1.0);
    let f = 1.0 / (1.0 + (1.0 - r2).sqrt());
    (SIZE / 2.0 + RADIUS * k[0] * f, SIZE / 2.0 - RADIUS * k[1] * f)
}

fn polyline(a: P2, b: P2, samples: usize) -> String {
    (0..=samples)
        .map(|i| {
            let (x, y) = screen(at(a, b, i as f64 / samples as f64));
            format!("{x:.3},{y:.3}")
        })
        .collect::<Vec<_>>()
        .join(" ")
}

impl TorusPlot {
    /// SVG document; `resolution` points per drawn chord. `header` goes into
    /// a leading comment.
    pub fn to_svg(&self, resolution: usize, header: &str) -> String {
        let samples = resolution.max(1);
        let mut s = String::new();
        writeln!(s, r#"<?xml version="1.0" encoding="UTF-8"?>"#).unwrap();
        writeln!(s, "<!--\n{}\n-->", header.replace("--", "- -")).unwrap();
        writeln!(
            s,
            r#"<svg xmlns="http://www.w3.org/2000/svg" width="{SIZE}" height="{SIZE}" viewBox="0 0 {SIZE} {SIZE}">"#
        )
        .unwrap();
        let c = SIZE / 2.0;
        writeln!(s, r##"<circle cx="{c}" cy="{c}" r="{RADIUS}" fill="none" stroke="#999" stroke-width="1"/>"##).unwrap();
        let n = self.polygon.len();
        let edges: Vec<String> =
            (0..n).map(|i| polyline(self.polygon[i], self.polygon[(i + 1) % n], samples)).collect();
        writeln!(
            s,
            r##"<polyline class="domain" fill="none" stroke="#333" stroke-width="1.5" points="{}"/>"##,
            edges.join(" ")
        )
        .unwrap();
        for (i, curve) in self.curves.iter().enumerate() {
            writeln!(
                s,
                r#"<g class="curve" data-slope="{}/{}" data-length="{:?}" stroke="{}" stroke-width="1.2" fill="none">"#,
                curve.slope.0,
                curve.slope.1,
                curve.length,
                PALETTE[i % PALETTE.len()]
            )
            .unwrap();
            for seg in &curve.segments {
                writeln!(s, r#"  <polyline points="{}"/>"#, polyline(seg[0], seg[1], samples)).unwrap();
            }
            writeln!(s, "</g>").unwrap();
        }
        s.push_str("</svg>\n");
        s
    }
}
