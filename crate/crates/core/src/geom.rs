//! Points, geodesic lines and isometries in the hyperboloid model.
//!
//! Coordinates are `(t, x, y)` with the form `B(u, v) = t t' - x x' - y y'`.
//! Points satisfy `B(p, p) = 1`, `t > 0`. A geodesic is stored as a spacelike
//! normal `n` with `B(n, n) = -1`; the line is `{p : B(p, n) = 0}` and the
//! positive side is `B(p, n) > 0`. The upper half-plane point `z = u + iv`
//! corresponds to `((|z|² + 1)/2v, (|z|² − 1)/2v, u/v)`, so `i` is `(1, 0, 0)`.

use num_complex::Complex64;

use crate::hyptrig::Isometry;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Vec3 {
    pub t: f64,
    pub x: f64,
    pub y: f64,
}

impl Vec3 {
    pub const ORIGIN: Vec3 = Vec3 { t: 1.0, x: 0.0, y: 0.0 };

    pub fn new(t: f64, x: f64, y: f64) -> Self {
        Vec3 { t, x, y }
    }

    pub fn mink(&self, o: &Vec3) -> f64 {
        self.t * o.t - self.x * o.x - self.y * o.y
    }

    pub fn scale(&self, s: f64) -> Vec3 {
        Vec3 { t: self.t * s, x: self.x * s, y: self.y * s }
    }

    pub fn add(&self, o: &Vec3) -> Vec3 {
        Vec3 { t: self.t + o.t, x: self.x + o.x, y: self.y + o.y }
    }

    pub fn sub(&self, o: &Vec3) -> Vec3 {
        Vec3 { t: self.t - o.t, x: self.x - o.x, y: self.y - o.y }
    }

    /// `J (u × v)`: Minkowski-orthogonal to both arguments.
    pub fn mink_cross(&self, o: &Vec3) -> Vec3 {
        // Euclidean cross product in (t, x, y) order, then J = diag(1, -1, -1)
        let c0 = self.x * o.y - self.y * o.x;
        let c1 = self.y * o.t - self.t * o.y;
        let c2 = self.t * o.x - self.x * o.t;
        Vec3 { t: c0, x: -c1, y: -c2 }
    }

    /// Rescale a timelike vector onto the upper sheet.
    pub fn to_point(&self) -> Vec3 {
        let q = self.mink(self);
        let s = q.abs().sqrt().recip();
        let s = if self.t < 0.0 { -s } else { s };
        self.scale(s)
    }

    /// Rescale a spacelike vector to `B(n, n) = -1`.
    pub fn to_line(&self) -> Vec3 {
        let q = self.mink(self);
        self.scale((-q).abs().sqrt().recip())
    }

    /// Klein disk coordinates of a point or null vector.
    pub fn klein(&self) -> (f64, f64) {
        (self.x / self.t, self.y / self.t)
    }

    /// Poincaré disk coordinates of a point.
    pub fn poincare(&self) -> (f64, f64) {
        (self.x / (1.0 + self.t), self.y / (1.0 + self.t))
    }

    pub fn from_klein(kx: f64, ky: f64) -> Vec3 {
        Vec3::new(1.0, kx, ky).to_point()
    }
}

/// Hyperbolic distance between two points.
pub fn distance(p: &Vec3, q: &Vec3) -> f64 {
    p.mink(q).max(1.0).acosh()
}

pub fn from_upper(z: Complex64) -> Vec3 {
    let r2 = z.norm_sqr();
    Vec3::new((r2 + 1.0) / (2.0 * z.im), (r2 - 1.0) / (2.0 * z.im), z.re / z.im)
}

pub fn to_upper(p: &Vec3) -> Complex64 {
    // t - x = 1/v and y = u/v
    let v = 1.0 / (p.t - p.x);
    Complex64::new(p.y * v, v)
}

/// Null vector of a boundary point of the upper half-plane (`None` = ∞).
pub fn ideal_point(xi: Option<f64>) -> Vec3 {
    match xi {
        None => Vec3::new(1.0, 1.0, 0.0),
        Some(s) => {
            let n = 1.0 + s * s;
            Vec3::new(1.0, (s * s - 1.0) / n, 2.0 * s / n)
        }
    }
}

/// Unit normal of the geodesic through two points (points or null vectors).
pub fn line_through(u: &Vec3, v: &Vec3) -> Vec3 {
    u.mink_cross(v).to_line()
}

/// Reflect `p` in the line with unit normal `n`.
pub fn reflect(p: &Vec3, n: &Vec3) -> Vec3 {
    p.add(&n.scale(2.0 * p.mink(n)))
}

/// Signed `sinh` of the distance from point `p` to line `n`.
pub fn sinh_dist_to_line(p: &Vec3, n: &Vec3) -> f64 {
    p.mink(n)
}

/// Distance between two lines: 0 when they meet or are asymptotic.
pub fn line_distance(n1: &Vec3, n2: &Vec3) -> f64 {
    let c = n1.mink(n2).abs();
    if c > 1.0 {
        c.acosh()
    } else {
        0.0
    }
}

/// Intersection point of two crossing lines.
pub fn line_intersection(n1: &Vec3, n2: &Vec3) -> Option<Vec3> {
    let v = n1.mink_cross(n2);
    if v.mink(&v) <= 1e-300 {
        None
    } else {
        Some(v.to_point())
    }
}

/// Common perpendicular of two ultraparallel lines.
pub fn common_perpendicular(n1: &Vec3, n2: &Vec3) -> Option<Vec3> {
    if n1.mink(n2).abs() <= 1.0 {
        return None;
    }
    // perpendicular lines have orthogonal normals
    Some(n1.mink_cross(n2).to_line())
}

/// Foot of the perpendicular from `p` to the line `n`.
pub fn foot(p: &Vec3, n: &Vec3) -> Vec3 {
    p.add(&n.scale(p.mink(n))).to_point()
}

/// Point at arc length `s` from `p` along the unit tangent `dir`
/// (`B(dir, dir) = -1`, `B(dir, p) = 0`).
pub fn walk(p: &Vec3, dir: &Vec3, s: f64) -> Vec3 {
    p.scale(s.cosh()).add(&dir.scale(s.sinh()))
}

/// Unit tangent at `p` pointing towards `q`.
pub fn direction(p: &Vec3, q: &Vec3) -> Vec3 {
    let c = p.mink(q);
    let v = q.sub(&p.scale(c));
    let n = (-v.mink(&v)).max(0.0).sqrt();
    v.scale(1.0 / n)
}

/// SO(2,1) image of an SL(2,R) element acting on hyperboloid coordinates.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Lorentz(pub [[f64; 3]; 3]);

impl Lorentz {
    pub fn from_isometry(g: &Isometry) -> Self {
        // columns: images of the symmetric matrices I, diag(1,-1), [[0,1],[1,0]]
        let col = |s00: f64, s01: f64, s11: f64| {
            // g S g^T
            let m00 = g.a * (g.a * s00 + g.b * s01) + g.b * (g.a * s01 + g.b * s11);
            let m01 = g.a * (g.c * s00 + g.d * s01) + g.b * (g.c * s01 + g.d * s11);
            let m11 = g.c * (g.c * s00 + g.d * s01) + g.d * (g.c * s01 + g.d * s11);
            [(m00 + m11) / 2.0, (m00 - m11) / 2.0, m01]
        };
        let c0 = col(1.0, 0.0, 1.0);
        let c1 = col(1.0, 0.0, -1.0);
        let c2 = col(0.0, 1.0, 0.0);
        Lorentz([
            [c0[0], c1[0], c2[0]],
            [c0[1], c1[1], c2[1]],
            [c0[2], c1[2], c2[2]],
        ])
    }

    pub fn apply(&self, v: &Vec3) -> Vec3 {
        let m = &self.0;
        Vec3 {
            t: m[0][0] * v.t + m[0][1] * v.x + m[0][2] * v.y,
            x: m[1][0] * v.t + m[1][1] * v.x + m[1][2] * v.y,
            y: m[2][0] * v.t + m[2][1] * v.x + m[2][2] * v.y,
        }
    }
}

/// Apply an isometry to a hyperboloid vector (points, lines and null vectors
/// all transform linearly).
pub fn act(g: &Isometry, v: &Vec3) -> Vec3 {
    Lorentz::from_isometry(g).apply(v)
}

/// Boundary fixed points of a hyperbolic or parabolic element
/// (`None` = ∞). Returns `(repelling, attracting)` for hyperbolic elements.
pub fn fixed_points(g: &Isometry) -> (Option<f64>, Option<f64>) {
    let (a, b, c, d) = if g.trace() < 0.0 {
        (-g.a, -g.b, -g.c, -g.d)
    } else {
        (g.a, g.b, g.c, g.d)
    };
    let tr = a + d;
    let disc = (tr * tr - 4.0).max(0.0).sqrt();
    if c.abs() < 1e-300 {
        // upper triangular: fixes ∞ and b/(d-a)
        if (a - d).abs() < 1e-300 {
            return (None, None);
        }
        let other = Some(b / (d - a));
        // attracting fixed point has derivative < 1; at ∞ derivative is d/a
        return if a > d { (other, None) } else { (None, other) };
    }
    if tr * tr - 4.0 <= 1e-9 {
        // parabolic: the double root, free of the square-root error
        let x = (a - d) / (2.0 * c);
        return (Some(x), Some(x));
    }
    // roots of c x² + (d - a) x - b = 0; the attracting one has |c x + d| > 1
    let x1 = ((a - d) + disc) / (2.0 * c);
    let x2 = ((a - d) - disc) / (2.0 * c);
    if (c * x1 + d).abs() > (c * x2 + d).abs() {
        (Some(x2), Some(x1))
    } else {
        (Some(x1), Some(x2))
    }
}

/// Null vector of the boundary point with homogeneous coordinates
/// `(v1 : v2)`, i.e. `v1 / v2` in the upper half-plane.
pub fn ideal_homogeneous(v1: f64, v2: f64) -> Vec3 {
    let n = v1 * v1 + v2 * v2;
    Vec3::new(1.0, (v1 * v1 - v2 * v2) / n, 2.0 * v1 * v2 / n)
}

// eigenvector of g for the eigenvalue lambda, from the better conditioned row
fn eigen_null(g: &Isometry, lambda: f64) -> Vec3 {
    let (p1, p2) = (g.b, lambda - g.a);
    let (q1, q2) = (lambda - g.d, g.c);
    if p1.hypot(p2) >= q1.hypot(q2) {
        ideal_homogeneous(p1, p2)
    } else {
        ideal_homogeneous(q1, q2)
    }
}

/// Fixed null vectors `(repelling, attracting)` of a hyperbolic element,
/// computed from eigenvectors so that fixed points near ∞ stay accurate.
pub fn fixed_null_vectors(g: &Isometry) -> Option<(Vec3, Vec3)> {
    let tr = g.trace();
    if tr.abs() <= 2.0 + 1e-12 {
        return None;
    }
    let big = 0.5 * (tr + tr.signum() * (tr * tr - 4.0).sqrt());
    Some((eigen_null(g, 1.0 / big), eigen_null(g, big)))
}

/// Fixed null vector of a parabolic element.
pub fn parabolic_null_vector(g: &Isometry) -> Vec3 {
    eigen_null(g, g.trace().signum())
}

/// Unit normal of the axis of a hyperbolic element.
pub fn axis(g: &Isometry) -> Option<Vec3> {
    let (r, a) = fixed_null_vectors(g)?;
    Some(line_through(&r, &a))
}
