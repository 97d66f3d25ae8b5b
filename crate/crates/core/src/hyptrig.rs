//! Scalar hyperbolic trigonometry and the SL(2,R) isometry algebra.
//!
//! Isometries act on the upper half-plane by Möbius maps. Lengths are plain
//! hyperbolic lengths; a length of exactly zero stands for a cusp and every
//! formula below takes the analytic limit there.

use std::fmt;
use std::ops::Mul;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{GeoError, Result};
use crate::tol;

/// A nonnegative hyperbolic length. Zero means "cusp".
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Serialize, Deserialize)]
pub struct Length(f64);

impl Length {
    pub const CUSP: Length = Length(0.0);

    pub fn new(value: f64) -> Result<Self> {
        if value.is_finite() && value >= 0.0 {
            Ok(Length(value))
        } else {
            Err(GeoError::Domain(format!("length must be finite and >= 0, got {value}")))
        }
    }

    pub fn get(self) -> f64 {
        self.0
    }

    pub fn is_cusp(self) -> bool {
        self.0 == 0.0
    }
}

impl fmt::Display for Length {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl From<Length> for f64 {
    fn from(l: Length) -> f64 {
        l.0
    }
}

fn positive(name: &str, v: f64) -> Result<f64> {
    if v.is_finite() && v > 0.0 {
        Ok(v)
    } else {
        Err(GeoError::Domain(format!("{name} must be > 0, got {v}")))
    }
}

fn nonnegative(name: &str, v: f64) -> Result<f64> {
    if v.is_finite() && v >= 0.0 {
        Ok(v)
    } else {
        Err(GeoError::Domain(format!("{name} must be >= 0, got {v}")))
    }
}

/// Width of the embedded collar around a simple closed geodesic of length `l`:
/// `arcsinh(1 / sinh(l/2))`.
pub fn collar_width(l: f64) -> Result<f64> {
    let l = positive("collar length", l)?;
    Ok((1.0 / (l / 2.0).sinh()).asinh())
}

/// Length of the perpendicular arc from `delta` to itself in the pants
/// `(delta, delta, gamma)`, from the right-angled hexagon formula
/// `cosh c = (cosh(lγ/2) + cosh²(lδ/2)) / sinh²(lδ/2)`.
pub fn hexagon_perp(l_gamma: f64, l_delta: f64) -> Result<f64> {
    let lg = nonnegative("l_gamma", l_gamma)?;
    let ld = positive("l_delta", l_delta)?;
    let ch = (ld / 2.0).cosh();
    let sh = (ld / 2.0).sinh();
    let cosh_c = ((lg / 2.0).cosh() + ch * ch) / (sh * sh);
    Ok(cosh_c.acosh())
}

/// Same arc as [`hexagon_perp`] through the pentagon half-angle formula
/// `cosh²(c/2) = (cosh²(lγ/4) + cosh²(lδ/2) − 1) / (cosh²(lδ/2) − 1)`.
pub fn pentagon_perp(l_gamma: f64, l_delta: f64) -> Result<f64> {
    let lg = nonnegative("l_gamma", l_gamma)?;
    let ld = positive("l_delta", l_delta)?;
    let cg = (lg / 4.0).cosh();
    let cd = (ld / 2.0).cosh();
    let cosh2_half = (cg * cg + cd * cd - 1.0) / (cd * cd - 1.0);
    Ok(2.0 * cosh2_half.sqrt().acosh())
}

/// Length of the half-twist dual curve from the trirectangle relation
/// `cosh(lδ'/2) = cosh(c/2) · cosh(lδ/4)`.
pub fn quad_opposite(c: f64, l_delta: f64) -> Result<f64> {
    let c = positive("c", c)?;
    let ld = positive("l_delta", l_delta)?;
    Ok(2.0 * ((c / 2.0).cosh() * (ld / 4.0).cosh()).acosh())
}

/// Translation length of an isometry with trace `t`. Parabolic traces give 0.
pub fn trace_to_length(t: f64) -> Result<f64> {
    let t = t.abs();
    if !t.is_finite() {
        return Err(GeoError::Domain(format!("trace must be finite, got {t}")));
    }
    if (t - 2.0).abs() <= tol::TRACE {
        Ok(0.0)
    } else if t > 2.0 {
        Ok(2.0 * (t / 2.0).acosh())
    } else {
        Err(GeoError::Elliptic { trace: t })
    }
}

/// Inverse of [`trace_to_length`] on the positive branch.
pub fn length_to_trace(l: f64) -> f64 {
    2.0 * (l / 2.0).cosh()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Kind {
    Elliptic,
    Parabolic,
    Hyperbolic,
}

/// An orientation-preserving isometry of the hyperbolic plane: a real 2×2
/// matrix with determinant 1 acting by Möbius transformation.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Isometry {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub d: f64,
}

impl Isometry {
    pub const IDENTITY: Isometry = Isometry { a: 1.0, b: 0.0, c: 0.0, d: 1.0 };

    /// Build from entries, rescaling by `1/sqrt(det)`. Fails when det <= 0.
    pub fn new(a: f64, b: f64, c: f64, d: f64) -> Result<Self> {
        let det = a * d - b * c;
        if !(det.is_finite() && det > 0.0) {
            return Err(GeoError::Domain(format!("matrix has nonpositive determinant {det}")));
        }
        let s = det.sqrt().recip();
        Ok(Isometry { a: a * s, b: b * s, c: c * s, d: d * s })
    }

    /// Translation by `l` along the imaginary axis, towards infinity.
    pub fn translation(l: f64) -> Self {
        let e = (l / 2.0).exp();
        Isometry { a: e, b: 0.0, c: 0.0, d: 1.0 / e }
    }

    /// Counter-clockwise rotation by `theta` about `i`.
    pub fn rotation(theta: f64) -> Self {
        let (s, c) = (theta / 2.0).sin_cos();
        Isometry { a: c, b: s, c: -s, d: c }
    }

    /// `ad - bc` with Kahan's fused multiply-add scheme; long words have
    /// entries far above 1 and the naive difference cancels.
    pub fn det(&self) -> f64 {
        let bc = self.b * self.c;
        let err = (-self.b).mul_add(self.c, bc);
        self.a.mul_add(self.d, -bc) + err
    }

    pub fn trace(&self) -> f64 {
        self.a + self.d
    }

    pub fn inverse(&self) -> Self {
        Isometry { a: self.d, b: -self.b, c: -self.c, d: self.a }
    }

    pub fn neg(&self) -> Self {
        Isometry { a: -self.a, b: -self.b, c: -self.c, d: -self.d }
    }

    /// Divide by sqrt(det) to pull the determinant back to 1. A deviation
    /// within the rounding noise of `ad` and `bc` is left alone: for long
    /// words that noise dwarfs any real drift and rescaling would corrupt
    /// the trace.
    pub fn renormalized(&self) -> Self {
        let det = self.det();
        let noise = 64.0 * f64::EPSILON * ((self.a * self.d).abs() + (self.b * self.c).abs());
        if (det - 1.0).abs() <= noise {
            return *self;
        }
        let s = det.abs().sqrt().recip();
        Isometry { a: self.a * s, b: self.b * s, c: self.c * s, d: self.d * s }
    }

    /// `by * self * by^-1`.
    pub fn conjugate_by(&self, by: &Isometry) -> Self {
        *by * *self * by.inverse()
    }

    pub fn kind(&self) -> Kind {
        let t = self.trace().abs();
        if (t - 2.0).abs() <= tol::TRACE {
            Kind::Parabolic
        } else if t > 2.0 {
            Kind::Hyperbolic
        } else {
            Kind::Elliptic
        }
    }

    pub fn translation_length(&self) -> Result<f64> {
        trace_to_length(self.trace())
    }

    /// `cosh d(i, g·i)`.
    pub fn cosh_displacement_at_i(&self) -> f64 {
        0.5 * (self.a * self.a + self.b * self.b + self.c * self.c + self.d * self.d)
    }

    pub fn apply(&self, z: Complex64) -> Complex64 {
        (z * self.a + self.b) / (z * self.c + self.d)
    }

    /// Image of a boundary point, `None` standing for infinity.
    pub fn apply_boundary(&self, x: Option<f64>) -> Option<f64> {
        match x {
            None => {
                if self.c.abs() < 1e-300 {
                    None
                } else {
                    Some(self.a / self.c)
                }
            }
            Some(x) => {
                let den = self.c * x + self.d;
                if den.abs() < 1e-300 {
                    None
                } else {
                    Some((self.a * x + self.b) / den)
                }
            }
        }
    }

    /// Operator-norm distance from ±identity.
    pub fn distance_from_pm_identity(&self) -> f64 {
        let plus = op_norm(self.a - 1.0, self.b, self.c, self.d - 1.0);
        let minus = op_norm(self.a + 1.0, self.b, self.c, self.d + 1.0);
        plus.min(minus)
    }

    /// Max-abs entry distance to `other` modulo sign.
    pub fn projective_distance(&self, other: &Isometry) -> f64 {
        let p = (self.a - other.a)
            .abs()
            .max((self.b - other.b).abs())
            .max((self.c - other.c).abs())
            .max((self.d - other.d).abs());
        let m = (self.a + other.a)
            .abs()
            .max((self.b + other.b).abs())
            .max((self.c + other.c).abs())
            .max((self.d + other.d).abs());
        p.min(m)
    }
}

fn op_norm(a: f64, b: f64, c: f64, d: f64) -> f64 {
    // largest singular value of [[a, b], [c, d]]
    let s = a * a + b * b + c * c + d * d;
    let det = a * d - b * c;
    let disc = (s * s - 4.0 * det * det).max(0.0).sqrt();
    ((s + disc) / 2.0).sqrt()
}

impl Mul for Isometry {
    type Output = Isometry;

    fn mul(self, o: Isometry) -> Isometry {
        Isometry {
            a: self.a * o.a + self.b * o.c,
            b: self.a * o.b + self.b * o.d,
            c: self.c * o.a + self.d * o.c,
            d: self.c * o.b + self.d * o.d,
        }
    }
}

/// Ordered product, renormalized every [`tol::RENORM_EVERY`] factors.
pub fn product<'a, I>(factors: I) -> Isometry
where
    I: IntoIterator<Item = &'a Isometry>,
{
    let mut acc = Isometry::IDENTITY;
    for (k, f) in factors.into_iter().enumerate() {
        acc = acc * *f;
        if (k + 1) % tol::RENORM_EVERY == 0 {
            acc = acc.renormalized();
        }
    }
    acc.renormalized()
}
