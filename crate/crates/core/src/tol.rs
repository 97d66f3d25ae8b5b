//! Named numerical tolerances shared by every module.

/// |trace| within this of 2 counts as parabolic.
pub const TRACE: f64 = 1e-10;

/// Agreement of geodesic lengths computed along different routes.
pub const LEN: f64 = 1e-9;

/// Determinant drift allowed after products and renormalization.
pub const DET: f64 = 1e-12;

/// Renormalize accumulated products by sqrt(det) after this many factors.
pub const RENORM_EVERY: usize = 32;

/// Relative tolerance for putting two lengths in the same multiplicity bucket.
pub const BUCKET_REL: f64 = 1e-9;

/// Curve lengths below this are accepted but flagged as thin.
pub const THIN_LENGTH: f64 = 1e-6;

/// Bucket width for `|a - b| <= BUCKET_REL * max(1, |a|)`.
pub fn same_bucket(a: f64, b: f64, rel: f64) -> bool {
    (a - b).abs() <= rel * a.abs().max(1.0)
}
