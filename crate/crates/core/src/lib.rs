//! Geodesic spectra, trace trees and systole maximization for hyperbolic
//! surfaces given in Fenchel–Nielsen coordinates.

pub mod error;
pub mod extremal;
pub mod fenchel_nielsen;
pub mod geom;
pub mod hyptrig;
pub mod markov;
pub mod onetorus;
pub mod spectra;
pub mod tol;
pub mod word;

pub use error::{GeoError, Result};
