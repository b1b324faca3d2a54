//! Deviatoric decomposition and Maxwell multipoles for three-dimensional
//! tensors of order up to four.
//!
//! Any such tensor splits uniquely into deviators (totally symmetric,
//! traceless tensors), and every deviator of order q is an amplitude times
//! the symmetric traceless part of an outer product of q unit vectors (its
//! multipoles). This crate implements that pipeline end to end:
//!
//! - [`tensor`]: dense order-0..4 values, products, contractions, traces,
//!   symmetrization, rotation, and the symmetric traceless projection.
//! - [`spectral`]: symmetric 3x3 eigendecomposition and, through the Kelvin
//!   (Mandel) 6x6 mapping, eigentensors of stiffness-symmetric tensors.
//! - [`harmonic`]: the polynomial generated by a tensor and the harmonic
//!   (spherical-harmonic) decomposition of totally symmetric tensors.
//! - [`decomp2`]: second-order decomposition `T = d I + eps . dvec + D` and
//!   the closed-form relation between multipoles and eigenvectors.
//! - [`multipole`]: multipole extraction for deviators of order 2 and 4 via
//!   the complex root structure of an associated degree-2q polynomial.
//! - [`stiffness`]: the five-part decomposition {lambda, mu, D, Dhat, D4} of
//!   an elastic stiffness tensor, reconstruction, and directional Young's
//!   modulus.
//! - [`symmetry`]: mirror-plane sets per deviator and the eight-class
//!   anisotropy label of a stiffness tensor via their intersection.
//! - [`io`] / [`cli`]: tensor file formats and the `devitensor` command-line
//!   front end.
//!
//! See the `examples/` directory for one runnable walk-through per
//! capability (`cargo run --example classify_materials`, ...).
//!
//! All values are plain data with no interior mutability; every operation is
//! a pure function, so values can be shared freely across threads.

// index-coupled loops over small fixed ranges read better than iterator
// chains in multilinear code
#![allow(clippy::needless_range_loop)]

pub mod cli;
pub mod decomp2;
pub mod error;
pub mod harmonic;
pub mod io;
pub mod multipole;
pub mod samples;
pub mod spectral;
pub mod stiffness;
pub mod symmetry;
pub mod tensor;
pub mod vec3;

pub use error::{Error, Result};
pub use tensor::{DenseTensor, Deviator};

/// Default tolerances. All are relative to the Frobenius norm of the value
/// being tested unless stated otherwise; each can be overridden through the
/// `*_with_tol` function variants and the CLI `--tol-*` flags.
pub mod tol {
    /// Total-symmetry residual for deviator and input validation.
    pub const SYMMETRY: f64 = 1e-10;
    /// Per-trace residual for deviator validation.
    pub const TRACE: f64 = 1e-10;
    /// Orthogonality residual `|Q^T Q - I|` for rotations.
    pub const ORTHOGONALITY: f64 = 1e-10;
    /// Eigenvalue-gap threshold separating the degenerate multipole cases.
    pub const GAP: f64 = 1e-8;
    /// Angular tolerance (as chord length) for direction identity.
    pub const DIRECTION: f64 = 1e-6;
    /// Relative mirror residual for accepting a symmetry plane.
    pub const MIRROR: f64 = 1e-8;
    /// Conjugate-pairing tolerance for polynomial root sets.
    pub const ROOT_PAIRING: f64 = 1e-6;
    /// Multipole reconstruction tolerance for order-2 deviators.
    pub const RECONSTRUCT_2: f64 = 1e-8;
    /// Multipole reconstruction tolerance for order-4 deviators.
    pub const RECONSTRUCT_4: f64 = 1e-6;
    /// Stiffness input symmetry residual that is auto-symmetrized (beyond it,
    /// construction fails).
    pub const STIFFNESS_REPAIR: f64 = 1e-8;
}
