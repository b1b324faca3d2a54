//! Crate-wide error type.

use thiserror::Error;

/// Errors reported by tensor construction and the decomposition pipeline.
#[derive(Debug, Clone, Error)]
pub enum Error {
    /// Result of an outer product or contraction would exceed order 4.
    #[error("tensor order overflow: operation would produce order {0} (max 4)")]
    OrderOverflow(usize),

    /// An operand does not have enough indices for the requested contraction.
    #[error("tensor order underflow: operand of order {order} lacks {needed} contraction indices")]
    OrderUnderflow { order: usize, needed: usize },

    /// Trace slots out of range or not distinct.
    #[error("invalid trace slots ({0}, {1})")]
    InvalidSlots(usize, usize),

    /// Rotation matrix fails Q^T Q = I.
    #[error("matrix is not orthogonal: |Q^T Q - I| = {residual:.3e} exceeds {tol:.3e}")]
    NotOrthogonal { residual: f64, tol: f64 },

    /// A symmetric second-order tensor was required.
    #[error("tensor is not symmetric: residual {residual:.3e} exceeds {tol:.3e}")]
    NotSymmetric { residual: f64, tol: f64 },

    /// Total symmetry under all index permutations was required.
    #[error("tensor is not totally symmetric: residual {residual:.3e} exceeds {tol:.3e}")]
    NotTotallySymmetric { residual: f64, tol: f64 },

    /// A deviator (totally symmetric, traceless) was required.
    #[error("tensor is not a deviator: {what} residual {residual:.3e} exceeds {tol:.3e}")]
    NotDeviator {
        what: &'static str,
        residual: f64,
        tol: f64,
    },

    /// Minor/major stiffness symmetries violated beyond repairable tolerance.
    #[error(
        "stiffness symmetry violation at C[{i}{j}{k}{l}]: residual {residual:.3e} exceeds {tol:.3e}"
    )]
    SymmetryViolation {
        i: usize,
        j: usize,
        k: usize,
        l: usize,
        residual: f64,
        tol: f64,
    },

    /// Eigenvalue gaps too small for the generic closed-form multipole path.
    #[error("degenerate spectrum: eigenvalue gap {gap:.3e} below {tol:.3e}")]
    DegenerateSpectrum { gap: f64, tol: f64 },

    /// Multipole extraction supports deviators of order 2 and 4 only.
    #[error("unsupported deviator order {0} for multipole extraction (must be 2 or 4)")]
    UnsupportedOrder(usize),

    /// All polynomial coefficients vanish (zero deviator).
    #[error("zero polynomial: multipole directions are undefined (amplitude 0)")]
    ZeroPolynomial,

    /// Root finder failed to converge.
    #[error("root finder did not converge: {0}")]
    NoConvergence(String),

    /// No consistent conjugate pairing of the root set exists.
    #[error("root pairing failure: no antipodal matching within tolerance {0:.3e}")]
    PairingFailure(f64),

    /// Multipole reconstruction missed the source deviator.
    #[error("multipole reconstruction failure: residual {residual:.3e} exceeds {tol:.3e}")]
    ReconstructionFailure { residual: f64, tol: f64 },

    /// Fourth-order tensor is not in the image of the symmetric-to-asymmetric map.
    #[error(
        "tensor is not in the image of phi: roundtrip residual {residual:.3e} exceeds {tol:.3e}"
    )]
    NotInImage { residual: f64, tol: f64 },

    /// 1/E(d) came out non-positive; reported, not masked.
    #[error("non-positive compliance 1/E = {0:.6e} in the requested direction")]
    NonPositiveCompliance(f64),

    /// Two multipole configurations fit within tolerance.
    #[error("ambiguous multipole configuration: {0}")]
    ConfigurationAmbiguous(String),

    /// Malformed input file.
    #[error("parse error at line {line}: {message}")]
    ParseError { line: usize, message: String },

    /// Wrong number of values for the declared format.
    #[error("dimension error: {0}")]
    DimensionError(String),

    /// I/O failure while reading input.
    #[error("io error: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;
