use thiserror::Error;

/// Errors shared across the toolkit.
#[derive(Debug, Error)]
pub enum Error {
    /// Point lies outside the domain a function or formula requires.
    #[error("domain violation: {0}")]
    Domain(String),

    /// Evaluation hit a zero sphere of a symmetrization.
    #[error("singular evaluation on the sphere at ({alpha}, {beta})")]
    Singularity { alpha: f64, beta: f64 },

    /// The representation kernel R(J) diverges as J approaches the base axis.
    #[error("R(J) has a pole at J = I (angle {angle:.3e} below threshold)")]
    Pole { angle: f64 },

    /// Representation coefficients need two distinct directions.
    #[error("directions J and H coincide (angle {angle:.3e})")]
    Diagonal { angle: f64 },

    /// Zero polynomial where a nonzero one is required.
    #[error("degenerate input: {0}")]
    Degenerate(String),

    /// Requested factor extraction on a sphere carrying no zero.
    #[error("no zero on the sphere at ({alpha}, {beta})")]
    NoZero { alpha: f64, beta: f64 },

    /// Harmonic-conjugate reconstruction needs a harmonic input.
    #[error("input polynomial is not harmonic (laplacian residual {residual:.3e})")]
    NotHarmonic { residual: f64 },

    /// Input is harmonic but not the real part of any slice-preserving
    /// regular polynomial (odd dependence on the imaginary coordinate).
    #[error("no slice-preserving regular polynomial has this real part (residual {residual:.3e})")]
    NotRepresentable { residual: f64 },

    /// Zero or pole too close to the integration boundary.
    #[error("zero or pole at distance {distance:.3e} from the sphere of radius {rho}")]
    BoundaryZero { rho: f64, distance: f64 },

    /// A formula's stated precondition failed.
    #[error("precondition violated: {0}")]
    Precondition(String),
}

pub type Result<T> = std::result::Result<T, Error>;
