//! Synthesis and verification of doubly geometric composite pulse sequences
//! for single-qubit gates.
//!
//! A target rotation e^{iγ_g n̂·σ⃗} is realized as a composite of
//! piecewise-constant-phase drive segments in which the middle π rotation is
//! replaced by a "level-n" identity with tunable phase offsets ξ. Choosing ξ
//! so that the first-order (and, at level 5, second-order) error operators of
//! both the Rabi and detuning channels vanish yields gates whose infidelity
//! scales as the fourth or sixth power of the error amplitude.
//!
//! The crate is organized along that pipeline:
//!
//! * [`su2`] — exact 2×2 unitary algebra, Pauli decomposition, fidelity;
//! * [`pulse`] — drive waveforms, propagators, Bloch-path extraction;
//! * [`scheme`] — gate targets and sequence construction (geometric level-n
//!   and a dynamical Euler baseline);
//! * [`error_geometry`] — error curves, error distances, Magnus terms;
//! * [`closure`] — closure conditions and the multistart ξ solver;
//! * [`robustness`] — perturbed-gate simulation, sweep fits, D-matrix,
//!   filter functions.

pub mod closure;
pub mod error_geometry;
pub mod pulse;
pub mod quad;
pub mod robustness;
pub mod scheme;
pub mod su2;

pub use closure::{residuals_level3, solve_xi, ResidualVector, SolveOptions, XiSolution};
pub use error_geometry::{
    error_curve_direct, error_curve_path, magnus_terms, ErrorChannel, ErrorCurve, MagnusTerms,
};
pub use pulse::{
    bloch_path, dressed_path, propagate, BlochPath, GridSpec, PulseSequence, PulseShape, Segment,
};
pub use robustness::{
    d_matrix, filter_function, gate_infidelity, sweep_and_fit, verify_correspondence, DMatrix,
    FilterFunction, SweepFit,
};
pub use scheme::{build_dynamical_euler, build_geometric, target_unitary, GateTarget, LevelSpec};
pub use su2::{expm_su2, pauli_decompose, trace_fidelity, Mat2, NumericSettings, PauliVec};

/// Errors produced by the library.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("axis must have unit norm, got {norm}")]
    NonUnitAxis { norm: f64 },
    #[error("matrix is not Hermitian (defect {defect:.3e})")]
    NotHermitian { defect: f64 },
    #[error("matrix is not unitary (defect {defect:.3e})")]
    NotUnitary { defect: f64 },
    #[error("pulse sequence has no segments")]
    EmptySequence,
    #[error("propagator list must start at the identity")]
    PathStartNotIdentity,
    #[error("sample grid does not match the sequence layout: {0}")]
    GridMismatch(String),
    #[error("fit undefined: all infidelities are below the numerical floor")]
    FitUndefined,
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}
