//! Closed-form SNR-maximizing design of beyond-diagonal reconfigurable
//! intelligent surfaces (BD-RIS).
//!
//! A lossless reciprocal BD-RIS is a unitary symmetric matrix `Θ`. For a
//! single-antenna link the optimal `Θ` comes from the Takagi factorization of
//! `A = u_R u_Tᴴ + (u_R u_Tᴴ)ᵀ` as `Θ = Q Qᵀ`, and reaches the unconstrained
//! maximum `‖h_R‖²‖h_T‖²`. The same construction handles group-connected
//! surfaces, multi-antenna ends, and the multiple-access sum rate.
//!
//! Modules:
//! - [`linalg`]: dense complex matrices, Jacobi SVD, unitarity/symmetry checks
//! - [`takagi`]: `A = Q Σ Qᵀ` from an SVD, noise-subspace rotation
//! - [`solvers`]: Max-SNR designs, diagonal baselines, MAC sum rate
//! - [`channels`]: geometry, path loss, Rayleigh/Rician/LoS fading
//! - [`harness`]: Monte Carlo sweeps, spec files, CSV output

pub mod channels;
pub mod error;
pub mod harness;
pub mod linalg;
pub mod solvers;
pub mod takagi;

pub use error::{Error, Result};
pub use linalg::{ComplexMatrix, ComplexVector, SvdFactorization, C64};
pub use solvers::{Architecture, LinkChannels, RisConfiguration, SolveOutcome};
pub use takagi::{TakagiFactorization, takagi_factorize};
