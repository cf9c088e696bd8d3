//! Quantum formalism on the Euclidean plane.
//!
//! Real 2×2 density matrices `ρ_{r,φ}` form POVM families on the circle.  This
//! crate implements the machinery built on top of them:
//!
//! - [`plane_states`]: the state space itself — spectral data, entropy,
//!   rotations, the Jordan algebra of real symmetric matrices, and the Stokes
//!   parametrization of linear polarization.
//! - [`circle_quantizer`]: the integral quantization map `f ↦ A_f` for
//!   trigonometric polynomials on the circle, with lower/upper symbols and
//!   covariance checks.
//! - [`toeplitz_naimark`]: the realization of `A_f` as a Toeplitz compression
//!   of the multiplication operator on `L²(S¹, dφ/π)`, and numerical
//!   verification of the Naimark dilation on arcs.
//! - [`povm_compat`]: effects `A(α,φ,r)`, dichotomic POVMs, sequential
//!   measurements, and an exact planar-geometry decision procedure for joint
//!   measurability.
//! - [`polarizer_sim`]: the pointer⊗beam measurement dynamics of a polarizer,
//!   recovering the Malus laws.
//! - [`son_quantizer`]: the SO(n) generalization — Euler angles, Haar
//!   quadrature, and the covariant quantization map at small n.
//!
//! Everything is pure and immutable; all types are `Send + Sync` and safe to
//! use from any number of threads.  Quadrature sums run in a fixed
//! left-to-right order so results are bit-reproducible.

pub mod acceptance;
pub mod circle_quantizer;
pub mod error;
pub mod fourier;
pub mod linalg;
pub mod plane_states;
pub mod polarizer_sim;
pub mod povm_compat;
pub mod son_quantizer;
pub mod toeplitz_naimark;

pub use error::{Error, Result};
pub use fourier::FourierFunction;
pub use linalg::{Mat2, Mat4};
pub use plane_states::{PolarState, PureState, StokesVector, SymMat2};
