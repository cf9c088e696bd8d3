//! Pointer–beam measurement dynamics of a polarizer.
//!
//! The device couples an orientation pointer to the beam through the
//! integrated evolution
//!
//! ```text
//! U = R((1+r)/2) ⊗ E_φ + R((1−r)/2) ⊗ E_{φ+π/2}
//! ```
//!
//! acting on the 4-dimensional pointer⊗beam space (pointer factor first in
//! the Kronecker ordering; every 4×4 literal in the tests follows it).  The
//! readout probabilities come from the full conjugation
//! `U (ρ^M ⊗ ρ^L) Uᵀ` traced against `1 ⊗ E_φ`, not from the closed form —
//! the closed form `(1 ± r₀ cos 2(φ−φ₀))/2` is the test oracle.  At `r₀ = 1`
//! this is the Malus law.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{Mat2, Mat4};
use crate::plane_states::{projector, rotation, PolarState, SymMat2};

/// Kronecker product with the pointer factor first:
/// `(a ⊗ b)[2i+k, 2j+l] = a[i,j]·b[k,l]`.
pub fn kron(a: &Mat2, b: &Mat2) -> Mat4 {
    let mut out = Mat4::zero();
    for i in 0..2 {
        for j in 0..2 {
            for k in 0..2 {
                for l in 0..2 {
                    out[(2 * i + k, 2 * j + l)] = a[(i, j)] * b[(k, l)];
                }
            }
        }
    }
    out
}

/// `exp(θ·τ₂ ⊗ P) = R(θ) ⊗ P + 1 ⊗ (1 − P)` for an orthogonal projector
/// `P`; the input is validated as idempotent to 1e−10.
pub fn exp_projector(theta: f64, p: &SymMat2) -> Result<Mat4> {
    let pm = p.to_mat2();
    if (pm * pm).max_abs_diff(&pm) > 1e-10 {
        return Err(Error::domain("input is not an orthogonal projector"));
    }
    let complement = Mat2::identity() - pm;
    Ok(kron(&rotation(theta), &pm) + kron(&Mat2::identity(), &complement))
}

/// The integrated polarizer evolution; orthogonal by construction.
pub fn evolution_operator(device_r: f64, device_phi: f64) -> Result<Mat4> {
    if !(0.0..=1.0).contains(&device_r) || !device_r.is_finite() {
        return Err(Error::domain(format!("device r = {device_r} outside [0, 1]")));
    }
    let e_par = projector(device_phi).to_mat2();
    let e_perp = projector(device_phi + PI / 2.0).to_mat2();
    Ok(kron(&rotation((1.0 + device_r) / 2.0), &e_par)
        + kron(&rotation((1.0 - device_r) / 2.0), &e_perp))
}

/// Polarizer device settings: coupling strength `r` and transmission axis
/// `φ`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DeviceSetting {
    pub r: f64,
    pub phi: f64,
}

/// A full measurement scenario: pointer preparation, beam preparation and
/// device settings.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MeasurementScenario {
    pub pointer: PolarState,
    pub beam: PolarState,
    pub device: DeviceSetting,
}

/// Wire format of a scenario:
/// `{"pointer": {"s": …, "theta": …}, "beam": {"r": …, "phi": …},
///   "device": {"r": …, "phi": …}}`.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioSpec {
    pub pointer: PointerSpec,
    pub beam: BeamSpec,
    pub device: DeviceSetting,
}

#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PointerSpec {
    pub s: f64,
    pub theta: f64,
}

#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BeamSpec {
    pub r: f64,
    pub phi: f64,
}

impl MeasurementScenario {
    pub fn new(pointer: PolarState, beam: PolarState, device: DeviceSetting) -> Result<Self> {
        if !(0.0..=1.0).contains(&device.r) || !device.r.is_finite() {
            return Err(Error::domain(format!("device r = {} outside [0, 1]", device.r)));
        }
        if !device.phi.is_finite() {
            return Err(Error::domain("non-finite device angle"));
        }
        Ok(MeasurementScenario { pointer, beam, device })
    }

    pub fn from_spec(spec: &ScenarioSpec) -> Result<Self> {
        MeasurementScenario::new(
            PolarState::new(spec.pointer.s, spec.pointer.theta)?,
            PolarState::new(spec.beam.r, spec.beam.phi)?,
            spec.device,
        )
    }
}

/// Outcome of running a scenario.
#[derive(Debug, Clone, Copy)]
pub struct MeasurementOutcome {
    /// Probability of transmission along the device axis, i.e. the pointer
    /// rotating by `(1+r)/2`.
    pub p_parallel: f64,
    /// Probability of the perpendicular outcome.
    pub p_perp: f64,
    /// The full post-interaction 4×4 state `U (ρ^M ⊗ ρ^L) Uᵀ`.
    pub post_state: Mat4,
}

/// Runs the measurement through the full 4×4 conjugation and trace.
pub fn measure(sc: &MeasurementScenario) -> MeasurementOutcome {
    let u = evolution_operator(sc.device.r, sc.device.phi).expect("validated scenario");
    let initial = kron(&sc.pointer.to_matrix().to_mat2(), &sc.beam.to_matrix().to_mat2());
    let post = u * initial * u.transpose();

    let project_parallel = kron(&Mat2::identity(), &projector(sc.device.phi).to_mat2());
    let project_perp = kron(
        &Mat2::identity(),
        &projector(sc.device.phi + PI / 2.0).to_mat2(),
    );
    MeasurementOutcome {
        p_parallel: (post * project_parallel).trace(),
        p_perp: (post * project_perp).trace(),
        post_state: post,
    }
}

/// Conjugation of a pointer state by the rotation generator:
/// `τ₂ ρ_{s,θ} τ₂⁻¹ = ρ_{s,θ+π/2}`.
pub fn pointer_rotation_conjugation(s: PolarState) -> PolarState {
    s.rotate(PI / 2.0)
}
