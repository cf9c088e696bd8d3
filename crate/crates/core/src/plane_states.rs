//! Real 2×2 state space on the Euclidean plane.
//!
//! States are density matrices `ρ_{r,φ} = ½·1 + (r/2)·σ_{2φ}` with
//! `σ_φ = cos φ·σ₃ + sin φ·σ₁`; effects and observables live in the Jordan
//! algebra of real symmetric 2×2 matrices.  Density matrices identify `φ` and
//! `φ + π`, so polar angles are kept canonical in `[0, π)`.

use std::f64::consts::PI;
use std::ops::{Add, Mul, Sub};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{Mat2, SMat};

/// Default absolute tolerance on matrix entries; the closed forms here admit
/// near machine precision.
pub const DEFAULT_TOL: f64 = 1e-12;

/// Canonical representative of an angle modulo π, in `[0, π)`.
pub fn normalize_mod_pi(phi: f64) -> f64 {
    let mut x = phi.rem_euclid(PI);
    // rem_euclid can return exactly π after rounding
    if x >= PI {
        x -= PI;
    }
    x
}

/// Canonical representative of an angle modulo 2π, in `[0, 2π)`.
pub fn normalize_mod_2pi(phi: f64) -> f64 {
    let mut x = phi.rem_euclid(2.0 * PI);
    if x >= 2.0 * PI {
        x -= 2.0 * PI;
    }
    x
}

/// Real symmetric 2×2 matrix `[[a, b], [b, d]]`.
///
/// The single off-diagonal field makes symmetry structural.  Decomposed on
/// the Pauli side as `A = α·1 + δ·σ₃ + β·σ₁` with `α = (a+d)/2`,
/// `δ = (a−d)/2`, `β = b`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SymMat2 {
    pub a: f64,
    pub b: f64,
    pub d: f64,
}

impl SymMat2 {
    pub const fn new(a: f64, b: f64, d: f64) -> Self {
        SymMat2 { a, b, d }
    }

    pub const fn zero() -> Self {
        SymMat2 { a: 0.0, b: 0.0, d: 0.0 }
    }

    pub const fn identity() -> Self {
        SymMat2 { a: 1.0, b: 0.0, d: 1.0 }
    }

    /// Pauli components `(α, δ, β)` of `A = α·1 + δ·σ₃ + β·σ₁`.
    pub fn pauli_components(&self) -> (f64, f64, f64) {
        ((self.a + self.d) / 2.0, (self.a - self.d) / 2.0, self.b)
    }

    pub fn from_pauli(alpha: f64, delta: f64, beta: f64) -> Self {
        SymMat2 {
            a: alpha + delta,
            b: beta,
            d: alpha - delta,
        }
    }

    pub fn to_mat2(&self) -> Mat2 {
        SMat([[self.a, self.b], [self.b, self.d]])
    }

    /// Symmetric part check plus conversion; rejects matrices that are not
    /// symmetric within `tol`.
    pub fn from_mat2(m: &Mat2, tol: f64) -> Result<Self> {
        if (m[(0, 1)] - m[(1, 0)]).abs() > tol {
            return Err(Error::domain("matrix is not symmetric"));
        }
        Ok(SymMat2 {
            a: m[(0, 0)],
            b: 0.5 * (m[(0, 1)] + m[(1, 0)]),
            d: m[(1, 1)],
        })
    }

    pub fn trace(&self) -> f64 {
        self.a + self.d
    }

    pub fn det(&self) -> f64 {
        self.a * self.d - self.b * self.b
    }

    /// Eigenvalues `(λ₊, λ₋)` with `λ₊ ≥ λ₋`, by the closed form
    /// `α ± √(δ² + β²)`.
    pub fn eigenvalues(&self) -> (f64, f64) {
        let (alpha, delta, beta) = self.pauli_components();
        let radius = delta.hypot(beta);
        (alpha + radius, alpha - radius)
    }

    pub fn min_eigenvalue(&self) -> f64 {
        self.eigenvalues().1
    }

    /// Both eigenvalues in `[0, 1]` within `tol`.
    pub fn is_effect(&self, tol: f64) -> bool {
        let (hi, lo) = self.eigenvalues();
        lo >= -tol && hi <= 1.0 + tol
    }

    /// Nonnegative eigenvalues and unit trace within `tol`.
    pub fn is_density(&self, tol: f64) -> bool {
        let (_, lo) = self.eigenvalues();
        lo >= -tol && (self.trace() - 1.0).abs() <= tol
    }

    pub fn scale(&self, s: f64) -> Self {
        SymMat2 {
            a: self.a * s,
            b: self.b * s,
            d: self.d * s,
        }
    }

    /// Jordan product `A ⊙ B = ½(AB + BA)`.
    ///
    /// On Pauli components: `α″ = αα′ + δδ′ + ββ′`, `δ″ = αδ′ + α′δ`,
    /// `β″ = αβ′ + α′β`.
    pub fn jordan(&self, other: &Self) -> Self {
        let (al, dl, bl) = self.pauli_components();
        let (ar, dr, br) = other.pauli_components();
        SymMat2::from_pauli(
            al * ar + dl * dr + bl * br,
            al * dr + ar * dl,
            al * br + ar * bl,
        )
    }

    /// Hilbert–Schmidt pairing `⟨A|B⟩ = Tr(AB)` on the Jordan algebra.
    pub fn hs_inner(&self, other: &Self) -> f64 {
        self.a * other.a + 2.0 * self.b * other.b + self.d * other.d
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        (self.a - other.a)
            .abs()
            .max((self.b - other.b).abs())
            .max((self.d - other.d).abs())
    }

    pub fn max_abs(&self) -> f64 {
        self.a.abs().max(self.b.abs()).max(self.d.abs())
    }
}

impl Add for SymMat2 {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        SymMat2::new(self.a + o.a, self.b + o.b, self.d + o.d)
    }
}

impl Sub for SymMat2 {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        SymMat2::new(self.a - o.a, self.b - o.b, self.d - o.d)
    }
}

impl Mul<f64> for SymMat2 {
    type Output = Self;
    fn mul(self, s: f64) -> Self {
        self.scale(s)
    }
}

/// Plane density matrix in polar parametrization `(r, φ)` with `r ∈ [0, 1]`
/// and `φ` canonical modulo π.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PolarState {
    r: f64,
    phi: f64,
}

impl PolarState {
    pub fn new(r: f64, phi: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&r) || !r.is_finite() {
            return Err(Error::domain(format!("mixing parameter r = {r} outside [0, 1]")));
        }
        if !phi.is_finite() {
            return Err(Error::domain("non-finite angle"));
        }
        Ok(PolarState {
            r,
            phi: normalize_mod_pi(phi),
        })
    }

    pub fn r(&self) -> f64 {
        self.r
    }

    pub fn phi(&self) -> f64 {
        self.phi
    }

    /// The matrix `ρ_{r,φ} = ½·1 + (r/2)·σ_{2φ}`; trace 1, determinant
    /// `(1 − r²)/4`.
    pub fn to_matrix(&self) -> SymMat2 {
        density_from_polar(self.r, self.phi).expect("validated on construction")
    }

    /// Eigenvalues `((1+r)/2, (1−r)/2)`.
    pub fn eigenvalues(&self) -> (f64, f64) {
        ((1.0 + self.r) / 2.0, (1.0 - self.r) / 2.0)
    }

    /// Rotation `R(φ) ρ R(−φ)` acts additively on the angle.
    pub fn rotate(&self, phi: f64) -> Self {
        PolarState {
            r: self.r,
            phi: normalize_mod_pi(self.phi + phi),
        }
    }

    pub fn entropy(&self) -> f64 {
        von_neumann_entropy(self.r).expect("validated on construction")
    }

    /// Linear Stokes parameters `ξ₁ = r sin 2φ`, `ξ₃ = r cos 2φ` at unit
    /// intensity.
    pub fn to_stokes(&self) -> StokesVector {
        StokesVector {
            xi1: self.r * (2.0 * self.phi).sin(),
            xi3: self.r * (2.0 * self.phi).cos(),
            intensity: 1.0,
        }
    }
}

/// Linear Stokes parameters of a partially polarized beam; the circular
/// component is fixed to zero throughout this crate, so the pair `(ξ₁, ξ₃)`
/// determines the normalized polarization tensor.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StokesVector {
    pub xi1: f64,
    pub xi3: f64,
    /// Total intensity `J`; defaults to 1 when deserialized without it.
    #[serde(default = "default_intensity")]
    pub intensity: f64,
}

fn default_intensity() -> f64 {
    1.0
}

impl StokesVector {
    pub fn new(xi1: f64, xi3: f64, intensity: f64) -> Result<Self> {
        let v = StokesVector { xi1, xi3, intensity };
        v.validate()?;
        Ok(v)
    }

    pub fn validate(&self) -> Result<()> {
        if self.intensity < 0.0 || !self.intensity.is_finite() {
            return Err(Error::domain("intensity must be finite and ≥ 0"));
        }
        if self.degree_of_polarization() > 1.0 + 1e-12 {
            return Err(Error::domain(format!(
                "unphysical Stokes vector: P = {} > 1",
                self.degree_of_polarization()
            )));
        }
        Ok(())
    }

    /// `P = √(ξ₁² + ξ₃²) ∈ [0, 1]`.
    pub fn degree_of_polarization(&self) -> f64 {
        self.xi1.hypot(self.xi3)
    }

    /// The normalized polarization tensor as a `(r, φ)` state; `P = r`.
    pub fn to_polar(&self) -> Result<PolarState> {
        self.validate()?;
        let p = self.degree_of_polarization().min(1.0);
        let phi = if p == 0.0 {
            0.0
        } else {
            // ξ₃ = r cos 2φ, ξ₁ = r sin 2φ
            0.5 * self.xi1.atan2(self.xi3)
        };
        PolarState::new(p, phi)
    }
}

/// Pure orientation state; the projector `E_φ` is idempotent with trace 1.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PureState {
    phi: f64,
}

impl PureState {
    pub fn new(phi: f64) -> Self {
        PureState {
            phi: normalize_mod_pi(phi),
        }
    }

    pub fn phi(&self) -> f64 {
        self.phi
    }

    pub fn projector(&self) -> SymMat2 {
        projector(self.phi)
    }
}

/// The projector `E_φ = |φ⟩⟨φ|` on the unit vector `(cos φ, sin φ)`.
pub fn projector(phi: f64) -> SymMat2 {
    let (s, c) = phi.sin_cos();
    SymMat2::new(c * c, c * s, s * s)
}

/// `ρ_{r,φ} = ½·1 + (r/2)(cos 2φ·σ₃ + sin 2φ·σ₁)`.
pub fn density_from_polar(r: f64, phi: f64) -> Result<SymMat2> {
    if !(0.0..=1.0).contains(&r) || !r.is_finite() {
        return Err(Error::domain(format!("mixing parameter r = {r} outside [0, 1]")));
    }
    let (s2, c2) = (2.0 * phi).sin_cos();
    Ok(SymMat2::new(
        0.5 + 0.5 * r * c2,
        0.5 * r * s2,
        0.5 - 0.5 * r * c2,
    ))
}

/// Spectral decomposition `m = λ₊ E_φ + λ₋ E_{φ+π/2}` with `λ₊ ≥ λ₋` and `φ`
/// canonical in `[0, π)`; the degenerate case ties off at `φ = 0`.
pub fn spectral_decompose(m: &SymMat2) -> (f64, f64, f64) {
    let (alpha, delta, beta) = m.pauli_components();
    let radius = delta.hypot(beta);
    let phi = if radius == 0.0 {
        0.0
    } else {
        // m − α·1 = radius·σ_{2φ}
        normalize_mod_pi(0.5 * beta.atan2(delta))
    };
    (alpha + radius, alpha - radius, phi)
}

/// `S(r) = −((1+r)/2)·ln((1+r)/2) − ((1−r)/2)·ln((1−r)/2)`, extended by
/// continuity to 0 at `r = 1`.
pub fn von_neumann_entropy(r: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&r) || !r.is_finite() {
        return Err(Error::domain(format!("mixing parameter r = {r} outside [0, 1]")));
    }
    let xlnx = |x: f64| if x == 0.0 { 0.0 } else { x * x.ln() };
    let v = xlnx((1.0 + r) / 2.0) + xlnx((1.0 - r) / 2.0);
    Ok(if v == 0.0 { 0.0 } else { -v })
}

/// `σ_φ = cos φ·σ₃ + sin φ·σ₁`: symmetric, traceless, squares to the
/// identity.
pub fn sigma_phi(phi: f64) -> SymMat2 {
    let (s, c) = phi.sin_cos();
    SymMat2::new(c, s, -c)
}

/// The rotation generator `τ₂ = [[0, −1], [1, 0]]`.
pub fn tau2() -> Mat2 {
    SMat([[0.0, -1.0], [1.0, 0.0]])
}

/// Closed-form plane rotation `R(φ)`.
pub fn rotation(phi: f64) -> Mat2 {
    let (s, c) = phi.sin_cos();
    SMat([[c, -s], [s, c]])
}

/// `R(φ) = exp(τ₂ φ)` computed through the actual matrix exponential; agrees
/// with [`rotation`] to rounding.
pub fn rotation_exp(phi: f64) -> Mat2 {
    tau2().scale(phi).expm()
}

/// Commutator `xy − yx` of two plane operators.
pub fn commutator(x: &Mat2, y: &Mat2) -> Mat2 {
    *x * *y - *y * *x
}

/// Transition probability `|⟨η|φ⟩|² = cos²(φ − η)` of the unsharp circle
/// representation; integrates to 1 against `dη/π`.
pub fn overlap_probability(eta: f64, phi: f64) -> f64 {
    let c = (phi - eta).cos();
    c * c
}
