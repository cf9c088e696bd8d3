//! Integral quantization of functions on the circle.
//!
//! The family `ρ_{r,φ+φ₀}` resolves the identity against `dφ/π`, so every
//! trigonometric polynomial `f` maps to the 2×2 operator
//!
//! ```text
//! A_f = ∫ f(φ) ρ_{r,φ+φ₀} dφ/π
//!     = ⟨f⟩·1 + (r/2)[C_c(R_{φ₀}f)·σ₃ + C_s(R_{φ₀}f)·σ₁]
//! ```
//!
//! where `C_c`, `C_s` pick the doubled-angle Fourier coefficients.  Only
//! frequencies {0, 2} survive; everything else is in the kernel.  The default
//! integration backend is exact (Fourier orthogonality); a trapezoid backend
//! exists to cross-validate the same quadrature strategy the SO(n) module
//! uses at n = 2.

use std::f64::consts::{PI, SQRT_2};

use crate::error::{Error, Result};
use crate::fourier::FourierFunction;
use crate::plane_states::{density_from_polar, rotation, sigma_phi, SymMat2};

/// The quantizer family `ρ_{r,φ+φ₀}`, fixed by the mixing parameter `r` and
/// the reference angle `φ₀`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuantizerConfig {
    r: f64,
    phi0: f64,
}

impl QuantizerConfig {
    pub fn new(r: f64, phi0: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&r) || !r.is_finite() {
            return Err(Error::domain(format!("quantizer r = {r} outside [0, 1]")));
        }
        if !phi0.is_finite() {
            return Err(Error::domain("non-finite quantizer angle"));
        }
        Ok(QuantizerConfig { r, phi0 })
    }

    pub fn r(&self) -> f64 {
        self.r
    }

    pub fn phi0(&self) -> f64 {
        self.phi0
    }

    /// The member `ρ_{r,φ+φ₀}` of the family.
    pub fn state_at(&self, phi: f64) -> SymMat2 {
        density_from_polar(self.r, phi + self.phi0).expect("validated r")
    }
}

/// `(⟨f⟩, C_c(f), C_s(f))`: circle mean and doubled-angle Fourier
/// coefficients.  Exact by orthogonality: `C_c = c₂`, `C_s = s₂`.
pub fn mean_and_doubled_fourier(f: &FourierFunction) -> (f64, f64, f64) {
    let (c2, s2) = f.coeff(2);
    (f.mean(), c2, s2)
}

/// V₃ coordinates `(f₁, f₂, f₀)` of a series with respect to the basis
/// `{cos 2φ, sin 2φ, 1/√2}`; frequencies outside {0, 2} are ignored.
pub fn v3_coordinates(f: &FourierFunction) -> (f64, f64, f64) {
    let (c2, s2) = f.coeff(2);
    (c2, s2, f.a0() * SQRT_2)
}

/// The quantization map `f ↦ A_f`, exact path.
pub fn quantize(f: &FourierFunction, q: &QuantizerConfig) -> SymMat2 {
    let shifted = f.shift(q.phi0());
    let (mean, cc, cs) = mean_and_doubled_fourier(&shifted);
    SymMat2::from_pauli(mean, 0.5 * q.r() * cc, 0.5 * q.r() * cs)
}

/// Same map through an N-node trapezoid rule; exact once
/// `n > degree(f) + 2`.
pub fn quantize_trapezoid(f: &FourierFunction, q: &QuantizerConfig, n: usize) -> SymMat2 {
    let mut acc = SymMat2::zero();
    for i in 0..n {
        let phi = 2.0 * PI * i as f64 / n as f64;
        acc = acc + q.state_at(phi).scale(f.eval(phi));
    }
    acc.scale(2.0 / n as f64)
}

/// Max-entry deviation of `∫ ρ_{r,φ+φ₀} dφ/π` from the identity, with the
/// integral taken entrywise from antiderivatives.
pub fn resolution_of_identity(q: &QuantizerConfig) -> f64 {
    integral_of_family(q, 0.0, 2.0 * PI).max_abs_diff(&SymMat2::identity())
}

/// Same residual with an N-node trapezoid rule.
pub fn resolution_of_identity_trapezoid(q: &QuantizerConfig, n: usize) -> f64 {
    quantize_trapezoid(&FourierFunction::constant(1.0), q, n)
        .max_abs_diff(&SymMat2::identity())
}

/// Entrywise `∫_a^b ρ_{r,φ+φ₀} dφ/π` from closed-form antiderivatives.
pub fn integral_of_family(q: &QuantizerConfig, a: f64, b: f64) -> SymMat2 {
    // entries of ρ_{r,φ+φ₀} as series in φ
    let (s0, c0) = (2.0 * q.phi0()).sin_cos();
    let half_r = 0.5 * q.r();
    // cos 2(φ+φ₀) = cos2φ₀·cos2φ − sin2φ₀·sin2φ, likewise for sin
    let cos_part = FourierFunction::new(
        0.0,
        [crate::fourier::Harmonic { k: 2, cos: c0, sin: -s0 }],
    )
    .expect("static harmonics");
    let sin_part = FourierFunction::new(
        0.0,
        [crate::fourier::Harmonic { k: 2, cos: s0, sin: c0 }],
    )
    .expect("static harmonics");
    let diag = cos_part.integrate_arc(a, b) / PI * half_r;
    let off = sin_part.integrate_arc(a, b) / PI * half_r;
    let unit = 0.5 * (b - a) / PI;
    SymMat2::new(unit + diag, off, unit - diag)
}

/// Lower (covariant) symbol `Ǎ(φ) = Tr(A ρ_{r,φ+φ₀})`, a series of degree
/// ≤ 2:
///
/// ```text
/// Ǎ(φ) = (a+d)/2 + r[(a−d)/2·cos 2(φ+φ₀) + b·sin 2(φ+φ₀)]
/// ```
pub fn lower_symbol(a: &SymMat2, q: &QuantizerConfig) -> FourierFunction {
    let (alpha, delta, beta) = a.pauli_components();
    let (s0, c0) = (2.0 * q.phi0()).sin_cos();
    let r = q.r();
    // expand the shifted doubled angle onto cos2φ / sin2φ
    let c2 = r * (delta * c0 + beta * s0);
    let s2 = r * (-delta * s0 + beta * c0);
    FourierFunction::new(
        alpha,
        [crate::fourier::Harmonic { k: 2, cos: c2, sin: s2 }],
    )
    .expect("finite by construction")
}

/// Upper (contravariant) symbol: the unique `V₃` representative whose
/// quantization returns `A`.  Fails at `r = 0`, where the map degenerates.
pub fn upper_symbol(a: &SymMat2, q: &QuantizerConfig) -> Result<FourierFunction> {
    if q.r() == 0.0 {
        return Err(Error::SingularQuantizer);
    }
    let c2 = a.hs_inner(&sigma_phi(2.0 * q.phi0())) / q.r();
    let s2 = a.hs_inner(&sigma_phi(2.0 * q.phi0() + PI / 2.0)) / q.r();
    FourierFunction::new(
        0.5 * a.trace(),
        [crate::fourier::Harmonic { k: 2, cos: c2, sin: s2 }],
    )
}

/// Matrix of the composite map `f ↦ lower_symbol(quantize(f))` on `V₃`
/// coordinates `(f₁, f₂, f₀)`, for analysis pair `(r, φ₀)` and reconstruction
/// pair `(s, θ₀)`.
///
/// The composition is a rotation by `2(φ₀ − θ₀)` of the `(f₁, f₂)` plane
/// contracted by `rs/2`, with the `f₀` component left alone.  The `rs/2`
/// factor is what the pairing `tr(ρ_{s,x} ρ_{r,x′}) = ½[1 + rs·cos 2(x−x′)]`
/// actually produces; see the module tests, which verify the matrix against
/// the composite map computed independently.
pub fn symbol_transform_matrix(r: f64, s: f64, theta0: f64, phi0: f64) -> [[f64; 3]; 3] {
    let (sn, cs) = (2.0 * (phi0 - theta0)).sin_cos();
    let k = 0.5 * r * s;
    [
        [k * cs, -k * sn, 0.0],
        [k * sn, k * cs, 0.0],
        [0.0, 0.0, 1.0],
    ]
}

/// Residual and convexity flag for the superposition identity
///
/// ```text
/// ρ_{s,θ} = ∫ [½ + (s/r)·cos 2(φ + φ₀ − θ)] ρ_{r,φ+φ₀} dφ/π
/// ```
///
/// The weight is a probability density exactly when `r ≥ 2s`.
pub fn mixed_superposition_check(s: f64, theta: f64, r: f64, phi0: f64) -> Result<(f64, bool)> {
    if !(0.0..=1.0).contains(&s) {
        return Err(Error::domain(format!("target mixing s = {s} outside [0, 1]")));
    }
    let q = QuantizerConfig::new(r, phi0)?;
    if r == 0.0 {
        return Err(Error::SingularQuantizer);
    }
    // ½ + (s/r)cos 2φ, recentered on φ₀ − θ so the reconstruction lands on ρ_{s,θ}
    let base = FourierFunction::new(
        0.5,
        [crate::fourier::Harmonic { k: 2, cos: s / r, sin: 0.0 }],
    )?;
    let recentered = base.shift(theta - phi0);
    let target = density_from_polar(s, theta)?;
    let residual = quantize(&recentered, &q).max_abs_diff(&target);
    Ok((residual, r >= 2.0 * s))
}

/// Max-entry deviation of `R(θ) A_f R(−θ)` from `A_{R_θ f}`.
pub fn covariance_check(f: &FourierFunction, q: &QuantizerConfig, theta: f64) -> f64 {
    let lhs = rotation(theta) * quantize(f, q).to_mat2() * rotation(-theta);
    let rhs = quantize(&f.shift(theta), q).to_mat2();
    lhs.max_abs_diff(&rhs)
}

/// Both sides of the weighted norm identity
/// `f₁² + f₂² + f₀² = ⟨A_f | Δ_r A_f⟩` with `Δ_r = diag(2/r², 2/r², 1)` in
/// the orthonormal basis `{σ_{2φ₀}/√2, σ_{2φ₀+π/2}/√2, 1/√2}`.
pub fn weighted_norm_identity(
    f1: f64,
    f2: f64,
    f0: f64,
    q: &QuantizerConfig,
) -> Result<(f64, f64)> {
    if q.r() == 0.0 {
        return Err(Error::SingularQuantizer);
    }
    let lhs = f1 * f1 + f2 * f2 + f0 * f0;
    let af = quantize(&FourierFunction::v3(f1, f2, f0), q);
    let a1 = af.hs_inner(&sigma_phi(2.0 * q.phi0())) / SQRT_2;
    let a2 = af.hs_inner(&sigma_phi(2.0 * q.phi0() + PI / 2.0)) / SQRT_2;
    let a0 = af.trace() / SQRT_2;
    let w = 2.0 / (q.r() * q.r());
    Ok((lhs, w * (a1 * a1 + a2 * a2) + a0 * a0))
}

/// The measurement pairing `tr(ρ_{s,x} ρ_{r,x′}) = ½[1 + rs·cos 2(x − x′)]`;
/// a probability density in `x′` against `dφ/π`.
pub fn measurement_pairing(s: f64, x: f64, r: f64, x_prime: f64) -> f64 {
    0.5 * (1.0 + r * s * (2.0 * (x - x_prime)).cos())
}
