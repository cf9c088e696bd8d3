//! Cross-module identities: the same objects computed along independent
//! routes through different modules must coincide.

use std::f64::consts::PI;

use povmkit::circle_quantizer::{quantize, quantize_trapezoid, QuantizerConfig};
use povmkit::fourier::{FourierFunction, Harmonic};
use povmkit::plane_states::density_from_polar;
use povmkit::son_quantizer::{quantize_n, EulerAngles, HaarGrid, SimplexEta};
use povmkit::toeplitz_naimark::{density_weighted_toeplitz, toeplitz_identity_residual, SubspaceO};

#[test]
fn trapezoid_is_exact_past_twice_the_degree() {
    // closed form and trapezoid agree to 1e−12 whenever n > 2·(deg f + 2)
    let f = FourierFunction::new(
        0.21,
        [
            Harmonic { k: 2, cos: 0.7, sin: -0.5 },
            Harmonic { k: 7, cos: -0.2, sin: 0.9 },
        ],
    )
    .unwrap();
    let q = QuantizerConfig::new(0.77, 1.3).unwrap();
    let exact = quantize(&f, &q);
    let n = 2 * (f.degree() as usize + 2) + 1;
    for nodes in [n, n + 3, 4 * n] {
        assert!(quantize_trapezoid(&f, &q, nodes).max_abs_diff(&exact) <= 1e-12);
    }
}

#[test]
fn toeplitz_weights_recover_the_full_quantizer() {
    // the compression route and the density-weighted combination both land
    // on the quantization map
    let f = FourierFunction::new(
        -0.4,
        [Harmonic { k: 2, cos: 0.9, sin: 0.4 }, Harmonic { k: 4, cos: 0.1, sin: 0.0 }],
    )
    .unwrap();
    for &(r, phi0) in &[(0.0, 0.4), (0.6, 0.2), (1.0, -1.0)] {
        let (lhs, rhs) = density_weighted_toeplitz(&f, r, phi0).unwrap();
        assert!(lhs.max_abs_diff(&rhs) <= 1e-12);
        let q = QuantizerConfig::new(r, phi0).unwrap();
        assert!(lhs.max_abs_diff(&quantize(&f, &q)) <= 1e-12);
    }
    // and the compression itself reproduces the rank-one members
    for j in [SubspaceO::O1, SubspaceO::O2] {
        assert!(toeplitz_identity_residual(&f, j).2 <= 1e-12);
    }
}

#[test]
fn son_at_n2_reproduces_the_circle_quantizer() {
    let (r, phi0) = (0.58, 0.93);
    let f_series = FourierFunction::new(
        0.3,
        [Harmonic { k: 2, cos: -0.8, sin: 0.55 }],
    )
    .unwrap();
    let circle = quantize(&f_series, &QuantizerConfig::new(r, phi0).unwrap());

    // the same function read off the SO(2) rotation matrix:
    // cos 2φ = R₀₀² − R₁₀², sin 2φ = 2 R₀₀ R₁₀
    let f_group = move |m: &povmkit::linalg::DMat| {
        let (c, s) = (m[(0, 0)], m[(1, 0)]);
        0.3 + -0.8 * (c * c - s * s) + 0.55 * (2.0 * c * s)
    };
    let a = quantize_n(
        f_group,
        &SimplexEta::from_plane_r(r).unwrap(),
        &EulerAngles::new(2, vec![vec![phi0]]).unwrap(),
        &HaarGrid::uniform(2, 64).unwrap(),
    )
    .unwrap();
    assert!((a[(0, 0)] - circle.a).abs() <= 1e-12);
    assert!((a[(0, 1)] - circle.b).abs() <= 1e-12);
    assert!((a[(1, 1)] - circle.d).abs() <= 1e-12);
}

#[test]
fn projection_pipeline_quantizes_arbitrary_functions() {
    // an arbitrary smooth function enters via sampling projection; the
    // quantizer only sees frequencies {0, 2}, so the projected series and a
    // fine trapezoid of the raw function agree
    let raw = |phi: f64| (0.4 + phi.sin()).exp();
    let (projected, loss) = FourierFunction::project(raw, 16, 256).unwrap();
    assert!(loss < 1e-9, "16 harmonics resolve exp(sin) to {loss}");

    let q = QuantizerConfig::new(0.7, 0.2).unwrap();
    let via_projection = quantize(&projected, &q);

    // direct trapezoid of the raw function against the family
    let n = 4096;
    let mut acc = povmkit::SymMat2::zero();
    for i in 0..n {
        let phi = 2.0 * PI * i as f64 / n as f64;
        acc = acc + density_from_polar(0.7, phi + 0.2).unwrap().scale(raw(phi));
    }
    let direct = acc.scale(2.0 / n as f64);
    assert!(via_projection.max_abs_diff(&direct) <= 1e-9);
}

#[test]
fn effect_matrices_are_scaled_densities() {
    // A(α,φ,r) = α·ρ_{r/α,φ} whenever α > 0 and r ≤ α
    for &(alpha, phi, r) in &[(1.0, 0.3, 0.5), (0.5, 1.2, 0.5), (1.4, 2.0, 0.3)] {
        let e = povmkit::povm_compat::Effect::new(alpha, phi, r).unwrap();
        let scaled = density_from_polar(r / alpha, phi).unwrap().scale(alpha);
        assert!(e.matrix().max_abs_diff(&scaled) <= 1e-12);
    }
}
