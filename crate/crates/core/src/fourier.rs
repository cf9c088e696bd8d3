//! Finite trigonometric series on the circle.
//!
//! `FourierFunction` is the single function representation the quantizer
//! accepts: `f(φ) = a₀ + Σ_k (c_k cos kφ + s_k sin kφ)` with finitely many
//! harmonics.  Products, shifts and inner products are all computed by
//! product-to-sum identities, never by floating quadrature, so downstream
//! operator identities hold to rounding.
//!
//! Arbitrary functions enter through [`FourierFunction::project`], which
//! samples on a uniform grid, projects onto frequencies ≤ K and reports the
//! projection loss instead of hiding it.

use std::collections::BTreeMap;
use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// One harmonic `c·cos(kφ) + s·sin(kφ)` with `k ≥ 1`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Harmonic {
    pub k: u32,
    pub cos: f64,
    pub sin: f64,
}

/// A finite trigonometric series on the circle.
///
/// Serialized as `{"a0": number, "harmonics": [[k, ck, sk], ...]}` with
/// strictly positive, strictly increasing `k`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawFourier", into = "RawFourier")]
pub struct FourierFunction {
    a0: f64,
    harmonics: Vec<Harmonic>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawFourier {
    a0: f64,
    harmonics: Vec<(u32, f64, f64)>,
}

impl TryFrom<RawFourier> for FourierFunction {
    type Error = Error;
    fn try_from(raw: RawFourier) -> Result<Self> {
        FourierFunction::new(
            raw.a0,
            raw.harmonics
                .into_iter()
                .map(|(k, c, s)| Harmonic { k, cos: c, sin: s }),
        )
    }
}

impl From<FourierFunction> for RawFourier {
    fn from(f: FourierFunction) -> Self {
        RawFourier {
            a0: f.a0,
            harmonics: f.harmonics.iter().map(|h| (h.k, h.cos, h.sin)).collect(),
        }
    }
}

impl FourierFunction {
    /// Builds a series from a constant term and harmonics.
    ///
    /// Rejects `k = 0` (fold it into `a0`), duplicate frequencies and
    /// non-finite coefficients.  Harmonics are stored sorted by frequency.
    pub fn new(a0: f64, harmonics: impl IntoIterator<Item = Harmonic>) -> Result<Self> {
        if !a0.is_finite() {
            return Err(Error::domain("non-finite constant term"));
        }
        let mut sorted: Vec<Harmonic> = Vec::new();
        for h in harmonics {
            if h.k == 0 {
                return Err(Error::domain("harmonic index k = 0; use the a0 field"));
            }
            if !h.cos.is_finite() || !h.sin.is_finite() {
                return Err(Error::domain(format!("non-finite coefficient at k = {}", h.k)));
            }
            sorted.push(h);
        }
        sorted.sort_by_key(|h| h.k);
        if sorted.windows(2).any(|w| w[0].k == w[1].k) {
            return Err(Error::domain("duplicate harmonic index"));
        }
        Ok(FourierFunction { a0, harmonics: sorted })
    }

    pub fn constant(c: f64) -> Self {
        FourierFunction {
            a0: c,
            harmonics: Vec::new(),
        }
    }

    pub fn zero() -> Self {
        Self::constant(0.0)
    }

    /// `amp · cos(kφ)`, `k ≥ 1`.
    pub fn cosine(k: u32, amp: f64) -> Self {
        assert!(k >= 1);
        FourierFunction {
            a0: 0.0,
            harmonics: vec![Harmonic { k, cos: amp, sin: 0.0 }],
        }
    }

    /// `amp · sin(kφ)`, `k ≥ 1`.
    pub fn sine(k: u32, amp: f64) -> Self {
        assert!(k >= 1);
        FourierFunction {
            a0: 0.0,
            harmonics: vec![Harmonic { k, cos: 0.0, sin: amp }],
        }
    }

    /// The `V₃` element `f₁ cos 2φ + f₂ sin 2φ + f₀/√2`.
    pub fn v3(f1: f64, f2: f64, f0: f64) -> Self {
        FourierFunction {
            a0: f0 / std::f64::consts::SQRT_2,
            harmonics: if f1 == 0.0 && f2 == 0.0 {
                Vec::new()
            } else {
                vec![Harmonic { k: 2, cos: f1, sin: f2 }]
            },
        }
    }

    pub fn a0(&self) -> f64 {
        self.a0
    }

    pub fn harmonics(&self) -> &[Harmonic] {
        &self.harmonics
    }

    /// `(c_k, s_k)`, zero if the frequency is absent.
    pub fn coeff(&self, k: u32) -> (f64, f64) {
        match self.harmonics.binary_search_by_key(&k, |h| h.k) {
            Ok(i) => (self.harmonics[i].cos, self.harmonics[i].sin),
            Err(_) => (0.0, 0.0),
        }
    }

    /// Highest frequency present (0 for a constant).
    pub fn degree(&self) -> u32 {
        self.harmonics.last().map_or(0, |h| h.k)
    }

    /// Circle average `⟨f⟩ = (1/2π) ∫ f dφ`.
    pub fn mean(&self) -> f64 {
        self.a0
    }

    pub fn eval(&self, phi: f64) -> f64 {
        let mut v = self.a0;
        for h in &self.harmonics {
            let kphi = h.k as f64 * phi;
            v += h.cos * kphi.cos() + h.sin * kphi.sin();
        }
        v
    }

    /// The rotated function `(R_{φ₀} f)(φ) = f(φ − φ₀)`.
    pub fn shift(&self, phi0: f64) -> Self {
        let harmonics = self
            .harmonics
            .iter()
            .map(|h| {
                let (s, c) = (h.k as f64 * phi0).sin_cos();
                Harmonic {
                    k: h.k,
                    cos: h.cos * c - h.sin * s,
                    sin: h.cos * s + h.sin * c,
                }
            })
            .collect();
        FourierFunction { a0: self.a0, harmonics }
    }

    pub fn scale(&self, s: f64) -> Self {
        FourierFunction {
            a0: self.a0 * s,
            harmonics: self
                .harmonics
                .iter()
                .map(|h| Harmonic { k: h.k, cos: h.cos * s, sin: h.sin * s })
                .collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut acc: BTreeMap<u32, (f64, f64)> = BTreeMap::new();
        for h in self.harmonics.iter().chain(&other.harmonics) {
            let e = acc.entry(h.k).or_insert((0.0, 0.0));
            e.0 += h.cos;
            e.1 += h.sin;
        }
        FourierFunction {
            a0: self.a0 + other.a0,
            harmonics: acc
                .into_iter()
                .map(|(k, (c, s))| Harmonic { k, cos: c, sin: s })
                .collect(),
        }
    }

    /// Exact pointwise product via product-to-sum identities.
    pub fn mul(&self, other: &Self) -> Self {
        let mut a0 = self.a0 * other.a0;
        let mut acc: BTreeMap<u32, (f64, f64)> = BTreeMap::new();
        let mut put = |k: i64, c: f64, s: f64| {
            if k == 0 {
                // sin(0·φ) ≡ 0
                a0 += c;
                return;
            }
            let (k, c, s) = if k < 0 { (-k, c, -s) } else { (k, c, s) };
            let e = acc.entry(k as u32).or_insert((0.0, 0.0));
            e.0 += c;
            e.1 += s;
        };

        for h in &self.harmonics {
            // cross terms with the other constant
            put(h.k as i64, h.cos * other.a0, h.sin * other.a0);
        }
        for g in &other.harmonics {
            put(g.k as i64, g.cos * self.a0, g.sin * self.a0);
        }
        for h in &self.harmonics {
            for g in &other.harmonics {
                let (k, l) = (h.k as i64, g.k as i64);
                // cos k cos l = ½[cos(k−l) + cos(k+l)]
                put(k - l, 0.5 * h.cos * g.cos, 0.0);
                put(k + l, 0.5 * h.cos * g.cos, 0.0);
                // sin k sin l = ½[cos(k−l) − cos(k+l)]
                put(k - l, 0.5 * h.sin * g.sin, 0.0);
                put(k + l, -0.5 * h.sin * g.sin, 0.0);
                // sin k cos l = ½[sin(k+l) + sin(k−l)]
                put(k + l, 0.0, 0.5 * h.sin * g.cos);
                put(k - l, 0.0, 0.5 * h.sin * g.cos);
                // cos k sin l = ½[sin(k+l) − sin(k−l)]
                put(k + l, 0.0, 0.5 * h.cos * g.sin);
                put(-(k - l), 0.0, 0.5 * h.cos * g.sin);
            }
        }
        FourierFunction {
            a0,
            harmonics: acc
                .into_iter()
                .map(|(k, (c, s))| Harmonic { k, cos: c, sin: s })
                .collect(),
        }
    }

    /// Inner product `(f, g) = ∫ f g dφ/π` on the circle.
    ///
    /// Under this normalization `1/√2` and each `cos kφ`, `sin kφ` form an
    /// orthonormal family, so the value is `2 a₀ b₀ + Σ (c_k c'_k + s_k s'_k)`.
    pub fn inner(&self, other: &Self) -> f64 {
        let mut acc = 2.0 * self.a0 * other.a0;
        for h in &self.harmonics {
            let (c, s) = other.coeff(h.k);
            acc += h.cos * c + h.sin * s;
        }
        acc
    }

    /// Plain `∫_a^b f(φ) dφ` from antiderivatives.
    pub fn integrate_arc(&self, a: f64, b: f64) -> f64 {
        let mut acc = self.a0 * (b - a);
        for h in &self.harmonics {
            let k = h.k as f64;
            acc += h.cos * ((k * b).sin() - (k * a).sin()) / k;
            acc -= h.sin * ((k * b).cos() - (k * a).cos()) / k;
        }
        acc
    }

    /// Projects an arbitrary function onto frequencies ≤ `max_freq` by a
    /// uniform-grid DFT with `samples` nodes and returns the series together
    /// with the worst absolute residual at the sample points.
    ///
    /// For a band-limited input with `samples > 2·max_freq` the projection is
    /// exact and the reported loss is at rounding level.
    pub fn project(f: impl Fn(f64) -> f64, max_freq: u32, samples: usize) -> Result<(Self, f64)> {
        if samples <= 2 * max_freq as usize {
            return Err(Error::domain(format!(
                "need more than {} samples to resolve frequency {}",
                2 * max_freq, max_freq
            )));
        }
        let n = samples;
        let values: Vec<f64> = (0..n).map(|i| f(2.0 * PI * i as f64 / n as f64)).collect();
        if values.iter().any(|v| !v.is_finite()) {
            return Err(Error::domain("sampled function is not finite"));
        }
        let a0 = values.iter().sum::<f64>() / n as f64;
        let mut harmonics = Vec::new();
        for k in 1..=max_freq {
            let (mut c, mut s) = (0.0, 0.0);
            for (i, v) in values.iter().enumerate() {
                let ang = 2.0 * PI * (k as usize * i % n) as f64 / n as f64;
                c += v * ang.cos();
                s += v * ang.sin();
            }
            harmonics.push(Harmonic {
                k,
                cos: 2.0 * c / n as f64,
                sin: 2.0 * s / n as f64,
            });
        }
        let proj = FourierFunction { a0, harmonics };
        let loss = (0..n)
            .map(|i| {
                let phi = 2.0 * PI * i as f64 / n as f64;
                (proj.eval(phi) - values[i]).abs()
            })
            .fold(0.0f64, f64::max);
        Ok((proj, loss))
    }
}

/// Left-to-right trapezoid (= rectangle) rule for `∫₀^{2π} f dφ/π` on the
/// periodic circle; exact for trigonometric polynomials of degree < `n`.
pub fn trapezoid_circle(f: impl Fn(f64) -> f64, n: usize) -> f64 {
    let mut acc = 0.0;
    for i in 0..n {
        acc += f(2.0 * PI * i as f64 / n as f64);
    }
    acc * 2.0 / n as f64
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol
    }

    #[test]
    fn eval_matches_definition() {
        let f = FourierFunction::new(
            1.5,
            [
                Harmonic { k: 1, cos: 0.3, sin: -0.2 },
                Harmonic { k: 4, cos: 0.0, sin: 1.1 },
            ],
        )
        .unwrap();
        let phi = 0.77f64;
        let direct = 1.5 + 0.3 * phi.cos() - 0.2 * phi.sin() + 1.1 * (4.0 * phi).sin();
        assert!(close(f.eval(phi), direct, 1e-15));
        assert_eq!(f.degree(), 4);
    }

    #[test]
    fn shift_is_translation() {
        let f = FourierFunction::new(
            0.4,
            [Harmonic { k: 3, cos: -0.7, sin: 0.25 }],
        )
        .unwrap();
        let g = f.shift(1.234);
        for i in 0..16 {
            let phi = 0.39 * i as f64;
            assert!(close(g.eval(phi), f.eval(phi - 1.234), 1e-14));
        }
    }

    #[test]
    fn product_matches_pointwise() {
        let f = FourierFunction::new(
            0.2,
            [
                Harmonic { k: 1, cos: 1.0, sin: 0.5 },
                Harmonic { k: 2, cos: -0.3, sin: 0.0 },
            ],
        )
        .unwrap();
        let g = FourierFunction::new(
            -0.5,
            [
                Harmonic { k: 2, cos: 0.4, sin: -1.2 },
                Harmonic { k: 5, cos: 0.0, sin: 0.9 },
            ],
        )
        .unwrap();
        let p = f.mul(&g);
        assert_eq!(p.degree(), 7);
        for i in 0..64 {
            let phi = 0.097 * i as f64;
            assert!(close(p.eval(phi), f.eval(phi) * g.eval(phi), 1e-13));
        }
    }

    #[test]
    fn inner_product_orthonormality() {
        let e0 = FourierFunction::constant(1.0 / std::f64::consts::SQRT_2);
        assert!(close(e0.inner(&e0), 1.0, 1e-15));
        for k in 1..6 {
            let c = FourierFunction::cosine(k, 1.0);
            let s = FourierFunction::sine(k, 1.0);
            assert!(close(c.inner(&c), 1.0, 1e-15));
            assert!(close(s.inner(&s), 1.0, 1e-15));
            assert!(close(c.inner(&s), 0.0, 1e-15));
            assert!(close(c.inner(&e0), 0.0, 1e-15));
        }
    }

    #[test]
    fn arc_integral_matches_quadrature() {
        let f = FourierFunction::new(
            0.3,
            [Harmonic { k: 2, cos: 0.8, sin: -0.1 }, Harmonic { k: 3, cos: 0.0, sin: 0.6 }],
        )
        .unwrap();
        // fine Riemann sum oracle on [0.4, 2.9]
        let (a, b) = (0.4, 2.9);
        let n = 2_000_000;
        let h = (b - a) / n as f64;
        let riemann: f64 = (0..n).map(|i| f.eval(a + (i as f64 + 0.5) * h) * h).sum();
        assert!(close(f.integrate_arc(a, b), riemann, 1e-9));
    }

    #[test]
    fn projection_is_exact_on_band_limited_input() {
        let target = FourierFunction::new(
            0.7,
            [Harmonic { k: 2, cos: 0.4, sin: 0.9 }, Harmonic { k: 6, cos: -1.0, sin: 0.0 }],
        )
        .unwrap();
        let (proj, loss) = FourierFunction::project(|phi| target.eval(phi), 8, 64).unwrap();
        assert!(loss < 1e-13);
        for i in 0..32 {
            let phi = 0.2 * i as f64;
            assert!(close(proj.eval(phi), target.eval(phi), 1e-12));
        }
    }

    #[test]
    fn projection_reports_loss_for_rough_input() {
        // |cos φ| has an infinite Fourier tail
        let (_, loss) = FourierFunction::project(|phi| phi.cos().abs(), 4, 128).unwrap();
        assert!(loss > 1e-3);
    }

    #[test]
    fn serde_round_trip_and_rejects() {
        let f = FourierFunction::new(
            0.25,
            [Harmonic { k: 2, cos: 1.0, sin: -0.5 }],
        )
        .unwrap();
        let json = serde_json::to_string(&f).unwrap();
        assert_eq!(json, r#"{"a0":0.25,"harmonics":[[2,1.0,-0.5]]}"#);
        let back: FourierFunction = serde_json::from_str(&json).unwrap();
        assert_eq!(back, f);

        assert!(serde_json::from_str::<FourierFunction>(r#"{"a0":0,"harmonics":[[0,1,0]]}"#).is_err());
        assert!(serde_json::from_str::<FourierFunction>(
            r#"{"a0":0,"harmonics":[[2,1,0],[2,0,1]]}"#
        )
        .is_err());
        assert!(serde_json::from_str::<FourierFunction>(r#"{"a0":0,"harmonics":[],"x":1}"#).is_err());
    }
}
