//! Effects, dichotomic POVMs and joint measurability.
//!
//! An effect `A(α,φ,r) = (α/2)·1 + (r/2)σ_{2φ}` has eigenvalues `α/2 ± r/2`,
//! so `0 ≤ A ≤ 1` is exactly `r ≤ α ≤ 2 − r`.  Each effect is embedded as the
//! plane vector `v = r(cos 2φ, sin 2φ)`: the doubled angle is forced by the
//! eigenvalue computation for differences like `A₁ − G₁₁`, whose positivity
//! reads `‖v₁ − v‖ ≤ α₁ − α` only in this embedding.
//!
//! Joint measurability of two dichotomic POVMs then reduces to a planar
//! geometry problem: a joint observable exists iff some `(α, v)` satisfies
//!
//! ```text
//! ‖v‖ ≤ α                    (G₁₁ ≥ 0)
//! ‖v₁ − v‖ ≤ α₁ − α          (G₁₀ ≥ 0)
//! ‖v₂ − v‖ ≤ α₂ − α          (G₀₁ ≥ 0)
//! ‖v − v₁ − v₂‖ ≤ 2 − α₁ − α₂ + α   (G₀₀ ≥ 0)
//! ```
//!
//! At fixed `α` this is a nonempty-intersection question for four closed
//! disks, settled exactly by finite candidate-point geometry (centers,
//! pairwise minimax points, three-circle equal-offset points) — no
//! semidefinite solver.  The constraints are jointly convex in `(α, v)`, so
//! the feasible `α` set is an interval and the signed feasibility slack is
//! concave in `α`; the decision scans a grid, refines the concave maximum,
//! and reports `Undetermined` inside the `±tol` boundary band rather than
//! guessing.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::Mat2;
use crate::plane_states::{projector, SymMat2};

/// Validation slack for joint-POVM construction; solver outputs sit on the
/// feasibility boundary by design.
const CHOICE_TOL: f64 = 1e-11;

/// Default boundary band of the compatibility decision.
pub const DEFAULT_DECISION_TOL: f64 = 1e-9;

/// The effect `A(α,φ,r)` with `r ≤ α ≤ 2 − r`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawEffect", into = "RawEffect")]
pub struct Effect {
    alpha: f64,
    phi: f64,
    r: f64,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawEffect {
    alpha: f64,
    phi: f64,
    r: f64,
}

impl TryFrom<RawEffect> for Effect {
    type Error = Error;
    fn try_from(raw: RawEffect) -> Result<Self> {
        Effect::new(raw.alpha, raw.phi, raw.r)
    }
}

impl From<Effect> for RawEffect {
    fn from(e: Effect) -> Self {
        RawEffect { alpha: e.alpha, phi: e.phi, r: e.r }
    }
}

impl Effect {
    pub fn new(alpha: f64, phi: f64, r: f64) -> Result<Self> {
        if !alpha.is_finite() || !phi.is_finite() || !r.is_finite() {
            return Err(Error::domain("non-finite effect parameter"));
        }
        if r < 0.0 {
            return Err(Error::domain(format!("effect needs r ≥ 0, got {r}")));
        }
        if alpha < r || alpha > 2.0 - r {
            return Err(Error::domain(format!(
                "effect condition r ≤ α ≤ 2 − r violated: α = {alpha}, r = {r}"
            )));
        }
        Ok(Effect { alpha, phi, r })
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn phi(&self) -> f64 {
        self.phi
    }

    pub fn r(&self) -> f64 {
        self.r
    }

    /// `A(α,φ,r) = (α/2)·1 + (r/2)(cos 2φ·σ₃ + sin 2φ·σ₁)`.
    pub fn matrix(&self) -> SymMat2 {
        let (s2, c2) = (2.0 * self.phi).sin_cos();
        SymMat2::from_pauli(self.alpha / 2.0, 0.5 * self.r * c2, 0.5 * self.r * s2)
    }

    /// Eigenvalues `(α/2 + r/2, α/2 − r/2)`.
    pub fn eigenvalues(&self) -> (f64, f64) {
        ((self.alpha + self.r) / 2.0, (self.alpha - self.r) / 2.0)
    }

    /// Plane embedding `v = r(cos 2φ, sin 2φ)`.
    pub fn bloch_vec(&self) -> BlochVec {
        let (s2, c2) = (2.0 * self.phi).sin_cos();
        BlochVec {
            x: self.r * c2,
            y: self.r * s2,
        }
    }
}

/// Plane vector carrying an effect's sharp direction and sharpness.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BlochVec {
    pub x: f64,
    pub y: f64,
}

impl BlochVec {
    pub const ZERO: BlochVec = BlochVec { x: 0.0, y: 0.0 };

    pub fn new(x: f64, y: f64) -> Self {
        BlochVec { x, y }
    }

    pub fn norm(&self) -> f64 {
        self.x.hypot(self.y)
    }

    pub fn add(&self, o: &Self) -> Self {
        BlochVec::new(self.x + o.x, self.y + o.y)
    }

    pub fn sub(&self, o: &Self) -> Self {
        BlochVec::new(self.x - o.x, self.y - o.y)
    }

    pub fn scale(&self, s: f64) -> Self {
        BlochVec::new(self.x * s, self.y * s)
    }

    pub fn dist(&self, o: &Self) -> f64 {
        self.sub(o).norm()
    }
}

/// Two-outcome observable `{A, 1 − A}`; both outcomes must be effects.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DichotomicPovm {
    plus: SymMat2,
    minus: SymMat2,
}

impl DichotomicPovm {
    pub fn from_plus(plus: SymMat2) -> Result<Self> {
        if !plus.is_effect(1e-10) {
            return Err(Error::domain("outcome operator is not an effect"));
        }
        Ok(DichotomicPovm {
            plus,
            minus: SymMat2::identity() - plus,
        })
    }

    pub fn plus(&self) -> SymMat2 {
        self.plus
    }

    pub fn minus(&self) -> SymMat2 {
        self.minus
    }
}

/// Column-stochastic post-processing kernel on two outcomes, stored through
/// `μ(+,+)` and `μ(+,−)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MarkovKernel2 {
    mu_pp: f64,
    mu_pm: f64,
}

impl MarkovKernel2 {
    pub fn new(mu_pp: f64, mu_pm: f64) -> Result<Self> {
        for (name, v) in [("μ(+,+)", mu_pp), ("μ(+,−)", mu_pm)] {
            if !(0.0..=1.0).contains(&v) {
                return Err(Error::domain(format!("{name} = {v} outside [0, 1]")));
            }
        }
        Ok(MarkovKernel2 { mu_pp, mu_pm })
    }

    pub fn mu_pp(&self) -> f64 {
        self.mu_pp
    }

    pub fn mu_pm(&self) -> f64 {
        self.mu_pm
    }

    /// The kernel that turns the sharp PVM at `φ` into `A(α,φ,r)`:
    /// `μ(+,+) = (α+r)/2`, `μ(+,−) = (α−r)/2`.
    pub fn for_effect(e: &Effect) -> Self {
        MarkovKernel2 {
            mu_pp: (e.alpha() + e.r()) / 2.0,
            mu_pm: (e.alpha() - e.r()) / 2.0,
        }
    }
}

/// Randomization of the sharp PVM `{E_φ, 1 − E_φ}` by a Markov kernel:
/// `F₊ = μ(+,+)·E_φ + μ(+,−)·(1 − E_φ)`.
pub fn fuzzify(phi: f64, kernel: &MarkovKernel2) -> DichotomicPovm {
    let e = projector(phi);
    let plus = e.scale(kernel.mu_pp()) + (SymMat2::identity() - e).scale(kernel.mu_pm());
    DichotomicPovm::from_plus(plus).expect("convex combination of effects")
}

/// The dichotomic POVM of the two-polarizer-then-detector sequence:
/// `F₊ = E_first E_second E_first = cos²(first − second)·E_first`, computed
/// here by the actual operator product.
pub fn sequential_povm(first: f64, second: f64) -> DichotomicPovm {
    let e1 = projector(first).to_mat2();
    let e2 = projector(second).to_mat2();
    let prod = e1 * e2 * e1;
    let plus = SymMat2::from_mat2(&prod, 1e-12).expect("E₁E₂E₁ is symmetric");
    DichotomicPovm::from_plus(plus).expect("E₁E₂E₁ is an effect")
}

/// Detector statistics of the sequential measurement on a density matrix:
/// `(p(D=1), p(D=0))`.
pub fn sequential_probabilities(rho: &SymMat2, first: f64, second: f64) -> Result<(f64, f64)> {
    if !rho.is_density(1e-10) {
        return Err(Error::domain("input is not a density matrix"));
    }
    let povm = sequential_povm(first, second);
    Ok((rho.hs_inner(&povm.plus()), rho.hs_inner(&povm.minus())))
}

/// `‖v₁+v₂‖ + ‖v₁−v₂‖ ≤ 2`, necessary for compatibility (and sufficient for
/// unbiased pairs).  Returns `(holds, value)`.
pub fn necessary_condition(e1: &Effect, e2: &Effect) -> (bool, f64) {
    let (v1, v2) = (e1.bloch_vec(), e2.bloch_vec());
    let value = v1.add(&v2).norm() + v1.sub(&v2).norm();
    (value <= 2.0 + 1e-12, value)
}

/// Four-outcome joint observable with the two inputs as marginals.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct JointPovm {
    pub g11: SymMat2,
    pub g10: SymMat2,
    pub g01: SymMat2,
    pub g00: SymMat2,
}

/// Summary of a joint observable's defects, all of which should sit at
/// rounding level for a valid construction.
#[derive(Debug, Clone, Copy)]
pub struct JointValidation {
    /// Worst entry error of `G₁₁+G₁₀ = A₁` and `G₁₁+G₀₁ = A₂`.
    pub marginal_residual: f64,
    /// Worst entry error of `ΣG = 1`.
    pub sum_residual: f64,
    /// Smallest eigenvalue across the four outcomes.
    pub min_eigenvalue: f64,
}

impl JointPovm {
    pub fn validate(&self, e1: &Effect, e2: &Effect) -> JointValidation {
        let a1 = e1.matrix();
        let a2 = e2.matrix();
        let marginal_residual = (self.g11 + self.g10)
            .max_abs_diff(&a1)
            .max((self.g11 + self.g01).max_abs_diff(&a2));
        let sum = self.g11 + self.g10 + self.g01 + self.g00;
        JointValidation {
            marginal_residual,
            sum_residual: sum.max_abs_diff(&SymMat2::identity()),
            min_eigenvalue: [self.g11, self.g10, self.g01, self.g00]
                .iter()
                .map(|g| g.min_eigenvalue())
                .fold(f64::INFINITY, f64::min),
        }
    }
}

/// Builds the joint observable determined by a choice of `G₁₁ ↔ (α, v)`,
/// refusing choices that violate any of the four positivity conditions; the
/// error names the first violated one.
pub fn joint_from_choice(e1: &Effect, e2: &Effect, alpha: f64, v: BlochVec) -> Result<JointPovm> {
    let (v1, v2) = (e1.bloch_vec(), e2.bloch_vec());
    let (a1, a2) = (e1.alpha(), e2.alpha());
    let checks = [
        ("positivity of G11: ‖v‖ ≤ α", v.norm(), alpha),
        ("positivity of G10: ‖v1 − v‖ ≤ α1 − α", v1.dist(&v), a1 - alpha),
        ("positivity of G01: ‖v2 − v‖ ≤ α2 − α", v2.dist(&v), a2 - alpha),
        (
            "A1 + A2 − G11 ≤ 1: ‖v − v1 − v2‖ ≤ 2 − α1 − α2 + α",
            v.sub(&v1.add(&v2)).norm(),
            2.0 - a1 - a2 + alpha,
        ),
    ];
    for (name, lhs, rhs) in checks {
        if lhs > rhs + CHOICE_TOL {
            return Err(Error::InfeasibleChoice(format!("{name} fails: {lhs:.3e} > {rhs:.3e}")));
        }
    }
    let g11 = SymMat2::from_pauli(alpha / 2.0, v.x / 2.0, v.y / 2.0);
    let a1m = e1.matrix();
    let a2m = e2.matrix();
    Ok(JointPovm {
        g11,
        g10: a1m - g11,
        g01: a2m - g11,
        g00: SymMat2::identity() - a1m - a2m + g11,
    })
}

/// One sample of the feasibility scan.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct AlphaSlack {
    pub alpha: f64,
    pub slack: f64,
}

/// Outcome of the joint-measurability decision.
#[derive(Debug, Clone)]
pub enum CompatibilityDecision {
    /// A joint observable exists; `alpha` is the largest feasible value and
    /// `v` the feasible point closest to `(v₁+v₂)/2` there.
    Compatible {
        alpha: f64,
        v: BlochVec,
        joint: JointPovm,
        max_slack: f64,
    },
    /// The scan certifies an empty feasible set at every α, with margin
    /// below `−tol`.
    Incompatible { max_slack: f64, scan: Vec<AlphaSlack> },
    /// The maximal slack sits inside the `±tol` boundary band; neither
    /// verdict can be certified numerically.
    Undetermined { max_slack: f64 },
}

impl CompatibilityDecision {
    pub fn max_slack(&self) -> f64 {
        match self {
            CompatibilityDecision::Compatible { max_slack, .. }
            | CompatibilityDecision::Incompatible { max_slack, .. }
            | CompatibilityDecision::Undetermined { max_slack } => *max_slack,
        }
    }
}

/// Decides joint measurability of two dichotomic POVMs given by their `+`
/// effects, with the boundary band `±tol` (pass 0 to use
/// [`DEFAULT_DECISION_TOL`]).
pub fn compatibility_decide(e1: &Effect, e2: &Effect, tol: f64) -> CompatibilityDecision {
    let tol = if tol > 0.0 { tol } else { DEFAULT_DECISION_TOL };
    let (v1, v2) = (e1.bloch_vec(), e2.bloch_vec());
    let (a1, a2) = (e1.alpha(), e2.alpha());
    let lo = (a1 + a2 - 2.0).max(0.0);
    let hi = a1.min(a2);

    let disks_at = |alpha: f64| {
        [
            Disk { c: BlochVec::ZERO, rad: alpha },
            Disk { c: v1, rad: a1 - alpha },
            Disk { c: v2, rad: a2 - alpha },
            Disk { c: v1.add(&v2), rad: 2.0 - a1 - a2 + alpha },
        ]
    };
    let slack_at = |alpha: f64| -min_max_excess(&disks_at(alpha)).0;

    // coarse grid, then concave refinement around the best sample
    const GRID: usize = 256;
    let mut scan = Vec::with_capacity(GRID + 1);
    let mut best = (lo, f64::NEG_INFINITY);
    for i in 0..=GRID {
        let alpha = lo + (hi - lo) * i as f64 / GRID as f64;
        let slack = slack_at(alpha);
        scan.push(AlphaSlack { alpha, slack });
        if slack > best.1 {
            best = (alpha, slack);
        }
    }
    let step = (hi - lo) / GRID as f64;
    let (mut tlo, mut thi) = ((best.0 - step).max(lo), (best.0 + step).min(hi));
    for _ in 0..120 {
        let m1 = tlo + (thi - tlo) / 3.0;
        let m2 = thi - (thi - tlo) / 3.0;
        if slack_at(m1) < slack_at(m2) {
            tlo = m1;
        } else {
            thi = m2;
        }
    }
    let refined = 0.5 * (tlo + thi);
    let max_slack = best.1.max(slack_at(refined));
    let alpha_at_max = if slack_at(refined) >= best.1 { refined } else { best.0 };

    if max_slack < -tol {
        return CompatibilityDecision::Incompatible { max_slack, scan };
    }
    if max_slack <= tol {
        return CompatibilityDecision::Undetermined { max_slack };
    }

    // maximize α over the feasible interval by bisection
    let alpha_star = if slack_at(hi) >= 0.0 {
        hi
    } else {
        let (mut flo, mut fhi) = (alpha_at_max, hi);
        for _ in 0..60 {
            let mid = 0.5 * (flo + fhi);
            if slack_at(mid) >= 0.0 {
                flo = mid;
            } else {
                fhi = mid;
            }
        }
        flo
    };

    // tie-break the remaining freedom toward the midpoint construction
    let target = v1.add(&v2).scale(0.5);
    let disks = disks_at(alpha_star);
    let v = closest_feasible_point(&disks, target)
        .unwrap_or_else(|| min_max_excess(&disks).1);

    match joint_from_choice(e1, e2, alpha_star, v) {
        Ok(joint) => CompatibilityDecision::Compatible {
            alpha: alpha_star,
            v,
            joint,
            max_slack,
        },
        // the boundary construction can fail only through rounding; report
        // the honest boundary verdict instead of a broken certificate
        Err(_) => CompatibilityDecision::Undetermined { max_slack },
    }
}

/* Planar disk geometry ******************************************************/

/// Closed disk; a negative radius is an empty constraint set.
#[derive(Debug, Clone, Copy)]
pub struct Disk {
    pub c: BlochVec,
    pub rad: f64,
}

impl Disk {
    /// Signed violation of `p` against the disk: `‖p − c‖ − rad`.
    fn excess(&self, p: &BlochVec) -> f64 {
        self.c.dist(p) - self.rad
    }
}

fn max_excess(disks: &[Disk], p: &BlochVec) -> f64 {
    disks
        .iter()
        .map(|d| d.excess(p))
        .fold(f64::NEG_INFINITY, f64::max)
}

/// Exact minimization of `max_i (‖v − cᵢ‖ − radᵢ)` over the plane.
///
/// At the optimum either one cone is active (its center), two are active
/// (the balanced point on the segment between the two centers), or three are
/// active (an equal-offset Apollonius point); every such point is emitted as
/// a candidate and the best one returned.
pub fn min_max_excess(disks: &[Disk]) -> (f64, BlochVec) {
    let mut best = (f64::INFINITY, BlochVec::ZERO);
    let mut consider = |p: BlochVec| {
        if !p.x.is_finite() || !p.y.is_finite() {
            return;
        }
        let val = max_excess(disks, &p);
        if val < best.0 {
            best = (val, p);
        }
    };

    for d in disks {
        consider(d.c);
    }
    for (i, di) in disks.iter().enumerate() {
        for dj in disks.iter().skip(i + 1) {
            let sep = di.c.dist(&dj.c);
            if sep > 0.0 {
                // balance point of the two cones along the center segment
                let t = ((sep + di.rad - dj.rad) / 2.0).clamp(0.0, sep);
                consider(di.c.add(&dj.c.sub(&di.c).scale(t / sep)));
            }
        }
    }
    for i in 0..disks.len() {
        for j in (i + 1)..disks.len() {
            for k in (j + 1)..disks.len() {
                for p in equal_offset_points(&disks[i], &disks[j], &disks[k]) {
                    consider(p);
                }
            }
        }
    }
    best
}

/// Solutions `v` of `‖v − cᵢ‖ − radᵢ = t` for all three disks (any `t`):
/// subtracting pairs leaves a linear system in `(v, t)`, leaving one
/// quadratic in `t`.
fn equal_offset_points(d1: &Disk, d2: &Disk, d3: &Disk) -> Vec<BlochVec> {
    let row = |da: &Disk, db: &Disk| {
        (
            2.0 * (db.c.x - da.c.x),
            2.0 * (db.c.y - da.c.y),
            2.0 * (db.rad - da.rad),
            (db.c.x * db.c.x + db.c.y * db.c.y - db.rad * db.rad)
                - (da.c.x * da.c.x + da.c.y * da.c.y - da.rad * da.rad),
        )
    };
    let (a1, b1, g1, k1) = row(d1, d2);
    let (a2, b2, g2, k2) = row(d1, d3);
    let det = a1 * b2 - a2 * b1;
    let scale = (a1.abs() + b1.abs() + a2.abs() + b2.abs()).max(1e-30);
    if det.abs() < 1e-14 * scale * scale {
        // collinear centers: no isolated three-active point
        return Vec::new();
    }
    // v = p + t·q
    let px = (k1 * b2 - k2 * b1) / det;
    let py = (a1 * k2 - a2 * k1) / det;
    let qx = (-g1 * b2 + g2 * b1) / det;
    let qy = (-a1 * g2 + a2 * g1) / det;

    // substitute into ‖v − c₁‖² = (rad₁ + t)²
    let (ex, ey) = (px - d1.c.x, py - d1.c.y);
    let qa = qx * qx + qy * qy - 1.0;
    let qb = 2.0 * (ex * qx + ey * qy - d1.rad);
    let qc = ex * ex + ey * ey - d1.rad * d1.rad;

    let mut out = Vec::new();
    let mut push_t = |t: f64| {
        if t.is_finite() {
            out.push(BlochVec::new(px + t * qx, py + t * qy));
        }
    };
    if qa.abs() < 1e-14 {
        if qb.abs() > 1e-300 {
            push_t(-qc / qb);
        }
    } else {
        let disc = qb * qb - 4.0 * qa * qc;
        if disc >= 0.0 {
            let sq = disc.sqrt();
            push_t((-qb + sq) / (2.0 * qa));
            push_t((-qb - sq) / (2.0 * qa));
        }
    }
    out
}

/// Intersection points of two circles' boundaries, if any.  Near-tangent
/// configurations (within `SLOP`) return the clamped tangency point twice:
/// the exact tests below run on floating data, and a strict cutoff would
/// drop boundary witnesses.
fn circle_intersections(d1: &Disk, d2: &Disk) -> Option<(BlochVec, BlochVec)> {
    const SLOP: f64 = 1e-9;
    let sep = d1.c.dist(&d2.c);
    if sep == 0.0 || d1.rad < 0.0 || d2.rad < 0.0 {
        return None;
    }
    if sep > d1.rad + d2.rad + SLOP || sep < (d1.rad - d2.rad).abs() - SLOP {
        return None;
    }
    let t = (d1.rad * d1.rad - d2.rad * d2.rad + sep * sep) / (2.0 * sep);
    let h = (d1.rad * d1.rad - t * t).max(0.0).sqrt();
    let dir = d2.c.sub(&d1.c).scale(1.0 / sep);
    let base = d1.c.add(&dir.scale(t));
    let normal = BlochVec::new(-dir.y, dir.x);
    Some((base.add(&normal.scale(h)), base.sub(&normal.scale(h))))
}

/// Candidate-point emptiness test: a nonempty intersection of closed disks
/// always contains a disk center or a pairwise boundary intersection point.
///
/// Exact in real arithmetic; on floating data boundary-degenerate systems
/// (common-point tangencies) are resolved within ~1e−9, which is why the
/// decision layer treats that band as Undetermined.
pub fn disks_intersect(disks: &[Disk]) -> bool {
    const EPS: f64 = 1e-9;
    if disks.iter().any(|d| d.rad < 0.0) {
        return false;
    }
    for d in disks {
        if max_excess(disks, &d.c) <= EPS {
            return true;
        }
    }
    for (i, di) in disks.iter().enumerate() {
        for dj in disks.iter().skip(i + 1) {
            if let Some((p, q)) = circle_intersections(di, dj) {
                if max_excess(disks, &p) <= EPS || max_excess(disks, &q) <= EPS {
                    return true;
                }
            }
        }
    }
    false
}

/// Helly reduction in the plane: four disks intersect iff all four triples
/// do.  Kept alongside the direct candidate test; the two must agree.
pub fn helly_intersect(disks: &[Disk; 4]) -> bool {
    (0..4).all(|skip| {
        let triple: Vec<Disk> = disks
            .iter()
            .enumerate()
            .filter(|(i, _)| *i != skip)
            .map(|(_, d)| *d)
            .collect();
        disks_intersect(&triple)
    })
}

/// Closest point of the disk intersection to `target`, or `None` if the
/// intersection is empty at tolerance.  Either the target itself is
/// feasible, or the optimum lies on one active circle (radial projection) or
/// at a vertex (pairwise boundary intersection).
fn closest_feasible_point(disks: &[Disk], target: BlochVec) -> Option<BlochVec> {
    const EPS: f64 = 1e-11;
    if max_excess(disks, &target) <= EPS {
        return Some(target);
    }
    let mut best: Option<(f64, BlochVec)> = None;
    let mut consider = |p: BlochVec| {
        if max_excess(disks, &p) <= EPS {
            let d = p.dist(&target);
            if best.is_none_or(|(bd, _)| d < bd) {
                best = Some((d, p));
            }
        }
    };
    for d in disks {
        if d.rad >= 0.0 {
            let sep = d.c.dist(&target);
            if sep > 0.0 {
                consider(d.c.add(&target.sub(&d.c).scale(d.rad / sep)));
            } else {
                consider(d.c);
            }
        }
    }
    for (i, di) in disks.iter().enumerate() {
        for dj in disks.iter().skip(i + 1) {
            if let Some((p, q)) = circle_intersections(di, dj) {
                consider(p);
                consider(q);
            }
        }
    }
    best.map(|(_, p)| p)
}

/// Convenience: the matrix of the identity-complement effect `1 − A`.
pub fn complement(e: &Effect) -> SymMat2 {
    SymMat2::identity() - e.matrix()
}

/// The commutator `[A₁, A₂]` of two effect matrices; zero exactly when the
/// sharp directions align mod π/2.
pub fn effect_commutator(e1: &Effect, e2: &Effect) -> Mat2 {
    crate::plane_states::commutator(&e1.matrix().to_mat2(), &e2.matrix().to_mat2())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::DMat;
    use std::f64::consts::PI;
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    const TOL: f64 = 1e-12;

    fn random_effect(rng: &mut ChaCha8Rng) -> Effect {
        let r: f64 = rng.random_range(0.0..1.0);
        let alpha = rng.random_range(r..=(2.0 - r));
        Effect::new(alpha, rng.random_range(0.0..PI), r).unwrap()
    }

    #[test]
    fn effect_matrix_examples() {
        // A(1, φ, 1) is the projector E_φ
        let e = Effect::new(1.0, 0.77, 1.0).unwrap();
        assert!(e.matrix().max_abs_diff(&projector(0.77)) <= TOL);
        // ½E_{π/2} = A(½, π/2, ½)
        let e = Effect::new(0.5, PI / 2.0, 0.5).unwrap();
        assert!(e.matrix().max_abs_diff(&projector(PI / 2.0).scale(0.5)) <= TOL);
        // A(1, 0, ½) = diag(3/4, 1/4)
        let e = Effect::new(1.0, 0.0, 0.5).unwrap();
        assert!(e.matrix().max_abs_diff(&SymMat2::new(0.75, 0.0, 0.25)) <= TOL);
    }

    #[test]
    fn effect_condition_is_enforced() {
        assert!(Effect::new(0.4, 0.0, 0.5).is_err()); // α < r
        assert!(Effect::new(1.7, 0.0, 0.5).is_err()); // α > 2 − r
        assert!(Effect::new(0.5, 0.0, -0.1).is_err());
        assert!(Effect::new(0.5, 0.0, 0.5).is_ok()); // boundary allowed
        assert!(Effect::new(1.5, 0.0, 0.5).is_ok());
    }

    #[test]
    fn effect_eigenvalues_match_generic_solver() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..1000 {
            let e = random_effect(&mut rng);
            let m = e.matrix();
            let mut d = DMat::zeros(2);
            d[(0, 0)] = m.a;
            d[(0, 1)] = m.b;
            d[(1, 0)] = m.b;
            d[(1, 1)] = m.d;
            let eig = d.symmetric_eigenvalues();
            let (hi, lo) = e.eigenvalues();
            assert!((eig[1] - hi).abs() <= 1e-12 && (eig[0] - lo).abs() <= 1e-12);
            assert!((0.0..=1.0 + 1e-12).contains(&hi) && lo >= -1e-12);
        }
    }

    #[test]
    fn fuzzify_examples() {
        // identity kernel keeps the PVM sharp
        let sharp = fuzzify(0.6, &MarkovKernel2::new(1.0, 0.0).unwrap());
        assert!(sharp.plus().max_abs_diff(&projector(0.6)) <= TOL);

        // μ(+,+) = ½, μ(+,−) = 0 at φ = π/2 gives {½E_{π/2}, 1 − ½E_{π/2}}
        let seq = fuzzify(PI / 2.0, &MarkovKernel2::new(0.5, 0.0).unwrap());
        assert!(seq.plus().max_abs_diff(&projector(PI / 2.0).scale(0.5)) <= TOL);
        assert!(seq
            .minus()
            .max_abs_diff(&(SymMat2::identity() - projector(PI / 2.0).scale(0.5)))
            <= TOL);

        // the ((α+r)/2, (α−r)/2) kernel reproduces A(α,φ,r)
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..100 {
            let e = random_effect(&mut rng);
            let povm = fuzzify(e.phi(), &MarkovKernel2::for_effect(&e));
            assert!(povm.plus().max_abs_diff(&e.matrix()) <= TOL);
        }

        assert!(MarkovKernel2::new(1.2, 0.0).is_err());
    }

    #[test]
    fn sequential_examples() {
        // vertical then oblique: {½E_{π/2}, E₀ + ½E_{π/2}}
        let f = sequential_povm(PI / 2.0, PI / 4.0);
        assert!(f.plus().max_abs_diff(&projector(PI / 2.0).scale(0.5)) <= TOL);
        let want_minus = projector(0.0) + projector(PI / 2.0).scale(0.5);
        assert!(f.minus().max_abs_diff(&want_minus) <= TOL);

        // repeated identical polarizer is the sharp PVM
        let f = sequential_povm(0.8, 0.8);
        assert!(f.plus().max_abs_diff(&projector(0.8)) <= TOL);

        // crossed polarizers transmit nothing
        let f = sequential_povm(0.0, PI / 2.0);
        assert!(f.plus().max_abs() <= TOL);
    }

    #[test]
    fn sequential_probability_examples() {
        let half = SymMat2::identity().scale(0.5);
        let (p1, p0) = sequential_probabilities(&half, PI / 2.0, PI / 4.0).unwrap();
        assert!((p1 - 0.25).abs() <= TOL && (p0 - 0.75).abs() <= TOL);

        let vertical = projector(PI / 2.0);
        let (p1, _) = sequential_probabilities(&vertical, PI / 2.0, PI / 4.0).unwrap();
        assert!((p1 - 0.5).abs() <= TOL);

        // order reversal on the same state: ¼ instead of ½
        let (p1_rev, p0_rev) = sequential_probabilities(&vertical, PI / 4.0, PI / 2.0).unwrap();
        assert!((p1_rev - 0.25).abs() <= TOL);
        assert!((p1_rev + p0_rev - 1.0).abs() <= TOL);

        assert!(sequential_probabilities(&SymMat2::identity(), 0.0, 1.0).is_err());
    }

    #[test]
    fn bloch_examples() {
        let v = Effect::new(0.5, PI / 2.0, 0.5).unwrap().bloch_vec();
        assert!((v.x + 0.5).abs() <= TOL && v.y.abs() <= TOL);
        let v = Effect::new(0.5, PI / 4.0, 0.5).unwrap().bloch_vec();
        assert!(v.x.abs() <= TOL && (v.y - 0.5).abs() <= TOL);
        let v = Effect::new(1.0, 1.3, 0.0).unwrap().bloch_vec();
        assert!(v.norm() <= TOL);
    }

    #[test]
    fn carnot_distance_identity() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..200 {
            let e1 = random_effect(&mut rng);
            let e2 = random_effect(&mut rng);
            let d2 = e1.bloch_vec().dist(&e2.bloch_vec()).powi(2);
            let want = e1.r().powi(2) + e2.r().powi(2)
                - 2.0 * e1.r() * e2.r() * (2.0 * (e1.phi() - e2.phi())).cos();
            assert!((d2 - want).abs() <= 1e-12);
        }
    }

    #[test]
    fn necessary_condition_examples() {
        let e = Effect::new(0.9, 0.4, 0.6).unwrap();
        let (holds, value) = necessary_condition(&e, &e);
        assert!(holds && (value - 1.2).abs() <= TOL);

        let e1 = Effect::new(0.5, PI / 2.0, 0.5).unwrap();
        let e2 = Effect::new(0.5, PI / 4.0, 0.5).unwrap();
        let (holds, value) = necessary_condition(&e1, &e2);
        assert!(holds);
        assert!((value - 2f64.sqrt()).abs() <= 1e-12);

        let p1 = Effect::new(1.0, 0.0, 1.0).unwrap();
        let p2 = Effect::new(1.0, PI / 4.0, 1.0).unwrap();
        let (holds, value) = necessary_condition(&p1, &p2);
        assert!(!holds);
        assert!((value - 2.0 * 2f64.sqrt()).abs() <= 1e-12);
    }

    #[test]
    fn identical_mixed_effects_are_compatible_with_g11_a1() {
        let e = Effect::new(0.9, 0.7, 0.4).unwrap();
        match compatibility_decide(&e, &e, 1e-9) {
            CompatibilityDecision::Compatible { alpha, v, joint, .. } => {
                assert!((alpha - 0.9).abs() <= 1e-9);
                assert!(v.dist(&e.bloch_vec()) <= 1e-9);
                assert!(joint.g11.max_abs_diff(&e.matrix()) <= 1e-9);
                assert!(joint.g10.max_abs() <= 1e-9);
                assert!(joint.g01.max_abs() <= 1e-9);
                let val = joint.validate(&e, &e);
                assert!(val.marginal_residual <= 1e-10);
                assert!(val.min_eigenvalue >= -1e-10);
            }
            other => panic!("expected Compatible, got {other:?}"),
        }
    }

    #[test]
    fn sequential_pair_sits_exactly_on_the_boundary() {
        // A(½,π/2,½) and A(½,π/4,½) admit exactly one joint observable, the
        // boundary choice G₁₁ = 0 (their sum is below the identity), so the
        // tolerance-honest verdict is Undetermined with slack ≈ 0.
        let e1 = Effect::new(0.5, PI / 2.0, 0.5).unwrap();
        let e2 = Effect::new(0.5, PI / 4.0, 0.5).unwrap();
        match compatibility_decide(&e1, &e2, 1e-9) {
            CompatibilityDecision::Undetermined { max_slack } => {
                assert!(max_slack.abs() <= 1e-12, "slack {max_slack}");
            }
            other => panic!("expected Undetermined, got {other:?}"),
        }
        // the boundary joint exists and is valid: G₁₁ = 0
        let joint = joint_from_choice(&e1, &e2, 0.0, BlochVec::ZERO).unwrap();
        let val = joint.validate(&e1, &e2);
        assert!(val.marginal_residual <= 1e-12);
        assert!(val.sum_residual <= 1e-12);
        assert!(val.min_eigenvalue >= -1e-12);
    }

    #[test]
    fn unbiased_pairs_decide_by_the_necessary_condition() {
        let mut rng = ChaCha8Rng::seed_from_u64(21);
        let mut seen_both = (false, false);
        for _ in 0..100 {
            let e1 = Effect::new(1.0, rng.random_range(0.0..PI), rng.random_range(0.0..1.0)).unwrap();
            let e2 = Effect::new(1.0, rng.random_range(0.0..PI), rng.random_range(0.0..1.0)).unwrap();
            let (_, value) = necessary_condition(&e1, &e2);
            if (value - 2.0).abs() < 1e-7 {
                continue;
            }
            match compatibility_decide(&e1, &e2, 1e-9) {
                CompatibilityDecision::Compatible { alpha, v, joint, .. } => {
                    assert!(value < 2.0, "compatible but necessary fails: {value}");
                    seen_both.0 = true;
                    // tie-break recovers the midpoint construction
                    let mid = e1.bloch_vec().add(&e2.bloch_vec()).scale(0.5);
                    let want_alpha = 1.0 - e1.bloch_vec().dist(&e2.bloch_vec()) / 2.0;
                    assert!(v.dist(&mid) <= 1e-8);
                    assert!((alpha - want_alpha).abs() <= 1e-8);
                    let val = joint.validate(&e1, &e2);
                    assert!(val.marginal_residual <= 1e-10);
                    assert!(val.min_eigenvalue >= -1e-10);
                }
                CompatibilityDecision::Incompatible { .. } => {
                    assert!(value > 2.0, "incompatible but necessary holds: {value}");
                    seen_both.1 = true;
                }
                CompatibilityDecision::Undetermined { max_slack } => {
                    panic!("undetermined far from the boundary: value {value}, slack {max_slack}")
                }
            }
        }
        assert!(seen_both.0 && seen_both.1, "sweep did not exercise both verdicts");
    }

    #[test]
    fn biased_compatible_verdicts_validate() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let mut compatible = 0;
        for _ in 0..200 {
            let e1 = random_effect(&mut rng);
            let e2 = random_effect(&mut rng);
            if let CompatibilityDecision::Compatible { joint, .. } =
                compatibility_decide(&e1, &e2, 1e-9)
            {
                compatible += 1;
                let val = joint.validate(&e1, &e2);
                assert!(val.marginal_residual <= 1e-10);
                assert!(val.sum_residual <= 1e-10);
                assert!(val.min_eigenvalue >= -1e-10);
            }
        }
        assert!(compatible > 20, "sweep produced too few compatible pairs: {compatible}");
    }

    #[test]
    fn commuting_effects_are_compatible() {
        // aligned and anti-aligned sharp directions commute
        let pairs = [
            (Effect::new(0.8, 0.3, 0.5).unwrap(), Effect::new(1.1, 0.3, 0.6).unwrap()),
            (
                Effect::new(0.8, 0.3, 0.5).unwrap(),
                Effect::new(1.0, 0.3 + PI / 2.0, 0.7).unwrap(),
            ),
        ];
        for (e1, e2) in pairs {
            assert!(effect_commutator(&e1, &e2).max_abs() <= 1e-12);
            assert!(matches!(
                compatibility_decide(&e1, &e2, 1e-9),
                CompatibilityDecision::Compatible { .. }
            ));
        }
    }

    #[test]
    fn joint_from_choice_rejects_and_names_the_condition() {
        let e1 = Effect::new(1.0, 0.2, 0.3).unwrap();
        let e2 = Effect::new(1.0, 1.2, 0.4).unwrap();
        // α beyond min(α₁, α₂) breaks G10 positivity for every v
        let err = joint_from_choice(&e1, &e2, 1.05, e1.bloch_vec()).unwrap_err();
        match err {
            Error::InfeasibleChoice(msg) => assert!(msg.contains("G10"), "{msg}"),
            other => panic!("wrong error {other:?}"),
        }
    }

    #[test]
    fn decision_slack_agrees_with_helly() {
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        for _ in 0..500 {
            let mk = |rng: &mut ChaCha8Rng| Disk {
                c: BlochVec::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)),
                rad: rng.random_range(0.0..1.2),
            };
            let disks = [mk(&mut rng), mk(&mut rng), mk(&mut rng), mk(&mut rng)];
            let slack = -min_max_excess(&disks).0;
            let direct = disks_intersect(&disks);
            let helly = helly_intersect(&disks);
            assert_eq!(direct, helly, "Helly reduction disagrees with direct test");
            if slack > 1e-9 {
                assert!(direct, "positive slack but candidate test says empty");
            }
            if slack < -1e-9 {
                assert!(!direct, "negative slack but candidate test says nonempty");
            }
        }
    }

    proptest! {
        #[test]
        fn prop_constructed_joints_always_validate(
            phi1 in 0.0f64..PI, phi2 in 0.0f64..PI,
            r1 in 0.0f64..1.0, r2 in 0.0f64..1.0,
            bias1 in 0.0f64..1.0, bias2 in 0.0f64..1.0,
        ) {
            let a1 = r1 + bias1 * (2.0 - 2.0 * r1);
            let a2 = r2 + bias2 * (2.0 - 2.0 * r2);
            let e1 = Effect::new(a1, phi1, r1).unwrap();
            let e2 = Effect::new(a2, phi2, r2).unwrap();
            if let CompatibilityDecision::Compatible { joint, .. } = compatibility_decide(&e1, &e2, 1e-9) {
                let val = joint.validate(&e1, &e2);
                prop_assert!(val.marginal_residual <= 1e-10);
                prop_assert!(val.min_eigenvalue >= -1e-10);
                prop_assert!(val.sum_residual <= 1e-10);
            }
        }
    }
}
