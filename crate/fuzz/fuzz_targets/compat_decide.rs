//! Fuzzes the joint-measurability solver: effect parameters derived from raw
//! bytes must never panic the planar geometry, every Compatible verdict must
//! validate, and the Helly reduction must agree with the direct emptiness
//! test on the induced disk systems.

#![no_main]

use libfuzzer_sys::fuzz_target;
use povmkit::povm_compat::{
    compatibility_decide, disks_intersect, helly_intersect, min_max_excess, BlochVec,
    CompatibilityDecision, Disk, Effect,
};

fn unit(byte_pair: &[u8]) -> f64 {
    u16::from_le_bytes([byte_pair[0], byte_pair[1]]) as f64 / u16::MAX as f64
}

fuzz_target!(|data: &[u8]| {
    if data.len() < 12 {
        return;
    }
    let mk = |o: usize| {
        let r = unit(&data[o..]);
        // clamp: the affine blend can round one ulp past 2 − r
        let alpha = (r + unit(&data[o + 2..]) * (2.0 - 2.0 * r)).clamp(r, 2.0 - r);
        let phi = unit(&data[o + 4..]) * std::f64::consts::PI;
        Effect::new(alpha, phi, r).expect("constructed inside the effect domain")
    };
    let e1 = mk(0);
    let e2 = mk(6);

    match compatibility_decide(&e1, &e2, 1e-9) {
        CompatibilityDecision::Compatible { joint, .. } => {
            let val = joint.validate(&e1, &e2);
            assert!(val.marginal_residual <= 1e-9);
            assert!(val.sum_residual <= 1e-9);
            assert!(val.min_eigenvalue >= -1e-9);
        }
        CompatibilityDecision::Incompatible { max_slack, .. } => {
            assert!(max_slack < 0.0);
        }
        CompatibilityDecision::Undetermined { max_slack } => {
            assert!(max_slack.abs() <= 1e-9);
        }
    }

    // the two emptiness tests and the signed slack must tell one story on
    // the effect-induced disk systems away from the boundary band
    let (v1, v2) = (e1.bloch_vec(), e2.bloch_vec());
    let (a1, a2) = (e1.alpha(), e2.alpha());
    let lo = (a1 + a2 - 2.0).max(0.0);
    let hi = a1.min(a2);
    for i in 0..5 {
        let alpha = lo + (hi - lo) * i as f64 / 4.0;
        let disks = [
            Disk { c: BlochVec::ZERO, rad: alpha },
            Disk { c: v1, rad: a1 - alpha },
            Disk { c: v2, rad: a2 - alpha },
            Disk { c: v1.add(&v2), rad: 2.0 - a1 - a2 + alpha },
        ];
        let slack = -min_max_excess(&disks).0;
        // boundary-degenerate systems (|slack| below the tolerance band) are
        // exactly the ones the decision layer refuses to certify; away from
        // the band all three answers must agree
        if slack.abs() > 1e-8 {
            let direct = disks_intersect(&disks);
            assert_eq!(direct, helly_intersect(&disks));
            assert_eq!(direct, slack > 0.0);
        }
    }
});
