//! Fuzzes the arc-partition decoder: raw bytes become arc endpoints, and any
//! accepted partition must sum to the identity with positive parts.

#![no_main]

use libfuzzer_sys::fuzz_target;
use povmkit::toeplitz_naimark::{povm_additivity_check, Arc};

fuzz_target!(|data: &[u8]| {
    let mut arcs = Vec::new();
    for chunk in data.chunks_exact(16) {
        let a = f64::from_le_bytes(chunk[0..8].try_into().unwrap());
        let b = f64::from_le_bytes(chunk[8..16].try_into().unwrap());
        match Arc::new(a, b) {
            Ok(arc) => arcs.push(arc),
            Err(_) => return,
        }
    }
    if arcs.is_empty() {
        return;
    }
    if let Ok(check) = povm_additivity_check(&arcs) {
        // the validator only accepts genuine partitions of [0, 2π); on those
        // the parts must sum to 1 and each must be positive semidefinite
        assert!(check.residual <= 1e-8, "partition total off by {}", check.residual);
        assert!(check.min_eigenvalue >= -1e-9);
    }
});
