//! Fuzzes the effect wire format: any accepted payload must satisfy the
//! effect condition on the operator side.

#![no_main]

use libfuzzer_sys::fuzz_target;
use povmkit::povm_compat::Effect;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    let Ok(e) = serde_json::from_str::<Effect>(text) else { return };

    let (hi, lo) = e.eigenvalues();
    assert!(lo >= -1e-9 && hi <= 1.0 + 1e-9, "not an effect: [{lo}, {hi}]");
    assert!(e.matrix().is_effect(1e-9));
    assert!((e.bloch_vec().norm() - e.r()).abs() <= 1e-9);

    let json = serde_json::to_string(&e).expect("accepted values serialize");
    let back: Effect = serde_json::from_str(&json).expect("round trip parses");
    assert_eq!(back, e);
});
