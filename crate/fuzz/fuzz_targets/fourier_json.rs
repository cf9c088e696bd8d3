//! Fuzzes the FourierFunction wire format: any accepted payload must
//! evaluate finitely, survive a serialize/parse round trip, and quantize to
//! finite entries.

#![no_main]

use libfuzzer_sys::fuzz_target;
use povmkit::circle_quantizer::{quantize, QuantizerConfig};
use povmkit::FourierFunction;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    let Ok(f) = serde_json::from_str::<FourierFunction>(text) else { return };

    for i in 0..8 {
        assert!(f.eval(0.7 * i as f64).is_finite());
    }

    let json = serde_json::to_string(&f).expect("accepted values serialize");
    let back: FourierFunction = serde_json::from_str(&json).expect("round trip parses");
    assert_eq!(back, f);

    let a = quantize(&f, &QuantizerConfig::new(0.75, 0.31).unwrap());
    assert!(a.a.is_finite() && a.b.is_finite() && a.d.is_finite());
});
