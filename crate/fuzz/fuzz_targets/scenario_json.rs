//! Fuzzes the polarizer scenario wire format: any validated scenario must
//! produce a normalized probability pair and a trace-one post state.

#![no_main]

use libfuzzer_sys::fuzz_target;
use povmkit::polarizer_sim::{measure, MeasurementScenario, ScenarioSpec};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    let Ok(spec) = serde_json::from_str::<ScenarioSpec>(text) else { return };
    let Ok(scenario) = MeasurementScenario::from_spec(&spec) else { return };

    let out = measure(&scenario);
    assert!((out.p_parallel + out.p_perp - 1.0).abs() <= 1e-9);
    assert!(out.p_parallel >= -1e-9 && out.p_parallel <= 1.0 + 1e-9);
    assert!((out.post_state.trace() - 1.0).abs() <= 1e-9);
});
