#![no_main]

use libfuzzer_sys::fuzz_target;
use turnover_core::{classify, turnover_area, GeometryClass, TurnoverSignature};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    let Ok(sig) = text.parse::<TurnoverSignature>() else {
        return;
    };
    assert_eq!(sig.to_string().parse::<TurnoverSignature>().unwrap(), sig);
    let area = turnover_area(sig);
    match classify(sig) {
        GeometryClass::Hyperbolic => assert!(area.unwrap() > 0.0),
        _ => assert!(area.is_err()),
    }
});
