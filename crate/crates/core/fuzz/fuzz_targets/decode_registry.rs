#![no_main]

use libfuzzer_sys::fuzz_target;
use turnover_core::engine::RegistryEntry;

fuzz_target!(|data: &[u8]| {
    let Ok(entries) = serde_json::from_slice::<Vec<RegistryEntry>>(data) else {
        return;
    };
    let text = serde_json::to_string(&entries).unwrap();
    let back: Vec<RegistryEntry> = serde_json::from_str(&text).unwrap();
    assert_eq!(back, entries);
});
