#![no_main]

use libfuzzer_sys::fuzz_target;
use turnover_core::engine::AnalysisReport;

fuzz_target!(|data: &[u8]| {
    let Ok(report) = serde_json::from_slice::<AnalysisReport>(data) else {
        return;
    };
    let _ = report.open_cases();
    let _ = report.ledger();
    let text = serde_json::to_string(&report).unwrap();
    let back: AnalysisReport = serde_json::from_str(&text).unwrap();
    assert_eq!(back, report);
});
