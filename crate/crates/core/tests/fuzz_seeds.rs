//! Replays the checked-in fuzz corpus seeds through the same round trips the
//! fuzz targets check.

use std::fs;
use std::path::PathBuf;

use turnover_core::collars::{parse_table, SignaturePattern, SupergroupEntry};
use turnover_core::engine::{AnalysisReport, RegistryEntry};
use turnover_core::TurnoverSignature;

fn seeds(target: &str) -> Vec<Vec<u8>> {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("fuzz/corpus")
        .join(target);
    let mut out: Vec<_> = fs::read_dir(&dir)
        .unwrap_or_else(|e| panic!("{}: {e}", dir.display()))
        .map(|entry| fs::read(entry.unwrap().path()).unwrap())
        .collect();
    out.sort();
    assert!(!out.is_empty(), "no seeds for {target}");
    out
}

#[test]
fn signature_seeds() {
    let mut parsed = 0;
    for seed in seeds("parse_signature") {
        if let Ok(sig) = std::str::from_utf8(&seed).unwrap().parse::<TurnoverSignature>() {
            assert_eq!(sig.to_string().parse::<TurnoverSignature>().unwrap(), sig);
            parsed += 1;
        }
    }
    assert!(parsed >= 4);
}

#[test]
fn table_seeds() {
    let mut rows = 0;
    for seed in seeds("parse_table") {
        let text = std::str::from_utf8(&seed).unwrap();
        if let Ok(p) = text.parse::<SignaturePattern>() {
            assert_eq!(p.to_string().parse::<SignaturePattern>().unwrap(), p);
        }
        for row in parse_table(text).unwrap_or_default() {
            assert_eq!(row.to_string().parse::<SupergroupEntry>().unwrap(), row);
            rows += 1;
        }
    }
    assert!(rows >= 14);
}

#[test]
fn report_seeds() {
    for seed in seeds("decode_report") {
        let report: AnalysisReport = serde_json::from_slice(&seed).unwrap();
        let back: AnalysisReport = serde_json::from_str(&serde_json::to_string(&report).unwrap()).unwrap();
        assert_eq!(back, report);
    }
}

#[test]
fn registry_seeds() {
    for seed in seeds("decode_registry") {
        let entries: Vec<RegistryEntry> = serde_json::from_slice(&seed).unwrap();
        assert_eq!(entries, turnover_core::engine::registry());
    }
}
