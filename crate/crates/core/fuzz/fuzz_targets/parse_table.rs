#![no_main]

use libfuzzer_sys::fuzz_target;
use turnover_core::collars::{parse_table, SignaturePattern, SupergroupEntry};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(pattern) = text.parse::<SignaturePattern>() {
        assert_eq!(pattern.to_string().parse::<SignaturePattern>().unwrap(), pattern);
    }
    // Rows round trip through their canonical form.
    if let Ok(rows) = parse_table(text) {
        for row in rows {
            let back: SupergroupEntry = row.to_string().parse().unwrap();
            assert_eq!(back, row);
            for s in 2..6 {
                let _ = row.instantiate(Some(s), Some(s + 1));
            }
        }
    }
});
