#![no_main]

use libfuzzer_sys::fuzz_target;
use soergel_core::parse::parse_pattern;
use soergel_core::{build_type_a, CompactSubsystem};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    let Ok(signs) = parse_pattern(text) else { return };
    if signs.len() > 12 {
        return;
    }
    let rs = build_type_a(signs.len()).unwrap();
    let k = CompactSubsystem::from_signature(&rs, text).unwrap();
    k.validate(&rs).unwrap();
    let plus = signs.iter().filter(|&&s| s).count();
    let minus = signs.len() - plus;
    let expected = plus * plus.saturating_sub(1) / 2 + minus * minus.saturating_sub(1) / 2;
    assert_eq!(k.num_positive(), expected);
});
