#![no_main]

use libfuzzer_sys::fuzz_target;
use soergel_core::parse::parse_weight;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(w) = parse_weight(text) {
        let printed = w.to_string();
        let again = parse_weight(&printed).expect("printed weight parses");
        assert_eq!(again, w);
    }
});
