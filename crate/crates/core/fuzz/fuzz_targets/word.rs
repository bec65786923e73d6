#![no_main]

use std::sync::OnceLock;

use libfuzzer_sys::fuzz_target;
use soergel_core::parse::{format_word, parse_word, WordSpec};
use soergel_core::{build_type_a, WeylGroup};

fn a3() -> &'static WeylGroup {
    static GROUP: OnceLock<WeylGroup> = OnceLock::new();
    GROUP.get_or_init(|| WeylGroup::generate(&build_type_a(4).unwrap()).unwrap())
}

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    let Ok(spec) = parse_word(text) else { return };
    if let WordSpec::Word(letters) = &spec {
        assert_eq!(parse_word(&format_word(letters)).unwrap(), spec);
    }
    let w = a3();
    if let Ok(x) = w.resolve(&spec) {
        assert_eq!(w.element_from_word(&w.word(x)).unwrap(), x);
        assert_eq!(w.word(x).len(), w.length(x));
    }
});
