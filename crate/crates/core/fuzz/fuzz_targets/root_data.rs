#![no_main]

use libfuzzer_sys::fuzz_target;
use soergel_core::weyl::WeylGroup;
use soergel_core::RootData;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    let Ok(doc) = RootData::from_json(text) else { return };
    let Ok((rs, compact)) = doc.build(200) else { return };
    assert_eq!(rs.roots().len(), 2 * rs.num_positive());
    for (i, r) in rs.roots().iter().enumerate() {
        assert_eq!(rs.index_of(r), Some(i));
        assert_eq!(rs.index_of(&r.neg()), Some(rs.negated_index(i)));
    }
    if let Some(k) = &compact {
        k.validate(&rs).unwrap();
    }
    if let Ok(w) = WeylGroup::generate_with_bound(&rs, 2_000) {
        assert_eq!(w.length(w.w0()), rs.num_positive());
        if let Some(k) = &compact {
            assert!(w.w0_properties_report(k).unwrap().passed());
        }
    }
});
