#![no_main]

use std::collections::BTreeMap;

use imprecise::assessment::ConditioningFamily;
use imprecise::instance::parse_family_spec;
use imprecise::space::{Event, Space};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    let space = Space::new(["a", "b", "c"]).unwrap();
    let coarse = [Event::from_labels(&space, ["a", "b"]).unwrap(), Event::from_labels(&space, ["c"]).unwrap()];
    let mut named = BTreeMap::new();
    named.insert("coarse".to_string(), ConditioningFamily::new(&space, coarse).unwrap());
    if let Ok(fam) = parse_family_spec(text, &space, &named) {
        assert!(fam.events().iter().all(|e| e.space().same_as(&space)));
    }
});
