#![no_main]

use std::collections::BTreeMap;

use imprecise::instance::parse_gamble_spec;
use imprecise::space::{Gamble, Space};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    let space = Space::new(["a", "b", "c"]).unwrap();
    let mut named = BTreeMap::new();
    named.insert("f".to_string(), Gamble::from_ints(&space, &[1, 0, -1]).unwrap());
    let Ok(g) = parse_gamble_spec(text, &space, &named) else {
        return;
    };
    assert_eq!(g.values().len(), space.len());
    let again = parse_gamble_spec(&g.to_string(), &space, &named).expect("roundtrip");
    assert_eq!(g, again);
});
