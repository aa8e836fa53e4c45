#![no_main]

use imprecise::instance::parse_event_spec;
use imprecise::space::Space;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    let space = Space::new(["a", "b", "c", "d"]).unwrap();
    let Ok(e) = parse_event_spec(text, &space) else {
        return;
    };
    assert!(e.size() > 0);
    assert_eq!(parse_event_spec(&e.to_string(), &space).expect("roundtrip"), e);
});
