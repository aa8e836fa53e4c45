#![no_main]

use imprecise::instance::{load, serialize_instance, serialize_pair, to_json, Document, Validated};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    let Ok(validated) = load(text) else {
        return;
    };
    match validated {
        Validated::Local(inst) => {
            let again = load(&to_json(&Document::Local(serialize_instance(&inst)))).expect("roundtrip");
            assert_eq!(Validated::Local(inst), again);
        }
        Validated::Pair(pair) => {
            let Ok(doc) = serialize_pair(&pair) else {
                return;
            };
            let again = load(&to_json(&Document::Pair(doc))).expect("roundtrip");
            assert_eq!(Validated::Pair(pair), again);
        }
    }
});
