#![no_main]

use imprecise::instance::{load, parse_joint_queries, parse_query_file, Validated};
use libfuzzer_sys::fuzz_target;

const FACTOR1: &str = r#"{"space": ["a", "b"], "gambles": {"ia": ["1", "0"]}}"#;
const FACTOR2: &str = r#"{"space": ["c", "d", "e"], "gambles": {"h": ["0", "1", "-1/2"]}}"#;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    let Ok(file) = parse_query_file(text) else {
        return;
    };
    let (Ok(Validated::Local(f1)), Ok(Validated::Local(f2))) = (load(FACTOR1), load(FACTOR2)) else {
        unreachable!("fixed factors are valid");
    };
    if let Ok(queries) = parse_joint_queries(&file.queries, &f1, &f2) {
        for q in queries {
            assert_eq!(q.gamble.values().len(), 6);
            assert!(q.event.size() > 0);
        }
    }
});
