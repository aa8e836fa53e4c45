//! Replays the checked-in fuzz corpus through the properties the fuzz targets
//! assert, so the seeds are exercised on a stable toolchain.

use std::collections::BTreeMap;
use std::fs;
use std::path::PathBuf;

use imprecise::assessment::ConditioningFamily;
use imprecise::instance::{
    load, parse_event_spec, parse_family_spec, parse_gamble_spec, parse_joint_queries, parse_query_file,
    serialize_instance, serialize_pair, to_json, Document, Validated,
};
use imprecise::rational::{format_rational, parse_rational};
use imprecise::space::{Event, Gamble, Space};

fn seeds(target: &str) -> Vec<String> {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fuzz/corpus").join(target);
    let mut paths: Vec<PathBuf> = fs::read_dir(&dir).expect("corpus directory").map(|e| e.unwrap().path()).collect();
    paths.sort();
    assert!(!paths.is_empty(), "no seeds for {target}");
    paths.iter().map(|p| fs::read_to_string(p).unwrap()).collect()
}

#[test]
fn instance_documents_round_trip() {
    let mut valid = 0;
    for text in seeds("instance_document") {
        match load(&text) {
            Ok(Validated::Local(inst)) => {
                let again = load(&to_json(&Document::Local(serialize_instance(&inst)))).unwrap();
                assert_eq!(Validated::Local(inst), again);
                valid += 1;
            }
            Ok(Validated::Pair(pair)) => {
                let again = load(&to_json(&Document::Pair(serialize_pair(&pair).unwrap()))).unwrap();
                assert_eq!(Validated::Pair(pair), again);
                valid += 1;
            }
            Err(d) => assert!(!d.0.is_empty()),
        }
    }
    assert!(valid >= 5);
}

#[test]
fn rationals_round_trip() {
    for text in seeds("rational") {
        if let Ok(v) = parse_rational(&text) {
            assert_eq!(parse_rational(&format_rational(&v)).unwrap(), v);
        }
    }
}

#[test]
fn gamble_specs_round_trip() {
    let space = Space::new(["a", "b", "c"]).unwrap();
    let mut named = BTreeMap::new();
    named.insert("f".to_string(), Gamble::from_ints(&space, &[1, 0, -1]).unwrap());
    for text in seeds("gamble_spec") {
        if let Ok(g) = parse_gamble_spec(&text, &space, &named) {
            assert_eq!(parse_gamble_spec(&g.to_string(), &space, &named).unwrap(), g);
        }
    }
}

#[test]
fn event_specs_round_trip() {
    let space = Space::new(["a", "b", "c", "d"]).unwrap();
    for text in seeds("event_spec") {
        if let Ok(e) = parse_event_spec(&text, &space) {
            assert_eq!(parse_event_spec(&e.to_string(), &space).unwrap(), e);
        }
    }
}

#[test]
fn family_specs_resolve() {
    let space = Space::new(["a", "b", "c"]).unwrap();
    let coarse = [Event::from_labels(&space, ["a", "b"]).unwrap(), Event::from_labels(&space, ["c"]).unwrap()];
    let mut named = BTreeMap::new();
    named.insert("coarse".to_string(), ConditioningFamily::new(&space, coarse).unwrap());
    let resolved = seeds("family_spec").iter().filter(|t| parse_family_spec(t, &space, &named).is_ok()).count();
    assert_eq!(resolved, 5);
}

#[test]
fn query_files_parse() {
    let Ok(Validated::Local(f1)) = load(r#"{"space": ["a", "b"], "gambles": {"ia": ["1", "0"]}}"#) else { panic!() };
    let Ok(Validated::Local(f2)) = load(r#"{"space": ["c", "d", "e"], "gambles": {"h": ["0", "1", "-1/2"]}}"#)
    else {
        panic!()
    };
    let mut accepted = 0;
    for text in seeds("query_file") {
        let Ok(file) = parse_query_file(&text) else { continue };
        if let Ok(queries) = parse_joint_queries(&file.queries, &f1, &f2) {
            assert!(queries.iter().all(|q| q.gamble.values().len() == 6));
            accepted += 1;
        }
    }
    assert!(accepted >= 1);
}
