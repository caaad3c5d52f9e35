use netalg::{parse_env, parse_streams, parse_term, print_streams, print_term};
use netalg_core::axioms::{random_env, random_term, TermSpec};
use netalg_core::{CellEnv, Datum, Sort, Stream};
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn printed_terms_parse_back(seed: u64, m in 0usize..4, n in 0usize..4, budget in 1usize..16) {
        let env = random_env(2, 3, seed % 8);
        let spec = TermSpec::new(Sort::new(m, n), budget);
        if let Ok(t) = random_term(&spec, &env, seed) {
            let text = print_term(&t);
            prop_assert_eq!(parse_term(&text).unwrap(), t, "{}", text);
        }
    }

    #[test]
    fn streams_print_and_parse_back(values in prop::collection::vec(prop::collection::vec(prop::option::of(0u16..3), 0..10), 0..4)) {
        let env = CellEnv::numeric(3).unwrap();
        let streams: Vec<Stream> = values
            .iter()
            .map(|v| Stream::new(v.iter().map(|x| x.map(Datum)).collect()))
            .collect();
        let text = print_streams(&streams, 10, &env);
        let back = parse_streams(&text, streams.len(), 10, &env).unwrap();
        prop_assert_eq!(back, streams.iter().map(|s| s.truncated(10)).collect::<Vec<_>>());
    }
}

#[test]
fn whitespace_is_insignificant() {
    let a = parse_term("(c;cp(1))^1++I(2)").unwrap();
    let b = parse_term(" ( c ; cp ( 1 ) ) ^ 1\n++ I( 2 ) ").unwrap();
    assert_eq!(a, b);
}

#[test]
fn env_rejects_unknown_fields() {
    let doc = r#"{"domain": ["0"], "cells": {}, "extra": 1}"#;
    assert!(parse_env(doc).is_err());
}
