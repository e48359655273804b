use std::path::PathBuf;

use epade_cli::doc::{LaurentDoc, SeriesSpec, Q};
use epade_cli::{parse_system, parse_system_str, CliError, SystemDocument};
use epade_core::arith::{rat, LaurentPoly, Rational};
use epade_core::efunc::{self, eval_ball};
use num_bigint::BigInt;
use proptest::prelude::*;

fn corpus(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("corpus")
        .join(name)
}

const CORPUS: [&str; 6] = [
    "exp.json",
    "j0.json",
    "g.json",
    "apery.json",
    "hyp1f1_5_7o3.json",
    "hyp1f1_6_m2o5.json",
];

#[test]
fn exp_document() {
    let doc = parse_system(&corpus("exp.json")).unwrap();
    assert_eq!(doc.m, 1);
    let sys = doc.diff_system().unwrap().unwrap();
    assert!(sys.entry(1, 0).is_zero());
    assert_eq!(sys.entry(1, 1), &LaurentPoly::one());
}

#[test]
fn bundled_documents_match_catalog() {
    for (file, b) in [
        ("exp.json", efunc::exp()),
        ("j0.json", efunc::j0()),
        ("g.json", efunc::g_1f2()),
    ] {
        let doc = parse_system(&corpus(file)).unwrap();
        let (sys, series) = doc.bundle().unwrap();
        assert_eq!(sys.matrix(), b.system.matrix(), "{file}");
        for (a, c) in series.iter().zip(&b.series) {
            assert_eq!(
                a.coefficients(30).unwrap(),
                c.coefficients(30).unwrap(),
                "{file}"
            );
        }
        // the document system annihilates its own series
        for r in sys.residual(&series, 40).unwrap() {
            assert!(r.is_zero(), "{file}");
        }
    }
}

#[test]
fn exotic_documents_carry_their_values() {
    for file in ["hyp1f1_5_7o3.json", "hyp1f1_6_m2o5.json"] {
        let doc = parse_system(&corpus(file)).unwrap();
        let (sys, series) = doc.bundle().unwrap();
        assert!(sys
            .residual(&series, 30)
            .unwrap()
            .iter()
            .all(LaurentPoly::is_zero));
        let e = &doc.metadata.expected[0];
        let b = eval_ball(&series[e.series], &e.at.0, 256).unwrap();
        assert!(b.contains_rational(&e.value.0));
    }
}

#[test]
fn apery_document_has_no_system() {
    let doc = parse_system(&corpus("apery.json")).unwrap();
    assert!(doc.diff_system().unwrap().is_none());
    let c = doc.build_series().unwrap()[0].coefficients(3).unwrap();
    assert_eq!(c, [1, 5, 73, 1445].map(|x| rat(x, 1)).to_vec());
    assert!(matches!(doc.bundle(), Err(CliError::Validation(_))));
}

#[test]
fn documents_round_trip() {
    for file in CORPUS {
        let doc = parse_system(&corpus(file)).unwrap();
        let text = serde_json::to_string_pretty(&doc).unwrap();
        assert_eq!(parse_system_str(&text).unwrap(), doc, "{file}");
    }
}

fn parse_err(text: &str) -> (usize, String) {
    match parse_system_str(text) {
        Err(CliError::Parse { line, message, .. }) => (line, message),
        other => panic!("expected a parse error, got {other:?}"),
    }
}

#[test]
fn nonpositive_lower_parameter_rejected_with_line() {
    let text = r#"{
  "schema_version": 1,
  "name": "bad",
  "m": 1,
  "series": [
    { "kind": "hypergeometric",
      "lower": ["-2"] }
  ]
}"#;
    let (line, msg) = parse_err(text);
    // tagged series entries are buffered, so the position lands at the close of the entry
    assert!((7..=8).contains(&line), "{line}");
    assert!(msg.contains("nonpositive integer"), "{msg}");
    assert!(parse_system_str(&text.replace("\"-2\"", "\"-2/3\"")).is_ok());
}

#[test]
fn malformed_rational_and_schema_errors() {
    let text = "{\n \"schema_version\": 1,\n \"name\": \"x\",\n \"m\": 1,\n \"series\": [{\"kind\": \"closed\",\n \"coefficients\": [\"1/0\"]}]\n}";
    let (line, msg) = parse_err(text);
    assert_eq!(line, 6);
    assert!(msg.contains("malformed rational"), "{msg}");

    let (line, msg) =
        parse_err("{\n  \"schema_version\": 2,\n  \"name\": \"x\", \"m\": 1, \"series\": []\n}");
    assert_eq!(line, 2);
    assert!(msg.contains("schema_version"), "{msg}");

    let (_, msg) =
        parse_err(r#"{"schema_version": 1, "name": "x", "m": 1, "series": [], "extra": 0}"#);
    assert!(msg.contains("unknown field"), "{msg}");
}

#[test]
fn semantic_validation() {
    let bad_order = r#"{"schema_version": 1, "name": "x", "m": 2, "series": [
        {"kind": "derivative", "of": 1, "order": 1}, {"kind": "closed", "coefficients": ["1"]}]}"#;
    assert!(matches!(
        parse_system_str(bad_order),
        Err(CliError::Validation(_))
    ));
    let short = r#"{"schema_version": 1, "name": "x", "m": 2, "series": [{"kind": "closed", "coefficients": ["1"]}]}"#;
    assert!(matches!(
        parse_system_str(short),
        Err(CliError::Validation(_))
    ));
    let shape = r#"{"schema_version": 1, "name": "x", "m": 1, "series": [{"kind": "closed", "coefficients": ["1"]}],
        "system": {"labels": ["a"], "rows": [[{}]]}}"#;
    assert!(matches!(
        parse_system_str(shape),
        Err(CliError::Validation(_))
    ));
}

#[test]
fn hypergeometric_defaults() {
    let doc: SystemDocument = parse_system_str(
        r#"{"schema_version": 1, "name": "e", "m": 1, "series": [{"kind": "hypergeometric"}]}"#,
    )
    .unwrap();
    match &doc.series[0] {
        SeriesSpec::Hypergeometric { scale, power, .. } => {
            assert_eq!((scale.clone(), *power), (Q(rat(1, 1)), 1));
        }
        other => panic!("{other:?}"),
    }
}

proptest! {
    #[test]
    fn rationals_round_trip(n in any::<i64>(), d in 1i64..i64::MAX, big in 0u32..4) {
        let q = Rational::new(BigInt::from(n) * BigInt::from(10).pow(big * 20), BigInt::from(d));
        let s = serde_json::to_string(&Q(q.clone())).unwrap();
        prop_assert_eq!(serde_json::from_str::<Q>(&s).unwrap(), Q(q));
    }

    #[test]
    fn laurent_entries_round_trip(terms in proptest::collection::vec((-5i64..8, -50i64..50, 1i64..9), 0..6)) {
        let p = LaurentPoly::from_terms(&terms.iter().map(|&(e, n, d)| (e, rat(n, d))).collect::<Vec<_>>());
        let doc = LaurentDoc::from_poly(&p);
        let back: LaurentDoc = serde_json::from_str(&serde_json::to_string(&doc).unwrap()).unwrap();
        prop_assert_eq!(back.to_poly(), p);
    }
}
