use std::fs;
use std::path::PathBuf;

use gorsum_cli::parse_session;
use gorsum_core::Expr;
use proptest::prelude::*;

fn sessions() -> Vec<(String, String)> {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("sessions");
    let mut out: Vec<(String, String)> = fs::read_dir(&dir)
        .unwrap()
        .map(|e| e.unwrap().path())
        .filter(|p| p.extension().is_some_and(|x| x == "gs"))
        .map(|p| (p.file_name().unwrap().to_string_lossy().into_owned(), fs::read_to_string(&p).unwrap()))
        .collect();
    out.sort();
    out
}

#[test]
fn corpus_round_trips() {
    let all = sessions();
    assert!(all.len() >= 4);
    for (name, text) in all {
        let a = parse_session(&text).unwrap_or_else(|e| panic!("{name}: {e}"));
        let printed = a.to_string();
        let b = parse_session(&printed).unwrap_or_else(|e| panic!("{name} reprinted: {e}\n{printed}"));
        assert_eq!(a, b, "{name}");
        assert_eq!(printed, b.to_string(), "{name}");
    }
}

fn expr(vars: &'static [&'static str]) -> impl Strategy<Value = Expr> {
    let leaf = prop_oneof![
        (0i64..50).prop_map(Expr::Num),
        proptest::sample::select(vars).prop_map(|v| Expr::Var(v.to_string())),
    ];
    leaf.prop_recursive(4, 24, 2, |inner| {
        prop_oneof![
            inner.clone().prop_map(|a| Expr::Neg(Box::new(a))),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Expr::Add(Box::new(a), Box::new(b))),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Expr::Sub(Box::new(a), Box::new(b))),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Expr::Mul(Box::new(a), Box::new(b))),
            (inner.clone(), 1i64..9).prop_map(|(a, c)| Expr::Div(Box::new(a), Box::new(Expr::Num(c)))),
            (inner, 0u32..5).prop_map(|(a, e)| Expr::Pow(Box::new(a), e)),
        ]
    })
}

fn session_text() -> impl Strategy<Value = String> {
    (
        prop_oneof![Just("QQ".to_string()), Just("GF(7)".to_string()), Just("GF(101)".to_string())],
        1u32..4,
        proptest::collection::vec(expr(&["x", "y"]), 1..4),
        proptest::collection::vec(expr(&["x", "y"]), 2),
        proptest::collection::vec(0i64..20, 0..5),
    )
        .prop_map(|(field, dy, rels, images, hilb)| {
            let rels: Vec<String> = rels.iter().map(|r| r.to_string()).collect();
            let hilb: Vec<String> = hilb.iter().map(|h| h.to_string()).collect();
            format!(
                "field F = {field};\nring R = F[x:1, y:{dy}]/({});\nring K = F[t:1]/(t);\n\
                 map e : R -> R sends x -> {}, y -> {};\nmap a : R -> K sends x -> 0, y -> 0;\n\
                 let P = fiber(a, a);\ncheck hilbert(P) == [{}];\ncheck gorenstein(R) == false;\n",
                rels.join(", "),
                images[0],
                images[1],
                hilb.join(", ")
            )
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn parse_print_parse(text in session_text()) {
        let a = parse_session(&text).unwrap();
        let b = parse_session(&a.to_string()).unwrap();
        prop_assert_eq!(&a, &b);
    }

    #[test]
    fn expressions_survive_printing(e in expr(&["x", "y"])) {
        let text = format!("field F = QQ;\nring R = F[x:1, y:1]/({e});\n");
        let a = parse_session(&text).unwrap();
        let b = parse_session(&a.to_string()).unwrap();
        prop_assert_eq!(a, b);
    }

    #[test]
    fn garbage_never_panics(s in "[a-z0-9;=()\\[\\],:+*/^ -]{0,60}") {
        let _ = parse_session(&s);
    }
}
