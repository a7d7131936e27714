//! The input language: round trips and diagnostics.

use aqcalc::syntax::{parse_expression, parse_syntax, pretty};
use aqcalc::{elaborate, parse_source};
use aqcalc_core::expr::Expr;
use proptest::prelude::*;

fn expr() -> impl Strategy<Value = Expr> {
    let leaf = prop_oneof![
        prop::sample::select(vec!["x", "y", "z1", "w"]).prop_map(|v| Expr::Var(v.to_string())),
        (0i64..20).prop_map(|n| Expr::Num(n, 1)),
        (1i64..9, 2i64..9).prop_map(|(n, d)| Expr::Num(n, d)),
    ];
    leaf.prop_recursive(4, 24, 2, |inner| {
        prop_oneof![
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Expr::Add(Box::new(a), Box::new(b))),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Expr::Sub(Box::new(a), Box::new(b))),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Expr::Mul(Box::new(a), Box::new(b))),
            inner.clone().prop_map(|a| Expr::Neg(Box::new(a))),
            (inner, 1u32..4).prop_map(|(a, n)| Expr::Pow(Box::new(a), n)),
        ]
    })
}

proptest! {
    #[test]
    fn expressions_round_trip(e in expr()) {
        let printed = pretty(&e);
        let back = parse_expression(&printed).unwrap().expr;
        prop_assert_eq!(back, e);
    }
}

const DOCUMENT: &str = "
# comments are skipped
ring R = QQ[x, y, t:2] / (x^2 - t, x*y) order deglex;
ring S = GF(7)[u];
module M = R / (x, y);
dga A over QQ gens (x:1, y:2 divided, z:4, w:3@1) diff (z -> x*y) rel (x*y^2);
dga K over R gens (e:1) diff (e -> x);
map f : S -> S (u -> u^2);
job classify R cap = 6;
job betti R M;
job ext_window A window = [-6, 0] iterations = 4;
job lci R R;
";

#[test]
fn documents_round_trip() {
    let doc = parse_source(DOCUMENT).unwrap();
    let printed = doc.to_string();
    let again = parse_source(&printed).unwrap();
    assert_eq!(again, doc);
    assert_eq!(again.to_string(), printed);
    assert_eq!(doc.jobs().count(), 4);
    let ws = elaborate(&doc).unwrap();
    assert_eq!(ws.objects.len(), 6);
}

#[test]
fn every_error_has_a_code_and_a_span() {
    let cases = [
        ("ring R = QQ[x;", "P-SYNTAX"),
        ("ring R = QQ[x] / (x $ 2);", "P-LEX"),
        ("ring R = GF(6)[x];", "P-FIELD"),
        ("ring R = QQ[x]; ring R = QQ[x];", "P-NAME"),
        ("job classify R;", "P-NAME"),
        ("ring R = QQ[x]; job frob R;", "P-COMMAND"),
        ("ring R = QQ[x]; job classify R speed = 3;", "P-OPTION"),
        ("dga A over QQ gens (x:1, y:3) diff (y -> x);", "P-DEGREE"),
        ("ring R = QQ[x, y] / (x + y^2);", "E-INHOM"),
        ("ring R = QQ[x] / (2);", "E-INPUT"),
        ("dga A over QQ gens (x:1) rel (x + x);", "P-RELATION"),
    ];
    for (src, code) in cases {
        let d = parse_source(src).unwrap_err();
        assert_eq!(d.code, code, "{src}: {d}");
        assert!(d.span.start <= d.span.end && d.span.end <= src.len(), "{src}");
        assert!(d.line >= 1 && d.column >= 1);
        assert!(d.to_string().contains(&format!("[{code}]")));
    }
}

#[test]
fn spans_point_at_the_offender() {
    let src = "ring R = QQ[x, y];\njob classify R;\njob betti Q;\n";
    let d = parse_source(src).unwrap_err();
    assert_eq!((d.line, d.column), (3, 11));
    assert_eq!(&src[d.span.start..d.span.end], "Q");
}

#[test]
fn syntax_alone_accepts_unresolved_names() {
    assert!(parse_syntax("job classify Nowhere;").is_ok());
}
