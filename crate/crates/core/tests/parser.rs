//! Printing an AST and parsing it back gives the same AST.

use gvsql::sql::ast::*;
use gvsql::sql::{parse, parse_expr};
use proptest::prelude::*;

fn ident() -> impl Strategy<Value = String> {
    prop::sample::select(vec!["a", "Job", "lstName", "W", "sel_2", "Address"]).prop_map(String::from)
}

fn literal() -> impl Strategy<Value = Literal> {
    prop_oneof![
        Just(Literal::Null),
        (0i64..1_000_000).prop_map(Literal::Int),
        (0u32..100_000).prop_map(|x| Literal::Float(x as f64 / 8.0)),
        "[a-z '%]{0,8}".prop_map(Literal::Str),
        any::<bool>().prop_map(Literal::Bool),
    ]
}

fn index() -> impl Strategy<Value = PathIndex> {
    prop_oneof![
        (0u32..9).prop_map(PathIndex::Single),
        (0u32..9, 0u32..9).prop_map(|(a, b)| PathIndex::Range(a.min(b), a.max(b))),
        (0u32..9).prop_map(PathIndex::From),
        Just(PathIndex::Any),
    ]
}

fn path_ref() -> impl Strategy<Value = PathRef> {
    let whole = prop::sample::select(vec![PathComponent::Length, PathComponent::PathString]).prop_map(|c| PathRef {
        alias: "PS".into(),
        component: c,
        index: None,
        edge_end: None,
        attribute: None,
    });
    let vertex = (
        prop::sample::select(vec![PathComponent::StartVertex, PathComponent::EndVertex]),
        ident(),
    )
        .prop_map(|(c, a)| PathRef {
            alias: "PS".into(),
            component: c,
            index: None,
            edge_end: None,
            attribute: Some(a),
        });
    let edges = (prop::option::of(index()), prop::option::of(any::<bool>()), ident()).prop_map(|(i, end, a)| PathRef {
        alias: "P".into(),
        component: PathComponent::Edges,
        edge_end: if i.is_some() {
            end.map(|s| if s { EdgeEnd::StartVertex } else { EdgeEnd::EndVertex })
        } else {
            None
        },
        index: i,
        attribute: Some(a),
    });
    let vertexes = (prop::option::of(index()), ident()).prop_map(|(i, a)| PathRef {
        alias: "PS".into(),
        component: PathComponent::Vertexes,
        index: i,
        edge_end: None,
        attribute: Some(a),
    });
    prop_oneof![whole, vertex, edges, vertexes]
}

fn leaf() -> impl Strategy<Value = Expr> {
    prop_oneof![
        literal().prop_map(Expr::Literal),
        (prop::option::of(Just("U".to_string())), ident())
            .prop_map(|(qualifier, name)| Expr::Column(ColumnRef { qualifier, name })),
        path_ref().prop_map(Expr::Path),
    ]
}

fn cmp_op() -> impl Strategy<Value = CmpOp> {
    prop::sample::select(vec![
        CmpOp::Eq,
        CmpOp::NotEq,
        CmpOp::Lt,
        CmpOp::LtEq,
        CmpOp::Gt,
        CmpOp::GtEq,
    ])
}

fn expr() -> impl Strategy<Value = Expr> {
    leaf().prop_recursive(4, 24, 4, |inner| {
        prop_oneof![
            (cmp_op(), inner.clone(), inner.clone()).prop_map(|(op, l, r)| Expr::Compare {
                op,
                left: Box::new(l),
                right: Box::new(r),
            }),
            (
                inner.clone(),
                prop::collection::vec(literal().prop_map(Expr::Literal), 1..4),
                any::<bool>()
            )
                .prop_map(|(e, list, negated)| Expr::InList {
                    expr: Box::new(e),
                    list,
                    negated,
                }),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Expr::And(Box::new(a), Box::new(b))),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Expr::Or(Box::new(a), Box::new(b))),
            inner.clone().prop_map(|e| Expr::Not(Box::new(e))),
        ]
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(512))]

    #[test]
    fn expressions_round_trip(e in expr()) {
        let text = e.to_string();
        let back = parse_expr(&text).map_err(|err| TestCaseError::fail(format!("{text}: {err}")))?;
        prop_assert_eq!(back, e, "{}", text);
    }

    #[test]
    fn selects_round_trip(w in expr(), top in prop::option::of(1u64..5), limit in prop::option::of(1u64..5)) {
        let top = top.map(|k| format!("TOP {k} ")).unwrap_or_default();
        let limit = limit.map(|k| format!(" LIMIT {k}")).unwrap_or_default();
        let sql = format!("SELECT {top}PS.PathString, U.Job FROM Users U, G.Paths PS WHERE {w}{limit}");
        let once = parse(&sql).unwrap();
        let twice = parse(&once.to_string()).unwrap();
        prop_assert_eq!(once, twice);
    }
}

#[test]
fn statements_round_trip() {
    let stmts = [
        "CREATE TABLE T (a INTEGER, b FLOAT, c TEXT, d BOOLEAN)",
        "CREATE DIRECTED GRAPH VIEW G VERTEXES (ID = Id, Name = Name) FROM V WHERE Id > 3 \
         EDGES (ID = eId, FROM = s, TO = t, W = w) FROM E WHERE w < 2.5",
        "CREATE UNDIRECTED GRAPH VIEW U VERTEXES (ID = Id) FROM V EDGES (ID = e, FROM = s, TO = t) FROM E",
        "INSERT INTO T VALUES (1, 2.5, 'x''y', TRUE), (2, NULL, '', FALSE)",
        "UPDATE T SET a = 3, c = 'z' WHERE b >= 1.0",
        "DELETE FROM T WHERE NOT a = 1",
        "SELECT COUNT(*), SUM(PS.Edges.W) FROM G.Paths PS HINT(SHORTESTPATH(W)) WHERE PS.StartVertex.Id = 1",
        "SELECT TOP 2 PS FROM G.Paths PS, G.Vertexes S WHERE PS.StartVertex.Id = S.Id",
        "SELECT P.Name, PS.PathString FROM Patient P, \
         TEMPGRAPH(VERTEXES (ID = LocId) FROM L EDGES (ID = r, FROM = a, TO = b, D = d) FROM R \
         WHERE R.Type NOT IN (SELECT Type FROM Avoid WHERE Avoid.UserId = P.Id)).Paths PS \
         WHERE PS.StartVertex.Id = P.Loc",
    ];
    for sql in stmts {
        let once = parse(sql).unwrap_or_else(|e| panic!("{sql}: {e}"));
        let text = once.to_string();
        let twice = parse(&text).unwrap_or_else(|e| panic!("{text}: {e}"));
        assert_eq!(once, twice, "{text}");
    }
}

#[test]
fn errors_carry_positions() {
    let err = parse("SELECT a FROM T WHERE a = = 1").unwrap_err().to_string();
    assert!(err.contains("1:27"), "{err}");
    let err = parse("SELECT a\nFROM T\nWHERE (a = 1").unwrap_err().to_string();
    assert!(err.contains("3:"), "{err}");
}
