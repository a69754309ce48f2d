mod common;

use common::*;
use gvsql::planner::{choose_bfs, Traversal};
use gvsql::{Database, PlannerOptions, Value};
use proptest::prelude::*;

fn explain_with(db: &Database, sql: &str, opts: &PlannerOptions) -> String {
    gvsql::planner::explain(&db.plan_with(sql, opts).unwrap())
}

#[test]
fn open_range_sets_the_minimum_length() {
    let db = graph_db(&ids(10), &[], true);
    let plan = db
        .explain("SELECT PS.PathString FROM G.Paths PS WHERE PS.Edges[5..*].Label = 'A'")
        .unwrap();
    // A simple path never has more edges than the graph has vertexes.
    assert!(plan.contains("len=[6,10]"), "{plan}");
    // On G1 the same query cannot match at all.
    let r = g1(true)
        .query("SELECT PS.PathString FROM G.Paths PS WHERE PS.Edges[5..*].Label = 'A'")
        .unwrap();
    assert!(r.rows.is_empty() && r.stats.expansions == 0);
}

#[test]
fn exact_length_and_probe() {
    let db = g1(true);
    let plan = db
        .explain("SELECT PS.PathString FROM GV V, G.Paths PS WHERE PS.StartVertex.Id = V.Id AND PS.Length = 2")
        .unwrap();
    assert!(plan.contains("len=[2,2]"), "{plan}");
    assert!(plan.contains("seed=probe"), "{plan}");
}

#[test]
fn length_bounds_combine() {
    let db = graph_db(&ids(10), &[], true);
    let q = |w: &str| {
        db.explain(&format!("SELECT PS.PathString FROM G.Paths PS WHERE {w}"))
            .unwrap()
    };
    assert!(q("PS.Length >= 2 AND PS.Length < 5").contains("len=[2,4]"));
    assert!(q("PS.Length = 1 OR PS.Length = 3").contains("len=[1,3]"));
    assert!(q("PS.Length IN (2, 4) AND PS.Edges[2].Id = 1").contains("len=[3,4]"));
    assert!(q("NOT PS.Length = 2").contains("len=[1,10]"));
}

#[test]
fn unsatisfiable_lengths_short_circuit() {
    let db = g1(true);
    let r = db
        .query("SELECT PS.PathString FROM G.Paths PS WHERE PS.Length = 2 AND PS.Length > 3")
        .unwrap();
    assert!(r.rows.is_empty());
    assert_eq!(r.stats.expansions, 0);
    assert_eq!(r.warnings.len(), 1, "{:?}", r.warnings);
}

#[test]
fn without_inference_the_bound_is_the_vertex_count() {
    let db = g1(true);
    let plan = explain_with(
        &db,
        "SELECT PS.PathString FROM G.Paths PS WHERE PS.Length = 2",
        &PlannerOptions::naive(),
    );
    assert!(plan.contains("len=[1,4]"), "{plan}");
}

#[test]
fn traversal_rule() {
    assert!(choose_bfs(1.5, 2));
    assert!(!choose_bfs(2.0, 3));
    assert!(choose_bfs(1.7, 3));
    // Unbounded or single-edge queries go depth-first.
    assert!(!choose_bfs(1.0, 1));
}

#[test]
fn traversal_follows_fan_out_statistics() {
    // A chain has fan-out just under 1, so bounded scans run breadth-first.
    let edges: Vec<E> = (0..9).map(|i| E::new(i, i, i + 1)).collect();
    let mut db = graph_db(&ids(10), &edges, true);
    let fan_out = db.refresh_stats("G").unwrap();
    assert!((fan_out - 0.9).abs() < 1e-12);
    let sql = "SELECT PS.PathString FROM G.Paths PS WHERE PS.Length <= 3";
    assert!(db.explain(sql).unwrap().contains("PathScan(BFS"));
    // A dense graph crosses the threshold for the same query.
    let mut edges = Vec::new();
    for a in 0..5 {
        for b in 0..5 {
            if a != b {
                edges.push(E::new(edges.len() as i64, a, b));
            }
        }
    }
    let mut db = graph_db(&ids(5), &edges, true);
    db.refresh_stats("G").unwrap();
    assert!(db.explain(sql).unwrap().contains("PathScan(DFS"));
    let forced = PlannerOptions {
        force_traversal: Some(Traversal::Bfs),
        ..PlannerOptions::default()
    };
    assert!(explain_with(&db, sql, &forced).contains("PathScan(BFS"));
}

#[test]
fn pushdown_reduces_expansions() {
    let db = g1(false);
    let sql = "SELECT PS.PathString FROM G.Paths PS WHERE PS.Edges[0].Id = 1";
    let on = db.query(sql).unwrap();
    let off = db
        .query_with(
            sql,
            &PlannerOptions {
                pushdown: false,
                ..PlannerOptions::default()
            },
        )
        .unwrap();
    assert_eq!(on.rows.len(), off.rows.len());
    assert!(on.stats.expansions < off.stats.expansions);
    let plan = db.explain(sql).unwrap();
    assert!(plan.contains("pushed=1"), "{plan}");
}

#[test]
fn sum_bound_prunes() {
    let edges: Vec<E> = (0..9).map(|i| E::new(i, i, i + 1).w(1.0)).collect();
    let db = graph_db(&ids(10), &edges, true);
    let sql = "SELECT PS.PathString FROM G.Paths PS WHERE PS.StartVertex.Id = 0 AND SUM(PS.Edges.W) <= 2";
    let pruned = db.query(sql).unwrap();
    let full = db
        .query_with(
            sql,
            &PlannerOptions {
                prune_aggregates: false,
                ..PlannerOptions::default()
            },
        )
        .unwrap();
    assert_eq!(pruned.rows.len(), 2);
    assert_eq!(pruned.rows, full.rows);
    assert!(pruned.stats.expansions < full.stats.expansions);
}

#[test]
fn negative_weights_disable_sum_pruning() {
    let edges = vec![E::new(1, 0, 1).w(3.0), E::new(2, 1, 2).w(-2.0)];
    let db = graph_db(&ids(3), &edges, true);
    let r = db
        .query("SELECT PS.PathString FROM G.Paths PS WHERE PS.StartVertex.Id = 0 AND SUM(PS.Edges.W) <= 1")
        .unwrap();
    assert_eq!(r.rows, vec![vec![Value::from("0 -e1-> 1 -e2-> 2")]]);
}

#[test]
fn fixed_pushdown_cases() {
    for seed in 0..40 {
        pushdown_case(seed).unwrap();
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn planner_switches_do_not_change_answers(seed in 100u64..1_000_000) {
        pushdown_case(seed).map_err(TestCaseError::fail)?;
    }
}
