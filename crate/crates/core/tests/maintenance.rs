mod common;

use common::*;
use gvsql::graph::GraphView;
use gvsql::{Error, Value};
use proptest::prelude::*;

fn rebuild_matches(db: &gvsql::Database, view: &str) {
    let cat = db.catalog();
    let v = cat.view(view).unwrap();
    let fresh = GraphView::build(
        v.spec().clone(),
        cat.table(&v.spec().vertex.table).unwrap(),
        cat.table(&v.spec().edge.table).unwrap(),
    )
    .unwrap();
    assert_eq!(v.snapshot(), fresh.snapshot());
}

fn out_ids(db: &gvsql::Database, vertex: i64) -> Vec<i64> {
    let v = db.catalog().view("G").unwrap();
    let idx = v.vertex_idx(vertex).unwrap();
    let mut ids: Vec<i64> = v.vertex(idx).out_edges.iter().map(|&e| v.edge(e).id).collect();
    ids.sort();
    ids
}

#[test]
fn inserted_edge_is_traversable() {
    let mut db = g1(true);
    db.execute("INSERT INTO GE VALUES (5, 2, 4, 1.0, 0.0, 'A')").unwrap();
    assert_eq!(out_ids(&db, 2), vec![2, 5]);
    let r = db
        .query("SELECT PS.PathString FROM G.Paths PS WHERE PS.StartVertex.Id = 1 AND PS.EndVertex.Id = 4")
        .unwrap();
    assert_eq!(r.rows, vec![vec![Value::from("1 -e1-> 2 -e5-> 4")]]);
    rebuild_matches(&db, "G");
}

#[test]
fn deleting_a_vertex_leaves_dangling_edges_that_reattach() {
    let mut db = g1(true);
    db.execute("DELETE FROM GV WHERE Id = 3").unwrap();
    let v = db.catalog().view("G").unwrap();
    assert_eq!((v.vertex_count(), v.edge_count()), (3, 1));
    rebuild_matches(&db, "G");
    db.execute("INSERT INTO GV VALUES (3)").unwrap();
    assert_eq!(db.catalog().view("G").unwrap().edge_count(), 4);
    rebuild_matches(&db, "G");
}

#[test]
fn dangling_edge_survives_an_endpoint_coming_and_going() {
    let mut db = g1(true);
    db.execute("INSERT INTO GE VALUES (9, 5, 6, 1.0, 0.0, 'A')").unwrap();
    db.execute("INSERT INTO GV VALUES (6)").unwrap();
    db.execute("DELETE FROM GV WHERE Id = 6").unwrap();
    db.execute("INSERT INTO GV VALUES (5)").unwrap();
    db.execute("INSERT INTO GV VALUES (6)").unwrap();
    assert_eq!(out_ids(&db, 5), vec![9]);
    rebuild_matches(&db, "G");
}

#[test]
fn vertex_id_change_cascades_to_edges() {
    let mut db = g1(true);
    db.execute("UPDATE GV SET Id = 30 WHERE Id = 3").unwrap();
    let r = db.query("SELECT E.Src, E.Dst FROM GE E WHERE E.Id = 2").unwrap();
    assert_eq!(r.rows, vec![vec![Value::Int(2), Value::Int(30)]]);
    assert_eq!(out_ids(&db, 30), vec![4]);
    rebuild_matches(&db, "G");
}

#[test]
fn attribute_updates_are_visible_without_touching_topology() {
    let mut db = g1(true);
    let before = db.catalog().view("G").unwrap().snapshot();
    db.execute("UPDATE GE SET Label = 'Z' WHERE Id = 1").unwrap();
    assert_eq!(db.catalog().view("G").unwrap().snapshot(), before);
    let r = db
        .query("SELECT PS.PathString FROM G.Paths PS WHERE PS.Length = 1 AND PS.Edges[0].Label = 'Z'")
        .unwrap();
    assert_eq!(r.rows, vec![vec![Value::from("1 -e1-> 2")]]);
}

#[test]
fn failed_statements_change_nothing() {
    let mut db = g1(true);
    let before = db.catalog().view("G").unwrap().snapshot();
    assert!(matches!(
        db.execute("INSERT INTO GV VALUES (9), (1)"),
        Err(Error::DuplicateId { .. })
    ));
    assert!(matches!(
        db.execute("UPDATE GV SET Id = 1 WHERE Id = 2"),
        Err(Error::DuplicateId { .. })
    ));
    assert!(db.execute("INSERT INTO GE VALUES (5, 'x', 1, 1.0, 0.0, 'A')").is_err());
    assert_eq!(db.catalog().view("G").unwrap().snapshot(), before);
    assert_eq!(db.catalog().table("GV").unwrap().len(), 4);
}

#[test]
fn moving_an_edge_rewires_both_ends() {
    let mut db = g1(true);
    db.execute("UPDATE GE SET Src = 2, Dst = 1 WHERE Id = 3").unwrap();
    assert_eq!(out_ids(&db, 1), vec![1]);
    assert_eq!(out_ids(&db, 2), vec![2, 3]);
    rebuild_matches(&db, "G");
}

#[test]
fn filtered_view_follows_membership_changes() {
    let mut db = g1(true);
    db.execute("CREATE DIRECTED GRAPH VIEW F VERTEXES (ID = Id) FROM GV EDGES (ID = Id, FROM = Src, TO = Dst) FROM GE WHERE Label = 'A'")
        .unwrap();
    assert_eq!(db.catalog().view("F").unwrap().edge_count(), 4);
    db.execute("UPDATE GE SET Label = 'B' WHERE Id = 2").unwrap();
    assert_eq!(db.catalog().view("F").unwrap().edge_count(), 3);
    assert_eq!(db.catalog().view("G").unwrap().edge_count(), 4);
    rebuild_matches(&db, "F");
}

#[test]
fn random_mutation_sequences() {
    for seed in 0..5 {
        let ok = maintenance_case(seed, 200).unwrap();
        assert!(ok > 50, "too few statements succeeded: {ok}");
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn maintained_views_equal_rebuilds(seed in 100u64..1_000_000) {
        maintenance_case(seed, 60).map_err(TestCaseError::fail)?;
    }
}
