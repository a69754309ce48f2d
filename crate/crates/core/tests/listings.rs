//! The example queries from the sample database, end to end.

mod common;

use common::listings::*;
use gvsql::{Database, Outcome, Value};

fn texts(rows: &[Vec<Value>]) -> Vec<String> {
    rows.iter()
        .map(|r| r.iter().map(Value::to_string).collect::<Vec<_>>().join(" | "))
        .collect()
}

#[test]
fn sample_script_creates_the_views() {
    let db = sample();
    for v in ["SocialNetwork", "BioNetwork", "MLGraph", "RoadNetwork"] {
        assert!(db.catalog().view(v).is_some(), "{v}");
    }
    let sn = db.catalog().view("SocialNetwork").unwrap();
    assert!(!sn.directed());
    assert_eq!((sn.vertex_count(), sn.edge_count()), (6, 6));
}

#[test]
fn view_definition_round_trips() {
    let mut db = Database::new();
    db.execute("CREATE TABLE Users (uId INTEGER, lName TEXT, dob TEXT)")
        .unwrap();
    db.execute(
        "CREATE TABLE Relationships (relId INTEGER, uId1 INTEGER, uId2 INTEGER, startDate TEXT, isRelative BOOLEAN)",
    )
    .unwrap();
    let out = db
        .execute(
            "CREATE UNDIRECTED GRAPH VIEW SocialNetwork \
             VERTEXES(ID = uId, lstName = lName, birthdate = dob) FROM Users \
             EDGES (ID = relId, FROM = uId1, TO = uId2, sDate = startDate, relative = isRelative) FROM Relationships",
        )
        .unwrap();
    assert_eq!(out, Outcome::CreatedView("SocialNetwork".into()));
}

#[test]
fn friends_of_lawyers() {
    let db = sample();
    let r = db.query(FRIENDS_OF_LAWYERS).unwrap();
    assert_eq!(texts(&r.rows), vec!["Smith", "Lee"]);
    let plan = db.explain(FRIENDS_OF_LAWYERS).unwrap();
    assert!(plan.contains("len=[2,2]"), "{plan}");
    assert!(plan.contains("PathScan(BFS") || plan.contains("PathScan(DFS"), "{plan}");
    assert!(plan.contains("seed=probe"), "{plan}");
}

#[test]
fn protein_reachability_stops_early() {
    let db = sample();
    let r = db.query(PROTEIN_REACH).unwrap();
    assert_eq!(texts(&r.rows), vec!["1 -e1-> 2 -e9-> 6 -e7-> 5 -e5-> 4"]);
    let plan = db.explain(PROTEIN_REACH).unwrap();
    assert!(plan.starts_with("Limit(1)"), "{plan}");
    let all = db.query(&PROTEIN_REACH.replace("LIMIT 1", "")).unwrap();
    assert!(
        r.stats.expansions < all.stats.expansions,
        "{} vs {}",
        r.stats.expansions,
        all.stats.expansions
    );
}

#[test]
fn labelled_triangles() {
    let db = sample();
    assert_eq!(db.query(TRIANGLES).unwrap().rows, vec![vec![Value::Int(3)]]);
    // Unlabelled, every directed triangle is counted once per rotation.
    let unlabelled =
        "SELECT COUNT(P) FROM MLGraph.Paths P WHERE P.Length = 3 AND P.Edges[2].EndVertex = P.Edges[0].StartVertex";
    assert_eq!(db.query(unlabelled).unwrap().rows, vec![vec![Value::Int(9)]]);
}

#[test]
fn two_shortest_routes() {
    let db = sample();
    let r = db.query(TOP2_ROUTES).unwrap();
    assert_eq!(r.columns, vec!["PS"]);
    assert_eq!(texts(&r.rows), vec!["1 -e3-> 3 -e4-> 2", "1 -e1-> 2"]);
    let plan = db.explain(TOP2_ROUTES).unwrap();
    assert!(plan.contains("PathScan(SP(Distance)"), "{plan}");
    assert!(plan.contains("Limit(2)"), "{plan}");
}

#[test]
fn vertex_selection() {
    let db = sample();
    let r = db.query(SMITHS).unwrap();
    assert_eq!(texts(&r.rows), vec!["1970-02-01 | 1", "1991-11-30 | 2"]);
    let plan = db.explain(SMITHS).unwrap();
    let ops: Vec<&str> = plan
        .lines()
        .map(|l| l.trim_start().split('(').next().unwrap())
        .collect();
    assert_eq!(ops, vec!["Project", "Filter", "VertexScan"], "{plan}");
}

#[test]
fn per_patient_temporary_graphs() {
    let db = sample();
    let r = db.query(PATIENT_ROUTES).unwrap();
    assert_eq!(
        texts(&r.rows),
        vec![
            "Ana | ana@example.com | 10 -e16-> 3 -e17-> 1",
            "Ana | ana@example.com | 10 -e16-> 3 -e4-> 2 -e2-> 1",
            "Ana | ana@example.com | 10 -e16-> 3 -e4-> 2 -e5-> 4 -e7-> 6 -e15-> 1",
            "Ben | ben@example.com | 6 -e11-> 8 -e12-> 10 -e16-> 3 -e17-> 1",
        ]
    );
    // One temporary graph per San Francisco patient.
    assert_eq!(r.stats.temp_builds, 2);
    let plan = db.explain(PATIENT_ROUTES).unwrap();
    assert!(
        plan.contains("TempGraph(vertexes=Locations, edges=Roads, per row)"),
        "{plan}"
    );
}

#[test]
fn route_on_fast_roads() {
    let db = sample();
    let r = db.query(FAST_ROADS).unwrap();
    assert_eq!(
        texts(&r.rows),
        vec![
            "1 -e1-> 2 -e5-> 4 -e13-> 9 -e14-> 10",
            "1 -e1-> 2 -e5-> 4 -e7-> 6 -e9-> 7 -e10-> 10"
        ]
    );
    let best = db.query(&FAST_ROADS.replace("SELECT", "SELECT TOP 1")).unwrap();
    assert_eq!(best.rows.len(), 1);
}

#[test]
fn start_vertex_id_spelling() {
    let db = sample();
    let a = db
        .query("SELECT PS.PathString FROM SocialNetwork.Paths PS WHERE PS.StartVertexId = 1 AND PS.Length = 1")
        .unwrap();
    let b = db
        .query("SELECT PS.PathString FROM SocialNetwork.Paths PS WHERE PS.StartVertex.Id = 1 AND PS.Length = 1")
        .unwrap();
    assert_eq!(a.rows, b.rows);
    assert_eq!(a.rows.len(), 1);
}
