mod common;

use common::*;
use gvsql::baseline::{brute_force_paths, join_reachability, EdgeFilter, ReachOptions};
use gvsql::gen::col;
use gvsql::sql::ast::CmpOp;
use gvsql::Value;
use proptest::prelude::*;

fn reach(max_depth: u32) -> ReachOptions {
    ReachOptions {
        max_depth,
        dedup: true,
        filter: None,
    }
}

#[test]
fn join_reachability_on_g1() {
    let db = g1(true);
    let g = db.catalog().graph("G").unwrap();
    let r = join_reachability(&g, 1, 3, &reach(2)).unwrap();
    assert!(r.reachable);
    assert_eq!(r.depth, Some(1));
    let r = join_reachability(&g, 2, 1, &reach(2)).unwrap();
    assert_eq!(r.depth, Some(2));
    assert!(!join_reachability(&g, 2, 1, &reach(1)).unwrap().reachable);
    assert!(!join_reachability(&g, 4, 1, &reach(5)).unwrap().reachable);
    let same = join_reachability(&g, 2, 2, &reach(0)).unwrap();
    assert_eq!((same.reachable, same.depth), (true, Some(0)));
}

#[test]
fn join_reachability_respects_edge_filter() {
    let mut edges = g1_edges();
    edges[2].sel = 0.9;
    let db = graph_db(&[1, 2, 3, 4], &edges, true);
    let g = db.catalog().graph("G").unwrap();
    let opts = ReachOptions {
        filter: Some(EdgeFilter {
            column: col::SEL,
            op: CmpOp::Lt,
            value: Value::Float(0.5),
        }),
        ..reach(5)
    };
    assert_eq!(join_reachability(&g, 1, 3, &opts).unwrap().depth, Some(2));
}

#[test]
fn undirected_join_goes_both_ways() {
    let db = g1(false);
    let g = db.catalog().graph("G").unwrap();
    assert_eq!(join_reachability(&g, 2, 1, &reach(3)).unwrap().depth, Some(1));
}

#[test]
fn without_dedup_the_frontier_grows() {
    // A complete digraph: walks multiply, distinct vertexes do not.
    let mut edges = Vec::new();
    for a in 0..6 {
        for b in 0..6 {
            if a != b {
                edges.push(E::new(edges.len() as i64, a, b));
            }
        }
    }
    let db = graph_db(&ids(6), &edges, true);
    let g = db.catalog().graph("G").unwrap();
    let mut blind = reach(4);
    blind.dedup = false;
    // 6 is not a vertex, so every round runs.
    let with = join_reachability(&g, 0, 6, &reach(4)).unwrap();
    let without = join_reachability(&g, 0, 6, &blind).unwrap();
    assert!(!with.reachable && !without.reachable);
    assert!(
        without.joined_rows > 10 * with.joined_rows,
        "{} vs {}",
        without.joined_rows,
        with.joined_rows
    );
}

#[test]
fn brute_force_on_g1() {
    let db = g1(true);
    let g = db.catalog().graph("G").unwrap();
    let paths = brute_force_paths(&g, Some(&[1]), 3, Some(3)).unwrap();
    let ids: Vec<Vec<i64>> = paths
        .iter()
        .map(|(es, _)| es.iter().map(|&e| g.view.edge(e).id).collect())
        .collect();
    assert_eq!(ids, vec![vec![1, 2, 4]]);
}

#[test]
fn brute_force_refuses_large_graphs() {
    let db = graph_db(&ids(40), &[], true);
    let g = db.catalog().graph("G").unwrap();
    assert!(brute_force_paths(&g, None, 1, None).is_err());
}

#[test]
fn triangle_counts_on_sample_shape() {
    // Two labelled triangles sharing vertex 3, plus one with the wrong labels.
    let mk = |id, s, d, l| E {
        label: l,
        ..E::new(id, s, d)
    };
    let edges = vec![
        mk(1, 1, 2, "A"),
        mk(2, 2, 3, "B"),
        mk(3, 3, 1, "C"),
        mk(4, 3, 4, "A"),
        mk(5, 4, 5, "B"),
        mk(6, 5, 3, "C"),
        mk(7, 5, 6, "A"),
        mk(8, 6, 7, "A"),
        mk(9, 7, 5, "A"),
    ];
    let db = graph_db(&ids(8), &edges, true);
    let g = db.catalog().graph("G").unwrap();
    assert_eq!(triangle_oracle(8, &edges, 1.0), 2);
    assert_eq!(
        gvsql::baseline::join_triangle_count(&g, col::LABEL, ["A", "B", "C"], None).unwrap(),
        2
    );
    let r = db.query(&gvsql::bench::triangle_sql(1.0)).unwrap();
    assert_eq!(r.rows[0][0], Value::Int(2));
}

#[test]
fn fixed_triangle_cases() {
    for seed in 0..10 {
        triangle_case(seed, &[0.05, 0.25, 0.5, 1.0]).unwrap();
    }
}

#[test]
fn fixed_reach_agreement_cases() {
    let mut reachable = 0;
    for seed in 0..30 {
        reachable += reach_agreement_case(seed).unwrap();
    }
    assert!(reachable > 100, "too few reachable pairs to be meaningful: {reachable}");
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn join_and_path_scan_agree(seed in 100u64..1_000_000) {
        reach_agreement_case(seed).map_err(TestCaseError::fail)?;
    }
}
