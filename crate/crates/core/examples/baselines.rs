//! Path scans next to relational plans for the same questions: iterated
//! self-joins for reachability and a three-way join for triangles.
//!
//!     cargo run --release --example baselines

use std::time::Instant;

use gvsql::baseline::{join_reachability, join_triangle_count, ReachOptions};
use gvsql::gen::{self, Family};
use gvsql::{Database, PlannerOptions};

fn main() -> gvsql::Result<()> {
    let mut db = Database::new();
    gen::generate(&mut db, "G", Family::Random { n: 2000, m: 8000 }, 5, true)?;
    let g = db.catalog().graph("G").unwrap();

    let (src, dst, depth) = (0, 1999, 12);
    let t = Instant::now();
    let join = join_reachability(
        &g,
        src,
        dst,
        &ReachOptions {
            max_depth: depth,
            dedup: true,
            filter: None,
        },
    )?;
    let join_t = t.elapsed();
    let sql = format!(
        "SELECT TOP 1 PS.Length FROM G.Paths PS WHERE PS.StartVertex.Id = {src} \
         AND PS.EndVertex.Id = {dst} AND PS.Length <= {depth}"
    );
    let t = Instant::now();
    let scan = db.query(&sql)?;
    let scan_t = t.elapsed();
    println!("reachability {src} -> {dst} within {depth} hops");
    println!(
        "  join:     shortest depth {:?}, {} intermediate rows, {join_t:?}",
        join.depth, join.joined_rows
    );
    // TOP 1 stops at the first path found, which need not be the shortest.
    let found = scan.rows.first().map(|r| r[0].to_string());
    println!(
        "  pathscan: first path length {found:?}, {} expansions, {scan_t:?}",
        scan.stats.expansions
    );

    for sel in [0.1, 0.5] {
        let t = Instant::now();
        let filter = gvsql::baseline::EdgeFilter {
            column: gen::col::SEL,
            op: gvsql::sql::ast::CmpOp::Lt,
            value: gvsql::Value::Float(sel),
        };
        let joined = join_triangle_count(&g, gen::col::LABEL, ["A", "B", "C"], Some(&filter))?;
        let join_t = t.elapsed();
        let t = Instant::now();
        let r = db.query_with(&gvsql::bench::triangle_sql(sel), &PlannerOptions::default())?;
        println!(
            "labelled triangles, Sel < {sel}: join {joined} ({join_t:?}), pathscan {} ({:?})",
            r.rows[0][0],
            t.elapsed()
        );
    }
    Ok(())
}
