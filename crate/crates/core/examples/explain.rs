//! What the planner does with a path query: length bounds from the
//! predicates, predicate pushdown and the BFS/DFS choice, with the effect of
//! each switch on the number of path expansions.
//!
//!     cargo run --example explain

use gvsql::gen::{self, Family};
use gvsql::planner::{choose_bfs, Traversal};
use gvsql::{Database, PlannerOptions};

fn main() -> gvsql::Result<()> {
    let mut db = Database::new();
    gen::generate(&mut db, "G", Family::Random { n: 16, m: 48 }, 3, true)?;
    let fan_out = db.refresh_stats("G")?;
    println!("average fan-out {fan_out:.2}\n");

    let sql = "SELECT PS.PathString FROM G.Paths PS \
               WHERE PS.StartVertex.Id = 0 AND PS.Length >= 2 AND PS.Length <= 4 \
               AND PS.Edges.Sel < 0.4 AND PS.Edges[0].Label = 'A'";
    println!("{}\n", db.explain(sql)?);

    let variants = [
        ("default", PlannerOptions::default()),
        (
            "no pushdown",
            PlannerOptions {
                pushdown: false,
                ..PlannerOptions::default()
            },
        ),
        (
            "no length inference",
            PlannerOptions {
                infer_length: false,
                ..PlannerOptions::default()
            },
        ),
        ("naive", PlannerOptions::naive()),
        (
            "forced DFS",
            PlannerOptions {
                force_traversal: Some(Traversal::Dfs),
                ..PlannerOptions::default()
            },
        ),
    ];
    for (name, opts) in variants {
        let r = db.query_with(sql, &opts)?;
        println!("{name:<20} rows={:<5} expansions={}", r.rows.len(), r.stats.expansions);
    }

    println!(
        "\nopen-ended index: {}",
        db.explain("SELECT PS.PathString FROM G.Paths PS WHERE PS.Edges[5..*].Label = 'B'")?
            .lines()
            .last()
            .unwrap_or_default()
    );
    println!("BFS for fan-out 1.5 up to length 2: {}", choose_bfs(1.5, 2));
    println!("BFS for fan-out 2.0 up to length 3: {}", choose_bfs(2.0, 3));
    Ok(())
}
