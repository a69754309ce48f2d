//! Weighted shortest paths: single source, top-k between two vertexes and
//! an edge-restricted route. Compared against the set-based baseline.
//!
//!     cargo run --example shortest_paths

use gvsql::baseline::set_sssp;
use gvsql::cli::format_table;
use gvsql::Database;

fn main() -> gvsql::Result<()> {
    let mut db = Database::new();
    db.execute("CREATE TABLE Cities (Id INTEGER, Name TEXT)")?;
    db.execute("CREATE TABLE Roads (Id INTEGER, A INTEGER, B INTEGER, Km FLOAT, Toll BOOLEAN)")?;
    db.execute("INSERT INTO Cities VALUES (1, 'Avon'), (2, 'Brill'), (3, 'Cray'), (4, 'Dent'), (5, 'Esk')")?;
    db.execute(
        "INSERT INTO Roads VALUES (1, 1, 2, 7.0, FALSE), (2, 1, 3, 9.0, FALSE), (3, 1, 5, 14.0, TRUE), \
         (4, 2, 3, 10.0, FALSE), (5, 2, 4, 15.0, TRUE), (6, 3, 4, 11.0, FALSE), (7, 3, 5, 2.0, FALSE), \
         (8, 4, 5, 6.0, FALSE)",
    )?;
    db.execute(
        "CREATE UNDIRECTED GRAPH VIEW Map VERTEXES (ID = Id, Name = Name) FROM Cities \
         EDGES (ID = Id, FROM = A, TO = B, Km = Km, Toll = Toll) FROM Roads",
    )?;

    println!("-- distances from Avon");
    let r = db.query(
        "SELECT PS.EndVertex.Name, SUM(PS.Edges.Km), PS.PathString FROM Map.Paths PS \
         HINT(SHORTESTPATH(Km)) WHERE PS.StartVertex.Id = 1",
    )?;
    print!("{}", format_table(&r.columns, &r.rows));

    let g = db.catalog().graph("Map").unwrap();
    let km = db.catalog().table("Roads").unwrap().schema().index_of("Km").unwrap();
    let mut baseline: Vec<_> = set_sssp(&g, 1, km)?.into_iter().collect();
    baseline.sort_by_key(|(v, _)| *v);
    println!("set-based baseline: {baseline:?}\n");

    println!("-- three cheapest routes Avon -> Dent");
    let r = db.query(
        "SELECT TOP 3 PS.PathString, SUM(PS.Edges.Km) FROM Map.Paths PS HINT(SHORTESTPATH(Km)) \
         WHERE PS.StartVertex.Id = 1 AND PS.EndVertex.Id = 4",
    )?;
    print!("{}", format_table(&r.columns, &r.rows));

    println!("\n-- cheapest toll-free route Avon -> Esk");
    let r = db.query(
        "SELECT TOP 1 PS.PathString, SUM(PS.Edges.Km) FROM Map.Paths PS HINT(SHORTESTPATH(Km)) \
         WHERE PS.StartVertex.Id = 1 AND PS.EndVertex.Id = 5 AND PS.Edges.Toll = FALSE",
    )?;
    print!("{}", format_table(&r.columns, &r.rows));
    Ok(())
}
