//! Loads the bundled sample database and runs each example query on it.
//!
//!     cargo run --example sample_listings

use gvsql::cli::format_table;
use gvsql::Database;

const SAMPLE: &str = include_str!("../data/sample.sql");

const QUERIES: &[(&str, &str)] = &[
    (
        "friends of lawyers",
        "SELECT PS.EndVertex.lstName FROM Users U, SocialNetwork.Paths PS \
         WHERE U.Job = 'Lawyer' AND PS.StartVertex.Id = U.uId AND PS.Length = 2 \
         AND PS.Edges[0..*].StartDate > '1/1/2000'",
    ),
    (
        "protein reachability",
        "SELECT PS.PathString FROM Proteins Pr1, Proteins Pr2, BioNetwork.Paths PS \
         WHERE Pr1.Name = 'Protein X' AND Pr2.Name = 'Protein Y' AND PS.StartVertex.Id = Pr1.Id \
         AND PS.EndVertex.Id = Pr2.Id AND PS.Edges[0..*].Type IN ('covalent', 'stable') LIMIT 1",
    ),
    (
        "labelled triangles",
        "SELECT Count(P) FROM MLGraph.Paths P WHERE P.Length = 3 \
         AND P.Edges[0].Label = 'A' AND P.Edges[1].Label = 'B' AND P.Edges[2].Label = 'C' \
         AND P.Edges[2].EndVertex = P.Edges[0].StartVertex",
    ),
    (
        "two shortest routes",
        "SELECT TOP 2 PS FROM RoadNetwork.Paths PS HINT(SHORTESTPATH(Distance)), \
         RoadNetwork.Vertexes Src, RoadNetwork.Vertexes Dest \
         WHERE PS.StartVertex.Id = Src.Id AND PS.EndVertex.Id = Dest.Id \
         AND Src.Address = \"Address 1\" AND Dest.Address = \"Address 2\"",
    ),
    (
        "vertex selection",
        "SELECT VS.birthdate, VS.fanOut FROM SocialNetwork.Vertexes VS WHERE VS.lstName = 'Smith'",
    ),
    (
        "routes on fast roads",
        "SELECT PS.PathString FROM RoadNetwork.Paths PS HINT(SHORTESTPATH(Distance)) \
         WHERE PS.Edges.SpeedLimit > 30 AND PS.StartVertex.Id = 1 AND PS.EndVertex.Id = 10",
    ),
];

fn main() {
    let mut db = Database::new();
    if let Err((line, e)) = db.execute_script(SAMPLE) {
        eprintln!("sample.sql line {line}: {e}");
        std::process::exit(1);
    }
    for (name, sql) in QUERIES {
        println!("-- {name}");
        match db.query(sql) {
            Ok(r) => println!(
                "{}expansions: {}\n",
                format_table(&r.columns, &r.rows),
                r.stats.expansions
            ),
            Err(e) => println!("error: {e}\n"),
        }
    }
}
