//! Loads headered CSV files into tables (created from the header when
//! missing) and queries a graph view over them.
//!
//!     cargo run --example csv_import

use gvsql::cli::{format_table, load_csv};
use gvsql::Database;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let dir = std::env::temp_dir().join(format!("gvsql-csv-{}", std::process::id()));
    std::fs::create_dir_all(&dir)?;
    let stations = dir.join("stations.csv");
    let links = dir.join("links.csv");
    std::fs::write(
        &stations,
        "Id,Name,Zone\n1,North,1\n2,Central,1\n3,Harbour,2\n4,Airport,3\n",
    )?;
    std::fs::write(&links, "Id,Src,Dst,Minutes\n1,1,2,4.5\n2,2,3,6\n3,3,4,12\n4,2,4,20\n")?;

    let mut db = Database::new();
    let n = load_csv(&mut db, "Stations", &stations)?;
    let m = load_csv(&mut db, "Links", &links)?;
    println!("loaded {n} stations and {m} links");
    println!("Links schema: {:?}", db.catalog().table("Links").unwrap().schema());

    db.execute(
        "CREATE UNDIRECTED GRAPH VIEW Metro VERTEXES (ID = Id, Name = Name) FROM Stations \
         EDGES (ID = Id, FROM = Src, TO = Dst, Minutes = Minutes) FROM Links",
    )?;
    let r = db.query(
        "SELECT PS.PathString, SUM(PS.Edges.Minutes) FROM Metro.Paths PS HINT(SHORTESTPATH(Minutes)) \
         WHERE PS.StartVertex.Id = 1",
    )?;
    print!("{}", format_table(&r.columns, &r.rows));
    std::fs::remove_dir_all(&dir)?;
    Ok(())
}
