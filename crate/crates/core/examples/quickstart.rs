//! Tables, a graph view over them and a path query.
//!
//!     cargo run --example quickstart

use gvsql::cli::format_table;
use gvsql::Database;

fn main() -> gvsql::Result<()> {
    let mut db = Database::new();
    db.execute("CREATE TABLE People (Id INTEGER, Name TEXT, Job TEXT)")?;
    db.execute("CREATE TABLE Knows (KId INTEGER, A INTEGER, B INTEGER, Since INTEGER)")?;
    db.execute(
        "INSERT INTO People VALUES (1, 'Ada', 'Lawyer'), (2, 'Bo', 'Cook'), (3, 'Cy', 'Pilot'), (4, 'Di', 'Cook')",
    )?;
    db.execute("INSERT INTO Knows VALUES (1, 1, 2, 2001), (2, 2, 3, 1998), (3, 2, 4, 2010), (4, 3, 4, 2015)")?;
    db.execute(
        "CREATE UNDIRECTED GRAPH VIEW Net \
         VERTEXES (ID = Id, Name = Name) FROM People \
         EDGES (ID = KId, FROM = A, TO = B, Since = Since) FROM Knows",
    )?;

    // Friends of friends of lawyers, over friendships that started after 2000.
    let sql = "SELECT P.Name, PS.EndVertex.Name, PS.PathString \
               FROM People P, Net.Paths PS \
               WHERE P.Job = 'Lawyer' AND PS.StartVertex.Id = P.Id AND PS.Length = 2 \
               AND PS.Edges[0..*].Since > 2000";
    let r = db.query(sql)?;
    print!("{}", format_table(&r.columns, &r.rows));

    println!("\n{}", db.explain(sql)?);
    Ok(())
}
