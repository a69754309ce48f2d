//! A graph built per outer row: each user gets a road network without the
//! road types they avoid.
//!
//!     cargo run --example temp_graph

use gvsql::cli::format_table;
use gvsql::Database;

fn main() -> gvsql::Result<()> {
    let mut db = Database::new();
    let setup = "
        CREATE TABLE Places (Id INTEGER, Name TEXT);
        INSERT INTO Places VALUES (1, 'Home'), (2, 'Bridge'), (3, 'Tunnel'), (4, 'Office');
        CREATE TABLE Roads (Id INTEGER, A INTEGER, B INTEGER, Len FLOAT, Kind TEXT);
        INSERT INTO Roads VALUES (1, 1, 2, 1.0, 'toll'), (2, 2, 4, 1.0, 'toll'),
            (3, 1, 3, 2.0, 'tunnel'), (4, 3, 4, 2.0, 'tunnel'), (5, 1, 4, 9.0, 'plain');
        CREATE TABLE Users (UId INTEGER, Name TEXT, Home INTEGER);
        INSERT INTO Users VALUES (1, 'Ann', 1), (2, 'Bob', 1), (3, 'Cat', 1);
        CREATE TABLE Avoid (UserId INTEGER, Kind TEXT);
        INSERT INTO Avoid VALUES (2, 'toll'), (3, 'toll'), (3, 'tunnel');
    ";
    if let Err((line, e)) = db.execute_script(setup) {
        panic!("line {line}: {e}");
    }
    let sql = "SELECT U.Name, PS.PathString, SUM(PS.Edges.Len) FROM Users U, \
               TEMPGRAPH(VERTEXES (ID = Id) FROM Places \
                         EDGES (ID = Id, FROM = A, TO = B, Len = Len) FROM Roads \
                         WHERE Roads.Kind NOT IN (SELECT Kind FROM Avoid WHERE Avoid.UserId = U.UId)).Paths PS \
               HINT(SHORTESTPATH(Len)) \
               WHERE PS.StartVertex.Id = U.Home AND PS.EndVertex.Id = 4";
    let r = db.query(sql)?;
    print!("{}", format_table(&r.columns, &r.rows));
    println!("temporary graphs built: {}", r.stats.temp_builds);
    println!("\n{}", db.explain(sql)?);
    Ok(())
}
