//! Drives the interactive shell programmatically: statements, meta-commands
//! and output modes, with output captured in a buffer.
//!
//!     cargo run --example shell_session

use gvsql::cli::Session;
use gvsql::Database;

const INPUT: &str = "
CREATE TABLE V (Id INTEGER);
CREATE TABLE E (Id INTEGER, S INTEGER, T INTEGER, W FLOAT);
INSERT INTO V VALUES (1), (2), (3);
INSERT INTO E VALUES (1, 1, 2, 0.5), (2, 2, 3, 0.25), (3, 1, 3, 1.0);
CREATE DIRECTED GRAPH VIEW G VERTEXES (ID = Id) FROM V EDGES (ID = Id, FROM = S, TO = T, W = W) FROM E;
.tables
.stats G
SELECT PS.PathString, SUM(PS.Edges.W)
  FROM G.Paths PS
  WHERE PS.StartVertex.Id = 1;
.mode csv
SELECT PS.PathString FROM G.Paths PS WHERE PS.Length = 2;
SELECT Nope FROM V;
.quit
";

fn main() -> std::io::Result<()> {
    let mut session = Session::new(Database::new(), Vec::new());
    session.repl(INPUT.as_bytes(), false)?;
    print!("{}", String::from_utf8_lossy(&session.into_output()));
    Ok(())
}
