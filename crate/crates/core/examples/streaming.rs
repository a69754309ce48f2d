//! Pulls rows one at a time. Traversal work happens only as rows are
//! requested, so stopping early leaves the rest of the graph unexplored.
//!
//!     cargo run --example streaming

use gvsql::exec::RowStream;
use gvsql::gen::{self, Family};
use gvsql::Database;

fn main() -> gvsql::Result<()> {
    let mut db = Database::new();
    gen::generate(&mut db, "G", Family::Grid { side: 30 }, 1, true)?;
    let plan = db.plan("SELECT PS.PathString FROM G.Paths PS WHERE PS.StartVertex.Id = 0 AND PS.Length <= 12")?;
    let mut stream = RowStream::open(&plan)?;
    for _ in 0..3 {
        if let Some(row) = stream.next_row()? {
            println!("{}", row[0]);
        }
    }
    println!("expansions after 3 rows: {}", stream.stats().expansions);
    let mut rest = 0;
    while stream.next_row()?.is_some() {
        rest += 1;
    }
    println!("{rest} more rows, expansions in total: {}", stream.stats().expansions);
    Ok(())
}
