//! Graph views follow their source tables: inserts, deletes and updates
//! are applied to the topology as they happen.
//!
//!     cargo run --example view_maintenance

use gvsql::Database;

fn show(db: &Database, label: &str) -> gvsql::Result<()> {
    let v = db.catalog().view("G").unwrap();
    let r = db.query("SELECT PS.PathString FROM G.Paths PS WHERE PS.StartVertex.Id = 1")?;
    let paths: Vec<String> = r.rows.iter().map(|row| row[0].to_string()).collect();
    println!(
        "{label:<28} vertexes={} edges={} dangling={}  from 1: {paths:?}",
        v.vertex_count(),
        v.edge_count(),
        v.dangling_count()
    );
    Ok(())
}

fn main() -> gvsql::Result<()> {
    let mut db = Database::new();
    db.execute("CREATE TABLE V (Id INTEGER)")?;
    db.execute("CREATE TABLE E (Id INTEGER, Src INTEGER, Dst INTEGER, Open BOOLEAN)")?;
    db.execute("INSERT INTO V VALUES (1), (2), (3)")?;
    db.execute("INSERT INTO E VALUES (10, 1, 2, TRUE), (11, 2, 3, TRUE)")?;
    db.execute(
        "CREATE DIRECTED GRAPH VIEW G VERTEXES (ID = Id) FROM V \
         EDGES (ID = Id, FROM = Src, TO = Dst) FROM E WHERE Open = TRUE",
    )?;
    show(&db, "initial")?;

    // An edge whose endpoint does not exist yet waits for it.
    db.execute("INSERT INTO E VALUES (12, 3, 4, TRUE)")?;
    show(&db, "edge to missing vertex 4")?;
    db.execute("INSERT INTO V VALUES (4)")?;
    show(&db, "vertex 4 inserted")?;

    // The view's edge filter is re-evaluated on update.
    db.execute("UPDATE E SET Open = FALSE WHERE Id = 11")?;
    show(&db, "edge 11 closed")?;
    db.execute("UPDATE E SET Open = TRUE WHERE Id = 11")?;
    show(&db, "edge 11 reopened")?;

    // Deleting a vertex detaches its edges; they come back with it.
    db.execute("DELETE FROM V WHERE Id = 2")?;
    show(&db, "vertex 2 deleted")?;
    db.execute("INSERT INTO V VALUES (2)")?;
    show(&db, "vertex 2 restored")?;

    // Changing a vertex id carries the referencing edges along.
    db.execute("UPDATE V SET Id = 20 WHERE Id = 2")?;
    let r = db.query("SELECT E.Id, E.Src, E.Dst FROM E E WHERE E.Src = 20 OR E.Dst = 20")?;
    println!("edges rewritten to vertex 20: {:?}", r.rows);
    show(&db, "vertex 2 renamed to 20")?;

    // A statement that would break the view's id uniqueness fails whole.
    let err = db.execute("INSERT INTO V VALUES (5), (3)").unwrap_err();
    println!("rejected: {err}");
    show(&db, "after rejected insert")?;
    Ok(())
}
