//! Deterministic synthetic graphs for benchmarks and tests.
//!
//! A graph named `G` is stored as tables `GV (Id)` and
//! `GE (Id, Src, Dst, W, Sel, Label)` with a graph view `G` over them. `W` is
//! an integer-valued FLOAT weight in 1..=10, `Sel` is uniform in [0, 1) and
//! `Label` is one of A, B, C.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::db::Database;
use crate::error::{Error, Result};
use crate::storage::{Column, Schema};
use crate::value::{DataType, Value};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Family {
    /// 0 -> 1 -> ... -> n-1
    Chain { n: usize },
    /// `side` x `side` lattice with right and down edges.
    Grid { side: usize },
    /// `m` edges with uniform endpoints, no self-loops.
    Random { n: usize, m: usize },
}

impl Family {
    pub fn vertex_count(self) -> usize {
        match self {
            Family::Chain { n } | Family::Random { n, .. } => n,
            Family::Grid { side } => side * side,
        }
    }
}

impl std::fmt::Display for Family {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Family::Chain { n } => write!(f, "chain({n})"),
            Family::Grid { side } => write!(f, "grid({side}x{side})"),
            Family::Random { n, m } => write!(f, "random({n},{m})"),
        }
    }
}

pub const LABELS: [&str; 3] = ["A", "B", "C"];

/// Edge-table column positions.
pub mod col {
    pub const ID: usize = 0;
    pub const SRC: usize = 1;
    pub const DST: usize = 2;
    pub const W: usize = 3;
    pub const SEL: usize = 4;
    pub const LABEL: usize = 5;
}

/// Endpoint pairs of the family, before attributes are drawn.
pub fn endpoints(family: Family, rng: &mut impl Rng) -> Vec<(i64, i64)> {
    match family {
        Family::Chain { n } => (1..n as i64).map(|i| (i - 1, i)).collect(),
        Family::Grid { side } => {
            let s = side as i64;
            let mut out = Vec::new();
            for r in 0..s {
                for c in 0..s {
                    let v = r * s + c;
                    if c + 1 < s {
                        out.push((v, v + 1));
                    }
                    if r + 1 < s {
                        out.push((v, v + s));
                    }
                }
            }
            out
        }
        Family::Random { n, m } => {
            if n < 2 {
                return Vec::new();
            }
            (0..m)
                .map(|_| {
                    let a = rng.gen_range(0..n as i64);
                    let mut b = rng.gen_range(0..n as i64 - 1);
                    if b >= a {
                        b += 1;
                    }
                    (a, b)
                })
                .collect()
        }
    }
}

/// Edge rows `[Id, Src, Dst, W, Sel, Label]` for `family`.
pub fn edge_rows(family: Family, seed: u64) -> Vec<Vec<Value>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let ends = endpoints(family, &mut rng);
    ends.into_iter()
        .enumerate()
        .map(|(i, (a, b))| {
            vec![
                Value::Int(i as i64),
                Value::Int(a),
                Value::Int(b),
                Value::Float(rng.gen_range(1..=10) as f64),
                Value::Float(rng.gen::<f64>()),
                Value::from(LABELS[rng.gen_range(0..3)]),
            ]
        })
        .collect()
}

pub fn vertex_table(name: &str) -> String {
    format!("{name}V")
}

pub fn edge_table(name: &str) -> String {
    format!("{name}E")
}

/// Creates the two tables, empty.
pub fn create_tables(db: &mut Database, name: &str) -> Result<()> {
    let cat = db.catalog_mut();
    cat.create_table(
        &vertex_table(name),
        Schema::new(vec![Column::new("Id", DataType::Integer)])?,
    )?;
    cat.create_table(
        &edge_table(name),
        Schema::new(vec![
            Column::new("Id", DataType::Integer),
            Column::new("Src", DataType::Integer),
            Column::new("Dst", DataType::Integer),
            Column::new("W", DataType::Float),
            Column::new("Sel", DataType::Float),
            Column::new("Label", DataType::Text),
        ])?,
    )?;
    Ok(())
}

pub fn view_sql(name: &str, directed: bool) -> String {
    format!(
        "CREATE {} GRAPH VIEW {name} \
         VERTEXES (ID = Id) FROM {} \
         EDGES (ID = Id, FROM = Src, TO = Dst, W = W, Sel = Sel, Label = Label) FROM {}",
        if directed { "DIRECTED" } else { "UNDIRECTED" },
        vertex_table(name),
        edge_table(name)
    )
}

/// Generates tables and a graph view named `name`.
pub fn generate(db: &mut Database, name: &str, family: Family, seed: u64, directed: bool) -> Result<()> {
    if db.catalog().table(&vertex_table(name)).is_some() {
        return Err(Error::DuplicateName(vertex_table(name)));
    }
    create_tables(db, name)?;
    let vertexes = (0..family.vertex_count() as i64).map(|i| vec![Value::Int(i)]).collect();
    db.catalog_mut().insert_many(&vertex_table(name), vertexes)?;
    db.catalog_mut()
        .insert_many(&edge_table(name), edge_rows(family, seed))?;
    db.execute(&view_sql(name, directed))?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn deterministic_and_loop_free() {
        let f = Family::Random { n: 50, m: 300 };
        let a = edge_rows(f, 9);
        assert_eq!(a, edge_rows(f, 9));
        assert_ne!(a, edge_rows(f, 10));
        assert!(a.iter().all(|r| r[1] != r[2]));
        assert!(a.iter().all(|r| (0.0..1.0).contains(&r[4].as_f64().unwrap())));
    }

    #[test]
    fn grid_and_chain_shapes() {
        assert_eq!(edge_rows(Family::Chain { n: 5 }, 0).len(), 4);
        assert_eq!(edge_rows(Family::Grid { side: 4 }, 0).len(), 2 * 4 * 3);
        let mut db = Database::new();
        generate(&mut db, "G", Family::Grid { side: 3 }, 1, true).unwrap();
        let v = db.catalog().view("G").unwrap();
        assert_eq!((v.vertex_count(), v.edge_count()), (9, 12));
    }
}
