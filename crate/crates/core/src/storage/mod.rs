//! Relational tables: schemas, tuples with stable locators, lazy hash
//! indexes, CSV ingestion, and the catalog that wires tables to graph views.

mod catalog;
pub mod csv;
mod schema;
mod table;

pub use catalog::{Assignment, Catalog};
pub use schema::{Column, Schema};
pub use table::{Table, TableId, Tuple, TupleLocator};
