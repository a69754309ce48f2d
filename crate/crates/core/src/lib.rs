//! An embedded in-memory relational engine with graph views over relational
//! tables, path queries in SQL, and a pull-based executor.

pub mod baseline;
pub mod bench;
pub mod cli;
mod db;
pub mod error;
pub mod exec;
pub mod expr;
pub mod gen;
pub mod graph;
pub mod planner;
pub mod sql;
pub mod storage;
pub mod value;

pub use db::{Database, Outcome};
pub use error::{Error, Result};
pub use exec::QueryResult;
pub use planner::PlannerOptions;
pub use value::{DataType, Value};
