//! SQL front end: lexer, parser, pretty-printer and binder.

pub mod ast;
pub mod binder;
mod display;
pub mod lexer;
pub mod parser;

pub use parser::{parse, parse_expr, split_script, ScriptStatement};
