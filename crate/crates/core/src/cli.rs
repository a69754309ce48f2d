//! Interactive shell and script runner behind the `gvsql` binary.

use std::io::{self, BufRead, Write};
use std::path::Path;
use std::time::Instant;

use crate::db::{Database, Outcome};
use crate::error::{Error, Result};
use crate::planner::Traversal;
use crate::sql::ast::MetaCommand;
use crate::sql::split_script;
use crate::value::Value;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum OutputMode {
    #[default]
    Table,
    Csv,
}

impl OutputMode {
    pub fn parse(s: &str) -> Option<Self> {
        match s.to_ascii_lowercase().as_str() {
            "table" => Some(OutputMode::Table),
            "csv" => Some(OutputMode::Csv),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Control {
    Continue,
    Quit,
}

/// A statement failure inside a script.
#[derive(Debug, Clone, PartialEq)]
pub struct ScriptError {
    pub line: usize,
    pub error: Error,
}

impl std::fmt::Display for ScriptError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "line {}: {}", self.line, self.error)
    }
}

const HELP: &str = "\
.quit | .exit                 leave the shell
.timing on|off                print elapsed time after each statement
.mode table|csv               result format
.tables                       list tables and graph views
.stats VIEW                   refresh and show graph view statistics
.load TABLE PATH              load a headered CSV file into TABLE
.read PATH                    run a script file
.pushdown on|off              predicate pushdown into path scans
.lengths on|off               path length inference
.traversal auto|bfs|dfs       traversal choice for path scans
.help                         this text";

pub struct Session<W: Write> {
    db: Database,
    out: W,
    timing: bool,
    mode: OutputMode,
}

impl<W: Write> Session<W> {
    pub fn new(db: Database, out: W) -> Self {
        Session {
            db,
            out,
            timing: false,
            mode: OutputMode::Table,
        }
    }

    pub fn set_mode(&mut self, mode: OutputMode) {
        self.mode = mode;
    }

    pub fn set_timing(&mut self, on: bool) {
        self.timing = on;
    }

    pub fn database(&self) -> &Database {
        &self.db
    }

    pub fn database_mut(&mut self) -> &mut Database {
        &mut self.db
    }

    pub fn into_output(self) -> W {
        self.out
    }

    /// Executes one statement or meta-command and prints its outcome.
    pub fn run_statement(&mut self, text: &str) -> Result<Control> {
        let started = Instant::now();
        let outcome = self.db.execute(text)?;
        let control = self.print_outcome(outcome)?;
        if self.timing && control == Control::Continue {
            let ms = started.elapsed().as_secs_f64() * 1000.0;
            writeln!(self.out, "elapsed: {ms:.3} ms").map_err(io_err)?;
        }
        Ok(control)
    }

    /// Runs statements in order and stops at the first failure.
    pub fn run_script(&mut self, text: &str) -> std::result::Result<Control, ScriptError> {
        for s in split_script(text) {
            match self.run_statement(&s.text) {
                Ok(Control::Quit) => return Ok(Control::Quit),
                Ok(Control::Continue) => {}
                Err(error) => {
                    let line = match &error {
                        Error::Syntax { line, .. } => s.line + line - 1,
                        _ => s.line,
                    };
                    return Err(ScriptError { line, error });
                }
            }
        }
        Ok(Control::Continue)
    }

    /// Reads statements until `.quit` or end of input. Errors are reported
    /// and the loop continues.
    pub fn repl(&mut self, input: impl BufRead, prompt: bool) -> io::Result<()> {
        let mut buf = String::new();
        let mut lines = input.lines();
        loop {
            if prompt {
                write!(self.out, "{}", if buf.is_empty() { "gvsql> " } else { "   ...> " })?;
                self.out.flush()?;
            }
            let Some(line) = lines.next() else { break };
            let line = line?;
            let complete = if buf.trim().is_empty() && line.trim_start().starts_with('.') {
                true
            } else {
                line.trim_end().ends_with(';')
            };
            buf.push_str(&line);
            buf.push('\n');
            if !complete {
                continue;
            }
            let text = std::mem::take(&mut buf);
            for s in split_script(&text) {
                match self.run_statement(&s.text) {
                    Ok(Control::Quit) => return Ok(()),
                    Ok(Control::Continue) => {}
                    Err(e) => writeln!(self.out, "error: {e}")?,
                }
            }
        }
        if !buf.trim().is_empty() {
            for s in split_script(&buf) {
                if let Err(e) = self.run_statement(&s.text) {
                    writeln!(self.out, "error: {e}")?;
                }
            }
        }
        Ok(())
    }

    fn print_outcome(&mut self, outcome: Outcome) -> Result<Control> {
        let text = match outcome {
            Outcome::CreatedTable(n) => format!("created table {n}\n"),
            Outcome::CreatedView(n) => format!("created graph view {n}\n"),
            Outcome::Inserted(n) => format!("{n} row(s) inserted\n"),
            Outcome::Updated(n) => format!("{n} row(s) updated\n"),
            Outcome::Deleted(n) => format!("{n} row(s) deleted\n"),
            Outcome::Rows(r) => {
                let mut s = String::new();
                for w in &r.warnings {
                    s.push_str(&format!("warning: {w}\n"));
                }
                s + &match self.mode {
                    OutputMode::Table => format_table(&r.columns, &r.rows),
                    OutputMode::Csv => format_csv(&r.columns, &r.rows),
                }
            }
            Outcome::Plan(p) => p,
            Outcome::Meta(m) => return self.meta(&m),
        };
        self.out.write_all(text.as_bytes()).map_err(io_err)?;
        Ok(Control::Continue)
    }

    fn meta(&mut self, m: &MetaCommand) -> Result<Control> {
        let arg = |i: usize| {
            m.args
                .get(i)
                .map(String::as_str)
                .ok_or_else(|| Error::Usage(format!(".{} expects more arguments; see .help", m.name)))
        };
        let on_off = |s: &str| match s.to_ascii_lowercase().as_str() {
            "on" => Ok(true),
            "off" => Ok(false),
            _ => Err(Error::Usage(format!("expected on or off, got '{s}'"))),
        };
        let mut text = String::new();
        match m.name.to_ascii_lowercase().as_str() {
            "quit" | "exit" => return Ok(Control::Quit),
            "help" => text = format!("{HELP}\n"),
            "timing" => self.timing = on_off(arg(0)?)?,
            "mode" => {
                self.mode = OutputMode::parse(arg(0)?).ok_or_else(|| Error::Usage("expected .mode table|csv".into()))?
            }
            "tables" => {
                let mut names: Vec<String> = self.db.catalog().tables().map(|t| t.name().to_string()).collect();
                names.sort();
                let mut views: Vec<String> = self
                    .db
                    .catalog()
                    .views()
                    .map(|v| format!("{} (graph view)", v.name()))
                    .collect();
                views.sort();
                for n in names.into_iter().chain(views) {
                    text.push_str(&n);
                    text.push('\n');
                }
            }
            "stats" => {
                let view = arg(0)?;
                let fan_out = self.db.refresh_stats(view)?;
                let v = self
                    .db
                    .catalog()
                    .view(view)
                    .ok_or_else(|| Error::UnknownView(view.into()))?;
                text = format!(
                    "vertexes: {}\nedges: {}\navg fan-out: {:.3}\n",
                    v.vertex_count(),
                    v.edge_count(),
                    fan_out
                );
            }
            "load" => {
                let n = load_csv(&mut self.db, arg(0)?, Path::new(arg(1)?))?;
                text = format!("{n} row(s) loaded\n");
            }
            "read" => {
                let path = arg(0)?;
                let script = std::fs::read_to_string(path).map_err(|e| Error::Io {
                    path: path.into(),
                    message: e.to_string(),
                })?;
                return self
                    .run_script(&script)
                    .map_err(|e| Error::exec(format!("{path}: {e}")));
            }
            "pushdown" | "lengths" => {
                let on = on_off(arg(0)?)?;
                let mut o = self.db.options();
                if m.name.eq_ignore_ascii_case("pushdown") {
                    o.pushdown = on;
                } else {
                    o.infer_length = on;
                }
                self.db.set_options(o);
            }
            "traversal" => {
                let mut o = self.db.options();
                o.force_traversal = match arg(0)?.to_ascii_lowercase().as_str() {
                    "auto" => None,
                    "bfs" => Some(Traversal::Bfs),
                    "dfs" => Some(Traversal::Dfs),
                    other => return Err(Error::Usage(format!("unknown traversal '{other}'"))),
                };
                self.db.set_options(o);
            }
            other => return Err(Error::Usage(format!("unknown command '.{other}'; see .help"))),
        }
        self.out.write_all(text.as_bytes()).map_err(io_err)?;
        Ok(Control::Continue)
    }
}

fn io_err(e: io::Error) -> Error {
    Error::Io {
        path: "<output>".into(),
        message: e.to_string(),
    }
}

/// Loads a CSV file, creating the table from the header when it does not
/// exist yet.
pub fn load_csv(db: &mut Database, table: &str, path: &Path) -> Result<usize> {
    if db.catalog().table(table).is_none() {
        let schema = crate::storage::csv::infer_schema(path)?;
        db.catalog_mut().create_table(table, schema)?;
    }
    db.load_csv(table, path)
}

/// Left-aligned columns separated by ` | `, then a row count.
pub fn format_table(columns: &[String], rows: &[Vec<Value>]) -> String {
    let cells: Vec<Vec<String>> = rows.iter().map(|r| r.iter().map(Value::to_string).collect()).collect();
    let mut widths: Vec<usize> = columns.iter().map(|c| c.chars().count()).collect();
    for r in &cells {
        for (w, c) in widths.iter_mut().zip(r) {
            *w = (*w).max(c.chars().count());
        }
    }
    let line = |vals: &[String]| {
        let parts: Vec<String> = vals.iter().zip(&widths).map(|(v, w)| format!("{v:<w$}")).collect();
        parts.join(" | ").trim_end().to_string() + "\n"
    };
    let mut s = line(columns);
    let rule: Vec<String> = widths.iter().map(|w| "-".repeat(*w)).collect();
    s.push_str(&rule.join("-+-"));
    s.push('\n');
    for r in &cells {
        s.push_str(&line(r));
    }
    s.push_str(&format!("{} row(s)\n", rows.len()));
    s
}

pub fn format_csv(columns: &[String], rows: &[Vec<Value>]) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(columns).expect("write to memory");
    for r in rows {
        w.write_record(r.iter().map(|v| match v {
            Value::Null => String::new(),
            v => v.to_string(),
        }))
        .expect("write to memory");
    }
    String::from_utf8(w.into_inner().expect("flush to memory")).expect("utf-8 output")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn session() -> Session<Vec<u8>> {
        Session::new(Database::new(), Vec::new())
    }

    fn output(s: Session<Vec<u8>>) -> String {
        String::from_utf8(s.into_output()).unwrap()
    }

    #[test]
    fn table_format() {
        let t = format_table(
            &["Id".into(), "Name".into()],
            &[
                vec![Value::Int(1), Value::from("Alice")],
                vec![Value::Int(22), Value::Null],
            ],
        );
        assert_eq!(t, "Id | Name\n---+------\n1  | Alice\n22 | NULL\n2 row(s)\n");
    }

    #[test]
    fn csv_format_quotes() {
        let t = format_csv(&["a".into()], &[vec![Value::from("x,y")], vec![Value::Null]]);
        assert_eq!(t, "a\n\"x,y\"\n\"\"\n");
    }

    #[test]
    fn script_stops_at_first_error() {
        let mut s = session();
        let err = s
            .run_script(
                "CREATE TABLE T (a INTEGER);\nINSERT INTO T VALUES (1);\n\nSELECT b FROM T;\nINSERT INTO T VALUES (2);",
            )
            .unwrap_err();
        assert_eq!(err.line, 4);
        assert_eq!(s.database().catalog().table("T").unwrap().len(), 1);
    }

    #[test]
    fn syntax_error_line_is_absolute() {
        let mut s = session();
        let err = s
            .run_script("CREATE TABLE T (a INTEGER);\nSELECT a\nFROM T\nWHERE ;")
            .unwrap_err();
        assert_eq!(err.line, 4);
    }

    #[test]
    fn repl_meta_and_continuation() {
        let mut s = session();
        let input = "CREATE TABLE T\n  (a INTEGER);\nINSERT INTO T VALUES (1), (2);\n.mode csv\nSELECT a FROM T;\nSELECT nope FROM T;\n.quit\nSELECT a FROM T;\n";
        s.repl(input.as_bytes(), false).unwrap();
        let out = output(s);
        assert!(out.contains("a\n1\n2\n"), "{out}");
        assert!(out.contains("error: unknown column"), "{out}");
        assert_eq!(out.matches("a\n1\n2\n").count(), 1);
    }

    #[test]
    fn timing_line() {
        let mut s = session();
        s.run_script(".timing on\nCREATE TABLE T (a INTEGER);").unwrap();
        let out = output(s);
        let last = out.lines().last().unwrap();
        assert!(last.starts_with("elapsed: ") && last.ends_with(" ms"), "{out}");
    }
}
