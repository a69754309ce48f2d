//! The embedding API: a catalog plus planner options, executing SQL text.

use std::path::Path;

use crate::error::{Error, Result};
use crate::exec::{self, QueryResult};
use crate::expr::{self, LocalEnv};
use crate::planner::{self, PlannerOptions, QueryPlan};
use crate::sql::ast::{self, Statement};
use crate::sql::{binder, parse, split_script};
use crate::storage::{Assignment, Catalog, Column, Schema};
use crate::value::Value;

#[derive(Debug, Clone, PartialEq)]
pub enum Outcome {
    CreatedTable(String),
    CreatedView(String),
    Inserted(usize),
    Updated(usize),
    Deleted(usize),
    Rows(QueryResult),
    Plan(String),
    /// A `.command` for the caller to interpret.
    Meta(ast::MetaCommand),
}

#[derive(Debug, Clone, Default)]
pub struct Database {
    catalog: Catalog,
    options: PlannerOptions,
}

impl Database {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with_options(options: PlannerOptions) -> Self {
        Database {
            catalog: Catalog::new(),
            options,
        }
    }

    pub fn options(&self) -> PlannerOptions {
        self.options
    }

    pub fn set_options(&mut self, options: PlannerOptions) {
        self.options = options;
    }

    pub fn catalog(&self) -> &Catalog {
        &self.catalog
    }

    pub fn catalog_mut(&mut self) -> &mut Catalog {
        &mut self.catalog
    }

    /// Executes one statement.
    pub fn execute(&mut self, sql: &str) -> Result<Outcome> {
        let stmt = parse(sql)?;
        self.execute_statement(&stmt)
    }

    pub fn execute_statement(&mut self, stmt: &Statement) -> Result<Outcome> {
        match stmt {
            Statement::CreateTable(t) => {
                let cols = t.columns.iter().map(|c| Column::new(&c.name, c.ty)).collect();
                self.catalog.create_table(&t.name, Schema::new(cols)?)?;
                Ok(Outcome::CreatedTable(t.name.clone()))
            }
            Statement::CreateGraphView(def) => {
                let spec = binder::bind_view(&self.catalog, def)?;
                self.catalog.create_graph_view(spec)?;
                Ok(Outcome::CreatedView(def.name.clone()))
            }
            Statement::Insert(ins) => {
                let rows = self.insert_rows(ins)?;
                let n = rows.len();
                self.catalog.insert_many(&ins.table, rows)?;
                Ok(Outcome::Inserted(n))
            }
            Statement::Update(u) => {
                let t = self
                    .catalog
                    .table(&u.table)
                    .ok_or_else(|| Error::UnknownTable(u.table.clone()))?
                    .clone();
                let assignments = u
                    .assignments
                    .iter()
                    .map(|(c, e)| {
                        let column = t.schema().index_of(c).ok_or_else(|| Error::UnknownColumn {
                            table: u.table.clone(),
                            column: c.clone(),
                        })?;
                        Ok(Assignment {
                            column,
                            value: binder::bind_local(&self.catalog, &t, e)?,
                        })
                    })
                    .collect::<Result<Vec<_>>>()?;
                let pred = u
                    .filter
                    .as_ref()
                    .map(|f| binder::bind_local(&self.catalog, &t, f))
                    .transpose()?;
                let n = self.catalog.update_where(&u.table, &assignments, |tup| {
                    pred.as_ref()
                        .is_none_or(|p| expr::eval_bool(p, &LocalEnv(tup.values())))
                })?;
                Ok(Outcome::Updated(n))
            }
            Statement::Delete(d) => {
                let t = self
                    .catalog
                    .table(&d.table)
                    .ok_or_else(|| Error::UnknownTable(d.table.clone()))?
                    .clone();
                let pred = d
                    .filter
                    .as_ref()
                    .map(|f| binder::bind_local(&self.catalog, &t, f))
                    .transpose()?;
                let n = self.catalog.delete_where(&d.table, |tup| {
                    pred.as_ref()
                        .is_none_or(|p| expr::eval_bool(p, &LocalEnv(tup.values())))
                })?;
                Ok(Outcome::Deleted(n))
            }
            Statement::Select(s) => Ok(Outcome::Rows(self.run_select(s, &self.options)?)),
            Statement::Explain(s) => Ok(Outcome::Plan(planner::explain(&self.plan_select(s, &self.options)?))),
            Statement::Meta(m) => Ok(Outcome::Meta(m.clone())),
        }
    }

    fn insert_rows(&self, ins: &ast::Insert) -> Result<Vec<Vec<Value>>> {
        let t = self
            .catalog
            .table(&ins.table)
            .ok_or_else(|| Error::UnknownTable(ins.table.clone()))?;
        let width = t.schema().len();
        let positions = match &ins.columns {
            None => (0..width).collect::<Vec<_>>(),
            Some(cols) => cols
                .iter()
                .map(|c| {
                    t.schema().index_of(c).ok_or_else(|| Error::UnknownColumn {
                        table: ins.table.clone(),
                        column: c.clone(),
                    })
                })
                .collect::<Result<Vec<_>>>()?,
        };
        ins.rows
            .iter()
            .map(|exprs| {
                if exprs.len() != positions.len() {
                    return Err(Error::Arity {
                        table: ins.table.clone(),
                        expected: positions.len(),
                        got: exprs.len(),
                    });
                }
                let mut row = vec![Value::Null; width];
                for (&p, e) in positions.iter().zip(exprs) {
                    row[p] = binder::constant(e)?;
                }
                Ok(row)
            })
            .collect()
    }

    /// Executes `;`-separated statements, stopping at the first error. The
    /// error is returned with the 1-based line of the failing statement.
    pub fn execute_script(&mut self, text: &str) -> std::result::Result<Vec<Outcome>, (usize, Error)> {
        let mut out = Vec::new();
        for s in split_script(text) {
            out.push(self.execute(&s.text).map_err(|e| (s.line, e))?);
        }
        Ok(out)
    }

    pub fn plan(&self, sql: &str) -> Result<QueryPlan> {
        self.plan_with(sql, &self.options)
    }

    pub fn plan_with(&self, sql: &str, options: &PlannerOptions) -> Result<QueryPlan> {
        match parse(sql)? {
            Statement::Select(s) => self.plan_select(&s, options),
            Statement::Explain(s) => self.plan_select(&s, options),
            other => Err(Error::bind(format!("not a query: {other}"))),
        }
    }

    fn plan_select(&self, s: &ast::Select, options: &PlannerOptions) -> Result<QueryPlan> {
        let bound = binder::bind_select(&self.catalog, s)?;
        planner::plan(&bound, options)
    }

    fn run_select(&self, s: &ast::Select, options: &PlannerOptions) -> Result<QueryResult> {
        exec::run(&self.plan_select(s, options)?)
    }

    /// Runs a SELECT with the database's planner options.
    pub fn query(&self, sql: &str) -> Result<QueryResult> {
        self.query_with(sql, &self.options)
    }

    pub fn query_with(&self, sql: &str, options: &PlannerOptions) -> Result<QueryResult> {
        exec::run(&self.plan_with(sql, options)?)
    }

    pub fn explain(&self, sql: &str) -> Result<String> {
        Ok(planner::explain(&self.plan(sql)?))
    }

    pub fn load_csv(&mut self, table: &str, path: &Path) -> Result<usize> {
        self.catalog.load_csv(table, path)
    }

    pub fn refresh_stats(&mut self, view: &str) -> Result<f64> {
        Ok(self.catalog.refresh_stats(view)?.avg_fan_out)
    }
}
