//! Pull-based executor. Every operator implements `open`/`next`; a nested
//! loop join reopens its inner side with the current outer row as
//! parameters, which is how path scans receive their probe values.

mod shortest;
mod traverse;

use std::borrow::Cow;
use std::cell::Cell;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::expr::{self, Accumulator, Attr, Env, Expr, PathCursor};
use crate::graph::{GraphHandle, GraphView, PathValue};
use crate::planner::{PathKind, PathScan, Plan, QueryPlan};
use crate::sql::binder::{AliasDef, GraphSource, Source, TempSpec};
use crate::storage::Table;
use crate::value::Value;

pub use traverse::Rules;

/// A path bound to a row, as internal indexes into its graph.
#[derive(Debug)]
pub struct PathRow {
    pub graph: Arc<GraphHandle>,
    pub edges: Vec<u32>,
    pub vertexes: Vec<u32>,
}

impl PathRow {
    pub fn value(&self) -> PathValue {
        self.graph.path_value(&self.edges, &self.vertexes)
    }

    pub fn cursor(&self) -> PathCursor<'_> {
        PathCursor {
            graph: &self.graph,
            edges: &self.edges,
            vertexes: &self.vertexes,
        }
    }
}

#[derive(Debug, Clone)]
pub enum Field {
    Empty,
    /// Table slot, or internal vertex/edge index for graph collections.
    Slot(u32),
    Path(Arc<PathRow>),
    Value(Value),
}

/// One field per FROM alias; projections replace them with values.
#[derive(Debug, Clone)]
pub struct Row {
    pub fields: Vec<Field>,
}

impl Row {
    pub fn empty(n: usize) -> Self {
        Row {
            fields: vec![Field::Empty; n],
        }
    }

    fn with(&self, alias: usize, f: Field) -> Row {
        let mut r = self.clone();
        r.fields[alias] = f;
        r
    }
}

/// Work counters for one query.
#[derive(Debug, Default)]
pub struct ExecStats {
    /// Candidate path extensions generated by traversals.
    pub expansions: Cell<u64>,
    /// TEMPGRAPH topologies built.
    pub temp_builds: Cell<u64>,
}

impl ExecStats {
    pub fn bump_expansions(&self) {
        self.expansions.set(self.expansions.get() + 1);
    }

    pub fn snapshot(&self) -> Stats {
        Stats {
            expansions: self.expansions.get(),
            temp_builds: self.temp_builds.get(),
        }
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Stats {
    pub expansions: u64,
    pub temp_builds: u64,
}

pub struct ExecCtx<'a> {
    pub aliases: &'a [AliasDef],
    pub stats: ExecStats,
}

/// Exposes a row's fields to expression evaluation.
pub struct RowEnv<'a> {
    pub aliases: &'a [AliasDef],
    pub row: &'a Row,
}

impl Env for RowEnv<'_> {
    fn column(&self, alias: usize, attr: Attr) -> Cow<'_, Value> {
        let null = Cow::Owned(Value::Null);
        let Field::Slot(s) = self.row.fields[alias] else {
            return null;
        };
        match (&self.aliases[alias].source, attr) {
            (Source::Table(t), Attr::Table(c)) => t.get(s).map_or(null, |t| Cow::Borrowed(t.get(c))),
            (Source::Vertexes(g), Attr::Vertex(a)) => g.vertex_value(s, a),
            (Source::Edges(g), Attr::Edge(a)) => g.edge_value(s, a),
            _ => null,
        }
    }

    fn path(&self, alias: usize) -> Option<PathCursor<'_>> {
        match &self.row.fields[alias] {
            Field::Path(p) => Some(p.cursor()),
            _ => None,
        }
    }
}

pub trait Operator {
    fn open(&mut self, ctx: &ExecCtx<'_>, params: &Row) -> Result<()>;
    fn next(&mut self, ctx: &ExecCtx<'_>) -> Result<Option<Row>>;
}

fn passes(filter: &Option<Expr>, ctx: &ExecCtx<'_>, row: &Row) -> bool {
    filter.as_ref().is_none_or(|f| {
        expr::eval_bool(
            f,
            &RowEnv {
                aliases: ctx.aliases,
                row,
            },
        )
    })
}

struct EmptyOp;

impl Operator for EmptyOp {
    fn open(&mut self, _: &ExecCtx<'_>, _: &Row) -> Result<()> {
        Ok(())
    }

    fn next(&mut self, _: &ExecCtx<'_>) -> Result<Option<Row>> {
        Ok(None)
    }
}

/// Scans a list of slots (table slots or graph indexes) under one alias.
struct SlotScan {
    alias: usize,
    filter: Option<Expr>,
    source: SlotSource,
    slots: Vec<u32>,
    pos: usize,
    params: Row,
}

enum SlotSource {
    Table(Arc<Table>),
    Index {
        table: Arc<Table>,
        column: usize,
        key: Expr,
    },
    Vertexes(Arc<GraphHandle>),
    Edges(Arc<GraphHandle>),
}

impl Operator for SlotScan {
    fn open(&mut self, ctx: &ExecCtx<'_>, params: &Row) -> Result<()> {
        self.params = params.clone();
        self.pos = 0;
        self.slots = match &self.source {
            SlotSource::Table(t) => t.scan().map(|(s, _)| s).collect(),
            SlotSource::Index { table, column, key } => {
                let env = RowEnv {
                    aliases: ctx.aliases,
                    row: params,
                };
                table.lookup_eq(*column, &expr::eval(key, &env)).to_vec()
            }
            SlotSource::Vertexes(g) => g.view.vertexes().map(|(i, _)| i).collect(),
            SlotSource::Edges(g) => g.view.edges().map(|(i, _)| i).collect(),
        };
        Ok(())
    }

    fn next(&mut self, ctx: &ExecCtx<'_>) -> Result<Option<Row>> {
        while let Some(&s) = self.slots.get(self.pos) {
            self.pos += 1;
            let row = self.params.with(self.alias, Field::Slot(s));
            if passes(&self.filter, ctx, &row) {
                return Ok(Some(row));
            }
        }
        Ok(None)
    }
}

struct FilterOp {
    input: Box<dyn Operator>,
    pred: Option<Expr>,
}

impl Operator for FilterOp {
    fn open(&mut self, ctx: &ExecCtx<'_>, params: &Row) -> Result<()> {
        self.input.open(ctx, params)
    }

    fn next(&mut self, ctx: &ExecCtx<'_>) -> Result<Option<Row>> {
        while let Some(row) = self.input.next(ctx)? {
            if passes(&self.pred, ctx, &row) {
                return Ok(Some(row));
            }
        }
        Ok(None)
    }
}

struct NestedLoop {
    outer: Box<dyn Operator>,
    inner: Box<dyn Operator>,
    inner_open: bool,
}

impl Operator for NestedLoop {
    fn open(&mut self, ctx: &ExecCtx<'_>, params: &Row) -> Result<()> {
        self.inner_open = false;
        self.outer.open(ctx, params)
    }

    fn next(&mut self, ctx: &ExecCtx<'_>) -> Result<Option<Row>> {
        loop {
            if self.inner_open {
                if let Some(r) = self.inner.next(ctx)? {
                    return Ok(Some(r));
                }
                self.inner_open = false;
            }
            match self.outer.next(ctx)? {
                Some(o) => {
                    self.inner.open(ctx, &o)?;
                    self.inner_open = true;
                }
                None => return Ok(None),
            }
        }
    }
}

struct ProjectOp {
    input: Box<dyn Operator>,
    items: Vec<Expr>,
}

impl Operator for ProjectOp {
    fn open(&mut self, ctx: &ExecCtx<'_>, params: &Row) -> Result<()> {
        self.input.open(ctx, params)
    }

    fn next(&mut self, ctx: &ExecCtx<'_>) -> Result<Option<Row>> {
        let Some(row) = self.input.next(ctx)? else {
            return Ok(None);
        };
        let env = RowEnv {
            aliases: ctx.aliases,
            row: &row,
        };
        let fields = self
            .items
            .iter()
            .map(|e| Field::Value(expr::eval(e, &env).into_owned()))
            .collect();
        Ok(Some(Row { fields }))
    }
}

struct AggregateOp {
    input: Box<dyn Operator>,
    items: Vec<(crate::sql::ast::AggFunc, Option<Expr>)>,
    done: bool,
}

impl Operator for AggregateOp {
    fn open(&mut self, ctx: &ExecCtx<'_>, params: &Row) -> Result<()> {
        self.done = false;
        self.input.open(ctx, params)
    }

    fn next(&mut self, ctx: &ExecCtx<'_>) -> Result<Option<Row>> {
        if self.done {
            return Ok(None);
        }
        self.done = true;
        let mut accs: Vec<Accumulator> = self.items.iter().map(|(f, _)| Accumulator::new(*f)).collect();
        while let Some(row) = self.input.next(ctx)? {
            let env = RowEnv {
                aliases: ctx.aliases,
                row: &row,
            };
            for (acc, (_, arg)) in accs.iter_mut().zip(&self.items) {
                match arg {
                    None => acc.push_row(),
                    Some(e) => acc.push(&expr::eval(e, &env)),
                }
            }
        }
        Ok(Some(Row {
            fields: accs.iter().map(|a| Field::Value(a.finish())).collect(),
        }))
    }
}

struct LimitOp {
    input: Box<dyn Operator>,
    n: u64,
    seen: u64,
}

impl Operator for LimitOp {
    fn open(&mut self, ctx: &ExecCtx<'_>, params: &Row) -> Result<()> {
        self.seen = 0;
        self.input.open(ctx, params)
    }

    fn next(&mut self, ctx: &ExecCtx<'_>) -> Result<Option<Row>> {
        if self.seen >= self.n {
            return Ok(None);
        }
        let r = self.input.next(ctx)?;
        if r.is_some() {
            self.seen += 1;
        }
        Ok(r)
    }
}

/// A stream of paths from one traversal.
pub trait PathIter {
    fn next_path(&mut self, stats: &ExecStats) -> Result<Option<(Vec<u32>, Vec<u32>)>>;
}

struct Nothing;

impl PathIter for Nothing {
    fn next_path(&mut self, _: &ExecStats) -> Result<Option<(Vec<u32>, Vec<u32>)>> {
        Ok(None)
    }
}

struct PathScanOp {
    scan: PathScan,
    cached: Option<Arc<GraphHandle>>,
    graph: Option<Arc<GraphHandle>>,
    iter: Box<dyn PathIter>,
    params: Row,
}

fn build_temp(t: &TempSpec, env: &dyn Env, stats: &ExecStats) -> Result<Arc<GraphHandle>> {
    let mut spec = t.spec.clone();
    spec.vertex.filter = spec.vertex.filter.map(|f| expr::resolve(&f, env));
    spec.edge.filter = spec.edge.filter.map(|f| expr::resolve(&f, env));
    let view = GraphView::build(spec, &t.vertex_table, &t.edge_table)?;
    stats.temp_builds.set(stats.temp_builds.get() + 1);
    Ok(Arc::new(GraphHandle {
        view: Arc::new(view),
        vertex_table: t.vertex_table.clone(),
        edge_table: t.edge_table.clone(),
    }))
}

/// Evaluates a probe to an internal vertex index. `Err(())` means the id
/// is not in the graph, so the scan yields nothing.
fn probe(e: &Option<Expr>, env: &dyn Env, graph: &GraphHandle) -> std::result::Result<Option<u32>, ()> {
    let Some(e) = e else {
        return Ok(None);
    };
    let v = expr::eval(e, env);
    let id = match v.as_ref() {
        Value::Int(i) => Some(*i),
        Value::Float(f) if f.fract() == 0.0 => Some(*f as i64),
        _ => None,
    };
    id.and_then(|id| graph.view.vertex_idx(id)).map(Some).ok_or(())
}

impl Operator for PathScanOp {
    fn open(&mut self, ctx: &ExecCtx<'_>, params: &Row) -> Result<()> {
        self.params = params.clone();
        let env = RowEnv {
            aliases: ctx.aliases,
            row: params,
        };
        let graph = match &self.scan.source {
            GraphSource::View(g) => g.clone(),
            GraphSource::Temp(t) => match (&self.cached, t.correlated) {
                (Some(g), false) => g.clone(),
                _ => {
                    let g = build_temp(t, &env, &ctx.stats)?;
                    if !t.correlated {
                        self.cached = Some(g.clone());
                    }
                    g
                }
            },
        };
        self.iter = Box::new(Nothing);
        self.graph = Some(graph.clone());
        let (Ok(start), Ok(target)) = (
            probe(&self.scan.start, &env, &graph),
            probe(&self.scan.end, &env, &graph),
        ) else {
            return Ok(());
        };
        let rules = Rules::new(
            graph,
            self.scan.alias,
            Arc::new(self.scan.constraints.clone()),
            self.scan.interval,
            target,
        );
        let seeds: Vec<u32> = match start {
            Some(s) => vec![s],
            None => rules.graph.view.vertexes().map(|(i, _)| i).collect(),
        };
        self.iter = match &self.scan.kind {
            PathKind::Dfs => Box::new(traverse::Dfs::new(rules, seeds)),
            PathKind::Bfs => Box::new(traverse::Bfs::new(rules, seeds)),
            PathKind::Shortest(h) => {
                let s = start.expect("planner requires a start probe");
                match target {
                    Some(t) => Box::new(shortest::Yen::new(rules, h.attr, s, t)),
                    None => Box::new(shortest::Dijkstra::new(rules, h.attr, s)),
                }
            }
        };
        Ok(())
    }

    fn next(&mut self, ctx: &ExecCtx<'_>) -> Result<Option<Row>> {
        let Some((edges, vertexes)) = self.iter.next_path(&ctx.stats)? else {
            return Ok(None);
        };
        let path = PathRow {
            graph: self.graph.clone().expect("opened"),
            edges,
            vertexes,
        };
        Ok(Some(self.params.with(self.scan.alias, Field::Path(Arc::new(path)))))
    }
}

fn build(p: &Plan) -> Box<dyn Operator> {
    let scan = |alias: usize, filter: &Option<Expr>, source| -> Box<dyn Operator> {
        Box::new(SlotScan {
            alias,
            filter: filter.clone(),
            source,
            slots: Vec::new(),
            pos: 0,
            params: Row::empty(0),
        })
    };
    match p {
        Plan::Empty => Box::new(EmptyOp),
        Plan::TableScan { alias, table, filter } => scan(*alias, filter, SlotSource::Table(table.clone())),
        Plan::IndexScan {
            alias,
            table,
            column,
            key,
            filter,
        } => scan(
            *alias,
            filter,
            SlotSource::Index {
                table: table.clone(),
                column: *column,
                key: key.clone(),
            },
        ),
        Plan::VertexScan { alias, graph } => scan(*alias, &None, SlotSource::Vertexes(graph.clone())),
        Plan::EdgeScan { alias, graph } => scan(*alias, &None, SlotSource::Edges(graph.clone())),
        Plan::Filter { input, pred } => Box::new(FilterOp {
            input: build(input),
            pred: Some(pred.clone()),
        }),
        Plan::NestedLoopJoin { outer, inner } => Box::new(NestedLoop {
            outer: build(outer),
            inner: build(inner),
            inner_open: false,
        }),
        Plan::PathScan(s) => Box::new(PathScanOp {
            scan: (**s).clone(),
            cached: None,
            graph: None,
            iter: Box::new(Nothing),
            params: Row::empty(0),
        }),
        Plan::Project { input, items } => Box::new(ProjectOp {
            input: build(input),
            items: items.iter().map(|(_, e)| e.clone()).collect(),
        }),
        Plan::Aggregate { input, items } => Box::new(AggregateOp {
            input: build(input),
            items: items.iter().map(|i| (i.func, i.arg.clone())).collect(),
            done: false,
        }),
        Plan::Limit { input, n } => Box::new(LimitOp {
            input: build(input),
            n: *n,
            seen: 0,
        }),
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct QueryResult {
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Value>>,
    pub stats: Stats,
    pub warnings: Vec<String>,
}

/// A running query that yields one output row per `next`.
pub struct RowStream<'a> {
    plan: &'a QueryPlan,
    ctx: ExecCtx<'a>,
    root: Box<dyn Operator>,
}

impl<'a> RowStream<'a> {
    pub fn open(plan: &'a QueryPlan) -> Result<Self> {
        let ctx = ExecCtx {
            aliases: &plan.aliases,
            stats: ExecStats::default(),
        };
        let mut root = build(&plan.root);
        root.open(&ctx, &Row::empty(plan.aliases.len()))?;
        Ok(RowStream { plan, ctx, root })
    }

    pub fn columns(&self) -> &[String] {
        &self.plan.columns
    }

    pub fn stats(&self) -> Stats {
        self.ctx.stats.snapshot()
    }

    pub fn next_row(&mut self) -> Result<Option<Vec<Value>>> {
        let Some(row) = self.root.next(&self.ctx)? else {
            return Ok(None);
        };
        row.fields
            .into_iter()
            .map(|f| match f {
                Field::Value(v) => Ok(v),
                other => Err(Error::exec(format!("unprojected field {other:?}"))),
            })
            .collect::<Result<Vec<_>>>()
            .map(Some)
    }
}

impl Iterator for RowStream<'_> {
    type Item = Result<Vec<Value>>;

    fn next(&mut self) -> Option<Self::Item> {
        self.next_row().transpose()
    }
}

/// Runs a plan to completion.
pub fn run(plan: &QueryPlan) -> Result<QueryResult> {
    let mut stream = RowStream::open(plan)?;
    let mut rows = Vec::new();
    while let Some(r) = stream.next_row()? {
        rows.push(r);
    }
    Ok(QueryResult {
        columns: plan.columns.clone(),
        rows,
        stats: stream.stats(),
        warnings: plan.warnings.clone(),
    })
}
