//! Bound expressions and their evaluation, including path expressions.
//!
//! A comparison or IN-list may contain one multi-position path reference
//! (`Edges[i..j]`, `Edges[i..*]`, `Edges[ANY]`, or a whole collection). The
//! reference quantifies over that comparison: ranges and whole collections
//! are universal, `ANY` is existential. Every path reference also carries a
//! required length; on shorter paths the comparison is false.

use std::borrow::Cow;
use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::sync::Arc;

use crate::graph::{EdgeAttr, GraphHandle, VertexAttr};
use crate::sql::ast::{AggFunc, CmpOp, EdgeEnd};
use crate::storage::Table;
use crate::value::Value;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Index {
    At(u32),
    Range(u32, u32),
    From(u32),
    Any,
    /// Whole collection (no index written).
    All,
}

impl Index {
    pub fn is_multi(self) -> bool {
        !matches!(self, Index::At(_))
    }

    pub fn is_universal(self) -> bool {
        matches!(self, Index::Range(..) | Index::From(_) | Index::All)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PathAccess {
    Length,
    PathString,
    Start(VertexAttr),
    End(VertexAttr),
    Vertex {
        index: Index,
        attr: VertexAttr,
    },
    Edge {
        index: Index,
        attr: EdgeAttr,
    },
    EdgeEnd {
        index: Index,
        end: EdgeEnd,
        attr: VertexAttr,
    },
}

impl PathAccess {
    pub fn index(self) -> Option<Index> {
        match self {
            PathAccess::Vertex { index, .. } | PathAccess::Edge { index, .. } | PathAccess::EdgeEnd { index, .. } => {
                Some(index)
            }
            _ => None,
        }
    }

    pub fn is_multi(self) -> bool {
        self.index().is_some_and(Index::is_multi)
    }

    fn on_vertexes(self) -> bool {
        matches!(self, PathAccess::Vertex { .. })
    }

    /// Smallest path length on which the reference is defined.
    pub fn required_len(self) -> u32 {
        let Some(index) = self.index() else {
            return 1;
        };
        if self.on_vertexes() {
            match index {
                Index::At(i) | Index::From(i) | Index::Range(_, i) => i.max(1),
                Index::Any | Index::All => 1,
            }
        } else {
            match index {
                Index::At(i) | Index::From(i) | Index::Range(_, i) => i + 1,
                Index::Any | Index::All => 1,
            }
        }
    }

    /// Positions covered on a path of length `len`.
    fn positions(self, len: u32) -> std::ops::Range<u32> {
        let last = if self.on_vertexes() { len + 1 } else { len };
        match self.index() {
            Some(Index::At(i)) => i..(i + 1).min(last).max(i),
            Some(Index::Range(i, j)) => i..(j + 1).min(last).max(i),
            Some(Index::From(i)) => i..last.max(i),
            _ => 0..last,
        }
    }
}

/// How a column reference is read from its alias.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Attr {
    Table(usize),
    Vertex(VertexAttr),
    Edge(EdgeAttr),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AggTarget {
    Edges(EdgeAttr),
    Vertexes(VertexAttr),
}

#[derive(Debug, Clone)]
pub struct SubQuery {
    pub table: Arc<Table>,
    pub column: usize,
    /// Over `Local` (the subquery's table) and outer aliases.
    pub filter: Option<Expr>,
}

impl PartialEq for SubQuery {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.table, &other.table) && self.column == other.column && self.filter == other.filter
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Expr {
    Lit(Value),
    Col {
        alias: usize,
        attr: Attr,
    },
    /// Column of the tuple under evaluation in a source filter or subquery.
    Local(usize),
    Path {
        alias: usize,
        access: PathAccess,
    },
    PathAgg {
        alias: usize,
        func: AggFunc,
        target: AggTarget,
    },
    Cmp {
        op: CmpOp,
        left: Box<Expr>,
        right: Box<Expr>,
    },
    InList {
        expr: Box<Expr>,
        list: Vec<Expr>,
        negated: bool,
    },
    InSubquery {
        expr: Box<Expr>,
        sub: Box<SubQuery>,
        negated: bool,
    },
    And(Box<Expr>, Box<Expr>),
    Or(Box<Expr>, Box<Expr>),
    Not(Box<Expr>),
}

impl Expr {
    pub fn and(self, other: Expr) -> Expr {
        Expr::And(Box::new(self), Box::new(other))
    }

    /// Conjunction of `parts`, or `None` when empty.
    pub fn conjunction(parts: impl IntoIterator<Item = Expr>) -> Option<Expr> {
        parts.into_iter().reduce(Expr::and)
    }

    /// Pre-order walk, descending into IN lists and subquery filters.
    pub fn visit<'a>(&'a self, f: &mut impl FnMut(&'a Expr)) {
        f(self);
        match self {
            Expr::Cmp { left, right, .. } => {
                left.visit(f);
                right.visit(f);
            }
            Expr::InList { expr, list, .. } => {
                expr.visit(f);
                list.iter().for_each(|e| e.visit(f));
            }
            Expr::InSubquery { expr, sub, .. } => {
                expr.visit(f);
                if let Some(w) = &sub.filter {
                    w.visit(f);
                }
            }
            Expr::And(a, b) | Expr::Or(a, b) => {
                a.visit(f);
                b.visit(f);
            }
            Expr::Not(e) => e.visit(f),
            _ => {}
        }
    }

    /// Aliases referenced anywhere in the expression.
    pub fn aliases(&self) -> BTreeSet<usize> {
        let mut out = BTreeSet::new();
        self.visit(&mut |e| match e {
            Expr::Col { alias, .. } | Expr::Path { alias, .. } | Expr::PathAgg { alias, .. } => {
                out.insert(*alias);
            }
            _ => {}
        });
        out
    }

    pub fn has_subquery(&self) -> bool {
        let mut found = false;
        self.visit(&mut |e| found |= matches!(e, Expr::InSubquery { .. }));
        found
    }
}

/// A path being evaluated: internal edge and vertex indexes into a graph.
#[derive(Clone, Copy)]
pub struct PathCursor<'a> {
    pub graph: &'a GraphHandle,
    pub edges: &'a [u32],
    pub vertexes: &'a [u32],
}

impl PathCursor<'_> {
    pub fn len(&self) -> u32 {
        self.edges.len() as u32
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }
}

/// Evaluation context supplying column values and paths.
pub trait Env {
    fn column(&self, _alias: usize, _attr: Attr) -> Cow<'_, Value> {
        Cow::Owned(Value::Null)
    }

    fn local(&self, _col: usize) -> Cow<'_, Value> {
        Cow::Owned(Value::Null)
    }

    fn path(&self, _alias: usize) -> Option<PathCursor<'_>> {
        None
    }
}

/// Environment exposing one tuple as `Local` columns.
pub struct LocalEnv<'a>(pub &'a [Value]);

impl Env for LocalEnv<'_> {
    fn local(&self, col: usize) -> Cow<'_, Value> {
        Cow::Borrowed(&self.0[col])
    }
}

/// Environment exposing a single path under `alias`.
pub struct PathEnv<'a> {
    pub alias: usize,
    pub cursor: PathCursor<'a>,
}

impl Env for PathEnv<'_> {
    fn path(&self, alias: usize) -> Option<PathCursor<'_>> {
        (alias == self.alias).then_some(self.cursor)
    }
}

/// Outer environment plus a subquery tuple as `Local`.
struct SubEnv<'a> {
    outer: &'a dyn Env,
    local: &'a [Value],
}

impl Env for SubEnv<'_> {
    fn column(&self, alias: usize, attr: Attr) -> Cow<'_, Value> {
        self.outer.column(alias, attr)
    }

    fn local(&self, col: usize) -> Cow<'_, Value> {
        Cow::Borrowed(&self.local[col])
    }

    fn path(&self, alias: usize) -> Option<PathCursor<'_>> {
        self.outer.path(alias)
    }
}

/// Evaluates to a value. Boolean sub-expressions yield `Bool`.
pub fn eval<'a>(e: &'a Expr, env: &'a dyn Env) -> Cow<'a, Value> {
    value_at(e, env, None)
}

fn value_at<'a>(e: &'a Expr, env: &'a dyn Env, pin: Option<u32>) -> Cow<'a, Value> {
    match e {
        Expr::Lit(v) => Cow::Borrowed(v),
        Expr::Col { alias, attr } => env.column(*alias, *attr),
        Expr::Local(c) => env.local(*c),
        Expr::Path { alias, access } => match env.path(*alias) {
            Some(c) => path_value(c, *access, pin),
            None => Cow::Owned(Value::Null),
        },
        Expr::PathAgg { alias, func, target } => match env.path(*alias) {
            Some(c) => Cow::Owned(path_aggregate(c, *func, *target)),
            None => Cow::Owned(Value::Null),
        },
        _ => Cow::Owned(Value::Bool(eval_bool(e, env))),
    }
}

fn path_value(c: PathCursor<'_>, access: PathAccess, pin: Option<u32>) -> Cow<'_, Value> {
    let len = c.len();
    let pos = |index: Index| match index {
        Index::At(i) => Some(i),
        _ => pin,
    };
    let null = Cow::Owned(Value::Null);
    match access {
        PathAccess::Length => Cow::Owned(Value::Int(len as i64)),
        PathAccess::PathString => Cow::Owned(Value::Text(c.graph.path_value(c.edges, c.vertexes).path_string())),
        PathAccess::Start(attr) => c.graph.vertex_value(c.vertexes[0], attr),
        PathAccess::End(attr) => c.graph.vertex_value(*c.vertexes.last().unwrap(), attr),
        PathAccess::Vertex { index, attr } => match pos(index) {
            Some(p) if p <= len => c.graph.vertex_value(c.vertexes[p as usize], attr),
            _ => null,
        },
        PathAccess::Edge { index, attr } => match pos(index) {
            Some(p) if p < len => c.graph.edge_value(c.edges[p as usize], attr),
            _ => null,
        },
        PathAccess::EdgeEnd { index, end, attr } => match pos(index) {
            Some(p) if p < len => {
                let v = match end {
                    EdgeEnd::StartVertex => c.vertexes[p as usize],
                    EdgeEnd::EndVertex => c.vertexes[p as usize + 1],
                };
                c.graph.vertex_value(v, attr)
            }
            _ => null,
        },
    }
}

/// Folds an aggregate over all edges or vertexes of a path.
pub fn path_aggregate(c: PathCursor<'_>, func: AggFunc, target: AggTarget) -> Value {
    let mut acc = Accumulator::new(func);
    match target {
        AggTarget::Edges(attr) => {
            for &e in c.edges {
                acc.push(&c.graph.edge_value(e, attr));
            }
        }
        AggTarget::Vertexes(attr) => {
            for &v in c.vertexes {
                acc.push(&c.graph.vertex_value(v, attr));
            }
        }
    }
    acc.finish()
}

/// Predicate truth; comparisons involving null are false.
pub fn eval_bool(e: &Expr, env: &dyn Env) -> bool {
    match e {
        Expr::And(a, b) => eval_bool(a, env) && eval_bool(b, env),
        Expr::Or(a, b) => eval_bool(a, env) || eval_bool(b, env),
        Expr::Not(x) => !eval_bool(x, env),
        Expr::Cmp { .. } | Expr::InList { .. } => eval_atom(e, env),
        Expr::InSubquery { expr, sub, negated } => {
            let v = eval(expr, env);
            if v.is_null() {
                return false;
            }
            let found = subquery_values(sub, env).iter().any(|x| v.sql_eq(x));
            found != *negated
        }
        other => matches!(*eval(other, env), Value::Bool(true)),
    }
}

fn multi_ref(e: &Expr) -> Option<(usize, PathAccess)> {
    let leaf = |x: &Expr| match x {
        Expr::Path { alias, access } if access.is_multi() => Some((*alias, *access)),
        _ => None,
    };
    match e {
        Expr::Cmp { left, right, .. } => leaf(left).or_else(|| leaf(right)),
        Expr::InList { expr, list, .. } => leaf(expr).or_else(|| list.iter().find_map(leaf)),
        _ => None,
    }
}

fn eval_atom(e: &Expr, env: &dyn Env) -> bool {
    let Some((alias, access)) = multi_ref(e) else {
        return atom_at(e, env, None);
    };
    let Some(c) = env.path(alias) else {
        return false;
    };
    let len = c.len();
    if len < access.required_len() {
        return false;
    }
    let mut positions = access.positions(len);
    if access.index() == Some(Index::Any) {
        positions.any(|p| atom_at(e, env, Some(p)))
    } else {
        positions.all(|p| atom_at(e, env, Some(p)))
    }
}

/// Evaluates a comparison or IN-list with its multi-position reference pinned
/// to position `pin`.
pub fn eval_pinned(e: &Expr, env: &dyn Env, pin: u32) -> bool {
    atom_at(e, env, Some(pin))
}

fn atom_at(e: &Expr, env: &dyn Env, pin: Option<u32>) -> bool {
    match e {
        Expr::Cmp { op, left, right } => {
            let l = value_at(left, env, pin);
            let r = value_at(right, env, pin);
            compare(*op, &l, &r)
        }
        Expr::InList { expr, list, negated } => {
            let v = value_at(expr, env, pin);
            if v.is_null() {
                return false;
            }
            let found = list.iter().any(|x| v.sql_eq(&value_at(x, env, pin)));
            found != *negated
        }
        other => eval_bool(other, env),
    }
}

pub fn compare(op: CmpOp, l: &Value, r: &Value) -> bool {
    let Some(ord) = l.compare(r) else {
        return false;
    };
    match op {
        CmpOp::Eq => ord == Ordering::Equal,
        CmpOp::NotEq => ord != Ordering::Equal,
        CmpOp::Lt => ord == Ordering::Less,
        CmpOp::LtEq => ord != Ordering::Greater,
        CmpOp::Gt => ord == Ordering::Greater,
        CmpOp::GtEq => ord != Ordering::Less,
    }
}

fn subquery_values(sub: &SubQuery, env: &dyn Env) -> Vec<Value> {
    sub.table
        .scan()
        .filter(|(_, t)| {
            sub.filter.as_ref().is_none_or(|f| {
                eval_bool(
                    f,
                    &SubEnv {
                        outer: env,
                        local: t.values(),
                    },
                )
            })
        })
        .map(|(_, t)| t.get(sub.column).clone())
        .filter(|v| !v.is_null())
        .collect()
}

/// Replaces outer column references with their current values and
/// subqueries with literal IN-lists, leaving only `Local` references.
pub fn resolve(e: &Expr, env: &dyn Env) -> Expr {
    let r = |x: &Expr| Box::new(resolve(x, env));
    match e {
        Expr::Col { .. } | Expr::Path { .. } | Expr::PathAgg { .. } => Expr::Lit(eval(e, env).into_owned()),
        Expr::Lit(_) | Expr::Local(_) => e.clone(),
        Expr::Cmp { op, left, right } => Expr::Cmp {
            op: *op,
            left: r(left),
            right: r(right),
        },
        Expr::InList { expr, list, negated } => Expr::InList {
            expr: r(expr),
            list: list.iter().map(|x| resolve(x, env)).collect(),
            negated: *negated,
        },
        Expr::InSubquery { expr, sub, negated } => Expr::InList {
            expr: r(expr),
            list: subquery_values(sub, env).into_iter().map(Expr::Lit).collect(),
            negated: *negated,
        },
        Expr::And(a, b) => Expr::And(r(a), r(b)),
        Expr::Or(a, b) => Expr::Or(r(a), r(b)),
        Expr::Not(x) => Expr::Not(r(x)),
    }
}

/// Running state of COUNT/SUM/MIN/MAX/AVG. Nulls are skipped.
#[derive(Debug, Clone)]
pub struct Accumulator {
    func: AggFunc,
    count: i64,
    int_sum: Option<i64>,
    float_sum: f64,
    all_int: bool,
    best: Option<Value>,
}

impl Accumulator {
    pub fn new(func: AggFunc) -> Self {
        Accumulator {
            func,
            count: 0,
            int_sum: Some(0),
            float_sum: 0.0,
            all_int: true,
            best: None,
        }
    }

    /// Counts a row regardless of value (`COUNT(*)`).
    pub fn push_row(&mut self) {
        self.count += 1;
    }

    pub fn push(&mut self, v: &Value) {
        if v.is_null() {
            return;
        }
        self.count += 1;
        match self.func {
            AggFunc::Count => {}
            AggFunc::Sum | AggFunc::Avg => {
                match v {
                    Value::Int(i) => self.int_sum = self.int_sum.and_then(|s| s.checked_add(*i)),
                    _ => self.all_int = false,
                }
                self.float_sum += v.as_f64().unwrap_or(0.0);
            }
            AggFunc::Min | AggFunc::Max => {
                let replace = match &self.best {
                    None => true,
                    Some(b) => {
                        let ord = v.compare(b);
                        if self.func == AggFunc::Min {
                            ord == Some(Ordering::Less)
                        } else {
                            ord == Some(Ordering::Greater)
                        }
                    }
                };
                if replace {
                    self.best = Some(v.clone());
                }
            }
        }
    }

    pub fn finish(&self) -> Value {
        match self.func {
            AggFunc::Count => Value::Int(self.count),
            _ if self.count == 0 => Value::Null,
            AggFunc::Sum => match (self.all_int, self.int_sum) {
                (true, Some(s)) => Value::Int(s),
                _ => Value::Float(self.float_sum),
            },
            AggFunc::Avg => Value::Float(self.float_sum / self.count as f64),
            AggFunc::Min | AggFunc::Max => self.best.clone().unwrap_or(Value::Null),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn required_lengths() {
        let e = |index| PathAccess::Edge {
            index,
            attr: EdgeAttr::Id,
        };
        let v = |index| PathAccess::Vertex {
            index,
            attr: VertexAttr::Id,
        };
        assert_eq!(e(Index::From(5)).required_len(), 6);
        assert_eq!(e(Index::Range(7, 9)).required_len(), 10);
        assert_eq!(e(Index::At(0)).required_len(), 1);
        assert_eq!(e(Index::Any).required_len(), 1);
        assert_eq!(v(Index::At(3)).required_len(), 3);
        assert_eq!(v(Index::At(0)).required_len(), 1);
        assert_eq!(e(Index::Range(1, 3)).positions(2), 1..2);
        assert_eq!(v(Index::All).positions(2), 0..3);
    }

    #[test]
    fn accumulator_skips_nulls() {
        let mut a = Accumulator::new(AggFunc::Sum);
        a.push(&Value::Int(1));
        a.push(&Value::Null);
        a.push(&Value::Int(2));
        assert_eq!(a.finish(), Value::Int(3));
        let mut a = Accumulator::new(AggFunc::Avg);
        a.push(&Value::Int(1));
        a.push(&Value::Float(2.0));
        assert_eq!(a.finish(), Value::Float(1.5));
        assert_eq!(Accumulator::new(AggFunc::Max).finish(), Value::Null);
        assert_eq!(Accumulator::new(AggFunc::Count).finish(), Value::Int(0));
    }
}
