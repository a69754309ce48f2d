//! Relational baselines built from the same scan and join operators as the
//! query engine, with no graph topology: reachability by iterated joins,
//! single-source shortest paths by set-at-a-time relaxation, and triangle
//! counting by a three-way self-join. Also a brute-force path enumerator
//! used as a test oracle on small graphs.

use std::collections::{HashMap, HashSet};
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::exec::{self, PathRow};
use crate::expr::{self, Attr, Expr, PathEnv};
use crate::graph::GraphHandle;
use crate::planner::{Plan, QueryPlan};
use crate::sql::ast::CmpOp;
use crate::sql::binder::{AliasDef, Source};
use crate::storage::{Column, Schema, Table, TableId};
use crate::value::{DataType, Value};

fn alias(name: &str, t: &Arc<Table>) -> AliasDef {
    AliasDef {
        name: name.to_string(),
        source: Source::Table(t.clone()),
    }
}

fn col(alias: usize, c: usize) -> Expr {
    Expr::Col {
        alias,
        attr: Attr::Table(c),
    }
}

fn cmp(op: CmpOp, l: Expr, r: Expr) -> Expr {
    Expr::Cmp {
        op,
        left: Box::new(l),
        right: Box::new(r),
    }
}

fn temp_table(name: &str, cols: &[(&str, DataType)], rows: impl IntoIterator<Item = Vec<Value>>) -> Arc<Table> {
    let schema = Schema::new(cols.iter().map(|(n, t)| Column::new(*n, *t)).collect()).expect("valid schema");
    let mut t = Table::new(TableId(u32::MAX), name, schema);
    for r in rows {
        t.push(r);
    }
    Arc::new(t)
}

/// `SELECT <items> FROM frontier F, edges E WHERE E.<join_col> = F.<0> [AND filter]`
/// through a nested-loop join with an index scan on the edge side.
fn frontier_join(
    frontier: &Arc<Table>,
    edges: &Arc<Table>,
    join_col: usize,
    filter: Option<Expr>,
    items: Vec<Expr>,
) -> Result<Vec<Vec<Value>>> {
    edges.ensure_index(join_col);
    let plan = QueryPlan {
        root: Plan::Project {
            input: Box::new(Plan::NestedLoopJoin {
                outer: Box::new(Plan::TableScan {
                    alias: 0,
                    table: frontier.clone(),
                    filter: None,
                }),
                inner: Box::new(Plan::IndexScan {
                    alias: 1,
                    table: edges.clone(),
                    column: join_col,
                    key: col(0, 0),
                    filter,
                }),
            }),
            items: items
                .into_iter()
                .enumerate()
                .map(|(i, e)| (format!("c{i}"), e))
                .collect(),
        },
        aliases: vec![alias("F", frontier), alias("E", edges)],
        columns: Vec::new(),
        warnings: Vec::new(),
    };
    Ok(exec::run(&plan)?.rows)
}

/// An edge-attribute selection `column op value` applied to edge tuples.
#[derive(Debug, Clone)]
pub struct EdgeFilter {
    pub column: usize,
    pub op: CmpOp,
    pub value: Value,
}

impl EdgeFilter {
    fn expr(&self) -> Expr {
        self.at(1)
    }

    fn at(&self, alias: usize) -> Expr {
        cmp(self.op, col(alias, self.column), Expr::Lit(self.value.clone()))
    }
}

#[derive(Debug, Clone)]
pub struct ReachOptions {
    pub max_depth: u32,
    /// Keep a visited set. Without it the frontier carries every walk.
    pub dedup: bool,
    pub filter: Option<EdgeFilter>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Reach {
    pub reachable: bool,
    /// Hop count at which `dst` was first reached.
    pub depth: Option<u32>,
    /// Rows produced by all join rounds.
    pub joined_rows: u64,
}

/// Whether `dst` is reachable from `src` within `max_depth` hops, by
/// joining a frontier table with the edge table once per hop.
pub fn join_reachability(g: &GraphHandle, src: i64, dst: i64, opts: &ReachOptions) -> Result<Reach> {
    let spec = &g.view.spec().edge;
    let mut out = Reach {
        reachable: src == dst,
        depth: (src == dst).then_some(0),
        joined_rows: 0,
    };
    if src == dst {
        return Ok(out);
    }
    let directions: &[(usize, usize)] = if g.view.directed() {
        &[(spec.from_col, spec.to_col)]
    } else {
        &[(spec.from_col, spec.to_col), (spec.to_col, spec.from_col)]
    };
    let mut visited: HashSet<i64> = HashSet::from([src]);
    let mut frontier = vec![src];
    for depth in 1..=opts.max_depth {
        let ft = temp_table(
            "frontier",
            &[("v", DataType::Integer)],
            frontier.iter().map(|&v| vec![Value::Int(v)]),
        );
        let mut next = Vec::new();
        for &(join, other) in directions {
            let rows = frontier_join(
                &ft,
                &g.edge_table,
                join,
                opts.filter.as_ref().map(EdgeFilter::expr),
                vec![col(1, other)],
            )?;
            out.joined_rows += rows.len() as u64;
            for r in rows {
                let Some(v) = r[0].as_i64() else { continue };
                if v == dst {
                    out.reachable = true;
                    out.depth = Some(depth);
                    return Ok(out);
                }
                if !opts.dedup || visited.insert(v) {
                    next.push(v);
                }
            }
        }
        if next.is_empty() {
            break;
        }
        frontier = next;
    }
    Ok(out)
}

/// Single-source shortest distances over the edge table: each round joins
/// the vertexes whose distance improved with their outgoing edges.
pub fn set_sssp(g: &GraphHandle, src: i64, weight_col: usize) -> Result<HashMap<i64, f64>> {
    let spec = &g.view.spec().edge;
    let directions: &[(usize, usize)] = if g.view.directed() {
        &[(spec.from_col, spec.to_col)]
    } else {
        &[(spec.from_col, spec.to_col), (spec.to_col, spec.from_col)]
    };
    let mut dist: HashMap<i64, f64> = HashMap::from([(src, 0.0)]);
    let mut delta = vec![src];
    let mut rounds = 0usize;
    while !delta.is_empty() {
        rounds += 1;
        if rounds > g.edge_table.len() + 2 {
            return Err(Error::exec("relaxation did not converge"));
        }
        let ft = temp_table(
            "delta",
            &[("v", DataType::Integer), ("d", DataType::Float)],
            delta.iter().map(|&v| vec![Value::Int(v), Value::Float(dist[&v])]),
        );
        let mut best: HashMap<i64, f64> = HashMap::new();
        for &(join, other) in directions {
            let rows = frontier_join(
                &ft,
                &g.edge_table,
                join,
                None,
                vec![col(1, other), col(0, 1), col(1, weight_col)],
            )?;
            for r in rows {
                let (Some(v), Some(d)) = (r[0].as_i64(), r[1].as_f64()) else {
                    continue;
                };
                let w = r[2].as_f64().ok_or_else(|| Error::exec("null weight in relaxation"))?;
                if w < 0.0 {
                    return Err(Error::exec("negative weight in relaxation"));
                }
                let e = best.entry(v).or_insert(f64::INFINITY);
                *e = e.min(d + w);
            }
        }
        delta.clear();
        for (v, d) in best {
            if dist.get(&v).is_none_or(|&old| d < old) {
                dist.insert(v, d);
                delta.push(v);
            }
        }
        delta.sort_unstable();
    }
    Ok(dist)
}

/// Counts closed 3-edge cycles `a -A-> b -B-> c -C-> a` over distinct
/// vertexes with a three-way self-join of the edge table on `label_col`.
/// `filter` applies to all three edges.
pub fn join_triangle_count(
    g: &GraphHandle,
    label_col: usize,
    labels: [&str; 3],
    filter: Option<&EdgeFilter>,
) -> Result<u64> {
    let spec = &g.view.spec().edge;
    let (from, to) = (spec.from_col, spec.to_col);
    let e = &g.edge_table;
    e.ensure_index(from);
    let label = |a: usize, l: &str| {
        let e = cmp(CmpOp::Eq, col(a, label_col), Expr::Lit(Value::from(l)));
        match filter {
            Some(f) => e.and(f.at(a)),
            None => e,
        }
    };
    let ne = |a: Expr, b: Expr| cmp(CmpOp::NotEq, a, b);
    let inner = |a: usize, key: Expr, filter: Expr| Plan::IndexScan {
        alias: a,
        table: e.clone(),
        column: from,
        key,
        filter: Some(filter),
    };
    let root = Plan::NestedLoopJoin {
        outer: Box::new(Plan::NestedLoopJoin {
            outer: Box::new(Plan::TableScan {
                alias: 0,
                table: e.clone(),
                filter: Some(label(0, labels[0]).and(ne(col(0, from), col(0, to)))),
            }),
            inner: Box::new(inner(
                1,
                col(0, to),
                label(1, labels[1])
                    .and(ne(col(1, to), col(0, from)))
                    .and(ne(col(1, to), col(1, from))),
            )),
        }),
        inner: Box::new(inner(
            2,
            col(1, to),
            label(2, labels[2]).and(cmp(CmpOp::Eq, col(2, to), col(0, from))),
        )),
    };
    let plan = QueryPlan {
        root: Plan::Aggregate {
            input: Box::new(root),
            items: vec![crate::sql::binder::AggItem {
                name: "n".into(),
                func: crate::sql::ast::AggFunc::Count,
                arg: None,
            }],
        },
        aliases: vec![alias("E1", e), alias("E2", e), alias("E3", e)],
        columns: vec!["n".into()],
        warnings: Vec::new(),
    };
    Ok(exec::run(&plan)?.rows[0][0].as_i64().unwrap_or(0) as u64)
}

/// Largest graph `brute_force_paths` accepts.
pub const BRUTE_FORCE_MAX_VERTEXES: usize = 16;

/// Every path the engine may produce from `seeds` (vertex ids; `None` for
/// all vertexes) with a length in `lo..=hi`: simple paths, plus those closing
/// back on their start vertex. Plain recursion, sharing nothing with the
/// traversal operators.
pub fn brute_force_paths(
    g: &GraphHandle,
    seeds: Option<&[i64]>,
    lo: u32,
    hi: Option<u32>,
) -> Result<Vec<(Vec<u32>, Vec<u32>)>> {
    if g.view.vertex_count() > BRUTE_FORCE_MAX_VERTEXES {
        return Err(Error::exec(format!(
            "brute force enumeration is limited to {BRUTE_FORCE_MAX_VERTEXES} vertexes"
        )));
    }
    struct Walk<'a> {
        g: &'a GraphHandle,
        lo: usize,
        hi: usize,
        out: Vec<(Vec<u32>, Vec<u32>)>,
    }
    fn walk(w: &mut Walk<'_>, edges: &mut Vec<u32>, vertexes: &mut Vec<u32>) {
        let v = *vertexes.last().unwrap();
        let start = vertexes[0];
        if edges.len() >= w.hi || (!edges.is_empty() && v == start) {
            return;
        }
        for &e in &w.g.view.vertex(v).out_edges {
            let next = w.g.view.step(v, e);
            let closes = next == start;
            if !closes && vertexes.contains(&next) {
                continue;
            }
            if closes && !w.g.view.directed() && edges.first() == Some(&e) {
                continue;
            }
            edges.push(e);
            vertexes.push(next);
            if edges.len() >= w.lo {
                w.out.push((edges.clone(), vertexes.clone()));
            }
            walk(w, edges, vertexes);
            edges.pop();
            vertexes.pop();
        }
    }
    let starts: Vec<u32> = match seeds {
        None => g.view.vertexes().map(|(i, _)| i).collect(),
        Some(ids) => ids.iter().filter_map(|&id| g.view.vertex_idx(id)).collect(),
    };
    let mut w = Walk {
        g,
        lo: lo as usize,
        hi: hi.map_or(usize::MAX, |h| h as usize),
        out: Vec::new(),
    };
    for v in starts {
        walk(&mut w, &mut Vec::new(), &mut vec![v]);
    }
    Ok(w.out)
}

/// Brute-force answer to a path predicate over alias 0.
pub fn brute_force_filter(g: &Arc<GraphHandle>, pred: &[Expr]) -> Result<Vec<PathRow>> {
    Ok(brute_force_paths(g, None, 1, None)?
        .into_iter()
        .filter(|(e, v)| {
            let env = PathEnv {
                alias: 0,
                cursor: expr::PathCursor {
                    graph: g,
                    edges: e,
                    vertexes: v,
                },
            };
            pred.iter().all(|p| expr::eval_bool(p, &env))
        })
        .map(|(edges, vertexes)| PathRow {
            graph: g.clone(),
            edges,
            vertexes,
        })
        .collect())
}
