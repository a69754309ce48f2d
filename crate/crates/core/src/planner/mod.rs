//! Turns a bound SELECT into an operator tree.
//!
//! Relational aliases are joined left-deep in FROM order with path scans
//! innermost, so a path scan sees the rows it probes from. Conjuncts are
//! classified as scan filters, join filters, probe links, pushed path
//! predicates, or residual filters above every join.

mod constraints;
mod explain;
mod length;

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::expr::{Attr, Expr, PathAccess};
use crate::graph::{GraphHandle, VertexAttr};
use crate::sql::ast::CmpOp;
use crate::sql::binder::{AggItem, AliasDef, BoundSelect, GraphSource, Output, ShortestHint, Source};
use crate::storage::Table;

pub use constraints::{AggCheck, Constraints, PositionCheck, PrefixCheck};
pub use explain::explain;
pub use length::{infer as infer_length, Interval};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Traversal {
    Dfs,
    Bfs,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PlannerOptions {
    /// Push path-only predicates into the path scan.
    pub pushdown: bool,
    /// Bound path lengths from the predicates.
    pub infer_length: bool,
    /// Prune on running SUM/COUNT/MIN/MAX bounds.
    pub prune_aggregates: bool,
    /// Overrides the fan-out rule when set.
    pub force_traversal: Option<Traversal>,
}

impl Default for PlannerOptions {
    fn default() -> Self {
        PlannerOptions {
            pushdown: true,
            infer_length: true,
            prune_aggregates: true,
            force_traversal: None,
        }
    }
}

impl PlannerOptions {
    /// Enumerate first, filter afterwards.
    pub fn naive() -> Self {
        PlannerOptions {
            pushdown: false,
            infer_length: false,
            prune_aggregates: false,
            force_traversal: None,
        }
    }
}

#[derive(Debug, Clone)]
pub enum PathKind {
    Dfs,
    Bfs,
    Shortest(ShortestHint),
}

#[derive(Debug, Clone)]
pub struct PathScan {
    pub alias: usize,
    pub source: GraphSource,
    pub kind: PathKind,
    pub interval: Interval,
    /// Start and end vertex ids, evaluated against the incoming row.
    pub start: Option<Expr>,
    pub end: Option<Expr>,
    pub constraints: Constraints,
}

#[derive(Debug, Clone)]
pub enum Plan {
    Empty,
    TableScan {
        alias: usize,
        table: Arc<Table>,
        filter: Option<Expr>,
    },
    IndexScan {
        alias: usize,
        table: Arc<Table>,
        column: usize,
        key: Expr,
        filter: Option<Expr>,
    },
    VertexScan {
        alias: usize,
        graph: Arc<GraphHandle>,
    },
    EdgeScan {
        alias: usize,
        graph: Arc<GraphHandle>,
    },
    Filter {
        input: Box<Plan>,
        pred: Expr,
    },
    NestedLoopJoin {
        outer: Box<Plan>,
        inner: Box<Plan>,
    },
    PathScan(Box<PathScan>),
    Project {
        input: Box<Plan>,
        items: Vec<(String, Expr)>,
    },
    Aggregate {
        input: Box<Plan>,
        items: Vec<AggItem>,
    },
    Limit {
        input: Box<Plan>,
        n: u64,
    },
}

#[derive(Debug, Clone)]
pub struct QueryPlan {
    pub root: Plan,
    pub aliases: Vec<AliasDef>,
    pub columns: Vec<String>,
    pub warnings: Vec<String>,
}

fn is_path(def: &AliasDef) -> bool {
    matches!(def.source, Source::Paths { .. })
}

/// `PS.StartVertex.Id = e` or `PS.EndVertex.Id = e` with `e` free of path
/// references: returns (is_start, e).
fn probe_link(c: &Expr, alias: usize, aliases: &[AliasDef]) -> Option<(bool, Expr)> {
    let Expr::Cmp {
        op: CmpOp::Eq,
        left,
        right,
    } = c
    else {
        return None;
    };
    let side = |p: &Expr| match p {
        Expr::Path {
            alias: a,
            access: PathAccess::Start(VertexAttr::Id),
        } if *a == alias => Some(true),
        Expr::Path {
            alias: a,
            access: PathAccess::End(VertexAttr::Id),
        } if *a == alias => Some(false),
        _ => None,
    };
    let (is_start, other) = match (side(left), side(right)) {
        (Some(s), None) => (s, right),
        (None, Some(s)) => (s, left),
        _ => return None,
    };
    let mut pathless = true;
    other.visit(&mut |x| {
        pathless &= !matches!(x, Expr::Path { .. } | Expr::PathAgg { .. });
    });
    let relational = other.aliases().iter().all(|&a| !is_path(&aliases[a]));
    (pathless && relational).then(|| (is_start, (**other).clone()))
}

/// `T.col = e` where `e` only reads aliases joined before `alias`.
fn index_key(c: &Expr, alias: usize, before: &[usize]) -> Option<(usize, Expr)> {
    let Expr::Cmp {
        op: CmpOp::Eq,
        left,
        right,
    } = c
    else {
        return None;
    };
    let col = |x: &Expr| match x {
        Expr::Col {
            alias: a,
            attr: Attr::Table(c),
        } if *a == alias => Some(*c),
        _ => None,
    };
    let (column, key) = match (col(left), col(right)) {
        (Some(c), None) => (c, right),
        (None, Some(c)) => (c, left),
        _ => return None,
    };
    key.aliases()
        .iter()
        .all(|a| before.contains(a))
        .then(|| (column, (**key).clone()))
}

struct PathPlan {
    pushed: Vec<Expr>,
    graph_only: Vec<Expr>,
    start: Option<Expr>,
    end: Option<Expr>,
}

pub fn plan(q: &BoundSelect, opts: &PlannerOptions) -> Result<QueryPlan> {
    let n = q.aliases.len();
    let mut warnings = Vec::new();
    let relational: Vec<usize> = (0..n).filter(|&a| !is_path(&q.aliases[a])).collect();
    let paths: Vec<usize> = (0..n).filter(|&a| is_path(&q.aliases[a])).collect();
    let order: Vec<usize> = relational.iter().chain(&paths).copied().collect();
    let position = |a: usize| order.iter().position(|&x| x == a).unwrap();

    let mut scan_filters: Vec<Vec<Expr>> = vec![Vec::new(); n];
    // Join filters keyed by the position in `order` that completes them.
    let mut join_filters: Vec<Vec<Expr>> = vec![Vec::new(); n];
    let mut residual = Vec::new();
    let mut path_plans: Vec<PathPlan> = (0..n)
        .map(|_| PathPlan {
            pushed: Vec::new(),
            graph_only: Vec::new(),
            start: None,
            end: None,
        })
        .collect();

    for c in &q.conjuncts {
        let refs = c.aliases();
        let path_refs: Vec<usize> = refs.iter().copied().filter(|&a| is_path(&q.aliases[a])).collect();
        match path_refs.as_slice() {
            [] => match refs.len() {
                0 => residual.push(c.clone()),
                1 => scan_filters[*refs.first().unwrap()].push(c.clone()),
                _ => {
                    let last = refs.iter().map(|&a| position(a)).max().unwrap();
                    join_filters[last].push(c.clone());
                }
            },
            [p] => {
                let pp = &mut path_plans[*p];
                if let Some((is_start, e)) = probe_link(c, *p, &q.aliases) {
                    let slot = if is_start { &mut pp.start } else { &mut pp.end };
                    if slot.is_none() {
                        *slot = Some(e);
                        continue;
                    }
                }
                if refs.len() == 1 {
                    pp.graph_only.push(c.clone());
                    if opts.pushdown {
                        pp.pushed.push(c.clone());
                        continue;
                    }
                }
                residual.push(c.clone());
            }
            _ => residual.push(c.clone()),
        }
    }

    // Build the join tree.
    let mut root: Option<Plan> = None;
    let mut empty = false;
    for (pos, &a) in order.iter().enumerate() {
        let def = &q.aliases[a];
        let filters = std::mem::take(&mut scan_filters[a]);
        let node = match &def.source {
            Source::Table(t) => {
                let before = &order[..pos];
                let hit = filters
                    .iter()
                    .enumerate()
                    .find_map(|(i, f)| index_key(f, a, before).filter(|(c, _)| t.has_index(*c)).map(|k| (i, k)));
                match hit {
                    Some((i, (column, key))) => {
                        let mut rest = filters.clone();
                        rest.remove(i);
                        Plan::IndexScan {
                            alias: a,
                            table: t.clone(),
                            column,
                            key,
                            filter: Expr::conjunction(rest),
                        }
                    }
                    None => Plan::TableScan {
                        alias: a,
                        table: t.clone(),
                        filter: Expr::conjunction(filters),
                    },
                }
            }
            // Graph scans produce every element; selection is a separate step.
            Source::Vertexes(g) => filtered(
                Plan::VertexScan {
                    alias: a,
                    graph: g.clone(),
                },
                filters,
            ),
            Source::Edges(g) => filtered(
                Plan::EdgeScan {
                    alias: a,
                    graph: g.clone(),
                },
                filters,
            ),
            Source::Paths { graph, hint } => {
                let pp = std::mem::replace(
                    &mut path_plans[a],
                    PathPlan {
                        pushed: Vec::new(),
                        graph_only: Vec::new(),
                        start: None,
                        end: None,
                    },
                );
                match path_scan(a, def, graph, hint, pp, &q.conjuncts, opts)? {
                    Some(s) => Plan::PathScan(Box::new(s)),
                    None => {
                        warnings.push(format!("path length constraints on {} are unsatisfiable", def.name));
                        empty = true;
                        Plan::Empty
                    }
                }
            }
        };
        let mut joined = match root.take() {
            None => node,
            Some(outer) => Plan::NestedLoopJoin {
                outer: Box::new(outer),
                inner: Box::new(node),
            },
        };
        if let Some(f) = Expr::conjunction(std::mem::take(&mut join_filters[pos])) {
            joined = Plan::Filter {
                input: Box::new(joined),
                pred: f,
            };
        }
        root = Some(joined);
    }
    let mut root = root.unwrap_or(Plan::Empty);
    if empty {
        root = Plan::Empty;
    }
    if let Some(f) = Expr::conjunction(residual) {
        root = Plan::Filter {
            input: Box::new(root),
            pred: f,
        };
    }
    let (mut root, columns) = match &q.output {
        Output::Project(items) => (
            Plan::Project {
                input: Box::new(root),
                items: items.clone(),
            },
            items.iter().map(|(n, _)| n.clone()).collect(),
        ),
        Output::Aggregate(items) => (
            Plan::Aggregate {
                input: Box::new(root),
                items: items.clone(),
            },
            items.iter().map(|i| i.name.clone()).collect(),
        ),
    };
    if let Some(n) = q.limit {
        root = Plan::Limit {
            input: Box::new(root),
            n,
        };
    }
    Ok(QueryPlan {
        root,
        aliases: q.aliases.clone(),
        columns,
        warnings,
    })
}

/// Returns `None` when the length interval is empty.
fn path_scan(
    alias: usize,
    def: &AliasDef,
    graph: &GraphSource,
    hint: &Option<ShortestHint>,
    pp: PathPlan,
    conjuncts: &[Expr],
    opts: &PlannerOptions,
) -> Result<Option<PathScan>> {
    let vertex_count = match graph {
        GraphSource::View(g) => Some(g.view.vertex_count() as u32),
        GraphSource::Temp(_) => None,
    };
    // A simple path visits each vertex once, except a closing return to the
    // start, so it has at most |V| edges.
    let mut interval = Interval::new(1, vertex_count);
    if opts.infer_length {
        for c in conjuncts {
            interval = interval.intersect(infer_length(c, alias));
        }
    }
    if interval.is_empty() {
        return Ok(None);
    }
    let kind = match hint {
        Some(h) => {
            if pp.start.is_none() {
                return Err(Error::plan(format!(
                    "SHORTESTPATH on {} needs PS.StartVertex.Id = <value>",
                    def.name
                )));
            }
            PathKind::Shortest(h.clone())
        }
        None => match opts.force_traversal {
            Some(Traversal::Bfs) => PathKind::Bfs,
            Some(Traversal::Dfs) => PathKind::Dfs,
            None => {
                let fan_out = match graph {
                    GraphSource::View(g) => g.view.stats().map(|s| s.avg_fan_out),
                    GraphSource::Temp(_) => None,
                };
                match (opts.infer_length.then_some(interval.hi).flatten(), fan_out) {
                    (Some(l), Some(f)) if choose_bfs(f, l) => PathKind::Bfs,
                    _ => PathKind::Dfs,
                }
            }
        },
    };
    let constraints = constraints::compile(alias, &pp.pushed, &pp.graph_only, opts.prune_aggregates);
    Ok(Some(PathScan {
        alias,
        source: graph.clone(),
        kind,
        interval,
        start: pp.start,
        end: pp.end,
        constraints,
    }))
}

fn filtered(input: Plan, preds: Vec<Expr>) -> Plan {
    match Expr::conjunction(preds) {
        Some(pred) => Plan::Filter {
            input: Box::new(input),
            pred,
        },
        None => input,
    }
}

/// BFS when the average fan-out is below `L^(1/(L-1))` for maximum length
/// `L`: below that threshold its frontier stays small enough that visiting
/// shorter paths first is cheap.
pub fn choose_bfs(fan_out: f64, max_len: u32) -> bool {
    if max_len < 2 {
        return false;
    }
    let l = max_len as f64;
    fan_out < l.powf(1.0 / (l - 1.0))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn traversal_threshold() {
        // L = 2: threshold 2.
        assert!(choose_bfs(1.9, 2));
        assert!(!choose_bfs(2.0, 2));
        // L = 3: threshold sqrt(3).
        assert!(choose_bfs(1.7, 3));
        assert!(!choose_bfs(1.75, 3));
        assert!(!choose_bfs(0.5, 1));
    }
}
