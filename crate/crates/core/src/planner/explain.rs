//! Text rendering of plans, one operator per line.

use std::fmt::Write;

use super::{PathKind, PathScan, Plan, QueryPlan};
use crate::expr::{AggTarget, Attr, Expr, Index, PathAccess};
use crate::sql::ast::EdgeEnd;
use crate::sql::binder::{AliasDef, GraphSource, Source};
use crate::value::Value;

pub fn explain(p: &QueryPlan) -> String {
    let mut out = String::new();
    for w in &p.warnings {
        let _ = writeln!(out, "-- warning: {w}");
    }
    node(&p.root, &p.aliases, 0, &mut out);
    out
}

fn graph_name(def: &AliasDef) -> String {
    match &def.source {
        Source::Table(t) => t.name().to_string(),
        Source::Vertexes(g) | Source::Edges(g) => g.view.name().to_string(),
        Source::Paths { graph, .. } => match graph {
            GraphSource::View(g) => g.view.name().to_string(),
            GraphSource::Temp(_) => "TEMPGRAPH".to_string(),
        },
    }
}

fn filter_suffix(f: &Option<Expr>, aliases: &[AliasDef]) -> String {
    f.as_ref()
        .map(|f| format!(", filter={}", render(f, aliases)))
        .unwrap_or_default()
}

fn node(p: &Plan, aliases: &[AliasDef], depth: usize, out: &mut String) {
    let pad = "  ".repeat(depth);
    let line = match p {
        Plan::Empty => "Empty".to_string(),
        Plan::TableScan { alias, table, filter } => format!(
            "TableScan({}: {}{})",
            aliases[*alias].name,
            table.name(),
            filter_suffix(filter, aliases)
        ),
        Plan::IndexScan {
            alias,
            table,
            column,
            key,
            filter,
        } => format!(
            "IndexScan({}: {}, {} = {}{})",
            aliases[*alias].name,
            table.name(),
            table.schema().column(*column).name,
            render(key, aliases),
            filter_suffix(filter, aliases)
        ),
        Plan::VertexScan { alias, .. } => format!(
            "VertexScan({}, view={})",
            aliases[*alias].name,
            graph_name(&aliases[*alias])
        ),
        Plan::EdgeScan { alias, .. } => format!(
            "EdgeScan({}, view={})",
            aliases[*alias].name,
            graph_name(&aliases[*alias])
        ),
        Plan::Filter { pred, .. } => format!("Filter({})", render(pred, aliases)),
        Plan::NestedLoopJoin { .. } => "NestedLoopJoin".to_string(),
        Plan::PathScan(s) => path_line(s, aliases),
        Plan::Project { items, .. } => format!(
            "Project({})",
            items.iter().map(|(n, _)| n.as_str()).collect::<Vec<_>>().join(", ")
        ),
        Plan::Aggregate { items, .. } => format!(
            "Aggregate({})",
            items.iter().map(|i| i.name.as_str()).collect::<Vec<_>>().join(", ")
        ),
        Plan::Limit { n, .. } => format!("Limit({n})"),
    };
    let _ = writeln!(out, "{pad}{line}");
    match p {
        Plan::Filter { input, .. }
        | Plan::Project { input, .. }
        | Plan::Aggregate { input, .. }
        | Plan::Limit { input, .. } => node(input, aliases, depth + 1, out),
        Plan::NestedLoopJoin { outer, inner } => {
            node(outer, aliases, depth + 1, out);
            node(inner, aliases, depth + 1, out);
        }
        Plan::PathScan(s) => {
            if let GraphSource::Temp(t) = &s.source {
                let _ = writeln!(
                    out,
                    "{pad}  TempGraph(vertexes={}, edges={}, {})",
                    t.vertex_table.name(),
                    t.edge_table.name(),
                    if t.correlated { "per row" } else { "once" }
                );
            }
        }
        _ => {}
    }
}

fn path_line(s: &PathScan, aliases: &[AliasDef]) -> String {
    let kind = match &s.kind {
        PathKind::Dfs => "DFS".to_string(),
        PathKind::Bfs => "BFS".to_string(),
        PathKind::Shortest(h) => format!("SP({})", h.name),
    };
    let probe = |e: &Option<Expr>| match e {
        None => "all".to_string(),
        Some(e) if e.aliases().is_empty() => format!("const {}", render(e, aliases)),
        Some(e) => format!("probe {}", render(e, aliases)),
    };
    let target = match &s.end {
        None => "none".to_string(),
        e => probe(e),
    };
    format!(
        "PathScan({kind}, alias={}, view={}, seed={}, target={target}, len={}, pushed={})",
        aliases[s.alias].name,
        graph_name(&aliases[s.alias]),
        probe(&s.start),
        s.interval,
        s.constraints.pushed()
    )
}

fn index(i: Index) -> String {
    match i {
        Index::At(i) => format!("[{i}]"),
        Index::Range(i, j) => format!("[{i}..{j}]"),
        Index::From(i) => format!("[{i}..*]"),
        Index::Any => "[ANY]".to_string(),
        Index::All => String::new(),
    }
}

/// Renders a bound expression using alias and attribute names.
pub fn render(e: &Expr, aliases: &[AliasDef]) -> String {
    let r = |x: &Expr| render(x, aliases);
    match e {
        Expr::Lit(Value::Text(s)) => format!("'{}'", s.replace('\'', "''")),
        Expr::Lit(v) => v.to_string(),
        Expr::Col { alias, attr } => {
            let def = &aliases[*alias];
            let name = match (attr, &def.source) {
                (Attr::Table(c), Source::Table(t)) => t.schema().column(*c).name.clone(),
                (Attr::Vertex(a), s) => s.layout().map(|l| l.vertex_attr_name(*a)).unwrap_or_default(),
                (Attr::Edge(a), s) => s.layout().map(|l| l.edge_attr_name(*a)).unwrap_or_default(),
                _ => "?".to_string(),
            };
            format!("{}.{name}", def.name)
        }
        Expr::Local(c) => format!("#{c}"),
        Expr::Path { alias, access } => {
            let def = &aliases[*alias];
            let l = def.source.layout();
            let v = |a| l.as_ref().map(|l| l.vertex_attr_name(a)).unwrap_or_default();
            let ed = |a| l.as_ref().map(|l| l.edge_attr_name(a)).unwrap_or_default();
            let tail = match access {
                PathAccess::Length => "Length".to_string(),
                PathAccess::PathString => "PathString".to_string(),
                PathAccess::Start(a) => format!("StartVertex.{}", v(*a)),
                PathAccess::End(a) => format!("EndVertex.{}", v(*a)),
                PathAccess::Vertex { index: i, attr } => format!("Vertexes{}.{}", index(*i), v(*attr)),
                PathAccess::Edge { index: i, attr } => format!("Edges{}.{}", index(*i), ed(*attr)),
                PathAccess::EdgeEnd { index: i, end, attr } => format!(
                    "Edges{}.{}.{}",
                    index(*i),
                    match end {
                        EdgeEnd::StartVertex => "StartVertex",
                        EdgeEnd::EndVertex => "EndVertex",
                    },
                    v(*attr)
                ),
            };
            format!("{}.{tail}", def.name)
        }
        Expr::PathAgg { alias, func, target } => {
            let def = &aliases[*alias];
            let l = def.source.layout();
            let inner = match target {
                AggTarget::Edges(a) => {
                    format!("Edges.{}", l.map(|l| l.edge_attr_name(*a)).unwrap_or_default())
                }
                AggTarget::Vertexes(a) => {
                    format!("Vertexes.{}", l.map(|l| l.vertex_attr_name(*a)).unwrap_or_default())
                }
            };
            format!("{}({}.{inner})", func.name(), def.name)
        }
        Expr::Cmp { op, left, right } => format!("({} {} {})", r(left), op.symbol(), r(right)),
        Expr::InList { expr, list, negated } => format!(
            "({} {}IN ({}))",
            r(expr),
            if *negated { "NOT " } else { "" },
            list.iter().map(r).collect::<Vec<_>>().join(", ")
        ),
        Expr::InSubquery { expr, sub, negated } => format!(
            "({} {}IN (SELECT FROM {}))",
            r(expr),
            if *negated { "NOT " } else { "" },
            sub.table.name()
        ),
        Expr::And(a, b) => format!("({} AND {})", r(a), r(b)),
        Expr::Or(a, b) => format!("({} OR {})", r(a), r(b)),
        Expr::Not(x) => format!("(NOT {})", r(x)),
    }
}
