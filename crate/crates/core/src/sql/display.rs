//! Pretty-printer whose output reparses to an equal AST. Binary expressions
//! are fully parenthesized.

use std::fmt::{self, Display, Formatter, Write};

use super::ast::*;

fn quote(s: &str) -> String {
    format!("'{}'", s.replace('\'', "''"))
}

impl Display for Literal {
    fn fmt(&self, f: &mut Formatter<'_>) -> fmt::Result {
        match self {
            Literal::Null => f.write_str("NULL"),
            Literal::Int(i) => write!(f, "{i}"),
            // `{:?}` keeps a decimal point or exponent so it lexes as a float.
            Literal::Float(x) => write!(f, "{x:?}"),
            Literal::Str(s) => f.write_str(&quote(s)),
            Literal::Bool(b) => f.write_str(if *b { "TRUE" } else { "FALSE" }),
        }
    }
}

impl Display for ColumnRef {
    fn fmt(&self, f: &mut Formatter<'_>) -> fmt::Result {
        match &self.qualifier {
            Some(q) => write!(f, "{q}.{}", self.name),
            None => f.write_str(&self.name),
        }
    }
}

impl Display for PathIndex {
    fn fmt(&self, f: &mut Formatter<'_>) -> fmt::Result {
        match self {
            PathIndex::Single(i) => write!(f, "[{i}]"),
            PathIndex::Range(i, j) => write!(f, "[{i}..{j}]"),
            PathIndex::From(i) => write!(f, "[{i}..*]"),
            PathIndex::Any => f.write_str("[ANY]"),
        }
    }
}

impl Display for PathRef {
    fn fmt(&self, f: &mut Formatter<'_>) -> fmt::Result {
        write!(f, "{}.{}", self.alias, self.component.name())?;
        if let Some(i) = &self.index {
            write!(f, "{i}")?;
        }
        match self.edge_end {
            Some(EdgeEnd::StartVertex) => f.write_str(".StartVertex")?,
            Some(EdgeEnd::EndVertex) => f.write_str(".EndVertex")?,
            None => {}
        }
        if let Some(a) = &self.attribute {
            write!(f, ".{a}")?;
        }
        Ok(())
    }
}

impl Display for Expr {
    fn fmt(&self, f: &mut Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Literal(l) => l.fmt(f),
            Expr::Column(c) => c.fmt(f),
            Expr::Path(p) => p.fmt(f),
            Expr::Compare { op, left, right } => write!(f, "({left} {} {right})", op.symbol()),
            Expr::InList { expr, list, negated } => {
                write!(f, "({expr} {}IN (", if *negated { "NOT " } else { "" })?;
                for (i, e) in list.iter().enumerate() {
                    if i > 0 {
                        f.write_str(", ")?;
                    }
                    e.fmt(f)?;
                }
                f.write_str("))")
            }
            Expr::InSubquery {
                expr,
                subquery,
                negated,
            } => {
                write!(
                    f,
                    "({expr} {}IN (SELECT {} FROM {}",
                    if *negated { "NOT " } else { "" },
                    subquery.column,
                    subquery.table
                )?;
                if let Some(w) = &subquery.filter {
                    write!(f, " WHERE {w}")?;
                }
                f.write_str("))")
            }
            Expr::And(a, b) => write!(f, "({a} AND {b})"),
            Expr::Or(a, b) => write!(f, "({a} OR {b})"),
            Expr::Not(e) => write!(f, "(NOT {e})"),
            Expr::Agg { func, arg } => match arg {
                AggArg::Star => write!(f, "{}(*)", func.name()),
                AggArg::Expr(e) => write!(f, "{}({e})", func.name()),
            },
        }
    }
}

fn bindings(f: &mut Formatter<'_>, fixed: &[(&str, &str)], attrs: &[AttrBinding]) -> fmt::Result {
    f.write_char('(')?;
    let mut first = true;
    for (k, v) in fixed {
        if !first {
            f.write_str(", ")?;
        }
        first = false;
        write!(f, "{k} = {v}")?;
    }
    for a in attrs {
        write!(f, ", {} = {}", a.alias, a.column)?;
    }
    f.write_char(')')
}

impl Display for VertexSource {
    fn fmt(&self, f: &mut Formatter<'_>) -> fmt::Result {
        f.write_str("VERTEXES ")?;
        bindings(f, &[("ID", &self.id)], &self.attrs)?;
        write!(f, " FROM {}", self.source)?;
        if let Some(w) = &self.filter {
            write!(f, " WHERE {w}")?;
        }
        Ok(())
    }
}

impl Display for EdgeSource {
    fn fmt(&self, f: &mut Formatter<'_>) -> fmt::Result {
        f.write_str("EDGES ")?;
        bindings(
            f,
            &[("ID", &self.id), ("FROM", &self.from), ("TO", &self.to)],
            &self.attrs,
        )?;
        write!(f, " FROM {}", self.source)?;
        if let Some(w) = &self.filter {
            write!(f, " WHERE {w}")?;
        }
        Ok(())
    }
}

fn hint(f: &mut Formatter<'_>, h: &Option<Hint>) -> fmt::Result {
    if let Some(h) = h {
        write!(f, " HINT(SHORTESTPATH({}))", h.shortest_path)?;
    }
    Ok(())
}

impl Display for FromItem {
    fn fmt(&self, f: &mut Formatter<'_>) -> fmt::Result {
        match self {
            FromItem::Table { name, alias } => {
                f.write_str(name)?;
                if let Some(a) = alias {
                    write!(f, " {a}")?;
                }
                Ok(())
            }
            FromItem::Graph {
                view,
                collection,
                alias,
                hint: h,
            } => {
                write!(f, "{view}.{} {alias}", collection.keyword())?;
                hint(f, h)
            }
            FromItem::TempGraph { def, alias, hint: h } => {
                write!(
                    f,
                    "TEMPGRAPH({} {} {}).PATHS {alias}",
                    if def.directed { "DIRECTED" } else { "UNDIRECTED" },
                    def.vertexes,
                    def.edges
                )?;
                hint(f, h)
            }
        }
    }
}

impl Display for Select {
    fn fmt(&self, f: &mut Formatter<'_>) -> fmt::Result {
        f.write_str("SELECT ")?;
        if let Some(n) = self.top {
            write!(f, "TOP {n} ")?;
        }
        for (i, item) in self.items.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            match item {
                SelectItem::Wildcard => f.write_char('*')?,
                SelectItem::Expr { expr, alias } => {
                    expr.fmt(f)?;
                    if let Some(a) = alias {
                        write!(f, " AS {a}")?;
                    }
                }
            }
        }
        f.write_str(" FROM ")?;
        for (i, item) in self.from.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            item.fmt(f)?;
        }
        if let Some(w) = &self.filter {
            write!(f, " WHERE {w}")?;
        }
        if let Some(n) = self.limit {
            write!(f, " LIMIT {n}")?;
        }
        Ok(())
    }
}

impl Display for Statement {
    fn fmt(&self, f: &mut Formatter<'_>) -> fmt::Result {
        match self {
            Statement::CreateTable(t) => {
                write!(f, "CREATE TABLE {} (", t.name)?;
                for (i, c) in t.columns.iter().enumerate() {
                    if i > 0 {
                        f.write_str(", ")?;
                    }
                    write!(f, "{} {}", c.name, c.ty)?;
                }
                f.write_char(')')
            }
            Statement::CreateGraphView(g) => write!(
                f,
                "CREATE {} GRAPH VIEW {} {} {}",
                if g.directed { "DIRECTED" } else { "UNDIRECTED" },
                g.name,
                g.vertexes,
                g.edges
            ),
            Statement::Insert(ins) => {
                write!(f, "INSERT INTO {}", ins.table)?;
                if let Some(cols) = &ins.columns {
                    write!(f, " ({})", cols.join(", "))?;
                }
                f.write_str(" VALUES ")?;
                for (i, row) in ins.rows.iter().enumerate() {
                    if i > 0 {
                        f.write_str(", ")?;
                    }
                    f.write_char('(')?;
                    for (j, e) in row.iter().enumerate() {
                        if j > 0 {
                            f.write_str(", ")?;
                        }
                        e.fmt(f)?;
                    }
                    f.write_char(')')?;
                }
                Ok(())
            }
            Statement::Update(u) => {
                write!(f, "UPDATE {} SET ", u.table)?;
                for (i, (c, e)) in u.assignments.iter().enumerate() {
                    if i > 0 {
                        f.write_str(", ")?;
                    }
                    write!(f, "{c} = {e}")?;
                }
                if let Some(w) = &u.filter {
                    write!(f, " WHERE {w}")?;
                }
                Ok(())
            }
            Statement::Delete(d) => {
                write!(f, "DELETE FROM {}", d.table)?;
                if let Some(w) = &d.filter {
                    write!(f, " WHERE {w}")?;
                }
                Ok(())
            }
            Statement::Select(s) => s.fmt(f),
            Statement::Explain(s) => write!(f, "EXPLAIN {s}"),
            Statement::Meta(m) => {
                write!(f, ".{}", m.name)?;
                for a in &m.args {
                    write!(f, " {a}")?;
                }
                Ok(())
            }
        }
    }
}
