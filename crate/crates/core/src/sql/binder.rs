//! Name resolution: turns AST expressions and FROM items into bound forms
//! checked against the catalog and graph-view definitions.
//!
//! Vertex and edge attributes resolve in this order: built-ins (`Id`,
//! `FanIn`, `FanOut` / `Id`, `From`, `To`), declared aliases, then the
//! source table's own column names.

use std::sync::Arc;

use super::ast::{self, AggArg, AggFunc, FromItem, GraphCollection, PathComponent, SelectItem};
use crate::error::{Error, Result};
use crate::expr::{AggTarget, Attr, Expr, Index, PathAccess, SubQuery};
use crate::graph::{EdgeAttr, EdgeSpec, GraphHandle, VertexAttr, VertexSpec, ViewSpec};
use crate::storage::{Catalog, Schema, Table};
use crate::value::{DataType, Value};

/// A TEMPGRAPH definition. Filters may reference outer aliases and contain
/// subqueries; they are resolved per outer row before the build.
#[derive(Debug, Clone)]
pub struct TempSpec {
    pub spec: ViewSpec,
    pub vertex_table: Arc<Table>,
    pub edge_table: Arc<Table>,
    /// True when the filters read outer aliases.
    pub correlated: bool,
}

#[derive(Debug, Clone)]
pub enum GraphSource {
    View(Arc<GraphHandle>),
    Temp(Arc<TempSpec>),
}

impl GraphSource {
    pub fn spec(&self) -> &ViewSpec {
        match self {
            GraphSource::View(g) => g.view.spec(),
            GraphSource::Temp(t) => &t.spec,
        }
    }

    pub fn name(&self) -> &str {
        &self.spec().name
    }

    fn schemas(&self) -> (&Schema, &Schema) {
        match self {
            GraphSource::View(g) => (g.vertex_table.schema(), g.edge_table.schema()),
            GraphSource::Temp(t) => (t.vertex_table.schema(), t.edge_table.schema()),
        }
    }
}

#[derive(Debug, Clone)]
pub struct ShortestHint {
    pub name: String,
    pub attr: EdgeAttr,
}

#[derive(Debug, Clone)]
pub enum Source {
    Table(Arc<Table>),
    Vertexes(Arc<GraphHandle>),
    Edges(Arc<GraphHandle>),
    Paths {
        graph: GraphSource,
        hint: Option<ShortestHint>,
    },
}

#[derive(Debug, Clone)]
pub struct AliasDef {
    pub name: String,
    pub source: Source,
}

#[derive(Debug, Clone)]
pub struct AggItem {
    pub name: String,
    pub func: AggFunc,
    /// `None` counts rows.
    pub arg: Option<Expr>,
}

#[derive(Debug, Clone)]
pub enum Output {
    Project(Vec<(String, Expr)>),
    Aggregate(Vec<AggItem>),
}

#[derive(Debug, Clone)]
pub struct BoundSelect {
    pub aliases: Vec<AliasDef>,
    pub conjuncts: Vec<Expr>,
    pub output: Output,
    pub limit: Option<u64>,
}

/// Attribute lookup for one graph definition.
pub struct Layout<'a> {
    pub spec: &'a ViewSpec,
    pub vertex_schema: &'a Schema,
    pub edge_schema: &'a Schema,
}

fn find_alias(attrs: &[(String, usize)], name: &str) -> Option<usize> {
    attrs
        .iter()
        .find(|(a, _)| a.eq_ignore_ascii_case(name))
        .map(|(_, c)| *c)
}

fn column_name(attrs: &[(String, usize)], schema: &Schema, c: usize) -> String {
    attrs
        .iter()
        .find(|(_, col)| *col == c)
        .map_or_else(|| schema.column(c).name.clone(), |(a, _)| a.clone())
}

impl Layout<'_> {
    pub fn vertex_attr(&self, name: &str) -> Option<VertexAttr> {
        match name.to_ascii_lowercase().as_str() {
            "id" => return Some(VertexAttr::Id),
            "fanin" => return Some(VertexAttr::FanIn),
            "fanout" => return Some(VertexAttr::FanOut),
            _ => {}
        }
        find_alias(&self.spec.vertex.attrs, name)
            .or_else(|| self.vertex_schema.index_of(name))
            .map(VertexAttr::Column)
    }

    pub fn edge_attr(&self, name: &str) -> Option<EdgeAttr> {
        match name.to_ascii_lowercase().as_str() {
            "id" => return Some(EdgeAttr::Id),
            "from" => return Some(EdgeAttr::From),
            "to" => return Some(EdgeAttr::To),
            _ => {}
        }
        find_alias(&self.spec.edge.attrs, name)
            .or_else(|| self.edge_schema.index_of(name))
            .map(EdgeAttr::Column)
    }

    pub fn edge_attr_type(&self, attr: EdgeAttr) -> DataType {
        match attr {
            EdgeAttr::Column(c) => self.edge_schema.column(c).ty,
            _ => DataType::Integer,
        }
    }

    pub fn vertex_attr_name(&self, attr: VertexAttr) -> String {
        match attr {
            VertexAttr::Id => "Id".into(),
            VertexAttr::FanIn => "FanIn".into(),
            VertexAttr::FanOut => "FanOut".into(),
            VertexAttr::Column(c) => column_name(&self.spec.vertex.attrs, self.vertex_schema, c),
        }
    }

    pub fn edge_attr_name(&self, attr: EdgeAttr) -> String {
        match attr {
            EdgeAttr::Id => "Id".into(),
            EdgeAttr::From => "From".into(),
            EdgeAttr::To => "To".into(),
            EdgeAttr::Column(c) => column_name(&self.spec.edge.attrs, self.edge_schema, c),
        }
    }

    /// Output columns of a vertex row for `*`.
    pub fn vertex_columns(&self) -> Vec<(String, VertexAttr)> {
        let mut out = vec![
            ("Id".to_string(), VertexAttr::Id),
            ("FanIn".to_string(), VertexAttr::FanIn),
            ("FanOut".to_string(), VertexAttr::FanOut),
        ];
        out.extend(
            self.spec
                .vertex
                .attrs
                .iter()
                .map(|(a, c)| (a.clone(), VertexAttr::Column(*c))),
        );
        out
    }

    pub fn edge_columns(&self) -> Vec<(String, EdgeAttr)> {
        let mut out = vec![
            ("Id".to_string(), EdgeAttr::Id),
            ("From".to_string(), EdgeAttr::From),
            ("To".to_string(), EdgeAttr::To),
        ];
        out.extend(
            self.spec
                .edge
                .attrs
                .iter()
                .map(|(a, c)| (a.clone(), EdgeAttr::Column(*c))),
        );
        out
    }
}

impl Source {
    pub(crate) fn layout(&self) -> Option<Layout<'_>> {
        let (spec, vs, es) = match self {
            Source::Table(_) => return None,
            Source::Vertexes(g) | Source::Edges(g) => (g.view.spec(), g.vertex_table.schema(), g.edge_table.schema()),
            Source::Paths { graph, .. } => {
                let (vs, es) = graph.schemas();
                (graph.spec(), vs, es)
            }
        };
        Some(Layout {
            spec,
            vertex_schema: vs,
            edge_schema: es,
        })
    }
}

/// The tuple-level scope of a source filter, DML predicate or subquery.
#[derive(Clone, Copy)]
struct Local<'a> {
    table: &'a str,
    schema: &'a Schema,
}

#[derive(Clone, Copy)]
struct Scope<'a> {
    catalog: &'a Catalog,
    aliases: &'a [AliasDef],
    local: Option<Local<'a>>,
    subqueries: bool,
    /// Path aliases are not visible (TEMPGRAPH filters).
    hide_paths: bool,
}

fn unknown_attr(kind: &str, name: &str, view: &str) -> Error {
    Error::bind(format!("unknown {kind} attribute '{name}' in graph view '{view}'"))
}

impl<'a> Scope<'a> {
    fn alias(&self, name: &str) -> Option<(usize, &'a AliasDef)> {
        self.aliases
            .iter()
            .enumerate()
            .find(|(_, a)| a.name.eq_ignore_ascii_case(name))
            .filter(|(_, a)| !(self.hide_paths && matches!(a.source, Source::Paths { .. })))
    }

    fn column_in(&self, idx: usize, def: &AliasDef, name: &str) -> Result<Option<Expr>> {
        let attr = match &def.source {
            Source::Table(t) => t.schema().index_of(name).map(Attr::Table),
            Source::Vertexes(_) => def.source.layout().unwrap().vertex_attr(name).map(Attr::Vertex),
            Source::Edges(_) => def.source.layout().unwrap().edge_attr(name).map(Attr::Edge),
            Source::Paths { .. } => return Ok(None),
        };
        Ok(attr.map(|attr| Expr::Col { alias: idx, attr }))
    }

    fn column(&self, c: &ast::ColumnRef) -> Result<Expr> {
        if let Some(q) = &c.qualifier {
            if let Some(l) = self.local.filter(|l| l.table.eq_ignore_ascii_case(q)) {
                return l
                    .schema
                    .index_of(&c.name)
                    .map(Expr::Local)
                    .ok_or_else(|| Error::UnknownColumn {
                        table: l.table.to_string(),
                        column: c.name.clone(),
                    });
            }
            let Some((idx, def)) = self.alias(q) else {
                return Err(Error::bind(format!("unknown table or alias '{q}'")));
            };
            if let Source::Paths { .. } = def.source {
                return Err(Error::bind(format!("'{}' is not a path component of '{q}'", c.name)));
            }
            return self.column_in(idx, def, &c.name)?.ok_or_else(|| Error::UnknownColumn {
                table: q.clone(),
                column: c.name.clone(),
            });
        }
        if let Some((idx, def)) = self.alias(&c.name) {
            if let Source::Paths { .. } = def.source {
                return Ok(Expr::Path {
                    alias: idx,
                    access: PathAccess::PathString,
                });
            }
        }
        if let Some(l) = self.local {
            if let Some(i) = l.schema.index_of(&c.name) {
                return Ok(Expr::Local(i));
            }
        }
        let mut found = None;
        for (idx, def) in self.aliases.iter().enumerate() {
            if let Some(e) = self.column_in(idx, def, &c.name)? {
                if found.is_some() {
                    return Err(Error::bind(format!("ambiguous column '{}'", c.name)));
                }
                found = Some(e);
            }
        }
        found.ok_or_else(|| Error::UnknownColumn {
            table: self.local.map_or("query", |l| l.table).to_string(),
            column: c.name.clone(),
        })
    }

    fn path(&self, p: &ast::PathRef) -> Result<Expr> {
        let Some((idx, def)) = self.alias(&p.alias) else {
            return Err(Error::bind(format!("unknown path alias '{}'", p.alias)));
        };
        let Source::Paths { graph, .. } = &def.source else {
            return Err(Error::bind(format!("'{}' is not a PATHS alias", p.alias)));
        };
        let layout = def.source.layout().unwrap();
        let view = graph.name();
        let vattr = |name: &Option<String>| match name {
            None => Ok(VertexAttr::Id),
            Some(n) => layout.vertex_attr(n).ok_or_else(|| unknown_attr("vertex", n, view)),
        };
        let index = match p.index {
            None => Index::All,
            Some(ast::PathIndex::Single(i)) => Index::At(i),
            Some(ast::PathIndex::Range(i, j)) => Index::Range(i, j),
            Some(ast::PathIndex::From(i)) => Index::From(i),
            Some(ast::PathIndex::Any) => Index::Any,
        };
        let access = match p.component {
            PathComponent::Length | PathComponent::PathString => {
                if p.attribute.is_some() {
                    return Err(Error::bind(format!("{} has no attributes", p.component.name())));
                }
                if p.component == PathComponent::Length {
                    PathAccess::Length
                } else {
                    PathAccess::PathString
                }
            }
            PathComponent::StartVertex => PathAccess::Start(vattr(&p.attribute)?),
            PathComponent::EndVertex => PathAccess::End(vattr(&p.attribute)?),
            PathComponent::Vertexes => PathAccess::Vertex {
                index,
                attr: vattr(&p.attribute)?,
            },
            PathComponent::Edges => match p.edge_end {
                Some(end) => PathAccess::EdgeEnd {
                    index,
                    end,
                    attr: vattr(&p.attribute)?,
                },
                None => PathAccess::Edge {
                    index,
                    attr: match &p.attribute {
                        None => EdgeAttr::Id,
                        Some(n) => layout.edge_attr(n).ok_or_else(|| unknown_attr("edge", n, view))?,
                    },
                },
            },
        };
        Ok(Expr::Path { alias: idx, access })
    }

    fn path_aggregate(&self, func: AggFunc, arg: &AggArg) -> Result<Option<Expr>> {
        let AggArg::Expr(e) = arg else {
            return Ok(None);
        };
        let ast::Expr::Path(p) = e.as_ref() else {
            return Ok(None);
        };
        if !matches!(p.component, PathComponent::Edges | PathComponent::Vertexes) || p.index.is_some() {
            return Ok(None);
        }
        let Expr::Path { alias, access } = self.path(p)? else {
            unreachable!()
        };
        let target = match access {
            PathAccess::Edge { attr, .. } => AggTarget::Edges(attr),
            PathAccess::Vertex { attr, .. } => AggTarget::Vertexes(attr),
            _ => return Err(Error::bind("aggregates over edge endpoints are not supported")),
        };
        Ok(Some(Expr::PathAgg { alias, func, target }))
    }

    /// A comparison operand: may be a multi-position path reference.
    fn operand(&self, e: &ast::Expr) -> Result<Expr> {
        match e {
            ast::Expr::Path(p) => self.path(p),
            other => self.expr(other),
        }
    }

    fn expr(&self, e: &ast::Expr) -> Result<Expr> {
        Ok(match e {
            ast::Expr::Literal(l) => Expr::Lit(literal(l)),
            ast::Expr::Column(c) => self.column(c)?,
            ast::Expr::Path(p) => {
                let b = self.path(p)?;
                if let Expr::Path { access, .. } = &b {
                    if access.is_multi() {
                        return Err(Error::bind(format!(
                            "'{p}' spans several positions; use it in a comparison or an aggregate"
                        )));
                    }
                }
                b
            }
            ast::Expr::Compare { op, left, right } => {
                let (l, r) = (self.operand(left)?, self.operand(right)?);
                check_single_multi([&l, &r])?;
                Expr::Cmp {
                    op: *op,
                    left: Box::new(l),
                    right: Box::new(r),
                }
            }
            ast::Expr::InList { expr, list, negated } => {
                let x = self.operand(expr)?;
                let items = list.iter().map(|i| self.operand(i)).collect::<Result<Vec<_>>>()?;
                check_single_multi(std::iter::once(&x).chain(&items))?;
                Expr::InList {
                    expr: Box::new(x),
                    list: items,
                    negated: *negated,
                }
            }
            ast::Expr::InSubquery {
                expr,
                subquery,
                negated,
            } => {
                if !self.subqueries {
                    return Err(Error::bind(
                        "subqueries are only supported inside TEMPGRAPH source filters",
                    ));
                }
                let table = self
                    .catalog
                    .table(&subquery.table)
                    .ok_or_else(|| Error::UnknownTable(subquery.table.clone()))?
                    .clone();
                let inner = Scope {
                    local: Some(Local {
                        table: table.name(),
                        schema: table.schema(),
                    }),
                    subqueries: false,
                    ..*self
                };
                let column = match inner.column(&subquery.column)? {
                    Expr::Local(c) => c,
                    _ => {
                        return Err(Error::bind(format!(
                            "subquery must select a column of '{}'",
                            subquery.table
                        )))
                    }
                };
                let filter = subquery.filter.as_ref().map(|f| inner.expr(f)).transpose()?;
                Expr::InSubquery {
                    expr: Box::new(self.expr(expr)?),
                    sub: Box::new(SubQuery {
                        table: table.clone(),
                        column,
                        filter,
                    }),
                    negated: *negated,
                }
            }
            ast::Expr::And(a, b) => Expr::And(Box::new(self.expr(a)?), Box::new(self.expr(b)?)),
            ast::Expr::Or(a, b) => Expr::Or(Box::new(self.expr(a)?), Box::new(self.expr(b)?)),
            ast::Expr::Not(x) => Expr::Not(Box::new(self.expr(x)?)),
            ast::Expr::Agg { func, arg } => match self.path_aggregate(*func, arg)? {
                Some(e) => e,
                None => {
                    return Err(Error::bind(format!(
                        "aggregate {} is only allowed in the SELECT list",
                        func.name()
                    )))
                }
            },
        })
    }
}

fn check_single_multi<'a>(operands: impl IntoIterator<Item = &'a Expr>) -> Result<()> {
    let n = operands
        .into_iter()
        .filter(|e| matches!(e, Expr::Path { access, .. } if access.is_multi()))
        .count();
    if n > 1 {
        return Err(Error::bind(
            "a comparison may contain at most one ranged path reference",
        ));
    }
    Ok(())
}

pub fn literal(l: &ast::Literal) -> Value {
    match l {
        ast::Literal::Null => Value::Null,
        ast::Literal::Int(i) => Value::Int(*i),
        ast::Literal::Float(f) => Value::Float(*f),
        ast::Literal::Str(s) => Value::Text(s.clone()),
        ast::Literal::Bool(b) => Value::Bool(*b),
    }
}

/// Binds an expression over the columns of one table (DML predicates and
/// SET values).
pub fn bind_local(catalog: &Catalog, table: &Table, e: &ast::Expr) -> Result<Expr> {
    Scope {
        catalog,
        aliases: &[],
        local: Some(Local {
            table: table.name(),
            schema: table.schema(),
        }),
        subqueries: false,
        hide_paths: true,
    }
    .expr(e)
}

/// Evaluates a constant expression (INSERT values).
pub fn constant(e: &ast::Expr) -> Result<Value> {
    match e {
        ast::Expr::Literal(l) => Ok(literal(l)),
        other => Err(Error::bind(format!("expected a literal value, found '{other}'"))),
    }
}

fn integer_column(t: &Table, name: &str, view: &str) -> Result<usize> {
    let idx = t.schema().index_of(name).ok_or_else(|| Error::UnknownColumn {
        table: t.name().to_string(),
        column: name.to_string(),
    })?;
    if t.schema().column(idx).ty != DataType::Integer {
        return Err(Error::GraphView {
            view: view.to_string(),
            message: format!("column '{}.{name}' must be INTEGER", t.name()),
        });
    }
    Ok(idx)
}

fn attr_bindings(t: &Table, attrs: &[ast::AttrBinding], view: &str) -> Result<Vec<(String, usize)>> {
    let mut out: Vec<(String, usize)> = Vec::new();
    for a in attrs {
        if out.iter().any(|(n, _)| n.eq_ignore_ascii_case(&a.alias)) {
            return Err(Error::GraphView {
                view: view.to_string(),
                message: format!("attribute alias '{}' is declared twice", a.alias),
            });
        }
        let c = t.schema().index_of(&a.column).ok_or_else(|| Error::UnknownColumn {
            table: t.name().to_string(),
            column: a.column.clone(),
        })?;
        out.push((a.alias.clone(), c));
    }
    Ok(out)
}

fn resolve_spec(
    catalog: &Catalog,
    scope: Scope<'_>,
    name: &str,
    directed: bool,
    vs: &ast::VertexSource,
    es: &ast::EdgeSource,
) -> Result<(ViewSpec, Arc<Table>, Arc<Table>)> {
    let vt = catalog
        .table(&vs.source)
        .ok_or_else(|| Error::UnknownTable(vs.source.clone()))?
        .clone();
    let et = catalog
        .table(&es.source)
        .ok_or_else(|| Error::UnknownTable(es.source.clone()))?
        .clone();
    let filter = |t: &Table, f: &Option<ast::Expr>| {
        f.as_ref()
            .map(|f| {
                Scope {
                    local: Some(Local {
                        table: t.name(),
                        schema: t.schema(),
                    }),
                    ..scope
                }
                .expr(f)
            })
            .transpose()
    };
    let spec = ViewSpec {
        name: name.to_string(),
        directed,
        vertex: VertexSpec {
            table: vt.name().to_string(),
            id_col: integer_column(&vt, &vs.id, name)?,
            attrs: attr_bindings(&vt, &vs.attrs, name)?,
            filter: filter(&vt, &vs.filter)?,
        },
        edge: EdgeSpec {
            table: et.name().to_string(),
            id_col: integer_column(&et, &es.id, name)?,
            from_col: integer_column(&et, &es.from, name)?,
            to_col: integer_column(&et, &es.to, name)?,
            attrs: attr_bindings(&et, &es.attrs, name)?,
            filter: filter(&et, &es.filter)?,
        },
    };
    Ok((spec, vt, et))
}

/// Resolves a CREATE GRAPH VIEW definition against the catalog.
pub fn bind_view(catalog: &Catalog, def: &ast::GraphViewDef) -> Result<ViewSpec> {
    let scope = Scope {
        catalog,
        aliases: &[],
        local: None,
        subqueries: false,
        hide_paths: true,
    };
    Ok(resolve_spec(catalog, scope, &def.name, def.directed, &def.vertexes, &def.edges)?.0)
}

fn bind_hint(source: &Source, hint: &Option<ast::Hint>) -> Result<Option<ShortestHint>> {
    let Some(h) = hint else {
        return Ok(None);
    };
    let layout = source.layout().unwrap();
    let attr = layout
        .edge_attr(&h.shortest_path)
        .ok_or_else(|| unknown_attr("edge", &h.shortest_path, &layout.spec.name))?;
    if !layout.edge_attr_type(attr).is_numeric() {
        return Err(Error::plan(format!(
            "SHORTESTPATH attribute '{}' is not numeric",
            h.shortest_path
        )));
    }
    Ok(Some(ShortestHint {
        name: h.shortest_path.clone(),
        attr,
    }))
}

fn output_name(e: &ast::Expr) -> String {
    match e {
        ast::Expr::Column(c) => c.name.clone(),
        other => other.to_string(),
    }
}

pub fn bind_select(catalog: &Catalog, sel: &ast::Select) -> Result<BoundSelect> {
    // Pass 1: every FROM item except TEMPGRAPH, whose filters may refer to
    // the others.
    let mut aliases: Vec<AliasDef> = Vec::new();
    for item in &sel.from {
        let name = item.alias().to_string();
        if aliases.iter().any(|a| a.name.eq_ignore_ascii_case(&name)) {
            return Err(Error::bind(format!("duplicate alias '{name}'")));
        }
        let source = match item {
            FromItem::Table { name: t, .. } => match catalog.table(t) {
                Some(t) => Source::Table(t.clone()),
                None if catalog.view(t).is_some() => {
                    return Err(Error::bind(format!(
                        "'{t}' is a graph view; select from {t}.PATHS, {t}.VERTEXES or {t}.EDGES"
                    )))
                }
                None => return Err(Error::UnknownTable(t.clone())),
            },
            FromItem::Graph {
                view, collection, hint, ..
            } => {
                let g = Arc::new(catalog.graph(view).ok_or_else(|| Error::UnknownView(view.clone()))?);
                if hint.is_some() && *collection != GraphCollection::Paths {
                    return Err(Error::bind("HINT applies only to PATHS"));
                }
                match collection {
                    GraphCollection::Vertexes => Source::Vertexes(g),
                    GraphCollection::Edges => Source::Edges(g),
                    GraphCollection::Paths => {
                        let mut s = Source::Paths {
                            graph: GraphSource::View(g),
                            hint: None,
                        };
                        let h = bind_hint(&s, hint)?;
                        if let Source::Paths { hint, .. } = &mut s {
                            *hint = h;
                        }
                        s
                    }
                }
            }
            // Placeholder until pass 2.
            FromItem::TempGraph { .. } => Source::Table(Arc::new(Table::new(
                crate::storage::TableId(u32::MAX),
                "",
                Schema::new(vec![crate::storage::Column::new("_", DataType::Integer)])?,
            ))),
        };
        aliases.push(AliasDef { name, source });
    }
    for (i, item) in sel.from.iter().enumerate() {
        let FromItem::TempGraph { def, alias, hint } = item else {
            continue;
        };
        let scope = Scope {
            catalog,
            aliases: &aliases,
            local: None,
            subqueries: true,
            hide_paths: true,
        };
        let (spec, vt, et) = resolve_spec(catalog, scope, alias, def.directed, &def.vertexes, &def.edges)?;
        let correlated = [&spec.vertex.filter, &spec.edge.filter]
            .into_iter()
            .flatten()
            .any(|f| !f.aliases().is_empty());
        let mut source = Source::Paths {
            graph: GraphSource::Temp(Arc::new(TempSpec {
                spec,
                vertex_table: vt,
                edge_table: et,
                correlated,
            })),
            hint: None,
        };
        let h = bind_hint(&source, hint)?;
        if let Source::Paths { hint, .. } = &mut source {
            *hint = h;
        }
        aliases[i].source = source;
    }

    let scope = Scope {
        catalog,
        aliases: &aliases,
        local: None,
        subqueries: false,
        hide_paths: false,
    };
    let conjuncts = match &sel.filter {
        Some(f) => f
            .conjuncts()
            .into_iter()
            .map(|c| scope.expr(c))
            .collect::<Result<Vec<_>>>()?,
        None => Vec::new(),
    };

    let mut project = Vec::new();
    let mut aggs = Vec::new();
    for item in &sel.items {
        match item {
            SelectItem::Wildcard => {
                for (idx, def) in aliases.iter().enumerate() {
                    match &def.source {
                        Source::Table(t) => {
                            for (c, col) in t.schema().columns().iter().enumerate() {
                                project.push((
                                    col.name.clone(),
                                    Expr::Col {
                                        alias: idx,
                                        attr: Attr::Table(c),
                                    },
                                ));
                            }
                        }
                        Source::Vertexes(_) => {
                            for (n, a) in def.source.layout().unwrap().vertex_columns() {
                                project.push((
                                    n,
                                    Expr::Col {
                                        alias: idx,
                                        attr: Attr::Vertex(a),
                                    },
                                ));
                            }
                        }
                        Source::Edges(_) => {
                            for (n, a) in def.source.layout().unwrap().edge_columns() {
                                project.push((
                                    n,
                                    Expr::Col {
                                        alias: idx,
                                        attr: Attr::Edge(a),
                                    },
                                ));
                            }
                        }
                        Source::Paths { .. } => project.push((
                            def.name.clone(),
                            Expr::Path {
                                alias: idx,
                                access: PathAccess::PathString,
                            },
                        )),
                    }
                }
            }
            SelectItem::Expr { expr, alias } => {
                let name = alias.clone().unwrap_or_else(|| output_name(expr));
                if let ast::Expr::Agg { func, arg } = expr {
                    if scope.path_aggregate(*func, arg)?.is_none() {
                        let arg = match arg {
                            AggArg::Star => None,
                            AggArg::Expr(e) => match e.as_ref() {
                                ast::Expr::Column(c) if c.qualifier.is_none() && scope.alias(&c.name).is_some() => {
                                    if *func != AggFunc::Count {
                                        return Err(Error::bind(format!("{}({}) needs a column", func.name(), c.name)));
                                    }
                                    None
                                }
                                other => Some(scope.expr(other)?),
                            },
                        };
                        aggs.push(AggItem { name, func: *func, arg });
                        continue;
                    }
                }
                project.push((name, scope.expr(expr)?));
            }
        }
    }
    let output = match (project.is_empty(), aggs.is_empty()) {
        (_, true) => Output::Project(project),
        (true, false) => Output::Aggregate(aggs),
        (false, false) => {
            return Err(Error::bind(
                "cannot mix aggregates and plain columns (GROUP BY is not supported)",
            ))
        }
    };
    let limit = match (sel.top, sel.limit) {
        (Some(a), Some(b)) => Some(a.min(b)),
        (a, b) => a.or(b),
    };
    Ok(BoundSelect {
        aliases,
        conjuncts,
        output,
        limit,
    })
}
