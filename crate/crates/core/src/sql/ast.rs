//! Abstract syntax tree for the SQL dialect with graph views and paths.

use crate::value::DataType;

#[derive(Debug, Clone, PartialEq)]
#[allow(clippy::large_enum_variant)]
pub enum Statement {
    CreateTable(CreateTable),
    CreateGraphView(GraphViewDef),
    Insert(Insert),
    Update(Update),
    Delete(Delete),
    Select(Select),
    Explain(Box<Select>),
    Meta(MetaCommand),
}

#[derive(Debug, Clone, PartialEq)]
pub struct CreateTable {
    pub name: String,
    pub columns: Vec<ColumnDef>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ColumnDef {
    pub name: String,
    pub ty: DataType,
}

#[derive(Debug, Clone, PartialEq)]
pub struct GraphViewDef {
    pub name: String,
    pub directed: bool,
    pub vertexes: VertexSource,
    pub edges: EdgeSource,
}

/// `alias = column` inside a VERTEXES(...) or EDGES(...) clause.
#[derive(Debug, Clone, PartialEq)]
pub struct AttrBinding {
    pub alias: String,
    pub column: String,
}

#[derive(Debug, Clone, PartialEq)]
pub struct VertexSource {
    pub id: String,
    pub attrs: Vec<AttrBinding>,
    pub source: String,
    pub filter: Option<Expr>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct EdgeSource {
    pub id: String,
    pub from: String,
    pub to: String,
    pub attrs: Vec<AttrBinding>,
    pub source: String,
    pub filter: Option<Expr>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Insert {
    pub table: String,
    pub columns: Option<Vec<String>>,
    pub rows: Vec<Vec<Expr>>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Update {
    pub table: String,
    pub assignments: Vec<(String, Expr)>,
    pub filter: Option<Expr>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Delete {
    pub table: String,
    pub filter: Option<Expr>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Select {
    pub top: Option<u64>,
    pub items: Vec<SelectItem>,
    pub from: Vec<FromItem>,
    pub filter: Option<Expr>,
    pub limit: Option<u64>,
}

#[derive(Debug, Clone, PartialEq)]
pub enum SelectItem {
    Wildcard,
    Expr { expr: Expr, alias: Option<String> },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GraphCollection {
    Paths,
    Vertexes,
    Edges,
}

impl GraphCollection {
    pub fn keyword(self) -> &'static str {
        match self {
            GraphCollection::Paths => "PATHS",
            GraphCollection::Vertexes => "VERTEXES",
            GraphCollection::Edges => "EDGES",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Hint {
    /// Edge attribute named by `SHORTESTPATH(attr)`.
    pub shortest_path: String,
}

#[derive(Debug, Clone, PartialEq)]
pub struct TempGraphDef {
    pub directed: bool,
    pub vertexes: VertexSource,
    pub edges: EdgeSource,
}

#[derive(Debug, Clone, PartialEq)]
pub enum FromItem {
    Table {
        name: String,
        alias: Option<String>,
    },
    Graph {
        view: String,
        collection: GraphCollection,
        alias: String,
        hint: Option<Hint>,
    },
    TempGraph {
        def: Box<TempGraphDef>,
        alias: String,
        hint: Option<Hint>,
    },
}

impl FromItem {
    pub fn alias(&self) -> &str {
        match self {
            FromItem::Table { name, alias } => alias.as_deref().unwrap_or(name),
            FromItem::Graph { alias, .. } | FromItem::TempGraph { alias, .. } => alias,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Literal {
    Null,
    Int(i64),
    Float(f64),
    Str(String),
    Bool(bool),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CmpOp {
    Eq,
    NotEq,
    Lt,
    LtEq,
    Gt,
    GtEq,
}

impl CmpOp {
    pub fn symbol(self) -> &'static str {
        match self {
            CmpOp::Eq => "=",
            CmpOp::NotEq => "<>",
            CmpOp::Lt => "<",
            CmpOp::LtEq => "<=",
            CmpOp::Gt => ">",
            CmpOp::GtEq => ">=",
        }
    }

    /// The operator with its operands swapped (`a < b` iff `b > a`).
    pub fn flip(self) -> CmpOp {
        match self {
            CmpOp::Lt => CmpOp::Gt,
            CmpOp::LtEq => CmpOp::GtEq,
            CmpOp::Gt => CmpOp::Lt,
            CmpOp::GtEq => CmpOp::LtEq,
            other => other,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum AggFunc {
    Count,
    Sum,
    Min,
    Max,
    Avg,
}

impl AggFunc {
    pub fn name(self) -> &'static str {
        match self {
            AggFunc::Count => "COUNT",
            AggFunc::Sum => "SUM",
            AggFunc::Min => "MIN",
            AggFunc::Max => "MAX",
            AggFunc::Avg => "AVG",
        }
    }

    pub fn from_name(name: &str) -> Option<AggFunc> {
        Some(match name.to_ascii_uppercase().as_str() {
            "COUNT" => AggFunc::Count,
            "SUM" => AggFunc::Sum,
            "MIN" => AggFunc::Min,
            "MAX" => AggFunc::Max,
            "AVG" => AggFunc::Avg,
            _ => return None,
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ColumnRef {
    pub qualifier: Option<String>,
    pub name: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PathComponent {
    Length,
    PathString,
    StartVertex,
    EndVertex,
    Edges,
    Vertexes,
}

impl PathComponent {
    pub fn name(self) -> &'static str {
        match self {
            PathComponent::Length => "Length",
            PathComponent::PathString => "PathString",
            PathComponent::StartVertex => "StartVertex",
            PathComponent::EndVertex => "EndVertex",
            PathComponent::Edges => "Edges",
            PathComponent::Vertexes => "Vertexes",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PathIndex {
    Single(u32),
    Range(u32, u32),
    From(u32),
    Any,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EdgeEnd {
    StartVertex,
    EndVertex,
}

/// `alias.Component[index].EdgeEnd.attribute`; `index: None` on a
/// collection is the whole collection.
#[derive(Debug, Clone, PartialEq)]
pub struct PathRef {
    pub alias: String,
    pub component: PathComponent,
    pub index: Option<PathIndex>,
    pub edge_end: Option<EdgeEnd>,
    pub attribute: Option<String>,
}

#[derive(Debug, Clone, PartialEq)]
pub enum AggArg {
    Star,
    Expr(Box<Expr>),
}

#[derive(Debug, Clone, PartialEq)]
pub struct SubSelect {
    pub column: ColumnRef,
    pub table: String,
    pub filter: Option<Box<Expr>>,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Expr {
    Literal(Literal),
    Column(ColumnRef),
    Path(PathRef),
    Compare {
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
        subquery: Box<SubSelect>,
        negated: bool,
    },
    And(Box<Expr>, Box<Expr>),
    Or(Box<Expr>, Box<Expr>),
    Not(Box<Expr>),
    Agg {
        func: AggFunc,
        arg: AggArg,
    },
}

impl Expr {
    /// Splits a predicate into its top-level AND conjuncts.
    pub fn conjuncts(&self) -> Vec<&Expr> {
        let mut out = Vec::new();
        fn walk<'a>(e: &'a Expr, out: &mut Vec<&'a Expr>) {
            match e {
                Expr::And(a, b) => {
                    walk(a, out);
                    walk(b, out);
                }
                other => out.push(other),
            }
        }
        walk(self, &mut out);
        out
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MetaCommand {
    pub name: String,
    pub args: Vec<String>,
}
