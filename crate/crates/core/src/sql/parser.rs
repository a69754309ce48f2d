//! Recursive-descent parser for the SQL dialect.
//!
//! ```text
//! select  := SELECT [TOP int] items FROM from {, from} [WHERE expr] [LIMIT int]
//! from    := table [alias]
//!          | gv . (PATHS | VERTEXES | EDGES) alias [hint]
//!          | TEMPGRAPH ( vertexes-clause edges-clause ) . PATHS alias [hint]
//! hint    := HINT ( SHORTESTPATH ( attr ) )
//! view    := CREATE (DIRECTED | UNDIRECTED) GRAPH VIEW name
//!            VERTEXES ( ID = col {, alias = col} ) FROM src [WHERE expr]
//!            EDGES ( ID = col, FROM = col, TO = col {, alias = col} ) FROM src [WHERE expr]
//! ```
//!
//! Keywords are case-insensitive; identifiers keep their case.

use super::ast::*;
use super::lexer::{tokenize, Tok, Token};
use crate::error::{Error, Result};
use crate::value::DataType;

const RESERVED: &[&str] = &[
    "SELECT",
    "FROM",
    "WHERE",
    "AND",
    "OR",
    "NOT",
    "IN",
    "TOP",
    "LIMIT",
    "HINT",
    "AS",
    "CREATE",
    "INSERT",
    "UPDATE",
    "DELETE",
    "SET",
    "VALUES",
    "EXPLAIN",
    "TEMPGRAPH",
    "EDGES",
    "VERTEXES",
    "INTO",
    "TABLE",
    "GRAPH",
    "VIEW",
    "NULL",
    "TRUE",
    "FALSE",
    "DIRECTED",
    "UNDIRECTED",
];

fn is_reserved(w: &str) -> bool {
    RESERVED.iter().any(|k| k.eq_ignore_ascii_case(w))
}

/// Parses exactly one statement (an optional trailing `;` is allowed).
pub fn parse(text: &str) -> Result<Statement> {
    let trimmed = text.trim_start();
    if let Some(rest) = trimmed.strip_prefix('.') {
        return parse_meta(rest, text);
    }
    let mut p = Parser::new(text)?;
    let stmt = p.statement()?;
    p.eat(&Tok::Semicolon);
    p.expect_eof()?;
    Ok(stmt)
}

/// Parses a standalone expression, e.g. a predicate for `delete_where`.
pub fn parse_expr(text: &str) -> Result<Expr> {
    let mut p = Parser::new(text)?;
    let e = p.expr()?;
    p.expect_eof()?;
    Ok(e)
}

fn parse_meta(rest: &str, original: &str) -> Result<Statement> {
    let mut parts = rest.split_whitespace().map(|s| s.trim_end_matches(';').to_string());
    let name = parts.next().filter(|n| !n.is_empty()).ok_or_else(|| Error::Syntax {
        line: 1,
        column: 1,
        token: original.trim().to_string(),
        message: "empty meta-command".into(),
    })?;
    Ok(Statement::Meta(MetaCommand {
        name: name.to_ascii_lowercase(),
        args: parts.filter(|a| !a.is_empty()).collect(),
    }))
}

/// One statement of a script with the 1-based line it starts on.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScriptStatement {
    pub line: usize,
    pub text: String,
}

/// Splits script text on `;` outside string literals. Lines starting with
/// `.` are meta-commands terminated by the newline.
pub fn split_script(text: &str) -> Vec<ScriptStatement> {
    let mut out = Vec::new();
    let mut buf = String::new();
    let mut start_line = 1;
    let mut line = 1;
    let mut quote: Option<char> = None;
    let mut in_comment = false;
    let mut chars = text.chars().peekable();
    let flush = |buf: &mut String, start: usize, out: &mut Vec<ScriptStatement>| {
        let t = buf.trim();
        if !t.is_empty() {
            out.push(ScriptStatement {
                line: start,
                text: t.to_string(),
            });
        }
        buf.clear();
    };
    while let Some(c) = chars.next() {
        if in_comment {
            if c == '\n' {
                in_comment = false;
                line += 1;
                buf.push('\n');
            }
            continue;
        }
        if buf.trim().is_empty() && quote.is_none() {
            if c.is_whitespace() {
                if c == '\n' {
                    line += 1;
                }
                buf.push(c);
                continue;
            }
            start_line = line;
            if c == '.' {
                let mut meta = String::from(".");
                for c in chars.by_ref() {
                    if c == '\n' {
                        line += 1;
                        break;
                    }
                    meta.push(c);
                }
                buf.clear();
                buf.push_str(&meta);
                flush(&mut buf, start_line, &mut out);
                continue;
            }
        }
        match quote {
            Some(q) => {
                if c == q {
                    quote = None;
                }
                buf.push(c);
            }
            None => match c {
                '\'' | '"' => {
                    quote = Some(c);
                    buf.push(c);
                }
                '-' if chars.peek() == Some(&'-') => {
                    in_comment = true;
                }
                ';' => flush(&mut buf, start_line, &mut out),
                _ => buf.push(c),
            },
        }
        if c == '\n' {
            line += 1;
        }
    }
    flush(&mut buf, start_line, &mut out);
    out
}

struct Parser {
    toks: Vec<Token>,
    pos: usize,
}

impl Parser {
    fn new(text: &str) -> Result<Self> {
        Ok(Parser {
            toks: tokenize(text)?,
            pos: 0,
        })
    }

    fn peek(&self) -> &Tok {
        &self.toks[self.pos].tok
    }

    fn peek_at(&self, n: usize) -> &Tok {
        let i = (self.pos + n).min(self.toks.len() - 1);
        &self.toks[i].tok
    }

    fn next(&mut self) -> Tok {
        let t = self.toks[self.pos].tok.clone();
        if self.pos < self.toks.len() - 1 {
            self.pos += 1;
        }
        t
    }

    fn error<T>(&self, message: impl Into<String>) -> Result<T> {
        let t = &self.toks[self.pos];
        Err(Error::Syntax {
            line: t.line,
            column: t.column,
            token: t.tok.to_string(),
            message: message.into(),
        })
    }

    fn eat(&mut self, tok: &Tok) -> bool {
        if self.peek() == tok {
            self.next();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, tok: &Tok) -> Result<()> {
        if self.eat(tok) {
            Ok(())
        } else {
            self.error(format!("expected '{tok}'"))
        }
    }

    fn expect_eof(&self) -> Result<()> {
        if *self.peek() == Tok::Eof {
            Ok(())
        } else {
            self.error("unexpected token after end of statement")
        }
    }

    fn peek_kw(&self, kw: &str) -> bool {
        matches!(self.peek(), Tok::Word(w) if w.eq_ignore_ascii_case(kw))
    }

    fn eat_kw(&mut self, kw: &str) -> bool {
        if self.peek_kw(kw) {
            self.next();
            true
        } else {
            false
        }
    }

    fn expect_kw(&mut self, kw: &str) -> Result<()> {
        if self.eat_kw(kw) {
            Ok(())
        } else {
            self.error(format!("expected {kw}"))
        }
    }

    /// A non-reserved identifier.
    fn ident(&mut self, what: &str) -> Result<String> {
        match self.peek() {
            Tok::Word(w) if !is_reserved(w) => {
                let w = w.clone();
                self.next();
                Ok(w)
            }
            _ => self.error(format!("expected {what}")),
        }
    }

    /// Any word, reserved or not (used after a `.`).
    fn any_word(&mut self, what: &str) -> Result<String> {
        match self.peek() {
            Tok::Word(w) => {
                let w = w.clone();
                self.next();
                Ok(w)
            }
            _ => self.error(format!("expected {what}")),
        }
    }

    fn uint(&mut self, what: &str) -> Result<u64> {
        match self.peek() {
            Tok::Int(i) if *i >= 0 => {
                let i = *i as u64;
                self.next();
                Ok(i)
            }
            _ => self.error(format!("expected {what}")),
        }
    }

    fn statement(&mut self) -> Result<Statement> {
        if self.peek_kw("SELECT") {
            return Ok(Statement::Select(self.select()?));
        }
        if self.eat_kw("EXPLAIN") {
            return Ok(Statement::Explain(Box::new(self.select()?)));
        }
        if self.eat_kw("CREATE") {
            if self.eat_kw("TABLE") {
                return self.create_table();
            }
            let directed = if self.eat_kw("DIRECTED") {
                true
            } else if self.eat_kw("UNDIRECTED") {
                false
            } else {
                return self.error("expected TABLE, DIRECTED or UNDIRECTED");
            };
            self.expect_kw("GRAPH")?;
            self.expect_kw("VIEW")?;
            let name = self.ident("graph view name")?;
            let vertexes = self.vertexes_clause()?;
            let edges = self.edges_clause()?;
            return Ok(Statement::CreateGraphView(GraphViewDef {
                name,
                directed,
                vertexes,
                edges,
            }));
        }
        if self.eat_kw("INSERT") {
            return self.insert();
        }
        if self.eat_kw("UPDATE") {
            return self.update();
        }
        if self.eat_kw("DELETE") {
            self.expect_kw("FROM")?;
            let table = self.ident("table name")?;
            let filter = self.opt_where()?;
            return Ok(Statement::Delete(Delete { table, filter }));
        }
        self.error("expected a statement")
    }

    fn create_table(&mut self) -> Result<Statement> {
        let name = self.ident("table name")?;
        self.expect(&Tok::LParen)?;
        let mut columns = Vec::new();
        loop {
            let col = self.ident("column name")?;
            let ty_name = self.any_word("column type")?;
            let Some(ty) = DataType::from_sql(&ty_name) else {
                self.pos -= 1;
                return self.error(format!("unknown type '{ty_name}'"));
            };
            if self.eat(&Tok::LParen) {
                self.uint("type length")?;
                self.expect(&Tok::RParen)?;
            }
            columns.push(ColumnDef { name: col, ty });
            if !self.eat(&Tok::Comma) {
                break;
            }
        }
        self.expect(&Tok::RParen)?;
        Ok(Statement::CreateTable(CreateTable { name, columns }))
    }

    fn bindings(&mut self) -> Result<Vec<(String, String)>> {
        self.expect(&Tok::LParen)?;
        let mut out = Vec::new();
        loop {
            let name = self.any_word("binding name")?;
            self.expect(&Tok::Eq)?;
            let col = self.ident("column name")?;
            out.push((name, col));
            if !self.eat(&Tok::Comma) {
                break;
            }
        }
        self.expect(&Tok::RParen)?;
        Ok(out)
    }

    fn source(&mut self) -> Result<(String, Option<Expr>)> {
        self.expect_kw("FROM")?;
        let source = self.ident("source table")?;
        let filter = self.opt_where()?;
        Ok((source, filter))
    }

    fn vertexes_clause(&mut self) -> Result<VertexSource> {
        self.expect_kw("VERTEXES")?;
        let mut id = None;
        let mut attrs = Vec::new();
        for (name, column) in self.bindings()? {
            if name.eq_ignore_ascii_case("ID") && id.is_none() {
                id = Some(column);
            } else {
                attrs.push(AttrBinding { alias: name, column });
            }
        }
        let Some(id) = id else {
            return self.error("VERTEXES clause needs an ID binding");
        };
        let (source, filter) = self.source()?;
        Ok(VertexSource {
            id,
            attrs,
            source,
            filter,
        })
    }

    fn edges_clause(&mut self) -> Result<EdgeSource> {
        self.expect_kw("EDGES")?;
        let (mut id, mut from, mut to) = (None, None, None);
        let mut attrs = Vec::new();
        for (name, column) in self.bindings()? {
            let slot = if name.eq_ignore_ascii_case("ID") {
                &mut id
            } else if name.eq_ignore_ascii_case("FROM") {
                &mut from
            } else if name.eq_ignore_ascii_case("TO") {
                &mut to
            } else {
                attrs.push(AttrBinding { alias: name, column });
                continue;
            };
            if slot.is_some() {
                return self.error(format!("duplicate {} binding", name.to_ascii_uppercase()));
            }
            *slot = Some(column);
        }
        let (Some(id), Some(from), Some(to)) = (id, from, to) else {
            return self.error("EDGES clause needs ID, FROM and TO bindings");
        };
        let (source, filter) = self.source()?;
        Ok(EdgeSource {
            id,
            from,
            to,
            attrs,
            source,
            filter,
        })
    }

    fn insert(&mut self) -> Result<Statement> {
        self.expect_kw("INTO")?;
        let table = self.ident("table name")?;
        let columns = if self.eat(&Tok::LParen) {
            let mut cols = vec![self.ident("column name")?];
            while self.eat(&Tok::Comma) {
                cols.push(self.ident("column name")?);
            }
            self.expect(&Tok::RParen)?;
            Some(cols)
        } else {
            None
        };
        self.expect_kw("VALUES")?;
        let mut rows = Vec::new();
        loop {
            self.expect(&Tok::LParen)?;
            let mut row = vec![self.expr()?];
            while self.eat(&Tok::Comma) {
                row.push(self.expr()?);
            }
            self.expect(&Tok::RParen)?;
            rows.push(row);
            if !self.eat(&Tok::Comma) {
                break;
            }
        }
        Ok(Statement::Insert(Insert { table, columns, rows }))
    }

    fn update(&mut self) -> Result<Statement> {
        let table = self.ident("table name")?;
        self.expect_kw("SET")?;
        let mut assignments = Vec::new();
        loop {
            let col = self.ident("column name")?;
            self.expect(&Tok::Eq)?;
            assignments.push((col, self.expr()?));
            if !self.eat(&Tok::Comma) {
                break;
            }
        }
        let filter = self.opt_where()?;
        Ok(Statement::Update(Update {
            table,
            assignments,
            filter,
        }))
    }

    fn opt_where(&mut self) -> Result<Option<Expr>> {
        if self.eat_kw("WHERE") {
            Ok(Some(self.expr()?))
        } else {
            Ok(None)
        }
    }

    fn select(&mut self) -> Result<Select> {
        self.expect_kw("SELECT")?;
        let top = if self.eat_kw("TOP") {
            Some(self.uint("row count after TOP")?)
        } else {
            None
        };
        let mut items = vec![self.select_item()?];
        while self.eat(&Tok::Comma) {
            items.push(self.select_item()?);
        }
        self.expect_kw("FROM")?;
        let mut from = vec![self.table_ref()?];
        while self.eat(&Tok::Comma) {
            from.push(self.table_ref()?);
        }
        let filter = self.opt_where()?;
        let limit = if self.eat_kw("LIMIT") {
            Some(self.uint("row count after LIMIT")?)
        } else {
            None
        };
        Ok(Select {
            top,
            items,
            from,
            filter,
            limit,
        })
    }

    fn select_item(&mut self) -> Result<SelectItem> {
        if self.eat(&Tok::Star) {
            return Ok(SelectItem::Wildcard);
        }
        let expr = self.expr()?;
        let alias = self.opt_alias()?;
        Ok(SelectItem::Expr { expr, alias })
    }

    fn opt_alias(&mut self) -> Result<Option<String>> {
        if self.eat_kw("AS") {
            return Ok(Some(self.ident("alias")?));
        }
        match self.peek() {
            Tok::Word(w) if !is_reserved(w) => {
                let w = w.clone();
                self.next();
                Ok(Some(w))
            }
            _ => Ok(None),
        }
    }

    fn hint(&mut self) -> Result<Option<Hint>> {
        if !self.eat_kw("HINT") {
            return Ok(None);
        }
        self.expect(&Tok::LParen)?;
        self.expect_kw("SHORTESTPATH")?;
        self.expect(&Tok::LParen)?;
        let attr = self.ident("weight attribute")?;
        self.expect(&Tok::RParen)?;
        self.expect(&Tok::RParen)?;
        Ok(Some(Hint { shortest_path: attr }))
    }

    fn table_ref(&mut self) -> Result<FromItem> {
        if self.eat_kw("TEMPGRAPH") {
            self.expect(&Tok::LParen)?;
            let directed = if self.eat_kw("UNDIRECTED") {
                false
            } else {
                self.eat_kw("DIRECTED");
                true
            };
            let vertexes = self.vertexes_clause()?;
            let edges = self.edges_clause()?;
            self.expect(&Tok::RParen)?;
            self.expect(&Tok::Dot)?;
            self.expect_kw("PATHS")?;
            self.eat_kw("AS");
            let alias = self.ident("alias for TEMPGRAPH paths")?;
            let hint = self.hint()?;
            return Ok(FromItem::TempGraph {
                def: Box::new(TempGraphDef {
                    directed,
                    vertexes,
                    edges,
                }),
                alias,
                hint,
            });
        }
        let name = self.ident("table or graph view name")?;
        if self.eat(&Tok::Dot) {
            let coll = self.any_word("PATHS, VERTEXES or EDGES")?;
            let collection = match coll.to_ascii_uppercase().as_str() {
                "PATHS" => GraphCollection::Paths,
                "VERTEXES" => GraphCollection::Vertexes,
                "EDGES" => GraphCollection::Edges,
                _ => {
                    self.pos -= 1;
                    return self.error("expected PATHS, VERTEXES or EDGES");
                }
            };
            self.eat_kw("AS");
            let alias = self.ident("alias")?;
            let hint = self.hint()?;
            return Ok(FromItem::Graph {
                view: name,
                collection,
                alias,
                hint,
            });
        }
        let alias = self.opt_alias()?;
        Ok(FromItem::Table { name, alias })
    }

    fn expr(&mut self) -> Result<Expr> {
        let mut left = self.and_expr()?;
        while self.eat_kw("OR") {
            let right = self.and_expr()?;
            left = Expr::Or(Box::new(left), Box::new(right));
        }
        Ok(left)
    }

    fn and_expr(&mut self) -> Result<Expr> {
        let mut left = self.not_expr()?;
        while self.eat_kw("AND") {
            let right = self.not_expr()?;
            left = Expr::And(Box::new(left), Box::new(right));
        }
        Ok(left)
    }

    fn not_expr(&mut self) -> Result<Expr> {
        if self.eat_kw("NOT") {
            return Ok(Expr::Not(Box::new(self.not_expr()?)));
        }
        self.comparison()
    }

    fn comparison(&mut self) -> Result<Expr> {
        let left = self.operand()?;
        let op = match self.peek() {
            Tok::Eq => Some(CmpOp::Eq),
            Tok::NotEq => Some(CmpOp::NotEq),
            Tok::Lt => Some(CmpOp::Lt),
            Tok::LtEq => Some(CmpOp::LtEq),
            Tok::Gt => Some(CmpOp::Gt),
            Tok::GtEq => Some(CmpOp::GtEq),
            _ => None,
        };
        if let Some(op) = op {
            self.next();
            let right = self.operand()?;
            return Ok(Expr::Compare {
                op,
                left: Box::new(left),
                right: Box::new(right),
            });
        }
        let negated = if self.peek_kw("NOT") && matches!(self.peek_at(1), Tok::Word(w) if w.eq_ignore_ascii_case("IN"))
        {
            self.next();
            true
        } else {
            false
        };
        if self.eat_kw("IN") {
            self.expect(&Tok::LParen)?;
            if self.eat_kw("SELECT") {
                let column = match self.reference()? {
                    Expr::Column(c) => c,
                    _ => return self.error("subquery must select a single column"),
                };
                self.expect_kw("FROM")?;
                let table = self.ident("table name")?;
                let filter = self.opt_where()?.map(Box::new);
                self.expect(&Tok::RParen)?;
                return Ok(Expr::InSubquery {
                    expr: Box::new(left),
                    subquery: Box::new(SubSelect { column, table, filter }),
                    negated,
                });
            }
            let mut list = vec![self.operand()?];
            while self.eat(&Tok::Comma) {
                list.push(self.operand()?);
            }
            self.expect(&Tok::RParen)?;
            return Ok(Expr::InList {
                expr: Box::new(left),
                list,
                negated,
            });
        }
        if negated {
            return self.error("expected IN after NOT");
        }
        Ok(left)
    }

    fn operand(&mut self) -> Result<Expr> {
        match self.peek().clone() {
            Tok::Int(i) => {
                self.next();
                Ok(Expr::Literal(Literal::Int(i)))
            }
            Tok::Float(f) => {
                self.next();
                Ok(Expr::Literal(Literal::Float(f)))
            }
            Tok::Str(s) => {
                self.next();
                Ok(Expr::Literal(Literal::Str(s)))
            }
            Tok::Minus => {
                self.next();
                match self.next() {
                    Tok::Int(i) => Ok(Expr::Literal(Literal::Int(-i))),
                    Tok::Float(f) => Ok(Expr::Literal(Literal::Float(-f))),
                    _ => {
                        self.pos -= 1;
                        self.error("expected a number after '-'")
                    }
                }
            }
            Tok::LParen => {
                self.next();
                let e = self.expr()?;
                self.expect(&Tok::RParen)?;
                Ok(e)
            }
            Tok::Word(w) => {
                let upper = w.to_ascii_uppercase();
                match upper.as_str() {
                    "NULL" => {
                        self.next();
                        return Ok(Expr::Literal(Literal::Null));
                    }
                    "TRUE" | "FALSE" => {
                        self.next();
                        return Ok(Expr::Literal(Literal::Bool(upper == "TRUE")));
                    }
                    _ => {}
                }
                if let Some(func) = AggFunc::from_name(&w) {
                    if *self.peek_at(1) == Tok::LParen {
                        self.next();
                        self.next();
                        let arg = if self.eat(&Tok::Star) {
                            AggArg::Star
                        } else {
                            AggArg::Expr(Box::new(self.expr()?))
                        };
                        self.expect(&Tok::RParen)?;
                        return Ok(Expr::Agg { func, arg });
                    }
                }
                self.reference()
            }
            _ => self.error("expected an expression"),
        }
    }

    fn reference(&mut self) -> Result<Expr> {
        let first = self.ident("column or alias")?;
        if !self.eat(&Tok::Dot) {
            return Ok(Expr::Column(ColumnRef {
                qualifier: None,
                name: first,
            }));
        }
        let second = self.any_word("column or path component")?;
        let component = match second.to_ascii_lowercase().as_str() {
            "length" => Some((PathComponent::Length, None)),
            "pathstring" => Some((PathComponent::PathString, None)),
            "startvertex" => Some((PathComponent::StartVertex, None)),
            "endvertex" => Some((PathComponent::EndVertex, None)),
            "startvertexid" => Some((PathComponent::StartVertex, Some("Id".to_string()))),
            "endvertexid" => Some((PathComponent::EndVertex, Some("Id".to_string()))),
            "edges" => Some((PathComponent::Edges, None)),
            "vertexes" => Some((PathComponent::Vertexes, None)),
            _ => None,
        };
        let Some((component, preset_attr)) = component else {
            return Ok(Expr::Column(ColumnRef {
                qualifier: Some(first),
                name: second,
            }));
        };
        let mut r = PathRef {
            alias: first,
            component,
            index: None,
            edge_end: None,
            attribute: preset_attr,
        };
        match component {
            PathComponent::Length | PathComponent::PathString => {}
            PathComponent::StartVertex | PathComponent::EndVertex => {
                if r.attribute.is_none() && self.eat(&Tok::Dot) {
                    r.attribute = Some(self.any_word("vertex attribute")?);
                }
            }
            PathComponent::Edges | PathComponent::Vertexes => {
                if self.eat(&Tok::LBracket) {
                    r.index = Some(self.path_index()?);
                    self.expect(&Tok::RBracket)?;
                }
                if self.eat(&Tok::Dot) {
                    let w = self.any_word("attribute")?;
                    let end = match w.to_ascii_lowercase().as_str() {
                        "startvertex" if component == PathComponent::Edges => Some(EdgeEnd::StartVertex),
                        "endvertex" if component == PathComponent::Edges => Some(EdgeEnd::EndVertex),
                        _ => None,
                    };
                    match end {
                        Some(end) => {
                            r.edge_end = Some(end);
                            if self.eat(&Tok::Dot) {
                                r.attribute = Some(self.any_word("vertex attribute")?);
                            }
                        }
                        None => r.attribute = Some(w),
                    }
                }
            }
        }
        Ok(Expr::Path(r))
    }

    fn path_index(&mut self) -> Result<PathIndex> {
        if self.eat_kw("ANY") {
            return Ok(PathIndex::Any);
        }
        let start = self.uint("index")? as u32;
        if !self.eat(&Tok::DotDot) {
            return Ok(PathIndex::Single(start));
        }
        if self.eat(&Tok::Star) {
            return Ok(PathIndex::From(start));
        }
        let end = self.uint("range end")? as u32;
        if end < start {
            self.pos -= 1;
            return self.error("range end precedes its start");
        }
        Ok(PathIndex::Range(start, end))
    }
}
