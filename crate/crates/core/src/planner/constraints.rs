//! Pushed path predicates compiled into checks a traversal can apply while it
//! extends a partial path. Every check is sound for pruning: a partial path
//! that fails one has no extension satisfying the predicate. Emission still
//! re-evaluates every pushed conjunct on the complete path.

use crate::expr::{Expr, Index, PathAccess};
use crate::graph::EdgeAttr;
use crate::sql::ast::{AggFunc, CmpOp};
use crate::value::Value;

/// An atom evaluated on each new edge (or vertex) whose position lies in
/// `lo..=hi`, with the atom's ranged reference pinned to it.
#[derive(Debug, Clone)]
pub struct PositionCheck {
    pub atom: Expr,
    pub lo: u32,
    pub hi: Option<u32>,
}

impl PositionCheck {
    pub fn covers(&self, pos: u32) -> bool {
        pos >= self.lo && self.hi.is_none_or(|h| pos <= h)
    }
}

/// A conjunct whose value is fixed once the path reaches `depth` edges.
#[derive(Debug, Clone)]
pub struct PrefixCheck {
    pub depth: u32,
    pub pred: Expr,
}

/// `func(Edges.attr) op limit` where the running aggregate only moves in the
/// violating direction.
#[derive(Debug, Clone)]
pub struct AggCheck {
    pub func: AggFunc,
    pub attr: EdgeAttr,
    pub op: CmpOp,
    pub limit: Value,
}

#[derive(Debug, Clone, Default)]
pub struct Constraints {
    pub edge_checks: Vec<PositionCheck>,
    pub vertex_checks: Vec<PositionCheck>,
    pub prefix_checks: Vec<PrefixCheck>,
    pub agg_checks: Vec<AggCheck>,
    /// Conjuncts evaluated on every emitted path.
    pub emit: Vec<Expr>,
    /// Atoms every edge must satisfy; shortest-path search restricts the
    /// graph with them.
    pub restrict: Vec<Expr>,
}

impl Constraints {
    pub fn pushed(&self) -> usize {
        self.emit.len()
    }
}

fn is_lit(e: &Expr) -> bool {
    matches!(e, Expr::Lit(_))
}

/// The single ranged reference of an atom whose other operands are literals.
fn universal_ref(atom: &Expr, alias: usize) -> Option<PathAccess> {
    let (operands, ok): (Vec<&Expr>, bool) = match atom {
        Expr::Cmp { left, right, .. } => (vec![left, right], true),
        Expr::InList { expr, list, .. } => {
            let mut v = vec![expr.as_ref()];
            v.extend(list.iter());
            (v, true)
        }
        _ => (Vec::new(), false),
    };
    if !ok {
        return None;
    }
    let mut found = None;
    for o in operands {
        match o {
            Expr::Path { alias: a, access } if *a == alias && access.is_multi() => {
                if found.is_some() {
                    return None;
                }
                found = Some(*access);
            }
            o if is_lit(o) => {}
            _ => return None,
        }
    }
    found.filter(|a| a.index().is_some_and(Index::is_universal))
}

fn span(index: Index) -> (u32, Option<u32>) {
    match index {
        Index::Range(i, j) => (i, Some(j)),
        Index::From(i) => (i, None),
        _ => (0, None),
    }
}

fn prefix_depth(e: &Expr, alias: usize) -> Option<u32> {
    let mut ok = true;
    let mut depth = 1;
    e.visit(&mut |x| match x {
        Expr::Path { alias: a, access } if *a == alias => {
            let fixed = match access {
                PathAccess::Start(_) => true,
                PathAccess::Edge { index, .. }
                | PathAccess::EdgeEnd { index, .. }
                | PathAccess::Vertex { index, .. } => {
                    matches!(index, Index::At(_) | Index::Range(..))
                }
                _ => false,
            };
            ok &= fixed;
            depth = depth.max(access.required_len());
        }
        Expr::PathAgg { alias: a, .. } if *a == alias => ok = false,
        Expr::Col { .. } | Expr::Local(_) | Expr::InSubquery { .. } => ok = false,
        _ => {}
    });
    ok.then_some(depth)
}

fn agg_check(e: &Expr, alias: usize) -> Option<AggCheck> {
    let Expr::Cmp { op, left, right } = e else {
        return None;
    };
    let (agg, lit, op) = match (left.as_ref(), right.as_ref()) {
        (a @ Expr::PathAgg { .. }, Expr::Lit(v)) => (a, v, *op),
        (Expr::Lit(v), a @ Expr::PathAgg { .. }) => (a, v, op.flip()),
        _ => return None,
    };
    let Expr::PathAgg {
        alias: a,
        func,
        target: crate::expr::AggTarget::Edges(attr),
    } = agg
    else {
        return None;
    };
    if *a != alias || lit.is_null() {
        return None;
    }
    let upper = matches!(op, CmpOp::Lt | CmpOp::LtEq);
    let lower = matches!(op, CmpOp::Gt | CmpOp::GtEq);
    let monotone = match func {
        AggFunc::Sum | AggFunc::Count | AggFunc::Max => upper,
        AggFunc::Min => lower,
        AggFunc::Avg => false,
    };
    monotone.then(|| AggCheck {
        func: *func,
        attr: *attr,
        op,
        limit: lit.clone(),
    })
}

/// Compiles the conjuncts pushed into the scan of path alias `alias`.
/// `graph_only` lists every conjunct that references nothing but this path
/// (pushed or not); the shortest-path restriction is drawn from it.
pub fn compile(alias: usize, pushed: &[Expr], graph_only: &[Expr], aggregates: bool) -> Constraints {
    let mut c = Constraints {
        emit: pushed.to_vec(),
        ..Default::default()
    };
    for e in pushed {
        if let Some(access) = universal_ref(e, alias) {
            let (lo, hi) = span(access.index().unwrap());
            let check = PositionCheck {
                atom: e.clone(),
                lo,
                hi,
            };
            match access {
                PathAccess::Vertex { .. } => c.vertex_checks.push(check),
                _ => c.edge_checks.push(check),
            }
            continue;
        }
        if let Some(depth) = prefix_depth(e, alias) {
            c.prefix_checks.push(PrefixCheck { depth, pred: e.clone() });
            continue;
        }
        if aggregates {
            if let Some(a) = agg_check(e, alias) {
                c.agg_checks.push(a);
            }
        }
    }
    for e in graph_only {
        if let Some(access @ (PathAccess::Edge { .. } | PathAccess::EdgeEnd { .. })) = universal_ref(e, alias) {
            if span(access.index().unwrap()) == (0, None) {
                c.restrict.push(e.clone());
            }
        }
    }
    c
}

#[cfg(test)]
mod tests {
    use super::*;

    fn edge(index: Index) -> Box<Expr> {
        Box::new(Expr::Path {
            alias: 0,
            access: PathAccess::Edge {
                index,
                attr: EdgeAttr::Column(1),
            },
        })
    }

    fn lit(i: i64) -> Box<Expr> {
        Box::new(Expr::Lit(Value::Int(i)))
    }

    #[test]
    fn classifies() {
        let all = Expr::Cmp {
            op: CmpOp::Gt,
            left: edge(Index::All),
            right: lit(30),
        };
        let from = Expr::Cmp {
            op: CmpOp::Gt,
            left: edge(Index::From(2)),
            right: lit(30),
        };
        let any = Expr::Cmp {
            op: CmpOp::Gt,
            left: edge(Index::Any),
            right: lit(30),
        };
        let at = Expr::Cmp {
            op: CmpOp::Eq,
            left: edge(Index::At(2)),
            right: lit(1),
        };
        let sum = Expr::Cmp {
            op: CmpOp::LtEq,
            left: Box::new(Expr::PathAgg {
                alias: 0,
                func: AggFunc::Sum,
                target: crate::expr::AggTarget::Edges(EdgeAttr::Column(1)),
            }),
            right: lit(10),
        };
        let pushed = vec![all.clone(), from, any, at, sum];
        let c = compile(0, &pushed, &pushed, true);
        assert_eq!(c.edge_checks.len(), 2);
        assert_eq!(c.edge_checks[1].lo, 2);
        assert_eq!(c.prefix_checks.len(), 1);
        assert_eq!(c.prefix_checks[0].depth, 3);
        assert_eq!(c.agg_checks.len(), 1);
        assert_eq!(c.restrict, vec![all]);
        assert_eq!(c.pushed(), 5);
        assert!(compile(0, &pushed, &pushed, false).agg_checks.is_empty());
    }
}
