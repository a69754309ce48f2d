//! Path length bounds implied by a predicate.

use std::fmt;

use crate::expr::{Expr, PathAccess};
use crate::sql::ast::CmpOp;
use crate::value::Value;

/// Closed interval of path lengths; `hi: None` is unbounded.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Interval {
    pub lo: u32,
    pub hi: Option<u32>,
}

impl Interval {
    pub const ANY: Interval = Interval { lo: 1, hi: None };

    pub fn new(lo: u32, hi: Option<u32>) -> Self {
        Interval { lo: lo.max(1), hi }
    }

    pub fn is_empty(&self) -> bool {
        self.hi.is_some_and(|h| h < self.lo)
    }

    pub fn contains(&self, len: u32) -> bool {
        len >= self.lo && self.hi.is_none_or(|h| len <= h)
    }

    pub fn intersect(self, o: Interval) -> Interval {
        let hi = match (self.hi, o.hi) {
            (Some(a), Some(b)) => Some(a.min(b)),
            (a, b) => a.or(b),
        };
        Interval {
            lo: self.lo.max(o.lo),
            hi,
        }
    }

    /// Smallest interval containing both (the hull).
    pub fn union(self, o: Interval) -> Interval {
        if self.is_empty() {
            return o;
        }
        if o.is_empty() {
            return self;
        }
        let hi = match (self.hi, o.hi) {
            (Some(a), Some(b)) => Some(a.max(b)),
            _ => None,
        };
        Interval {
            lo: self.lo.min(o.lo),
            hi,
        }
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.hi {
            Some(h) => write!(f, "[{},{}]", self.lo, h),
            None => write!(f, "[{},inf)", self.lo),
        }
    }
}

fn literal_len(e: &Expr) -> Option<i64> {
    match e {
        Expr::Lit(v) => match v {
            Value::Int(i) => Some(*i),
            Value::Float(x) if x.fract() == 0.0 => Some(*x as i64),
            _ => None,
        },
        _ => None,
    }
}

fn empty() -> Interval {
    Interval { lo: 1, hi: Some(0) }
}

/// `Length op n` as an interval.
fn length_cmp(op: CmpOp, n: i64) -> Interval {
    let clamp = |x: i64| x.clamp(0, u32::MAX as i64) as u32;
    match op {
        CmpOp::Eq if n < 1 => empty(),
        CmpOp::Eq => Interval::new(clamp(n), Some(clamp(n))),
        CmpOp::Lt if n <= 1 => empty(),
        CmpOp::Lt => Interval::new(1, Some(clamp(n - 1))),
        CmpOp::LtEq if n < 1 => empty(),
        CmpOp::LtEq => Interval::new(1, Some(clamp(n))),
        CmpOp::Gt => Interval::new(clamp(n.saturating_add(1)), None),
        CmpOp::GtEq => Interval::new(clamp(n), None),
        CmpOp::NotEq => Interval::ANY,
    }
}

fn is_length(e: &Expr, alias: usize) -> bool {
    matches!(e, Expr::Path { alias: a, access: PathAccess::Length } if *a == alias)
}

/// Lengths on which `e` can be true for paths bound to `alias`.
pub fn infer(e: &Expr, alias: usize) -> Interval {
    match e {
        Expr::And(a, b) => infer(a, alias).intersect(infer(b, alias)),
        Expr::Or(a, b) => infer(a, alias).union(infer(b, alias)),
        Expr::Not(_) => Interval::ANY,
        Expr::Cmp { op, left, right } => {
            let mut iv = required(e, alias);
            if is_length(left, alias) {
                if let Some(n) = literal_len(right) {
                    iv = iv.intersect(length_cmp(*op, n));
                }
            } else if is_length(right, alias) {
                if let Some(n) = literal_len(left) {
                    iv = iv.intersect(length_cmp(op.flip(), n));
                }
            }
            iv
        }
        Expr::InList {
            expr,
            list,
            negated: false,
        } if is_length(expr, alias) => {
            let mut iv = required(e, alias);
            let lens: Option<Vec<i64>> = list.iter().map(literal_len).collect();
            if let Some(lens) = lens {
                let hull = lens
                    .iter()
                    .map(|&n| length_cmp(CmpOp::Eq, n))
                    .fold(empty(), Interval::union);
                iv = iv.intersect(hull);
            }
            iv
        }
        Expr::InList { .. } => required(e, alias),
        _ => Interval::ANY,
    }
}

/// Every path reference in an atom must be defined for it to be true.
fn required(atom: &Expr, alias: usize) -> Interval {
    let mut lo = 1;
    atom.visit(&mut |x| {
        if let Expr::Path { alias: a, access } = x {
            if *a == alias {
                lo = lo.max(access.required_len());
            }
        }
    });
    Interval::new(lo, None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::Index;
    use crate::graph::EdgeAttr;

    fn len_cmp(op: CmpOp, n: i64) -> Expr {
        Expr::Cmp {
            op,
            left: Box::new(Expr::Path {
                alias: 0,
                access: PathAccess::Length,
            }),
            right: Box::new(Expr::Lit(Value::Int(n))),
        }
    }

    fn edge_at(i: u32) -> Expr {
        Expr::Cmp {
            op: CmpOp::Eq,
            left: Box::new(Expr::Path {
                alias: 0,
                access: PathAccess::Edge {
                    index: Index::At(i),
                    attr: EdgeAttr::Id,
                },
            }),
            right: Box::new(Expr::Lit(Value::Int(1))),
        }
    }

    #[test]
    fn comparisons() {
        assert_eq!(infer(&len_cmp(CmpOp::Eq, 2), 0), Interval::new(2, Some(2)));
        assert_eq!(infer(&len_cmp(CmpOp::Lt, 5), 0), Interval::new(1, Some(4)));
        assert_eq!(infer(&len_cmp(CmpOp::Gt, 3), 0), Interval::new(4, None));
        assert!(infer(&len_cmp(CmpOp::Lt, 1), 0).is_empty());
        assert_eq!(infer(&len_cmp(CmpOp::Eq, 2), 1), Interval::ANY);
    }

    #[test]
    fn connectives() {
        let e = len_cmp(CmpOp::Lt, 3).and(edge_at(4));
        assert!(infer(&e, 0).is_empty());
        let e = Expr::Or(Box::new(len_cmp(CmpOp::Eq, 2)), Box::new(len_cmp(CmpOp::Eq, 5)));
        assert_eq!(infer(&e, 0), Interval::new(2, Some(5)));
        let e = Expr::Not(Box::new(edge_at(4)));
        assert_eq!(infer(&e, 0), Interval::ANY);
        assert_eq!(infer(&edge_at(4), 0), Interval::new(5, None));
    }

    #[test]
    fn display() {
        assert_eq!(Interval::new(2, Some(2)).to_string(), "[2,2]");
        assert_eq!(Interval::ANY.to_string(), "[1,inf)");
    }
}
