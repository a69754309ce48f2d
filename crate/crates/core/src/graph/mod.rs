//! Graph views: materialized topology over relational sources.

mod idmap;
mod view;

use std::borrow::Cow;
use std::fmt::Write;
use std::sync::Arc;

use crate::storage::Table;
use crate::value::Value;

pub use view::{
    EdgeAttr, EdgeRecord, EdgeSpec, GraphStats, GraphView, TopologySnapshot, VertexAttr, VertexRecord, VertexSpec,
    ViewSpec,
};

/// A view together with the source tables its locators point into. Cheap to
/// clone; queries hold one as an immutable snapshot.
#[derive(Debug, Clone)]
pub struct GraphHandle {
    pub view: Arc<GraphView>,
    pub vertex_table: Arc<Table>,
    pub edge_table: Arc<Table>,
}

impl GraphHandle {
    pub fn vertex_value(&self, v: u32, attr: VertexAttr) -> Cow<'_, Value> {
        let rec = self.view.vertex(v);
        match attr {
            VertexAttr::Id => Cow::Owned(Value::Int(rec.id)),
            VertexAttr::FanIn => Cow::Owned(Value::Int(rec.fan_in() as i64)),
            VertexAttr::FanOut => Cow::Owned(Value::Int(rec.fan_out() as i64)),
            VertexAttr::Column(c) => match self.vertex_table.get(rec.locator.slot) {
                Some(t) => Cow::Borrowed(t.get(c)),
                None => Cow::Owned(Value::Null),
            },
        }
    }

    pub fn edge_value(&self, e: u32, attr: EdgeAttr) -> Cow<'_, Value> {
        let rec = self.view.edge(e);
        match attr {
            EdgeAttr::Id => Cow::Owned(Value::Int(rec.id)),
            EdgeAttr::From => Cow::Owned(Value::Int(self.view.vertex(rec.from).id)),
            EdgeAttr::To => Cow::Owned(Value::Int(self.view.vertex(rec.to).id)),
            EdgeAttr::Column(c) => match self.edge_table.get(rec.locator.slot) {
                Some(t) => Cow::Borrowed(t.get(c)),
                None => Cow::Owned(Value::Null),
            },
        }
    }

    /// Converts internal indexes into an id-level path.
    pub fn path_value(&self, edges: &[u32], vertexes: &[u32]) -> PathValue {
        PathValue {
            edges: edges.iter().map(|&e| self.view.edge(e).id).collect(),
            vertexes: vertexes.iter().map(|&v| self.view.vertex(v).id).collect(),
        }
    }
}

/// A path as ids: `vertexes[i]` starts `edges[i]`, and the last vertex ends
/// the last edge (in traversal direction).
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PathValue {
    pub edges: Vec<i64>,
    pub vertexes: Vec<i64>,
}

impl PathValue {
    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn start(&self) -> i64 {
        self.vertexes[0]
    }

    pub fn end(&self) -> i64 {
        *self.vertexes.last().unwrap()
    }

    /// `"1 -e1-> 2 -e2-> 3"`.
    pub fn path_string(&self) -> String {
        let mut s = self.vertexes[0].to_string();
        for (e, v) in self.edges.iter().zip(&self.vertexes[1..]) {
            let _ = write!(s, " -e{e}-> {v}");
        }
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn path_strings() {
        let p = PathValue {
            edges: vec![1, 2],
            vertexes: vec![1, 2, 3],
        };
        assert_eq!(p.path_string(), "1 -e1-> 2 -e2-> 3");
        let p = PathValue {
            edges: vec![3],
            vertexes: vec![1, 3],
        };
        assert_eq!(p.path_string(), "1 -e3-> 3");
        let p = PathValue {
            edges: vec![1, 2, 4],
            vertexes: vec![1, 2, 3, 1],
        };
        assert_eq!(p.path_string(), "1 -e1-> 2 -e2-> 3 -e4-> 1");
    }
}
