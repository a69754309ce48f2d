use std::collections::{BTreeMap, BTreeSet};
use std::mem::size_of;

use super::idmap::IdMap;
use crate::error::{Error, Result};
use crate::expr::{self, Expr, LocalEnv};
use crate::storage::{Table, Tuple, TupleLocator};
use crate::value::Value;
use rustc_hash::FxHashMap as HashMap;

/// A vertex attribute as seen by queries.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum VertexAttr {
    Id,
    FanIn,
    FanOut,
    Column(usize),
}

/// An edge attribute as seen by queries.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum EdgeAttr {
    Id,
    From,
    To,
    Column(usize),
}

#[derive(Debug, Clone, PartialEq)]
pub struct VertexSpec {
    pub table: String,
    pub id_col: usize,
    /// Declared `alias = column` bindings.
    pub attrs: Vec<(String, usize)>,
    /// Membership filter over the source tuple (`Expr::Local` columns only).
    pub filter: Option<Expr>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct EdgeSpec {
    pub table: String,
    pub id_col: usize,
    pub from_col: usize,
    pub to_col: usize,
    pub attrs: Vec<(String, usize)>,
    pub filter: Option<Expr>,
}

/// A resolved graph-view definition: source tables, column positions and
/// filters.
#[derive(Debug, Clone, PartialEq)]
pub struct ViewSpec {
    pub name: String,
    pub directed: bool,
    pub vertex: VertexSpec,
    pub edge: EdgeSpec,
}

impl VertexSpec {
    pub fn admits(&self, t: &Tuple) -> bool {
        self.filter
            .as_ref()
            .is_none_or(|f| expr::eval_bool(f, &LocalEnv(t.values())))
    }
}

impl EdgeSpec {
    pub fn admits(&self, t: &Tuple) -> bool {
        self.filter
            .as_ref()
            .is_none_or(|f| expr::eval_bool(f, &LocalEnv(t.values())))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct VertexRecord {
    pub id: i64,
    /// Internal edge indexes, in insertion order. For undirected views every
    /// incident edge is listed in both lists.
    pub out_edges: Vec<u32>,
    pub in_edges: Vec<u32>,
    pub locator: TupleLocator,
}

impl VertexRecord {
    pub fn fan_out(&self) -> usize {
        self.out_edges.len()
    }

    pub fn fan_in(&self) -> usize {
        self.in_edges.len()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct EdgeRecord {
    pub id: i64,
    /// Internal vertex indexes.
    pub from: u32,
    pub to: u32,
    pub locator: TupleLocator,
}

#[derive(Debug, Clone, PartialEq)]
struct Dangling {
    from: Option<i64>,
    to: Option<i64>,
    locator: TupleLocator,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GraphStats {
    pub avg_fan_out: f64,
}

/// Canonical, order-independent description of a topology, used to compare
/// a maintained view with a fresh build.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TopologySnapshot {
    /// vertex id -> (locator, sorted out edge ids, sorted in edge ids)
    pub vertexes: BTreeMap<i64, (TupleLocator, Vec<i64>, Vec<i64>)>,
    /// edge id -> (from id, to id, locator)
    pub edges: BTreeMap<i64, (i64, i64, TupleLocator)>,
    pub dangling: BTreeSet<i64>,
}

/// In-memory topology of a graph view. Attribute values stay in the source
/// tables and are reached through tuple locators.
#[derive(Debug, Clone)]
pub struct GraphView {
    spec: ViewSpec,
    vertexes: Vec<Option<VertexRecord>>,
    vertex_index: IdMap,
    edges: Vec<Option<EdgeRecord>>,
    edge_index: IdMap,
    dangling: HashMap<i64, Dangling>,
    /// Endpoint id -> dangling edges naming it, whether or not the vertex
    /// is currently present.
    waiting: HashMap<i64, Vec<i64>>,
    stats: Option<GraphStats>,
}

fn duplicate(t: &Table, id: i64) -> Error {
    Error::DuplicateId {
        table: t.name().to_string(),
        id: id.to_string(),
    }
}

fn id_of(v: &Value, table: &str) -> Result<i64> {
    match v {
        Value::Int(i) => Ok(*i),
        Value::Null => Err(Error::NullId {
            table: table.to_string(),
        }),
        other => Err(Error::TypeMismatch {
            column: "id".into(),
            expected: "INTEGER".into(),
            got: other.type_name().into(),
        }),
    }
}

impl GraphView {
    fn empty(spec: ViewSpec) -> Self {
        GraphView {
            spec,
            vertexes: Vec::new(),
            vertex_index: IdMap::new(),
            edges: Vec::new(),
            edge_index: IdMap::new(),
            dangling: HashMap::default(),
            waiting: HashMap::default(),
            stats: None,
        }
    }

    /// Builds the topology with one pass over the vertex source followed by
    /// one pass over the edge source.
    pub fn build(spec: ViewSpec, vertex_table: &Table, edge_table: &Table) -> Result<GraphView> {
        let mut g = GraphView::empty(spec);
        g.vertexes.reserve(vertex_table.len());
        for (slot, t) in vertex_table.scan() {
            if !g.spec.vertex.admits(t) {
                continue;
            }
            let id = id_of(t.get(g.spec.vertex.id_col), vertex_table.name())?;
            if g.vertex_index.contains(id) {
                return Err(duplicate(vertex_table, id));
            }
            g.push_vertex(id, vertex_table.locator(slot));
        }
        g.edges.reserve(edge_table.len());
        // Edge records first, adjacency second.
        for (slot, t) in edge_table.scan() {
            if !g.spec.edge.admits(t) {
                continue;
            }
            let id = id_of(t.get(g.spec.edge.id_col), edge_table.name())?;
            if g.edge_index.contains(id) || g.dangling.contains_key(&id) {
                return Err(duplicate(edge_table, id));
            }
            let from = t.get(g.spec.edge.from_col).as_i64();
            let to = t.get(g.spec.edge.to_col).as_i64();
            let ends = from
                .and_then(|f| g.vertex_index.get(f))
                .zip(to.and_then(|t| g.vertex_index.get(t)));
            let Some((fi, ti)) = ends else {
                g.park(id, from, to, edge_table.locator(slot));
                continue;
            };
            g.edge_index.insert(id, g.edges.len() as u32);
            g.edges.push(Some(EdgeRecord {
                id,
                from: fi,
                to: ti,
                locator: edge_table.locator(slot),
            }));
        }
        g.link_all();
        Ok(g)
    }

    /// Fills every adjacency list from the edge records, in edge order. The
    /// lists are laid out in two flat arrays first (a counting sort by
    /// vertex) and then copied out, which touches far less memory at random
    /// than pushing edge by edge.
    fn link_all(&mut self) {
        let n = self.vertexes.len();
        let directed = self.spec.directed;
        let arcs = |r: &EdgeRecord| {
            let back = (!directed && r.from != r.to).then_some((r.to, r.from));
            std::iter::once((r.from, r.to)).chain(back)
        };
        let mut out_at = vec![0usize; n + 1];
        let mut in_at = vec![0usize; n + 1];
        for r in self.edges.iter().flatten() {
            for (a, b) in arcs(r) {
                out_at[a as usize + 1] += 1;
                in_at[b as usize + 1] += 1;
            }
        }
        for i in 0..n {
            out_at[i + 1] += out_at[i];
            in_at[i + 1] += in_at[i];
        }
        let mut out_flat = vec![0u32; out_at[n]];
        let mut in_flat = vec![0u32; in_at[n]];
        let mut out_next = out_at[..n].to_vec();
        let mut in_next = in_at[..n].to_vec();
        for (e, r) in self.edges.iter().enumerate() {
            for (a, b) in r.iter().flat_map(arcs) {
                out_flat[out_next[a as usize]] = e as u32;
                out_next[a as usize] += 1;
                in_flat[in_next[b as usize]] = e as u32;
                in_next[b as usize] += 1;
            }
        }
        for (v, rec) in self.vertexes.iter_mut().enumerate() {
            if let Some(rec) = rec {
                rec.out_edges = out_flat[out_at[v]..out_at[v + 1]].to_vec();
                rec.in_edges = in_flat[in_at[v]..in_at[v + 1]].to_vec();
            }
        }
    }

    pub fn spec(&self) -> &ViewSpec {
        &self.spec
    }

    pub fn name(&self) -> &str {
        &self.spec.name
    }

    pub fn directed(&self) -> bool {
        self.spec.directed
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_index.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edge_index.len()
    }

    pub fn dangling_count(&self) -> usize {
        self.dangling.len()
    }

    pub fn is_dangling(&self, edge_id: i64) -> bool {
        self.dangling.contains_key(&edge_id)
    }

    /// Upper bound (exclusive) of internal vertex indexes.
    pub fn vertex_slots(&self) -> usize {
        self.vertexes.len()
    }

    pub fn vertex_by_id(&self, id: i64) -> Option<&VertexRecord> {
        self.vertex_index.get(id).map(|i| self.vertex(i))
    }

    pub fn edge_by_id(&self, id: i64) -> Option<&EdgeRecord> {
        self.edge_index.get(id).map(|i| self.edge(i))
    }

    pub fn vertex_idx(&self, id: i64) -> Option<u32> {
        self.vertex_index.get(id)
    }

    pub fn edge_idx(&self, id: i64) -> Option<u32> {
        self.edge_index.get(id)
    }

    /// Record at an internal index. Panics on a tombstone.
    pub fn vertex(&self, idx: u32) -> &VertexRecord {
        self.vertexes[idx as usize].as_ref().expect("live vertex")
    }

    pub fn edge(&self, idx: u32) -> &EdgeRecord {
        self.edges[idx as usize].as_ref().expect("live edge")
    }

    /// Live vertexes in internal index order.
    pub fn vertexes(&self) -> impl Iterator<Item = (u32, &VertexRecord)> + '_ {
        self.vertexes
            .iter()
            .enumerate()
            .filter_map(|(i, v)| v.as_ref().map(|v| (i as u32, v)))
    }

    pub fn edges(&self) -> impl Iterator<Item = (u32, &EdgeRecord)> + '_ {
        self.edges
            .iter()
            .enumerate()
            .filter_map(|(i, e)| e.as_ref().map(|e| (i as u32, e)))
    }

    /// The vertex reached by leaving `v` through edge `e`.
    #[inline]
    pub fn step(&self, v: u32, e: u32) -> u32 {
        let r = self.edge(e);
        if r.from == v {
            r.to
        } else {
            r.from
        }
    }

    pub fn stats(&self) -> Option<GraphStats> {
        self.stats
    }

    /// Recomputes and stores the average fan-out.
    pub fn compute_stats(&mut self) -> GraphStats {
        let n = self.vertex_count();
        let arcs: usize = self.vertexes().map(|(_, v)| v.fan_out()).sum();
        let s = GraphStats {
            avg_fan_out: if n == 0 { 0.0 } else { arcs as f64 / n as f64 },
        };
        self.stats = Some(s);
        s
    }

    fn push_vertex(&mut self, id: i64, locator: TupleLocator) -> u32 {
        let idx = self.vertexes.len() as u32;
        self.vertexes.push(Some(VertexRecord {
            id,
            out_edges: Vec::new(),
            in_edges: Vec::new(),
            locator,
        }));
        self.vertex_index.insert(id, idx);
        idx
    }

    fn attach(&mut self, id: i64, from: u32, to: u32, locator: TupleLocator) {
        let e = self.edges.len() as u32;
        self.edges.push(Some(EdgeRecord { id, from, to, locator }));
        self.edge_index.insert(id, e);
        self.link(e);
    }

    /// Adds edge `e` to the adjacency lists of its ends.
    fn link(&mut self, e: u32) {
        let r = self.edges[e as usize].as_ref().unwrap();
        let (from, to) = (r.from, r.to);
        let directed = self.spec.directed;
        let vs = &mut self.vertexes;
        vs[from as usize].as_mut().unwrap().out_edges.push(e);
        vs[to as usize].as_mut().unwrap().in_edges.push(e);
        if !directed && from != to {
            vs[to as usize].as_mut().unwrap().out_edges.push(e);
            vs[from as usize].as_mut().unwrap().in_edges.push(e);
        }
    }

    fn park(&mut self, id: i64, from: Option<i64>, to: Option<i64>, locator: TupleLocator) {
        for end in [from, to].into_iter().flatten() {
            let list = self.waiting.entry(end).or_default();
            if !list.contains(&id) {
                list.push(id);
            }
        }
        self.dangling.insert(id, Dangling { from, to, locator });
    }

    fn unpark(&mut self, id: i64) -> Option<Dangling> {
        let d = self.dangling.remove(&id)?;
        for end in [d.from, d.to].into_iter().flatten() {
            if let Some(list) = self.waiting.get_mut(&end) {
                list.retain(|&e| e != id);
                if list.is_empty() {
                    self.waiting.remove(&end);
                }
            }
        }
        Some(d)
    }

    /// Maintenance: a member tuple was added to the vertex source.
    pub fn vertex_added(&mut self, id: i64, locator: TupleLocator) {
        debug_assert!(!self.vertex_index.contains(id));
        self.push_vertex(id, locator);
        let Some(waiting) = self.waiting.get(&id).cloned() else {
            return;
        };
        for e in waiting {
            let Some(d) = self.dangling.get(&e) else {
                continue;
            };
            let (Some(f), Some(t)) = (d.from, d.to) else {
                continue;
            };
            if let (Some(fi), Some(ti)) = (self.vertex_index.get(f), self.vertex_index.get(t)) {
                let d = self.unpark(e).unwrap();
                self.attach(e, fi, ti, d.locator);
            }
        }
    }

    /// Maintenance: a member tuple left the vertex source. Incident edges
    /// become dangling.
    pub fn vertex_removed(&mut self, id: i64) {
        let Some(idx) = self.vertex_index.remove(id) else {
            return;
        };
        let rec = self.vertexes[idx as usize].take().unwrap();
        let mut incident: Vec<u32> = rec.out_edges.into_iter().chain(rec.in_edges).collect();
        incident.sort_unstable();
        incident.dedup();
        for e in incident {
            let r = self.edges[e as usize].take().unwrap();
            self.edge_index.remove(r.id);
            let (fid, tid) = (self.vertex_id_or(r.from, id), self.vertex_id_or(r.to, id));
            for end in [r.from, r.to] {
                if end != idx {
                    let v = self.vertexes[end as usize].as_mut().unwrap();
                    v.out_edges.retain(|&x| x != e);
                    v.in_edges.retain(|&x| x != e);
                }
            }
            self.park(r.id, Some(fid), Some(tid), r.locator);
        }
    }

    fn vertex_id_or(&self, idx: u32, removed: i64) -> i64 {
        self.vertexes[idx as usize].as_ref().map_or(removed, |v| v.id)
    }

    /// Maintenance: a member tuple was added to the edge source.
    pub fn edge_added(&mut self, id: i64, from: Option<i64>, to: Option<i64>, locator: TupleLocator) {
        let ends = from
            .and_then(|f| self.vertex_index.get(f))
            .zip(to.and_then(|t| self.vertex_index.get(t)));
        match ends {
            Some((fi, ti)) => self.attach(id, fi, ti, locator),
            None => self.park(id, from, to, locator),
        }
    }

    /// Maintenance: a member tuple left the edge source.
    pub fn edge_removed(&mut self, id: i64) {
        if self.unpark(id).is_some() {
            return;
        }
        let Some(e) = self.edge_index.remove(id) else {
            return;
        };
        let r = self.edges[e as usize].take().unwrap();
        for end in [r.from, r.to] {
            let v = self.vertexes[end as usize].as_mut().unwrap();
            v.out_edges.retain(|&x| x != e);
            v.in_edges.retain(|&x| x != e);
        }
    }

    pub fn snapshot(&self) -> TopologySnapshot {
        let ids = |list: &[u32]| {
            let mut v: Vec<i64> = list.iter().map(|&e| self.edge(e).id).collect();
            v.sort_unstable();
            v
        };
        TopologySnapshot {
            vertexes: self
                .vertexes()
                .map(|(_, v)| (v.id, (v.locator, ids(&v.out_edges), ids(&v.in_edges))))
                .collect(),
            edges: self
                .edges()
                .map(|(_, e)| (e.id, (self.vertex(e.from).id, self.vertex(e.to).id, e.locator)))
                .collect(),
            dangling: self.dangling.keys().copied().collect(),
        }
    }

    /// Approximate heap footprint of the topology alone (records, adjacency,
    /// id maps). Attribute payloads are not part of it.
    pub fn topology_bytes(&self) -> usize {
        let mut n = self.vertexes.capacity() * size_of::<Option<VertexRecord>>()
            + self.edges.capacity() * size_of::<Option<EdgeRecord>>()
            + self.vertex_index.heap_bytes()
            + self.edge_index.heap_bytes()
            + self.dangling.capacity() * (size_of::<(i64, Dangling)>() + 1);
        for (_, v) in self.vertexes() {
            n += (v.out_edges.capacity() + v.in_edges.capacity()) * size_of::<u32>();
        }
        n
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::storage::{Column, Schema, TableId};
    use crate::value::DataType;

    fn tables(vs: &[i64], es: &[(i64, i64, i64)]) -> (Table, Table) {
        let mut vt = Table::new(
            TableId(0),
            "V",
            Schema::new(vec![Column::new("id", DataType::Integer)]).unwrap(),
        );
        for &v in vs {
            vt.push(vec![v.into()]);
        }
        let mut et = Table::new(
            TableId(1),
            "E",
            Schema::new(vec![
                Column::new("id", DataType::Integer),
                Column::new("src", DataType::Integer),
                Column::new("dst", DataType::Integer),
            ])
            .unwrap(),
        );
        for &(e, f, t) in es {
            et.push(vec![e.into(), f.into(), t.into()]);
        }
        (vt, et)
    }

    fn spec(directed: bool) -> ViewSpec {
        ViewSpec {
            name: "G".into(),
            directed,
            vertex: VertexSpec {
                table: "V".into(),
                id_col: 0,
                attrs: vec![],
                filter: None,
            },
            edge: EdgeSpec {
                table: "E".into(),
                id_col: 0,
                from_col: 1,
                to_col: 2,
                attrs: vec![],
                filter: None,
            },
        }
    }

    const G1_EDGES: [(i64, i64, i64); 4] = [(1, 1, 2), (2, 2, 3), (3, 1, 3), (4, 3, 1)];

    #[test]
    fn builds_toy_graph() {
        let (vt, et) = tables(&[1, 2, 3, 4], &G1_EDGES);
        let mut g = GraphView::build(spec(true), &vt, &et).unwrap();
        assert_eq!((g.vertex_count(), g.edge_count()), (4, 4));
        assert_eq!(g.vertex_by_id(1).unwrap().fan_out(), 2);
        assert_eq!(g.vertex_by_id(3).unwrap().fan_in(), 2);
        assert_eq!(g.vertex_by_id(4).unwrap().fan_out(), 0);
        assert!(g.vertex_by_id(99).is_none());
        assert_eq!(g.vertex(g.edge_by_id(3).unwrap().to).id, 3);
        assert_eq!(g.compute_stats().avg_fan_out, 1.0);
    }

    #[test]
    fn missing_endpoint_is_dangling() {
        let (vt, et) = tables(&[1, 2], &[(9, 1, 77), (1, 1, 2)]);
        let g = GraphView::build(spec(true), &vt, &et).unwrap();
        assert_eq!(g.edge_count(), 1);
        assert!(g.is_dangling(9));
    }

    #[test]
    fn empty_sources() {
        let (vt, et) = tables(&[], &[]);
        let mut g = GraphView::build(spec(false), &vt, &et).unwrap();
        assert_eq!(g.compute_stats().avg_fan_out, 0.0);
    }

    #[test]
    fn vertex_removal_and_revival_round_trip() {
        let (vt, et) = tables(&[1, 2, 3, 4], &G1_EDGES);
        let mut g = GraphView::build(spec(true), &vt, &et).unwrap();
        let before = g.snapshot();
        let loc = g.vertex_by_id(3).unwrap().locator;
        g.vertex_removed(3);
        assert_eq!(g.edge_count(), 1);
        assert!(g.is_dangling(2) && g.is_dangling(3) && g.is_dangling(4));
        g.vertex_added(3, loc);
        assert_eq!(g.snapshot(), before);
    }

    #[test]
    fn undirected_edges_are_listed_at_both_ends() {
        let (vt, et) = tables(&[1, 2, 3], &[(1, 1, 2), (2, 3, 3)]);
        let g = GraphView::build(spec(false), &vt, &et).unwrap();
        let v1 = g.vertex_by_id(1).unwrap();
        let v2 = g.vertex_by_id(2).unwrap();
        assert_eq!((v1.fan_out(), v1.fan_in()), (1, 1));
        assert_eq!((v2.fan_out(), v2.fan_in()), (1, 1));
        assert_eq!(g.vertex_by_id(3).unwrap().fan_out(), 1);
    }

    #[test]
    fn duplicate_vertex_id_fails_build() {
        let (vt, et) = tables(&[1, 1], &[]);
        assert!(matches!(
            GraphView::build(spec(true), &vt, &et),
            Err(Error::DuplicateId { .. })
        ));
    }
}
