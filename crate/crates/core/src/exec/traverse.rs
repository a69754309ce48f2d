//! Depth-first and breadth-first enumeration of simple paths.
//!
//! A path never repeats a vertex, except that its last vertex may equal its
//! first (a cycle); a closed path is not extended. In undirected graphs the
//! closing edge must differ from the first edge.

use std::collections::VecDeque;
use std::sync::Arc;

use super::{ExecStats, PathIter};
use crate::error::Result;
use crate::expr::{self, Accumulator, PathCursor, PathEnv};
use crate::graph::GraphHandle;
use crate::planner::{Constraints, Interval};
use crate::sql::ast::AggFunc;

/// Pruning and emission rules shared by all traversals.
pub struct Rules {
    pub graph: Arc<GraphHandle>,
    pub alias: usize,
    pub cons: Arc<Constraints>,
    pub interval: Interval,
    pub target: Option<u32>,
    /// Per aggregate check: whether it may prune. A SUM bound only prunes
    /// when every edge weight is non-null and non-negative.
    agg_enabled: Vec<bool>,
}

impl Rules {
    pub fn new(
        graph: Arc<GraphHandle>,
        alias: usize,
        cons: Arc<Constraints>,
        interval: Interval,
        target: Option<u32>,
    ) -> Self {
        let agg_enabled = cons
            .agg_checks
            .iter()
            .map(|a| {
                a.func != AggFunc::Sum
                    || graph
                        .view
                        .edges()
                        .all(|(e, _)| graph.edge_value(e, a.attr).as_f64().is_some_and(|x| x >= 0.0))
            })
            .collect();
        Rules {
            graph,
            alias,
            cons,
            interval,
            target,
            agg_enabled,
        }
    }

    fn env<'a>(&'a self, edges: &'a [u32], vertexes: &'a [u32]) -> PathEnv<'a> {
        PathEnv {
            alias: self.alias,
            cursor: PathCursor {
                graph: &self.graph,
                edges,
                vertexes,
            },
        }
    }

    /// Vertex checks at position `pos` for vertex `v`.
    pub fn vertex_ok(&self, v: u32, pos: u32) -> bool {
        let vs = [v];
        let env = self.env(&[], &vs);
        self.cons
            .vertex_checks
            .iter()
            .filter(|c| c.covers(pos))
            .all(|c| expr::eval_pinned(&c.atom, &env, 0))
    }

    /// Whether edge `e` leaving `from` for `to` satisfies every atom that
    /// holds on all edges.
    pub fn edge_allowed(&self, e: u32, from: u32, to: u32) -> bool {
        let (es, vs) = ([e], [from, to]);
        let env = self.env(&es, &vs);
        self.cons.restrict.iter().all(|a| expr::eval_pinned(a, &env, 0))
    }

    /// Checks after the last edge was appended. `false` prunes the path and
    /// all its extensions.
    pub fn extend_ok(&self, edges: &[u32], vertexes: &[u32]) -> bool {
        let len = edges.len() as u32;
        let k = len - 1;
        let n = vertexes.len();
        let (es, vs) = ([edges[k as usize]], [vertexes[n - 2], vertexes[n - 1]]);
        let mini = self.env(&es, &vs);
        if !self
            .cons
            .edge_checks
            .iter()
            .filter(|c| c.covers(k))
            .all(|c| expr::eval_pinned(&c.atom, &mini, 0))
        {
            return false;
        }
        if !self.vertex_ok(vertexes[n - 1], len) {
            return false;
        }
        let full = self.env(edges, vertexes);
        if !self
            .cons
            .prefix_checks
            .iter()
            .filter(|c| c.depth == len)
            .all(|c| expr::eval_bool(&c.pred, &full))
        {
            return false;
        }
        self.cons
            .agg_checks
            .iter()
            .zip(&self.agg_enabled)
            .filter(|(_, on)| **on)
            .all(|(c, _)| {
                let mut acc = Accumulator::new(c.func);
                for &e in edges {
                    acc.push(&self.graph.edge_value(e, c.attr));
                }
                let cur = acc.finish();
                cur.is_null() || expr::compare(c.op, &cur, &c.limit)
            })
    }

    /// Whether the traversal may append another edge.
    pub fn can_extend(&self, edges: &[u32], vertexes: &[u32]) -> bool {
        let len = edges.len() as u32;
        if self.interval.hi.is_some_and(|h| len >= h) {
            return false;
        }
        if len == 0 {
            return true;
        }
        let (first, last) = (vertexes[0], vertexes[vertexes.len() - 1]);
        // Closed, or at a target it cannot return to.
        last != first && self.target != Some(last)
    }

    pub fn emit_ok(&self, edges: &[u32], vertexes: &[u32]) -> bool {
        let len = edges.len() as u32;
        if !self.interval.contains(len) {
            return false;
        }
        if self.target.is_some_and(|t| vertexes[vertexes.len() - 1] != t) {
            return false;
        }
        let env = self.env(edges, vertexes);
        self.cons.emit.iter().all(|c| expr::eval_bool(c, &env))
    }

    /// Simple-path rule for stepping from the path's end over `e` to `w`.
    fn may_visit(&self, on_path: &[bool], edges: &[u32], start: u32, e: u32, w: u32) -> bool {
        if w == start {
            self.graph.view.directed() || edges.first() != Some(&e) || edges.is_empty()
        } else {
            !on_path[w as usize]
        }
    }
}

pub struct Dfs {
    rules: Rules,
    seeds: Vec<u32>,
    next_seed: usize,
    /// (vertex, next out-edge position)
    stack: Vec<(u32, usize)>,
    edges: Vec<u32>,
    vertexes: Vec<u32>,
    on_path: Vec<bool>,
}

impl Dfs {
    pub fn new(rules: Rules, seeds: Vec<u32>) -> Self {
        let n = rules.graph.view.vertex_slots();
        Dfs {
            rules,
            seeds,
            next_seed: 0,
            stack: Vec::new(),
            edges: Vec::new(),
            vertexes: Vec::new(),
            on_path: vec![false; n],
        }
    }
}

impl PathIter for Dfs {
    fn next_path(&mut self, stats: &ExecStats) -> Result<Option<(Vec<u32>, Vec<u32>)>> {
        loop {
            if self.stack.is_empty() {
                if let Some(&s) = self.vertexes.first() {
                    self.on_path[s as usize] = false;
                }
                self.vertexes.clear();
                self.edges.clear();
                let Some(&s) = self.seeds.get(self.next_seed) else {
                    return Ok(None);
                };
                self.next_seed += 1;
                if self.rules.vertex_ok(s, 0) {
                    self.stack.push((s, 0));
                    self.vertexes.push(s);
                    self.on_path[s as usize] = true;
                }
                continue;
            }
            let top = self.stack.len() - 1;
            let (v, pos) = self.stack[top];
            let view = &self.rules.graph.view;
            let out = &view.vertex(v).out_edges;
            if pos < out.len() && self.rules.can_extend(&self.edges, &self.vertexes) {
                self.stack[top].1 += 1;
                let e = out[pos];
                let w = view.step(v, e);
                let start = self.vertexes[0];
                if !self.rules.may_visit(&self.on_path, &self.edges, start, e, w) {
                    continue;
                }
                stats.bump_expansions();
                self.edges.push(e);
                self.vertexes.push(w);
                if !self.rules.extend_ok(&self.edges, &self.vertexes) {
                    self.edges.pop();
                    self.vertexes.pop();
                    continue;
                }
                self.on_path[w as usize] = true;
                self.stack.push((w, 0));
                if self.rules.emit_ok(&self.edges, &self.vertexes) {
                    return Ok(Some((self.edges.clone(), self.vertexes.clone())));
                }
            } else {
                self.stack.pop();
                if self.stack.is_empty() {
                    continue;
                }
                let w = self.vertexes.pop().unwrap();
                self.edges.pop();
                if w != self.vertexes[0] {
                    self.on_path[w as usize] = false;
                }
            }
        }
    }
}

const NONE: u32 = u32::MAX;

struct Node {
    parent: u32,
    edge: u32,
    vertex: u32,
}

/// Level-order enumeration, one seed at a time. Each call expands at most
/// one queued path and returns the next accepted one.
pub struct Bfs {
    rules: Rules,
    seeds: Vec<u32>,
    next_seed: usize,
    nodes: Vec<Node>,
    queue: VecDeque<u32>,
    pending: VecDeque<u32>,
    on_path: Vec<bool>,
    edges: Vec<u32>,
    vertexes: Vec<u32>,
}

impl Bfs {
    pub fn new(rules: Rules, seeds: Vec<u32>) -> Self {
        let n = rules.graph.view.vertex_slots();
        Bfs {
            rules,
            seeds,
            next_seed: 0,
            nodes: Vec::new(),
            queue: VecDeque::new(),
            pending: VecDeque::new(),
            on_path: vec![false; n],
            edges: Vec::new(),
            vertexes: Vec::new(),
        }
    }

    /// Loads the path ending at node `n` into the buffers.
    fn load(&mut self, mut n: u32) {
        self.edges.clear();
        self.vertexes.clear();
        loop {
            let node = &self.nodes[n as usize];
            self.vertexes.push(node.vertex);
            if node.parent == NONE {
                break;
            }
            self.edges.push(node.edge);
            n = node.parent;
        }
        self.edges.reverse();
        self.vertexes.reverse();
    }
}

impl PathIter for Bfs {
    fn next_path(&mut self, stats: &ExecStats) -> Result<Option<(Vec<u32>, Vec<u32>)>> {
        loop {
            if let Some(n) = self.pending.pop_front() {
                self.load(n);
                return Ok(Some((self.edges.clone(), self.vertexes.clone())));
            }
            let Some(n) = self.queue.pop_front() else {
                self.nodes.clear();
                let Some(&s) = self.seeds.get(self.next_seed) else {
                    return Ok(None);
                };
                self.next_seed += 1;
                if self.rules.vertex_ok(s, 0) {
                    self.nodes.push(Node {
                        parent: NONE,
                        edge: NONE,
                        vertex: s,
                    });
                    self.queue.push_back(0);
                }
                continue;
            };
            self.load(n);
            if !self.rules.can_extend(&self.edges, &self.vertexes) {
                continue;
            }
            for &v in &self.vertexes {
                self.on_path[v as usize] = true;
            }
            let v = self.nodes[n as usize].vertex;
            let start = self.vertexes[0];
            let view = self.rules.graph.view.clone();
            for &e in &view.vertex(v).out_edges {
                let w = view.step(v, e);
                if !self.rules.may_visit(&self.on_path, &self.edges, start, e, w) {
                    continue;
                }
                stats.bump_expansions();
                self.edges.push(e);
                self.vertexes.push(w);
                if self.rules.extend_ok(&self.edges, &self.vertexes) {
                    let id = self.nodes.len() as u32;
                    self.nodes.push(Node {
                        parent: n,
                        edge: e,
                        vertex: w,
                    });
                    self.queue.push_back(id);
                    if self.rules.emit_ok(&self.edges, &self.vertexes) {
                        self.pending.push_back(id);
                    }
                }
                self.edges.pop();
                self.vertexes.pop();
            }
            for &v in &self.vertexes {
                self.on_path[v as usize] = false;
            }
        }
    }
}
