//! Weighted shortest paths: lazy Dijkstra from one source, and lazy Yen
//! k-shortest simple paths between two vertexes. Edges failing the
//! all-edges atoms are removed from the graph first.

use std::cmp::{Ordering, Reverse};
use std::collections::{BTreeMap, BinaryHeap, HashSet};

use super::{ExecStats, PathIter, Rules};
use crate::error::{Error, Result};
use crate::graph::EdgeAttr;
use crate::value::Value;

#[derive(Debug, Clone, Copy, PartialEq)]
struct Cost(f64);

impl Eq for Cost {}

impl PartialOrd for Cost {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Cost {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.total_cmp(&other.0)
    }
}

fn weight(rules: &Rules, attr: EdgeAttr, e: u32) -> Result<f64> {
    let id = rules.graph.view.edge(e).id;
    let w = match rules.graph.edge_value(e, attr).as_ref() {
        Value::Null => return Err(Error::exec(format!("edge {id} has a null shortest-path weight"))),
        v => v
            .as_f64()
            .ok_or_else(|| Error::exec(format!("edge {id} has a non-numeric weight")))?,
    };
    if w.is_nan() {
        return Err(Error::exec(format!("edge {id} has a NaN weight")));
    }
    if w < 0.0 {
        return Err(Error::NegativeWeight { edge: id });
    }
    Ok(w)
}

/// (distance, sequence, vertex, edge used, predecessor)
type Entry = (Cost, u64, u32, u32, u32);

/// Settles vertexes in distance order from the source and emits the path to
/// each one except the source itself.
pub struct Dijkstra {
    rules: Rules,
    attr: EdgeAttr,
    heap: BinaryHeap<Reverse<Entry>>,
    seq: u64,
    parent: Vec<Option<(u32, u32)>>,
    settled: Vec<bool>,
    source: u32,
}

const NONE: u32 = u32::MAX;

impl Dijkstra {
    pub fn new(rules: Rules, attr: EdgeAttr, source: u32) -> Self {
        let n = rules.graph.view.vertex_slots();
        let mut heap = BinaryHeap::new();
        heap.push(Reverse((Cost(0.0), 0, source, NONE, NONE)));
        Dijkstra {
            rules,
            attr,
            heap,
            seq: 1,
            parent: vec![None; n],
            settled: vec![false; n],
            source,
        }
    }
}

impl PathIter for Dijkstra {
    fn next_path(&mut self, stats: &ExecStats) -> Result<Option<(Vec<u32>, Vec<u32>)>> {
        while let Some(Reverse((Cost(d), _, v, via, prev))) = self.heap.pop() {
            if self.settled[v as usize] {
                continue;
            }
            self.settled[v as usize] = true;
            if via != NONE {
                self.parent[v as usize] = Some((via, prev));
            }
            let view = self.rules.graph.view.clone();
            for &e in &view.vertex(v).out_edges {
                let w = view.step(v, e);
                if w == v || self.settled[w as usize] || !self.rules.edge_allowed(e, v, w) {
                    continue;
                }
                let c = weight(&self.rules, self.attr, e)?;
                stats.bump_expansions();
                self.heap.push(Reverse((Cost(d + c), self.seq, w, e, v)));
                self.seq += 1;
            }
            if v == self.source {
                continue;
            }
            let (mut edges, mut vertexes) = (Vec::new(), vec![v]);
            let mut cur = v;
            while let Some((e, p)) = self.parent[cur as usize] {
                edges.push(e);
                vertexes.push(p);
                cur = p;
            }
            edges.reverse();
            vertexes.reverse();
            if self.rules.emit_ok(&edges, &vertexes) {
                return Ok(Some((edges, vertexes)));
            }
        }
        Ok(None)
    }
}

type Path = (Vec<u32>, Vec<u32>);

/// Point-to-point Dijkstra avoiding banned edges and vertexes.
fn shortest(
    rules: &Rules,
    attr: EdgeAttr,
    from: u32,
    to: u32,
    banned_edges: &HashSet<u32>,
    banned_vertexes: &HashSet<u32>,
    stats: &ExecStats,
) -> Result<Option<(f64, Path)>> {
    let view = &rules.graph.view;
    let n = view.vertex_slots();
    let mut settled = vec![false; n];
    let mut parent: Vec<Option<(u32, u32)>> = vec![None; n];
    let mut heap = BinaryHeap::new();
    let mut seq = 0u64;
    heap.push(Reverse((Cost(0.0), seq, from, NONE, NONE)));
    while let Some(Reverse((Cost(d), _, v, via, prev))) = heap.pop() {
        if settled[v as usize] {
            continue;
        }
        settled[v as usize] = true;
        if via != NONE {
            parent[v as usize] = Some((via, prev));
        }
        if v == to {
            let (mut edges, mut vertexes) = (Vec::new(), vec![v]);
            let mut cur = v;
            while let Some((e, p)) = parent[cur as usize] {
                edges.push(e);
                vertexes.push(p);
                cur = p;
            }
            edges.reverse();
            vertexes.reverse();
            return Ok(Some((d, (edges, vertexes))));
        }
        for &e in &view.vertex(v).out_edges {
            let w = view.step(v, e);
            if w == v
                || settled[w as usize]
                || banned_edges.contains(&e)
                || banned_vertexes.contains(&w)
                || !rules.edge_allowed(e, v, w)
            {
                continue;
            }
            let c = weight(rules, attr, e)?;
            stats.bump_expansions();
            seq += 1;
            heap.push(Reverse((Cost(d + c), seq, w, e, v)));
        }
    }
    Ok(None)
}

/// Simple paths from `source` to `target` in non-decreasing cost order.
pub struct Yen {
    rules: Rules,
    attr: EdgeAttr,
    source: u32,
    target: u32,
    found: Vec<Path>,
    /// (cost, sequence) -> path
    candidates: BTreeMap<(Cost, u64), Path>,
    seen: HashSet<Vec<u32>>,
    seq: u64,
    started: bool,
}

impl Yen {
    pub fn new(rules: Rules, attr: EdgeAttr, source: u32, target: u32) -> Self {
        Yen {
            rules,
            attr,
            source,
            target,
            found: Vec::new(),
            candidates: BTreeMap::new(),
            seen: HashSet::new(),
            seq: 0,
            started: false,
        }
    }

    fn cost(&self, edges: &[u32]) -> Result<f64> {
        edges.iter().map(|&e| weight(&self.rules, self.attr, e)).sum()
    }

    fn push_candidate(&mut self, cost: f64, p: Path) {
        if self.seen.insert(p.0.clone()) {
            self.candidates.insert((Cost(cost), self.seq), p);
            self.seq += 1;
        }
    }

    /// Adds the deviations of the last accepted path to the candidates.
    fn spur(&mut self, stats: &ExecStats) -> Result<()> {
        let (last_e, last_v) = self.found.last().unwrap().clone();
        for i in 0..last_e.len() {
            let root_e = &last_e[..i];
            let spur = last_v[i];
            let banned_edges: HashSet<u32> = self
                .found
                .iter()
                .filter(|(e, _)| e.len() > i && &e[..i] == root_e)
                .map(|(e, _)| e[i])
                .collect();
            let banned_vertexes: HashSet<u32> = last_v[..i].iter().copied().collect();
            let Some((c, (se, sv))) = shortest(
                &self.rules,
                self.attr,
                spur,
                self.target,
                &banned_edges,
                &banned_vertexes,
                stats,
            )?
            else {
                continue;
            };
            let mut edges = root_e.to_vec();
            edges.extend(se);
            let mut vertexes = last_v[..i].to_vec();
            vertexes.extend(sv);
            let total = self.cost(root_e)? + c;
            self.push_candidate(total, (edges, vertexes));
        }
        Ok(())
    }
}

impl PathIter for Yen {
    fn next_path(&mut self, stats: &ExecStats) -> Result<Option<(Vec<u32>, Vec<u32>)>> {
        if self.source == self.target {
            return Ok(None);
        }
        loop {
            if !self.started {
                self.started = true;
                let none = HashSet::new();
                if let Some((c, p)) = shortest(&self.rules, self.attr, self.source, self.target, &none, &none, stats)? {
                    self.push_candidate(c, p);
                }
            } else if !self.found.is_empty() {
                self.spur(stats)?;
            }
            let Some((_, p)) = self.candidates.pop_first() else {
                return Ok(None);
            };
            self.found.push(p.clone());
            if self.rules.emit_ok(&p.0, &p.1) {
                return Ok(Some(p));
            }
        }
    }
}
