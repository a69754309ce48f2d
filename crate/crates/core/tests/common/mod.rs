#![allow(dead_code)]

use std::cmp::Reverse;
use std::collections::{BinaryHeap, HashMap};

pub mod listings;

use gvsql::gen;
use gvsql::{Database, Value};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// One edge row of a test graph.
#[derive(Debug, Clone, PartialEq)]
pub struct E {
    pub id: i64,
    pub src: i64,
    pub dst: i64,
    pub w: f64,
    pub sel: f64,
    pub label: &'static str,
}

impl E {
    pub fn new(id: i64, src: i64, dst: i64) -> E {
        E {
            id,
            src,
            dst,
            w: 1.0,
            sel: 0.0,
            label: "A",
        }
    }

    pub fn w(mut self, w: f64) -> E {
        self.w = w;
        self
    }
}

/// Database with tables `GV`/`GE` and view `G` over vertexes `0..n` (or
/// the given ids) and `edges`.
pub fn graph_db(vertexes: &[i64], edges: &[E], directed: bool) -> Database {
    let mut db = Database::new();
    gen::create_tables(&mut db, "G").unwrap();
    db.catalog_mut()
        .insert_many("GV", vertexes.iter().map(|&v| vec![Value::Int(v)]).collect())
        .unwrap();
    db.catalog_mut()
        .insert_many(
            "GE",
            edges
                .iter()
                .map(|e| {
                    vec![
                        Value::Int(e.id),
                        Value::Int(e.src),
                        Value::Int(e.dst),
                        Value::Float(e.w),
                        Value::Float(e.sel),
                        Value::from(e.label),
                    ]
                })
                .collect(),
        )
        .unwrap();
    db.execute(&gen::view_sql("G", directed)).unwrap();
    db
}

/// G1: vertexes 1..=4, edges e1 1->2, e2 2->3, e3 1->3, e4 3->1.
pub fn g1_edges() -> Vec<E> {
    vec![E::new(1, 1, 2), E::new(2, 2, 3), E::new(3, 1, 3), E::new(4, 3, 1)]
}

pub fn g1(directed: bool) -> Database {
    graph_db(&[1, 2, 3, 4], &g1_edges(), directed)
}

/// Random graph on vertexes `0..n` with `m` edges (self-loops allowed when
/// `loops`), attributes drawn uniformly.
pub fn random_edges(rng: &mut ChaCha8Rng, n: usize, m: usize, loops: bool) -> Vec<E> {
    let labels = ["A", "B", "C"];
    let mut out = Vec::with_capacity(m);
    while out.len() < m {
        let a = rng.gen_range(0..n as i64);
        let b = rng.gen_range(0..n as i64);
        if a == b && !loops {
            continue;
        }
        out.push(E {
            id: out.len() as i64 + 100,
            src: a,
            dst: b,
            w: rng.gen_range(0..=9) as f64,
            sel: rng.gen::<f64>(),
            label: labels[rng.gen_range(0..3)],
        });
    }
    out
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn ids(n: usize) -> Vec<i64> {
    (0..n as i64).collect()
}

/// Id-level path parsed from a rendered path string `1 -e3-> 3 -e4-> 1`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct IdPath {
    pub vertexes: Vec<i64>,
    pub edges: Vec<i64>,
}

pub fn parse_path_string(s: &str) -> IdPath {
    let mut p = IdPath {
        vertexes: Vec::new(),
        edges: Vec::new(),
    };
    for tok in s.split_whitespace() {
        if let Some(e) = tok.strip_prefix("-e").and_then(|t| t.strip_suffix("->")) {
            p.edges.push(e.parse().unwrap());
        } else {
            p.vertexes.push(tok.parse().unwrap());
        }
    }
    p
}

/// Sorted id-level paths from a query whose first column is a path string.
pub fn query_paths(db: &Database, sql: &str, opts: &gvsql::PlannerOptions) -> Vec<IdPath> {
    let r = db.query_with(sql, opts).unwrap_or_else(|e| panic!("{sql}: {e}"));
    let mut out: Vec<IdPath> = r
        .rows
        .iter()
        .map(|row| match &row[0] {
            Value::Text(s) => parse_path_string(s),
            other => panic!("not a path string: {other:?}"),
        })
        .collect();
    out.sort();
    out
}

/// Textbook Dijkstra over an adjacency list built directly from the rows.
pub fn dijkstra(edges: &[E], directed: bool, src: i64) -> HashMap<i64, f64> {
    let mut adj: HashMap<i64, Vec<(i64, f64)>> = HashMap::new();
    for e in edges {
        adj.entry(e.src).or_default().push((e.dst, e.w));
        if !directed {
            adj.entry(e.dst).or_default().push((e.src, e.w));
        }
    }
    let mut dist: HashMap<i64, f64> = HashMap::new();
    let mut heap = BinaryHeap::new();
    // Weights are small integers here; scale to keep the heap on integers.
    heap.push(Reverse((0i64, src)));
    while let Some(Reverse((d, v))) = heap.pop() {
        if dist.contains_key(&v) {
            continue;
        }
        dist.insert(v, d as f64 / 1000.0);
        for &(w, c) in adj.get(&v).into_iter().flatten() {
            if !dist.contains_key(&w) {
                heap.push(Reverse((d + (c * 1000.0).round() as i64, w)));
            }
        }
    }
    dist
}

/// Closed 3-edge paths `a -A-> b -B-> c -C-> a` over distinct vertexes,
/// counted by trying every vertex triple.
pub fn triangle_oracle(n: usize, edges: &[E], sel: f64) -> u64 {
    let mut count = vec![[0u64; 3]; n * n];
    for e in edges.iter().filter(|e| e.sel < sel) {
        let l = match e.label {
            "A" => 0,
            "B" => 1,
            _ => 2,
        };
        count[e.src as usize * n + e.dst as usize][l] += 1;
    }
    let mut total = 0;
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                if a == b || b == c || a == c {
                    continue;
                }
                total += count[a * n + b][0] * count[b * n + c][1] * count[c * n + a][2];
            }
        }
    }
    total
}

/// A random path query over `G` plus the same constraints as a plain
/// predicate over id-level paths.
#[derive(Debug, Clone)]
pub struct PathCase {
    pub lo: u32,
    pub hi: Option<u32>,
    pub start: Option<i64>,
    pub end: Option<i64>,
    pub max_sel: Option<f64>,
    pub first_label: Option<&'static str>,
    pub via: Option<i64>,
}

impl PathCase {
    pub fn random(rng: &mut ChaCha8Rng, n: usize, m: usize) -> PathCase {
        let lo = rng.gen_range(1..=3);
        let hi = if m <= 14 && rng.gen_bool(0.3) {
            None
        } else {
            Some(lo + rng.gen_range(0..=4))
        };
        PathCase {
            lo,
            hi,
            start: rng.gen_bool(0.5).then(|| rng.gen_range(0..n as i64)),
            end: rng.gen_bool(0.3).then(|| rng.gen_range(0..n as i64)),
            max_sel: rng.gen_bool(0.5).then(|| rng.gen_range(0.3..1.0)),
            first_label: rng.gen_bool(0.3).then(|| ["A", "B", "C"][rng.gen_range(0..3)]),
            via: rng.gen_bool(0.2).then(|| rng.gen_range(0..n as i64)),
        }
    }

    pub fn sql(&self) -> String {
        let mut w = vec![format!("PS.Length >= {}", self.lo)];
        if let Some(h) = self.hi {
            w.push(format!("PS.Length <= {h}"));
        }
        if let Some(s) = self.start {
            w.push(format!("PS.StartVertex.Id = {s}"));
        }
        if let Some(t) = self.end {
            w.push(format!("PS.EndVertex.Id = {t}"));
        }
        if let Some(x) = self.max_sel {
            w.push(format!("PS.Edges.Sel < {x}"));
        }
        if let Some(l) = self.first_label {
            w.push(format!("PS.Edges[0].Label = '{l}'"));
        }
        if let Some(v) = self.via {
            w.push(format!("PS.Vertexes[ANY].Id = {v}"));
        }
        format!("SELECT PS.PathString FROM G.Paths PS WHERE {}", w.join(" AND "))
    }

    pub fn accepts(&self, p: &IdPath, edges: &HashMap<i64, &E>) -> bool {
        let len = p.edges.len() as u32;
        len >= self.lo
            && self.hi.is_none_or(|h| len <= h)
            && self.start.is_none_or(|s| p.vertexes[0] == s)
            && self.end.is_none_or(|t| *p.vertexes.last().unwrap() == t)
            && self.max_sel.is_none_or(|x| p.edges.iter().all(|e| edges[e].sel < x))
            && self.first_label.is_none_or(|l| edges[&p.edges[0]].label == l)
            && self.via.is_none_or(|v| p.vertexes.contains(&v))
    }
}

/// Every path the brute-force enumerator finds for `case`, id-level, sorted.
pub fn brute_force(db: &Database, edges: &[E], case: &PathCase) -> Vec<IdPath> {
    let g = db.catalog().graph("G").unwrap();
    let seeds = case.start.map(|s| vec![s]);
    let by_id: HashMap<i64, &E> = edges.iter().map(|e| (e.id, e)).collect();
    let mut out: Vec<IdPath> = gvsql::baseline::brute_force_paths(&g, seeds.as_deref(), case.lo, case.hi)
        .unwrap()
        .into_iter()
        .map(|(es, vs)| IdPath {
            vertexes: vs.iter().map(|&v| g.view.vertex(v).id).collect(),
            edges: es.iter().map(|&e| g.view.edge(e).id).collect(),
        })
        .filter(|p| case.accepts(p, &by_id))
        .collect();
    out.sort();
    out
}

pub fn options(traversal: gvsql::planner::Traversal, pushdown: bool) -> gvsql::PlannerOptions {
    gvsql::PlannerOptions {
        pushdown,
        force_traversal: Some(traversal),
        ..gvsql::PlannerOptions::default()
    }
}

/// One random traversal case: DFS, BFS and brute force must agree.
pub fn traversal_case(seed: u64) -> Result<(), String> {
    use gvsql::planner::Traversal;
    let mut r = rng(seed);
    let n = r.gen_range(1..=12);
    let m = r.gen_range(0..=30);
    let directed = r.gen_bool(0.5);
    let edges = random_edges(&mut r, n, m, true);
    let db = graph_db(&ids(n), &edges, directed);
    let case = PathCase::random(&mut r, n, m);
    let sql = case.sql();
    let expect = brute_force(&db, &edges, &case);
    for (t, name) in [(Traversal::Dfs, "DFS"), (Traversal::Bfs, "BFS")] {
        let got = query_paths(&db, &sql, &options(t, true));
        if got != expect {
            return Err(format!(
                "seed {seed} ({}directed, n={n}, m={m}) {name}: {sql}\n got {} paths, expected {}",
                if directed { "" } else { "un" },
                got.len(),
                expect.len()
            ));
        }
    }
    Ok(())
}

/// SSSP through the engine, the set-based baseline and a textbook Dijkstra
/// on one random weighted graph.
pub fn sssp_case(seed: u64) -> Result<(), String> {
    let mut r = rng(seed);
    let n = r.gen_range(1..=200);
    let m = r.gen_range(0..=n * 4);
    let directed = r.gen_bool(0.5);
    let edges = random_edges(&mut r, n, m, true);
    let db = graph_db(&ids(n), &edges, directed);
    let src = r.gen_range(0..n as i64);
    let expect = dijkstra(&edges, directed, src);

    let sql = format!(
        "SELECT PS.EndVertex.Id, SUM(PS.Edges.W) FROM G.Paths PS HINT(SHORTESTPATH(W)) WHERE PS.StartVertex.Id = {src}"
    );
    let res = db.query(&sql).map_err(|e| e.to_string())?;
    let mut engine: HashMap<i64, f64> = res
        .rows
        .iter()
        .map(|row| (row[0].as_i64().unwrap(), row[1].as_f64().unwrap_or(0.0)))
        .collect();
    engine.insert(src, 0.0);
    let g = db.catalog().graph("G").unwrap();
    let set = gvsql::baseline::set_sssp(&g, src, gen::col::W).map_err(|e| e.to_string())?;
    if engine != expect {
        return Err(format!(
            "seed {seed}: engine SSSP differs from Dijkstra ({} vs {} vertexes)",
            engine.len(),
            expect.len()
        ));
    }
    if set != expect {
        return Err(format!("seed {seed}: set_sssp differs from Dijkstra"));
    }
    // Distances come out in non-decreasing order.
    let costs: Vec<f64> = res.rows.iter().map(|r| r[1].as_f64().unwrap_or(0.0)).collect();
    if costs.windows(2).any(|w| w[0] > w[1]) {
        return Err(format!("seed {seed}: SSSP rows are not in distance order"));
    }
    Ok(())
}

/// Top-k paths between two vertexes against a ranking of every simple path.
pub fn topk_case(seed: u64) -> Result<(), String> {
    let mut r = rng(seed);
    let n = r.gen_range(2..=12);
    let m = r.gen_range(1..=24);
    let directed = r.gen_bool(0.5);
    let edges = random_edges(&mut r, n, m, false);
    let db = graph_db(&ids(n), &edges, directed);
    let s = r.gen_range(0..n as i64);
    let mut t = r.gen_range(0..n as i64 - 1);
    if t >= s {
        t += 1;
    }
    let k = r.gen_range(1..=6);
    let by_id: HashMap<i64, &E> = edges.iter().map(|e| (e.id, e)).collect();
    let case = PathCase {
        lo: 1,
        hi: None,
        start: Some(s),
        end: Some(t),
        max_sel: None,
        first_label: None,
        via: None,
    };
    let cost = |p: &IdPath| p.edges.iter().map(|e| by_id[e].w).sum::<f64>();
    let mut ranking: Vec<f64> = brute_force(&db, &edges, &case).iter().map(cost).collect();
    ranking.sort_by(f64::total_cmp);
    ranking.truncate(k);

    let sql = format!(
        "SELECT TOP {k} PS.PathString, SUM(PS.Edges.W) FROM G.Paths PS HINT(SHORTESTPATH(W)) \
         WHERE PS.StartVertex.Id = {s} AND PS.EndVertex.Id = {t}"
    );
    let res = db.query(&sql).map_err(|e| e.to_string())?;
    let mut got = Vec::new();
    let mut seen = std::collections::HashSet::new();
    for row in &res.rows {
        let Value::Text(ps) = &row[0] else {
            return Err("path string expected".into());
        };
        let p = parse_path_string(ps);
        if !case.accepts(&p, &by_id) || !seen.insert(p.clone()) {
            return Err(format!("seed {seed}: bad or repeated path {ps}"));
        }
        let mut vs = p.vertexes.clone();
        vs.sort();
        vs.dedup();
        if vs.len() != p.vertexes.len() {
            return Err(format!("seed {seed}: path {ps} is not simple"));
        }
        let c = row[1].as_f64().unwrap();
        if c != cost(&p) {
            return Err(format!("seed {seed}: reported cost {c} for {ps}"));
        }
        got.push(c);
    }
    if got != ranking {
        return Err(format!("seed {seed}: top-{k} costs {got:?}, brute force {ranking:?}"));
    }
    Ok(())
}

/// Applies `mutations` random SQL mutations to a graph with two views (one
/// filtered and directed, one unfiltered and undirected) over the same
/// tables, comparing each view with a fresh build after every statement.
/// Returns the number of statements that succeeded.
pub fn maintenance_case(seed: u64, mutations: usize) -> Result<usize, String> {
    use gvsql::graph::GraphView;
    let mut r = rng(seed);
    let n = 30i64;
    let edges = random_edges(&mut r, n as usize, 60, true);
    let mut db = graph_db(&ids(n as usize), &edges, true);
    db.execute(
        "CREATE DIRECTED GRAPH VIEW F VERTEXES (ID = Id) FROM GV WHERE Id < 40 \
         EDGES (ID = Id, FROM = Src, TO = Dst, Sel = Sel) FROM GE WHERE Sel < 0.7",
    )
    .unwrap();
    db.execute(
        "CREATE UNDIRECTED GRAPH VIEW U VERTEXES (ID = Id) FROM GV EDGES (ID = Id, FROM = Src, TO = Dst) FROM GE",
    )
    .unwrap();
    let mut ok = 0;
    for step in 0..mutations {
        let x = r.gen_range(0..n * 2);
        let y = r.gen_range(0..n * 2);
        let eid = r.gen_range(90..200);
        let sel: f64 = r.gen();
        let sql = match r.gen_range(0..11) {
            0 => format!("INSERT INTO GV VALUES ({x})"),
            1 => format!("INSERT INTO GE VALUES ({eid}, {x}, {y}, 1.0, {sel}, 'A')"),
            2 => format!("DELETE FROM GV WHERE Id = {x}"),
            3 => format!("DELETE FROM GE WHERE Id = {eid}"),
            4 => format!("UPDATE GE SET Dst = {y} WHERE Id = {eid}"),
            5 => format!("UPDATE GV SET Id = {y} WHERE Id = {x}"),
            6 => format!("UPDATE GE SET Sel = {sel} WHERE Id = {eid}"),
            7 => format!("UPDATE GE SET Label = 'B', W = 2.0 WHERE Id = {eid}"),
            8 => format!("UPDATE GE SET Id = {} WHERE Id = {eid}", r.gen_range(90..200)),
            9 => format!("DELETE FROM GE WHERE Sel < {}", sel * 0.05),
            _ => format!("UPDATE GE SET Src = {x}, Dst = {y} WHERE Sel > {}", 1.0 - sel * 0.05),
        };
        if db.execute(&sql).is_ok() {
            ok += 1;
        }
        let cat = db.catalog();
        for name in ["G", "F", "U"] {
            let view = cat.view(name).unwrap();
            let vt = cat.table(&view.spec().vertex.table).unwrap();
            let et = cat.table(&view.spec().edge.table).unwrap();
            let fresh = GraphView::build(view.spec().clone(), vt, et).map_err(|e| e.to_string())?;
            if view.snapshot() != fresh.snapshot() {
                return Err(format!("seed {seed}, step {step}: view {name} diverged after `{sql}`"));
            }
        }
    }
    Ok(ok)
}

/// Triangle counts from the engine query and the join baseline against
/// the vertex-triple oracle, on one random graph at each selectivity.
pub fn triangle_case(seed: u64, sels: &[f64]) -> Result<(), String> {
    let mut r = rng(seed);
    let n = r.gen_range(3..=100);
    let m = r.gen_range(n..=n * 8);
    let edges = random_edges(&mut r, n, m, false);
    let db = graph_db(&ids(n), &edges, true);
    let g = db.catalog().graph("G").unwrap();
    for &sel in sels {
        let expect = triangle_oracle(n, &edges, sel);
        let engine = db
            .query(&gvsql::bench::triangle_sql(sel))
            .map_err(|e| e.to_string())?
            .rows[0][0]
            .as_i64()
            .unwrap() as u64;
        let filter = gvsql::baseline::EdgeFilter {
            column: gen::col::SEL,
            op: gvsql::sql::ast::CmpOp::Lt,
            value: Value::Float(sel),
        };
        let join = gvsql::baseline::join_triangle_count(&g, gen::col::LABEL, ["A", "B", "C"], Some(&filter))
            .map_err(|e| e.to_string())?;
        if engine != expect || join != expect {
            return Err(format!(
                "seed {seed}, sel {sel}: engine {engine}, join {join}, oracle {expect}"
            ));
        }
    }
    Ok(())
}

/// Join reachability against PathScan + LIMIT 1 for every pair of a random
/// graph with at most 50 vertexes.
pub fn reach_agreement_case(seed: u64) -> Result<usize, String> {
    use gvsql::baseline::{join_reachability, ReachOptions};
    let mut r = rng(seed);
    let n = r.gen_range(2..=50);
    let m = r.gen_range(0..=n * 2);
    let directed = r.gen_bool(0.5);
    let edges = random_edges(&mut r, n, m, true);
    let db = graph_db(&ids(n), &edges, directed);
    let g = db.catalog().graph("G").unwrap();
    let depth = r.gen_range(1..=6);
    let opts = options(gvsql::planner::Traversal::Bfs, true);
    let mut reachable = 0;
    for _ in 0..40 {
        let s = r.gen_range(0..n as i64);
        let t = r.gen_range(0..n as i64);
        if s == t {
            continue;
        }
        let join = join_reachability(
            &g,
            s,
            t,
            &ReachOptions {
                max_depth: depth,
                dedup: true,
                filter: None,
            },
        )
        .map_err(|e| e.to_string())?;
        let sql = format!(
            "SELECT PS.Length FROM G.Paths PS WHERE PS.StartVertex.Id = {s} AND PS.EndVertex.Id = {t} AND PS.Length <= {depth} LIMIT 1"
        );
        let rows = db.query_with(&sql, &opts).map_err(|e| e.to_string())?.rows;
        let scan = rows.first().map(|row| row[0].as_i64().unwrap() as u32);
        if join.depth != scan {
            return Err(format!(
                "seed {seed}: {s}->{t} within {depth}: join {:?}, path scan {scan:?}",
                join.depth
            ));
        }
        reachable += scan.is_some() as usize;
    }
    Ok(reachable)
}

/// The same random path query under every combination of planner switches
/// and both traversals; all answers must be equal.
pub fn pushdown_case(seed: u64) -> Result<(), String> {
    use gvsql::planner::Traversal;
    let mut r = rng(seed);
    let n = r.gen_range(1..=10);
    let m = r.gen_range(0..=22);
    let directed = r.gen_bool(0.5);
    let edges = random_edges(&mut r, n, m, true);
    let db = graph_db(&ids(n), &edges, directed);
    let case = PathCase::random(&mut r, n, m);
    let mut sql = case.sql();
    match r.gen_range(0..4) {
        0 => sql.push_str(&format!(" AND SUM(PS.Edges.W) <= {}", r.gen_range(0..20))),
        1 => sql.push_str(&format!(" AND MAX(PS.Edges.W) < {}", r.gen_range(1..10))),
        2 => sql.push_str(&format!(" AND MIN(PS.Edges.Sel) >= {}", r.gen::<f64>() * 0.5)),
        _ => sql.push_str(&format!(
            " AND PS.Edges[1..2].Label <> '{}'",
            ["A", "B", "C"][r.gen_range(0..3)]
        )),
    }
    let reference = query_paths(&db, &sql, &gvsql::PlannerOptions::naive());
    for pushdown in [false, true] {
        for infer_length in [false, true] {
            for prune_aggregates in [false, true] {
                for t in [Traversal::Dfs, Traversal::Bfs] {
                    let opts = gvsql::PlannerOptions {
                        pushdown,
                        infer_length,
                        prune_aggregates,
                        force_traversal: Some(t),
                    };
                    if query_paths(&db, &sql, &opts) != reference {
                        return Err(format!("seed {seed}: {sql}\n differs under {opts:?}"));
                    }
                }
            }
        }
    }
    Ok(())
}
