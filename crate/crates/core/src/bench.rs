//! Benchmark driver: generates a graph from a seed, runs one workload under
//! several strategies and reports mean warm timings with result checksums.
//!
//! A spec is a comma-separated list of `key=value` pairs, for example
//! `kind=reach,graph=random,n=10000,m=100000,seed=7,depth=20,queries=100`.
//!
//! | key        | meaning                                         | default              |
//! |------------|-------------------------------------------------|----------------------|
//! | kind       | reach, reach-filtered, triangle, sssp, topk     | required             |
//! | graph      | chain, grid, random                             | random               |
//! | n, m       | vertexes and edges (grid: `n` is the side)      | 1000, 10*n           |
//! | seed       | generator seed                                  | 7                    |
//! | directed   | true, false                                     | true                 |
//! | depth      | hop bound for reachability                      | 20                   |
//! | queries    | query pairs or sources                          | 100 (sssp, topk: 10) |
//! | sel        | selectivity thresholds, `:`-separated           | 0.05:0.1:0.25:0.5    |
//! | k          | paths per topk query                            | 3                    |
//! | reps       | repetitions; the first is discarded when > 1    | 5                    |
//! | strategy   | `:`-separated subset of the kind's strategies   | all                  |
//! | dedup      | visited set in the join strategy                | true                 |
//!
//! `mean_ms` is the mean wall time of one repetition of the whole workload.

use std::collections::{BTreeMap, HashMap};
use std::time::Instant;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::baseline::{self, EdgeFilter, ReachOptions};
use crate::db::Database;
use crate::error::{Error, Result};
use crate::gen::{self, col, Family};
use crate::planner::{PlannerOptions, QueryPlan, Traversal};
use crate::sql::ast::CmpOp;
use crate::value::Value;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Kind {
    Reach,
    ReachFiltered,
    Triangle,
    Sssp,
    Topk,
}

impl Kind {
    pub fn name(self) -> &'static str {
        match self {
            Kind::Reach => "reach",
            Kind::ReachFiltered => "reach-filtered",
            Kind::Triangle => "triangle",
            Kind::Sssp => "sssp",
            Kind::Topk => "topk",
        }
    }

    fn parse(s: &str) -> Option<Kind> {
        [Kind::Reach, Kind::ReachFiltered, Kind::Triangle, Kind::Sssp, Kind::Topk]
            .into_iter()
            .find(|k| k.name() == s)
    }

    /// Strategies that can answer this kind.
    pub fn strategies(self) -> &'static [Strategy] {
        match self {
            Kind::Reach | Kind::ReachFiltered | Kind::Triangle => &[Strategy::PathScan, Strategy::Join],
            Kind::Sssp => &[Strategy::PathScan, Strategy::SetSssp],
            Kind::Topk => &[Strategy::PathScan],
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Strategy {
    /// Path queries over the graph view topology.
    PathScan,
    /// Iterated joins over the edge table.
    Join,
    /// Set-at-a-time shortest-path relaxation over the edge table.
    SetSssp,
}

impl Strategy {
    pub fn name(self) -> &'static str {
        match self {
            Strategy::PathScan => "pathscan",
            Strategy::Join => "join",
            Strategy::SetSssp => "setsssp",
        }
    }

    fn parse(s: &str) -> Option<Strategy> {
        [Strategy::PathScan, Strategy::Join, Strategy::SetSssp]
            .into_iter()
            .find(|k| k.name() == s)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct BenchSpec {
    pub kind: Kind,
    pub family: Family,
    pub seed: u64,
    pub directed: bool,
    pub depth: u32,
    pub queries: usize,
    pub sel: Vec<f64>,
    pub k: usize,
    pub reps: usize,
    pub strategies: Vec<Strategy>,
    pub dedup: bool,
}

impl BenchSpec {
    pub fn new(kind: Kind, family: Family, seed: u64) -> Self {
        BenchSpec {
            kind,
            family,
            seed,
            directed: true,
            depth: 20,
            queries: match kind {
                Kind::Sssp | Kind::Topk => 10,
                _ => 100,
            },
            sel: vec![0.05, 0.1, 0.25, 0.5],
            k: 3,
            reps: 5,
            strategies: kind.strategies().to_vec(),
            dedup: true,
        }
    }

    pub fn parse(text: &str) -> Result<BenchSpec> {
        let usage = |m: String| Error::Usage(format!("bench spec: {m}"));
        let mut kv: BTreeMap<String, String> = BTreeMap::new();
        for part in text.split(',').map(str::trim).filter(|p| !p.is_empty()) {
            let (k, v) = part
                .split_once('=')
                .ok_or_else(|| usage(format!("expected key=value, got '{part}'")))?;
            if kv.insert(k.trim().to_ascii_lowercase(), v.trim().to_string()).is_some() {
                return Err(usage(format!("'{k}' given twice")));
            }
        }
        let mut take = |k: &str| kv.remove(k);
        fn num<T: std::str::FromStr>(k: &str, v: Option<String>, default: T) -> Result<T> {
            match v {
                None => Ok(default),
                Some(v) => v
                    .parse()
                    .map_err(|_| Error::Usage(format!("bench spec: bad value '{v}' for {k}"))),
            }
        }
        let kind_s = take("kind").ok_or_else(|| usage("missing kind".into()))?;
        let kind = Kind::parse(&kind_s).ok_or_else(|| usage(format!("unknown kind '{kind_s}'")))?;
        let n: usize = num("n", take("n"), 1000)?;
        let m: usize = num("m", take("m"), n * 10)?;
        let family = match take("graph").as_deref().unwrap_or("random") {
            "random" => Family::Random { n, m },
            "chain" => Family::Chain { n },
            "grid" => Family::Grid { side: n },
            other => return Err(usage(format!("unknown graph family '{other}'"))),
        };
        let seed = num("seed", take("seed"), 7)?;
        let mut spec = BenchSpec::new(kind, family, seed);
        spec.directed = num("directed", take("directed"), true)?;
        spec.depth = num("depth", take("depth"), spec.depth)?;
        spec.queries = num("queries", take("queries"), spec.queries)?;
        spec.k = num("k", take("k"), spec.k)?;
        spec.reps = num("reps", take("reps"), spec.reps)?;
        spec.dedup = num("dedup", take("dedup"), true)?;
        if let Some(s) = take("sel") {
            spec.sel = s
                .split(':')
                .map(|x| match x.parse::<f64>() {
                    Ok(v) if (0.0..=1.0).contains(&v) => Ok(v),
                    _ => Err(usage(format!("bad selectivity '{x}'"))),
                })
                .collect::<Result<_>>()?;
        }
        if let Some(s) = take("strategy") {
            spec.strategies = s
                .split(':')
                .map(|x| {
                    Strategy::parse(x)
                        .filter(|st| kind.strategies().contains(st))
                        .ok_or_else(|| usage(format!("strategy '{x}' does not apply to {}", kind.name())))
                })
                .collect::<Result<_>>()?;
        }
        if let Some(k) = kv.keys().next() {
            return Err(usage(format!("unknown key '{k}'")));
        }
        if spec.reps == 0 || spec.sel.is_empty() || spec.strategies.is_empty() {
            return Err(usage("reps, sel and strategy must be non-empty".into()));
        }
        Ok(spec)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ReportRow {
    pub strategy: Strategy,
    pub kind: Kind,
    pub param: String,
    pub mean_ms: f64,
    pub checksum: String,
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct Report {
    pub rows: Vec<ReportRow>,
}

impl Report {
    pub fn to_csv(&self) -> String {
        self.render(true)
    }

    /// The report without the timing column.
    pub fn to_csv_untimed(&self) -> String {
        self.render(false)
    }

    fn render(&self, timed: bool) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        let mut header = vec!["strategy", "kind", "param", "mean_ms", "checksum"];
        if !timed {
            header.remove(3);
        }
        w.write_record(&header).expect("write to memory");
        for r in &self.rows {
            let mut rec = vec![
                r.strategy.name().to_string(),
                r.kind.name().to_string(),
                r.param.clone(),
                format!("{:.3}", r.mean_ms),
                r.checksum.clone(),
            ];
            if !timed {
                rec.remove(3);
            }
            w.write_record(&rec).expect("write to memory");
        }
        String::from_utf8(w.into_inner().expect("flush to memory")).expect("utf-8 output")
    }

    /// First workload whose strategies disagree.
    pub fn mismatch(&self) -> Option<String> {
        let mut by: BTreeMap<(&str, &str), Vec<&ReportRow>> = BTreeMap::new();
        for r in &self.rows {
            by.entry((r.kind.name(), &r.param)).or_default().push(r);
        }
        by.into_iter().find_map(|((kind, param), rows)| {
            let first = &rows[0].checksum;
            rows.iter().any(|r| &r.checksum != first).then(|| {
                let parts: Vec<String> = rows
                    .iter()
                    .map(|r| format!("{}={}", r.strategy.name(), r.checksum))
                    .collect();
                format!("{kind} {param}: {}", parts.join(", "))
            })
        })
    }

    /// Mean time of `strategy` on the workload with `param`.
    pub fn mean_ms(&self, strategy: Strategy, param: &str) -> Option<f64> {
        self.rows
            .iter()
            .find(|r| r.strategy == strategy && r.param == param)
            .map(|r| r.mean_ms)
    }
}

const GRAPH: &str = "G";

/// Builds the spec's graph in a fresh database.
pub fn build(spec: &BenchSpec) -> Result<Database> {
    let mut db = Database::new();
    gen::generate(&mut db, GRAPH, spec.family, spec.seed, spec.directed)?;
    Ok(db)
}

pub fn run(spec: &BenchSpec) -> Result<Report> {
    let db = build(spec)?;
    run_on(&db, spec)
}

/// Runs the workload on a database built by [`build`].
pub fn run_on(db: &Database, spec: &BenchSpec) -> Result<Report> {
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed ^ 0x05ee_d0f9_a7e5);
    let adj = Adjacency::new(db, spec.directed)?;
    let mut report = Report::default();
    let mut push = |strategy, param: &str, (mean_ms, checksum): (f64, String)| {
        report.rows.push(ReportRow {
            strategy,
            kind: spec.kind,
            param: param.to_string(),
            mean_ms,
            checksum,
        })
    };
    match spec.kind {
        Kind::Reach => {
            let pairs = adj.walk_pairs(&mut rng, spec.queries, spec.depth, None)?;
            let param = format!("depth={}", spec.depth);
            for &s in &spec.strategies {
                push(s, &param, measure(spec.reps, || reach(db, s, &pairs, spec, None))?);
            }
        }
        Kind::ReachFiltered => {
            let min = spec.sel.iter().copied().fold(f64::INFINITY, f64::min);
            let pairs = adj.walk_pairs(&mut rng, spec.queries, spec.depth, Some(min))?;
            for &sel in &spec.sel {
                let param = format!("sel={sel}");
                for &s in &spec.strategies {
                    push(s, &param, measure(spec.reps, || reach(db, s, &pairs, spec, Some(sel)))?);
                }
            }
        }
        Kind::Triangle => {
            for &sel in &spec.sel {
                let param = format!("sel={sel}");
                for &s in &spec.strategies {
                    push(s, &param, measure(spec.reps, || triangles(db, s, sel))?);
                }
            }
        }
        Kind::Sssp => {
            let sources = adj.sources(&mut rng, spec.queries);
            let param = format!("sources={}", sources.len());
            for &s in &spec.strategies {
                push(s, &param, measure(spec.reps, || sssp(db, s, &sources))?);
            }
        }
        Kind::Topk => {
            let pairs = adj.walk_pairs(&mut rng, spec.queries, spec.depth, None)?;
            let param = format!("k={}", spec.k);
            for &s in &spec.strategies {
                push(s, &param, measure(spec.reps, || topk(db, &pairs, spec.k))?);
            }
        }
    }
    Ok(report)
}

/// Mean of the warm repetitions (all but the first, when there are several)
/// and the checksum, which must be the same on every repetition.
fn measure(reps: usize, mut f: impl FnMut() -> Result<String>) -> Result<(f64, String)> {
    let mut times = Vec::with_capacity(reps);
    let mut checksum: Option<String> = None;
    for _ in 0..reps {
        let t = Instant::now();
        let c = f()?;
        times.push(t.elapsed().as_secs_f64() * 1000.0);
        match &checksum {
            Some(prev) if prev != &c => {
                return Err(Error::exec(format!(
                    "checksum changed between repetitions: {prev} vs {c}"
                )))
            }
            _ => checksum = Some(c),
        }
    }
    let warm = if times.len() > 1 { &times[1..] } else { &times[..] };
    Ok((
        warm.iter().sum::<f64>() / warm.len() as f64,
        checksum.unwrap_or_default(),
    ))
}

/// Out-neighbors read straight from the edge table, for choosing queries.
struct Adjacency {
    vertexes: Vec<i64>,
    out: HashMap<i64, Vec<(i64, f64)>>,
}

impl Adjacency {
    fn new(db: &Database, directed: bool) -> Result<Adjacency> {
        let cat = db.catalog();
        let vt = cat
            .table(&gen::vertex_table(GRAPH))
            .ok_or_else(|| Error::UnknownTable(GRAPH.into()))?;
        let et = cat
            .table(&gen::edge_table(GRAPH))
            .ok_or_else(|| Error::UnknownTable(GRAPH.into()))?;
        let vertexes: Vec<i64> = vt.scan().filter_map(|(_, t)| t.get(0).as_i64()).collect();
        let mut out: HashMap<i64, Vec<(i64, f64)>> = HashMap::new();
        for (_, t) in et.scan() {
            let (Some(a), Some(b), Some(s)) = (
                t.get(col::SRC).as_i64(),
                t.get(col::DST).as_i64(),
                t.get(col::SEL).as_f64(),
            ) else {
                continue;
            };
            out.entry(a).or_default().push((b, s));
            if !directed {
                out.entry(b).or_default().push((a, s));
            }
        }
        Ok(Adjacency { vertexes, out })
    }

    fn sources(&self, rng: &mut ChaCha8Rng, n: usize) -> Vec<i64> {
        self.vertexes
            .choose_multiple(rng, n.min(self.vertexes.len()))
            .copied()
            .collect()
    }

    /// `n` (source, target) pairs, each target the end of a random walk of
    /// at most `depth` steps over edges with `Sel < sel`, so that every
    /// target is reachable within `depth` hops.
    fn walk_pairs(&self, rng: &mut ChaCha8Rng, n: usize, depth: u32, sel: Option<f64>) -> Result<Vec<(i64, i64)>> {
        let mut pairs = Vec::with_capacity(n);
        let mut attempts = 0usize;
        while pairs.len() < n {
            attempts += 1;
            if attempts > n * 1000 + 1000 || self.vertexes.is_empty() || depth == 0 {
                return Err(Error::exec("could not find enough reachable query pairs"));
            }
            let s = *self.vertexes.choose(rng).unwrap();
            let steps = rng.gen_range(1..=depth);
            let mut cur = s;
            for _ in 0..steps {
                let next: Vec<i64> = self
                    .out
                    .get(&cur)
                    .into_iter()
                    .flatten()
                    .filter(|(_, x)| sel.is_none_or(|t| *x < t))
                    .map(|(v, _)| *v)
                    .collect();
                let Some(&v) = next.choose(rng) else { break };
                cur = v;
            }
            if cur != s {
                pairs.push((s, cur));
            }
        }
        Ok(pairs)
    }
}

fn sel_filter(sel: f64) -> EdgeFilter {
    EdgeFilter {
        column: col::SEL,
        op: CmpOp::Lt,
        value: Value::Float(sel),
    }
}

/// Planner options for reachability: breadth-first so the first path found
/// has the fewest hops; pushdown only when an edge filter is present.
fn reach_options(filtered: bool) -> PlannerOptions {
    PlannerOptions {
        pushdown: filtered,
        force_traversal: Some(Traversal::Bfs),
        ..PlannerOptions::default()
    }
}

/// Checksum `found:hops`: pairs reached and the sum of their hop distances.
fn reach(db: &Database, s: Strategy, pairs: &[(i64, i64)], spec: &BenchSpec, sel: Option<f64>) -> Result<String> {
    let (mut found, mut hops) = (0u64, 0u64);
    match s {
        Strategy::PathScan => {
            let opts = reach_options(sel.is_some());
            for &(a, b) in pairs {
                let filter = sel.map_or(String::new(), |t| format!(" AND PS.Edges.Sel < {t}"));
                let sql = format!(
                    "SELECT TOP 1 PS.Length FROM {GRAPH}.Paths PS \
                     WHERE PS.StartVertex.Id = {a} AND PS.EndVertex.Id = {b} AND PS.Length <= {}{filter}",
                    spec.depth
                );
                if let Some(row) = db.query_with(&sql, &opts)?.rows.first() {
                    found += 1;
                    hops += row[0].as_i64().unwrap_or(0) as u64;
                }
            }
        }
        Strategy::Join => {
            let g = db
                .catalog()
                .graph(GRAPH)
                .ok_or_else(|| Error::UnknownView(GRAPH.into()))?;
            let opts = ReachOptions {
                max_depth: spec.depth,
                dedup: spec.dedup,
                filter: sel.map(sel_filter),
            };
            for &(a, b) in pairs {
                let r = baseline::join_reachability(&g, a, b, &opts)?;
                if let Some(d) = r.depth {
                    found += 1;
                    hops += d as u64;
                }
            }
        }
        Strategy::SetSssp => return Err(Error::Usage("setsssp does not answer reachability".into())),
    }
    Ok(format!("{found}:{hops}"))
}

/// The query counting labelled closed 3-paths `A, B, C` among edges below
/// the selectivity threshold.
pub fn triangle_sql(sel: f64) -> String {
    format!(
        "SELECT COUNT(P) FROM {GRAPH}.Paths P WHERE P.Length = 3 \
         AND P.Edges[0].Label = 'A' AND P.Edges[1].Label = 'B' AND P.Edges[2].Label = 'C' \
         AND P.Edges[2].EndVertex = P.Edges[0].StartVertex AND P.Edges.Sel < {sel}"
    )
}

fn triangles(db: &Database, s: Strategy, sel: f64) -> Result<String> {
    let n = match s {
        Strategy::PathScan => db.query(&triangle_sql(sel))?.rows[0][0].as_i64().unwrap_or(0) as u64,
        Strategy::Join => {
            let g = db
                .catalog()
                .graph(GRAPH)
                .ok_or_else(|| Error::UnknownView(GRAPH.into()))?;
            baseline::join_triangle_count(&g, col::LABEL, ["A", "B", "C"], Some(&sel_filter(sel)))?
        }
        Strategy::SetSssp => return Err(Error::Usage("setsssp does not count triangles".into())),
    };
    Ok(n.to_string())
}

/// Checksum `reached:total`: vertexes reached from all sources other than
/// the sources themselves, and the sum of their distances.
fn sssp(db: &Database, s: Strategy, sources: &[i64]) -> Result<String> {
    let mut dists: Vec<f64> = Vec::new();
    match s {
        Strategy::PathScan => {
            for &src in sources {
                let sql = format!(
                    "SELECT PS.EndVertex.Id, SUM(PS.Edges.W) FROM {GRAPH}.Paths PS HINT(SHORTESTPATH(W)) \
                     WHERE PS.StartVertex.Id = {src}"
                );
                let r = db.query(&sql)?;
                dists.extend(r.rows.iter().filter_map(|row| row[1].as_f64()));
            }
        }
        Strategy::SetSssp => {
            let g = db
                .catalog()
                .graph(GRAPH)
                .ok_or_else(|| Error::UnknownView(GRAPH.into()))?;
            for &src in sources {
                let d = baseline::set_sssp(&g, src, col::W)?;
                dists.extend(d.into_iter().filter(|&(v, _)| v != src).map(|(_, x)| x));
            }
        }
        Strategy::Join => return Err(Error::Usage("join does not compute shortest paths".into())),
    }
    dists.sort_by(f64::total_cmp);
    let total: f64 = dists.iter().sum();
    Ok(format!("{}:{total:.6}", dists.len()))
}

/// Checksum `paths:total`: paths returned and the sum of their costs.
fn topk(db: &Database, pairs: &[(i64, i64)], k: usize) -> Result<String> {
    let mut costs = Vec::new();
    for &(a, b) in pairs {
        let sql = format!(
            "SELECT TOP {k} SUM(PS.Edges.W) FROM {GRAPH}.Paths PS HINT(SHORTESTPATH(W)) \
             WHERE PS.StartVertex.Id = {a} AND PS.EndVertex.Id = {b}"
        );
        costs.extend(db.query(&sql)?.rows.iter().filter_map(|r| r[0].as_f64()));
    }
    costs.sort_by(f64::total_cmp);
    Ok(format!("{}:{:.6}", costs.len(), costs.iter().sum::<f64>()))
}

/// Plans the reachability query for one pair, for inspection.
pub fn reach_plan(db: &Database, a: i64, b: i64, depth: u32, sel: Option<f64>) -> Result<QueryPlan> {
    let filter = sel.map_or(String::new(), |t| format!(" AND PS.Edges.Sel < {t}"));
    db.plan_with(
        &format!(
            "SELECT TOP 1 PS.Length FROM {GRAPH}.Paths PS \
             WHERE PS.StartVertex.Id = {a} AND PS.EndVertex.Id = {b} AND PS.Length <= {depth}{filter}"
        ),
        &reach_options(sel.is_some()),
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_spec() {
        let s = BenchSpec::parse("kind=reach,graph=random,n=100,m=400,seed=3,depth=6,queries=5,reps=2").unwrap();
        assert_eq!(s.kind, Kind::Reach);
        assert_eq!(s.family, Family::Random { n: 100, m: 400 });
        assert_eq!((s.depth, s.queries, s.reps), (6, 5, 2));
        assert_eq!(s.strategies, vec![Strategy::PathScan, Strategy::Join]);
        let f = BenchSpec::parse("kind=triangle,sel=0.05:0.5,strategy=join").unwrap();
        assert_eq!(f.sel, vec![0.05, 0.5]);
        assert_eq!(f.strategies, vec![Strategy::Join]);
        for bad in [
            "",
            "kind=nope",
            "kind=reach,depth=x",
            "kind=reach,bogus=1",
            "kind=sssp,strategy=join",
            "kind=reach,sel=2",
        ] {
            assert!(matches!(BenchSpec::parse(bad), Err(Error::Usage(_))), "{bad}");
        }
    }

    #[test]
    fn small_runs_agree() {
        for spec in [
            "kind=reach,n=200,m=800,depth=6,queries=10,reps=2",
            "kind=reach,n=200,m=800,depth=6,queries=10,reps=1,directed=false",
            "kind=reach-filtered,n=200,m=1600,depth=8,queries=5,reps=1,sel=0.3:0.6",
            "kind=triangle,n=60,m=600,reps=1,sel=0.5:1",
            "kind=sssp,n=200,m=800,queries=4,reps=1",
            "kind=topk,n=100,m=400,queries=3,k=4,reps=1,depth=5",
            "kind=reach,graph=grid,n=6,depth=12,queries=5,reps=1",
            "kind=reach,graph=chain,n=30,depth=29,queries=5,reps=1",
        ] {
            let r = run(&BenchSpec::parse(spec).unwrap()).unwrap();
            assert!(r.mismatch().is_none(), "{spec}: {}", r.to_csv());
            assert!(!r.rows.is_empty());
        }
    }

    #[test]
    fn report_is_deterministic() {
        let spec = BenchSpec::parse("kind=reach,n=150,m=600,depth=5,queries=8,reps=1,seed=11").unwrap();
        assert_eq!(
            run(&spec).unwrap().to_csv_untimed(),
            run(&spec).unwrap().to_csv_untimed()
        );
    }

    #[test]
    fn mismatch_is_reported() {
        let row = |strategy, checksum: &str| ReportRow {
            strategy,
            kind: Kind::Reach,
            param: "depth=3".into(),
            mean_ms: 1.0,
            checksum: checksum.into(),
        };
        let r = Report {
            rows: vec![row(Strategy::PathScan, "1:2"), row(Strategy::Join, "1:3")],
        };
        assert_eq!(r.mismatch().unwrap(), "reach depth=3: pathscan=1:2, join=1:3");
        assert_eq!(
            r.to_csv_untimed(),
            "strategy,kind,param,checksum\npathscan,reach,depth=3,1:2\njoin,reach,depth=3,1:3\n"
        );
    }
}
