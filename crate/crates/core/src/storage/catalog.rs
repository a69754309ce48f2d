use std::collections::{BTreeMap, HashMap, HashSet};
use std::path::Path;
use std::sync::Arc;

use super::{Schema, Table, TableId, Tuple, TupleLocator};
use crate::error::{Error, Result};
use crate::expr::{self, Expr, LocalEnv};
use crate::graph::{GraphHandle, GraphStats, GraphView, ViewSpec};
use crate::value::{Key, Value};

/// `SET column = value` where `value` may read the old tuple through
/// `Expr::Local`.
#[derive(Debug, Clone)]
pub struct Assignment {
    pub column: usize,
    pub value: Expr,
}

/// Tables, graph views and the hooks linking them. Cloning is cheap (all
/// objects are shared) and yields an immutable snapshot for readers;
/// mutation copies an object only while a snapshot still shares it.
#[derive(Debug, Clone, Default)]
pub struct Catalog {
    tables: BTreeMap<String, Arc<Table>>,
    views: BTreeMap<String, Arc<GraphView>>,
    /// table key -> keys of views using it as a vertex or edge source
    hooks: HashMap<String, Vec<String>>,
    next_table: u32,
}

fn key(name: &str) -> String {
    name.to_ascii_lowercase()
}

impl Catalog {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn create_table(&mut self, name: &str, schema: Schema) -> Result<TableId> {
        let k = key(name);
        if self.tables.contains_key(&k) || self.views.contains_key(&k) {
            return Err(Error::DuplicateName(name.to_string()));
        }
        let id = TableId(self.next_table);
        self.next_table += 1;
        self.tables.insert(k, Arc::new(Table::new(id, name, schema)));
        Ok(id)
    }

    pub fn table(&self, name: &str) -> Option<&Arc<Table>> {
        self.tables.get(&key(name))
    }

    fn table_or_err(&self, name: &str) -> Result<&Arc<Table>> {
        self.table(name).ok_or_else(|| Error::UnknownTable(name.to_string()))
    }

    pub fn tables(&self) -> impl Iterator<Item = &Arc<Table>> {
        self.tables.values()
    }

    pub fn view(&self, name: &str) -> Option<&Arc<GraphView>> {
        self.views.get(&key(name))
    }

    pub fn views(&self) -> impl Iterator<Item = &Arc<GraphView>> {
        self.views.values()
    }

    /// The view with its source tables, for querying.
    pub fn graph(&self, name: &str) -> Option<GraphHandle> {
        let view = self.view(name)?.clone();
        let vertex_table = self.table(&view.spec().vertex.table)?.clone();
        let edge_table = self.table(&view.spec().edge.table)?.clone();
        Some(GraphHandle {
            view,
            vertex_table,
            edge_table,
        })
    }

    /// Names of the views whose definition references `table`.
    pub fn hooks(&self, table: &str) -> Vec<&str> {
        self.hooks
            .get(&key(table))
            .map(|vs| vs.iter().map(|v| self.views[v].name()).collect())
            .unwrap_or_default()
    }

    /// Builds and registers a graph view. Its id columns become unique and
    /// non-null from now on, so existing data must already satisfy that.
    pub fn create_graph_view(&mut self, spec: ViewSpec) -> Result<()> {
        let k = key(&spec.name);
        if self.tables.contains_key(&k) || self.views.contains_key(&k) {
            return Err(Error::DuplicateName(spec.name.clone()));
        }
        let vt = self.table_or_err(&spec.vertex.table)?.clone();
        let et = self.table_or_err(&spec.edge.table)?.clone();
        check_unique(&vt, spec.vertex.id_col)?;
        check_unique(&et, spec.edge.id_col)?;
        let mut view = GraphView::build(spec, &vt, &et)?;
        view.compute_stats();
        let (vk, ek) = (key(vt.name()), key(et.name()));
        self.views.insert(k.clone(), Arc::new(view));
        for t in [vk, ek] {
            let list = self.hooks.entry(t).or_default();
            if !list.contains(&k) {
                list.push(k.clone());
            }
        }
        Ok(())
    }

    /// Recomputes a view's average fan-out.
    pub fn refresh_stats(&mut self, view: &str) -> Result<GraphStats> {
        let v = self
            .views
            .get_mut(&key(view))
            .ok_or_else(|| Error::UnknownView(view.to_string()))?;
        Ok(Arc::make_mut(v).compute_stats())
    }

    /// Id columns of `table` that graph views rely on.
    fn id_columns(&self, table: &str) -> Vec<usize> {
        let tk = key(table);
        let mut cols = Vec::new();
        for vk in self.hooks.get(&tk).into_iter().flatten() {
            let spec = self.views[vk].spec();
            if key(&spec.vertex.table) == tk {
                cols.push(spec.vertex.id_col);
            }
            if key(&spec.edge.table) == tk {
                cols.push(spec.edge.id_col);
            }
        }
        cols.sort_unstable();
        cols.dedup();
        cols
    }

    pub fn insert(&mut self, table: &str, values: Vec<Value>) -> Result<TupleLocator> {
        Ok(self.insert_many(table, vec![values])?[0])
    }

    /// Inserts all rows or none. Graph views are maintained before returning.
    pub fn insert_many(&mut self, table: &str, rows: Vec<Vec<Value>>) -> Result<Vec<TupleLocator>> {
        let t = self.table_or_err(table)?;
        let rows = rows.into_iter().map(|r| t.check_row(r)).collect::<Result<Vec<_>>>()?;
        for col in self.id_columns(table) {
            let mut seen = HashSet::new();
            for r in &rows {
                let k = id_key(t, &r[col])?;
                if !t.lookup_eq(col, &r[col]).is_empty() || !seen.insert(k) {
                    return Err(dup(t, &r[col]));
                }
            }
        }
        let tk = key(table);
        let mut locs = Vec::with_capacity(rows.len());
        {
            let t = Arc::make_mut(self.tables.get_mut(&tk).unwrap());
            for r in rows {
                locs.push(t.push(r));
            }
        }
        for vk in self.hooks.get(&tk).cloned().unwrap_or_default() {
            let t = self.tables[&tk].clone();
            let view = Arc::make_mut(self.views.get_mut(&vk).unwrap());
            for loc in &locs {
                add_member(view, &tk, t.resolve(*loc).unwrap(), *loc);
            }
        }
        Ok(locs)
    }

    /// Deletes matching tuples; views drop the corresponding vertexes and
    /// edges (edges of a deleted vertex become dangling).
    pub fn delete_where(&mut self, table: &str, pred: impl Fn(&Tuple) -> bool) -> Result<usize> {
        let tk = key(table);
        let t = self.table_or_err(table)?.clone();
        let slots: Vec<u32> = t.scan().filter(|(_, tup)| pred(tup)).map(|(s, _)| s).collect();
        for vk in self.hooks.get(&tk).cloned().unwrap_or_default() {
            let view = Arc::make_mut(self.views.get_mut(&vk).unwrap());
            for &s in &slots {
                remove_member(view, &tk, t.get(s).unwrap());
            }
        }
        let t = Arc::make_mut(self.tables.get_mut(&tk).unwrap());
        for &s in &slots {
            t.remove(s);
        }
        Ok(slots.len())
    }

    /// Updates matching tuples. Changing a vertex id rewrites the endpoint
    /// columns of edges that reference it. Non-topological changes leave
    /// every view untouched.
    pub fn update_where(
        &mut self,
        table: &str,
        assignments: &[Assignment],
        pred: impl Fn(&Tuple) -> bool,
    ) -> Result<usize> {
        let tk = key(table);
        let t = self.table_or_err(table)?.clone();
        let mut changes: BTreeMap<String, BTreeMap<u32, Vec<Value>>> = BTreeMap::new();
        let mut own = BTreeMap::new();
        for (slot, tup) in t.scan().filter(|(_, tup)| pred(tup)) {
            let mut new = tup.values().to_vec();
            for a in assignments {
                new[a.column] = expr::eval(&a.value, &LocalEnv(tup.values())).into_owned();
            }
            own.insert(slot, t.check_row(new)?);
        }
        let count = own.len();
        for col in self.id_columns(table) {
            let mut seen = HashSet::new();
            for (&slot, new) in &own {
                let k = id_key(&t, &new[col])?;
                if !seen.insert(k) {
                    return Err(dup(&t, &new[col]));
                }
                let clash = t
                    .lookup_eq(col, &new[col])
                    .iter()
                    .any(|s| *s != slot && !own.contains_key(s));
                if clash {
                    return Err(dup(&t, &new[col]));
                }
            }
        }
        changes.insert(tk.clone(), own);

        // Cascade vertex id changes into the edge sources.
        for vk in self.hooks.get(&tk).cloned().unwrap_or_default() {
            let spec = self.views[&vk].spec().clone();
            if key(&spec.vertex.table) != tk {
                continue;
            }
            let col = spec.vertex.id_col;
            let mapping: HashMap<Key, Value> = changes[&tk]
                .iter()
                .filter_map(|(&s, new)| {
                    let old = t.get(s).unwrap().get(col);
                    (!old.sql_eq(&new[col])).then(|| (old.key().unwrap(), new[col].clone()))
                })
                .collect();
            if mapping.is_empty() {
                continue;
            }
            let ek = key(&spec.edge.table);
            let et = self.tables[&ek].clone();
            let mut slots: Vec<u32> = Vec::new();
            for old in mapping.keys() {
                let v = key_value(old);
                slots.extend(et.lookup_eq(spec.edge.from_col, &v));
                slots.extend(et.lookup_eq(spec.edge.to_col, &v));
            }
            slots.sort_unstable();
            slots.dedup();
            let pending = changes.entry(ek).or_default();
            for s in slots {
                let orig = et.get(s).unwrap().values();
                let row = pending.entry(s).or_insert_with(|| orig.to_vec());
                for c in [spec.edge.from_col, spec.edge.to_col] {
                    if let Some(k) = orig[c].key() {
                        if let Some(n) = mapping.get(&k) {
                            row[c] = n.clone();
                        }
                    }
                }
            }
        }

        // Apply: detach everything that moves, rewrite tuples, reattach.
        let mut readd: Vec<(String, String, TupleLocator)> = Vec::new();
        for (tk, rows) in &changes {
            let t = self.tables[tk].clone();
            for vk in self.hooks.get(tk).cloned().unwrap_or_default() {
                let view = Arc::make_mut(self.views.get_mut(&vk).unwrap());
                for (&slot, new) in rows {
                    let old = t.get(slot).unwrap();
                    let new_t = Tuple::new(new.clone());
                    if topology_key(view, tk, old) != topology_key(view, tk, &new_t) {
                        remove_member(view, tk, old);
                        readd.push((vk.clone(), tk.clone(), t.locator(slot)));
                    }
                }
            }
        }
        for (tk, rows) in changes {
            let t = Arc::make_mut(self.tables.get_mut(&tk).unwrap());
            for (slot, new) in rows {
                t.replace(slot, new);
            }
        }
        for (vk, tk, loc) in readd {
            let t = self.tables[&tk].clone();
            let view = Arc::make_mut(self.views.get_mut(&vk).unwrap());
            add_member(view, &tk, t.resolve(loc).unwrap(), loc);
        }
        Ok(count)
    }

    pub fn load_csv(&mut self, table: &str, path: &Path) -> Result<usize> {
        let schema = self.table_or_err(table)?.schema().clone();
        let rows = super::csv::read_rows(path, &schema)?;
        let n = rows.len();
        self.insert_many(table, rows)?;
        Ok(n)
    }
}

fn id_key(t: &Table, v: &Value) -> Result<Key> {
    v.key().ok_or_else(|| Error::NullId {
        table: t.name().to_string(),
    })
}

fn dup(t: &Table, v: &Value) -> Error {
    Error::DuplicateId {
        table: t.name().to_string(),
        id: v.to_string(),
    }
}

fn key_value(k: &Key) -> Value {
    match k {
        Key::Int(i) => Value::Int(*i),
        Key::Float(b) => Value::Float(f64::from_bits(*b)),
        Key::Text(s) => Value::Text(s.clone()),
        Key::Bool(b) => Value::Bool(*b),
    }
}

fn check_unique(t: &Table, col: usize) -> Result<()> {
    if t.distinct_keys(col) == t.len() {
        return Ok(());
    }
    // Find the offending value for the error message.
    let mut seen = HashSet::new();
    for (_, tup) in t.scan() {
        let v = tup.get(col);
        if !seen.insert(id_key(t, v)?) {
            return Err(dup(t, v));
        }
    }
    Ok(())
}

/// What a tuple contributes to a view's topology: vertex membership and id,
/// and edge membership with id and endpoints.
type TopoKey = (Option<Value>, Option<(Value, Value, Value)>);

fn topology_key(view: &GraphView, tk: &str, t: &Tuple) -> TopoKey {
    let spec = view.spec();
    let v = (key(&spec.vertex.table) == tk && spec.vertex.admits(t)).then(|| t.get(spec.vertex.id_col).clone());
    let e = (key(&spec.edge.table) == tk && spec.edge.admits(t)).then(|| {
        (
            t.get(spec.edge.id_col).clone(),
            t.get(spec.edge.from_col).clone(),
            t.get(spec.edge.to_col).clone(),
        )
    });
    (v, e)
}

fn add_member(view: &mut GraphView, tk: &str, t: &Tuple, loc: TupleLocator) {
    let (v, e) = topology_key(view, tk, t);
    if let Some(Value::Int(id)) = v {
        view.vertex_added(id, loc);
    }
    if let Some((Value::Int(id), from, to)) = e {
        view.edge_added(id, from.as_i64(), to.as_i64(), loc);
    }
}

fn remove_member(view: &mut GraphView, tk: &str, t: &Tuple) {
    let (v, e) = topology_key(view, tk, t);
    if let Some((Value::Int(id), _, _)) = e {
        view.edge_removed(id);
    }
    if let Some(Value::Int(id)) = v {
        view.vertex_removed(id);
    }
}
