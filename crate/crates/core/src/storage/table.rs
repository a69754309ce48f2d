use std::fmt;
use std::sync::OnceLock;

use super::schema::Schema;
use crate::error::{Error, Result};
use crate::value::{Key, Value};
use rustc_hash::FxHashMap;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TableId(pub u32);

/// Stable handle to a tuple: resolves in constant time while the tuple is
/// live, and to nothing after deletion. Slots are never reused.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TupleLocator {
    pub table: TableId,
    pub slot: u32,
}

impl fmt::Display for TupleLocator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "t{}:{}", self.table.0, self.slot)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Tuple {
    values: Vec<Value>,
}

impl Tuple {
    pub fn new(values: Vec<Value>) -> Self {
        Tuple { values }
    }

    pub fn values(&self) -> &[Value] {
        &self.values
    }

    pub fn get(&self, idx: usize) -> &Value {
        &self.values[idx]
    }

    pub fn into_values(self) -> Vec<Value> {
        self.values
    }
}

type HashIndex = FxHashMap<Key, Slots>;

/// Slots sharing one key. Id columns are unique, so the single-slot case
/// is kept inline.
#[derive(Debug, Clone)]
enum Slots {
    One(u32),
    Many(Vec<u32>),
}

impl Slots {
    fn as_slice(&self) -> &[u32] {
        match self {
            Slots::One(s) => std::slice::from_ref(s),
            Slots::Many(v) => v,
        }
    }

    fn push(&mut self, slot: u32) {
        match self {
            Slots::One(s) => *self = Slots::Many(vec![*s, slot]),
            Slots::Many(v) => v.push(slot),
        }
    }

    /// Removes `slot`; true when nothing is left.
    fn remove(&mut self, slot: u32) -> bool {
        match self {
            Slots::One(s) => *s == slot,
            Slots::Many(v) => {
                v.retain(|&s| s != slot);
                v.is_empty()
            }
        }
    }
}

fn add(idx: &mut HashIndex, k: Key, slot: u32) {
    match idx.entry(k) {
        std::collections::hash_map::Entry::Occupied(mut e) => e.get_mut().push(slot),
        std::collections::hash_map::Entry::Vacant(e) => {
            e.insert(Slots::One(slot));
        }
    }
}

#[derive(Debug, Clone)]
pub struct Table {
    id: TableId,
    name: String,
    schema: Schema,
    slots: Vec<Option<Tuple>>,
    live: usize,
    // Built on first lookup, then maintained by every mutation.
    indexes: Vec<OnceLock<HashIndex>>,
}

impl Table {
    pub fn new(id: TableId, name: impl Into<String>, schema: Schema) -> Self {
        let indexes = (0..schema.len()).map(|_| OnceLock::new()).collect();
        Table {
            id,
            name: name.into(),
            schema,
            slots: Vec::new(),
            live: 0,
            indexes,
        }
    }

    pub fn id(&self) -> TableId {
        self.id
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn schema(&self) -> &Schema {
        &self.schema
    }

    /// Number of live tuples.
    pub fn len(&self) -> usize {
        self.live
    }

    pub fn is_empty(&self) -> bool {
        self.live == 0
    }

    /// Number of slots ever allocated (live or deleted).
    pub fn slot_count(&self) -> usize {
        self.slots.len()
    }

    pub fn locator(&self, slot: u32) -> TupleLocator {
        TupleLocator { table: self.id, slot }
    }

    pub fn get(&self, slot: u32) -> Option<&Tuple> {
        self.slots.get(slot as usize).and_then(Option::as_ref)
    }

    pub fn resolve(&self, loc: TupleLocator) -> Option<&Tuple> {
        if loc.table != self.id {
            return None;
        }
        self.get(loc.slot)
    }

    pub fn scan(&self) -> impl Iterator<Item = (u32, &Tuple)> + '_ {
        self.slots
            .iter()
            .enumerate()
            .filter_map(|(i, t)| t.as_ref().map(|t| (i as u32, t)))
    }

    /// Checks arity and column types, widening integers into float columns.
    pub fn check_row(&self, values: Vec<Value>) -> Result<Vec<Value>> {
        if values.len() != self.schema.len() {
            return Err(Error::Arity {
                table: self.name.clone(),
                expected: self.schema.len(),
                got: values.len(),
            });
        }
        values
            .into_iter()
            .zip(self.schema.columns())
            .map(|(v, col)| {
                let got = v.type_name();
                v.coerce_to(col.ty).ok_or_else(|| Error::TypeMismatch {
                    column: col.name.clone(),
                    expected: col.ty.name().to_string(),
                    got: got.to_string(),
                })
            })
            .collect()
    }

    /// Appends an already checked row.
    pub(crate) fn push(&mut self, values: Vec<Value>) -> TupleLocator {
        let slot = self.slots.len() as u32;
        for (col, idx) in self.indexes.iter_mut().enumerate() {
            if let Some(idx) = idx.get_mut() {
                if let Some(k) = values[col].key() {
                    add(idx, k, slot);
                }
            }
        }
        self.slots.push(Some(Tuple::new(values)));
        self.live += 1;
        self.locator(slot)
    }

    pub(crate) fn remove(&mut self, slot: u32) -> Option<Tuple> {
        let tuple = self.slots.get_mut(slot as usize)?.take()?;
        self.live -= 1;
        for (col, idx) in self.indexes.iter_mut().enumerate() {
            if let Some(idx) = idx.get_mut() {
                unindex(idx, tuple.get(col), slot);
            }
        }
        Some(tuple)
    }

    pub(crate) fn replace(&mut self, slot: u32, values: Vec<Value>) {
        let Some(Some(old)) = self.slots.get(slot as usize) else {
            return;
        };
        for (col, idx) in self.indexes.iter_mut().enumerate() {
            if let Some(idx) = idx.get_mut() {
                if !same_key(old.get(col), &values[col]) {
                    unindex(idx, old.get(col), slot);
                    if let Some(k) = values[col].key() {
                        add(idx, k, slot);
                    }
                }
            }
        }
        self.slots[slot as usize] = Some(Tuple::new(values));
    }

    fn index(&self, col: usize) -> &HashIndex {
        self.indexes[col].get_or_init(|| {
            let mut idx = HashIndex::default();
            idx.reserve(self.live);
            for (slot, t) in self.scan() {
                if let Some(k) = t.get(col).key() {
                    add(&mut idx, k, slot);
                }
            }
            idx
        })
    }

    pub fn has_index(&self, col: usize) -> bool {
        self.indexes[col].get().is_some()
    }

    /// Forces creation of the hash index on `col`.
    pub fn ensure_index(&self, col: usize) {
        self.index(col);
    }

    /// Number of distinct non-null keys in `col`, building its index if
    /// needed. Equal to `len()` exactly when the column is unique and
    /// non-null.
    pub fn distinct_keys(&self, col: usize) -> usize {
        self.index(col).len()
    }

    /// Slots of live tuples whose `col` equals `value`, in insertion order.
    pub fn lookup_eq(&self, col: usize, value: &Value) -> &[u32] {
        match value.key() {
            Some(k) => self.index(col).get(&k).map(Slots::as_slice).unwrap_or(&[]),
            None => &[],
        }
    }

    /// Resolves a unique id column value to its tuple locator.
    pub fn index_lookup(&self, col: usize, value: &Value) -> Option<TupleLocator> {
        self.lookup_eq(col, value).first().map(|&s| self.locator(s))
    }
}

fn same_key(a: &Value, b: &Value) -> bool {
    a.key() == b.key()
}

fn unindex(idx: &mut HashIndex, v: &Value, slot: u32) {
    if let Some(k) = v.key() {
        if idx.get_mut(&k).is_some_and(|list| list.remove(slot)) {
            idx.remove(&k);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::storage::Column;
    use crate::value::DataType;

    fn users() -> Table {
        let schema = Schema::new(vec![
            Column::new("uId", DataType::Integer),
            Column::new("lName", DataType::Text),
        ])
        .unwrap();
        Table::new(TableId(0), "Users", schema)
    }

    #[test]
    fn locators_survive_deletes_and_are_not_reused() {
        let mut t = users();
        let a = t.push(vec![1.into(), "Smith".into()]);
        let b = t.push(vec![2.into(), "Jones".into()]);
        assert_eq!(a.slot, 0);
        t.remove(a.slot);
        assert!(t.resolve(a).is_none());
        let c = t.push(vec![3.into(), "Lee".into()]);
        assert_eq!(c.slot, 2);
        assert_eq!(t.resolve(b).unwrap().get(1), &Value::from("Jones"));
        assert_eq!(t.len(), 2);
    }

    #[test]
    fn index_is_lazy_and_coherent() {
        let mut t = users();
        t.push(vec![1.into(), "Smith".into()]);
        assert!(!t.has_index(0));
        assert_eq!(t.index_lookup(0, &1.into()).map(|l| l.slot), Some(0));
        assert!(t.has_index(0));
        assert!(t.index_lookup(0, &404.into()).is_none());
        t.remove(0);
        assert!(t.index_lookup(0, &1.into()).is_none());
        let l = t.push(vec![7.into(), "X".into()]);
        t.replace(l.slot, vec![8.into(), "X".into()]);
        assert!(t.index_lookup(0, &7.into()).is_none());
        assert_eq!(t.index_lookup(0, &8.into()), Some(l));
    }

    #[test]
    fn check_row_reports_arity_and_type() {
        let t = users();
        assert!(matches!(t.check_row(vec![1.into()]), Err(Error::Arity { .. })));
        assert!(matches!(
            t.check_row(vec!["a".into(), "b".into()]),
            Err(Error::TypeMismatch { .. })
        ));
        assert!(t.check_row(vec![Value::Null, Value::Null]).is_ok());
    }
}
