//! Id -> slot map for view topologies. Ids that fall in a mostly-occupied
//! contiguous range live in a direct-address array; the rest go to a hash
//! map.

use rustc_hash::FxHashMap;

const NONE: u32 = u32::MAX;
/// The array may start this small whatever the density.
const MIN_DENSE: usize = 64;

#[derive(Debug, Clone, Default)]
pub struct IdMap {
    base: i64,
    dense: Vec<u32>,
    dense_len: usize,
    sparse: FxHashMap<i64, u32>,
}

impl IdMap {
    pub fn new() -> Self {
        IdMap::default()
    }

    fn offset(&self, id: i64) -> Option<usize> {
        let off = id.checked_sub(self.base)?;
        usize::try_from(off).ok()
    }

    // An id lives in at most one of the two parts. The array can grow over
    // ids already in the hash map, so array misses fall through to it.

    pub fn get(&self, id: i64) -> Option<u32> {
        match self.offset(id).and_then(|off| self.dense.get(off)) {
            Some(&v) if v != NONE => Some(v),
            _ => self.sparse.get(&id).copied(),
        }
    }

    pub fn contains(&self, id: i64) -> bool {
        self.get(id).is_some()
    }

    /// Inserts or replaces; returns the previous value.
    pub fn insert(&mut self, id: i64, value: u32) -> Option<u32> {
        debug_assert_ne!(value, NONE);
        if self.is_empty() {
            self.base = id;
        }
        if let Some(off) = self.offset(id) {
            if let Some(slot) = self.dense.get_mut(off) {
                if *slot != NONE {
                    return Some(std::mem::replace(slot, value));
                }
            }
            if let Some(v) = self.sparse.get_mut(&id) {
                return Some(std::mem::replace(v, value));
            }
            // Grow only while the array stays at least a quarter full.
            let fits = off < self.dense.len() || off < MIN_DENSE || off < (self.dense_len + 1) * 4;
            if fits {
                if off >= self.dense.len() {
                    self.dense.resize(off + 1, NONE);
                }
                self.dense[off] = value;
                self.dense_len += 1;
                return None;
            }
        }
        self.sparse.insert(id, value)
    }

    pub fn remove(&mut self, id: i64) -> Option<u32> {
        if let Some(slot) = self.offset(id).and_then(|off| self.dense.get_mut(off)) {
            if *slot != NONE {
                self.dense_len -= 1;
                return Some(std::mem::replace(slot, NONE));
            }
        }
        self.sparse.remove(&id)
    }

    pub fn len(&self) -> usize {
        self.dense_len + self.sparse.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Approximate heap footprint.
    pub fn heap_bytes(&self) -> usize {
        self.dense.capacity() * size_of::<u32>() + self.sparse.capacity() * (size_of::<(i64, u32)>() + 1)
    }
}
