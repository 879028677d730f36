//! Shared, append-only sequence tables with an optional JSON file behind
//! them.
//!
//! The file maps `"kind:q:ell"` (`ell = 0` for `a`) to an array of decimal
//! strings holding entries `0..=max`.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::fs;
use std::path::Path;
use std::sync::{Arc, Mutex};

use num_bigint::BigUint;

use super::tables::{SeqKind, SeqTable};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TableKey {
    pub kind: SeqKind,
    pub q: u32,
    pub ell: usize,
}

impl fmt::Display for TableKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}:{}", self.kind, self.q, self.ell)
    }
}

impl std::str::FromStr for TableKey {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("bad table key {s:?}"));
        let mut parts = s.split(':');
        let (Some(kind), Some(q), Some(ell), None) = (parts.next(), parts.next(), parts.next(), parts.next()) else {
            return Err(bad());
        };
        Ok(TableKey {
            kind: kind.parse()?,
            q: q.parse().map_err(|_| bad())?,
            ell: ell.parse().map_err(|_| bad())?,
        })
    }
}

/// Tables keyed by `(kind, q, ell)`.
///
/// Each table sits behind its own lock: extending one table blocks only
/// other extenders of that table.
#[derive(Default)]
pub struct SeqStore {
    tables: Mutex<HashMap<TableKey, Arc<Mutex<SeqTable>>>>,
}

impl SeqStore {
    pub fn new() -> Self {
        Self::default()
    }

    /// Reads a cache file; a missing file gives an empty store.
    pub fn load(path: &Path) -> Result<Self> {
        let store = SeqStore::new();
        let text = match fs::read_to_string(path) {
            Ok(t) => t,
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Ok(store),
            Err(e) => return Err(e.into()),
        };
        let raw: BTreeMap<String, Vec<String>> = serde_json::from_str(&text)
            .map_err(|e| Error::Parse(format!("cache file {}: {e}", path.display())))?;
        {
            let mut tables = store.tables.lock().expect("store lock");
            for (key, values) in raw {
                let key: TableKey = key.parse()?;
                let values = values
                    .iter()
                    .map(|v| v.parse::<BigUint>().map_err(|_| Error::Parse(format!("bad cache entry {v:?} under {key}"))))
                    .collect::<Result<Vec<_>>>()?;
                let ell = key.kind.needs_ell().then_some(key.ell);
                let table = SeqTable::from_values(key.kind, key.q, ell, values)?;
                tables.insert(key, Arc::new(Mutex::new(table)));
            }
        }
        Ok(store)
    }

    /// Writes every table, replacing `path` atomically.
    pub fn save(&self, path: &Path) -> Result<()> {
        let snapshot: BTreeMap<String, Vec<String>> = {
            let tables = self.tables.lock().expect("store lock");
            tables
                .iter()
                .map(|(k, t)| {
                    let t = t.lock().expect("table lock");
                    (k.to_string(), t.values().iter().map(|v| v.to_str_radix(10)).collect())
                })
                .collect()
        };
        let text = serde_json::to_string_pretty(&snapshot).map_err(|e| Error::Io(e.to_string()))?;
        let mut tmp = path.as_os_str().to_owned();
        tmp.push(".tmp");
        fs::write(&tmp, text + "\n")?;
        fs::rename(&tmp, path)?;
        Ok(())
    }

    /// Entries `0..=max` of the requested table, extending it if needed.
    pub fn get(&self, kind: SeqKind, q: u32, ell: Option<usize>, max: usize) -> Result<SeqTable> {
        let probe = SeqTable::new(kind, q, ell)?;
        let key = TableKey { kind, q, ell: ell.unwrap_or(0) };
        let slot = {
            let mut tables = self.tables.lock().expect("store lock");
            Arc::clone(tables.entry(key).or_insert_with(|| Arc::new(Mutex::new(probe))))
        };
        let mut table = slot.lock().expect("table lock");
        table.extend_to(max);
        let values = table.values()[..=max].to_vec();
        SeqTable::from_values(kind, q, ell, values)
    }

    pub fn keys(&self) -> Vec<TableKey> {
        let mut keys: Vec<TableKey> = self.tables.lock().expect("store lock").keys().copied().collect();
        keys.sort();
        keys
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::seq::{a_seq, b_seq};

    #[test]
    fn key_round_trip() {
        let k = TableKey { kind: SeqKind::Bhat, q: 3, ell: 2 };
        assert_eq!(k.to_string(), "bhat:3:2");
        assert_eq!("bhat:3:2".parse::<TableKey>().unwrap(), k);
        assert!("b:3".parse::<TableKey>().is_err());
        assert!("z:3:1".parse::<TableKey>().is_err());
    }

    #[test]
    fn cached_values_match_fresh() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("cache.json");
        let store = SeqStore::load(&path).unwrap();
        let b = store.get(SeqKind::B, 2, Some(1), 20).unwrap();
        store.get(SeqKind::A, 3, None, 9).unwrap();
        store.save(&path).unwrap();

        let again = SeqStore::load(&path).unwrap();
        assert_eq!(again.keys().len(), 2);
        assert_eq!(again.get(SeqKind::B, 2, Some(1), 20).unwrap(), b);
        assert_eq!(again.get(SeqKind::B, 2, Some(1), 25).unwrap(), b_seq(2, 1, 25).unwrap());
        assert_eq!(again.get(SeqKind::A, 3, None, 30).unwrap(), a_seq(3, 30).unwrap());
        assert_eq!(again.get(SeqKind::A, 3, None, 4).unwrap().values().len(), 5);
    }

    #[test]
    fn corrupt_file_is_an_error() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("cache.json");
        fs::write(&path, r#"{"a:2:0": ["0", "x"]}"#).unwrap();
        assert!(matches!(SeqStore::load(&path), Err(Error::Parse(_))));
    }

    #[test]
    fn concurrent_extension() {
        use rayon::prelude::*;
        let store = SeqStore::new();
        let maxes: Vec<usize> = (10..40).collect();
        maxes.par_iter().for_each(|&m| {
            let t = store.get(SeqKind::A, 2, None, m).unwrap();
            assert_eq!(t, a_seq(2, m).unwrap());
        });
    }
}
