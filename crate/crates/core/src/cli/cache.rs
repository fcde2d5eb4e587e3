//! Persistent count cache.
//!
//! CSV with header `kind,k,n,ell,value`; `ell` is empty when not
//! applicable and `value` is a decimal string. The file is only appended
//! to. A file that fails validation is ignored with a warning and rewritten
//! from scratch on the next store.

use std::collections::BTreeMap;
use std::fmt;
use std::fs::{File, OpenOptions};
use std::io;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use num_bigint::BigUint;

use crate::count::Count;

pub const HEADER: [&str; 5] = ["kind", "k", "n", "ell", "value"];

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Kind {
    /// `f_k(n, ell)`
    F,
    /// `T_k(n)`
    T,
    /// `S_{k,3}(n)` or `S_{k,3}(n, ell)`
    S,
    /// `lambda(n, b)`, with `b` stored in the `ell` column
    Lambda,
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Kind::F => "f",
            Kind::T => "T",
            Kind::S => "S",
            Kind::Lambda => "lambda",
        })
    }
}

impl FromStr for Kind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "f" => Ok(Kind::F),
            "T" => Ok(Kind::T),
            "S" => Ok(Kind::S),
            "lambda" => Ok(Kind::Lambda),
            other => Err(format!("unknown kind {other:?}")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Key {
    pub kind: Kind,
    pub k: usize,
    pub n: usize,
    pub ell: Option<usize>,
}

#[derive(Debug)]
pub struct CountCache {
    path: PathBuf,
    entries: BTreeMap<Key, Count>,
    rewrite: bool,
    /// Problems found while loading, for the caller to report.
    pub warnings: Vec<String>,
}

fn parse_row(record: &csv::StringRecord) -> Result<(Key, Count), String> {
    if record.len() != HEADER.len() {
        return Err(format!("expected {} fields, found {}", HEADER.len(), record.len()));
    }
    let kind: Kind = record[0].parse()?;
    let k: usize = record[1].parse().map_err(|e| format!("k: {e}"))?;
    let n: usize = record[2].parse().map_err(|e| format!("n: {e}"))?;
    let ell = match &record[3] {
        "" => None,
        s => Some(s.parse().map_err(|e| format!("ell: {e}"))?),
    };
    if !record[4].bytes().all(|b| b.is_ascii_digit()) || record[4].is_empty() {
        return Err(format!("value {:?} is not a decimal integer", &record[4]));
    }
    let value: BigUint = record[4].parse().map_err(|e| format!("value: {e}"))?;
    Ok((Key { kind, k, n, ell }, Count::from(value)))
}

impl CountCache {
    pub fn open(path: impl AsRef<Path>) -> Self {
        let path = path.as_ref().to_path_buf();
        let mut cache = CountCache {
            path,
            entries: BTreeMap::new(),
            rewrite: false,
            warnings: Vec::new(),
        };
        match File::open(&cache.path) {
            Ok(file) => {
                if let Err(msg) = cache.load(file) {
                    cache.warnings.push(format!(
                        "ignoring cache {}: {msg}",
                        cache.path.display()
                    ));
                    cache.entries.clear();
                    cache.rewrite = true;
                }
            }
            Err(e) if e.kind() == io::ErrorKind::NotFound => cache.rewrite = true,
            Err(e) => {
                cache
                    .warnings
                    .push(format!("cannot read cache {}: {e}", cache.path.display()));
                cache.rewrite = true;
            }
        }
        cache
    }

    fn load(&mut self, file: File) -> Result<(), String> {
        let mut reader = csv::ReaderBuilder::new().has_headers(true).from_reader(file);
        let header = reader.headers().map_err(|e| e.to_string())?.clone();
        if header.iter().ne(HEADER.iter().copied()) {
            return Err(format!("unexpected header {:?}", header.iter().collect::<Vec<_>>()));
        }
        for (line, record) in reader.records().enumerate() {
            let record = record.map_err(|e| e.to_string())?;
            let (key, value) = parse_row(&record).map_err(|e| format!("row {}: {e}", line + 2))?;
            if let Some(prev) = self.entries.get(&key) {
                if *prev != value {
                    return Err(format!("row {}: conflicting values for {key:?}", line + 2));
                }
            }
            self.entries.insert(key, value);
        }
        Ok(())
    }

    pub fn get(&self, key: &Key) -> Option<&Count> {
        self.entries.get(key)
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Record new values and append them to the file.
    pub fn store(&mut self, items: impl IntoIterator<Item = (Key, Count)>) -> io::Result<()> {
        let fresh: Vec<(Key, Count)> = items
            .into_iter()
            .filter(|(key, _)| !self.entries.contains_key(key))
            .collect();
        if fresh.is_empty() && !self.rewrite {
            return Ok(());
        }
        for (key, value) in &fresh {
            self.entries.insert(*key, value.clone());
        }

        let (file, rows): (File, Vec<(Key, Count)>) = if self.rewrite {
            let file = File::create(&self.path)?;
            let all = self.entries.iter().map(|(k, v)| (*k, v.clone())).collect();
            (file, all)
        } else {
            (OpenOptions::new().append(true).open(&self.path)?, fresh)
        };
        let mut writer = csv::WriterBuilder::new()
            .terminator(csv::Terminator::Any(b'\n'))
            .from_writer(file);
        if self.rewrite {
            writer.write_record(HEADER)?;
        }
        for (key, value) in rows {
            writer.write_record([
                key.kind.to_string(),
                key.k.to_string(),
                key.n.to_string(),
                key.ell.map(|e| e.to_string()).unwrap_or_default(),
                value.to_string(),
            ])?;
        }
        writer.flush()?;
        self.rewrite = false;
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn key(kind: Kind, n: usize) -> Key {
        Key { kind, k: 3, n, ell: None }
    }

    #[test]
    fn round_trips_through_file() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("cache.csv");
        let mut c = CountCache::open(&path);
        assert!(c.is_empty());
        c.store([(key(Kind::S, 5), Count::from(5u64))]).unwrap();
        c.store([(key(Kind::T, 6), Count::from(75u64)), (key(Kind::S, 5), Count::from(5u64))])
            .unwrap();
        let text = std::fs::read_to_string(&path).unwrap();
        assert_eq!(text, "kind,k,n,ell,value\nS,3,5,,5\nT,3,6,,75\n");

        let reopened = CountCache::open(&path);
        assert!(reopened.warnings.is_empty());
        assert_eq!(reopened.len(), 2);
        assert_eq!(reopened.get(&key(Kind::T, 6)).unwrap(), &75);
    }

    #[test]
    fn corrupt_file_is_ignored_and_rewritten() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("cache.csv");
        std::fs::write(&path, "kind,k,n,ell,value\nS,3,5,,five\n").unwrap();
        let mut c = CountCache::open(&path);
        assert_eq!(c.warnings.len(), 1);
        assert!(c.is_empty());
        c.store([(key(Kind::S, 4), Count::from(2u64))]).unwrap();
        assert_eq!(std::fs::read_to_string(&path).unwrap(), "kind,k,n,ell,value\nS,3,4,,2\n");
    }

    #[test]
    fn rejects_bad_rows() {
        for body in [
            "kind,k,n,ell,value\nX,3,5,,5\n",
            "kind,k,n,ell,value\nS,3,5,,-5\n",
            "kind,k,n,value\nS,3,5,5\n",
            "kind,k,n,ell,value\nS,3,5,,5\nS,3,5,,6\n",
        ] {
            let dir = tempfile::tempdir().unwrap();
            let path = dir.path().join("cache.csv");
            std::fs::write(&path, body).unwrap();
            let c = CountCache::open(&path);
            assert!(c.is_empty(), "{body}");
            assert_eq!(c.warnings.len(), 1, "{body}");
        }
    }
}
