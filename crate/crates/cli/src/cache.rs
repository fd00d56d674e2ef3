//! On-disk JSON cache of exact Euler characteristic tables.
//!
//! One file per table kind, named `<kind>.v<version>.json`:
//!
//! ```json
//! {"version":1,"kind":"gc-even","index":"rank","method":"generating-function",
//!  "values":{"2":"0","3":"1"},"checksum":"<sha256 hex>"}
//! ```
//!
//! Integers are decimal strings. The checksum covers kind, index, method and
//! every entry; a mismatch makes the entry a miss and it is recomputed.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use graphchi_core::euler_series::{EulerTable, TableKind};
use graphchi_core::exactnum::{BigInt, BigRational};
use serde_json::{json, Map, Value};
use sha2::{Digest, Sha256};
use thiserror::Error;

pub const CACHE_VERSION: u64 = 1;
/// Environment variable overriding the cache directory.
pub const CACHE_DIR_ENV: &str = "GRAPHCHI_CACHE_DIR";

#[derive(Debug, Error)]
pub enum CacheError {
    #[error("cache I/O error at {path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error("corrupt cache entry: {0}")]
    Corrupt(String),
    #[error("cache checksum mismatch")]
    Checksum,
    #[error("cache version {found} does not match {CACHE_VERSION}")]
    Version { found: u64 },
}

fn checksum(kind: TableKind, method: &str, table: &EulerTable) -> String {
    let mut h = Sha256::new();
    h.update(format!("{}|{}|{}|", kind.slug(), kind.index_name(), method));
    for (i, v) in table.iter() {
        h.update(format!("{i}:{v};"));
    }
    format!("{:x}", h.finalize())
}

pub fn table_to_json(table: &EulerTable) -> String {
    let values: Map<String, Value> = table.iter().map(|(i, v)| (i.to_string(), Value::String(v.to_string()))).collect();
    let doc = json!({
        "version": CACHE_VERSION,
        "kind": table.kind.slug(),
        "index": table.kind.index_name(),
        "method": table.method,
        "values": values,
        "checksum": checksum(table.kind, &table.method, table),
    });
    doc.to_string()
}

pub fn table_from_json(text: &str) -> Result<EulerTable, CacheError> {
    let doc: Value = serde_json::from_str(text).map_err(|e| CacheError::Corrupt(e.to_string()))?;
    let field = |name: &str| doc.get(name).ok_or_else(|| CacheError::Corrupt(format!("missing field {name:?}")));
    let version = field("version")?.as_u64().ok_or_else(|| CacheError::Corrupt("version is not an integer".into()))?;
    if version != CACHE_VERSION {
        return Err(CacheError::Version { found: version });
    }
    let text_field = |name: &str| -> Result<&str, CacheError> {
        field(name)?.as_str().ok_or_else(|| CacheError::Corrupt(format!("{name} is not a string")))
    };
    let kind = TableKind::from_slug(text_field("kind")?).ok_or_else(|| CacheError::Corrupt("unknown kind".into()))?;
    if text_field("index")? != kind.index_name() {
        return Err(CacheError::Corrupt("index name does not match kind".into()));
    }
    let method = text_field("method")?;
    let values = field("values")?.as_object().ok_or_else(|| CacheError::Corrupt("values is not an object".into()))?;
    let mut entries: Vec<(u32, BigInt)> = Vec::with_capacity(values.len());
    for (k, v) in values {
        let i: u32 = k.parse().map_err(|_| CacheError::Corrupt(format!("bad index {k:?}")))?;
        let s = v.as_str().ok_or_else(|| CacheError::Corrupt(format!("value at {k} is not a string")))?;
        let n = BigInt::from_str_radix(s, 10).map_err(|_| CacheError::Corrupt(format!("bad integer at {k}")))?;
        entries.push((i, n));
    }
    entries.sort_by_key(|e| e.0);
    let mut table = EulerTable::new(kind, method);
    for (i, n) in entries {
        table.push(i, &BigRational::from(n)).map_err(|e| CacheError::Corrupt(e.to_string()))?;
    }
    if text_field("checksum")? != checksum(kind, method, &table) {
        return Err(CacheError::Checksum);
    }
    Ok(table)
}

/// Serializes and parses back.
pub fn cache_roundtrip(table: &EulerTable) -> Result<EulerTable, CacheError> {
    table_from_json(&table_to_json(table))
}

/// The leading entries of `table` up to and including `top`.
pub fn truncate_table(table: &EulerTable, top: u32) -> EulerTable {
    let mut out = EulerTable::new(table.kind, table.method.clone());
    for (i, v) in table.iter().take_while(|(i, _)| *i <= top) {
        out.push(i, &BigRational::from(v)).expect("entries stay contiguous");
    }
    out
}

/// Writes via a temporary file in the same directory, then renames.
pub fn write_atomic(path: &Path, contents: &str) -> Result<(), CacheError> {
    let io = |source| CacheError::Io { path: path.to_path_buf(), source };
    let dir = path.parent().filter(|d| !d.as_os_str().is_empty()).unwrap_or(Path::new("."));
    fs::create_dir_all(dir).map_err(io)?;
    let name = path.file_name().map(|n| n.to_string_lossy().into_owned()).unwrap_or_default();
    let tmp = dir.join(format!(".{name}.{}.tmp", std::process::id()));
    let mut f = fs::File::create(&tmp).map_err(io)?;
    f.write_all(contents.as_bytes()).map_err(io)?;
    f.sync_all().map_err(io)?;
    fs::rename(&tmp, path).map_err(io)
}

#[derive(Debug, Clone)]
pub struct ResultCache {
    dir: PathBuf,
}

impl ResultCache {
    pub fn new(dir: impl Into<PathBuf>) -> Self {
        ResultCache { dir: dir.into() }
    }

    /// Explicit directory, else the environment override, else
    /// `$HOME/.cache/graphchi`; `None` if none of these is available.
    pub fn locate(explicit: Option<&Path>) -> Option<Self> {
        if let Some(d) = explicit {
            return Some(Self::new(d));
        }
        if let Some(d) = std::env::var_os(CACHE_DIR_ENV).filter(|d| !d.is_empty()) {
            return Some(Self::new(d));
        }
        std::env::var_os("HOME").map(|h| Self::new(PathBuf::from(h).join(".cache").join("graphchi")))
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    pub fn path(&self, kind: TableKind) -> PathBuf {
        self.dir.join(format!("{}.v{CACHE_VERSION}.json", kind.slug()))
    }

    /// `Ok(None)` when there is no entry.
    pub fn load(&self, kind: TableKind) -> Result<Option<EulerTable>, CacheError> {
        let path = self.path(kind);
        let text = match fs::read_to_string(&path) {
            Ok(t) => t,
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Ok(None),
            Err(source) => return Err(CacheError::Io { path, source }),
        };
        let table = table_from_json(&text)?;
        if table.kind != kind {
            return Err(CacheError::Corrupt(format!("file for {} holds {}", kind.slug(), table.kind.slug())));
        }
        Ok(Some(table))
    }

    pub fn store(&self, table: &EulerTable) -> Result<(), CacheError> {
        write_atomic(&self.path(table.kind), &table_to_json(table))
    }

    /// Cached table covering `top` (truncated to it), else `compute()`,
    /// which is then stored. Unreadable entries are recomputed; the returned
    /// flag says whether the cache was hit.
    pub fn get_or_compute<E>(
        &self,
        kind: TableKind,
        top: u32,
        compute: impl FnOnce() -> Result<EulerTable, E>,
    ) -> Result<(EulerTable, bool), E> {
        if let Ok(Some(t)) = self.load(kind) {
            if t.max_index().is_some_and(|m| m >= top) {
                return Ok((truncate_table(&t, top), true));
            }
        }
        let table = compute()?;
        // the cache is an optimisation, so a failed write only loses reuse
        let _ = self.store(&table);
        Ok((table, false))
    }
}
