use std::collections::HashMap;
use std::fs;
use std::path::{Path, PathBuf};
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::RwLock;

use serde::{Deserialize, Serialize};

use super::legs::LegConfig;
use crate::error::{Error, Result};
use crate::partitions::Partition;
use crate::series::{HalfLaurent, PSeries};

/// Environment variable naming the on-disk cache directory.
pub const CACHE_ENV: &str = "DTVERTEX_CACHE_DIR";

/// Coefficients `c_0..c_N` of `Ṽ_{λμν}` plus the normalized volume `|π_min|`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VertexRecord {
    pub legs: LegConfig,
    pub p_order: usize,
    pub counts: Vec<u64>,
    pub min_volume: i64,
}

#[derive(Serialize, Deserialize)]
struct RecordFile {
    key: String,
    lambda: Partition,
    mu: Partition,
    nu: Partition,
    p_order: usize,
    min_volume: i64,
    counts: Vec<String>,
}

impl VertexRecord {
    /// `λ|μ|ν|N`.
    pub fn key(&self) -> String {
        format!("{}|{}", self.legs.key(), self.p_order)
    }

    /// `Ṽ` as a p-series known on `[0, N]`.
    pub fn tilde(&self) -> PSeries {
        let value = HalfLaurent::from_p_coeffs(0, &self.counts);
        PSeries::new(value, 0, Some(2 * self.p_order as i64)).expect("counts fit their window")
    }

    /// `V = p^{|π_min|} Ṽ`.
    pub fn vertex(&self) -> PSeries {
        self.tilde().shift(2 * self.min_volume)
    }

    /// The same record cut down to order `n ≤ p_order`.
    pub fn truncated(&self, n: usize) -> VertexRecord {
        assert!(n <= self.p_order);
        VertexRecord { counts: self.counts[..=n].to_vec(), p_order: n, ..self.clone() }
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self.file_form()).expect("record serializes")
    }

    pub fn from_json(v: serde_json::Value) -> Result<Self> {
        let f: RecordFile = serde_json::from_value(v)?;
        let counts = f
            .counts
            .iter()
            .map(|c| c.parse().map_err(|_| Error::Malformed(format!("vertex count {c:?}"))))
            .collect::<Result<Vec<u64>>>()?;
        let rec = VertexRecord {
            legs: LegConfig::new(f.lambda, f.mu, f.nu),
            p_order: f.p_order,
            counts,
            min_volume: f.min_volume,
        };
        if rec.counts.len() != rec.p_order + 1 || rec.key() != f.key {
            return Err(Error::Malformed(format!("vertex record {} is inconsistent", f.key)));
        }
        Ok(rec)
    }

    fn file_form(&self) -> RecordFile {
        RecordFile {
            key: self.key(),
            lambda: self.legs.lambda.clone(),
            mu: self.legs.mu.clone(),
            nu: self.legs.nu.clone(),
            p_order: self.p_order,
            min_volume: self.min_volume,
            counts: self.counts.iter().map(u64::to_string).collect(),
        }
    }
}

/// File name for a cache key: `|` becomes `_` and `,` becomes `-`.
pub(crate) fn cache_file_name(key: &str) -> String {
    format!("v_{}.json", key.replace('|', "_").replace(',', "-"))
}

/// In-memory and optional on-disk cache of vertex records.
///
/// A memory entry at order `N′ ≥ N` is reused by truncation; disk entries
/// are looked up by exact key only. Unreadable or unwritable cache files
/// are ignored, never fatal.
#[derive(Default)]
pub struct VertexStore {
    dir: Option<PathBuf>,
    memory: RwLock<HashMap<LegConfig, VertexRecord>>,
    computed: AtomicUsize,
    disk_hits: AtomicUsize,
}

impl VertexStore {
    /// Memory-only store.
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with_dir(dir: impl Into<PathBuf>) -> Self {
        VertexStore { dir: Some(dir.into()), ..Self::default() }
    }

    /// Uses `dir` if given, else `$DTVERTEX_CACHE_DIR` if set.
    pub fn from_env(dir: Option<PathBuf>) -> Self {
        match dir.or_else(|| std::env::var_os(CACHE_ENV).map(PathBuf::from)) {
            Some(d) => Self::with_dir(d),
            None => Self::new(),
        }
    }

    pub fn dir(&self) -> Option<&Path> {
        self.dir.as_deref()
    }

    /// Number of records computed by enumeration (not served from a cache).
    pub fn computed(&self) -> usize {
        self.computed.load(Ordering::Relaxed)
    }

    pub fn disk_hits(&self) -> usize {
        self.disk_hits.load(Ordering::Relaxed)
    }

    pub fn get(&self, cfg: &LegConfig, n: i64) -> Result<VertexRecord> {
        if n < 0 {
            return Err(Error::NegativeOrder(n));
        }
        let n = n as usize;
        if let Some(rec) = self.memory.read().expect("cache lock").get(cfg) {
            if rec.p_order >= n {
                return Ok(rec.truncated(n));
            }
        }
        let rec = match self.read_disk(cfg, n) {
            Some(rec) => {
                self.disk_hits.fetch_add(1, Ordering::Relaxed);
                rec
            }
            None => {
                let rec = super::tilde_vertex(cfg, n as i64)?;
                self.computed.fetch_add(1, Ordering::Relaxed);
                self.write_disk(&rec);
                rec
            }
        };
        let mut mem = self.memory.write().expect("cache lock");
        let keep = mem.get(cfg).is_none_or(|old| old.p_order < rec.p_order);
        if keep {
            mem.insert(cfg.clone(), rec.clone());
        }
        Ok(rec)
    }

    /// `Ṽ_{λμν}` to order `n`.
    pub fn tilde(&self, cfg: &LegConfig, n: i64) -> Result<PSeries> {
        Ok(self.get(cfg, n)?.tilde())
    }

    fn path_for(&self, key: &str) -> Option<PathBuf> {
        self.dir.as_ref().map(|d| d.join(cache_file_name(key)))
    }

    fn read_disk(&self, cfg: &LegConfig, n: usize) -> Option<VertexRecord> {
        let key = format!("{}|{}", cfg.key(), n);
        let text = fs::read_to_string(self.path_for(&key)?).ok()?;
        let rec = VertexRecord::from_json(serde_json::from_str(&text).ok()?).ok()?;
        (rec.legs == *cfg && rec.p_order == n).then_some(rec)
    }

    fn write_disk(&self, rec: &VertexRecord) {
        let Some(path) = self.path_for(&rec.key()) else { return };
        let Some(dir) = path.parent() else { return };
        if fs::create_dir_all(dir).is_err() {
            return;
        }
        // write-then-rename so concurrent readers never see a partial file
        let tmp = path.with_extension(format!("tmp{}", std::process::id()));
        let body = serde_json::to_string_pretty(&rec.to_json()).expect("record serializes");
        if fs::write(&tmp, body).is_ok() && fs::rename(&tmp, &path).is_err() {
            let _ = fs::remove_file(&tmp);
        }
    }
}
