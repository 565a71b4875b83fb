//! Content-addressed on-disk cache of JSON reports.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::caps::Caps;
use crate::error::Result;

pub const ENGINE_VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CacheKey {
    pub expr: String,
    /// Property name or check id, plus any selector.
    pub query: String,
    pub caps: String,
}

impl CacheKey {
    pub fn new(expr: &str, query: &str, caps: &Caps) -> CacheKey {
        CacheKey {
            expr: expr.to_string(),
            query: query.to_string(),
            caps: caps.fingerprint(),
        }
    }

    pub fn digest(&self) -> String {
        let mut h = Sha256::new();
        for part in [&self.expr, &self.query, &self.caps] {
            h.update(part.as_bytes());
            h.update([0]);
        }
        hex::encode(h.finalize())
    }
}

#[derive(Debug, Serialize, Deserialize)]
struct Entry<T> {
    engine_version: String,
    key: CacheKey,
    report: T,
}

#[derive(Debug, Clone)]
pub struct Cache {
    dir: PathBuf,
}

impl Cache {
    pub fn open(dir: impl Into<PathBuf>) -> Result<Cache> {
        let dir = dir.into();
        fs::create_dir_all(&dir)?;
        Ok(Cache { dir })
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    fn path(&self, key: &CacheKey) -> PathBuf {
        self.dir.join(format!("{}.json", key.digest()))
    }

    /// Returns the stored report for `key`. Entries written by another
    /// engine version, under other caps, or that fail to parse are misses.
    pub fn load<T: DeserializeOwned>(&self, key: &CacheKey) -> Option<T> {
        let path = self.path(key);
        let text = fs::read_to_string(&path).ok()?;
        match serde_json::from_str::<Entry<T>>(&text) {
            Ok(e) if e.key == *key && e.engine_version == ENGINE_VERSION => Some(e.report),
            Ok(_) => None,
            Err(err) => {
                log::warn!("ignoring corrupt cache entry {}: {err}", path.display());
                None
            }
        }
    }

    /// Writes atomically: a temporary file in the cache directory is
    /// renamed over the target.
    pub fn store<T: Serialize>(&self, key: &CacheKey, report: &T) -> Result<()> {
        let entry = Entry {
            engine_version: ENGINE_VERSION.to_string(),
            key: key.clone(),
            report,
        };
        let mut tmp = tempfile::NamedTempFile::new_in(&self.dir)?;
        serde_json::to_writer_pretty(&mut tmp, &entry)?;
        tmp.write_all(b"\n")?;
        tmp.persist(self.path(key)).map_err(|e| e.error)?;
        Ok(())
    }
}
