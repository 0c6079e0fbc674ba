//! On-disk character-table cache keyed by canonical spec string.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::sync::Mutex;

use codegree_core::builders::GroupSpec;
use codegree_core::chartab::{character_table, CharacterTable, TableJson};
use codegree_core::perm::PermGroup;
use codegree_core::Config;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

/// Bumped whenever the payload layout or canonical orders change.
pub const FORMAT_VERSION: u32 = 1;

pub const CACHE_ENV: &str = "CODEGREE_LAB_CACHE";

#[derive(Serialize, Deserialize)]
struct CacheEntry {
    version: u32,
    key: String,
    checksum: String,
    payload: TableJson,
}

/// How a lookup was answered.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Lookup {
    Hit,
    Miss,
    Stale,
    Corrupt(String),
}

pub struct Cache {
    dir: PathBuf,
    write_lock: Mutex<()>,
}

fn hex_sha256(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

impl Cache {
    /// The environment variable wins over the command-line directory.
    pub fn resolve_dir(flag: Option<&Path>) -> Option<PathBuf> {
        match std::env::var_os(CACHE_ENV) {
            Some(v) if !v.is_empty() => Some(PathBuf::from(v)),
            _ => flag.map(Path::to_path_buf),
        }
    }

    pub fn open(dir: impl Into<PathBuf>) -> std::io::Result<Self> {
        let dir = dir.into();
        fs::create_dir_all(&dir)?;
        Ok(Cache {
            dir,
            write_lock: Mutex::new(()),
        })
    }

    pub fn path_for(&self, spec: &GroupSpec) -> PathBuf {
        let key = format!("{spec}\n{FORMAT_VERSION}");
        self.dir
            .join(format!("{}.json", hex_sha256(key.as_bytes())))
    }

    pub fn load(
        &self,
        spec: &GroupSpec,
        group: &PermGroup,
        config: &Config,
    ) -> (Option<CharacterTable>, Lookup) {
        let Ok(bytes) = fs::read(self.path_for(spec)) else {
            return (None, Lookup::Miss);
        };
        let entry: CacheEntry = match serde_json::from_slice(&bytes) {
            Ok(e) => e,
            Err(e) => return (None, Lookup::Corrupt(format!("unreadable entry: {e}"))),
        };
        if entry.version != FORMAT_VERSION {
            return (None, Lookup::Stale);
        }
        if entry.key != spec.to_string() {
            return (None, Lookup::Corrupt("key mismatch".into()));
        }
        let payload = serde_json::to_vec(&entry.payload).expect("table JSON serializes");
        if hex_sha256(&payload) != entry.checksum {
            return (None, Lookup::Corrupt("checksum mismatch".into()));
        }
        match entry.payload.into_table(group, config) {
            Ok(t) => (Some(t), Lookup::Hit),
            Err(e) => (None, Lookup::Corrupt(e.to_string())),
        }
    }

    /// Writes through a temporary file and renames it into place.
    pub fn store(&self, spec: &GroupSpec, table: &CharacterTable) -> anyhow::Result<()> {
        let key = spec.to_string();
        let payload = table.to_json(&key)?;
        let checksum = hex_sha256(&serde_json::to_vec(&payload)?);
        let entry = CacheEntry {
            version: FORMAT_VERSION,
            key,
            checksum,
            payload,
        };
        let bytes = serde_json::to_vec(&entry)?;
        let _guard = self.write_lock.lock().unwrap_or_else(|p| p.into_inner());
        let mut tmp = tempfile::NamedTempFile::new_in(&self.dir)?;
        tmp.write_all(&bytes)?;
        tmp.persist(self.path_for(spec))?;
        Ok(())
    }

    /// Loads the table, or computes and stores it. Unusable entries are
    /// reported with a warning and recomputed.
    pub fn table(
        &self,
        spec: &GroupSpec,
        group: &PermGroup,
        config: &Config,
    ) -> anyhow::Result<(CharacterTable, Lookup)> {
        let (cached, status) = self.load(spec, group, config);
        if let Some(t) = cached {
            return Ok((t, status));
        }
        if let Lookup::Corrupt(why) = &status {
            log::warn!("cache entry for {spec} ignored ({why}); recomputing");
        }
        let table = character_table(group, config)?;
        self.store(spec, &table)?;
        Ok((table, status))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use codegree_core::builders::build;

    #[test]
    fn keys_are_canonical() {
        let dir = tempfile::tempdir().unwrap();
        let cache = Cache::open(dir.path()).unwrap();
        let a = crate::dsl::parse_spec("wr( alt(5), cyc(2) )").unwrap();
        let b = crate::dsl::parse_spec("Wr(Alt(5),Cyc(2))").unwrap();
        assert_eq!(cache.path_for(&a), cache.path_for(&b));
        assert_ne!(cache.path_for(&a), cache.path_for(&GroupSpec::Alt(5)));
    }

    #[test]
    fn miss_then_hit() {
        let dir = tempfile::tempdir().unwrap();
        let cache = Cache::open(dir.path()).unwrap();
        let spec = GroupSpec::Sym(3);
        let g = build(&spec).unwrap();
        let c = Config::default();
        assert_eq!(cache.table(&spec, &g, &c).unwrap().1, Lookup::Miss);
        assert_eq!(cache.table(&spec, &g, &c).unwrap().1, Lookup::Hit);
    }
}
