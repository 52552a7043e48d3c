//! Flat-file cache of per-`n` atlas records.
//!
//! One JSON file per `n`, named by `n` and schema version. Unreadable or
//! stale files are misses; writes go through a temp file and a rename.

use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;
use std::time::{SystemTime, UNIX_EPOCH};

use support_atlas::io::{AtlasRecord, SCHEMA_VERSION};

#[derive(Debug)]
pub enum CacheLookup {
    Hit(AtlasRecord),
    Miss,
    /// The file exists but holds another schema version or a different `n`.
    Stale,
    /// The file exists but does not parse.
    Corrupt(String),
}

#[derive(Clone, Debug)]
pub struct Cache {
    dir: PathBuf,
}

impl Cache {
    pub fn new(dir: impl Into<PathBuf>) -> Self {
        Self { dir: dir.into() }
    }

    pub fn path_for(&self, n: u32) -> PathBuf {
        self.dir.join(format!("atlas-n{n}-v{SCHEMA_VERSION}.json"))
    }

    pub fn lookup(&self, n: u32) -> CacheLookup {
        let path = self.path_for(n);
        let text = match fs::read_to_string(&path) {
            Ok(t) => t,
            Err(e) if e.kind() == io::ErrorKind::NotFound => return CacheLookup::Miss,
            Err(e) => return CacheLookup::Corrupt(e.to_string()),
        };
        match AtlasRecord::from_json(&text) {
            Ok(rec) if rec.schema_version == SCHEMA_VERSION && rec.n == n => CacheLookup::Hit(rec),
            Ok(_) => CacheLookup::Stale,
            Err(e) => CacheLookup::Corrupt(e.to_string()),
        }
    }

    /// The cached record for `n`, if a valid one exists. Corrupt files are
    /// logged and treated as absent.
    pub fn get(&self, n: u32) -> Option<AtlasRecord> {
        match self.lookup(n) {
            CacheLookup::Hit(rec) => Some(rec),
            CacheLookup::Miss | CacheLookup::Stale => None,
            CacheLookup::Corrupt(why) => {
                log::warn!(
                    "ignoring corrupt cache file {}: {why}",
                    self.path_for(n).display()
                );
                None
            }
        }
    }

    pub fn put(&self, record: &AtlasRecord) -> io::Result<()> {
        fs::create_dir_all(&self.dir)?;
        let mut stamped = record.clone();
        stamped.generated_at = SystemTime::now()
            .duration_since(UNIX_EPOCH)
            .ok()
            .map(|d| d.as_secs());
        let mut tmp = tempfile::NamedTempFile::new_in(&self.dir)?;
        tmp.write_all(stamped.to_json().as_bytes())?;
        tmp.as_file().sync_all()?;
        tmp.persist(self.path_for(record.n)).map_err(|e| e.error)?;
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use support_atlas::StratumAtlas;

    fn record(n: u32) -> AtlasRecord {
        AtlasRecord::from_atlas(&StratumAtlas::compute(n).unwrap())
    }

    #[test]
    fn put_then_get() {
        let dir = tempfile::tempdir().unwrap();
        let cache = Cache::new(dir.path());
        let rec = record(12);
        cache.put(&rec).unwrap();
        let back = cache.get(12).unwrap();
        assert!(back.generated_at.is_some());
        assert_eq!(back.content_hash(), rec.content_hash());
        assert_eq!(back.into_atlas(), rec.into_atlas());
    }

    #[test]
    fn absent_file_is_a_miss() {
        let dir = tempfile::tempdir().unwrap();
        let cache = Cache::new(dir.path().join("not-yet-created"));
        assert!(matches!(cache.lookup(7), CacheLookup::Miss));
        assert!(cache.get(7).is_none());
    }

    #[test]
    fn truncated_file_is_a_miss() {
        let dir = tempfile::tempdir().unwrap();
        let cache = Cache::new(dir.path());
        cache.put(&record(9)).unwrap();
        let path = cache.path_for(9);
        let text = fs::read_to_string(&path).unwrap();
        fs::write(&path, &text[..text.len() / 3]).unwrap();
        assert!(matches!(cache.lookup(9), CacheLookup::Corrupt(_)));
        assert!(cache.get(9).is_none());
    }

    #[test]
    fn other_schema_version_is_stale() {
        let dir = tempfile::tempdir().unwrap();
        let cache = Cache::new(dir.path());
        let mut rec = record(5);
        rec.schema_version = SCHEMA_VERSION + 1;
        fs::write(cache.path_for(5), rec.to_json()).unwrap();
        assert!(matches!(cache.lookup(5), CacheLookup::Stale));
        cache.put(&record(5)).unwrap();
        assert!(matches!(cache.lookup(5), CacheLookup::Hit(_)));
    }
}
