//! Content-addressed page store: `objects/<sha256>.json` plus `manifest.json`.

use std::fs;
use std::path::{Path, PathBuf};
use std::sync::Mutex;
use std::time::{SystemTime, UNIX_EPOCH};

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::{LmfdbError, Result};

pub const FORMAT_VERSION: u32 = 1;
pub const ENDPOINT: &str = "av_fq_isog";

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ManifestEntry {
    pub endpoint: String,
    pub format_version: u32,
    pub q: u64,
    pub p_rank: Option<u32>,
    pub count: usize,
    /// Object digests in page order.
    pub pages: Vec<String>,
    /// Seconds since the epoch; 0 for bundled fixtures.
    pub fetched_at: u64,
}

impl ManifestEntry {
    fn same_key(&self, q: u64, p_rank: Option<u32>) -> bool {
        self.endpoint == ENDPOINT && self.format_version == FORMAT_VERSION && self.q == q && self.p_rank == p_rank
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Manifest {
    pub format_version: u32,
    pub entries: Vec<ManifestEntry>,
}

pub fn digest(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

pub fn now_secs() -> u64 {
    SystemTime::now().duration_since(UNIX_EPOCH).map(|d| d.as_secs()).unwrap_or(0)
}

#[derive(Debug)]
pub struct Store {
    root: PathBuf,
    write_lock: Mutex<()>,
}

impl Store {
    pub fn new(root: impl Into<PathBuf>) -> Self {
        Store { root: root.into(), write_lock: Mutex::new(()) }
    }

    pub fn root(&self) -> &Path {
        &self.root
    }

    fn manifest_path(&self) -> PathBuf {
        self.root.join("manifest.json")
    }

    pub fn object_path(&self, digest: &str) -> PathBuf {
        self.root.join("objects").join(format!("{digest}.json"))
    }

    pub fn manifest(&self) -> Result<Manifest> {
        match fs::read(self.manifest_path()) {
            Ok(bytes) => serde_json::from_slice(&bytes).map_err(|e| LmfdbError::Parse {
                message: format!("manifest: {e}"),
                document: self.manifest_path(),
            }),
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => {
                Ok(Manifest { format_version: FORMAT_VERSION, entries: Vec::new() })
            }
            Err(e) => Err(e.into()),
        }
    }

    pub fn lookup(&self, q: u64, p_rank: Option<u32>) -> Result<Option<ManifestEntry>> {
        Ok(self.manifest()?.entries.into_iter().find(|e| e.same_key(q, p_rank)))
    }

    /// Reads an object and checks that its contents hash to its name.
    pub fn get_object(&self, digest_hex: &str) -> Result<Vec<u8>> {
        let path = self.object_path(digest_hex);
        let bytes = fs::read(&path)?;
        if digest(&bytes) != digest_hex {
            return Err(LmfdbError::Parse { message: "object hash mismatch".into(), document: path });
        }
        Ok(bytes)
    }

    pub fn put_object(&self, bytes: &[u8]) -> Result<String> {
        let d = digest(bytes);
        let path = self.object_path(&d);
        if !path.exists() {
            fs::create_dir_all(path.parent().expect("objects dir"))?;
            write_atomic(&path, bytes)?;
        }
        Ok(d)
    }

    /// Replaces the entry with the same key, re-reading the manifest under
    /// the lock so concurrent writers in this process do not drop entries.
    pub fn record(&self, entry: ManifestEntry) -> Result<()> {
        let _guard = self.write_lock.lock().unwrap_or_else(|e| e.into_inner());
        let mut m = self.manifest()?;
        m.format_version = FORMAT_VERSION;
        m.entries.retain(|e| !e.same_key(entry.q, entry.p_rank));
        m.entries.push(entry);
        m.entries.sort_by_key(|e| (e.q, e.p_rank));
        let body = serde_json::to_vec_pretty(&m).expect("manifest serialises");
        fs::create_dir_all(&self.root)?;
        write_atomic(&self.manifest_path(), &body)
    }
}

fn write_atomic(path: &Path, bytes: &[u8]) -> Result<()> {
    use std::io::Write;
    let mut tmp = tempfile::NamedTempFile::new_in(path.parent().unwrap_or(Path::new(".")))?;
    tmp.write_all(bytes)?;
    tmp.as_file().sync_all()?;
    tmp.persist(path).map_err(|e| LmfdbError::Io(e.to_string()))?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip() {
        let dir = tempfile::tempdir().unwrap();
        let store = Store::new(dir.path());
        assert!(store.lookup(3, None).unwrap().is_none());
        let d = store.put_object(b"{\"data\": [], \"next\": null}").unwrap();
        let entry = ManifestEntry {
            endpoint: ENDPOINT.into(),
            format_version: FORMAT_VERSION,
            q: 3,
            p_rank: None,
            count: 0,
            pages: vec![d.clone()],
            fetched_at: 7,
        };
        store.record(entry.clone()).unwrap();
        store.record(ManifestEntry { q: 5, ..entry.clone() }).unwrap();
        assert_eq!(store.lookup(3, None).unwrap(), Some(entry.clone()));
        assert!(store.lookup(3, Some(0)).unwrap().is_none());
        store.record(ManifestEntry { fetched_at: 9, ..entry }).unwrap();
        assert_eq!(store.manifest().unwrap().entries.len(), 2);
        assert_eq!(store.get_object(&d).unwrap(), b"{\"data\": [], \"next\": null}");
        fs::write(store.object_path(&d), b"tampered").unwrap();
        assert!(matches!(store.get_object(&d), Err(LmfdbError::Parse { .. })));
    }
}
