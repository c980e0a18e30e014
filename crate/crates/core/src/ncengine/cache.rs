//! On-disk cache of graded basis tables.
//!
//! Entries are keyed by the SHA-256 of the canonical presentation JSON, the
//! engine version and the build parameters. Each file also stores a hash of
//! its payload; a mismatch (truncated or edited file) deletes the entry and
//! the table is rebuilt.

use std::fs;
use std::path::{Path as FsPath, PathBuf};

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use super::echelon::QVec;
use super::graded::{build_graded_basis, BasisElem, GradedBasisTable};
use super::presentation::AlgebraPresentation;
use crate::error::Result;
use crate::exact::RationalJson;

pub const ENGINE_VERSION: &str = "centext-engine/1";
pub const CACHE_ENV: &str = "CENTEXT_CACHE_DIR";
const SCHEMA: &str = "centext.table-cache/1";

fn hex(bytes: &[u8]) -> String {
    bytes.iter().map(|b| format!("{b:02x}")).collect()
}

pub fn sha256_hex(data: &[u8]) -> String {
    hex(&Sha256::digest(data))
}

/// Content hash of a presentation together with build parameters.
pub fn cache_key(p: &AlgebraPresentation, params: &str) -> String {
    cache_key_versioned(p, params, ENGINE_VERSION)
}

pub fn cache_key_versioned(p: &AlgebraPresentation, params: &str, version: &str) -> String {
    let canonical = serde_json::to_string(p).expect("presentation serializes");
    let mut h = Sha256::new();
    for part in [version, "\0", params, "\0", &canonical] {
        h.update(part.as_bytes());
    }
    hex(&h.finalize())
}

type SparseJson = Vec<(usize, RationalJson)>;

#[derive(Serialize, Deserialize)]
struct Payload {
    components: Vec<Vec<BasisElem>>,
    right: Vec<Vec<Vec<SparseJson>>>,
    terminated: bool,
}

#[derive(Serialize, Deserialize)]
struct Entry {
    schema: String,
    key: String,
    payload_sha256: String,
    payload: String,
}

fn to_json(v: &QVec) -> SparseJson {
    v.entries.iter().map(|(i, c)| (*i, RationalJson::from(c))).collect()
}

fn from_json(v: &SparseJson) -> Option<QVec> {
    let entries = v
        .iter()
        .map(|(i, c)| c.to_rational().ok().map(|r| (*i, r)))
        .collect::<Option<Vec<_>>>()?;
    Some(QVec::from_sorted(entries))
}

#[derive(Clone, Debug)]
pub struct TableCache {
    dir: PathBuf,
}

impl TableCache {
    pub fn new(dir: impl Into<PathBuf>) -> Self {
        TableCache { dir: dir.into() }
    }

    /// Cache rooted at `$CENTEXT_CACHE_DIR`, if set and non-empty.
    pub fn from_env() -> Option<Self> {
        std::env::var_os(CACHE_ENV).filter(|v| !v.is_empty()).map(Self::new)
    }

    pub fn dir(&self) -> &FsPath {
        &self.dir
    }

    fn path_for(&self, key: &str) -> PathBuf {
        self.dir.join(format!("{key}.json"))
    }

    pub fn load(&self, p: &AlgebraPresentation, max_degree: usize) -> Option<GradedBasisTable> {
        let key = cache_key(p, &format!("graded;max_degree={max_degree}"));
        let path = self.path_for(&key);
        let text = fs::read_to_string(&path).ok()?;
        let decoded = serde_json::from_str::<Entry>(&text).ok().and_then(|e| {
            let ok = e.schema == SCHEMA && e.key == key && sha256_hex(e.payload.as_bytes()) == e.payload_sha256;
            ok.then_some(e.payload)
        });
        let table = decoded.and_then(|payload| {
            let pl: Payload = serde_json::from_str(&payload).ok()?;
            let right = pl
                .right
                .iter()
                .map(|per_g| {
                    per_g
                        .iter()
                        .map(|col| col.iter().map(from_json).collect::<Option<Vec<_>>>())
                        .collect::<Option<Vec<_>>>()
                })
                .collect::<Option<Vec<_>>>()?;
            Some(GradedBasisTable::from_parts(p.clone(), pl.components, right, pl.terminated))
        });
        if table.is_none() {
            let _ = fs::remove_file(&path);
        }
        table
    }

    pub fn store(&self, t: &GradedBasisTable, max_degree: usize) -> Result<()> {
        let key = cache_key(&t.presentation, &format!("graded;max_degree={max_degree}"));
        let payload = Payload {
            components: t.components.clone(),
            right: t
                .right
                .iter()
                .map(|per_g| per_g.iter().map(|col| col.iter().map(to_json).collect()).collect())
                .collect(),
            terminated: t.terminated,
        };
        let payload = serde_json::to_string(&payload)?;
        let entry = Entry {
            schema: SCHEMA.into(),
            key: key.clone(),
            payload_sha256: sha256_hex(payload.as_bytes()),
            payload,
        };
        fs::create_dir_all(&self.dir)?;
        static SEQ: std::sync::atomic::AtomicU64 = std::sync::atomic::AtomicU64::new(0);
        let seq = SEQ.fetch_add(1, std::sync::atomic::Ordering::Relaxed);
        let tmp = self.dir.join(format!("{key}.tmp{}-{seq}", std::process::id()));
        fs::write(&tmp, serde_json::to_string(&entry)?)?;
        fs::rename(&tmp, self.path_for(&key))?;
        Ok(())
    }
}

/// `build_graded_basis` through an optional cache.
pub fn build_graded_basis_cached(
    p: &AlgebraPresentation,
    max_degree: usize,
    cache: Option<&TableCache>,
) -> Result<GradedBasisTable> {
    if let Some(c) = cache {
        if let Some(t) = c.load(p, max_degree) {
            return Ok(t);
        }
    }
    let t = build_graded_basis(p, max_degree)?;
    if let Some(c) = cache {
        // a failed write only costs a rebuild next time
        if let Err(e) = c.store(&t, max_degree) {
            eprintln!("warning: cache write to {} failed: {e}", c.dir().display());
        }
    }
    Ok(t)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::ri;

    fn cubic(c: i64) -> AlgebraPresentation {
        let mut p = AlgebraPresentation::new("cubic", 1);
        p.add_generator("x", 0, 0, 1);
        p.add_generator("y", 0, 0, 1);
        let xy = p.word("x y", 0).unwrap();
        let yx = p.word("y x", 0).unwrap();
        let xxx = p.word("x x x", 0).unwrap();
        let yy = p.word("y y", 0).unwrap();
        p.add_relation(vec![(ri(1), xy), (ri(-c), yx)]).unwrap();
        p.add_relation(vec![(ri(1), xxx)]).unwrap();
        p.add_relation(vec![(ri(1), yy)]).unwrap();
        p
    }

    #[test]
    fn keys_are_stable_and_sensitive() {
        let p = cubic(2);
        assert_eq!(cache_key(&p, "a"), cache_key(&cubic(2), "a"));
        assert_ne!(cache_key(&p, "a"), cache_key(&cubic(3), "a"));
        assert_ne!(cache_key(&p, "a"), cache_key(&p, "b"));
        assert_ne!(cache_key(&p, "a"), cache_key_versioned(&p, "a", "centext-engine/0"));
    }

    #[test]
    fn roundtrip_and_corruption() {
        let dir = std::env::temp_dir().join(format!("centext-cache-test-{}", std::process::id()));
        let cache = TableCache::new(&dir);
        let p = cubic(2);
        let built = build_graded_basis_cached(&p, 8, Some(&cache)).unwrap();
        let loaded = cache.load(&p, 8).expect("cached");
        assert_eq!(loaded.dims(), built.dims());
        assert_eq!(loaded.right, built.right);
        assert_eq!(loaded.left, built.left);

        let key = cache_key(&p, "graded;max_degree=8");
        let path = dir.join(format!("{key}.json"));
        let text = fs::read_to_string(&path).unwrap();
        fs::write(&path, text.replacen("\\\"terminated\\\":true", "\\\"terminated\\\":false", 1)).unwrap();
        assert!(cache.load(&p, 8).is_none());
        assert!(!path.exists());
        let rebuilt = build_graded_basis_cached(&p, 8, Some(&cache)).unwrap();
        assert_eq!(rebuilt.dims(), built.dims());
        let _ = fs::remove_dir_all(&dir);
    }
}
