//! On-disk cache of closed groups, keyed by a hash of the generating set.
//!
//! Entries hold the element list, the BFS skeleton and optionally the
//! fingerprint. Entries written by a different engine version, or that fail
//! structural checks, are ignored and rebuilt.

use std::fs;
use std::path::{Path, PathBuf};

use indexmap::IndexSet;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use super::{FiniteMatrixGroup, GroupFingerprint, Skeleton, ROOT};
use crate::error::{Error, Result};
use crate::linal::GateMatrix;

/// Bumped whenever the payload layout or element ordering changes.
pub const ENGINE_VERSION: &str = concat!(env!("CARGO_PKG_VERSION"), "+cache1");

/// Environment variable naming the default cache directory.
pub const CACHE_DIR_ENV: &str = "CLIFFSUB_CACHE_DIR";

#[derive(Serialize, Deserialize)]
struct Payload {
    version: String,
    dim: usize,
    generators: Vec<GateMatrix>,
    elements: Vec<GateMatrix>,
    parent: Vec<u32>,
    via: Vec<u8>,
    right: Vec<Vec<u32>>,
    #[serde(default)]
    fingerprint: Option<GroupFingerprint>,
}

/// Cache key: SHA-256 over the sorted canonical generator forms and the
/// engine version, hex encoded.
pub fn cache_key(gens: &[GateMatrix]) -> String {
    let mut keys: Vec<String> = gens.iter().map(|g| g.canonical_key()).collect();
    keys.sort();
    let mut h = Sha256::new();
    h.update(ENGINE_VERSION.as_bytes());
    for k in &keys {
        h.update(b"\n");
        h.update(k.as_bytes());
    }
    hex::encode(h.finalize())
}

#[derive(Debug, Clone)]
pub struct GroupCache {
    dir: PathBuf,
}

impl GroupCache {
    pub fn new(dir: impl Into<PathBuf>) -> Self {
        GroupCache { dir: dir.into() }
    }

    /// Cache rooted at `$CLIFFSUB_CACHE_DIR`, if set.
    pub fn from_env() -> Option<Self> {
        std::env::var_os(CACHE_DIR_ENV).filter(|v| !v.is_empty()).map(Self::new)
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    fn path_for(&self, key: &str) -> PathBuf {
        self.dir.join(format!("{key}.json"))
    }

    /// The cached group for `gens`, or `None` on a miss or an unusable entry.
    pub fn load(&self, gens: &[GateMatrix]) -> Option<(FiniteMatrixGroup, Option<GroupFingerprint>)> {
        let text = fs::read(self.path_for(&cache_key(gens))).ok()?;
        let p: Payload = serde_json::from_slice(&text).ok()?;
        if p.version != ENGINE_VERSION {
            return None;
        }
        let n = p.elements.len();
        let sound = n > 0
            && p.parent.len() == n
            && p.via.len() == n
            && p.via[0] == ROOT
            && p.right.len() == p.generators.len()
            && p.right.iter().all(|r| r.len() == n && r.iter().all(|&x| (x as usize) < n))
            && p.parent.iter().enumerate().skip(1).all(|(x, &q)| (q as usize) < x)
            && p.via.iter().skip(1).all(|&v| (v as usize) < p.generators.len());
        if !sound {
            return None;
        }
        let mut wanted: Vec<String> = gens.iter().map(|g| g.canonical_key()).collect();
        let mut stored: Vec<String> = p.generators.iter().map(|g| g.canonical_key()).collect();
        wanted.sort();
        stored.sort();
        if wanted != stored {
            return None;
        }
        let elements: IndexSet<GateMatrix> = p.elements.into_iter().collect();
        if elements.len() != n {
            return None;
        }
        let sk = Skeleton { dim: p.dim, generators: p.generators, elements, parent: p.parent, via: p.via, right: p.right };
        Some((FiniteMatrixGroup::finish(sk), p.fingerprint))
    }

    /// Writes `g` atomically (temporary file then rename).
    pub fn store(&self, g: &FiniteMatrixGroup, fingerprint: Option<&GroupFingerprint>) -> Result<PathBuf> {
        fs::create_dir_all(&self.dir)?;
        let (parent, via, right) = g.skeleton_parts();
        let payload = Payload {
            version: ENGINE_VERSION.to_string(),
            dim: g.dim(),
            generators: g.generators().to_vec(),
            elements: g.elements().iter().cloned().collect(),
            parent: parent.to_vec(),
            via: via.to_vec(),
            right: right.to_vec(),
            fingerprint: fingerprint.cloned(),
        };
        let path = self.path_for(&cache_key(g.generators()));
        let tmp = path.with_extension("json.tmp");
        fs::write(&tmp, serde_json::to_vec(&payload)?)?;
        fs::rename(&tmp, &path)?;
        Ok(path)
    }

    /// Loads `gens` from the cache or closes it and stores the result.
    pub fn get_or_build(&self, gens: &[GateMatrix], cap: usize) -> Result<FiniteMatrixGroup> {
        if let Some((g, _)) = self.load(gens) {
            return Ok(g);
        }
        let g = FiniteMatrixGroup::closure(gens, cap)?;
        self.store(&g, None)?;
        Ok(g)
    }

    /// `(file name, size in bytes)` of every entry.
    pub fn entries(&self) -> Result<Vec<(String, u64)>> {
        let mut out = Vec::new();
        let rd = match fs::read_dir(&self.dir) {
            Ok(rd) => rd,
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Ok(out),
            Err(e) => return Err(Error::Io(e)),
        };
        for e in rd {
            let e = e?;
            let name = e.file_name().to_string_lossy().into_owned();
            if name.ends_with(".json") {
                out.push((name, e.metadata()?.len()));
            }
        }
        out.sort();
        Ok(out)
    }

    /// Deletes every entry; returns how many were removed.
    pub fn clear(&self) -> Result<usize> {
        let entries = self.entries()?;
        for (name, _) in &entries {
            fs::remove_file(self.dir.join(name))?;
        }
        Ok(entries.len())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gates::parse_generator_list;
    use crate::group::IndexGroup;

    #[test]
    fn round_trip_preserves_structure() {
        let dir = tempfile::tempdir().unwrap();
        let cache = GroupCache::new(dir.path());
        let gens = parse_generator_list("S, H").unwrap();
        let built = cache.get_or_build(&gens, 1000).unwrap();
        let (loaded, _) = cache.load(&gens).unwrap();
        assert_eq!(loaded.order(), built.order());
        for a in 0..built.size() as u32 {
            for b in 0..built.size() as u32 {
                assert_eq!(loaded.element(loaded.mul(a, b)), built.element(built.mul(a, b)));
            }
        }
        assert_eq!(cache.entries().unwrap().len(), 1);
    }

    #[test]
    fn key_ignores_generator_order() {
        let a = parse_generator_list("S, H").unwrap();
        let b = parse_generator_list("H, S").unwrap();
        assert_eq!(cache_key(&a), cache_key(&b));
        assert_ne!(cache_key(&a), cache_key(&parse_generator_list("S").unwrap()));
    }

    #[test]
    fn corrupt_and_stale_entries_are_misses() {
        let dir = tempfile::tempdir().unwrap();
        let cache = GroupCache::new(dir.path());
        let gens = parse_generator_list("X, Z").unwrap();
        let path = cache.store(&FiniteMatrixGroup::closure(&gens, 100).unwrap(), None).unwrap();
        let mut v: serde_json::Value = serde_json::from_slice(&fs::read(&path).unwrap()).unwrap();
        v["version"] = "0.0.0".into();
        fs::write(&path, serde_json::to_vec(&v).unwrap()).unwrap();
        assert!(cache.load(&gens).is_none());
        fs::write(&path, b"{not json").unwrap();
        assert!(cache.load(&gens).is_none());
        assert_eq!(cache.get_or_build(&gens, 100).unwrap().order(), 8);
        assert!(cache.load(&gens).is_some());
        assert_eq!(cache.clear().unwrap(), 1);
    }
}
