//! Content-addressed on-disk cache of irreducible sets.
//!
//! One JSON file per `(group, prime, seed)`. A file whose key or checksum
//! does not match, or whose contents fail re-verification, is a miss.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use tannaka_core::exactla::Fp;
use tannaka_core::groups::FiniteGroup;
use tannaka_core::reptheory::{irreducibles, IrrSet, IrrepData};

const CACHE_SCHEMA: &str = "tannaka.irreps-cache/1";

#[derive(Serialize, Deserialize)]
struct Entry {
    schema: String,
    key: String,
    checksum: String,
    irreps: Vec<IrrepData>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Lookup {
    Hit,
    Miss,
    Disabled,
}

pub struct Cache {
    dir: Option<PathBuf>,
}

fn sha256_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

/// Key over the Cayley table and generators, which fix element numbering.
pub fn key(group: &FiniteGroup, p: u64, seed: u64) -> String {
    let material = serde_json::to_string(&(CACHE_SCHEMA, group.cayley(), group.generators(), p, seed)).expect("serializable");
    sha256_hex(material.as_bytes())
}

impl Cache {
    pub fn new(dir: Option<PathBuf>) -> Self {
        Cache { dir }
    }

    fn path(dir: &Path, key: &str) -> PathBuf {
        dir.join(format!("irreps-{key}.json"))
    }

    /// Cached irreducibles when valid, otherwise computed and stored.
    pub fn irreducibles(&self, group: &Arc<FiniteGroup>, field: Fp, seed: u64) -> tannaka_core::Result<(IrrSet, Lookup)> {
        let Some(dir) = &self.dir else {
            return Ok((irreducibles(group, field, seed)?, Lookup::Disabled));
        };
        let key = key(group, field.p(), seed);
        let path = Self::path(dir, &key);
        if let Some(set) = Self::load(&path, &key, group, field) {
            return Ok((set, Lookup::Hit));
        }
        let set = irreducibles(group, field, seed)?;
        if let Err(e) = Self::store(dir, &path, &key, &set) {
            eprintln!("warning: could not write cache entry {}: {e}", path.display());
        }
        Ok((set, Lookup::Miss))
    }

    fn load(path: &Path, key: &str, group: &Arc<FiniteGroup>, field: Fp) -> Option<IrrSet> {
        let text = fs::read_to_string(path).ok()?;
        let entry: Entry = match serde_json::from_str(&text) {
            Ok(e) => e,
            Err(e) => {
                eprintln!("warning: unreadable cache entry {}: {e}", path.display());
                return None;
            }
        };
        let payload = serde_json::to_string(&entry.irreps).ok()?;
        if entry.schema != CACHE_SCHEMA || entry.key != key || entry.checksum != sha256_hex(payload.as_bytes()) {
            eprintln!("warning: cache entry {} failed its checksum; recomputing", path.display());
            return None;
        }
        match IrrSet::import(group.clone(), field, entry.irreps) {
            Ok(set) => Some(set),
            Err(e) => {
                eprintln!("warning: cache entry {} failed verification: {e}", path.display());
                None
            }
        }
    }

    fn store(dir: &Path, path: &Path, key: &str, set: &IrrSet) -> std::io::Result<()> {
        fs::create_dir_all(dir)?;
        let irreps = set.export();
        let payload = serde_json::to_string(&irreps)?;
        let entry = Entry {
            schema: CACHE_SCHEMA.to_string(),
            key: key.to_string(),
            checksum: sha256_hex(payload.as_bytes()),
            irreps,
        };
        let tmp = dir.join(format!(".irreps-{key}.{}.tmp", std::process::id()));
        {
            let mut file = fs::File::create(&tmp)?;
            file.write_all(serde_json::to_string(&entry)?.as_bytes())?;
            file.sync_all()?;
        }
        fs::rename(&tmp, path)
    }
}
