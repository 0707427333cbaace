//! The on-disk β cache: {"entries": {"p1,p2": {"x": "..", "y": "..", "z": ".."}}}.

use std::collections::BTreeMap;
use std::fs::{self, File, OpenOptions};
use std::io::ErrorKind;
use std::path::{Path, PathBuf};

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::conic::{self, RedeiBeta};
use crate::modarith::OddPrime;
use crate::redei::BetaCache;

pub const CACHE_ENV: &str = "TRIPLESYM_BETA_CACHE";

#[derive(Debug, Default, Serialize, Deserialize)]
struct BetaCacheFile {
    entries: BTreeMap<String, BetaEntry>,
}

#[derive(Debug, Serialize, Deserialize)]
struct BetaEntry {
    x: String,
    y: String,
    z: String,
}

/// $TRIPLESYM_BETA_CACHE, else $XDG_DATA_HOME/triplesym, else
/// ~/.local/share/triplesym.
pub fn default_path() -> Option<PathBuf> {
    if let Some(p) = std::env::var_os(CACHE_ENV) {
        return Some(PathBuf::from(p));
    }
    let data = match std::env::var_os("XDG_DATA_HOME") {
        Some(d) if !d.is_empty() => PathBuf::from(d),
        _ => PathBuf::from(std::env::var_os("HOME")?).join(".local/share"),
    };
    Some(data.join("triplesym").join("beta_cache.json"))
}

fn parse_entry(key: &str, e: &BetaEntry) -> Result<RedeiBeta, String> {
    let (a, b) = key.split_once(',').ok_or("key is not \"p1,p2\"")?;
    let prime = |s: &str| -> Result<OddPrime, String> {
        let n: BigInt = s.trim().parse().map_err(|_| format!("{s:?} is not an integer"))?;
        OddPrime::new(&n).map_err(|e| e.to_string())
    };
    let int = |s: &str| -> Result<BigInt, String> { s.parse().map_err(|_| format!("{s:?} is not an integer")) };
    let beta = RedeiBeta { x: int(&e.x)?, y: int(&e.y)?, z: int(&e.z)?, p1: prime(a)?, p2: prime(b)? };
    if !conic::verify_beta(&beta) {
        return Err("β fails verification".into());
    }
    Ok(beta)
}

fn read(path: &Path) -> Result<Vec<RedeiBeta>, String> {
    let text = match fs::read_to_string(path) {
        Ok(t) => t,
        Err(e) if e.kind() == ErrorKind::NotFound => return Ok(Vec::new()),
        Err(e) => return Err(format!("cannot read {}: {e}", path.display())),
    };
    let file: BetaCacheFile =
        serde_json::from_str(&text).map_err(|e| format!("corrupt β cache {}: {e}", path.display()))?;
    file.entries
        .iter()
        .map(|(k, e)| parse_entry(k, e).map_err(|why| format!("corrupt β cache {}: entry {k:?}: {why}", path.display())))
        .collect()
}

/// Loads every entry, rejecting the whole file if any entry is malformed.
pub fn load(path: &Path) -> Result<BetaCache, String> {
    let cache = BetaCache::new();
    for beta in read(path)? {
        cache.insert(beta).map_err(|e| e.to_string())?;
    }
    Ok(cache)
}

/// Merges `cache` into the file under an exclusive lock on a sidecar file.
/// Entries already on disk win.
pub fn save(path: &Path, cache: &BetaCache) -> Result<(), String> {
    let io = |e: std::io::Error| format!("cannot write {}: {e}", path.display());
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        fs::create_dir_all(dir).map_err(io)?;
    }
    let mut lock_path = path.as_os_str().to_owned();
    lock_path.push(".lock");
    let lock = OpenOptions::new().create(true).truncate(false).write(true).open(&lock_path).map_err(io)?;
    lock.lock().map_err(io)?;
    let merged = BetaCache::new();
    for beta in read(path)?.into_iter().chain(cache.entries()) {
        merged.insert(beta).map_err(|e| e.to_string())?;
    }
    let mut file = BetaCacheFile::default();
    for b in merged.entries() {
        file.entries.insert(format!("{},{}", b.p1, b.p2), BetaEntry { x: b.x.to_string(), y: b.y.to_string(), z: b.z.to_string() });
    }
    let mut tmp = path.as_os_str().to_owned();
    tmp.push(".tmp");
    let text = serde_json::to_string_pretty(&file).expect("strings serialize");
    fs::write(&tmp, text + "\n").map_err(io)?;
    fs::rename(&tmp, path).map_err(io)?;
    drop::<File>(lock);
    Ok(())
}
