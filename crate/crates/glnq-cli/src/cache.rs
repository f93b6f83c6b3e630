//! Disk cache for enumerated group tables and character tables, with
//! checksummed entries and atomic writes.
//!
//! Layout: one JSON file per entry plus a `.sha256` sidecar holding the hex
//! digest of the file bytes. Corrupted entries (missing or mismatched
//! sidecar, unparsable body) are deleted and recomputed transparently.

use std::fs;
use std::path::{Path, PathBuf};

use glnq::chartab::{character_table, CharacterTable, Cyc, CycRing, GroupData};
use glnq::error::{Error, Result};
use glnq::matgroup::{ConjugacyClasses, FqField, GroupKind, GroupTable};
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

/// Environment variable overriding the cache directory.
pub const CACHE_DIR_ENV: &str = "GLNQ_CACHE_DIR";

/// Resolves the cache directory: explicit flag, then environment variable,
/// then `.glnq-cache` under the current directory.
pub fn resolve_dir(flag: Option<&Path>) -> PathBuf {
    if let Some(p) = flag {
        return p.to_path_buf();
    }
    if let Ok(p) = std::env::var(CACHE_DIR_ENV) {
        if !p.is_empty() {
            return PathBuf::from(p);
        }
    }
    PathBuf::from(".glnq-cache")
}

fn sidecar(path: &Path) -> PathBuf {
    let mut s = path.as_os_str().to_os_string();
    s.push(".sha256");
    PathBuf::from(s)
}

fn digest_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

/// Atomically writes `bytes` to `path` (temp file in the same directory,
/// then rename) and refreshes the checksum sidecar.
pub fn write_entry(path: &Path, bytes: &[u8]) -> Result<()> {
    let dir = path
        .parent()
        .ok_or_else(|| Error::invalid("cache path has no parent directory"))?;
    fs::create_dir_all(dir).map_err(|e| Error::internal(format!("mkdir {dir:?}: {e}")))?;
    atomic_write(path, bytes)?;
    atomic_write(&sidecar(path), digest_hex(bytes).as_bytes())?;
    Ok(())
}

/// Atomic file write: temp file in the target directory, then rename.
pub fn atomic_write(path: &Path, bytes: &[u8]) -> Result<()> {
    let dir = path
        .parent()
        .filter(|d| !d.as_os_str().is_empty())
        .map(Path::to_path_buf)
        .unwrap_or_else(|| PathBuf::from("."));
    fs::create_dir_all(&dir).map_err(|e| Error::internal(format!("mkdir {dir:?}: {e}")))?;
    let tmp = tempfile::NamedTempFile::new_in(&dir)
        .map_err(|e| Error::internal(format!("temp file in {dir:?}: {e}")))?;
    std::io::Write::write_all(&mut tmp.as_file(), bytes)
        .map_err(|e| Error::internal(format!("write {path:?}: {e}")))?;
    tmp.persist(path)
        .map_err(|e| Error::internal(format!("rename into {path:?}: {e}")))?;
    Ok(())
}

/// Reads an entry if present and checksum-valid; deletes it otherwise.
fn read_entry(path: &Path) -> Option<Vec<u8>> {
    let bytes = fs::read(path).ok()?;
    let want = fs::read_to_string(sidecar(path)).ok();
    match want {
        Some(w) if w.trim() == digest_hex(&bytes) => Some(bytes),
        _ => {
            let _ = fs::remove_file(path);
            let _ = fs::remove_file(sidecar(path));
            None
        }
    }
}

fn entry_path(dir: &Path, kind: GroupKind, n: usize, q: u64) -> PathBuf {
    dir.join(format!("{}_{n}_{q}.group.json", kind.as_str().to_lowercase()))
}

fn serialize_group(gd: &GroupData) -> Vec<u8> {
    let values: Vec<Vec<Vec<(u32, i128)>>> = gd
        .chars
        .values
        .iter()
        .map(|row| {
            row.iter()
                .map(|c| c.terms.iter().map(|(&e, &v)| (e, v)).collect())
                .collect()
        })
        .collect();
    let doc = json!({
        "schema": "1",
        "kind": gd.table.kind.as_str(),
        "n": gd.table.n,
        "q": gd.table.field.q,
        "encodings": hex::encode(gd.table.encodings_blob()),
        "exponent": gd.chars.exponent,
        "class_reps": gd.chars.class_reps,
        "class_sizes": gd.chars.class_sizes,
        "dims": gd.chars.dims,
        "values": serde_json::to_value(values).expect("serializable"),
    });
    serde_json::to_vec_pretty(&doc).expect("serializable")
}

fn deserialize_group(kind: GroupKind, n: usize, q: u64, bytes: &[u8]) -> Result<GroupData> {
    let doc: Value = serde_json::from_slice(bytes)
        .map_err(|e| Error::invalid(format!("corrupt cache entry: {e}")))?;
    let check = |field: &str, want: &Value| -> Result<()> {
        if doc.get(field) != Some(want) {
            return Err(Error::invalid(format!("cache entry field '{field}' mismatch")));
        }
        Ok(())
    };
    check("schema", &json!("1"))?;
    check("kind", &json!(kind.as_str()))?;
    check("n", &json!(n))?;
    check("q", &json!(q))?;
    let field = FqField::new(q)?;
    let encodings = hex::decode(
        doc.get("encodings")
            .and_then(Value::as_str)
            .ok_or_else(|| Error::invalid("cache entry missing encodings"))?,
    )
    .map_err(|e| Error::invalid(format!("bad encodings hex: {e}")))?;
    let table = GroupTable::from_sorted_encodings(kind, n, field, encodings)?;
    let classes = ConjugacyClasses::compute(&table)?;
    let exponent = doc
        .get("exponent")
        .and_then(Value::as_u64)
        .ok_or_else(|| Error::invalid("cache entry missing exponent"))?;
    let ring = CycRing::new(exponent as u32)?;
    let get_vec_u64 = |name: &str| -> Result<Vec<u64>> {
        doc.get(name)
            .and_then(Value::as_array)
            .map(|a| a.iter().filter_map(Value::as_u64).collect::<Vec<_>>())
            .ok_or_else(|| Error::invalid(format!("cache entry missing {name}")))
    };
    let class_reps: Vec<u32> = get_vec_u64("class_reps")?.iter().map(|&x| x as u32).collect();
    let class_sizes: Vec<usize> = get_vec_u64("class_sizes")?.iter().map(|&x| x as usize).collect();
    let dims = get_vec_u64("dims")?;
    let raw_values: Vec<Vec<Vec<(u32, i128)>>> = serde_json::from_value(
        doc.get("values")
            .cloned()
            .ok_or_else(|| Error::invalid("cache entry missing values"))?,
    )
    .map_err(|e| Error::invalid(format!("bad character values: {e}")))?;
    let values: Vec<Vec<Cyc>> = raw_values
        .into_iter()
        .map(|row| {
            row.into_iter()
                .map(|terms| {
                    let mut c = ring.zero();
                    for (e, v) in terms {
                        c = ring.add(&c, &ring.scale(&ring.root(e as i64), v));
                    }
                    c
                })
                .collect()
        })
        .collect();
    let chars = CharacterTable {
        ring,
        exponent,
        class_reps,
        class_sizes,
        dims,
        values,
    };
    // Cheap structural sanity before trusting the entry.
    if chars.class_reps.len() != classes.reps.len()
        || chars.dims.len() != chars.class_reps.len()
    {
        return Err(Error::invalid("cache entry shape mismatch"));
    }
    glnq::chartab::verify_orthogonality(&chars)?;
    Ok(GroupData {
        table,
        classes,
        chars,
    })
}

/// Loads group data through the cache: checksum-valid entries are reused,
/// anything else is recomputed (via Dixon's algorithm) and stored.
pub fn load_group_data(dir: &Path, kind: GroupKind, n: usize, q: u64) -> Result<GroupData> {
    let path = entry_path(dir, kind, n, q);
    if let Some(bytes) = read_entry(&path) {
        match deserialize_group(kind, n, q, &bytes) {
            Ok(gd) => return Ok(gd),
            Err(_) => {
                let _ = fs::remove_file(&path);
                let _ = fs::remove_file(sidecar(&path));
            }
        }
    }
    let gd = GroupData::new(kind, n, q)?;
    write_entry(&path, &serialize_group(&gd))?;
    Ok(gd)
}

/// Lists cache entries as `(file name, byte size, checksum ok)` rows.
pub fn list(dir: &Path) -> Result<Vec<(String, u64, bool)>> {
    let mut rows = Vec::new();
    let entries = match fs::read_dir(dir) {
        Ok(e) => e,
        Err(_) => return Ok(rows), // absent directory == empty cache
    };
    let mut names: Vec<PathBuf> = entries
        .filter_map(|e| e.ok())
        .map(|e| e.path())
        .filter(|p| p.extension().map(|x| x == "json").unwrap_or(false))
        .collect();
    names.sort();
    for path in names {
        let size = fs::metadata(&path).map(|m| m.len()).unwrap_or(0);
        let ok = match (fs::read(&path), fs::read_to_string(sidecar(&path))) {
            (Ok(bytes), Ok(want)) => want.trim() == digest_hex(&bytes),
            _ => false,
        };
        rows.push((
            path.file_name().unwrap().to_string_lossy().into_owned(),
            size,
            ok,
        ));
    }
    Ok(rows)
}

/// Removes every cache entry.
pub fn clear(dir: &Path) -> Result<usize> {
    let mut removed = 0;
    if let Ok(entries) = fs::read_dir(dir) {
        for e in entries.filter_map(|e| e.ok()) {
            let p = e.path();
            let name = p.file_name().map(|n| n.to_string_lossy().into_owned());
            if let Some(name) = name {
                if name.ends_with(".json") || name.ends_with(".sha256") {
                    if fs::remove_file(&p).is_ok() {
                        removed += 1;
                    }
                }
            }
        }
    }
    Ok(removed)
}

/// Recomputes a character table from a cached group table without touching
/// the character cache (used by cache verification).
pub fn recheck_characters(gd: &GroupData) -> Result<()> {
    let fresh = character_table(&gd.table, &gd.classes)?;
    if fresh.dims != gd.chars.dims {
        return Err(Error::internal("cached character table diverges"));
    }
    Ok(())
}
