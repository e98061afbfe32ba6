//! Content-addressed disk cache for Hecke images.
//!
//! Each entry is `<key>.json` holding the payload and its SHA-256; entries
//! whose hash does not match are discarded and recomputed. Writes go to a
//! temporary file in the cache directory and are renamed into place.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use serde_json::Value;
use sha2::{Digest, Sha256};

use crate::arith::Field;
use crate::error::{Error, Result};
use crate::modsym::{HeckeOp, ManinSymbolSpace};

#[derive(Debug, Clone)]
pub struct Cache {
    dir: PathBuf,
}

fn io_err(e: impl std::fmt::Display) -> Error {
    Error::Io(e.to_string())
}

fn digest(s: &str) -> String {
    hex::encode(Sha256::digest(s.as_bytes()))
}

impl Cache {
    pub fn new(dir: impl AsRef<Path>) -> Result<Self> {
        let dir = dir.as_ref().to_path_buf();
        fs::create_dir_all(&dir).map_err(io_err)?;
        Ok(Cache { dir })
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    /// Key for an ordered list of parts.
    pub fn key(parts: &[&str]) -> String {
        digest(&parts.join("\u{1f}"))
    }

    fn path(&self, key: &str) -> PathBuf {
        self.dir.join(format!("{key}.json"))
    }

    /// The stored payload, or `None` if absent or corrupt.
    pub fn load(&self, key: &str) -> Option<Value> {
        let path = self.path(key);
        let text = fs::read_to_string(&path).ok()?;
        let entry: Value = match serde_json::from_str(&text) {
            Ok(v) => v,
            Err(_) => {
                let _ = fs::remove_file(&path);
                return None;
            }
        };
        let payload = entry.get("payload")?;
        let ok = entry.get("sha256").and_then(Value::as_str) == Some(&digest(&payload.to_string()));
        if !ok {
            let _ = fs::remove_file(&path);
            return None;
        }
        Some(payload.clone())
    }

    pub fn store(&self, key: &str, payload: &Value) -> Result<()> {
        let entry = serde_json::json!({
            "sha256": digest(&payload.to_string()),
            "payload": payload,
        });
        let mut tmp = tempfile::NamedTempFile::new_in(&self.dir).map_err(io_err)?;
        tmp.write_all(entry.to_string().as_bytes()).map_err(io_err)?;
        tmp.persist(self.path(key)).map_err(io_err)?;
        Ok(())
    }

    /// `space.hecke_images(op, vectors)`, served from the cache when the
    /// same level, sign, field, operator and input vectors were seen before.
    pub fn hecke_images<F: Field>(
        &self,
        space: &ManinSymbolSpace<F>,
        op: HeckeOp,
        vectors: &[Vec<F::Elem>],
    ) -> Result<Vec<Vec<F::Elem>>> {
        let k = space.field();
        let input = encode_vectors(k, vectors);
        let key = Cache::key(&[
            "hecke-images-v1",
            &space.level().to_string(),
            &format!("{:?}", space.sign()),
            &k.tag(),
            &op.label(),
            &digest(&input.to_string()),
        ]);
        if let Some(v) = self.load(&key) {
            if let Some(out) = decode_vectors(k, space.dim(), vectors.len(), &v) {
                return Ok(out);
            }
        }
        let out = space.hecke_images(op, vectors)?;
        self.store(&key, &encode_vectors(k, &out))?;
        Ok(out)
    }
}

/// Sparse triplets `[row, col, "value"]`.
fn encode_vectors<F: Field>(k: &F, vectors: &[Vec<F::Elem>]) -> Value {
    let mut out = Vec::new();
    for (i, v) in vectors.iter().enumerate() {
        for (j, x) in v.iter().enumerate() {
            if !k.is_zero(x) {
                out.push(serde_json::json!([i, j, k.to_decimal(x)]));
            }
        }
    }
    Value::Array(out)
}

fn decode_vectors<F: Field>(k: &F, dim: usize, count: usize, v: &Value) -> Option<Vec<Vec<F::Elem>>> {
    let mut out = vec![vec![k.zero(); dim]; count];
    for t in v.as_array()? {
        let i = t.get(0)?.as_u64()? as usize;
        let j = t.get(1)?.as_u64()? as usize;
        let x = k.parse_decimal(t.get(2)?.as_str()?)?;
        *out.get_mut(i)?.get_mut(j)? = x;
    }
    Some(out)
}

/// `hecke_images` through an optional cache.
pub fn images_via<F: Field>(
    cache: Option<&Cache>,
    space: &ManinSymbolSpace<F>,
    op: HeckeOp,
    vectors: &[Vec<F::Elem>],
) -> Result<Vec<Vec<F::Elem>>> {
    match cache {
        Some(c) => c.hecke_images(space, op, vectors),
        None => space.hecke_images(op, vectors),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::Rationals;
    use crate::modsym::Sign;

    #[test]
    fn round_trip_and_corruption() {
        let dir = tempfile::tempdir().unwrap();
        let cache = Cache::new(dir.path()).unwrap();
        let space = ManinSymbolSpace::new(11, Sign::Zero, &Rationals).unwrap();
        let vecs = vec![space.symbol_vector(1, 3)];
        let first = cache.hecke_images(&space, HeckeOp::T(2), &vecs).unwrap();
        assert_eq!(first, space.hecke_images(HeckeOp::T(2), &vecs).unwrap());
        let files: Vec<_> = fs::read_dir(dir.path()).unwrap().collect();
        assert_eq!(files.len(), 1);
        let path = files[0].as_ref().unwrap().path();
        assert_eq!(cache.hecke_images(&space, HeckeOp::T(2), &vecs).unwrap(), first);
        // tamper with the payload: the entry is rejected and recomputed
        let text = fs::read_to_string(&path).unwrap().replace("\"payload\":[", "\"payload\":[[0,0,\"7\"],");
        fs::write(&path, text).unwrap();
        assert_eq!(cache.hecke_images(&space, HeckeOp::T(2), &vecs).unwrap(), first);
        fs::write(&path, "not json").unwrap();
        assert_eq!(cache.hecke_images(&space, HeckeOp::T(2), &vecs).unwrap(), first);
    }
}
