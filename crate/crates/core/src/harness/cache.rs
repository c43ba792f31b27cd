//! Content-addressed store for lifted Euler factors. The key is the SHA-256
//! of a canonical JSON description of every input to the computation.

use std::fs;
use std::path::{Path, PathBuf};

use serde_json::Value;
use sha2::{Digest, Sha256};

use crate::error::Result;
use crate::iwasawa::IwasawaElement;

#[derive(Clone, Debug)]
pub struct Cache {
    dir: PathBuf,
}

impl Cache {
    pub fn new(dir: impl Into<PathBuf>) -> Self {
        Cache { dir: dir.into() }
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    pub fn key(descriptor: &Value) -> String {
        // serde_json maps are ordered, so this rendering is canonical
        let text = descriptor.to_string();
        hex::encode(Sha256::digest(text.as_bytes()))
    }

    fn path(&self, key: &str) -> PathBuf {
        self.dir.join(format!("{key}.json"))
    }

    pub fn get(&self, key: &str) -> Option<IwasawaElement> {
        let text = fs::read_to_string(self.path(key)).ok()?;
        match serde_json::from_str(&text) {
            Ok(v) => Some(v),
            Err(e) => {
                log::warn!("ignoring unreadable cache entry {key}: {e}");
                None
            }
        }
    }

    pub fn put(&self, key: &str, value: &IwasawaElement) -> Result<()> {
        fs::create_dir_all(&self.dir)?;
        let tmp = self.dir.join(format!(".{key}.tmp"));
        fs::write(&tmp, serde_json::to_string(value)?)?;
        fs::rename(&tmp, self.path(key))?;
        Ok(())
    }

    /// Look up `descriptor`, computing and storing on a miss.
    pub fn get_or_compute(
        &self,
        descriptor: &Value,
        compute: impl FnOnce() -> Result<IwasawaElement>,
    ) -> Result<IwasawaElement> {
        let key = Self::key(descriptor);
        if let Some(hit) = self.get(&key) {
            log::debug!("cache hit {key}");
            return Ok(hit);
        }
        let value = compute()?;
        self.put(&key, &value)?;
        Ok(value)
    }
}
