//! File-backed curve documents, one JSON file per name.

use std::collections::HashMap;
use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::sync::{Arc, Mutex};

use pqbezier::CurveDocument;

#[derive(Debug)]
pub enum StoreError {
    InvalidName(String),
    NotFound(String),
    Exists(String),
    Corrupt(String),
    Io(io::Error),
}

impl From<io::Error> for StoreError {
    fn from(e: io::Error) -> Self {
        StoreError::Io(e)
    }
}

/// Whether a save created the document or replaced it.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Saved {
    Created,
    Replaced,
}

/// Names must match `[A-Za-z0-9_-]{1,64}`.
pub fn valid_name(name: &str) -> bool {
    (1..=64).contains(&name.len())
        && name.bytes().all(|b| b.is_ascii_alphanumeric() || b == b'_' || b == b'-')
}

#[derive(Debug, Clone)]
pub struct CurveDocumentStore {
    root: PathBuf,
    locks: Arc<Mutex<HashMap<String, Arc<Mutex<()>>>>>,
}

impl CurveDocumentStore {
    pub fn open(root: impl Into<PathBuf>) -> io::Result<Self> {
        let root = root.into();
        fs::create_dir_all(&root)?;
        Ok(CurveDocumentStore { root, locks: Arc::default() })
    }

    pub fn root(&self) -> &Path {
        &self.root
    }

    fn path(&self, name: &str) -> Result<PathBuf, StoreError> {
        if valid_name(name) {
            Ok(self.root.join(format!("{name}.json")))
        } else {
            Err(StoreError::InvalidName(name.to_string()))
        }
    }

    fn lock(&self, name: &str) -> Arc<Mutex<()>> {
        let mut locks = self.locks.lock().unwrap_or_else(|e| e.into_inner());
        locks.entry(name.to_string()).or_default().clone()
    }

    /// Writes through a temporary file in the same directory, then renames.
    pub fn save(&self, name: &str, doc: &CurveDocument, overwrite: bool) -> Result<Saved, StoreError> {
        let path = self.path(name)?;
        let lock = self.lock(name);
        let _guard = lock.lock().unwrap_or_else(|e| e.into_inner());
        let existed = path.exists();
        if existed && !overwrite {
            return Err(StoreError::Exists(name.to_string()));
        }
        let mut tmp = tempfile::NamedTempFile::new_in(&self.root)?;
        tmp.write_all(doc.to_json().as_bytes())?;
        tmp.as_file().sync_all()?;
        tmp.persist(&path).map_err(|e| StoreError::Io(e.error))?;
        Ok(if existed { Saved::Replaced } else { Saved::Created })
    }

    pub fn load(&self, name: &str) -> Result<CurveDocument, StoreError> {
        let path = self.path(name)?;
        let lock = self.lock(name);
        let _guard = lock.lock().unwrap_or_else(|e| e.into_inner());
        let text = match fs::read_to_string(&path) {
            Ok(t) => t,
            Err(e) if e.kind() == io::ErrorKind::NotFound => {
                return Err(StoreError::NotFound(name.to_string()))
            }
            Err(e) => return Err(e.into()),
        };
        CurveDocument::from_json(&text).map_err(|e| StoreError::Corrupt(e.to_string()))
    }
}
