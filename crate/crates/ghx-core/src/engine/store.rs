//! On-disk artifact store.
//!
//! Layout: `<root>/<family>/<params>/<file>`, each file accompanied by
//! `<file>.sha256` holding the hex digest of its bytes. Files are published
//! by writing a temporary sibling and renaming it into place, so a reader
//! never observes a partial artifact. An artifact without its sidecar is
//! treated as absent; one whose digest does not match is an error.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::sync::atomic::{AtomicU64, Ordering};

use sha2::{Digest, Sha256};

use super::{EngineError, SliceSpec};

/// Environment variable naming the default store root.
pub const DATA_DIR_ENV: &str = "GHX_DATA_DIR";

static TEMP_COUNTER: AtomicU64 = AtomicU64::new(0);

#[derive(Clone, Debug)]
pub struct Store {
    root: PathBuf,
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

impl Store {
    pub fn new(root: impl Into<PathBuf>) -> Self {
        Store { root: root.into() }
    }

    /// Store rooted at `$GHX_DATA_DIR`, if set.
    pub fn from_env() -> Option<Self> {
        std::env::var_os(DATA_DIR_ENV).map(Store::new)
    }

    pub fn root(&self) -> &Path {
        &self.root
    }

    pub fn slice_dir(&self, spec: &SliceSpec) -> PathBuf {
        self.root.join(spec.family.name()).join(spec.params())
    }

    pub fn path(&self, spec: &SliceSpec, file: &str) -> PathBuf {
        self.slice_dir(spec).join(file)
    }

    /// Reads an artifact after verifying its checksum. `Ok(None)` when the
    /// artifact or its sidecar is missing.
    pub fn read(&self, spec: &SliceSpec, file: &str) -> Result<Option<String>, EngineError> {
        let path = self.path(spec, file);
        let sidecar = sidecar_path(&path);
        let (Ok(bytes), Ok(digest)) = (fs::read(&path), fs::read_to_string(&sidecar)) else {
            return Ok(None);
        };
        let want = digest.split_whitespace().next().unwrap_or("");
        if sha256_hex(&bytes) != want {
            return Err(EngineError::Checksum(path.display().to_string()));
        }
        String::from_utf8(bytes).map(Some).map_err(|_| EngineError::Checksum(path.display().to_string()))
    }

    /// Publishes an artifact and its checksum atomically.
    pub fn write(&self, spec: &SliceSpec, file: &str, text: &str) -> Result<(), EngineError> {
        let dir = self.slice_dir(spec);
        fs::create_dir_all(&dir).map_err(|e| io_err(&dir, e))?;
        let path = dir.join(file);
        publish(&path, text.as_bytes())?;
        let digest = format!("{}  {file}\n", sha256_hex(text.as_bytes()));
        publish(&sidecar_path(&path), digest.as_bytes())
    }

    /// Removes an artifact and its sidecar if present.
    pub fn remove(&self, spec: &SliceSpec, file: &str) -> Result<(), EngineError> {
        let path = self.path(spec, file);
        for p in [sidecar_path(&path), path] {
            match fs::remove_file(&p) {
                Ok(()) => {}
                Err(e) if e.kind() == std::io::ErrorKind::NotFound => {}
                Err(e) => return Err(io_err(&p, e)),
            }
        }
        Ok(())
    }
}

fn sidecar_path(path: &Path) -> PathBuf {
    let mut s = path.as_os_str().to_owned();
    s.push(".sha256");
    PathBuf::from(s)
}

fn io_err(path: &Path, e: std::io::Error) -> EngineError {
    EngineError::Io(format!("{}: {e}", path.display()))
}

fn publish(path: &Path, bytes: &[u8]) -> Result<(), EngineError> {
    let n = TEMP_COUNTER.fetch_add(1, Ordering::Relaxed);
    let mut tmp = path.as_os_str().to_owned();
    tmp.push(format!(".tmp.{}.{n}", std::process::id()));
    let tmp = PathBuf::from(tmp);
    let mut f = fs::File::create(&tmp).map_err(|e| io_err(&tmp, e))?;
    f.write_all(bytes).map_err(|e| io_err(&tmp, e))?;
    f.sync_all().map_err(|e| io_err(&tmp, e))?;
    drop(f);
    fs::rename(&tmp, path).map_err(|e| io_err(path, e))
}
