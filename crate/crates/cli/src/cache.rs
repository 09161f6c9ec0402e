//! Content-addressed on-disk cache of outcomes.

use std::fs;
use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use rand::seq::IndexedRandom;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::request::{Outcome, Request};

const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Serialize, Deserialize)]
struct Entry {
    version: String,
    request: Request,
    outcome: Outcome,
}

pub struct Cache {
    dir: PathBuf,
}

/// Hex SHA-256 of the version and the canonical request.
pub fn key(request: &Request) -> String {
    let body = serde_json::to_string(request).expect("requests serialize");
    let mut h = Sha256::new();
    h.update(VERSION.as_bytes());
    h.update(b"\n");
    h.update(body.as_bytes());
    hex::encode(h.finalize())
}

impl Cache {
    pub fn open(dir: &Path) -> Result<Self> {
        fs::create_dir_all(dir)
            .with_context(|| format!("creating cache directory {}", dir.display()))?;
        Ok(Self {
            dir: dir.to_path_buf(),
        })
    }

    fn path(&self, key: &str) -> PathBuf {
        self.dir.join(format!("{key}.json"))
    }

    fn read(path: &Path) -> Option<Entry> {
        let bytes = fs::read(path).ok()?;
        serde_json::from_slice::<Entry>(&bytes).ok()
    }

    pub fn get(&self, request: &Request) -> Option<Outcome> {
        let entry = Self::read(&self.path(&key(request)))?;
        (entry.version == VERSION && entry.request == *request).then_some(entry.outcome)
    }

    pub fn put(&self, request: &Request, outcome: &Outcome) -> Result<()> {
        let entry = Entry {
            version: VERSION.into(),
            request: request.clone(),
            outcome: outcome.clone(),
        };
        let k = key(request);
        let tmp = self.dir.join(format!(".{k}.{}.tmp", std::process::id()));
        fs::write(&tmp, serde_json::to_vec(&entry)?)?;
        fs::rename(&tmp, self.path(&k))?;
        Ok(())
    }

    /// Recomputes up to `samples` randomly chosen entries and compares them
    /// with what is stored. Mismatching entries are removed.
    pub fn audit(&self, samples: usize) -> Result<usize> {
        if samples == 0 {
            return Ok(0);
        }
        let mut paths: Vec<PathBuf> = fs::read_dir(&self.dir)?
            .filter_map(|e| e.ok().map(|e| e.path()))
            .filter(|p| p.extension().is_some_and(|x| x == "json"))
            .collect();
        paths.sort();
        let chosen: Vec<&PathBuf> = paths.choose_multiple(&mut rand::rng(), samples).collect();
        for path in &chosen {
            let Some(entry) = Self::read(path) else {
                fs::remove_file(path)?;
                continue;
            };
            if entry.version != VERSION || self.path(&key(&entry.request)) != **path {
                fs::remove_file(path)?;
                continue;
            }
            let fresh = entry.request.run().map_err(anyhow::Error::from);
            if !matches!(&fresh, Ok(o) if *o == entry.outcome) {
                fs::remove_file(path)?;
                bail!(
                    "cache audit: stored result {} differs from a fresh computation",
                    path.display()
                );
            }
        }
        Ok(chosen.len())
    }
}
