//! On-disk cache of slice restrictions.
//!
//! Entries are keyed by type, rank, partition, normalization and crate
//! version. Each file stores the restrictions in canonical text with a
//! SHA-256 digest; a corrupt or mismatched entry is treated as a miss.
//! Writes go to a temporary file that is renamed into place.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::invariants::InvariantKind;
use crate::lie::ClassicalType;
use crate::multipoly::SparsePoly;
use crate::nilpotent::Partition;
use crate::pipeline::NORMALIZATION;
use crate::slodowy::{SliceChart, SliceRestriction};

/// Environment variable naming the default cache directory.
pub const CACHE_DIR_ENV: &str = "NILGOOD_CACHE_DIR";

const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Clone, Debug)]
pub struct Cache {
    dir: PathBuf,
}

#[derive(Serialize, Deserialize)]
struct Entry {
    key: String,
    arity: usize,
    restrictions: Vec<EntryPoly>,
    sha256: String,
}

#[derive(Serialize, Deserialize)]
struct EntryPoly {
    kind: InvariantKind,
    degree: u32,
    kappa: String,
}

impl Cache {
    /// Opens `dir`, creating it if needed.
    pub fn open(dir: impl Into<PathBuf>) -> Result<Self> {
        let dir = dir.into();
        fs::create_dir_all(&dir)
            .map_err(|e| Error::Cache(format!("cannot create {}: {e}", dir.display())))?;
        Ok(Cache { dir })
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    pub fn key(ty: ClassicalType, partition: &Partition) -> String {
        format!("{ty}|{partition}|{NORMALIZATION}|v{VERSION}")
    }

    fn path(&self, key: &str) -> PathBuf {
        let digest = hex::encode(Sha256::digest(key.as_bytes()));
        self.dir.join(format!("{}.json", &digest[..24]))
    }

    fn content_hash(arity: usize, polys: &[EntryPoly]) -> String {
        let mut h = Sha256::new();
        h.update(arity.to_le_bytes());
        for p in polys {
            h.update(p.kind.label().as_bytes());
            h.update(p.degree.to_le_bytes());
            h.update(p.kappa.as_bytes());
            h.update([0u8]);
        }
        hex::encode(h.finalize())
    }

    /// Restrictions for the orbit, or `None` on a miss. Loaded entries are
    /// revalidated against the chart.
    pub fn load(
        &self,
        ty: ClassicalType,
        partition: &Partition,
        chart: &SliceChart,
    ) -> Result<Option<Vec<SliceRestriction>>> {
        let key = Self::key(ty, partition);
        let path = self.path(&key);
        let Ok(text) = fs::read_to_string(&path) else {
            return Ok(None);
        };
        let Ok(entry) = serde_json::from_str::<Entry>(&text) else {
            return Ok(None);
        };
        if entry.key != key
            || entry.arity != chart.dim()
            || entry.sha256 != Self::content_hash(entry.arity, &entry.restrictions)
        {
            return Ok(None);
        }
        let mut out = Vec::with_capacity(entry.restrictions.len());
        for p in entry.restrictions {
            let Ok(kappa) = SparsePoly::parse_text(&p.kappa, "t", entry.arity) else {
                return Ok(None);
            };
            out.push(SliceRestriction::new(p.kind, p.degree, kappa, chart)?);
        }
        Ok(Some(out))
    }

    pub fn store(
        &self,
        ty: ClassicalType,
        partition: &Partition,
        restrictions: &[SliceRestriction],
    ) -> Result<()> {
        let key = Self::key(ty, partition);
        let arity = restrictions.first().map(|r| r.kappa.arity()).unwrap_or(0);
        let polys: Vec<EntryPoly> = restrictions
            .iter()
            .map(|r| EntryPoly {
                kind: r.kind,
                degree: r.source_degree,
                kappa: r.kappa.to_text("t"),
            })
            .collect();
        let entry = Entry {
            sha256: Self::content_hash(arity, &polys),
            key: key.clone(),
            arity,
            restrictions: polys,
        };
        let path = self.path(&key);
        let json = serde_json::to_vec(&entry).map_err(|e| Error::Cache(e.to_string()))?;
        let mut tmp = tempfile::NamedTempFile::new_in(&self.dir)?;
        tmp.write_all(&json)?;
        tmp.as_file().sync_all()?;
        tmp.persist(&path)
            .map_err(|e| Error::Cache(format!("cannot move entry into place: {e}")))?;
        Ok(())
    }
}
