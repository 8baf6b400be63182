//! Content-addressed report cache. Each record is one JSON file named by
//! the hash of its inputs; the payload carries its own hash.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use rweyl::invariants::InvariantReport;
use rweyl::realform::RealFormEntry;
use rweyl::realform::lift_or_identity;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::{CliError, CliResult};

pub const CACHE_SCHEMA: u32 = 1;
pub const CACHE_ENV: &str = "RWEYL_CACHE_DIR";

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CacheRecord {
    pub schema: u32,
    pub key: String,
    pub hash: String,
    pub algebra: String,
    pub lambda: Vec<i64>,
    /// Serialized report.
    pub payload: String,
}

#[derive(Deserialize)]
struct SchemaOnly {
    schema: u32,
}

fn sha256_hex(data: &[u8]) -> String {
    hex::encode(Sha256::digest(data))
}

/// Cache key for a report: everything the computation depends on.
pub fn report_key(entry: &RealFormEntry, lambda: &[i64]) -> String {
    let projection: Vec<Vec<String>> =
        entry.projection.iter().map(|r| r.iter().map(|x| x.to_string()).collect()).collect();
    let text = format!(
        "report|{}|{}|{}|{:?}|{:?}|{}|{:?}",
        CACHE_SCHEMA,
        entry.label,
        entry.ambient(),
        projection,
        entry.black,
        lift_or_identity(entry),
        lambda
    );
    sha256_hex(text.as_bytes())
}

impl CacheRecord {
    pub fn new(key: String, report: &InvariantReport) -> Self {
        let payload = serde_json::to_string(report).expect("report serializes");
        CacheRecord {
            schema: CACHE_SCHEMA,
            key,
            hash: sha256_hex(payload.as_bytes()),
            algebra: report.algebra.clone(),
            lambda: report.lambda.clone(),
            payload,
        }
    }

    pub fn to_bytes(&self) -> Vec<u8> {
        let mut s = serde_json::to_vec_pretty(self).expect("record serializes");
        s.push(b'\n');
        s
    }

    /// Parse and check schema, hash and report consistency.
    pub fn from_bytes(bytes: &[u8], origin: &str) -> CliResult<Self> {
        let head: SchemaOnly =
            serde_json::from_slice(bytes).map_err(|_| CliError::Corrupt(origin.to_string()))?;
        if head.schema != CACHE_SCHEMA {
            return Err(CliError::Version { path: origin.to_string(), found: head.schema, expected: CACHE_SCHEMA });
        }
        let rec: CacheRecord =
            serde_json::from_slice(bytes).map_err(|_| CliError::Corrupt(origin.to_string()))?;
        if sha256_hex(rec.payload.as_bytes()) != rec.hash {
            return Err(CliError::Corrupt(format!("{} (payload hash mismatch)", origin)));
        }
        let report = rec.report().map_err(|_| CliError::Corrupt(origin.to_string()))?;
        if report.algebra != rec.algebra || report.lambda != rec.lambda || report.check().is_err() {
            return Err(CliError::Corrupt(format!("{} (inconsistent report)", origin)));
        }
        Ok(rec)
    }

    pub fn report(&self) -> serde_json::Result<InvariantReport> {
        serde_json::from_str(&self.payload)
    }
}

#[derive(Debug, Clone)]
pub struct Cache {
    dir: PathBuf,
}

impl Cache {
    pub fn open(dir: impl Into<PathBuf>) -> CliResult<Self> {
        let dir = dir.into();
        fs::create_dir_all(&dir).map_err(|e| CliError::io(&dir, e))?;
        Ok(Cache { dir })
    }

    /// Directory from the flag, else the environment variable.
    pub fn from_flag(flag: Option<&Path>) -> CliResult<Option<Self>> {
        match flag.map(Path::to_path_buf).or_else(|| std::env::var_os(CACHE_ENV).map(PathBuf::from)) {
            Some(d) => Ok(Some(Cache::open(d)?)),
            None => Ok(None),
        }
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    pub fn path_for(&self, key: &str) -> PathBuf {
        self.dir.join(format!("{}.json", key))
    }

    pub fn load(&self, key: &str) -> CliResult<Option<CacheRecord>> {
        let path = self.path_for(key);
        match fs::read(&path) {
            Ok(bytes) => {
                let rec = CacheRecord::from_bytes(&bytes, &path.display().to_string())?;
                if rec.key != key {
                    return Err(CliError::Corrupt(format!("{} (key mismatch)", path.display())));
                }
                Ok(Some(rec))
            }
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => Ok(None),
            Err(e) => Err(CliError::io(&path, e)),
        }
    }

    /// Write through a temporary file and rename into place.
    pub fn store(&self, rec: &CacheRecord) -> CliResult<PathBuf> {
        let path = self.path_for(&rec.key);
        let mut tmp = tempfile::NamedTempFile::new_in(&self.dir).map_err(|e| CliError::io(&self.dir, e))?;
        tmp.write_all(&rec.to_bytes()).map_err(|e| CliError::io(tmp.path(), e))?;
        tmp.persist(&path).map_err(|e| CliError::io(&path, e.error))?;
        Ok(path)
    }

    pub fn get_report(&self, key: &str) -> CliResult<Option<InvariantReport>> {
        Ok(self.load(key)?.map(|r| r.report().expect("checked on load")))
    }

    pub fn put_report(&self, key: String, report: &InvariantReport) -> CliResult<()> {
        self.store(&CacheRecord::new(key, report)).map(|_| ())
    }

    /// Record files, sorted by name.
    pub fn files(&self) -> CliResult<Vec<PathBuf>> {
        let rd = fs::read_dir(&self.dir).map_err(|e| CliError::io(&self.dir, e))?;
        let mut out: Vec<PathBuf> = rd
            .filter_map(|e| e.ok().map(|e| e.path()))
            .filter(|p| p.extension().is_some_and(|x| x == "json"))
            .collect();
        out.sort();
        Ok(out)
    }

    pub fn clear(&self) -> CliResult<usize> {
        let files = self.files()?;
        for f in &files {
            fs::remove_file(f).map_err(|e| CliError::io(f, e))?;
        }
        Ok(files.len())
    }

    /// Load every record; returns `(path, outcome)` pairs.
    pub fn verify_all(&self) -> CliResult<Vec<(PathBuf, CliResult<CacheRecord>)>> {
        Ok(self
            .files()?
            .into_iter()
            .map(|p| {
                let res = fs::read(&p)
                    .map_err(|e| CliError::io(&p, e))
                    .and_then(|b| CacheRecord::from_bytes(&b, &p.display().to_string()));
                (p, res)
            })
            .collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rweyl::invariants::compute_report;
    use rweyl::realform::catalog_entry;

    fn sample() -> (String, InvariantReport) {
        let e = catalog_entry("sl(3,R)").unwrap();
        (report_key(&e, &[1, 1]), compute_report(&e, &[1, 1], 100).unwrap())
    }

    #[test]
    fn roundtrip_is_byte_identical() {
        let dir = tempfile::tempdir().unwrap();
        let cache = Cache::open(dir.path()).unwrap();
        let (key, report) = sample();
        let path = cache.store(&CacheRecord::new(key.clone(), &report)).unwrap();
        let rec = cache.load(&key).unwrap().unwrap();
        assert_eq!(rec.to_bytes(), fs::read(path).unwrap());
        assert_eq!(rec.report().unwrap(), report);
    }

    #[test]
    fn tampering_and_versions_are_detected() {
        let (key, report) = sample();
        let rec = CacheRecord::new(key, &report);
        let tampered = String::from_utf8(rec.to_bytes()).unwrap().replace("NonScalar", "PlusId");
        assert!(matches!(CacheRecord::from_bytes(tampered.as_bytes(), "t"), Err(CliError::Corrupt(_))));
        let mut old = rec.clone();
        old.schema = 0;
        assert!(matches!(CacheRecord::from_bytes(&old.to_bytes(), "t"), Err(CliError::Version { found: 0, .. })));
        assert!(matches!(CacheRecord::from_bytes(b"{", "t"), Err(CliError::Corrupt(_))));
    }

    #[test]
    fn keys_depend_on_inputs() {
        let e = catalog_entry("sl(3,R)").unwrap();
        let f = catalog_entry("su(1,2)").unwrap();
        assert_ne!(report_key(&e, &[1, 1]), report_key(&e, &[2, 2]));
        assert_ne!(report_key(&e, &[1, 1]), report_key(&f, &[1, 1]));
    }
}
