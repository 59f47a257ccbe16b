//! On-disk report cache: one JSON file per (field, modulus, options), named
//! by a SHA-256 of those parameters.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use carlitz_core::{FieldCtx, FqPoly, Options};
use sha2::{Digest, Sha256};

use crate::error::CliError;
use crate::parse::format_poly;
use crate::report::{engine_name, SCHEMA_VERSION};

#[derive(Clone, Debug)]
pub struct Cache {
    dir: PathBuf,
}

impl Cache {
    pub fn new(dir: impl Into<PathBuf>) -> Result<Self, CliError> {
        let dir = dir.into();
        fs::create_dir_all(&dir).map_err(|e| CliError::io(&dir, e))?;
        Ok(Cache { dir })
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    pub fn key(field: &FieldCtx, m: &FqPoly, options: &Options) -> String {
        let def = field
            .defining_poly()
            .map(|c| c.iter().map(u32::to_string).collect::<Vec<_>>().join(","))
            .unwrap_or_default();
        let text = format!(
            "schema={SCHEMA_VERSION};p={};n={};def={def};gen={};m={};oracle={};engine={};limit={}",
            field.p(),
            field.n(),
            field.generator().code(),
            format_poly(m, field),
            options.with_oracle,
            engine_name(options.engine),
            options.limit,
        );
        hex::encode(Sha256::digest(text.as_bytes()))
    }

    fn path(&self, key: &str) -> PathBuf {
        self.dir.join(format!("{key}.json"))
    }

    /// The cached text, if present.
    pub fn get(&self, key: &str) -> Result<Option<String>, CliError> {
        let path = self.path(key);
        match fs::read_to_string(&path) {
            Ok(text) => Ok(Some(text)),
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => Ok(None),
            Err(e) => Err(CliError::io(&path, e)),
        }
    }

    /// Writes through a temporary file in the same directory and renames it
    /// into place, so readers never see a partial file.
    pub fn put(&self, key: &str, text: &str) -> Result<(), CliError> {
        let path = self.path(key);
        let mut tmp = tempfile::NamedTempFile::new_in(&self.dir).map_err(|e| CliError::io(&self.dir, e))?;
        tmp.write_all(text.as_bytes()).map_err(|e| CliError::io(tmp.path(), e))?;
        tmp.persist(&path).map_err(|e| CliError::io(&path, e.error))?;
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn keys_separate_parameters() {
        let f3 = FieldCtx::prime(3).unwrap();
        let f5 = FieldCtx::prime(5).unwrap();
        let m3 = FqPoly::from_codes(&f3, &[1, 0, 1]).unwrap();
        let m5 = FqPoly::from_codes(&f5, &[1, 0, 1]).unwrap();
        let o = Options::default();
        let with = Options { with_oracle: true, ..o };
        let k = Cache::key(&f3, &m3, &o);
        assert_eq!(k.len(), 64);
        assert_eq!(k, Cache::key(&f3, &m3, &o));
        assert_ne!(k, Cache::key(&f5, &m5, &o));
        assert_ne!(k, Cache::key(&f3, &m3, &with));
    }

    #[test]
    fn put_then_get() {
        let dir = tempfile::tempdir().unwrap();
        let cache = Cache::new(dir.path().join("nested")).unwrap();
        assert_eq!(cache.get("abc").unwrap(), None);
        cache.put("abc", "{}").unwrap();
        cache.put("abc", "{\"x\": 1}").unwrap();
        assert_eq!(cache.get("abc").unwrap().as_deref(), Some("{\"x\": 1}"));
        let names: Vec<_> = fs::read_dir(cache.dir()).unwrap().collect();
        assert_eq!(names.len(), 1);
    }
}
