use std::fs;
use std::path::{Path, PathBuf};

use serde_json::{json, Map, Value};
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::io::{Format, Table};

pub const MANIFEST_FILE: &str = "manifest.json";

pub fn sha256_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

/// Hash of one input file, as echoed in the manifest.
#[derive(Debug, Clone)]
pub struct InputDigest {
    pub role: &'static str,
    pub path: String,
    pub bytes: u64,
    pub sha256: String,
}

pub fn read_input(role: &'static str, path: &Path, digests: &mut Vec<InputDigest>) -> Result<Vec<u8>> {
    let bytes = fs::read(path).map_err(|e| Error::io(path, e))?;
    digests.push(InputDigest {
        role,
        path: path.display().to_string(),
        bytes: bytes.len() as u64,
        sha256: sha256_hex(&bytes),
    });
    Ok(bytes)
}

/// Files produced by one command, held in memory until the command has
/// finished so that a failure leaves nothing behind.
#[derive(Debug, Default)]
pub struct OutputSet {
    files: Vec<(String, Vec<u8>)>,
}

impl OutputSet {
    pub fn add(&mut self, name: impl Into<String>, bytes: Vec<u8>) {
        self.files.push((name.into(), bytes));
    }

    pub fn add_table(&mut self, table: &Table, format: Format) -> Result<()> {
        let bytes = table.render(format)?;
        self.add(table.file_name(format), bytes);
        Ok(())
    }

    pub fn names(&self) -> impl Iterator<Item = &str> {
        self.files.iter().map(|(n, _)| n.as_str())
    }

    /// Appends `manifest.json` and writes everything under `dir`. Files
    /// written before an error are removed again.
    pub fn commit(mut self, dir: &Path, command: &str, config: Value, inputs: &[InputDigest], notes: Value) -> Result<Vec<PathBuf>> {
        self.files.sort_by(|a, b| a.0.cmp(&b.0));
        let outputs: Vec<Value> = self
            .files
            .iter()
            .map(|(n, b)| json!({ "file": n, "bytes": b.len(), "sha256": sha256_hex(b) }))
            .collect();
        let inputs: Vec<Value> = inputs
            .iter()
            .map(|d| json!({ "role": d.role, "path": d.path, "bytes": d.bytes, "sha256": d.sha256 }))
            .collect();
        let mut manifest = Map::new();
        manifest.insert("tool".into(), json!("impactum"));
        manifest.insert("version".into(), json!(env!("CARGO_PKG_VERSION")));
        manifest.insert("command".into(), json!(command));
        manifest.insert("config".into(), config);
        manifest.insert("inputs".into(), Value::Array(inputs));
        manifest.insert("outputs".into(), Value::Array(outputs));
        manifest.insert("notes".into(), notes);
        let mut text = serde_json::to_vec_pretty(&Value::Object(manifest))?;
        text.push(b'\n');
        self.files.push((MANIFEST_FILE.to_string(), text));

        let created_dir = !dir.exists();
        fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))?;
        let mut written = Vec::new();
        for (name, bytes) in &self.files {
            let path = dir.join(name);
            if let Err(e) = fs::write(&path, bytes) {
                for p in &written {
                    let _ = fs::remove_file(p);
                }
                if created_dir {
                    let _ = fs::remove_dir(dir);
                }
                return Err(Error::io(&path, e));
            }
            written.push(path);
        }
        Ok(written)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sha_of_empty() {
        assert_eq!(sha256_hex(b""), "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
    }

    #[test]
    fn commit_writes_manifest_last_and_sorted() {
        let dir = tempfile::tempdir().unwrap();
        let mut out = OutputSet::default();
        out.add("b.csv", b"x\n".to_vec());
        out.add("a.csv", b"y\n".to_vec());
        let written = out.commit(dir.path(), "test", json!({}), &[], json!({})).unwrap();
        let names: Vec<String> =
            written.iter().map(|p| p.file_name().unwrap().to_string_lossy().into_owned()).collect();
        assert_eq!(names, vec!["a.csv", "b.csv", "manifest.json"]);
        let m: Value = serde_json::from_slice(&fs::read(dir.path().join(MANIFEST_FILE)).unwrap()).unwrap();
        assert_eq!(m["outputs"][0]["file"], "a.csv");
    }
}
