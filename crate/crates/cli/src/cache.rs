//! Reduction cache persisted as `word<TAB>polynomial-json` lines.

use std::fs;
use std::io::ErrorKind;
use std::path::{Path, PathBuf};

use sfdc_core::{parse_word, DiagramPoly, Reducer};

use crate::Failure;

pub const CACHE_ENV: &str = "SFDC_CACHE_DIR";
pub const CACHE_FILE: &str = "reduce-cache.tsv";

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cache {
    path: PathBuf,
}

impl Cache {
    /// The cache named by `SFDC_CACHE_DIR`, if set and non-empty.
    pub fn from_env() -> Option<Cache> {
        std::env::var_os(CACHE_ENV).filter(|d| !d.is_empty()).map(|d| Cache::in_dir(Path::new(&d)))
    }

    pub fn in_dir(dir: &Path) -> Cache {
        Cache { path: dir.join(CACHE_FILE) }
    }

    pub fn path(&self) -> &Path {
        &self.path
    }

    /// Seeds `reducer` from the file; a missing file is an empty cache.
    pub fn load(&self, reducer: &Reducer) -> Result<usize, Failure> {
        let text = match fs::read_to_string(&self.path) {
            Ok(t) => t,
            Err(e) if e.kind() == ErrorKind::NotFound => return Ok(0),
            Err(e) => return Err(Failure::Io(format!("{}: {e}", self.path.display()))),
        };
        let mut count = 0;
        for (lineno, line) in text.lines().enumerate() {
            if line.trim().is_empty() {
                continue;
            }
            let bad = |why: String| Failure::Io(format!("{}:{}: {why}", self.path.display(), lineno + 1));
            let (word, json) = line.split_once('\t').ok_or_else(|| bad("expected word<TAB>json".into()))?;
            let word = parse_word(word).map_err(|e| bad(e.to_string()))?;
            let poly = DiagramPoly::from_json(json).map_err(|e| bad(e.to_string()))?;
            reducer.insert_cached(&word, poly);
            count += 1;
        }
        Ok(count)
    }

    /// Writes every cached reduction, replacing the file atomically.
    pub fn save(&self, reducer: &Reducer) -> Result<(), Failure> {
        let io = |e: std::io::Error| Failure::Io(format!("{}: {e}", self.path.display()));
        if let Some(dir) = self.path.parent() {
            fs::create_dir_all(dir).map_err(io)?;
        }
        let mut text = String::new();
        for (word, poly) in reducer.cache_entries() {
            if word.is_empty() {
                continue;
            }
            text.push_str(&format!("{word}\t{}\n", poly.to_json()));
        }
        let tmp = self.path.with_extension("tmp");
        fs::write(&tmp, text).map_err(io)?;
        fs::rename(&tmp, &self.path).map_err(io)
    }
}
