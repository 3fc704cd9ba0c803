//! Output-directory handling and number formatting.

use std::fs;
use std::path::{Path, PathBuf};

use crate::CliError;

/// Writes files into the output directory, remembering what it wrote so a
/// failing command can remove its partial outputs.
pub struct OutputWriter {
    dir: PathBuf,
    written: Vec<PathBuf>,
}

impl OutputWriter {
    pub fn new(dir: &Path) -> Result<Self, CliError> {
        fs::create_dir_all(dir).map_err(|e| {
            CliError::Data(format!("cannot create output dir {}: {e}", dir.display()))
        })?;
        Ok(OutputWriter {
            dir: dir.to_path_buf(),
            written: Vec::new(),
        })
    }

    pub fn write(&mut self, name: &str, content: &str) -> Result<PathBuf, CliError> {
        let path = self.dir.join(name);
        fs::write(&path, content)
            .map_err(|e| CliError::Data(format!("cannot write {}: {e}", path.display())))?;
        self.written.push(path.clone());
        println!("wrote {}", path.display());
        Ok(path)
    }

    /// Remove everything written so far (called when a command fails).
    pub fn discard_all(&mut self) {
        for path in self.written.drain(..) {
            if fs::remove_file(&path).is_ok() {
                eprintln!("removed partial output {}", path.display());
            }
        }
    }
}

/// GW and Mt figures print at 2 decimals.
pub fn gw(v: f64) -> String {
    format!("{v:.2}")
}

/// Multipliers and efficiencies print at 3 decimals.
pub fn mult(v: f64) -> String {
    format!("{v:.3}")
}

pub fn opt_mult(v: Option<f64>) -> String {
    v.map(mult).unwrap_or_default()
}
