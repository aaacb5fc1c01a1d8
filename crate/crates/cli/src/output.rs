//! Deterministic CSV emission: '#'-prefixed metadata, one header row, and
//! fixed 17-significant-digit numeric formatting so identical configurations
//! produce byte-identical files.

use std::io::Write;

use crate::CliError;

pub const VERSION_LINE: &str = concat!("sqres ", env!("CARGO_PKG_VERSION"));

/// Format one numeric cell.
pub fn cell(v: f64) -> String {
    format!("{v:.16e}")
}

/// A fully rendered dataset ready to write.
pub struct Dataset {
    pub metadata: Vec<(String, String)>,
    pub header: Vec<String>,
    pub rows: Vec<Vec<f64>>,
}

impl Dataset {
    pub fn render(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("# {VERSION_LINE}\n"));
        for (k, v) in &self.metadata {
            out.push_str(&format!("# {k} = {v}\n"));
        }
        out.push_str(&self.header.join(","));
        out.push('\n');
        for row in &self.rows {
            let cells: Vec<String> = row.iter().map(|&v| cell(v)).collect();
            out.push_str(&cells.join(","));
            out.push('\n');
        }
        out
    }

    pub fn write(&self, out: Option<&std::path::Path>) -> Result<(), CliError> {
        let text = self.render();
        match out {
            Some(path) => std::fs::write(path, text)
                .map_err(|e| CliError::Io(format!("writing {}: {e}", path.display()))),
            None => {
                let stdout = std::io::stdout();
                let mut lock = stdout.lock();
                lock.write_all(text.as_bytes())
                    .map_err(|e| CliError::Io(format!("writing stdout: {e}")))
            }
        }
    }
}
