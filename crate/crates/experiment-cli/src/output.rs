//! Deterministic CSV and JSON writers. Floats print with 17 significant
//! digits so byte-identical reruns are checkable; every CSV row ends with
//! the config hash.

use crate::error::Result;
use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};

/// 17 significant digits (1 leading + 16 fractional, scientific notation).
pub fn fmt_float(x: f64) -> String {
    format!("{x:.16e}")
}

pub enum Field {
    Str(String),
    Int(i64),
    UInt(u64),
    Float(f64),
    Bool(bool),
}

impl Field {
    fn render(&self) -> String {
        match self {
            Field::Str(s) => s.clone(),
            Field::Int(v) => v.to_string(),
            Field::UInt(v) => v.to_string(),
            Field::Float(x) => fmt_float(*x),
            Field::Bool(b) => b.to_string(),
        }
    }
}

pub struct CsvWriter {
    writer: BufWriter<File>,
    n_columns: usize,
    hash: String,
    path: PathBuf,
}

impl CsvWriter {
    /// Create the file and write the header; a `config_hash` column is
    /// appended automatically.
    pub fn create(path: &Path, columns: &[&str], hash: &str) -> Result<Self> {
        if let Some(parent) = path.parent() {
            std::fs::create_dir_all(parent)?;
        }
        let mut writer = BufWriter::new(File::create(path)?);
        writeln!(writer, "{},config_hash", columns.join(","))?;
        Ok(Self {
            writer,
            n_columns: columns.len(),
            hash: hash.to_string(),
            path: path.to_path_buf(),
        })
    }

    pub fn write_row(&mut self, fields: &[Field]) -> Result<()> {
        assert_eq!(
            fields.len(),
            self.n_columns,
            "row width mismatch in {}",
            self.path.display()
        );
        let rendered: Vec<String> = fields.iter().map(Field::render).collect();
        writeln!(self.writer, "{},{}", rendered.join(","), self.hash)?;
        Ok(())
    }

    pub fn finish(mut self) -> Result<PathBuf> {
        self.writer.flush()?;
        Ok(self.path)
    }
}

/// Pretty-printed JSON with a trailing newline. Key order is deterministic
/// (struct declaration order; maps are sorted).
pub fn write_json(path: &Path, value: &serde_json::Value) -> Result<PathBuf> {
    if let Some(parent) = path.parent() {
        std::fs::create_dir_all(parent)?;
    }
    let mut writer = BufWriter::new(File::create(path)?);
    serde_json::to_writer_pretty(&mut writer, value)?;
    writeln!(writer)?;
    writer.flush()?;
    Ok(path.to_path_buf())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn float_formatting_has_17_significant_digits() {
        assert_eq!(fmt_float(0.25), "2.5000000000000000e-1");
        assert_eq!(fmt_float(9.76), "9.7599999999999998e0");
    }
}
