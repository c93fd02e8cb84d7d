//! File formats: CSV series and matrices, Netpbm images, JSON documents.
//!
//! CSV values are written in shortest round-trip form, so a write followed by a read
//! returns the same `f64` values.

mod csv;
mod netpbm;

pub use csv::{
    format_matrix, format_series, parse_matrix, parse_series, read_matrix, read_series, write_matrix, write_series,
};
pub use netpbm::{encode_pnm, parse_pnm, read_pnm, write_pnm, Image, PnmFormat};

use serde::{de::DeserializeOwned, Serialize};
use std::path::Path;

use crate::error::{Error, Result};

/// Prefix an I/O error with the file it came from.
pub(crate) fn file_error(path: &Path) -> impl FnOnce(std::io::Error) -> Error + '_ {
    move |e| Error::Io(std::io::Error::new(e.kind(), format!("{}: {e}", path.display())))
}

pub(crate) fn read_text(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(file_error(path))
}

pub(crate) fn write_bytes(path: &Path, bytes: impl AsRef<[u8]>) -> Result<()> {
    std::fs::write(path, bytes).map_err(file_error(path))
}

pub fn write_json<T: Serialize>(path: &Path, value: &T) -> Result<()> {
    let mut text = serde_json::to_string_pretty(value)?;
    text.push('\n');
    write_bytes(path, text)
}

pub fn read_json<T: DeserializeOwned>(path: &Path) -> Result<T> {
    serde_json::from_str(&read_text(path)?)
        .map_err(|e| Error::parse(format!("{}:{}:{}", path.display(), e.line(), e.column()), e.to_string()))
}
