//! Netpbm grayscale (P2, P5) and color (P6) images.

use std::path::Path;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PnmFormat {
    /// ASCII grayscale.
    P2,
    /// Binary grayscale.
    P5,
    /// Binary RGB.
    P6,
}

impl PnmFormat {
    pub fn channels(self) -> usize {
        match self {
            PnmFormat::P2 | PnmFormat::P5 => 1,
            PnmFormat::P6 => 3,
        }
    }

    fn magic(self) -> &'static str {
        match self {
            PnmFormat::P2 => "P2",
            PnmFormat::P5 => "P5",
            PnmFormat::P6 => "P6",
        }
    }
}

/// Pixels are row-major; color images interleave `r, g, b` per pixel.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Image {
    pub width: usize,
    pub height: usize,
    pub maxval: u16,
    pub channels: usize,
    pub data: Vec<u16>,
}

impl Image {
    pub fn is_color(&self) -> bool {
        self.channels == 3
    }

    pub fn pixel_count(&self) -> usize {
        self.width * self.height
    }

    pub fn values(&self) -> Vec<f64> {
        self.data.iter().map(|&v| f64::from(v)).collect()
    }
}

struct Cursor<'a> {
    bytes: &'a [u8],
    pos: usize,
    source: &'a str,
}

impl Cursor<'_> {
    fn error(&self, message: impl Into<String>) -> Error {
        Error::parse(format!("{}: byte {}", self.source, self.pos), message)
    }

    fn skip_space_and_comments(&mut self) {
        while let Some(&b) = self.bytes.get(self.pos) {
            if b == b'#' {
                while self.bytes.get(self.pos).is_some_and(|&b| b != b'\n') {
                    self.pos += 1;
                }
            } else if b.is_ascii_whitespace() {
                self.pos += 1;
            } else {
                break;
            }
        }
    }

    fn number(&mut self, what: &str) -> Result<u32> {
        self.skip_space_and_comments();
        let start = self.pos;
        while self.bytes.get(self.pos).is_some_and(u8::is_ascii_digit) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error(format!("expected {what}")));
        }
        std::str::from_utf8(&self.bytes[start..self.pos])
            .ok()
            .and_then(|s| s.parse().ok())
            .ok_or_else(|| self.error(format!("{what} is out of range")))
    }
}

pub fn parse_pnm(bytes: &[u8], source: &str) -> Result<Image> {
    let mut cur = Cursor { bytes, pos: 0, source };
    let format = match bytes.get(..2) {
        Some(b"P2") => PnmFormat::P2,
        Some(b"P5") => PnmFormat::P5,
        Some(b"P6") => PnmFormat::P6,
        Some([b'P', _]) => {
            return Err(Error::Unsupported(format!(
                "{source}: netpbm variant {} (supported: P2, P5, P6)",
                String::from_utf8_lossy(&bytes[..2])
            )))
        }
        _ => return Err(cur.error("missing netpbm magic number")),
    };
    cur.pos = 2;
    let width = cur.number("width")? as usize;
    let height = cur.number("height")? as usize;
    let maxval = cur.number("maxval")?;
    if width == 0 || height == 0 {
        return Err(cur.error("image has zero size"));
    }
    if maxval == 0 || maxval > 65535 {
        return Err(cur.error(format!("maxval {maxval} is outside 1..=65535")));
    }
    let maxval = maxval as u16;
    let count = width
        .checked_mul(height)
        .and_then(|p| p.checked_mul(format.channels()))
        .ok_or_else(|| cur.error("image dimensions overflow"))?;
    let data = if format == PnmFormat::P2 {
        let mut data = Vec::with_capacity(count);
        for k in 0..count {
            let v = cur.number(&format!("sample {k}"))?;
            if v > u32::from(maxval) {
                return Err(cur.error(format!("sample {v} exceeds maxval {maxval}")));
            }
            data.push(v as u16);
        }
        data
    } else {
        // exactly one whitespace byte separates the header from the raster
        if !bytes.get(cur.pos).is_some_and(u8::is_ascii_whitespace) {
            return Err(cur.error("expected whitespace after maxval"));
        }
        cur.pos += 1;
        let wide = maxval > 255;
        let need = count * if wide { 2 } else { 1 };
        let raster = bytes.get(cur.pos..cur.pos + need).ok_or_else(|| {
            cur.error(format!(
                "raster needs {need} bytes, {} remain",
                bytes.len() - cur.pos.min(bytes.len())
            ))
        })?;
        let data: Vec<u16> = if wide {
            raster
                .chunks_exact(2)
                .map(|b| u16::from_be_bytes([b[0], b[1]]))
                .collect()
        } else {
            raster.iter().map(|&b| u16::from(b)).collect()
        };
        if let Some(k) = data.iter().position(|&v| v > maxval) {
            cur.pos += k;
            return Err(cur.error(format!("sample {} exceeds maxval {maxval}", data[k])));
        }
        data
    };
    Ok(Image {
        width,
        height,
        maxval,
        channels: format.channels(),
        data,
    })
}

pub fn encode_pnm(image: &Image, format: PnmFormat) -> Result<Vec<u8>> {
    if format.channels() != image.channels {
        return Err(Error::Unsupported(format!(
            "{} needs {} channel(s), image has {}",
            format.magic(),
            format.channels(),
            image.channels
        )));
    }
    if image.data.len() != image.pixel_count() * image.channels {
        return Err(Error::LengthMismatch {
            expected: image.pixel_count() * image.channels,
            found: image.data.len(),
        });
    }
    let mut out = format!(
        "{}\n{} {}\n{}\n",
        format.magic(),
        image.width,
        image.height,
        image.maxval
    )
    .into_bytes();
    match format {
        PnmFormat::P2 => {
            for row in image.data.chunks(image.width) {
                let line: Vec<String> = row.iter().map(u16::to_string).collect();
                out.extend_from_slice(line.join(" ").as_bytes());
                out.push(b'\n');
            }
        }
        PnmFormat::P5 | PnmFormat::P6 => {
            if image.maxval > 255 {
                out.extend(image.data.iter().flat_map(|v| v.to_be_bytes()));
            } else {
                out.extend(image.data.iter().map(|&v| v as u8));
            }
        }
    }
    Ok(out)
}

pub fn read_pnm(path: &Path) -> Result<Image> {
    parse_pnm(
        &std::fs::read(path).map_err(super::file_error(path))?,
        &path.display().to_string(),
    )
}

pub fn write_pnm(path: &Path, image: &Image, format: PnmFormat) -> Result<()> {
    super::write_bytes(path, encode_pnm(image, format)?)
}
