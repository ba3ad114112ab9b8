//! Binary PGM (P5) reading and writing, limited to 8-bit grayscale.

use thiserror::Error;

use crate::cipher::Image;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PgmError {
    #[error("not a binary PGM: expected magic \"P5\"")]
    BadMagic,
    #[error("malformed header: {0}")]
    BadHeader(&'static str),
    #[error("unsupported maxval {0}: only 255 is accepted")]
    UnsupportedMaxval(u64),
    #[error("raster truncated: expected {expected} bytes, found {found}")]
    TruncatedRaster { expected: usize, found: usize },
}

/// Reads the next ASCII token, skipping whitespace and '#' comment lines.
fn next_token(bytes: &[u8], pos: &mut usize) -> Result<u64, PgmError> {
    loop {
        while *pos < bytes.len() && bytes[*pos].is_ascii_whitespace() {
            *pos += 1;
        }
        if *pos < bytes.len() && bytes[*pos] == b'#' {
            while *pos < bytes.len() && bytes[*pos] != b'\n' {
                *pos += 1;
            }
            continue;
        }
        break;
    }
    let start = *pos;
    while *pos < bytes.len() && bytes[*pos].is_ascii_digit() {
        *pos += 1;
    }
    if *pos == start {
        return Err(PgmError::BadHeader("expected a decimal field"));
    }
    std::str::from_utf8(&bytes[start..*pos])
        .ok()
        .and_then(|s| s.parse().ok())
        .ok_or(PgmError::BadHeader("field does not fit in an integer"))
}

/// Parses a binary PGM byte buffer into an [`Image`].
pub fn parse_pgm(bytes: &[u8]) -> Result<Image, PgmError> {
    if bytes.len() < 2 || &bytes[0..2] != b"P5" {
        return Err(PgmError::BadMagic);
    }
    let mut pos = 2;
    let width = next_token(bytes, &mut pos)? as usize;
    let height = next_token(bytes, &mut pos)? as usize;
    let maxval = next_token(bytes, &mut pos)?;
    if maxval != 255 {
        return Err(PgmError::UnsupportedMaxval(maxval));
    }
    if width == 0 || height == 0 {
        return Err(PgmError::BadHeader("zero dimension"));
    }
    // Exactly one whitespace byte separates the header from the raster.
    if pos >= bytes.len() || !bytes[pos].is_ascii_whitespace() {
        return Err(PgmError::BadHeader("missing raster separator"));
    }
    pos += 1;
    let expected = width * height;
    let raster = &bytes[pos..];
    if raster.len() < expected {
        return Err(PgmError::TruncatedRaster {
            expected,
            found: raster.len(),
        });
    }
    Ok(Image {
        width,
        height,
        pixels: raster[..expected].to_vec(),
    })
}

/// Writes the canonical form `P5\n<w> <h>\n255\n` followed by the raster.
pub fn write_pgm(img: &Image) -> Vec<u8> {
    let mut out = format!("P5\n{} {}\n255\n", img.width, img.height).into_bytes();
    out.extend_from_slice(&img.pixels);
    out
}
