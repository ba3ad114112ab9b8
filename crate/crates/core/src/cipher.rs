//! XOR encryption and decryption of 8-bit grayscale pixel buffers.

use thiserror::Error;

use crate::keystream::{generate_keystream, KeyConfig, Keystream, KeystreamError};

/// An 8-bit grayscale image with a row-major pixel buffer.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Image {
    pub width: usize,
    pub height: usize,
    pub pixels: Vec<u8>,
}

impl Image {
    /// Builds an image, checking that the buffer length matches the
    /// dimensions.
    pub fn new(width: usize, height: usize, pixels: Vec<u8>) -> Result<Self, CipherError> {
        if width == 0 || height == 0 || pixels.len() != width * height {
            return Err(CipherError::DimensionMismatch {
                width,
                height,
                len: pixels.len(),
            });
        }
        Ok(Image {
            width,
            height,
            pixels,
        })
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CipherError {
    #[error("pixel buffer length {len} does not match {width}x{height}")]
    DimensionMismatch {
        width: usize,
        height: usize,
        len: usize,
    },
    #[error("data length {data} does not match keystream length {keystream}")]
    LengthMismatch { data: usize, keystream: usize },
    #[error(transparent)]
    Keystream(#[from] KeystreamError),
}

/// Elementwise XOR of a buffer with a keystream of the same length.
pub fn xor_bytes(data: &[u8], ks: &Keystream) -> Result<Vec<u8>, CipherError> {
    if data.len() != ks.bytes.len() {
        return Err(CipherError::LengthMismatch {
            data: data.len(),
            keystream: ks.bytes.len(),
        });
    }
    Ok(data.iter().zip(&ks.bytes).map(|(d, k)| d ^ k).collect())
}

/// Generates exactly `width * height` keystream bytes from the key and
/// XORs them over the pixels in row-major order.
pub fn encrypt_image(img: &Image, key: &KeyConfig) -> Result<Image, CipherError> {
    let ks = generate_keystream(key, img.pixels.len())?;
    Ok(Image {
        width: img.width,
        height: img.height,
        pixels: xor_bytes(&img.pixels, &ks)?,
    })
}

/// XOR is an involution, so decryption is the same computation.
pub fn decrypt_image(img: &Image, key: &KeyConfig) -> Result<Image, CipherError> {
    encrypt_image(img, key)
}
