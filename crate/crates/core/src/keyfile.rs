//! Key-file serialization.
//!
//! The keystream depends on the exact bit pattern of every parameter, so
//! floating-point fields are stored as 16-hex-digit big-endian encodings of
//! their 64-bit representation rather than as decimal text. `transient` is
//! a plain decimal integer.

use std::collections::HashMap;

use thiserror::Error;

use crate::chua::{ChuaParams, ChuaState};
use crate::keystream::KeyConfig;

const FLOAT_FIELDS: [&str; 11] = [
    "c1", "c2", "l", "r", "ga", "gb", "bp", "v_c1_0", "v_c2_0", "i_l_0", "h",
];

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum KeyFileError {
    #[error("missing field \"{0}\"")]
    MissingField(&'static str),
    #[error("duplicate field \"{0}\"")]
    DuplicateField(String),
    #[error("unknown field \"{0}\"")]
    UnknownField(String),
    #[error("field \"{field}\" is not a 16-hex-digit value: \"{value}\"")]
    BadHexEncoding { field: String, value: String },
    #[error("field \"transient\" is not a decimal integer: \"{0}\"")]
    BadTransient(String),
    #[error("line {0} is not a \"name = value\" assignment")]
    BadLine(usize),
}

/// Serializes a key with one `name = value` assignment per line.
pub fn write_key_file(key: &KeyConfig) -> String {
    let hex = |v: f64| format!("{:016X}", v.to_bits());
    let p = &key.params;
    let s = &key.initial;
    format!(
        "c1 = {}\nc2 = {}\nl = {}\nr = {}\nga = {}\ngb = {}\nbp = {}\n\
         v_c1_0 = {}\nv_c2_0 = {}\ni_l_0 = {}\nh = {}\ntransient = {}\n",
        hex(p.c1),
        hex(p.c2),
        hex(p.l),
        hex(p.r),
        hex(p.ga),
        hex(p.gb),
        hex(p.bp),
        hex(s.v_c1),
        hex(s.v_c2),
        hex(s.i_l),
        hex(key.h),
        key.transient
    )
}

/// Parses a key file. Field order is free; every field must appear exactly
/// once; unknown names are rejected.
pub fn parse_key_file(text: &str) -> Result<KeyConfig, KeyFileError> {
    let mut floats: HashMap<&str, f64> = HashMap::new();
    let mut transient: Option<usize> = None;

    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        let (name, value) = line
            .split_once('=')
            .ok_or(KeyFileError::BadLine(lineno + 1))?;
        let name = name.trim();
        let value = value.trim();

        if name == "transient" {
            if transient.is_some() {
                return Err(KeyFileError::DuplicateField(name.to_string()));
            }
            transient = Some(
                value
                    .parse()
                    .map_err(|_| KeyFileError::BadTransient(value.to_string()))?,
            );
            continue;
        }

        let canonical = FLOAT_FIELDS
            .iter()
            .find(|&&f| f == name)
            .ok_or_else(|| KeyFileError::UnknownField(name.to_string()))?;
        if floats.contains_key(*canonical) {
            return Err(KeyFileError::DuplicateField(name.to_string()));
        }
        if value.len() != 16 || !value.bytes().all(|b| b.is_ascii_hexdigit()) {
            return Err(KeyFileError::BadHexEncoding {
                field: name.to_string(),
                value: value.to_string(),
            });
        }
        let bits = u64::from_str_radix(value, 16).map_err(|_| KeyFileError::BadHexEncoding {
            field: name.to_string(),
            value: value.to_string(),
        })?;
        floats.insert(canonical, f64::from_bits(bits));
    }

    let get = |name: &'static str| floats.get(name).copied().ok_or(KeyFileError::MissingField(name));
    Ok(KeyConfig {
        params: ChuaParams {
            c1: get("c1")?,
            c2: get("c2")?,
            l: get("l")?,
            r: get("r")?,
            ga: get("ga")?,
            gb: get("gb")?,
            bp: get("bp")?,
        },
        initial: ChuaState::new(get("v_c1_0")?, get("v_c2_0")?, get("i_l_0")?),
        h: get("h")?,
        transient: transient.ok_or(KeyFileError::MissingField("transient"))?,
    })
}
