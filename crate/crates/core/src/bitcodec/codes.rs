//! Universal prefix codes for non-negative integers.
//!
//! All three codes are classically defined on positive integers. Every
//! function here takes a non-negative `x` and works with `x + 1`, so `0`
//! is representable and the codeword of `x` is the classical codeword of
//! `x + 1`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::bits::{BitReader, BitString};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Codec {
    #[serde(rename = "gamma")]
    EliasGamma,
    #[serde(rename = "delta")]
    EliasDelta,
    Levenshtein,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
pub enum CodecError {
    #[error("bit stream ends inside the codeword starting at bit {offset}")]
    TruncatedCodeword { offset: usize },
    #[error("no valid codeword starts at bit {offset}")]
    MalformedCodeword { offset: usize },
}

impl Codec {
    pub const ALL: [Codec; 3] = [Codec::EliasGamma, Codec::EliasDelta, Codec::Levenshtein];

    /// Identifier used in the encoded-file header.
    pub fn id(self) -> u8 {
        match self {
            Codec::EliasGamma => 0,
            Codec::EliasDelta => 1,
            Codec::Levenshtein => 2,
        }
    }

    pub fn from_id(id: u8) -> Option<Codec> {
        Codec::ALL.into_iter().find(|c| c.id() == id)
    }

    pub fn name(self) -> &'static str {
        match self {
            Codec::EliasGamma => "gamma",
            Codec::EliasDelta => "delta",
            Codec::Levenshtein => "levenshtein",
        }
    }
}

impl fmt::Display for Codec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Codec {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim().to_ascii_lowercase().as_str() {
            "g" | "gamma" | "eliasgamma" | "elias-gamma" => Ok(Codec::EliasGamma),
            "d" | "delta" | "eliasdelta" | "elias-delta" => Ok(Codec::EliasDelta),
            "l" | "lev" | "levenshtein" => Ok(Codec::Levenshtein),
            other => Err(format!("unknown codec `{other}`")),
        }
    }
}

#[inline]
fn floor_log2(v: u128) -> u32 {
    debug_assert!(v > 0);
    127 - v.leading_zeros()
}

#[inline]
fn gamma_len(v: u128) -> u32 {
    2 * floor_log2(v) + 1
}

#[inline]
fn delta_len(v: u128) -> u32 {
    let width = floor_log2(v);
    gamma_len(u128::from(width) + 1) + width
}

fn levenshtein_len(v: u128) -> u32 {
    let mut steps = 1;
    let mut payload = 0;
    let mut n = v;
    loop {
        let width = floor_log2(n);
        payload += width;
        if width == 0 {
            break;
        }
        steps += 1;
        n = u128::from(width);
    }
    steps + 1 + payload
}

/// Length in bits of the codeword for `x`.
pub fn code_length(codec: Codec, x: u64) -> u32 {
    let v = u128::from(x) + 1;
    match codec {
        Codec::EliasGamma => gamma_len(v),
        Codec::EliasDelta => delta_len(v),
        Codec::Levenshtein => levenshtein_len(v),
    }
}

fn write_gamma(out: &mut BitString, v: u128) {
    let width = floor_log2(v);
    out.push_repeated(false, width as usize);
    out.push_bits(v, width + 1);
}

fn write_delta(out: &mut BitString, v: u128) {
    let width = floor_log2(v);
    write_gamma(out, u128::from(width) + 1);
    out.push_bits(v, width);
}

fn write_levenshtein(out: &mut BitString, v: u128) {
    // Payload chunks from the innermost value outwards; emitted in reverse.
    let mut chunks: Vec<(u128, u32)> = Vec::new();
    let mut n = v;
    loop {
        let width = floor_log2(n);
        if width == 0 {
            break;
        }
        chunks.push((n, width));
        n = u128::from(width);
    }
    out.push_repeated(true, chunks.len() + 1);
    out.push(false);
    for &(value, width) in chunks.iter().rev() {
        out.push_bits(value, width);
    }
}

/// Appends the codeword for `x` to `out`.
pub fn encode_into(codec: Codec, x: u64, out: &mut BitString) {
    let v = u128::from(x) + 1;
    match codec {
        Codec::EliasGamma => write_gamma(out, v),
        Codec::EliasDelta => write_delta(out, v),
        Codec::Levenshtein => write_levenshtein(out, v),
    }
}

pub fn encode_int(codec: Codec, x: u64) -> BitString {
    let mut out = BitString::with_capacity(code_length(codec, x) as usize);
    encode_into(codec, x, &mut out);
    out
}

fn read_gamma(r: &mut BitReader<'_>, start: usize) -> Result<u128, CodecError> {
    let truncated = CodecError::TruncatedCodeword { offset: start };
    let mut zeros = 0u32;
    loop {
        match r.read_bit() {
            None => return Err(truncated),
            Some(true) => break,
            Some(false) => {
                zeros += 1;
                if zeros > 64 {
                    return Err(CodecError::MalformedCodeword { offset: start });
                }
            }
        }
    }
    let low = r.read_bits(zeros).ok_or(truncated)?;
    Ok((1u128 << zeros) | low)
}

fn read_delta(r: &mut BitReader<'_>, start: usize) -> Result<u128, CodecError> {
    let width = read_gamma(r, start)? - 1;
    if width > 64 {
        return Err(CodecError::MalformedCodeword { offset: start });
    }
    let width = width as u32;
    let low = r
        .read_bits(width)
        .ok_or(CodecError::TruncatedCodeword { offset: start })?;
    Ok((1u128 << width) | low)
}

fn read_levenshtein(r: &mut BitReader<'_>, start: usize) -> Result<u128, CodecError> {
    let truncated = CodecError::TruncatedCodeword { offset: start };
    let mut steps = 0u32;
    loop {
        match r.read_bit() {
            None => return Err(truncated),
            Some(false) => break,
            Some(true) => {
                steps += 1;
                if steps > 8 {
                    return Err(CodecError::MalformedCodeword { offset: start });
                }
            }
        }
    }
    // A zero step count is the codeword of 0, which the +1 shift never emits.
    if steps == 0 {
        return Err(CodecError::MalformedCodeword { offset: start });
    }
    let mut n = 1u128;
    for _ in 1..steps {
        if n > 64 {
            return Err(CodecError::MalformedCodeword { offset: start });
        }
        let width = n as u32;
        let low = r.read_bits(width).ok_or(truncated)?;
        n = (1u128 << width) | low;
    }
    Ok(n)
}

/// Reads one codeword through a reader, returning the decoded `x`.
pub fn decode_from(codec: Codec, r: &mut BitReader<'_>) -> Result<u64, CodecError> {
    let start = r.position();
    let v = match codec {
        Codec::EliasGamma => read_gamma(r, start)?,
        Codec::EliasDelta => read_delta(r, start)?,
        Codec::Levenshtein => read_levenshtein(r, start)?,
    };
    u64::try_from(v - 1).map_err(|_| CodecError::MalformedCodeword { offset: start })
}

/// Decodes the codeword starting at `offset`; returns the value and the
/// offset just past the codeword.
pub fn decode_int(codec: Codec, bits: &BitString, offset: usize) -> Result<(u64, usize), CodecError> {
    let mut r = bits.reader_at(offset);
    let x = decode_from(codec, &mut r)?;
    Ok((x, r.position()))
}
