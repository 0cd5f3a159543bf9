//! The `LZRL` container: a fixed 25-byte header followed by the encoded
//! phrases, zero-padded to a byte boundary.
//!
//! ```text
//! "LZRL" | version u8 | variant u8 | codec d,l,c u8 x3 | phrases u64 LE | text length u64 LE | payload
//! ```

use thiserror::Error;

use super::{decode_parsing, encode_parsing, BitString, Codec, CodecError, CostModel};
use crate::parser::{reconstruct, ParseError, Parsing, Text, Variant};

pub const MAGIC: &[u8; 4] = b"LZRL";
pub const VERSION: u8 = 1;
pub const HEADER_LEN: usize = 4 + 1 + 1 + 3 + 8 + 8;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FormatError {
    #[error("file is shorter than the {HEADER_LEN}-byte header")]
    ShortHeader,
    #[error("bad magic bytes")]
    BadMagic,
    #[error("unsupported format version {0}")]
    UnsupportedVersion(u8),
    #[error("unknown variant id {0}")]
    UnknownVariant(u8),
    #[error("unknown codec id {0}")]
    UnknownCodec(u8),
    #[error(transparent)]
    Codec(#[from] CodecError),
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("decoded text has {actual} letters, header says {expected}")]
    LengthMismatch { expected: u64, actual: u64 },
    #[error("model variant {model} differs from parsing variant {parsing}")]
    VariantMismatch { model: Variant, parsing: Variant },
}

/// Header plus decoded phrases of an `LZRL` file.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Container {
    pub model: CostModel,
    pub text_len: u64,
    pub parsing: Parsing,
}

impl Container {
    /// Rebuilds the original text and checks it against the header.
    pub fn text(&self) -> Result<Text, FormatError> {
        let text = reconstruct(&self.parsing)?;
        if text.len() as u64 != self.text_len {
            return Err(FormatError::LengthMismatch {
                expected: self.text_len,
                actual: text.len() as u64,
            });
        }
        Ok(text)
    }
}

pub fn write_container(
    parsing: &Parsing,
    model: &CostModel,
    text_len: u64,
) -> Result<Vec<u8>, FormatError> {
    if parsing.variant != model.variant {
        return Err(FormatError::VariantMismatch {
            model: model.variant,
            parsing: parsing.variant,
        });
    }
    let payload = encode_parsing(parsing, model);
    let mut out = Vec::with_capacity(HEADER_LEN + payload.as_bytes().len());
    out.extend_from_slice(MAGIC);
    out.push(VERSION);
    out.push(model.variant.id());
    out.push(model.distance.id());
    out.push(model.length.id());
    out.push(model.letter.id());
    out.extend_from_slice(&(parsing.z() as u64).to_le_bytes());
    out.extend_from_slice(&text_len.to_le_bytes());
    out.extend_from_slice(payload.as_bytes());
    Ok(out)
}

pub fn read_container(bytes: &[u8]) -> Result<Container, FormatError> {
    if bytes.len() < HEADER_LEN {
        return Err(FormatError::ShortHeader);
    }
    if &bytes[..4] != MAGIC {
        return Err(FormatError::BadMagic);
    }
    if bytes[4] != VERSION {
        return Err(FormatError::UnsupportedVersion(bytes[4]));
    }
    let variant = Variant::from_id(bytes[5]).ok_or(FormatError::UnknownVariant(bytes[5]))?;
    let codec = |b: u8| Codec::from_id(b).ok_or(FormatError::UnknownCodec(b));
    let model = CostModel::new(codec(bytes[6])?, codec(bytes[7])?, codec(bytes[8])?, variant);
    let u64_at = |at: usize| u64::from_le_bytes(bytes[at..at + 8].try_into().expect("8 bytes"));
    let phrase_count = u64_at(9);
    let text_len = u64_at(17);
    let payload = &bytes[HEADER_LEN..];
    let bits = BitString::from_bytes(payload, payload.len() * 8).expect("length fits");
    // Every phrase takes at least one bit, which bounds a corrupt count.
    if phrase_count > bits.len() as u64 {
        return Err(CodecError::TruncatedCodeword { offset: bits.len() }.into());
    }
    let parsing = decode_parsing(&bits, &model, phrase_count as usize)?;
    Ok(Container {
        model,
        text_len,
        parsing,
    })
}
