//! Universal integer codes, bit strings, and the serialization of whole
//! parsings.
//!
//! A classical triple `⟨d, ℓ, c⟩` is written as `e_d(d) e_ℓ(ℓ) e_c(c)`. A
//! nonclassical phrase starts with a tag bit: `0 e_c(c)` for a literal,
//! `1 e_d(d) e_ℓ(ℓ)` for a reference. Letters are coded by their raw value.

mod bits;
mod codes;
pub mod format;

use serde::{Deserialize, Serialize};

pub use bits::{BitReader, BitString};
pub use codes::{code_length, decode_from, decode_int, encode_int, encode_into, Codec, CodecError};

use crate::parser::{Parsing, Phrase, Variant};

/// The encoder triple `(e_d, e_ℓ, e_c)` together with the phrase variant.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CostModel {
    pub distance: Codec,
    pub length: Codec,
    pub letter: Codec,
    pub variant: Variant,
}

impl CostModel {
    pub fn new(distance: Codec, length: Codec, letter: Codec, variant: Variant) -> Self {
        Self {
            distance,
            length,
            letter,
            variant,
        }
    }

    /// The same codec in all three roles.
    pub fn uniform(codec: Codec, variant: Variant) -> Self {
        Self::new(codec, codec, codec, variant)
    }

    pub fn with_variant(self, variant: Variant) -> Self {
        Self { variant, ..self }
    }

    /// Bits of a classical triple.
    pub fn triple_bits(&self, dist: usize, len: usize, last: u32) -> u64 {
        u64::from(code_length(self.distance, dist as u64))
            + u64::from(code_length(self.length, len as u64))
            + u64::from(code_length(self.letter, u64::from(last)))
    }

    /// Bits of a nonclassical literal, tag included.
    pub fn literal_bits(&self, letter: u32) -> u64 {
        1 + u64::from(code_length(self.letter, u64::from(letter)))
    }

    /// Bits of a nonclassical reference, tag included.
    pub fn reference_bits(&self, dist: usize, len: usize) -> u64 {
        1 + u64::from(code_length(self.distance, dist as u64))
            + u64::from(code_length(self.length, len as u64))
    }

    pub fn phrase_bits(&self, phrase: &Phrase) -> u64 {
        match *phrase {
            Phrase::Triple { dist, len, last } => self.triple_bits(dist, len, last),
            Phrase::Literal(c) => self.literal_bits(c),
            Phrase::Reference { dist, len } => self.reference_bits(dist, len),
        }
    }

    /// Encoded size of a parsing, without materializing it.
    pub fn parsing_bits(&self, parsing: &Parsing) -> u64 {
        parsing.phrases.iter().map(|p| self.phrase_bits(p)).sum()
    }
}

impl Default for CostModel {
    fn default() -> Self {
        Self::uniform(Codec::EliasGamma, Variant::Classical)
    }
}

/// Serializes a parsing phrase by phrase.
pub fn encode_parsing(parsing: &Parsing, model: &CostModel) -> BitString {
    let mut out = BitString::with_capacity(model.parsing_bits(parsing) as usize);
    for phrase in &parsing.phrases {
        match *phrase {
            Phrase::Triple { dist, len, last } => {
                encode_into(model.distance, dist as u64, &mut out);
                encode_into(model.length, len as u64, &mut out);
                encode_into(model.letter, u64::from(last), &mut out);
            }
            Phrase::Literal(c) => {
                out.push(false);
                encode_into(model.letter, u64::from(c), &mut out);
            }
            Phrase::Reference { dist, len } => {
                out.push(true);
                encode_into(model.distance, dist as u64, &mut out);
                encode_into(model.length, len as u64, &mut out);
            }
        }
    }
    out
}

/// Reads `phrase_count` phrases of `model.variant` from the start of `bits`.
/// Trailing bits (such as byte padding) are ignored.
pub fn decode_parsing(
    bits: &BitString,
    model: &CostModel,
    phrase_count: usize,
) -> Result<Parsing, CodecError> {
    let mut r = bits.reader();
    let mut phrases = Vec::with_capacity(phrase_count.min(bits.len()));
    let usize_of = |v: u64, offset: usize| {
        usize::try_from(v).map_err(|_| CodecError::MalformedCodeword { offset })
    };
    let u32_of = |v: u64, offset: usize| {
        u32::try_from(v).map_err(|_| CodecError::MalformedCodeword { offset })
    };
    for _ in 0..phrase_count {
        let start = r.position();
        let phrase = match model.variant {
            Variant::Classical => {
                let dist = usize_of(decode_from(model.distance, &mut r)?, start)?;
                let len = usize_of(decode_from(model.length, &mut r)?, start)?;
                let last = u32_of(decode_from(model.letter, &mut r)?, start)?;
                if len == 0 {
                    return Err(CodecError::MalformedCodeword { offset: start });
                }
                Phrase::Triple { dist, len, last }
            }
            Variant::Nonclassical => {
                let tag = r
                    .read_bit()
                    .ok_or(CodecError::TruncatedCodeword { offset: start })?;
                if tag {
                    let dist = usize_of(decode_from(model.distance, &mut r)?, start)?;
                    let len = usize_of(decode_from(model.length, &mut r)?, start)?;
                    if len == 0 {
                        return Err(CodecError::MalformedCodeword { offset: start });
                    }
                    Phrase::Reference { dist, len }
                } else {
                    Phrase::Literal(u32_of(decode_from(model.letter, &mut r)?, start)?)
                }
            }
        };
        phrases.push(phrase);
    }
    Ok(Parsing::new(model.variant, phrases))
}
