//! LZ77 phrases and parsings, the greedy parsers, validation and
//! reconstruction.
//!
//! Positions are 0-based throughout. A reference phrase starting at `p`
//! whose copied part begins at `j < p` stores the distance `d = p - 1 - j`,
//! so `d = 0` means the copy starts at the immediately preceding letter.
//! One-letter classical phrases store `d = 0` and decoders dispatch on the
//! length.

mod greedy;
mod index;
pub mod naive;
mod text;
mod validate;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use greedy::{
    greedy_parse, greedy_parse_classical, greedy_parse_nonclassical, longest_previous_factor,
    minimize_distances,
};
pub use index::{PrefixScan, SourceStep, SuffixIndex};
pub use text::{Text, TextError, BYTE_ALPHABET_BOUND};
pub use validate::{reconstruct, validate_parsing, Violation, ViolationKind};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Variant {
    /// Phrases are triples: a copied prefix plus one explicit letter.
    Classical,
    /// Phrases are either a single literal or a wholly copied string.
    Nonclassical,
}

impl Variant {
    pub fn id(self) -> u8 {
        match self {
            Variant::Classical => 0,
            Variant::Nonclassical => 1,
        }
    }

    pub fn from_id(id: u8) -> Option<Self> {
        match id {
            0 => Some(Variant::Classical),
            1 => Some(Variant::Nonclassical),
            _ => None,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Variant::Classical => "classical",
            Variant::Nonclassical => "nonclassical",
        }
    }
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Variant {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim().to_ascii_lowercase().as_str() {
            "classical" | "c" | "lz77" => Ok(Variant::Classical),
            "nonclassical" | "nc" | "lzss" => Ok(Variant::Nonclassical),
            other => Err(format!("unknown variant `{other}`")),
        }
    }
}

/// One LZ77 factor.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(into = "PhraseRecord", try_from = "PhraseRecord")]
pub enum Phrase {
    /// `⟨d, ℓ, c⟩`: `len - 1` letters copied from distance `dist`, then `last`.
    Triple { dist: usize, len: usize, last: u32 },
    /// A single explicit letter (nonclassical).
    Literal(u32),
    /// `⟨d, ℓ⟩`: `len` letters copied from distance `dist` (nonclassical).
    Reference { dist: usize, len: usize },
}

impl Phrase {
    pub fn literal_triple(letter: u32) -> Self {
        Phrase::Triple {
            dist: 0,
            len: 1,
            last: letter,
        }
    }

    pub fn len(&self) -> usize {
        match *self {
            Phrase::Triple { len, .. } | Phrase::Reference { len, .. } => len,
            Phrase::Literal(_) => 1,
        }
    }

    /// Phrases are never empty; present for clippy's `len` convention.
    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn dist(&self) -> usize {
        match *self {
            Phrase::Triple { dist, .. } | Phrase::Reference { dist, .. } => dist,
            Phrase::Literal(_) => 0,
        }
    }

    /// Number of letters taken from an earlier occurrence.
    pub fn copied_len(&self) -> usize {
        match *self {
            Phrase::Triple { len, .. } => len - 1,
            Phrase::Reference { len, .. } => len,
            Phrase::Literal(_) => 0,
        }
    }

    pub fn last_letter(&self) -> Option<u32> {
        match *self {
            Phrase::Triple { last, .. } => Some(last),
            Phrase::Literal(c) => Some(c),
            Phrase::Reference { .. } => None,
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            Phrase::Triple { .. } => "triple",
            Phrase::Literal(_) => "literal",
            Phrase::Reference { .. } => "reference",
        }
    }

    pub fn variant(&self) -> Variant {
        match self {
            Phrase::Triple { .. } => Variant::Classical,
            _ => Variant::Nonclassical,
        }
    }
}

/// JSON shape of a phrase: `{kind, d, ell, c}`.
#[derive(Debug, Clone, Serialize, Deserialize)]
struct PhraseRecord {
    kind: String,
    d: usize,
    ell: usize,
    c: Option<u32>,
}

impl From<Phrase> for PhraseRecord {
    fn from(p: Phrase) -> Self {
        PhraseRecord {
            kind: p.kind().to_string(),
            d: p.dist(),
            ell: p.len(),
            c: p.last_letter(),
        }
    }
}

impl TryFrom<PhraseRecord> for Phrase {
    type Error = String;

    fn try_from(r: PhraseRecord) -> Result<Self, Self::Error> {
        if r.ell == 0 {
            return Err("phrase length must be positive".into());
        }
        match (r.kind.as_str(), r.c) {
            ("triple", Some(last)) => Ok(Phrase::Triple {
                dist: r.d,
                len: r.ell,
                last,
            }),
            ("literal", Some(c)) if r.ell == 1 => Ok(Phrase::Literal(c)),
            ("reference", None) => Ok(Phrase::Reference {
                dist: r.d,
                len: r.ell,
            }),
            (kind, _) => Err(format!("inconsistent phrase record of kind `{kind}`")),
        }
    }
}

/// An ordered list of phrases for one variant.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Parsing {
    pub variant: Variant,
    pub phrases: Vec<Phrase>,
}

impl Parsing {
    pub fn new(variant: Variant, phrases: Vec<Phrase>) -> Self {
        Self { variant, phrases }
    }

    /// Number of phrases.
    pub fn z(&self) -> usize {
        self.phrases.len()
    }

    /// Total number of letters covered.
    pub fn covered_len(&self) -> usize {
        self.phrases.iter().map(Phrase::len).sum()
    }

    /// Start position of every phrase, plus the end of the last one.
    pub fn boundaries(&self) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.phrases.len() + 1);
        let mut pos = 0;
        out.push(0);
        for p in &self.phrases {
            pos += p.len();
            out.push(pos);
        }
        out
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.phrases).expect("phrases always serialize")
    }

    /// Reads a JSON phrase array. The variant is inferred from the phrase
    /// kinds; an empty array is classical.
    pub fn from_json(json: &str) -> Result<Self, ParseError> {
        let phrases: Vec<Phrase> =
            serde_json::from_str(json).map_err(|e| ParseError::Json(e.to_string()))?;
        let variant = phrases.first().map_or(Variant::Classical, Phrase::variant);
        if let Some(i) = phrases.iter().position(|p| p.variant() != variant) {
            return Err(ParseError::Json(format!(
                "phrase {i} mixes classical and nonclassical kinds"
            )));
        }
        Ok(Self { variant, phrases })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("invalid parsing: {0}")]
    InvalidParsing(Violation),
    #[error("phrase {phrase} references text before its start")]
    DanglingReference { phrase: usize },
    #[error(transparent)]
    Text(#[from] TextError),
    #[error("malformed parsing JSON: {0}")]
    Json(String),
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn json_dump_shape() {
        let p = Parsing::new(
            Variant::Classical,
            vec![
                Phrase::literal_triple(0),
                Phrase::Triple {
                    dist: 0,
                    len: 3,
                    last: 0,
                },
            ],
        );
        let json = p.to_json();
        assert_eq!(
            json,
            r#"[{"kind":"triple","d":0,"ell":1,"c":0},{"kind":"triple","d":0,"ell":3,"c":0}]"#
        );
        assert_eq!(Parsing::from_json(&json).unwrap(), p);
    }

    #[test]
    fn json_nonclassical_and_rejections() {
        let p = Parsing::new(
            Variant::Nonclassical,
            vec![Phrase::Literal(4), Phrase::Reference { dist: 0, len: 3 }],
        );
        let json = p.to_json();
        assert!(json.contains(r#""c":null"#));
        assert_eq!(Parsing::from_json(&json).unwrap(), p);

        let mixed = r#"[{"kind":"literal","d":0,"ell":1,"c":1},{"kind":"triple","d":0,"ell":1,"c":1}]"#;
        assert!(Parsing::from_json(mixed).is_err());
        let long_literal = r#"[{"kind":"literal","d":0,"ell":2,"c":1}]"#;
        assert!(Parsing::from_json(long_literal).is_err());
    }
}
