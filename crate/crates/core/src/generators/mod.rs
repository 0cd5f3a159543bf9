//! Adversarial string families on which greedy parsing loses to the
//! bit-optimal parsing, together with the cheap parsings that show it.

mod field;
mod gray;
mod steiner;

use std::fmt;
use std::ops::Range;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::parser::{validate_parsing, Parsing, Phrase, Text, Variant};

pub use field::{affine_plane, gf_add, gf_mul, AffinePlane};
pub use gray::{
    gen_gray_binary, gen_gray_binary_nc, gen_gray_multi, gen_gray_multi_nc, gray_sequence,
    gray_word, GrayCodeSeq,
};
pub use steiner::{
    count_pair_phrases, gen_steiner, gen_steiner_nc, steiner_blocks, steiner_length, steiner_x,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GenError {
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("n = {n} is too small; this family needs n >= {needed}")]
    InstanceTooSmall { n: usize, needed: usize },
    #[error("no affine plane of order {0} is available (supported: 2, 4, 16, 256)")]
    UnsupportedOrder(usize),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Family {
    GrayMulti,
    GrayBinary,
    GrayMultiNc,
    GrayBinaryNc,
    Steiner,
    SteinerNc,
}

impl Family {
    pub const ALL: [Family; 6] = [
        Family::GrayMulti,
        Family::GrayBinary,
        Family::GrayMultiNc,
        Family::GrayBinaryNc,
        Family::Steiner,
        Family::SteinerNc,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Family::GrayMulti => "gray_multi",
            Family::GrayBinary => "gray_binary",
            Family::GrayMultiNc => "gray_multi_nc",
            Family::GrayBinaryNc => "gray_binary_nc",
            Family::Steiner => "steiner",
            Family::SteinerNc => "steiner_nc",
        }
    }

    /// The parsing variant the family is designed against.
    pub fn variant(self) -> Variant {
        match self {
            Family::GrayMulti | Family::GrayBinary | Family::Steiner => Variant::Classical,
            _ => Variant::Nonclassical,
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Family::ALL
            .into_iter()
            .find(|f| f.name() == s.trim())
            .ok_or_else(|| format!("unknown family `{s}`"))
    }
}

/// Construction parameters; fields a family does not use are `None`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InstanceParams {
    pub n: usize,
    pub sigma: usize,
    /// Requested phrase-count parameter (Gray families).
    pub z: Option<usize>,
    /// Number of Gray words used.
    pub k: Option<usize>,
    /// Length of the long unary run.
    pub ell: usize,
    /// Gray word length.
    pub m: Option<usize>,
    /// Recursion depth (Steiner families).
    pub x: Option<u32>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Marker {
    pub name: String,
    pub position: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeneratedInstance {
    pub family: Family,
    pub text: Text,
    pub params: InstanceParams,
    pub witness: Parsing,
    pub markers: Vec<Marker>,
    /// Ranges that the greedy parser should emit as single phrases (the
    /// suffix blocks of the Gray families); empty for other families.
    pub greedy_blocks: Vec<Range<usize>>,
}

impl GeneratedInstance {
    pub fn variant(&self) -> Variant {
        self.family.variant()
    }

    pub fn marker(&self, name: &str) -> Option<usize> {
        self.markers
            .iter()
            .find(|m| m.name == name)
            .map(|m| m.position)
    }

    /// Number of `greedy_blocks` that appear as whole phrases of `greedy`.
    pub fn matched_blocks(&self, greedy: &Parsing) -> usize {
        let starts = greedy.boundaries();
        self.greedy_blocks
            .iter()
            .filter(|r| {
                starts
                    .binary_search(&r.start)
                    .is_ok_and(|i| starts.get(i + 1) == Some(&r.end))
            })
            .count()
    }

    /// JSON sidecar written next to generated texts.
    pub fn sidecar_json(&self) -> serde_json::Value {
        serde_json::json!({
            "family": self.family.name(),
            "n": self.params.n,
            "sigma": self.params.sigma,
            "z": self.params.z,
            "k": self.params.k,
            "ell": self.params.ell,
            "m": self.params.m,
            "x": self.params.x,
            "markers": self.markers,
        })
    }
}

/// The cheap parsing built alongside an instance.
pub fn witness_parse(inst: &GeneratedInstance) -> Parsing {
    inst.witness.clone()
}

fn finish_instance(
    family: Family,
    letters: Vec<u32>,
    params: InstanceParams,
    witness: Parsing,
    markers: Vec<Marker>,
    greedy_blocks: Vec<Range<usize>>,
) -> GeneratedInstance {
    let text = Text::new(letters).expect("generated letters stay below the bound");
    debug_assert_eq!(text.len(), params.n);
    debug_assert_eq!(validate_parsing(&text, &witness), Ok(()));
    GeneratedInstance {
        family,
        text,
        params,
        witness,
        markers,
        greedy_blocks,
    }
}

fn marker(name: &str, position: usize) -> Marker {
    Marker {
        name: name.to_string(),
        position,
    }
}

/// Emits phrases over a finished text, left to right.
struct WitnessBuilder<'a> {
    text: &'a [u32],
    variant: Variant,
    cursor: usize,
    last_seen: Vec<Option<usize>>,
    phrases: Vec<Phrase>,
}

impl<'a> WitnessBuilder<'a> {
    fn new(text: &'a [u32], variant: Variant) -> Self {
        let top = text.iter().copied().max().unwrap_or(0) as usize;
        Self {
            text,
            variant,
            cursor: 0,
            last_seen: vec![None; top + 1],
            phrases: Vec::new(),
        }
    }

    fn push(&mut self, phrase: Phrase) {
        for p in self.cursor..self.cursor + phrase.len() {
            self.last_seen[self.text[p] as usize] = Some(p);
        }
        self.cursor += phrase.len();
        self.phrases.push(phrase);
    }

    fn lit(&mut self) {
        let c = self.text[self.cursor];
        self.push(match self.variant {
            Variant::Classical => Phrase::literal_triple(c),
            Variant::Nonclassical => Phrase::Literal(c),
        });
    }

    fn lits(&mut self, count: usize) {
        for _ in 0..count {
            self.lit();
        }
    }

    /// A phrase of `len` letters copied from `src`. In the classical variant
    /// only the first `len - 1` letters are copied and the last is explicit.
    fn copy_from(&mut self, src: usize, len: usize) {
        let p = self.cursor;
        debug_assert!(src < p && len >= 1);
        let phrase = match self.variant {
            Variant::Classical if len == 1 => Phrase::literal_triple(self.text[p]),
            Variant::Classical => Phrase::Triple {
                dist: p - 1 - src,
                len,
                last: self.text[p + len - 1],
            },
            Variant::Nonclassical => Phrase::Reference {
                dist: p - 1 - src,
                len,
            },
        };
        self.push(phrase);
    }

    fn copy_back(&mut self, stride: usize, len: usize) {
        self.copy_from(self.cursor - stride, len);
    }

    /// Copies the current letter from its nearest earlier occurrence:
    /// a two-letter triple (classical) or a one-letter reference.
    fn letter_ref(&mut self) {
        let c = self.text[self.cursor] as usize;
        match self.last_seen[c] {
            Some(src) => match self.variant {
                Variant::Classical => self.copy_from(src, 2),
                Variant::Nonclassical => self.copy_from(src, 1),
            },
            None => match self.variant {
                Variant::Classical => self.lits(2),
                Variant::Nonclassical => self.lit(),
            },
        }
    }

    fn finish(self) -> Parsing {
        assert_eq!(self.cursor, self.text.len(), "witness does not cover the text");
        Parsing::new(self.variant, self.phrases)
    }
}
