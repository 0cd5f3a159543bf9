use std::fmt::Write as _;

use rand::Rng;
use thiserror::Error;

/// Byte input is always accepted: letter codes up to 255 are allowed even
/// when the text is shorter than 255 letters.
pub const BYTE_ALPHABET_BOUND: u32 = 255;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TextError {
    #[error("text must contain at least one letter")]
    Empty,
    #[error("letter {letter} at position {position} exceeds the alphabet bound {bound}")]
    LetterOutOfRange {
        position: usize,
        letter: u32,
        bound: u64,
    },
    #[error("cannot parse letter code `{token}`")]
    BadToken { token: String },
}

/// A non-empty string over an integer alphabet.
///
/// Letter codes are bounded by `max(n, 255)` where `n` is the length.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Text {
    letters: Vec<u32>,
    sigma: usize,
}

impl Text {
    pub fn new(letters: Vec<u32>) -> Result<Self, TextError> {
        if letters.is_empty() {
            return Err(TextError::Empty);
        }
        let bound = (letters.len() as u64).max(u64::from(BYTE_ALPHABET_BOUND));
        let mut seen = Vec::new();
        let mut sigma = 0;
        for (position, &letter) in letters.iter().enumerate() {
            if u64::from(letter) > bound {
                return Err(TextError::LetterOutOfRange {
                    position,
                    letter,
                    bound,
                });
            }
            let idx = letter as usize;
            if idx >= seen.len() {
                seen.resize(idx + 1, false);
            }
            if !seen[idx] {
                seen[idx] = true;
                sigma += 1;
            }
        }
        Ok(Self { letters, sigma })
    }

    pub fn from_bytes(bytes: &[u8]) -> Result<Self, TextError> {
        Self::new(bytes.iter().map(|&b| u32::from(b)).collect())
    }

    /// Parses whitespace-separated decimal letter codes.
    pub fn parse_decimal(input: &str) -> Result<Self, TextError> {
        let letters = input
            .split_ascii_whitespace()
            .map(|tok| {
                tok.parse::<u32>().map_err(|_| TextError::BadToken {
                    token: tok.to_string(),
                })
            })
            .collect::<Result<Vec<_>, _>>()?;
        Self::new(letters)
    }

    /// Uniform random text of length `n` over letters `0..sigma`.
    pub fn random<R: Rng + ?Sized>(rng: &mut R, n: usize, sigma: u32) -> Self {
        assert!(n > 0 && sigma > 0);
        let letters = (0..n).map(|_| rng.gen_range(0..sigma)).collect();
        Self::new(letters).expect("random letters are within the byte bound or below n")
    }

    pub fn letters(&self) -> &[u32] {
        &self.letters
    }

    pub fn into_letters(self) -> Vec<u32> {
        self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    /// Always false; kept for API symmetry with `len`.
    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// Number of distinct letters.
    pub fn sigma(&self) -> usize {
        self.sigma
    }

    /// Canonical decimal form: single spaces, trailing newline.
    pub fn to_decimal_string(&self) -> String {
        let mut out = String::with_capacity(self.letters.len() * 3);
        for (i, letter) in self.letters.iter().enumerate() {
            if i > 0 {
                out.push(' ');
            }
            let _ = write!(out, "{letter}");
        }
        out.push('\n');
        out
    }

    /// The text as raw bytes, if every letter fits in one.
    pub fn to_bytes(&self) -> Option<Vec<u8>> {
        self.letters.iter().map(|&l| u8::try_from(l).ok()).collect()
    }
}

impl std::ops::Index<usize> for Text {
    type Output = u32;

    fn index(&self, index: usize) -> &u32 {
        &self.letters[index]
    }
}
