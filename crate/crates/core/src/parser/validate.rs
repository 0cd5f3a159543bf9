use std::fmt;

use super::{ParseError, Parsing, Phrase, Text};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ViolationKind {
    /// Phrase lengths do not add up to the text length.
    LengthMismatch { covered: usize, expected: usize },
    /// Phrase kind does not belong to the parsing's variant.
    WrongVariant,
    ZeroLength,
    /// A one-letter triple with a nonzero distance.
    NonzeroLiteralDistance,
    /// The copy source lies before the start of the text.
    SourceBeforeStart,
    /// The copied letters differ from the text.
    CopyMismatch { offset: usize },
    /// The explicit letter differs from the text.
    LetterMismatch,
}

/// First offending phrase of an invalid parsing.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Violation {
    pub phrase: usize,
    pub kind: ViolationKind,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "phrase {}: ", self.phrase)?;
        match self.kind {
            ViolationKind::LengthMismatch { covered, expected } => {
                write!(f, "phrases cover {covered} letters, text has {expected}")
            }
            ViolationKind::WrongVariant => f.write_str("phrase kind does not match the variant"),
            ViolationKind::ZeroLength => f.write_str("zero-length phrase"),
            ViolationKind::NonzeroLiteralDistance => {
                f.write_str("one-letter triple must store distance 0")
            }
            ViolationKind::SourceBeforeStart => f.write_str("source starts before the text"),
            ViolationKind::CopyMismatch { offset } => {
                write!(f, "copied letter {offset} differs from the text")
            }
            ViolationKind::LetterMismatch => f.write_str("explicit letter differs from the text"),
        }
    }
}

impl std::error::Error for Violation {}

/// Checks `parsing` against `s`, reporting the first violation.
pub fn validate_parsing(s: &Text, parsing: &Parsing) -> Result<(), Violation> {
    let letters = s.letters();
    let n = letters.len();
    let mut p = 0;
    for (i, phrase) in parsing.phrases.iter().enumerate() {
        let fail = |kind| Err(Violation { phrase: i, kind });
        if phrase.variant() != parsing.variant {
            return fail(ViolationKind::WrongVariant);
        }
        let len = phrase.len();
        if len == 0 {
            return fail(ViolationKind::ZeroLength);
        }
        if p + len > n {
            return fail(ViolationKind::LengthMismatch {
                covered: p + len,
                expected: n,
            });
        }
        if let Phrase::Triple { dist, len: 1, .. } = *phrase {
            if dist != 0 {
                return fail(ViolationKind::NonzeroLiteralDistance);
            }
        }
        let copied = phrase.copied_len();
        if copied > 0 {
            let dist = phrase.dist();
            if dist + 1 > p {
                return fail(ViolationKind::SourceBeforeStart);
            }
            let j = p - 1 - dist;
            if let Some(offset) = (0..copied).find(|&t| letters[j + t] != letters[p + t]) {
                return fail(ViolationKind::CopyMismatch { offset });
            }
        }
        if let Some(c) = phrase.last_letter() {
            if letters[p + len - 1] != c {
                return fail(ViolationKind::LetterMismatch);
            }
        }
        p += len;
    }
    if p != n {
        return Err(Violation {
            phrase: parsing.phrases.len(),
            kind: ViolationKind::LengthMismatch {
                covered: p,
                expected: n,
            },
        });
    }
    Ok(())
}

/// Rebuilds the text a parsing describes, copying left to right so that
/// overlapping sources work.
pub fn reconstruct(parsing: &Parsing) -> Result<Text, ParseError> {
    let mut out: Vec<u32> = Vec::with_capacity(parsing.covered_len());
    for (i, phrase) in parsing.phrases.iter().enumerate() {
        let p = out.len();
        let copied = phrase.copied_len();
        if copied > 0 {
            let dist = phrase.dist();
            if dist + 1 > p {
                return Err(ParseError::DanglingReference { phrase: i });
            }
            let j = p - 1 - dist;
            for t in 0..copied {
                out.push(out[j + t]);
            }
        }
        if let Some(c) = phrase.last_letter() {
            out.push(c);
        }
    }
    Ok(Text::new(out)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parser::Variant;

    fn abababbbaba() -> Text {
        Text::new(vec![0, 1, 0, 1, 0, 1, 1, 1, 0, 1, 0]).unwrap()
    }

    #[test]
    fn accepts_and_rebuilds_abababbbaba() {
        let s = abababbbaba();
        let p = crate::parser::greedy_parse_classical(&s);
        assert_eq!(validate_parsing(&s, &p), Ok(()));
        assert_eq!(reconstruct(&p).unwrap(), s);
    }

    #[test]
    fn detects_tampered_distance() {
        let s = abababbbaba();
        let mut p = crate::parser::greedy_parse_classical(&s);
        if let Phrase::Triple { dist, .. } = &mut p.phrases[2] {
            *dist += 1;
        }
        let v = validate_parsing(&s, &p).unwrap_err();
        assert_eq!(v.phrase, 2);
    }

    #[test]
    fn detects_short_cover() {
        let s = abababbbaba();
        let mut p = crate::parser::greedy_parse_classical(&s);
        p.phrases.pop();
        assert!(matches!(
            validate_parsing(&s, &p),
            Err(Violation {
                kind: ViolationKind::LengthMismatch { .. },
                ..
            })
        ));
    }

    #[test]
    fn dangling_reference() {
        let p = Parsing::new(
            Variant::Nonclassical,
            vec![Phrase::Reference { dist: 0, len: 2 }],
        );
        assert_eq!(
            reconstruct(&p),
            Err(ParseError::DanglingReference { phrase: 0 })
        );
    }
}
