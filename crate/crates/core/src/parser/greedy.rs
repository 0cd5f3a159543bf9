use super::{ParseError, Parsing, Phrase, SuffixIndex, Text, Variant};
use super::validate::validate_parsing;

/// Greedy parsing of `s` in the requested variant, with minimal distances.
pub fn greedy_parse(s: &Text, variant: Variant) -> Parsing {
    match variant {
        Variant::Classical => greedy_parse_classical(s),
        Variant::Nonclassical => greedy_parse_nonclassical(s),
    }
}

pub fn greedy_parse_classical(s: &Text) -> Parsing {
    let letters = s.letters();
    let n = letters.len();
    let index = SuffixIndex::new(letters);
    let mut scan = index.scan();
    let mut phrases = Vec::new();
    let mut p = 0;
    while p < n {
        let copy = scan.longest_previous(p).min(n - p - 1);
        let phrase = if copy == 0 {
            Phrase::literal_triple(letters[p])
        } else {
            let j = scan
                .rightmost_source(p, copy)
                .expect("an occurrence of the copied prefix exists");
            Phrase::Triple {
                dist: p - 1 - j,
                len: copy + 1,
                last: letters[p + copy],
            }
        };
        p += phrase.len();
        phrases.push(phrase);
    }
    Parsing::new(Variant::Classical, phrases)
}

pub fn greedy_parse_nonclassical(s: &Text) -> Parsing {
    let letters = s.letters();
    let n = letters.len();
    let index = SuffixIndex::new(letters);
    let mut scan = index.scan();
    let mut phrases = Vec::new();
    let mut p = 0;
    while p < n {
        let len = scan.longest_previous(p).min(n - p);
        let phrase = if len == 0 {
            Phrase::Literal(letters[p])
        } else {
            let j = scan
                .rightmost_source(p, len)
                .expect("an occurrence of the phrase exists");
            Phrase::Reference {
                dist: p - 1 - j,
                len,
            }
        };
        p += phrase.len();
        phrases.push(phrase);
    }
    Parsing::new(Variant::Nonclassical, phrases)
}

/// Per position: the longest factor copyable from an earlier start, and the
/// rightmost such start (`None` when nothing can be copied).
pub fn longest_previous_factor(s: &Text) -> Vec<(usize, Option<usize>)> {
    let letters = s.letters();
    let index = SuffixIndex::new(letters);
    let mut scan = index.scan();
    (0..letters.len())
        .map(|p| {
            let len = scan.longest_previous(p);
            let src = if len == 0 {
                None
            } else {
                scan.rightmost_source(p, len)
            };
            (len, src)
        })
        .collect()
}

/// Rewrites every reference to its rightmost valid source.
pub fn minimize_distances(s: &Text, parsing: &Parsing) -> Result<Parsing, ParseError> {
    validate_parsing(s, parsing).map_err(ParseError::InvalidParsing)?;
    let letters = s.letters();
    let index = SuffixIndex::new(letters);
    let mut scan = index.scan();
    let mut p = 0;
    let mut phrases = Vec::with_capacity(parsing.phrases.len());
    for phrase in &parsing.phrases {
        let copied = phrase.copied_len();
        let rewritten = if copied == 0 {
            *phrase
        } else {
            let j = scan
                .rightmost_source(p, copied)
                .expect("validated phrase has a source");
            let dist = p - 1 - j;
            match *phrase {
                Phrase::Triple { len, last, .. } => Phrase::Triple { dist, len, last },
                Phrase::Reference { len, .. } => Phrase::Reference { dist, len },
                Phrase::Literal(_) => unreachable!(),
            }
        };
        p += phrase.len();
        phrases.push(rewritten);
    }
    Ok(Parsing::new(parsing.variant, phrases))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parser::naive;
    use proptest::prelude::*;

    fn text(v: &[u32]) -> Text {
        Text::new(v.to_vec()).unwrap()
    }

    #[test]
    fn aaaa_both_variants() {
        let s = text(&[0, 0, 0, 0]);
        assert_eq!(
            greedy_parse_classical(&s).phrases,
            vec![
                Phrase::literal_triple(0),
                Phrase::Triple {
                    dist: 0,
                    len: 3,
                    last: 0
                }
            ]
        );
        assert_eq!(
            greedy_parse_nonclassical(&s).phrases,
            vec![Phrase::Literal(0), Phrase::Reference { dist: 0, len: 3 }]
        );
    }

    #[test]
    fn lpf_reports_rightmost_source() {
        let s = text(&[0, 1, 0, 1]);
        assert_eq!(
            longest_previous_factor(&s),
            vec![(0, None), (0, None), (2, Some(0)), (1, Some(1))]
        );
    }

    #[test]
    fn minimize_moves_to_rightmost() {
        // 0 0 0 0 0 with the tail copying from position 0 at distance 2.
        let s = text(&[0, 0, 0, 0, 0]);
        let p = Parsing::new(
            Variant::Nonclassical,
            vec![
                Phrase::Literal(0),
                Phrase::Literal(0),
                Phrase::Reference { dist: 1, len: 3 },
            ],
        );
        let m = minimize_distances(&s, &p).unwrap();
        assert_eq!(m.phrases[2], Phrase::Reference { dist: 0, len: 3 });
    }

    proptest! {
        #[test]
        fn matches_naive(v in proptest::collection::vec(0u32..3, 1..200)) {
            let s = text(&v);
            prop_assert_eq!(greedy_parse_classical(&s), naive::greedy_parse(&v, Variant::Classical));
            prop_assert_eq!(greedy_parse_nonclassical(&s), naive::greedy_parse(&v, Variant::Nonclassical));
            prop_assert_eq!(longest_previous_factor(&s), naive::longest_previous_factor(&v));
        }
    }
}
