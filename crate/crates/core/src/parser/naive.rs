//! Quadratic reference implementations, used to cross-check the indexed
//! parsers. Fine up to a few thousand letters.

use super::{Parsing, Phrase, Variant};

/// Common prefix length of the suffixes at `j` and `p`.
pub fn lcp_at(s: &[u32], j: usize, p: usize) -> usize {
    s[j..]
        .iter()
        .zip(&s[p..])
        .take_while(|(a, b)| a == b)
        .count()
}

/// For every position: the longest `L` copyable from some `j < p`, and the
/// rightmost `j` attaining it (`None` when `L = 0`).
pub fn longest_previous_factor(s: &[u32]) -> Vec<(usize, Option<usize>)> {
    (0..s.len())
        .map(|p| {
            let mut best = (0, None);
            for j in 0..p {
                let h = lcp_at(s, j, p);
                if h > 0 && h >= best.0 {
                    best = (h, Some(j));
                }
            }
            best
        })
        .collect()
}

/// Rightmost `j < p` with `s[j..j+len] == s[p..p+len]`.
pub fn rightmost_source(s: &[u32], p: usize, len: usize) -> Option<usize> {
    if p + len > s.len() {
        return None;
    }
    (0..p).rev().find(|&j| s[j..j + len] == s[p..p + len])
}

pub fn greedy_parse(s: &[u32], variant: Variant) -> Parsing {
    let n = s.len();
    let mut phrases = Vec::new();
    let mut p = 0;
    while p < n {
        let best = (0..p).map(|j| lcp_at(s, j, p)).max().unwrap_or(0);
        let phrase = match variant {
            Variant::Classical => {
                let copy = best.min(n - p - 1);
                if copy == 0 {
                    Phrase::literal_triple(s[p])
                } else {
                    let j = rightmost_source(s, p, copy).expect("copy length is attained");
                    Phrase::Triple {
                        dist: p - 1 - j,
                        len: copy + 1,
                        last: s[p + copy],
                    }
                }
            }
            Variant::Nonclassical => {
                if best == 0 {
                    Phrase::Literal(s[p])
                } else {
                    let j = rightmost_source(s, p, best).expect("copy length is attained");
                    Phrase::Reference {
                        dist: p - 1 - j,
                        len: best,
                    }
                }
            }
        };
        p += phrase.len();
        phrases.push(phrase);
    }
    Parsing::new(variant, phrases)
}
