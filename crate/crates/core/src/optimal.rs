//! Bit-optimal and phrase-count-optimal parsing.
//!
//! Phrase costs are independent of each other and, because codeword
//! lengths never decrease, each phrase is cheapest with its rightmost
//! source. The optimum is then a shortest path over positions `0..=n`
//! whose edges are the feasible phrases.

use thiserror::Error;

use crate::bitcodec::CostModel;
use crate::parser::{naive, Parsing, Phrase, SuffixIndex, Text, Variant};

/// Largest text accepted by [`brute_force_optimal`].
pub const BRUTE_FORCE_LIMIT: usize = 20;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OptimalError {
    #[error("instance of length {n} exceeds the limit of {limit}")]
    InstanceTooLarge { n: usize, limit: usize },
    #[error("no phrase of length {ell} can start at position {from}")]
    InfeasibleEdge { from: usize, ell: usize },
}

/// One feasible phrase, with its cheapest encoding.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ParseEdge {
    pub from: usize,
    pub to: usize,
    pub ell: usize,
    /// Distance of the rightmost source; 0 for literals.
    pub min_d: usize,
    pub cost: u64,
    pub phrase: Phrase,
}

/// Minimal-size parsing under `model` and its size in bits.
pub fn optimal_bits_parse(s: &Text, model: &CostModel) -> (Parsing, u64) {
    let letters = s.letters();
    let n = letters.len();
    let index = SuffixIndex::new(letters);
    let mut scan = index.scan();

    let mut best = vec![u64::MAX; n + 1];
    let mut back: Vec<Option<(usize, Phrase)>> = vec![None; n + 1];
    best[0] = 0;
    let relax = |best: &mut Vec<u64>, back: &mut Vec<Option<(usize, Phrase)>>, from: usize, phrase: Phrase, cost: u64| {
        let to = from + phrase.len();
        let total = best[from] + cost;
        if total < best[to] {
            best[to] = total;
            back[to] = Some((from, phrase));
        }
    };

    for i in 0..n {
        let lpf = scan.longest_previous(i);
        match model.variant {
            Variant::Classical => {
                let lit = Phrase::literal_triple(letters[i]);
                relax(&mut best, &mut back, i, lit, model.phrase_bits(&lit));
                let max_copy = lpf.min(n - i - 1);
                let mut copy = 1;
                for step in scan.source_steps(i, max_copy) {
                    let dist = i - 1 - step.source;
                    while copy <= step.upto {
                        let phrase = Phrase::Triple {
                            dist,
                            len: copy + 1,
                            last: letters[i + copy],
                        };
                        relax(&mut best, &mut back, i, phrase, model.phrase_bits(&phrase));
                        copy += 1;
                    }
                }
            }
            Variant::Nonclassical => {
                let lit = Phrase::Literal(letters[i]);
                relax(&mut best, &mut back, i, lit, model.phrase_bits(&lit));
                let max_len = lpf.min(n - i);
                let mut len = 1;
                for step in scan.source_steps(i, max_len) {
                    let dist = i - 1 - step.source;
                    while len <= step.upto {
                        let phrase = Phrase::Reference { dist, len };
                        relax(&mut best, &mut back, i, phrase, model.phrase_bits(&phrase));
                        len += 1;
                    }
                }
            }
        }
    }

    let mut phrases = Vec::new();
    let mut at = n;
    while at > 0 {
        let (from, phrase) = back[at].expect("every position is reachable by literals");
        phrases.push(phrase);
        at = from;
    }
    phrases.reverse();
    (Parsing::new(model.variant, phrases), best[n])
}

/// A classical parsing with the fewest phrases, found by breadth-first
/// search over positions, with rightmost sources.
pub fn min_phrase_parse(s: &Text) -> Parsing {
    let letters = s.letters();
    let n = letters.len();
    let index = SuffixIndex::new(letters);
    let reach: Vec<usize> = {
        let mut scan = index.scan();
        (0..n)
            .map(|i| i + scan.longest_previous(i).min(n - i - 1) + 1)
            .collect()
    };

    // Positions reachable in k phrases form a prefix of 0..=n, so the first
    // (smallest) position that reaches `j` also has the fewest phrases.
    let mut parent = vec![0usize; n + 1];
    let mut assigned = 0;
    for i in 0..n {
        debug_assert!(i <= assigned);
        while assigned < reach[i] {
            assigned += 1;
            parent[assigned] = i;
        }
    }

    let mut starts = Vec::new();
    let mut at = n;
    while at > 0 {
        at = parent[at];
        starts.push(at);
    }
    starts.reverse();
    starts.push(n);

    let mut scan = index.scan();
    let phrases = starts
        .windows(2)
        .map(|w| {
            let (p, len) = (w[0], w[1] - w[0]);
            if len == 1 {
                Phrase::literal_triple(letters[p])
            } else {
                let j = scan
                    .rightmost_source(p, len - 1)
                    .expect("reachable edges are feasible");
                Phrase::Triple {
                    dist: p - 1 - j,
                    len,
                    last: letters[p + len - 1],
                }
            }
        })
        .collect();
    Parsing::new(Variant::Classical, phrases)
}

/// Exhaustive minimum over every valid parsing; exponential, for testing.
pub fn brute_force_optimal(s: &Text, model: &CostModel) -> Result<u64, OptimalError> {
    let letters = s.letters();
    if letters.len() > BRUTE_FORCE_LIMIT {
        return Err(OptimalError::InstanceTooLarge {
            n: letters.len(),
            limit: BRUTE_FORCE_LIMIT,
        });
    }
    Ok(brute_from(letters, 0, model))
}

fn brute_from(s: &[u32], p: usize, model: &CostModel) -> u64 {
    let n = s.len();
    if p == n {
        return 0;
    }
    let mut best = u64::MAX;
    let mut consider = |phrase: Phrase| {
        let cost = model.phrase_bits(&phrase) + brute_from(s, p + phrase.len(), model);
        best = best.min(cost);
    };
    match model.variant {
        Variant::Classical => {
            consider(Phrase::literal_triple(s[p]));
            for copy in 1..n - p {
                let Some(j) = naive::rightmost_source(s, p, copy) else {
                    break;
                };
                consider(Phrase::Triple {
                    dist: p - 1 - j,
                    len: copy + 1,
                    last: s[p + copy],
                });
            }
        }
        Variant::Nonclassical => {
            consider(Phrase::Literal(s[p]));
            for len in 1..=n - p {
                let Some(j) = naive::rightmost_source(s, p, len) else {
                    break;
                };
                consider(Phrase::Reference {
                    dist: p - 1 - j,
                    len,
                });
            }
        }
    }
    best
}

/// The cheapest phrase of length `ell` at position `from`, found by a
/// direct backward scan for its rightmost source.
pub fn parse_edge(s: &Text, from: usize, ell: usize, model: &CostModel) -> Result<ParseEdge, OptimalError> {
    let letters = s.letters();
    let infeasible = OptimalError::InfeasibleEdge { from, ell };
    if ell == 0 || from + ell > letters.len() {
        return Err(infeasible);
    }
    let edge = |phrase: Phrase| ParseEdge {
        from,
        to: from + ell,
        ell,
        min_d: phrase.dist(),
        cost: model.phrase_bits(&phrase),
        phrase,
    };
    match model.variant {
        Variant::Classical => {
            if ell == 1 {
                return Ok(edge(Phrase::literal_triple(letters[from])));
            }
            let j = naive::rightmost_source(letters, from, ell - 1).ok_or(infeasible)?;
            Ok(edge(Phrase::Triple {
                dist: from - 1 - j,
                len: ell,
                last: letters[from + ell - 1],
            }))
        }
        Variant::Nonclassical => {
            let reference = naive::rightmost_source(letters, from, ell).map(|j| {
                edge(Phrase::Reference {
                    dist: from - 1 - j,
                    len: ell,
                })
            });
            let literal = (ell == 1).then(|| edge(Phrase::Literal(letters[from])));
            match (literal, reference) {
                (Some(l), Some(r)) => Ok(if r.cost < l.cost { r } else { l }),
                (Some(e), None) | (None, Some(e)) => Ok(e),
                (None, None) => Err(infeasible),
            }
        }
    }
}

pub fn edge_cost(s: &Text, from: usize, ell: usize, model: &CostModel) -> Result<u64, OptimalError> {
    parse_edge(s, from, ell, model).map(|e| e.cost)
}
