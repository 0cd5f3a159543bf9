//! The Steiner-system family: `s = r'(A) c^ℓ r(A)`.
//!
//! `c = 0` and `d = 1`; `A = {2, …, 2^{2^x} + 1}`. For `|S| > 2`,
//! `r(S) = q(S) Π_{B} r(B)` where `q(S) = a_1 d a_2 d …` lists `S` in
//! ascending order and the blocks `B` are the lines of an affine plane on
//! `S`. Two-letter sets give `r({b, b'}) = b c b' c b c b' d d`; `r'` is the
//! same recursion with the base case ending in `d c`.

use super::{
    affine_plane, finish_instance, marker, AffinePlane, Family, GenError, GeneratedInstance,
    InstanceParams, WitnessBuilder,
};
use crate::parser::{Parsing, Text, Variant};

const C: u32 = 0;
const D: u32 = 1;

/// Smallest `x >= 1` with `2^{2^x} > sqrt(log2 n)`.
pub fn steiner_x(n: usize) -> u32 {
    let log_n = (n.max(2) as f64).log2();
    let mut x = 1;
    // (2^{2^x})^2 = 2^{2^{x+1}} compared against log2 n.
    while f64::from(1u32 << (x + 1)).exp2() <= log_n {
        x += 1;
    }
    x
}

/// `|r(S)|` for `|S| = 2^{2^i}`.
pub fn steiner_length(i: u32) -> u64 {
    if i == 0 {
        return 9;
    }
    let big = 1u64 << (1u32 << i);
    let small = 1u64 << (1u32 << (i - 1));
    let blocks = big * (big - 1) / (small * (small - 1));
    2 * big + blocks * steiner_length(i - 1)
}

/// Blocks of the Steiner system on `set` (`|set| = q^2`), obtained by
/// mapping the affine plane's points onto `set` in ascending order.
pub fn steiner_blocks(set: &[u32]) -> Result<Vec<Vec<u32>>, GenError> {
    let q = (set.len() as f64).sqrt().round() as usize;
    if q * q != set.len() {
        return Err(GenError::UnsupportedOrder(q));
    }
    let mut sorted = set.to_vec();
    sorted.sort_unstable();
    let plane = affine_plane(q)?;
    Ok(relabel(&plane, &sorted))
}

fn relabel(plane: &AffinePlane, sorted: &[u32]) -> Vec<Vec<u32>> {
    plane
        .lines
        .iter()
        .map(|line| line.iter().map(|&p| sorted[p as usize]).collect())
        .collect()
}

#[derive(Debug, Clone, Copy)]
enum Piece {
    /// `q(A)`: letters are new on first sight, so spelled out.
    Top(usize),
    /// `q(B)` for a proper block: `a d` pairs.
    Inner(usize),
    /// One `b c b' c b c b' d {d|c}`.
    Base,
    Run(usize),
}

struct Builder {
    text: Vec<u32>,
    pieces: Vec<Piece>,
    planes: Vec<AffinePlane>,
}

impl Builder {
    /// Appends `r(set)` (or `r'(set)`) where `|set| = 2^{2^level}`.
    fn r(&mut self, set: &[u32], level: u32, prime: bool, top: bool) {
        if level == 0 {
            let (b, b2) = (set[0], set[1]);
            let last = if prime { C } else { D };
            self.text.extend([b, C, b2, C, b, C, b2, D, last]);
            self.pieces.push(Piece::Base);
            return;
        }
        for &a in set {
            self.text.extend([a, D]);
        }
        let len = 2 * set.len();
        self.pieces.push(if top { Piece::Top(len) } else { Piece::Inner(len) });
        let blocks = relabel(&self.planes[level as usize - 1], set);
        for block in blocks {
            self.r(&block, level - 1, prime, false);
        }
    }
}

struct Built {
    text: Vec<u32>,
    pieces: Vec<Piece>,
    x: u32,
    ell: usize,
    /// `L(x)`
    half: usize,
}

/// Builds the instance text and the piece list for the witness.
fn build(n: usize, forced_x: Option<u32>) -> Result<Built, GenError> {
    let x = forced_x.unwrap_or_else(|| steiner_x(n));
    if x == 0 {
        return Err(GenError::InvalidParams("x must be at least 1".into()));
    }
    let half = steiner_length(x);
    let needed = 4u128 * u128::from(half);
    if (n as u128) < needed {
        return Err(GenError::InstanceTooSmall {
            n,
            needed: usize::try_from(needed).unwrap_or(usize::MAX),
        });
    }
    let half = half as usize;
    let ell = n - 2 * half;
    let letters_in_a = 1u32 << (1u32 << x);
    let a: Vec<u32> = (2..letters_in_a + 2).collect();
    let planes = (1..=x)
        .map(|i| affine_plane(1usize << (1u32 << (i - 1))))
        .collect::<Result<Vec<_>, _>>()?;

    let mut b = Builder {
        text: Vec::with_capacity(n),
        pieces: Vec::new(),
        planes,
    };
    b.r(&a, x, true, true);
    debug_assert_eq!(b.text.len(), half);
    b.text.resize(half + ell, C);
    b.pieces.push(Piece::Run(ell));
    b.r(&a, x, false, true);
    debug_assert_eq!(b.text.len(), n);
    Ok(Built {
        text: b.text,
        pieces: b.pieces,
        x,
        ell,
        half,
    })
}

fn witness(text: &[u32], pieces: &[Piece], variant: Variant) -> Parsing {
    let mut w = WitnessBuilder::new(text, variant);
    for &piece in pieces {
        match (piece, variant) {
            (Piece::Top(len), _) => w.lits(len),
            (Piece::Run(len), _) => {
                w.lit();
                w.copy_back(1, len - 1);
            }
            (Piece::Inner(len), Variant::Classical) => {
                for _ in 0..len / 2 {
                    w.letter_ref();
                }
            }
            (Piece::Base, Variant::Classical) => {
                for _ in 0..4 {
                    w.letter_ref();
                }
                w.lit();
            }
            (Piece::Inner(len), Variant::Nonclassical) => {
                for _ in 0..len {
                    one_letter(&mut w);
                }
            }
            (Piece::Base, Variant::Nonclassical) => {
                for _ in 0..9 {
                    one_letter(&mut w);
                }
            }
        }
    }
    w.finish()
}

/// `c` and `d` are spelled out; letters of `A` point at their last
/// occurrence.
fn one_letter(w: &mut WitnessBuilder<'_>) {
    if w.text[w.cursor] > D {
        w.letter_ref();
    } else {
        w.lit();
    }
}

fn steiner(family: Family, n: usize, forced_x: Option<u32>) -> Result<GeneratedInstance, GenError> {
    let Built { text, pieces, x, ell, half } = build(n, forced_x)?;
    let witness = witness(&text, &pieces, family.variant());
    let params = InstanceParams {
        n,
        sigma: (1usize << (1u32 << x)) + 2,
        z: None,
        k: None,
        ell,
        m: None,
        x: Some(x),
    };
    let markers = vec![
        marker("r_prime_start", 0),
        marker("run_start", half),
        marker("r_start", half + ell),
    ];
    Ok(finish_instance(family, text, params, witness, markers, Vec::new()))
}

/// `r'(A) c^ℓ r(A)` with `ℓ = n - 2 L(x)`; `x` is derived from `n` unless
/// forced.
pub fn gen_steiner(n: usize, forced_x: Option<u32>) -> Result<GeneratedInstance, GenError> {
    steiner(Family::Steiner, n, forced_x)
}

/// The same text, with a witness of one-letter nonclassical phrases.
pub fn gen_steiner_nc(n: usize, forced_x: Option<u32>) -> Result<GeneratedInstance, GenError> {
    steiner(Family::SteinerNc, n, forced_x)
}

/// Number of phrases of `parsing` ending in `b c b' d d` with `b, b'` in
/// `A` and `b < b'`.
pub fn count_pair_phrases(text: &Text, parsing: &Parsing) -> usize {
    let s = text.letters();
    let bounds = parsing.boundaries();
    bounds
        .windows(2)
        .filter(|w| {
            let (start, end) = (w[0], w[1]);
            if end - start < 5 {
                return false;
            }
            let t = &s[end - 5..end];
            t[0] > D && t[1] == C && t[2] > D && t[0] < t[2] && t[3] == D && t[4] == D
        })
        .count()
}
