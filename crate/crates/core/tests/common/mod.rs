#![allow(dead_code)]

use lzrl::parser::Text;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_text(rng: &mut impl Rng, max_n: usize, sigma: u32) -> Text {
    let n = rng.gen_range(1..=max_n);
    Text::random(rng, n, sigma)
}

/// A text grown by copying earlier chunks with occasional fresh letters,
/// so that long phrases are common.
pub fn repetitive_text(rng: &mut impl Rng, max_n: usize, sigma: u32) -> Text {
    let n = rng.gen_range(1..=max_n);
    let mut s: Vec<u32> = Vec::with_capacity(n);
    while s.len() < n {
        if s.len() < 2 || rng.gen_bool(0.3) {
            s.push(rng.gen_range(0..sigma));
        } else {
            let start = rng.gen_range(0..s.len());
            let len = rng.gen_range(1..=(s.len() - start).min(n - s.len()).min(40));
            for t in 0..len {
                s.push(s[start + t]);
            }
        }
    }
    Text::new(s).unwrap()
}

/// Uniform and repetitive texts, alternating.
pub fn corpus(seed: u64, count: usize, max_n: usize, sigmas: &[u32]) -> Vec<Text> {
    let mut r = rng(seed);
    (0..count)
        .map(|i| {
            let sigma = sigmas[i % sigmas.len()];
            if i % 2 == 0 {
                random_text(&mut r, max_n, sigma)
            } else {
                repetitive_text(&mut r, max_n, sigma)
            }
        })
        .collect()
}
