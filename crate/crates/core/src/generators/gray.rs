//! Gray-code families: `σ ≥ 3` and binary, classical and nonclassical.

use super::{finish_instance, marker, Family, GenError, GeneratedInstance, InstanceParams, WitnessBuilder};
use crate::parser::Variant;

/// All `tau^m` words over `0..tau`, consecutive words differing in one
/// position, ending with `terminal^m`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GrayCodeSeq {
    pub tau: u32,
    pub m: u32,
    pub words: Vec<Vec<u32>>,
}

/// Word number `index` of the reflected `tau`-ary Gray code of length `m`.
/// Word 0 is all zeros.
pub fn gray_word(tau: u32, m: u32, index: u64) -> Vec<u32> {
    let mut digits = vec![0u32; m as usize];
    let mut rest = index;
    for d in digits.iter_mut().rev() {
        *d = (rest % u64::from(tau)) as u32;
        rest /= u64::from(tau);
    }
    let mut reflect = false;
    // Inside a reversed sub-code the remaining digits run backwards; the
    // next sub-code is reversed again when the emitted digit is odd.
    for d in &mut digits {
        if reflect {
            *d = tau - 1 - *d;
        }
        if *d % 2 == 1 {
            reflect = !reflect;
        }
    }
    digits
}

/// The reflected code read backwards, with digits 0 and `terminal`
/// swapped so that it ends at `terminal^m`.
pub fn gray_sequence(tau: u32, m: u32, terminal: u32) -> GrayCodeSeq {
    assert!(tau >= 2 && m >= 1 && terminal < tau);
    let total = u64::from(tau).pow(m);
    let swap = |d: u32| match d {
        0 => terminal,
        d if d == terminal => 0,
        d => d,
    };
    let words = (0..total)
        .map(|i| {
            gray_word(tau, m, total - 1 - i)
                .into_iter()
                .map(swap)
                .collect()
        })
        .collect();
    GrayCodeSeq { tau, m, words }
}

/// First `k` words of the backwards reflected code (terminal digit 0),
/// mapped to letters `offset + digit`.
fn first_words(tau: u32, m: usize, k: usize, offset: u32) -> Vec<Vec<u32>> {
    let total = u64::from(tau).pow(m as u32);
    (0..k as u64)
        .map(|i| {
            gray_word(tau, m as u32, total - 1 - i)
                .into_iter()
                .map(|d| d + offset)
                .collect()
        })
        .collect()
}

/// 1-based position where two consecutive Gray words differ.
fn differing_position(prev: &[u32], cur: &[u32]) -> usize {
    1 + prev
        .iter()
        .zip(cur)
        .position(|(a, b)| a != b)
        .expect("consecutive Gray words differ")
}

/// Smallest `m` with `tau^m >= z`.
fn word_length(tau: u32, z: usize) -> usize {
    let mut m = 1;
    let mut power = u128::from(tau);
    while power < z as u128 {
        power *= u128::from(tau);
        m += 1;
    }
    m
}

fn check_multi_params(n: usize, sigma: usize, z: usize) -> Result<(), GenError> {
    if sigma < 3 || sigma > n {
        return Err(GenError::InvalidParams(format!(
            "sigma must lie in [3..n], got sigma = {sigma}, n = {n}"
        )));
    }
    if 4 * sigma >= n {
        return Ok(());
    }
    let cap = n as f64 / (n as f64).log(sigma as f64);
    if z < sigma || z as f64 > cap {
        return Err(GenError::InvalidParams(format!(
            "z must lie in [sigma..n/log_sigma n] = [{sigma}..{cap:.1}], got {z}"
        )));
    }
    Ok(())
}

fn check_binary_params(n: usize, z: usize) -> Result<(), GenError> {
    if n < 4 {
        return Err(GenError::InstanceTooSmall { n, needed: 4 });
    }
    let cap = n as f64 / (n as f64).log2();
    if z < 2 || z as f64 > cap {
        return Err(GenError::InvalidParams(format!(
            "z must lie in [2..n/log2 n] = [2..{cap:.1}], got {z}"
        )));
    }
    Ok(())
}

/// Largest usable `k`: at most `z`, below `words`, and leaving at least
/// half the text for the run. Rejected when it drops below `z / 4`.
fn choose_k(n: usize, z: usize, words: u128, fixed: usize, per_block: usize) -> Result<usize, GenError> {
    let budget = n.saturating_sub(fixed + n.div_ceil(2)) / per_block;
    let below_words = usize::try_from(words - 1).unwrap_or(usize::MAX);
    let k = z.min(below_words).min(budget);
    if 4 * k < z {
        return Err(GenError::InvalidParams(format!(
            "only k = {k} Gray words fit, below z/4 for z = {z}"
        )));
    }
    Ok(k)
}

/// Every letter `1..=sigma` not yet in `letters`, ascending.
fn unused_letters(letters: &[u32], sigma: usize) -> Vec<u32> {
    let mut seen = vec![false; sigma + 1];
    for &c in letters {
        seen[c as usize] = true;
    }
    (1..=sigma as u32).filter(|&c| !seen[c as usize]).collect()
}

/// `1 2 … σ` followed by ones: any text with `σ` distinct letters serves
/// when the alphabet is a large fraction of `n`.
fn degenerate_multi(family: Family, n: usize, sigma: usize, z: usize) -> GeneratedInstance {
    let mut letters: Vec<u32> = (1..=sigma as u32).collect();
    let rest = n - sigma;
    letters.resize(n, 1);
    let mut w = WitnessBuilder::new(&letters, family.variant());
    w.lits(sigma);
    if rest > 0 {
        w.lit();
    }
    if rest > 1 {
        w.copy_from(sigma, rest - 1);
    }
    let witness = w.finish();
    let params = InstanceParams {
        n,
        sigma,
        z: Some(z),
        k: None,
        ell: rest,
        m: None,
        x: None,
    };
    finish_instance(family, letters, params, witness, vec![marker("run_start", sigma)], Vec::new())
}

/// `s_1 … s_k · a^ℓ · b s_1 b … s_k b` over `[1..σ]`, with `b = 1`, `a = 2`.
pub fn gen_gray_multi(n: usize, sigma: usize, z: usize) -> Result<GeneratedInstance, GenError> {
    gray_multi(Family::GrayMulti, n, sigma, z)
}

/// `b s_1 b s_2 … b s_k b · a^ℓ · b s_1 b b s_2 b … b s_k b`.
pub fn gen_gray_multi_nc(n: usize, sigma: usize, z: usize) -> Result<GeneratedInstance, GenError> {
    gray_multi(Family::GrayMultiNc, n, sigma, z)
}

fn gray_multi(family: Family, n: usize, sigma: usize, z: usize) -> Result<GeneratedInstance, GenError> {
    check_multi_params(n, sigma, z)?;
    if 4 * sigma >= n {
        return Ok(degenerate_multi(family, n, sigma, z));
    }
    let classical = family.variant() == Variant::Classical;
    let tau = sigma as u32 - 1;
    let m = word_length(tau, z);
    let words_total = u128::from(tau).pow(m as u32);
    let (fixed, per_block) = if classical { (1, 2 * m + 1) } else { (1, 2 * m + 3) };
    let k = choose_k(n, z, words_total, fixed, per_block)?;
    let words = first_words(tau, m, k, 2);
    let (b, a) = (1u32, 2u32);

    let mut used: Vec<u32> = words.concat();
    used.extend([a, b]);
    let unused = unused_letters(&used, sigma);
    let ell = n - k * per_block - fixed - unused.len();
    if ell <= m || ell < 2 {
        return Err(GenError::InvalidParams(format!("run length {ell} is too short")));
    }

    let mut s = Vec::with_capacity(n);
    if classical {
        for w in &words {
            s.extend_from_slice(w);
        }
    } else {
        for w in &words {
            s.push(b);
            s.extend_from_slice(w);
        }
        s.push(b);
    }
    let run_start = s.len();
    s.resize(run_start + ell, a);
    if classical {
        s.push(b);
    }
    let suffix_start = s.len();
    let mut blocks = Vec::with_capacity(k);
    if classical {
        // The greedy blocks are s_i b, right after the separator b.
        for w in &words {
            let start = s.len();
            s.extend_from_slice(w);
            s.push(b);
            blocks.push(start..s.len());
        }
    } else {
        for w in &words {
            let start = s.len();
            s.push(b);
            s.extend_from_slice(w);
            s.push(b);
            blocks.push(start..s.len());
        }
    }
    let unused_start = s.len();
    s.extend_from_slice(&unused);
    debug_assert_eq!(s.len(), n);

    let mut w = WitnessBuilder::new(&s, family.variant());
    if classical {
        // Prefix: s_1 letter by letter, then each s_i in two phrases
        // copying around the position where it differs from s_{i-1}.
        w.lits(m);
        for i in 1..k {
            let j = differing_position(&words[i - 1], &words[i]);
            w.copy_back(m, j);
            if j < m {
                w.copy_back(m, m - j);
            }
        }
        w.lit();
        w.copy_back(1, ell);
        w.copy_from(0, m + 1);
        for i in 1..k {
            let j = differing_position(&words[i - 1], &words[i]);
            w.copy_back(m + 1, j);
            w.copy_back(m + 1, m - j + 1);
        }
    } else {
        w.lits(m + 1);
        for i in 1..k {
            let j = differing_position(&words[i - 1], &words[i]);
            w.copy_back(m + 1, j);
            w.lit();
            if j < m {
                w.copy_back(m + 1, m - j);
            }
        }
        w.lit();
        w.lit();
        w.copy_back(1, ell - 1);
        w.copy_from(0, m + 2);
        for i in 1..k {
            let j = differing_position(&words[i - 1], &words[i]);
            w.copy_back(m + 2, j);
            w.lit();
            w.copy_back(m + 2, m - j + 1);
        }
    }
    w.lits(unused.len());
    let witness = w.finish();

    let params = InstanceParams {
        n,
        sigma,
        z: Some(z),
        k: Some(k),
        ell,
        m: Some(m),
        x: None,
    };
    let markers = vec![
        marker("run_start", run_start),
        marker("suffix_start", suffix_start),
        marker("unused_start", unused_start),
    ];
    Ok(finish_instance(family, s, params, witness, markers, blocks))
}

/// `Π s_i 0^m 1 · 0^ℓ 1 · Π s_i 0^m 1 c_i` over `{0, 1}`.
pub fn gen_gray_binary(n: usize, z: usize) -> Result<GeneratedInstance, GenError> {
    check_binary_params(n, z)?;
    let m = word_length(2, z);
    let k = choose_k(n, z, 1u128 << m, 1, 4 * m + 3)?;
    let ell = n - k * (4 * m + 3) - 1;
    if ell <= 4 * m {
        return Err(GenError::InvalidParams(format!("run length {ell} is too short")));
    }
    let words = first_words(2, m, k, 0);
    let flag = |i: usize| match words.get(i + 1) {
        Some(next) if next[0] == 1 => 0,
        _ => 1,
    };

    let mut s = Vec::with_capacity(n);
    for w in &words {
        s.extend_from_slice(w);
        s.extend(std::iter::repeat_n(0, m));
        s.push(1);
    }
    let run_start = s.len();
    s.extend(std::iter::repeat_n(0, ell));
    s.push(1);
    let suffix_start = s.len();
    let mut blocks = Vec::with_capacity(k);
    for (i, w) in words.iter().enumerate() {
        let start = s.len();
        s.extend_from_slice(w);
        s.extend(std::iter::repeat_n(0, m));
        s.push(1);
        s.push(flag(i));
        blocks.push(start..s.len());
    }
    debug_assert_eq!(s.len(), n);

    let mut w = WitnessBuilder::new(&s, Variant::Classical);
    w.lits(2 * m + 1);
    for i in 1..k {
        let j = differing_position(&words[i - 1], &words[i]);
        w.copy_back(2 * m + 1, j);
        w.copy_back(2 * m + 1, 2 * m + 1 - j);
    }
    w.lit();
    w.copy_back(1, ell);
    w.lits(2 * m + 2);
    for i in 1..k {
        let j = differing_position(&words[i - 1], &words[i]);
        w.copy_back(2 * m + 2, j);
        w.copy_back(2 * m + 2, 2 * m + 2 - j);
    }
    let witness = w.finish();

    let params = InstanceParams {
        n,
        sigma: 2,
        z: Some(z),
        k: Some(k),
        ell,
        m: Some(m),
        x: None,
    };
    let markers = vec![marker("run_start", run_start), marker("suffix_start", suffix_start)];
    Ok(finish_instance(Family::GrayBinary, s, params, witness, markers, blocks))
}

/// `Π 1 0 s_i α · 0^ℓ · 1 · Π 0 s_i α · 0` with `α = 0^{m+1} 1`.
pub fn gen_gray_binary_nc(n: usize, z: usize) -> Result<GeneratedInstance, GenError> {
    check_binary_params(n, z)?;
    let m = word_length(2, z);
    let k = choose_k(n, z, 1u128 << m, 2, 4 * m + 7)?;
    let ell = n - k * (4 * m + 7) - 2;
    if ell <= 4 * m + 4 {
        return Err(GenError::InvalidParams(format!("run length {ell} is too short")));
    }
    let words = first_words(2, m, k, 0);
    let alpha = |s: &mut Vec<u32>| {
        s.extend(std::iter::repeat_n(0, m + 1));
        s.push(1);
    };

    let mut s = Vec::with_capacity(n);
    for w in &words {
        s.extend([1, 0]);
        s.extend_from_slice(w);
        alpha(&mut s);
    }
    let run_start = s.len();
    s.extend(std::iter::repeat_n(0, ell));
    let suffix_start = s.len();
    s.push(1);
    let mut blocks = Vec::with_capacity(k);
    for w in &words {
        let start = if blocks.is_empty() { s.len() - 1 } else { s.len() };
        s.push(0);
        s.extend_from_slice(w);
        alpha(&mut s);
        blocks.push(start..s.len());
    }
    s.push(0);
    // The last prefix block is followed by the zero run, so greedy extends
    // the final suffix phrase over the closing 0.
    if let Some(last) = blocks.last_mut() {
        last.end = n;
    }
    debug_assert_eq!(s.len(), n);

    let prefix_stride = 2 * m + 4;
    let suffix_stride = 2 * m + 3;
    let mut w = WitnessBuilder::new(&s, Variant::Nonclassical);
    w.lits(prefix_stride);
    for i in 1..k {
        let j = differing_position(&words[i - 1], &words[i]);
        w.copy_back(prefix_stride, j + 1);
        w.lit();
        w.copy_back(prefix_stride, prefix_stride - j - 2);
    }
    w.lit();
    w.copy_back(1, ell - 1);
    w.lit();
    w.copy_from(1, suffix_stride);
    for i in 1..k {
        let j = differing_position(&words[i - 1], &words[i]);
        w.copy_back(suffix_stride, j);
        w.lit();
        w.copy_back(suffix_stride, suffix_stride - j - 1);
    }
    w.lit();
    let witness = w.finish();

    let params = InstanceParams {
        n,
        sigma: 2,
        z: Some(z),
        k: Some(k),
        ell,
        m: Some(m),
        x: None,
    };
    let markers = vec![marker("run_start", run_start), marker("suffix_start", suffix_start)];
    Ok(finish_instance(Family::GrayBinaryNc, s, params, witness, markers, blocks))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parser::{greedy_parse, validate_parsing};

    #[test]
    fn binary_sequence_of_length_two() {
        let seq = gray_sequence(2, 2, 0);
        assert_eq!(seq.words, vec![vec![1, 0], vec![1, 1], vec![0, 1], vec![0, 0]]);
        assert_eq!(gray_sequence(2, 1, 0).words, vec![vec![1], vec![0]]);
    }

    #[test]
    fn gray_invariants_small_bases() {
        for tau in 2..=5u32 {
            for m in 1..=4u32 {
                for terminal in [0, tau - 1] {
                    let seq = gray_sequence(tau, m, terminal);
                    assert_eq!(seq.words.len(), tau.pow(m) as usize);
                    for pair in seq.words.windows(2) {
                        let diff = pair[0].iter().zip(&pair[1]).filter(|(a, b)| a != b).count();
                        assert_eq!(diff, 1, "tau={tau} m={m}");
                    }
                    assert_eq!(seq.words.last().unwrap(), &vec![terminal; m as usize]);
                    let mut sorted = seq.words.clone();
                    sorted.sort();
                    sorted.dedup();
                    assert_eq!(sorted.len(), seq.words.len());
                }
            }
        }
    }

    #[test]
    fn small_multi_instance() {
        let inst = gen_gray_multi(300, 4, 9).unwrap();
        assert_eq!(inst.text.len(), 300);
        assert_eq!(inst.text.sigma(), 4);
        assert_eq!(validate_parsing(&inst.text, &inst.witness), Ok(()));
        let k = inst.params.k.unwrap();
        let g = greedy_parse(&inst.text, Variant::Classical);
        assert_eq!(inst.matched_blocks(&g), k);
    }

    #[test]
    fn degenerate_branch() {
        let inst = gen_gray_multi(20, 5, 5).unwrap();
        assert_eq!(inst.text.len(), 20);
        assert_eq!(inst.text.sigma(), 5);
        assert_eq!(validate_parsing(&inst.text, &inst.witness), Ok(()));
    }

    #[test]
    fn rejects_out_of_range() {
        assert!(gen_gray_multi(300, 2, 9).is_err());
        assert!(gen_gray_multi(300, 4, 3).is_err());
        assert!(gen_gray_multi(300, 4, 200).is_err());
        assert!(gen_gray_binary(4096, 1).is_err());
        assert!(gen_gray_binary(4096, 1000).is_err());
    }

    #[test]
    fn binary_instances_hold_half_the_text_in_the_run() {
        for z in [2, 3, 12, 32, 100] {
            let inst = gen_gray_binary(4096, z).unwrap();
            assert_eq!(inst.text.len(), 4096);
            assert!(2 * inst.params.ell >= 4096);
            assert_eq!(validate_parsing(&inst.text, &inst.witness), Ok(()));
        }
    }
}
