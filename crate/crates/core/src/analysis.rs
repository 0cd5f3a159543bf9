//! Phrase counts, the greedy-versus-optimal bound formulas, executable
//! checks of the structural lemmas, and per-instance measurement.
//!
//! All logarithms are base 2.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::bitcodec::{Codec, CostModel};
use crate::optimal::optimal_bits_parse;
use crate::parser::{greedy_parse, greedy_parse_classical, validate_parsing, Parsing, Text, Variant, Violation};

/// Largest text for which `measure` runs the exact optimal parser.
pub const EXACT_OPT_LIMIT: usize = 20_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AnalysisError {
    #[error("outside the formula's domain: {0}")]
    DomainError(String),
    #[error("exact optimal parsing of n = {n} exceeds the limit of {limit}")]
    InstanceTooLarge { n: usize, limit: usize },
    #[error("witness mode needs a witness parsing")]
    MissingWitness,
    #[error("witness parsing is invalid: {0}")]
    InvalidWitness(Violation),
}

/// Number of phrases in the greedy classical parsing.
pub fn count_z(s: &Text) -> usize {
    greedy_parse_classical(s).z()
}

fn check_domain(n: u64, sigma: u64, z: u64) -> Result<(), AnalysisError> {
    if n < 2 || sigma < 2 || z < sigma {
        return Err(AnalysisError::DomainError(format!(
            "need n >= 2, sigma >= 2, z >= sigma; got n = {n}, sigma = {sigma}, z = {z}"
        )));
    }
    Ok(())
}

/// `log_sigma z`, or `None` when it is at most 2 and the log-log term is
/// treated as unbounded.
fn log_sigma_z(sigma: u64, z: u64) -> Option<f64> {
    let v = (z as f64).log2() / (sigma as f64).log2();
    (v > 2.0).then_some(v)
}

/// `min(z, log n / log log_σ z)`.
pub fn bound_upper(n: u64, sigma: u64, z: u64) -> Result<f64, AnalysisError> {
    check_domain(n, sigma, z)?;
    let z_f = z as f64;
    Ok(match log_sigma_z(sigma, z) {
        Some(l) => z_f.min((n as f64).log2() / l.log2()),
        None => z_f,
    })
}

/// `min(z, log n / (log log_σ z + log σ))`.
pub fn bound_lower(n: u64, sigma: u64, z: u64) -> Result<f64, AnalysisError> {
    check_domain(n, sigma, z)?;
    let z_f = z as f64;
    Ok(match log_sigma_z(sigma, z) {
        Some(l) => z_f.min((n as f64).log2() / (l.log2() + (sigma as f64).log2())),
        None => z_f,
    })
}

/// Two phrases (or phrase extensions) spelling the same string.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
#[error("phrases {first} and {second} are equal")]
pub struct DuplicatePair {
    pub first: usize,
    pub second: usize,
}

/// Classical: all phrases but the last are distinct. Nonclassical: the
/// strings `f_i · f_{i+1}[1]` are distinct.
pub fn check_distinct_phrases(s: &Text, parsing: &Parsing) -> Result<(), DuplicatePair> {
    let letters = s.letters();
    let bounds = parsing.boundaries();
    let z = parsing.z();
    let (count, extend) = match parsing.variant {
        Variant::Classical => (z.saturating_sub(1), 0),
        Variant::Nonclassical => (z.saturating_sub(1), 1),
    };
    let mut seen: HashMap<&[u32], usize> = HashMap::with_capacity(count);
    for i in 0..count {
        let key = &letters[bounds[i]..bounds[i + 1] + extend];
        if let Some(&first) = seen.get(key) {
            return Err(DuplicatePair { first, second: i });
        }
        seen.insert(key, i);
    }
    Ok(())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
#[error("phrase {phrase} overlaps {overlaps} greedy phrases")]
pub struct OverlapViolation {
    pub phrase: usize,
    pub overlaps: usize,
}

/// Every phrase of `p` overlaps at most two phrases of the greedy parsing `g`.
pub fn check_overlap_bound(p: &Parsing, g: &Parsing) -> Result<(), OverlapViolation> {
    let g_bounds = g.boundaries();
    let p_bounds = p.boundaries();
    for (i, w) in p_bounds.windows(2).enumerate() {
        let (start, end) = (w[0], w[1]);
        // Index of the greedy phrase holding a position.
        let holder = |pos: usize| g_bounds.partition_point(|&b| b <= pos) - 1;
        let overlaps = holder(end - 1) - holder(start) + 1;
        if overlaps > 2 {
            return Err(OverlapViolation {
                phrase: i,
                overlaps,
            });
        }
    }
    Ok(())
}

#[derive(Debug, Clone, Copy, PartialEq, Error)]
#[error("only {long} of {z} phrases reach length {threshold:.3}; need {required:.3}")]
pub struct LongPhraseDeficit {
    pub z: usize,
    pub long: usize,
    pub threshold: f64,
    pub required: f64,
}

/// At least `z - 2 sqrt(z)` phrases have length `>= log_σ(z) / 2`.
/// Vacuous for `σ < 2`.
pub fn check_long_phrases(g: &Parsing, sigma: usize) -> Result<(), LongPhraseDeficit> {
    let z = g.z();
    if sigma < 2 || z == 0 {
        return Ok(());
    }
    let threshold = 0.5 * (z as f64).log2() / (sigma as f64).log2();
    let long = g
        .phrases
        .iter()
        .filter(|p| p.len() as f64 >= threshold)
        .count();
    let required = z as f64 - 2.0 * (z as f64).sqrt();
    if (long as f64) < required {
        return Err(LongPhraseDeficit {
            z,
            long,
            threshold,
            required,
        });
    }
    Ok(())
}

/// Minimum of `Σ log t_i` over `k` positive integers with `Σ t_i >= t`,
/// which is `log(t - k + 1)`.
pub fn min_log_sum(t: u64, k: u64) -> Result<f64, AnalysisError> {
    if k == 0 || k > t {
        return Err(AnalysisError::DomainError(format!(
            "need 1 <= k <= t, got t = {t}, k = {k}"
        )));
    }
    Ok(((t - k + 1) as f64).log2())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Mode {
    ExactOpt,
    Witness,
    Both,
}

impl Mode {
    pub fn name(self) -> &'static str {
        match self {
            Mode::ExactOpt => "exact_opt",
            Mode::Witness => "witness",
            Mode::Both => "both",
        }
    }

    fn wants_exact(self) -> bool {
        matches!(self, Mode::ExactOpt | Mode::Both)
    }

    fn wants_witness(self) -> bool {
        matches!(self, Mode::Witness | Mode::Both)
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Mode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim() {
            "exact_opt" | "exact" | "opt" => Ok(Mode::ExactOpt),
            "witness" => Ok(Mode::Witness),
            "both" => Ok(Mode::Both),
            other => Err(format!("unknown mode `{other}`")),
        }
    }
}

/// Which size `ratio_lb` divides by.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Denominator {
    Optimal,
    Witness,
}

/// One measured instance. Field order is the CSV column order.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub n: usize,
    pub sigma: usize,
    /// Greedy phrase count in the measured variant.
    pub z: usize,
    pub variant: Variant,
    pub codec_d: Codec,
    pub codec_l: Codec,
    pub codec_c: Codec,
    pub bits_greedy: u64,
    pub bits_opt: Option<u64>,
    pub bits_witness: Option<u64>,
    pub denominator: Denominator,
    /// `bits_greedy` over the smaller available denominator.
    pub ratio_lb: f64,
    pub bound_upper: Option<f64>,
    pub bound_lower: Option<f64>,
}

impl Report {
    pub const COLUMNS: [&'static str; 14] = [
        "n",
        "sigma",
        "z",
        "variant",
        "codec_d",
        "codec_l",
        "codec_c",
        "bits_greedy",
        "bits_opt",
        "bits_witness",
        "denominator",
        "ratio_lb",
        "bound_upper",
        "bound_lower",
    ];
}

/// Measures greedy against the exact optimum and/or a witness parsing.
pub fn measure(
    s: &Text,
    model: &CostModel,
    mode: Mode,
    witness: Option<&Parsing>,
) -> Result<Report, AnalysisError> {
    let n = s.len();
    if mode.wants_exact() && n > EXACT_OPT_LIMIT {
        return Err(AnalysisError::InstanceTooLarge {
            n,
            limit: EXACT_OPT_LIMIT,
        });
    }
    let bits_witness = if mode.wants_witness() {
        let w = witness.ok_or(AnalysisError::MissingWitness)?;
        validate_parsing(s, w).map_err(AnalysisError::InvalidWitness)?;
        if w.variant != model.variant {
            return Err(AnalysisError::DomainError(format!(
                "witness is {} but the model is {}",
                w.variant, model.variant
            )));
        }
        Some(model.parsing_bits(w))
    } else {
        None
    };

    let greedy = greedy_parse(s, model.variant);
    let bits_greedy = model.parsing_bits(&greedy);
    let bits_opt = mode.wants_exact().then(|| optimal_bits_parse(s, model).1);

    let (denominator, denom_bits) = match (bits_opt, bits_witness) {
        (Some(o), Some(w)) if w < o => (Denominator::Witness, w),
        (Some(o), _) => (Denominator::Optimal, o),
        (None, Some(w)) => (Denominator::Witness, w),
        (None, None) => unreachable!("every mode yields a denominator"),
    };
    let z = greedy.z();
    let sigma = s.sigma();
    Ok(Report {
        n,
        sigma,
        z,
        variant: model.variant,
        codec_d: model.distance,
        codec_l: model.length,
        codec_c: model.letter,
        bits_greedy,
        bits_opt,
        bits_witness,
        denominator,
        ratio_lb: bits_greedy as f64 / denom_bits as f64,
        bound_upper: bound_upper(n as u64, sigma as u64, z as u64).ok(),
        bound_lower: bound_lower(n as u64, sigma as u64, z as u64).ok(),
    })
}
