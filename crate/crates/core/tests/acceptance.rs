//! Acceptance run: one PASS/FAIL line per criterion. Exits non-zero if any
//! criterion fails.

mod common;

use std::process::ExitCode;
use std::time::Instant;

use lzrl::analysis::{
    check_distinct_phrases, check_long_phrases, check_overlap_bound, measure, min_log_sum, Mode,
};
use lzrl::bitcodec::format::{read_container, write_container};
use lzrl::bitcodec::{decode_parsing, encode_parsing, Codec, CostModel};
use lzrl::generators::{
    count_pair_phrases, gen_gray_binary, gen_gray_binary_nc, gen_gray_multi, gen_gray_multi_nc,
    gen_steiner, gen_steiner_nc, steiner_length, GeneratedInstance,
};
use lzrl::optimal::{brute_force_optimal, min_phrase_parse, optimal_bits_parse};
use lzrl::parser::{greedy_parse, greedy_parse_classical, reconstruct, Parsing, Text, Variant};

/// Ratio floor for the gray_binary sweep, `ratio(2^24) / ratio(2^12)`.
const SWEEP_GROWTH_FLOOR: f64 = 1.3;
/// `witness / (σ² + log n)` at x = 1, n = 2^21 is 13.05; frozen rounded up.
const STEINER_BETA: f64 = 14.0;
const STEINER_N: usize = 1 << 21;
const PERF_LIMIT_SECS: f64 = 60.0;
const RANDOM_SEED: u64 = 0x5eed;

type Criterion<'a> = (&'static str, Box<dyn Fn() -> Outcome + 'a>);

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: String) -> Outcome {
    Outcome { pass, detail }
}

fn homogeneous(variant: Variant) -> [CostModel; 3] {
    Codec::ALL.map(|c| CostModel::uniform(c, variant))
}

fn binary_texts(min_len: usize, max_len: usize) -> Vec<Text> {
    let mut out = Vec::new();
    for len in min_len..=max_len {
        for bits in 0u32..1 << len {
            out.push(Text::new((0..len).map(|i| bits >> i & 1).collect()).unwrap());
        }
    }
    out
}

fn criterion_1() -> Outcome {
    let mut texts = binary_texts(2, 12);
    let mut rng = common::rng(RANDOM_SEED);
    for i in 0..500 {
        let sigma = [2, 3, 4][i % 3];
        texts.push(common::random_text(&mut rng, 14, sigma));
    }
    let mut mismatches = 0;
    let mut runs = 0;
    for model in homogeneous(Variant::Classical) {
        for text in &texts {
            let (_, bits) = optimal_bits_parse(text, &model);
            runs += 1;
            if brute_force_optimal(text, &model) != Ok(bits) {
                mismatches += 1;
            }
        }
    }
    outcome(
        mismatches == 0,
        format!("{} texts x 3 codec triples = {runs} runs, {mismatches} mismatches", texts.len()),
    )
}

fn criterion_2() -> Outcome {
    let mut rng = common::rng(RANDOM_SEED + 2);
    let mut mismatches = 0;
    for i in 0..1000 {
        let text = common::random_text(&mut rng, 500, [2, 4, 16][i % 3]);
        if greedy_parse_classical(&text).z() != min_phrase_parse(&text).z() {
            mismatches += 1;
        }
    }
    outcome(mismatches == 0, format!("1000 texts, {mismatches} mismatches"))
}

/// Every instance the acceptance run generates, classical and nonclassical.
fn instances() -> Vec<GeneratedInstance> {
    vec![
        gen_gray_multi(10_000, 4, 64).unwrap(),
        gen_gray_multi(300, 4, 9).unwrap(),
        gen_gray_binary(1 << 16, 64).unwrap(),
        gen_gray_binary(4096, 32).unwrap(),
        gen_steiner(1000, Some(1)).unwrap(),
        gen_steiner(8192, Some(2)).unwrap(),
        gen_gray_multi_nc(10_000, 4, 64).unwrap(),
        gen_gray_multi_nc(300, 4, 9).unwrap(),
        gen_gray_binary_nc(1 << 16, 64).unwrap(),
        gen_gray_binary_nc(4096, 32).unwrap(),
        gen_steiner_nc(1000, Some(1)).unwrap(),
        gen_steiner_nc(8192, Some(2)).unwrap(),
    ]
}

fn round_trip_ok(text: &Text, parsing: &Parsing, model: &CostModel) -> bool {
    let bits = encode_parsing(parsing, model);
    let decoded = decode_parsing(&bits, model, parsing.z());
    let container = write_container(parsing, model, text.len() as u64)
        .ok()
        .and_then(|bytes| read_container(&bytes).ok())
        .and_then(|c| c.text().ok());
    decoded.as_ref() == Ok(parsing)
        && reconstruct(parsing).as_ref() == Ok(text)
        && container.as_ref() == Some(text)
}

fn round_trips(variants: &[Variant], insts: &[GeneratedInstance]) -> Outcome {
    let mut failures = 0;
    let mut checked = 0;
    let texts = common::corpus(RANDOM_SEED + 3, 1000, 300, &[2, 4, 16, 64]);
    for &variant in variants {
        for (i, text) in texts.iter().enumerate() {
            let model = CostModel::uniform(Codec::ALL[i % 3], variant);
            checked += 1;
            if !round_trip_ok(text, &greedy_parse(text, variant), &model) {
                failures += 1;
            }
        }
        for inst in insts.iter().filter(|i| i.variant() == variant) {
            let model = CostModel::default().with_variant(variant);
            for p in [greedy_parse(&inst.text, variant), inst.witness.clone()] {
                checked += 1;
                if !round_trip_ok(&inst.text, &p, &model) {
                    failures += 1;
                }
            }
        }
    }
    outcome(failures == 0, format!("{checked} parsings, {failures} failures"))
}

/// Smallest `Σ log t_i` over `k` positive parts summing to `t`.
fn brute_min_log(t: u64, k: u64, max_part: u64) -> f64 {
    if k == 0 {
        return if t == 0 { 0.0 } else { f64::INFINITY };
    }
    (1..=max_part.min(t))
        .filter(|&f| t - f >= k - 1)
        .map(|f| (f as f64).log2() + brute_min_log(t - f, k - 1, f))
        .fold(f64::INFINITY, f64::min)
}

fn lemma_suite(variant: Variant, insts: &[GeneratedInstance], large: &[GeneratedInstance]) -> Outcome {
    let mut failures = Vec::new();
    let texts = common::corpus(RANDOM_SEED + 4, 10_000, 300, &[2, 4, 16, 64]);
    let model = CostModel::default().with_variant(variant);
    let mut check = |label: &str, text: &Text, other: &Parsing| {
        let g = greedy_parse(text, variant);
        if let Err(e) = check_distinct_phrases(text, &g) {
            failures.push(format!("{label}: {e}"));
        }
        if variant == Variant::Classical {
            if let Err(e) = check_long_phrases(&g, text.sigma()) {
                failures.push(format!("{label}: {e}"));
            }
        }
        if let Err(e) = check_overlap_bound(other, &g) {
            failures.push(format!("{label}: {e}"));
        }
    };
    for (i, text) in texts.iter().enumerate() {
        let (opt, _) = optimal_bits_parse(text, &model);
        check(&format!("random #{i}"), text, &opt);
    }
    let mut adversarial = 0;
    for inst in insts.iter().chain(large).filter(|i| i.variant() == variant) {
        adversarial += 1;
        let label = format!("{} n={}", inst.family, inst.params.n);
        if inst.params.n <= 20_000 {
            let (opt, _) = optimal_bits_parse(&inst.text, &model);
            check(&label, &inst.text, &opt);
        } else {
            check(&label, &inst.text, &inst.witness);
        }
    }
    let mut compositions = 0;
    if variant == Variant::Classical {
        for t in 1..=20u64 {
            for k in 1..=t {
                compositions += 1;
                let got = min_log_sum(t, k).unwrap();
                if (got - brute_min_log(t, k, t)).abs() > 1e-9 {
                    failures.push(format!("min_log_sum({t}, {k}) = {got}"));
                }
            }
        }
    }
    let first = failures.first().cloned().unwrap_or_default();
    outcome(
        failures.is_empty(),
        format!(
            "{} random + {adversarial} adversarial texts, {compositions} (t, k) pairs, {} failures {first}",
            texts.len(),
            failures.len()
        ),
    )
}

/// Checks that the greedy parser emits each expected block as one phrase and
/// that every block has the stated shape.
fn structure(inst: &GeneratedInstance, shape: impl Fn(usize, &[u32]) -> bool) -> (bool, String) {
    let model = CostModel::default().with_variant(inst.variant());
    let g = greedy_parse(&inst.text, inst.variant());
    let k = inst.params.k.unwrap();
    let matched = inst.matched_blocks(&g);
    let s = inst.text.letters();
    let shaped = inst
        .greedy_blocks
        .iter()
        .enumerate()
        .filter(|(i, r)| shape(*i, &s[(*r).clone()]))
        .count();
    let bits = model.parsing_bits(&g) as f64;
    let floor = 0.5 * k as f64 * (inst.params.ell as f64).log2();
    let ok = inst.greedy_blocks.len() == k && matched == k && shaped == k && bits >= floor;
    let detail = format!(
        "{}: k={k} matched={matched} shaped={shaped} bits_greedy={bits} >= {floor:.1}",
        inst.family
    );
    (ok, detail)
}

fn multi_shape(m: usize) -> impl Fn(usize, &[u32]) -> bool {
    // s_i b, with s_i over the letters other than b = 1
    move |_, w| w.len() == m + 1 && w[m] == 1 && w[..m].iter().all(|&c| c != 1)
}

fn binary_shape(m: usize) -> impl Fn(usize, &[u32]) -> bool {
    // s_i 0^m 1 c_i
    move |_, w| w.len() == 2 * m + 2 && w[m..2 * m].iter().all(|&c| c == 0) && w[2 * m] == 1
}

fn criterion_5(multi: &GeneratedInstance, binary: &GeneratedInstance) -> Outcome {
    let (a, da) = structure(multi, multi_shape(multi.params.m.unwrap()));
    let (b, db) = structure(binary, binary_shape(binary.params.m.unwrap()));
    outcome(a && b, format!("{da}; {db}"))
}

fn criterion_6() -> Outcome {
    let model = CostModel::default();
    let mut ratios = Vec::new();
    for e in [12u32, 16, 20, 24] {
        let n = 1usize << e;
        let inst = gen_gray_binary(n, e as usize).unwrap();
        let r = measure(&inst.text, &model, Mode::Witness, Some(&inst.witness)).unwrap();
        ratios.push(r.ratio_lb);
    }
    let increasing = ratios.windows(2).all(|w| w[1] > w[0]);
    let growth = ratios[3] / ratios[0];
    outcome(
        increasing && growth >= SWEEP_GROWTH_FLOOR,
        format!(
            "ratio_lb at n=2^12,16,20,24: {:.4} {:.4} {:.4} {:.4}; growth {growth:.3} (floor {SWEEP_GROWTH_FLOOR})",
            ratios[0], ratios[1], ratios[2], ratios[3]
        ),
    )
}

/// `L(x)` from its recursion, written out independently.
fn recursion_length(x: u32) -> u64 {
    let mut len = 9u64;
    for i in 1..=x {
        let a = 1u64 << (1u32 << i);
        let b = 1u64 << (1u32 << (i - 1));
        len = 2 * a + (a * (a - 1) / 2) / (b * (b - 1) / 2) * len;
    }
    len
}

fn criterion_7(steiner: &[GeneratedInstance]) -> Outcome {
    let model = CostModel::default();
    let mut pass = true;
    let mut parts = Vec::new();
    let mut quality = Vec::new();
    for inst in steiner {
        let x = inst.params.x.unwrap();
        let sigma = inst.params.sigma as f64;
        let a = inst.params.sigma - 2;
        let half = inst.marker("run_start").unwrap() as u64;
        let length_ok = half == recursion_length(x) && half == steiner_length(x);
        let g = greedy_parse(&inst.text, Variant::Classical);
        let pairs = count_pair_phrases(&inst.text, &g);
        let pairs_ok = pairs == a * (a - 1) / 2;
        let wit = model.parsing_bits(&inst.witness);
        let greedy = model.parsing_bits(&g);
        let per = wit as f64 / (sigma * sigma + (inst.params.n as f64).log2());
        let beta_ok = per <= STEINER_BETA;
        pass &= length_ok && pairs_ok && beta_ok;
        quality.push(greedy as f64 / wit as f64);
        parts.push(format!(
            "x={x}: L={half} ({}) pairs={pairs}/{} witness/(σ²+log n)={per:.3} {} β={STEINER_BETA} greedy/witness={:.3}",
            if length_ok { "ok" } else { "MISMATCH" },
            a * (a - 1) / 2,
            if beta_ok { "<=" } else { ">" },
            greedy as f64 / wit as f64
        ));
    }
    let growth = quality[2] > quality[0];
    pass &= growth;
    parts.push(format!("growth x=3 over x=1: {}", if growth { "yes" } else { "no" }));
    outcome(pass, parts.join("; "))
}

fn criterion_8(
    insts: &[GeneratedInstance],
    multi_nc: &GeneratedInstance,
    binary_nc: &GeneratedInstance,
    steiner_nc: &GeneratedInstance,
) -> Outcome {
    let trips = round_trips(&[Variant::Nonclassical], insts);
    let lemmas = lemma_suite(Variant::Nonclassical, insts, std::slice::from_ref(steiner_nc));
    let m = multi_nc.params.m.unwrap();
    // b s_i b
    let (a, da) = structure(multi_nc, move |_, w| {
        w.len() == m + 2 && w[0] == 1 && w[m + 1] == 1 && w[1..=m].iter().all(|&c| c != 1)
    });
    let mb = binary_nc.params.m.unwrap();
    let k = binary_nc.params.k.unwrap();
    // 1 0 s_1 α, then 0 s_i α, with α = 0^{m+1} 1
    let alpha = |w: &[u32]| w.len() == mb + 2 && w[..=mb].iter().all(|&c| c == 0) && w[mb + 1] == 1;
    let (b, db) = structure(binary_nc, move |i, w| {
        let body = if i == 0 {
            w.len() >= 2 && w[..2] == [1, 0] && w.len() >= 2 + mb && alpha(&w[2 + mb..])
        } else {
            w[0] == 0 && w.len() > mb && alpha(&w[1 + mb..(1 + 2 * mb + 2).min(w.len())])
        };
        // The last block also absorbs the closing letter of the text.
        body && (i + 1 == k || w.len() == mb + 1 + mb + 2 + usize::from(i == 0))
    });
    let run = steiner_nc.marker("run_start").unwrap()..steiner_nc.marker("r_start").unwrap();
    let mut pos = 0;
    let mut multi_letter = 0;
    for p in &steiner_nc.witness.phrases {
        if !(pos > run.start && pos < run.end) && p.len() != 1 {
            multi_letter += 1;
        }
        pos += p.len();
    }
    let pass = trips.pass && lemmas.pass && a && b && multi_letter == 0;
    outcome(
        pass,
        format!(
            "round trips: {}; lemmas: {}; {da}; {db}; steiner_nc witness phrases longer than one letter outside the run: {multi_letter}",
            trips.detail, lemmas.detail
        ),
    )
}

fn criterion_9() -> Outcome {
    let inst = gen_gray_binary(1 << 24, 24).unwrap();
    let start = Instant::now();
    let g = greedy_parse_classical(&inst.text);
    let secs = start.elapsed().as_secs_f64();
    outcome(
        secs < PERF_LIMIT_SECS && g.covered_len() == 1 << 24,
        format!("greedy on n=2^24 took {secs:.2}s (limit {PERF_LIMIT_SECS}s), z={}", g.z()),
    )
}

fn main() -> ExitCode {
    let insts = instances();
    let multi = &insts[0];
    let binary = &insts[2];
    let steiner: Vec<GeneratedInstance> = (1..=3)
        .map(|x| gen_steiner(STEINER_N, Some(x)).unwrap())
        .collect();
    let steiner_nc = gen_steiner_nc(STEINER_N, Some(3)).unwrap();

    let criteria: Vec<Criterion> = vec![
        ("oracle equivalence", Box::new(criterion_1)),
        ("greedy phrase-count optimality", Box::new(criterion_2)),
        ("round trips", Box::new(|| round_trips(&[Variant::Classical, Variant::Nonclassical], &insts))),
        ("lemma suite", Box::new(|| lemma_suite(Variant::Classical, &insts, &steiner))),
        ("gray structure", Box::new(|| criterion_5(multi, binary))),
        ("ratio growth", Box::new(criterion_6)),
        ("steiner structure", Box::new(|| criterion_7(&steiner))),
        ("nonclassical", Box::new(|| criterion_8(&insts, &insts[6], &insts[8], &steiner_nc))),
        ("greedy performance", Box::new(criterion_9)),
    ];

    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let o = run();
        let verdict = if o.pass { "PASS" } else { "FAIL" };
        if !o.pass {
            failed += 1;
        }
        println!(
            "{verdict} criterion {} ({name}, {:.1}s): {}",
            i + 1,
            start.elapsed().as_secs_f64(),
            o.detail
        );
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}

