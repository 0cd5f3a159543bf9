use std::fmt;
use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use lzrl::analysis::{
    check_distinct_phrases, check_long_phrases, check_overlap_bound, measure as measure_text,
    AnalysisError, Mode, Report, EXACT_OPT_LIMIT,
};
use lzrl::bitcodec::format::{read_container, write_container, FormatError};
use lzrl::bitcodec::CostModel;
use lzrl::generators::{
    gen_gray_binary, gen_gray_binary_nc, gen_gray_multi, gen_gray_multi_nc, gen_steiner,
    gen_steiner_nc, GenError, GeneratedInstance,
};
use lzrl::optimal::{brute_force_optimal, optimal_bits_parse};
use lzrl::parser::{
    greedy_parse, validate_parsing, ParseError, Parsing, Text, TextError, Variant,
};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::config::{parse_size_list, InstanceSpec};
use crate::{
    DecodeArgs, EncodeArgs, GenArgs, InstanceArgs, MeasureArgs, ParseArgs, SelftestArgs,
    SweepArgs, VerifyArgs,
};

/// A check that ran and failed.
#[derive(Debug)]
pub struct Failure(pub String);

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for Failure {}

/// Caps the rayon pool at `LZRL_THREADS` when set.
pub fn init_threads() -> Result<()> {
    let Ok(value) = std::env::var("LZRL_THREADS") else {
        return Ok(());
    };
    let threads: usize = value
        .trim()
        .parse()
        .ok()
        .filter(|&t| t > 0)
        .with_context(|| format!("LZRL_THREADS must be a positive integer, got `{value}`"))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build_global()
        .context("configuring the thread pool")
}

pub fn error_kind(e: &anyhow::Error) -> &'static str {
    for cause in e.chain() {
        if cause.is::<Failure>() {
            return "check_failed";
        }
        if cause.is::<io::Error>() {
            return "io";
        }
        if cause.is::<TextError>() {
            return "text";
        }
        if cause.is::<FormatError>() {
            return "format";
        }
        if cause.is::<ParseError>() || cause.is::<serde_json::Error>() {
            return "parsing";
        }
        if cause.is::<GenError>() {
            return "generate";
        }
        if cause.is::<AnalysisError>() {
            return "analysis";
        }
    }
    "usage"
}

fn read_text(path: &Path, bytes: bool) -> Result<Text> {
    let text = if bytes {
        let raw = fs::read(path).with_context(|| format!("reading {}", path.display()))?;
        Text::from_bytes(&raw)
    } else {
        let raw = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
        Text::parse_decimal(&raw)
    };
    text.with_context(|| format!("loading {}", path.display()))
}

fn write_text(path: &Path, text: &Text, bytes: bool) -> Result<()> {
    let data = if bytes {
        match text.to_bytes() {
            Some(b) => b,
            None => bail!(Failure("text has letters above 255 and cannot be written with --bytes".into())),
        }
    } else {
        text.to_decimal_string().into_bytes()
    };
    fs::write(path, data).with_context(|| format!("writing {}", path.display()))
}

fn write_output(path: Option<&Path>, data: &[u8]) -> Result<()> {
    match path {
        Some(p) => fs::write(p, data).with_context(|| format!("writing {}", p.display())),
        None => io::stdout().write_all(data).context("writing to stdout"),
    }
}

fn validated(text: &Text, parsing: &Parsing) -> Result<()> {
    validate_parsing(text, parsing)
        .map_err(|v| Failure(format!("parsing failed validation: {v}")))?;
    Ok(())
}

fn instance_spec(args: &InstanceArgs) -> Result<InstanceSpec> {
    let Some(family) = args.family else {
        bail!("--family is required");
    };
    let Some(n) = args.n else {
        bail!("--n is required");
    };
    Ok(InstanceSpec {
        family,
        n,
        z: args.z,
        sigma: args.sigma,
        x: args.x,
    })
}

fn sidecar_path(out: &Path) -> PathBuf {
    let mut name = out.as_os_str().to_owned();
    name.push(".json");
    PathBuf::from(name)
}

pub fn gen(args: GenArgs) -> Result<()> {
    let inst = instance_spec(&args.instance)?.generate()?;
    validated(&inst.text, &inst.witness)?;
    write_text(&args.out, &inst.text, args.bytes)?;
    let sidecar = serde_json::to_string_pretty(&inst.sidecar_json())?;
    let sidecar_out = sidecar_path(&args.out);
    fs::write(&sidecar_out, sidecar + "\n")
        .with_context(|| format!("writing {}", sidecar_out.display()))?;
    if let Some(path) = &args.witness {
        fs::write(path, inst.witness.to_json() + "\n")
            .with_context(|| format!("writing {}", path.display()))?;
    }
    Ok(())
}

fn parse_with(text: &Text, model: &CostModel, optimal: bool) -> Parsing {
    if optimal {
        optimal_bits_parse(text, model).0
    } else {
        greedy_parse(text, model.variant)
    }
}

pub fn parse(args: ParseArgs) -> Result<()> {
    let text = read_text(&args.input, args.bytes)?;
    let model = args.codec.model(args.variant);
    let parsing = parse_with(&text, &model, args.optimal);
    validated(&text, &parsing)?;
    write_output(args.out.as_deref(), (parsing.to_json() + "\n").as_bytes())
}

pub fn encode(args: EncodeArgs) -> Result<()> {
    let text = read_text(&args.input, args.bytes)?;
    let model = args.model.codec.model(args.model.variant.unwrap_or(Variant::Classical));
    let parsing = parse_with(&text, &model, args.optimal);
    validated(&text, &parsing)?;
    let bytes = write_container(&parsing, &model, text.len() as u64)?;
    fs::write(&args.out, bytes).with_context(|| format!("writing {}", args.out.display()))
}

pub fn decode(args: DecodeArgs) -> Result<()> {
    let raw = fs::read(&args.input).with_context(|| format!("reading {}", args.input.display()))?;
    let container = read_container(&raw)?;
    let text = container.text()?;
    write_text(&args.out, &text, args.bytes)
}

/// Exact optimum when affordable, the witness when there is one.
fn auto_mode(n: usize, has_witness: bool) -> Mode {
    match (n <= EXACT_OPT_LIMIT, has_witness) {
        (true, true) => Mode::Both,
        (true, false) => Mode::ExactOpt,
        (false, _) => Mode::Witness,
    }
}

fn measure_instance(inst: &GeneratedInstance, model: &CostModel, mode: Option<Mode>) -> Result<Report> {
    let mode = mode.unwrap_or_else(|| auto_mode(inst.text.len(), true));
    let witness = (inst.witness.variant == model.variant).then_some(&inst.witness);
    measure_text(&inst.text, model, mode, witness)
        .with_context(|| format!("measuring {} with n = {}", inst.family, inst.params.n))
}

fn csv_bytes(reports: &[Report]) -> Result<Vec<u8>> {
    let mut w = csv::Writer::from_writer(Vec::new());
    for r in reports {
        w.serialize(r)?;
    }
    w.into_inner().context("flushing CSV")
}

pub fn measure(args: MeasureArgs) -> Result<()> {
    let report = match &args.input {
        Some(path) => {
            let text = read_text(path, args.bytes)?;
            let witness = match &args.witness {
                Some(w) => {
                    let raw = fs::read_to_string(w).with_context(|| format!("reading {}", w.display()))?;
                    Some(Parsing::from_json(&raw)?)
                }
                None => None,
            };
            let variant = args
                .model
                .variant
                .or(witness.as_ref().map(|w| w.variant))
                .unwrap_or(Variant::Classical);
            let model = args.model.codec.model(variant);
            let mode = args.mode.unwrap_or_else(|| auto_mode(text.len(), witness.is_some()));
            measure_text(&text, &model, mode, witness.as_ref())?
        }
        None => {
            let inst = instance_spec(&args.instance)?.generate()?;
            let model = args.model.codec.model(args.model.variant.unwrap_or(inst.variant()));
            measure_instance(&inst, &model, args.mode)?
        }
    };
    let data = if args.json {
        (serde_json::to_string(&report)? + "\n").into_bytes()
    } else {
        csv_bytes(std::slice::from_ref(&report))?
    };
    write_output(args.out.as_deref(), &data)
}

pub fn sweep(args: SweepArgs) -> Result<()> {
    let mut sizes = parse_size_list(&args.n)?;
    sizes.sort_unstable();
    let specs: Vec<InstanceSpec> = sizes
        .iter()
        .map(|&n| InstanceSpec {
            family: args.family,
            n,
            z: args.z,
            sigma: args.sigma,
            x: args.x,
        })
        .collect();
    let variant = args.model.variant.unwrap_or(args.family.variant());
    let model = args.model.codec.model(variant);
    // One denominator kind for every row, so ratios are comparable.
    let mode = Some(args.mode.unwrap_or(Mode::Witness));
    let reports: Vec<Report> = specs
        .par_iter()
        .map(|spec| measure_instance(&spec.generate()?, &model, mode))
        .collect::<Result<_>>()?;
    write_output(args.out.as_deref(), &csv_bytes(&reports)?)
}

fn random_text(rng: &mut ChaCha8Rng, max_n: usize, sigma: u32) -> Text {
    let n = rng.gen_range(1..=max_n);
    Text::random(rng, n, sigma)
}

fn verify_instances() -> Result<Vec<GeneratedInstance>> {
    Ok(vec![
        gen_gray_multi(2000, 4, 32)?,
        gen_gray_multi_nc(2000, 4, 32)?,
        gen_gray_binary(4096, 32)?,
        gen_gray_binary_nc(4096, 32)?,
        gen_steiner(1000, Some(1))?,
        gen_steiner_nc(1000, Some(1))?,
        gen_steiner(8192, Some(2))?,
    ])
}

/// Lemma checks for one text; `other` is any valid parsing in `variant`.
fn lemma_failures(text: &Text, variant: Variant, other: &Parsing) -> Vec<String> {
    let g = greedy_parse(text, variant);
    let mut out = Vec::new();
    if let Err(e) = check_distinct_phrases(text, &g) {
        out.push(e.to_string());
    }
    if variant == Variant::Classical {
        if let Err(e) = check_long_phrases(&g, text.sigma()) {
            out.push(e.to_string());
        }
    }
    if let Err(e) = check_overlap_bound(other, &g) {
        out.push(e.to_string());
    }
    out
}

pub fn verify(args: VerifyArgs) -> Result<()> {
    if args.max_n == 0 {
        bail!("--max-n must be positive");
    }
    let mut rng = ChaCha8Rng::seed_from_u64(args.seed);
    let sigmas = [2u32, 4, 16, 64];
    let texts: Vec<Text> = (0..args.count)
        .map(|i| random_text(&mut rng, args.max_n, sigmas[i % sigmas.len()]))
        .collect();
    let mut failures: Vec<String> = texts
        .par_iter()
        .enumerate()
        .flat_map_iter(|(i, text)| {
            [Variant::Classical, Variant::Nonclassical]
                .into_iter()
                .flat_map(move |variant| {
                    let model = CostModel::default().with_variant(variant);
                    let opt = optimal_bits_parse(text, &model).0;
                    lemma_failures(text, variant, &opt)
                        .into_iter()
                        .map(move |f| format!("random text {i} ({variant}): {f}"))
                })
        })
        .collect();
    let insts = verify_instances()?;
    for inst in &insts {
        let model = CostModel::default().with_variant(inst.variant());
        let opt = optimal_bits_parse(&inst.text, &model).0;
        for f in lemma_failures(&inst.text, inst.variant(), &opt) {
            failures.push(format!("{} n={}: {f}", inst.family, inst.params.n));
        }
    }
    let checked = texts.len() + insts.len();
    if let Some(first) = failures.first() {
        bail!(Failure(format!(
            "{} lemma failures on {checked} texts; first: {first}",
            failures.len()
        )));
    }
    println!("lemmas hold on {checked} texts, 0 failures");
    Ok(())
}

pub fn selftest(args: SelftestArgs) -> Result<()> {
    if args.max_len > lzrl::optimal::BRUTE_FORCE_LIMIT {
        bail!("--max-len is limited to {}", lzrl::optimal::BRUTE_FORCE_LIMIT);
    }
    let mut texts = Vec::new();
    for len in 1..=args.max_len {
        for bits in 0u32..1 << len {
            texts.push(Text::new((0..len).map(|i| bits >> i & 1).collect())?);
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(args.seed);
    for i in 0..args.count {
        texts.push(random_text(&mut rng, 14, 2 + (i % 3) as u32));
    }
    let models: Vec<CostModel> = lzrl::bitcodec::Codec::ALL
        .into_iter()
        .flat_map(|c| {
            [Variant::Classical, Variant::Nonclassical].map(|v| CostModel::uniform(c, v))
        })
        .collect();
    let mismatches: usize = texts
        .par_iter()
        .map(|text| {
            models
                .iter()
                .filter(|m| brute_force_optimal(text, m) != Ok(optimal_bits_parse(text, m).1))
                .count()
        })
        .sum();
    let runs = texts.len() * models.len();
    println!("optimal=oracle on {runs} instances, {mismatches} mismatches");
    if mismatches > 0 {
        bail!(Failure(format!("{mismatches} of {runs} optimal sizes differ from the oracle")));
    }
    Ok(())
}
