//! `lzrl`: generate adversarial texts, parse and encode them, and measure
//! greedy LZ77 against optimal and witness parsings.

mod commands;
mod config;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use lzrl::analysis::Mode;
use lzrl::generators::Family;
use lzrl::parser::Variant;

use config::{parse_family, parse_size, CodecTriple, ZRule};

#[derive(Parser)]
#[command(name = "lzrl", version, about = "Greedy versus bit-optimal LZ77 parsing experiments")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate an adversarial text and its JSON sidecar.
    Gen(GenArgs),
    /// Parse a text and print the parsing as JSON.
    Parse(ParseArgs),
    /// Encode a text into an LZRL container.
    Encode(EncodeArgs),
    /// Decode an LZRL container back into a text.
    Decode(DecodeArgs),
    /// Measure greedy against optimal and/or witness sizes; prints a CSV row.
    Measure(MeasureArgs),
    /// Measure a family over several sizes; CSV rows sorted by n.
    Sweep(SweepArgs),
    /// Run the lemma validators on random texts and generated instances.
    Verify(VerifyArgs),
    /// Compare the optimal parser against exhaustive enumeration.
    Selftest(SelftestArgs),
}

#[derive(Args, Clone)]
struct InstanceArgs {
    #[arg(long, value_parser = parse_family)]
    family: Option<Family>,
    #[arg(long, value_parser = parse_size)]
    n: Option<usize>,
    /// A number, `log` (ceil log2 n) or `sqrt` (ceil sqrt n).
    #[arg(long, default_value = "log")]
    z: ZRule,
    #[arg(long, default_value_t = 4)]
    sigma: usize,
    /// Force the Steiner recursion depth.
    #[arg(long)]
    x: Option<u32>,
}

#[derive(Args, Clone)]
struct ModelArgs {
    /// Codecs for distance, length and letter, e.g. `gamma,delta,gamma`.
    #[arg(long, default_value = "gamma,gamma,gamma")]
    codec: CodecTriple,
    #[arg(long)]
    variant: Option<Variant>,
}

#[derive(Args)]
struct GenArgs {
    #[command(flatten)]
    instance: InstanceArgs,
    /// Text output; the sidecar goes to `<out>.json`.
    #[arg(long)]
    out: PathBuf,
    /// Write one byte per letter instead of decimal codes.
    #[arg(long)]
    bytes: bool,
    /// Also write the witness parsing as JSON.
    #[arg(long)]
    witness: Option<PathBuf>,
}

#[derive(Args)]
struct ParseArgs {
    input: PathBuf,
    #[arg(long)]
    bytes: bool,
    #[arg(long, default_value = "classical")]
    variant: Variant,
    /// Use the bit-optimal parser instead of greedy.
    #[arg(long)]
    optimal: bool,
    #[arg(long, default_value = "gamma,gamma,gamma")]
    codec: CodecTriple,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct EncodeArgs {
    input: PathBuf,
    #[arg(long)]
    bytes: bool,
    #[command(flatten)]
    model: ModelArgs,
    #[arg(long)]
    optimal: bool,
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args)]
struct DecodeArgs {
    input: PathBuf,
    #[arg(long)]
    bytes: bool,
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args)]
struct MeasureArgs {
    /// Text file; omit to generate an instance from `--family`.
    input: Option<PathBuf>,
    #[arg(long)]
    bytes: bool,
    /// Witness parsing (JSON) for a text file.
    #[arg(long)]
    witness: Option<PathBuf>,
    #[command(flatten)]
    instance: InstanceArgs,
    #[command(flatten)]
    model: ModelArgs,
    /// exact_opt, witness or both; chosen from n and the witness when omitted.
    #[arg(long)]
    mode: Option<Mode>,
    /// Print the report as JSON instead of CSV.
    #[arg(long)]
    json: bool,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct SweepArgs {
    #[arg(long, value_parser = parse_family)]
    family: Family,
    /// Comma-separated sizes, e.g. `2^12,2^16,2^20`.
    #[arg(long)]
    n: String,
    #[arg(long, default_value = "log")]
    z: ZRule,
    #[arg(long, default_value_t = 4)]
    sigma: usize,
    #[arg(long)]
    x: Option<u32>,
    #[command(flatten)]
    model: ModelArgs,
    /// Defaults to witness, so every row divides by the same kind of size.
    #[arg(long)]
    mode: Option<Mode>,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Number of random texts.
    #[arg(long, default_value_t = 1000)]
    count: usize,
    #[arg(long, default_value_t = 300)]
    max_n: usize,
}

#[derive(Args)]
struct SelftestArgs {
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Number of random texts on top of the exhaustive binary ones.
    #[arg(long, default_value_t = 500)]
    count: usize,
    /// Exhaustive binary strings up to this length.
    #[arg(long, default_value_t = 10)]
    max_len: usize,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Err(e) = commands::init_threads() {
        return report(&e);
    }
    let result = match cli.command {
        Command::Gen(a) => commands::gen(a),
        Command::Parse(a) => commands::parse(a),
        Command::Encode(a) => commands::encode(a),
        Command::Decode(a) => commands::decode(a),
        Command::Measure(a) => commands::measure(a),
        Command::Sweep(a) => commands::sweep(a),
        Command::Verify(a) => commands::verify(a),
        Command::Selftest(a) => commands::selftest(a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => report(&e),
    }
}

/// One JSON object on stderr: `{"error": kind, "message": ...}`.
fn report(e: &anyhow::Error) -> ExitCode {
    let line = serde_json::json!({
        "error": commands::error_kind(e),
        "message": format!("{e:#}"),
    });
    eprintln!("{line}");
    ExitCode::FAILURE
}
