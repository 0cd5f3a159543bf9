//! Flag values shared by several subcommands.

use std::str::FromStr;

use anyhow::{anyhow, bail, Context, Result};
use lzrl::bitcodec::{Codec, CostModel};
use lzrl::generators::{
    gen_gray_binary, gen_gray_binary_nc, gen_gray_multi, gen_gray_multi_nc, gen_steiner,
    gen_steiner_nc, Family, GeneratedInstance,
};
use lzrl::parser::Variant;

/// How `z` is derived from `n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ZRule {
    Fixed(usize),
    /// `ceil(log2 n)`
    Log,
    /// `ceil(sqrt n)`
    Sqrt,
}

impl ZRule {
    pub fn value(self, n: usize) -> usize {
        match self {
            ZRule::Fixed(z) => z,
            ZRule::Log => (n.max(2) as f64).log2().ceil() as usize,
            ZRule::Sqrt => (n as f64).sqrt().ceil() as usize,
        }
    }
}

impl FromStr for ZRule {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim() {
            "log" => Ok(ZRule::Log),
            "sqrt" => Ok(ZRule::Sqrt),
            other => other
                .parse()
                .map(ZRule::Fixed)
                .map_err(|_| format!("expected a number, `log` or `sqrt`, got `{other}`")),
        }
    }
}

/// `d,l,c` codec names; a single name applies to all three.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CodecTriple(pub [Codec; 3]);

impl FromStr for CodecTriple {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let parts: Vec<Codec> = s.split(',').map(str::parse).collect::<Result<_, _>>()?;
        match parts[..] {
            [c] => Ok(CodecTriple([c; 3])),
            [d, l, c] => Ok(CodecTriple([d, l, c])),
            _ => Err(format!("expected one or three codecs, got `{s}`")),
        }
    }
}

impl CodecTriple {
    pub fn model(self, variant: Variant) -> CostModel {
        let [d, l, c] = self.0;
        CostModel::new(d, l, c, variant)
    }
}

/// Accepts `65536` or `2^16`.
pub fn parse_size(s: &str) -> Result<usize, String> {
    let s = s.trim();
    let value = match s.split_once('^') {
        Some((base, exp)) => {
            let base: usize = base.parse().map_err(|_| format!("bad size `{s}`"))?;
            let exp: u32 = exp.parse().map_err(|_| format!("bad size `{s}`"))?;
            base.checked_pow(exp).ok_or_else(|| format!("size `{s}` overflows"))?
        }
        None => s.parse().map_err(|_| format!("bad size `{s}`"))?,
    };
    if value == 0 {
        return Err("sizes must be positive".into());
    }
    Ok(value)
}

#[derive(Debug, Clone, Copy)]
pub struct InstanceSpec {
    pub family: Family,
    pub n: usize,
    pub z: ZRule,
    pub sigma: usize,
    pub x: Option<u32>,
}

impl InstanceSpec {
    pub fn generate(&self) -> Result<GeneratedInstance> {
        let n = self.n;
        let z = self.z.value(n);
        let inst = match self.family {
            Family::GrayMulti => gen_gray_multi(n, self.sigma, z),
            Family::GrayMultiNc => gen_gray_multi_nc(n, self.sigma, z),
            Family::GrayBinary => gen_gray_binary(n, z),
            Family::GrayBinaryNc => gen_gray_binary_nc(n, z),
            Family::Steiner => gen_steiner(n, self.x),
            Family::SteinerNc => gen_steiner_nc(n, self.x),
        };
        inst.with_context(|| format!("generating {} with n = {n}", self.family))
    }
}

pub fn parse_family(s: &str) -> Result<Family, String> {
    s.parse()
}

/// Comma-separated list of sizes.
pub fn parse_size_list(s: &str) -> Result<Vec<usize>> {
    let sizes: Vec<usize> = s
        .split(',')
        .map(parse_size)
        .collect::<Result<_, _>>()
        .map_err(|e| anyhow!(e))?;
    if sizes.is_empty() {
        bail!("the n-list is empty");
    }
    Ok(sizes)
}
