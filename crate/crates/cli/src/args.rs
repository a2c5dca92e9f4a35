use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use bohr_core::radii::FamilyKind;
use bohr_core::{Complex, SampleKind, DEFAULT_ORDER};
use clap::{ArgGroup, Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(
    name = "bohr",
    version,
    about = "Bohr and Rogosinski radii for bounded analytic functions"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Certified radius for every requested family and m
    Tables(TablesArgs),
    /// Randomized sweep of one inequality at a fraction of its radius
    Verify(VerifyArgs),
    /// Evaluate one functional on a Möbius map or a coefficient file
    Evaluate(EvaluateArgs),
    /// Extremal a-ladder just past a radius
    Sharpness(SharpnessArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum)]
pub enum Format {
    #[default]
    Csv,
    Json,
}

#[derive(Debug, Args)]
pub struct OutputArgs {
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    /// Write to this file instead of standard output
    #[arg(long)]
    pub out: Option<PathBuf>,
}

/// Inclusive range of `m`, written `a..b`, `a..=b` or `a`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MRange {
    pub lo: u32,
    pub hi: u32,
}

impl FromStr for MRange {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let parse = |t: &str| {
            t.trim()
                .parse::<u32>()
                .map_err(|_| format!("invalid m `{t}` in range `{s}`"))
        };
        let (lo, hi) = match s.split_once("..") {
            Some((a, b)) => (parse(a)?, parse(b.strip_prefix('=').unwrap_or(b))?),
            None => {
                let v = parse(s)?;
                (v, v)
            }
        };
        if lo == 0 || lo > hi {
            return Err(format!("m range `{s}` must satisfy 1 <= start <= end"));
        }
        Ok(MRange { lo, hi })
    }
}

impl fmt::Display for MRange {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}..{}", self.lo, self.hi)
    }
}

pub fn parse_family(s: &str) -> Result<FamilyKind, String> {
    s.parse().map_err(|e: bohr_core::Error| e.to_string())
}

/// Either a radius family or the partial-sum inequality.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Target {
    Family(FamilyKind),
    Rogosinski,
}

pub fn parse_target(s: &str) -> Result<Target, String> {
    if s == "rogosinski" {
        Ok(Target::Rogosinski)
    } else {
        parse_family(s).map(Target::Family)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Samples {
    Mobius,
    Blaschke,
    Polynomial,
}

impl From<Samples> for SampleKind {
    fn from(s: Samples) -> Self {
        match s {
            Samples::Mobius => SampleKind::Mobius,
            Samples::Blaschke => SampleKind::FiniteBlaschkeCombo,
            Samples::Polynomial => SampleKind::ScaledPolynomial,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FunctionalName {
    #[value(name = "A")]
    A,
    #[value(name = "B")]
    B,
    #[value(name = "C")]
    C,
    #[value(name = "D")]
    D,
    #[value(name = "E")]
    E,
    #[value(name = "rogosinski")]
    Rogosinski,
}

impl FunctionalName {
    pub fn name(self) -> &'static str {
        match self {
            FunctionalName::A => "A",
            FunctionalName::B => "B",
            FunctionalName::C => "C",
            FunctionalName::D => "D",
            FunctionalName::E => "E",
            FunctionalName::Rogosinski => "rogosinski",
        }
    }
}

/// Complex point written `re` or `re,im`.
pub fn parse_point(s: &str) -> Result<Complex, String> {
    let num = |t: &str| {
        t.trim()
            .parse::<f64>()
            .map_err(|_| format!("invalid coordinate `{t}` in point `{s}`"))
    };
    match s.split_once(',') {
        Some((re, im)) => Ok(Complex::new(num(re)?, num(im)?)),
        None => Ok(Complex::new(num(s)?, 0.0)),
    }
}

#[derive(Debug, Args)]
pub struct TablesArgs {
    /// Families to tabulate (comma separated); all five when omitted
    #[arg(long, value_delimiter = ',', value_parser = parse_family)]
    pub family: Vec<FamilyKind>,
    #[arg(long, default_value = "1..5")]
    pub m: MRange,
    /// Dilatation bound, used by lambda and Lambda
    #[arg(long, default_value_t = 1.0)]
    pub k: f64,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// phi, psi, Phi, lambda, Lambda or rogosinski
    #[arg(long, value_parser = parse_target)]
    pub family: Target,
    #[arg(long, default_value_t = 1)]
    pub m: u32,
    #[arg(long, default_value_t = 1.0)]
    pub k: f64,
    #[arg(long, default_value_t = 500)]
    pub trials: usize,
    /// Fraction of the radius to test at [default: 0.999, or 1 for rogosinski]
    #[arg(long)]
    pub r_fraction: Option<f64>,
    #[arg(long, default_value_t = 42)]
    pub seed: u64,
    #[arg(long, value_enum, default_value_t = Samples::Mobius)]
    pub samples: Samples,
    /// Largest partial sum index checked by rogosinski
    #[arg(long, default_value_t = 10)]
    pub max_n: usize,
    /// Retained coefficients per sample
    #[arg(long, default_value_t = DEFAULT_ORDER)]
    pub order: usize,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
#[command(group(ArgGroup::new("source").required(true).args(["mobius_a", "coeff_file"])))]
pub struct EvaluateArgs {
    #[arg(long, value_enum)]
    pub functional: FunctionalName,
    /// Use f(z) = (a + s z)/(1 + s a z) with s = --mobius-sign
    #[arg(long, allow_negative_numbers = true)]
    pub mobius_a: Option<f64>,
    #[arg(long, default_value_t = 1, allow_negative_numbers = true)]
    pub mobius_sign: i8,
    /// Coefficients a_0, a_1, ... as one `re im` pair per line
    #[arg(long)]
    pub coeff_file: Option<PathBuf>,
    /// Treat the coefficient file as an exact polynomial (zero tail)
    #[arg(long, requires = "coeff_file")]
    pub exact_polynomial: bool,
    /// Co-analytic part for D and E; defaults to lambda*k*(h - h(0))
    #[arg(long)]
    pub g_file: Option<PathBuf>,
    #[arg(long, default_value_t = 1)]
    pub m: u32,
    /// Evaluate at z = r on the positive axis
    #[arg(long, allow_negative_numbers = true)]
    pub r: Option<f64>,
    /// Evaluate at a complex point `re` or `re,im`
    #[arg(long, value_parser = parse_point, allow_negative_numbers = true, conflicts_with = "r")]
    pub z: Option<Complex>,
    /// Partial sum index for rogosinski
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long, default_value_t = 1.0)]
    pub k: f64,
    #[arg(long, default_value_t = 1.0)]
    pub lambda: f64,
    #[arg(long, default_value_t = DEFAULT_ORDER)]
    pub order: usize,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct SharpnessArgs {
    #[arg(long, value_parser = parse_family)]
    pub family: FamilyKind,
    #[arg(long, default_value_t = 1)]
    pub m: u32,
    #[arg(long, default_value_t = 1.0)]
    pub k: f64,
    /// Extremal parameter lambda [default: 1 for lambda, k for Lambda]
    #[arg(long)]
    pub lambda: Option<f64>,
    #[arg(long, default_value_t = 1.05)]
    pub r_multiplier: f64,
    /// Values of a (comma separated) [default: 0.9,0.99,0.999,0.9999]
    #[arg(long, value_delimiter = ',', allow_negative_numbers = true)]
    pub a: Vec<f64>,
    #[command(flatten)]
    pub output: OutputArgs,
}
