use std::ops::RangeInclusive;

use clap::{Args, Parser, Subcommand, ValueEnum};
use runprob::{Method, Rational};

#[derive(Debug, Parser)]
#[command(name = "runprob", version, about = "Probability of a run of at least r successes in n Bernoulli trials")]
pub struct Cli {
    /// Arithmetic: exact rationals or f64.
    #[arg(long, global = true, value_enum, default_value_t = Mode::Exact)]
    pub mode: Mode,

    #[arg(long, global = true, value_enum, default_value_t = Format::Plain)]
    pub format: Format,

    /// Significant digits in decimal renderings.
    #[arg(long, global = true, default_value_t = 10, value_parser = clap::value_parser!(u16).range(1..=1000))]
    pub digits: u16,

    /// Report elapsed_ns as 0 so output is byte-stable.
    #[arg(long, global = true)]
    pub no_timing: bool,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    Exact,
    Float,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Plain,
    Csv,
    Json,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// P(L_n >= r) by one method.
    Prob(ProbArgs),
    /// Every in-domain method side by side; exit 1 if they disagree.
    Crosscheck(CrosscheckArgs),
    /// One record per (n, r) over ranges.
    Table(TableArgs),
    /// Distribution of the longest run.
    Pmf(PmfArgs),
    /// Monte Carlo estimate.
    Mc(McArgs),
    /// Median wall time per method.
    Bench(BenchArgs),
}

/// A probability as typed, plus its exact value.
#[derive(Debug, Clone)]
pub struct ProbArg {
    pub text: String,
    pub exact: Rational,
}

impl ProbArg {
    pub fn as_f64(&self) -> f64 {
        self.text.trim().parse::<f64>().unwrap_or_else(|_| self.exact.to_f64())
    }
}

fn parse_prob(s: &str) -> Result<ProbArg, String> {
    let exact: Rational = s.parse().map_err(|e| format!("{e}"))?;
    if exact.is_negative() || exact > 1 {
        return Err(format!("probability {s} is outside [0, 1]"));
    }
    Ok(ProbArg { text: s.trim().to_string(), exact })
}

fn parse_method(s: &str) -> Result<Method, String> {
    s.parse()
}

/// `A..B`, inclusive at both ends.
pub fn parse_range(s: &str) -> Result<RangeInclusive<u64>, String> {
    let (a, b) = s.split_once("..").ok_or_else(|| format!("expected A..B, got {s:?}"))?;
    let a: u64 = a.trim().parse().map_err(|_| format!("bad range start in {s:?}"))?;
    let b: u64 = b.trim().parse().map_err(|_| format!("bad range end in {s:?}"))?;
    Ok(a..=b)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RPolicy {
    Half,
    Fixed(u64),
    Sqrt,
}

impl RPolicy {
    pub fn run_length(self, n: u64) -> u64 {
        match self {
            RPolicy::Half => n.div_ceil(2).max(1),
            RPolicy::Fixed(k) => k,
            RPolicy::Sqrt => n.isqrt().max(1),
        }
    }
}

fn parse_policy(s: &str) -> Result<RPolicy, String> {
    match s {
        "half" => Ok(RPolicy::Half),
        "sqrt" => Ok(RPolicy::Sqrt),
        _ => {
            let k = s
                .strip_prefix("fixed:")
                .and_then(|k| k.parse::<u64>().ok())
                .filter(|k| *k >= 1)
                .ok_or_else(|| format!("expected half, sqrt or fixed:K with K >= 1, got {s:?}"))?;
            Ok(RPolicy::Fixed(k))
        }
    }
}

#[derive(Debug, Args)]
pub struct QueryArgs {
    #[arg(long)]
    pub n: u64,
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    pub r: u64,
    #[arg(long, value_parser = parse_prob)]
    pub p: ProbArg,
}

#[derive(Debug, Args)]
pub struct ProbArgs {
    #[command(flatten)]
    pub query: QueryArgs,
    /// recurrence, uspensky, corollary, brute or auto.
    #[arg(long, value_parser = parse_method, default_value = "auto")]
    pub method: Method,
    /// Largest n for brute-force enumeration.
    #[arg(long, default_value_t = runprob::oracle::DEFAULT_BRUTE_FORCE_CAP)]
    pub brute_cap: u64,
}

#[derive(Debug, Args)]
pub struct CrosscheckArgs {
    #[command(flatten)]
    pub query: QueryArgs,
    #[arg(long, default_value_t = runprob::oracle::DEFAULT_BRUTE_FORCE_CAP)]
    pub brute_cap: u64,
    /// Largest pairwise relative difference accepted in float mode.
    #[arg(long, default_value_t = 1e-9)]
    pub tolerance: f64,
}

#[derive(Debug, Args)]
pub struct TableArgs {
    /// Trials, as A..B.
    #[arg(long, value_parser = parse_range)]
    pub n_range: RangeInclusive<u64>,
    /// Run lengths, as C..D.
    #[arg(long, value_parser = parse_range, required_unless_present = "r", conflicts_with = "r")]
    pub r_range: Option<RangeInclusive<u64>>,
    /// `all` for every r in 1..=n.
    #[arg(long, value_parser = ["all"])]
    pub r: Option<String>,
    #[arg(long, value_parser = parse_prob)]
    pub p: ProbArg,
    #[arg(long, value_parser = parse_method, default_value = "auto")]
    pub method: Method,
    #[arg(long, default_value_t = runprob::oracle::DEFAULT_BRUTE_FORCE_CAP)]
    pub brute_cap: u64,
}

#[derive(Debug, Args)]
pub struct PmfArgs {
    #[arg(long)]
    pub n: u64,
    #[arg(long, value_parser = parse_prob)]
    pub p: ProbArg,
    /// Also print E[L_n].
    #[arg(long)]
    pub expectation: bool,
}

#[derive(Debug, Args)]
pub struct McArgs {
    #[command(flatten)]
    pub query: QueryArgs,
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    pub samples: u64,
    #[arg(long)]
    pub seed: u64,
    #[arg(long, default_value_t = runprob::oracle::McConfig::DEFAULT_CHUNK_SIZE, value_parser = clap::value_parser!(u64).range(1..))]
    pub chunk_size: u64,
    /// Worker threads (default: all cores). Does not change the estimate.
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    pub workers: Option<u64>,
}

#[derive(Debug, Args)]
pub struct BenchArgs {
    /// Comma-separated trial counts.
    #[arg(long, value_delimiter = ',', required = true)]
    pub n_list: Vec<u64>,
    /// half, sqrt or fixed:K.
    #[arg(long, value_parser = parse_policy)]
    pub r_policy: RPolicy,
    #[arg(long, value_parser = parse_prob)]
    pub p: ProbArg,
    /// Timed repetitions per cell; the median is reported.
    #[arg(long, default_value_t = 3, value_parser = clap::value_parser!(u32).range(1..))]
    pub repeats: u32,
    /// Restrict to these methods (default recurrence,uspensky,corollary).
    #[arg(long, value_delimiter = ',', value_parser = parse_method)]
    pub methods: Vec<Method>,
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ranges() {
        assert_eq!(parse_range("3..5").unwrap(), 3..=5);
        assert!(parse_range("3..").is_err());
        assert!(parse_range("3-5").is_err());
        assert!(parse_range("5..3").unwrap().is_empty());
    }

    #[test]
    fn policies() {
        assert_eq!(parse_policy("half").unwrap().run_length(1000), 500);
        assert_eq!(parse_policy("half").unwrap().run_length(11), 6);
        assert_eq!(parse_policy("sqrt").unwrap().run_length(1000), 31);
        assert_eq!(parse_policy("fixed:3").unwrap().run_length(10), 3);
        assert!(parse_policy("fixed:0").is_err());
        assert!(parse_policy("third").is_err());
    }

    #[test]
    fn probabilities() {
        assert_eq!(parse_prob("0.3").unwrap().exact, "3/10".parse::<Rational>().unwrap());
        assert_eq!(parse_prob("1/3").unwrap().as_f64(), 1.0 / 3.0);
        assert_eq!(parse_prob("0.3").unwrap().as_f64(), 0.3);
        assert!(parse_prob("3/2").is_err());
        assert!(parse_prob("-0.1").is_err());
        assert!(parse_prob("half").is_err());
    }
}
