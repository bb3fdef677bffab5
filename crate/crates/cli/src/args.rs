use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

/// Environment variable naming the cache directory when `--cache-dir` is absent.
pub const CACHE_ENV: &str = "CERESA_CACHE_DIR";

#[derive(Debug, Parser)]
#[command(name = "ceresa", version, about = "Sweeps over cyclic quotients of Fermat curves")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Search every class for an automorphism with no eigenvalue 1 on the
    /// tangent space of the intermediate Jacobian.
    Scan(ScanArgs),
    /// CM type, stabilizer, isogeny and minimality data for every class.
    Classify(RangeArgs),
    /// Non-hyperelliptic classes isogenous to `(m,1,1)`, with their
    /// minimality verdict and an obstructing subcover when there is one.
    Minimal(RangeArgs),
    /// Jacobi sums of one character pair at every prime up to `--p-max`.
    Jacobi(JacobiArgs),
    /// Local Euler factors of a product of Jacobi-sum characters.
    LocalFactor(LocalFactorArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Jsonl,
    Csv,
}

impl Format {
    pub fn name(self) -> &'static str {
        match self {
            Format::Jsonl => "jsonl",
            Format::Csv => "csv",
        }
    }
}

#[derive(Debug, Clone, Args)]
pub struct Common {
    /// Worker threads.
    #[arg(long, default_value_t = 1)]
    pub jobs: usize,
    #[arg(long, value_enum, default_value_t = Format::Jsonl)]
    pub format: Format,
    /// Directory holding one cache file per command.
    #[arg(long, env = CACHE_ENV)]
    pub cache_dir: Option<PathBuf>,
    /// Write the report here instead of stdout.
    #[arg(long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct RangeArgs {
    #[arg(long, default_value_t = 3)]
    pub m_min: u32,
    #[arg(long)]
    pub m_max: u32,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Debug, Clone, Args)]
pub struct ScanArgs {
    #[command(flatten)]
    pub range: RangeArgs,
    /// Test one automorphism per induced exponent `ia + jb mod m`.
    #[arg(long)]
    pub use_collapse_opt: bool,
}

#[derive(Debug, Clone, Args)]
pub struct JacobiArgs {
    #[arg(long)]
    pub m: u32,
    #[arg(long)]
    pub a: u32,
    #[arg(long)]
    pub b: u32,
    #[arg(long, default_value_t = 2)]
    pub p_min: u64,
    #[arg(long)]
    pub p_max: u64,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Debug, Clone, Args)]
pub struct LocalFactorArgs {
    #[arg(long)]
    pub m: u32,
    /// Character pairs as `a,b;a,b;...`.
    #[arg(long)]
    pub chars: String,
    #[arg(long, default_value_t = 2)]
    pub p_min: u64,
    #[arg(long)]
    pub p_max: u64,
    #[command(flatten)]
    pub common: Common,
}

impl Command {
    pub fn common(&self) -> &Common {
        match self {
            Command::Scan(a) => &a.range.common,
            Command::Classify(a) | Command::Minimal(a) => &a.common,
            Command::Jacobi(a) => &a.common,
            Command::LocalFactor(a) => &a.common,
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Command::Scan(_) => "scan",
            Command::Classify(_) => "classify",
            Command::Minimal(_) => "minimal",
            Command::Jacobi(_) => "jacobi",
            Command::LocalFactor(_) => "local-factor",
        }
    }

    /// Everything that determines the report, in a fixed textual form.
    /// Worker count and output path are deliberately absent.
    pub fn cache_key(&self) -> String {
        let format = self.common().format.name();
        match self {
            Command::Scan(a) => format!(
                "m_min={} m_max={} collapse={} format={format}",
                a.range.m_min, a.range.m_max, a.use_collapse_opt
            ),
            Command::Classify(a) | Command::Minimal(a) => {
                format!("m_min={} m_max={} format={format}", a.m_min, a.m_max)
            }
            Command::Jacobi(a) => format!(
                "m={} a={} b={} p_min={} p_max={} format={format}",
                a.m, a.a, a.b, a.p_min, a.p_max
            ),
            Command::LocalFactor(a) => format!(
                "m={} chars={} p_min={} p_max={} format={format}",
                a.m, a.chars, a.p_min, a.p_max
            ),
        }
    }
}
