use std::path::PathBuf;

use clap::{Parser, ValueEnum};
use thiserror::Error;
use upq_core::{GeometryContext, HiggsRankPair, HitchinPairType, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Command {
    /// Toledo invariant of a type
    Toledo,
    /// Milnor–Wood check at one α
    Mw,
    /// Critical values of α in an interval
    Walls,
    /// Walls plus the chambers between them
    Chambers,
    /// Irreducibility certificate for K-twisted pairs
    Certify,
    /// Randomized invariant suites
    Selftest,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    #[default]
    Json,
    Csv,
}

#[derive(Debug, Parser)]
#[command(name = "upq", version, about = "Exact stability computations for U(p,q)-Hitchin pairs")]
struct Cli {
    #[arg(value_enum)]
    command: Command,

    /// Ranks and degrees of V and W
    #[arg(long = "type", value_name = "P,Q,A,B", allow_hyphen_values = true)]
    type_spec: Option<String>,

    /// Stability parameter, as an integer or num/den
    #[arg(long, allow_hyphen_values = true)]
    alpha: Option<String>,

    /// Closed α-interval
    #[arg(long, value_name = "LO,HI", allow_hyphen_values = true)]
    interval: Option<String>,

    #[arg(long)]
    genus: Option<u32>,

    /// Degree of the twisting line bundle
    #[arg(long = "degL", value_name = "N", allow_hyphen_values = true)]
    deg_l: Option<i64>,

    /// Twist by the canonical bundle (deg L = 2g - 2); needs --genus
    #[arg(long)]
    canonical: bool,

    /// Higgs field ranks for the rank-dependent bounds of `mw`
    #[arg(long, value_name = "RK_BETA,RK_GAMMA")]
    ranks: Option<String>,

    /// Drop wall witnesses whose sub-types violate their own Milnor–Wood bounds
    #[arg(long = "mw-filter")]
    mw_filter: bool,

    #[arg(long, value_enum, env = "UPQ_FORMAT", default_value = "json")]
    format: OutputFormat,

    /// Write the report here instead of stdout
    #[arg(long, short)]
    output: Option<PathBuf>,

    /// Worker threads (defaults to the number of CPUs)
    #[arg(long)]
    threads: Option<usize>,

    /// Seed for `selftest`
    #[arg(long, default_value_t = 0)]
    seed: u64,

    /// Cases per suite for `selftest`
    #[arg(long, default_value_t = 1000)]
    trials: u64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RunConfig {
    pub command: Command,
    pub type_spec: Option<HitchinPairType>,
    pub ctx: Option<GeometryContext>,
    pub alpha: Option<Rational>,
    pub interval: Option<(Rational, Rational)>,
    pub ranks: Option<HiggsRankPair>,
    pub mw_filter: bool,
    pub output_format: OutputFormat,
    pub output_path: Option<PathBuf>,
    pub threads: Option<usize>,
    pub seed: u64,
    pub trials: u64,
}

#[derive(Debug, Error)]
pub enum UsageError {
    #[error(transparent)]
    Clap(#[from] clap::Error),
    #[error("{0}")]
    Invalid(String),
}

fn invalid(msg: impl Into<String>) -> UsageError {
    UsageError::Invalid(msg.into())
}

/// Parses the arguments after the program name.
pub fn parse_args<I, S>(argv: I) -> Result<RunConfig, UsageError>
where
    I: IntoIterator<Item = S>,
    S: Into<String>,
{
    let args = std::iter::once("upq".to_string()).chain(argv.into_iter().map(Into::into));
    let cli = Cli::try_parse_from(args)?;
    validate(cli)
}

fn validate(cli: Cli) -> Result<RunConfig, UsageError> {
    let type_spec = cli.type_spec.as_deref().map(parse_type).transpose()?;
    let alpha = cli.alpha.as_deref().map(parse_rational).transpose()?;
    let interval = cli.interval.as_deref().map(parse_interval).transpose()?;
    let ranks = cli.ranks.as_deref().map(parse_ranks).transpose()?;
    let ctx = context(&cli)?;

    if cli.threads == Some(0) {
        return Err(invalid("--threads must be at least 1"));
    }
    if cli.command != Command::Selftest && type_spec.is_none() {
        return Err(invalid("--type P,Q,A,B is required"));
    }
    match cli.command {
        Command::Toledo | Command::Selftest => {}
        Command::Mw => {
            if alpha.is_none() {
                return Err(invalid("mw needs --alpha"));
            }
            if ctx.is_none() {
                return Err(invalid("mw needs --degL N or --canonical --genus G"));
            }
        }
        Command::Walls | Command::Chambers => {
            if interval.is_none() {
                return Err(invalid("--interval LO,HI is required"));
            }
            if cli.mw_filter && ctx.is_none() {
                return Err(invalid("--mw-filter needs --degL N or --canonical --genus G"));
            }
        }
        Command::Certify => {
            let Some(g) = cli.genus else {
                return Err(invalid("certify needs --genus"));
            };
            if alpha.is_none() {
                return Err(invalid("certify needs --alpha"));
            }
            if let Some(d) = cli.deg_l {
                if d != 2 * i64::from(g) - 2 {
                    return Err(invalid("certify uses the canonical twist; --degL must equal 2g - 2"));
                }
            }
        }
    }
    if cli.command == Command::Selftest && cli.trials == 0 {
        return Err(invalid("--trials must be at least 1"));
    }
    if ranks.is_some() && cli.command != Command::Mw {
        return Err(invalid("--ranks only applies to mw"));
    }
    let ctx = match (cli.command, ctx) {
        (Command::Certify, None) => cli.genus.map(GeometryContext::canonical),
        (_, ctx) => ctx,
    };

    Ok(RunConfig {
        command: cli.command,
        type_spec,
        ctx,
        alpha,
        interval,
        ranks,
        mw_filter: cli.mw_filter,
        output_format: cli.format,
        output_path: cli.output,
        threads: cli.threads,
        seed: cli.seed,
        trials: cli.trials,
    })
}

fn context(cli: &Cli) -> Result<Option<GeometryContext>, UsageError> {
    if cli.canonical {
        let Some(g) = cli.genus else {
            return Err(invalid("--canonical needs --genus"));
        };
        let ctx = GeometryContext::canonical(g);
        if let Some(d) = cli.deg_l {
            if d != ctx.twist_degree() {
                return Err(invalid(format!(
                    "--degL {d} contradicts --canonical with genus {g} (2g - 2 = {})",
                    ctx.twist_degree()
                )));
            }
        }
        return Ok(Some(ctx));
    }
    Ok(cli.deg_l.map(|d| GeometryContext::twisted(cli.genus, d)))
}

fn parse_rational(s: &str) -> Result<Rational, UsageError> {
    s.parse().map_err(|e: upq_core::Error| invalid(e.to_string()))
}

fn split(s: &str, n: usize, what: &str) -> Result<Vec<String>, UsageError> {
    let parts: Vec<String> = s.split(',').map(|x| x.trim().to_string()).collect();
    if parts.len() != n {
        return Err(invalid(format!("{what} needs {n} comma-separated values, got {s:?}")));
    }
    Ok(parts)
}

fn parse_type(s: &str) -> Result<HitchinPairType, UsageError> {
    let parts = split(s, 4, "--type")?;
    let rank = |x: &str| x.parse::<u32>().map_err(|_| invalid(format!("bad rank {x:?} in --type")));
    let degree = |x: &str| x.parse::<i64>().map_err(|_| invalid(format!("bad degree {x:?} in --type")));
    HitchinPairType::new(rank(&parts[0])?, rank(&parts[1])?, degree(&parts[2])?, degree(&parts[3])?)
        .map_err(|e| invalid(e.to_string()))
}

fn parse_interval(s: &str) -> Result<(Rational, Rational), UsageError> {
    let parts = split(s, 2, "--interval")?;
    Ok((parse_rational(&parts[0])?, parse_rational(&parts[1])?))
}

fn parse_ranks(s: &str) -> Result<HiggsRankPair, UsageError> {
    let parts = split(s, 2, "--ranks")?;
    let rank = |x: &str| x.parse::<u32>().map_err(|_| invalid(format!("bad rank {x:?} in --ranks")));
    Ok(HiggsRankPair::new(rank(&parts[0])?, rank(&parts[1])?))
}
