use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use revpair::automaton::RspAutomaton;
use revpair::language::{all_pairs, b_values, to_regex};
use revpair::{export, numerals, participation};

#[derive(Debug, Parser)]
#[command(name = "revpair", version, about = "Reversed sum-product pairs in arbitrary bases")]
struct Cli {
    /// Worker threads for the scanning commands.
    #[arg(long, global = true, env = "RSP_JOBS")]
    jobs: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Dot,
}

#[derive(Debug, Args)]
struct Multiplier {
    /// Base, in decimal.
    #[arg(long, value_parser = clap::value_parser!(u64).range(2..))]
    base: u64,
    /// Multiplier, as a digit of the base or in decimal.
    #[arg(long)]
    a: String,
    /// Read the multiplier as decimal only.
    #[arg(long)]
    decimal: bool,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// List pairs, or the values of b for one multiplier.
    Pairs {
        #[arg(long, value_parser = clap::value_parser!(u64).range(2..))]
        base: u64,
        #[arg(long)]
        a: Option<String>,
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        max_digits: u64,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
        #[arg(long)]
        decimal: bool,
    },
    /// Build the automaton for a base and multiplier.
    Automaton {
        #[command(flatten)]
        m: Multiplier,
        #[arg(long)]
        trim: bool,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
        /// Write to this file instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Regular expression for the accepted language.
    Regex {
        #[command(flatten)]
        m: Multiplier,
    },
    /// Residue classes of bases in which a multiplier participates.
    Participation {
        #[arg(long, value_parser = clap::value_parser!(u64).range(2..))]
        a: u64,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Density table for a = 2..=a-max.
    Omega {
        #[arg(long, value_parser = clap::value_parser!(u64).range(2..))]
        a_max: u64,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Participation ratio r(β) for 2 ≤ β ≤ max-base.
    Ratio {
        #[arg(long, value_parser = clap::value_parser!(u64).range(2..))]
        max_base: u64,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Bases up to max-base without interesting pairs.
    Conjecture {
        #[arg(long, value_parser = clap::value_parser!(u64).range(2..))]
        max_base: u64,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
}

#[derive(Debug, thiserror::Error)]
enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Domain(#[from] revpair::Error),
    #[error("cannot write {path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Io { .. } => 1,
            _ => 2,
        }
    }
}

/// A digit of the base wins unless `decimal` is set; a string of two or more
/// digits in base β is never below β, so the readings cannot collide.
fn parse_multiplier(text: &str, base: u64, decimal: bool) -> Result<u64, CliError> {
    if !decimal {
        if let Ok(v) = numerals::parse_value(text, base) {
            if v < base as u128 {
                return Ok(v as u64);
            }
        }
    }
    let a: u64 = text
        .trim()
        .parse()
        .map_err(|_| CliError::Usage(format!("invalid multiplier '{text}' for base {base}")))?;
    if a == 0 || a >= base {
        return Err(revpair::Error::MultiplierOutOfRange { a, base }.into());
    }
    Ok(a)
}

fn reject_dot(format: Format) -> Result<(), CliError> {
    if format == Format::Dot {
        return Err(CliError::Usage("dot output is only available for the automaton command".into()));
    }
    Ok(())
}

fn pretty(value: &serde_json::Value) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable");
    s.push('\n');
    s
}

fn cmd_pairs(base: u64, a: Option<&str>, max_digits: usize, format: Format, decimal: bool) -> Result<String, CliError> {
    reject_dot(format)?;
    let mut out = String::new();
    match a {
        Some(text) => {
            let a = parse_multiplier(text, base, decimal)?;
            let values = b_values(&RspAutomaton::build(a, base)?, max_digits);
            match format {
                Format::Json => out = pretty(&json!({ "base": base, "a": a, "b": values })),
                _ => values.iter().for_each(|b| out.push_str(&format!("{b}\n"))),
            }
        }
        None => {
            let pairs = all_pairs(base, max_digits)?;
            match format {
                Format::Json => {
                    let items: Vec<_> = pairs
                        .iter()
                        .map(|p| json!({ "a": p.a, "b": p.b, "render": p.render() }))
                        .collect();
                    out = pretty(&json!({ "base": base, "pairs": items }));
                }
                _ => pairs.iter().for_each(|p| out.push_str(&format!("{}\n", p.render()))),
            }
        }
    }
    Ok(out)
}

fn cmd_automaton(m: &Multiplier, trim: bool, format: Format) -> Result<String, CliError> {
    let a = parse_multiplier(&m.a, m.base, m.decimal)?;
    let mut dfa = RspAutomaton::build(a, m.base)?;
    if trim {
        dfa = dfa.trim();
    }
    Ok(match format {
        Format::Text => format!("{dfa}\n"),
        Format::Json => export::to_json(&dfa) + "\n",
        Format::Dot => export::to_dot(&dfa),
    })
}

fn cmd_regex(m: &Multiplier) -> Result<String, CliError> {
    let a = parse_multiplier(&m.a, m.base, m.decimal)?;
    let dfa = RspAutomaton::build(a, m.base)?;
    Ok(format!("{}\n", to_regex(&dfa).render(m.base)))
}

fn cmd_participation(a: u64, format: Format) -> Result<String, CliError> {
    reject_dot(format)?;
    let profile = participation::participation_residues(a)?;
    let omega = profile.omega();
    if format == Format::Json {
        return Ok(pretty(&json!({
            "a": a,
            "modulus": profile.modulus,
            "residues": profile.residues,
            "min_base": profile.min_base,
            "threshold": profile.threshold,
            "omega": omega.to_string(),
            "omega_reduced": omega.reduced().to_string(),
        })));
    }
    let mut out = String::new();
    let _ = writeln!(out, "a = {a}, modulus = {}, threshold = {}", profile.modulus, profile.threshold);
    let _ = writeln!(out, "Omega = {omega} = {}", omega.reduced());
    let _ = writeln!(out, "residue  first base");
    for (v, first) in &profile.min_base {
        let _ = writeln!(out, "{v:>7}  {first}");
    }
    Ok(out)
}

fn cmd_omega(a_max: u64, format: Format) -> Result<String, CliError> {
    reject_dot(format)?;
    let rows = (2..=a_max)
        .map(|a| participation::omega(a).map(|w| (a, w)))
        .collect::<revpair::Result<Vec<_>>>()?;
    if format == Format::Json {
        let items: Vec<_> = rows
            .iter()
            .map(|(a, w)| json!({ "a": a, "omega": w.to_string(), "reduced": w.reduced().to_string(), "value": w.to_f64() }))
            .collect();
        return Ok(pretty(&json!(items)));
    }
    let mut out = String::from(" a  Omega(a)  reduced\n");
    for (a, w) in rows {
        let _ = writeln!(out, "{a:>2}  {:<8}  {}", w.to_string(), w.reduced());
    }
    Ok(out)
}

fn cmd_ratio(max_base: u64, format: Format) -> Result<String, CliError> {
    reject_dot(format)?;
    let report = participation::ratio_report(max_base);
    if format == Format::Json {
        let items: Vec<_> = report
            .ratios
            .iter()
            .map(|(b, r)| json!({ "base": b, "ratio": r.to_string(), "value": r.to_f64() }))
            .collect();
        return Ok(pretty(&json!({ "ratios": items, "mean": report.mean, "variance": report.variance })));
    }
    let mut out = String::new();
    for (b, r) in &report.ratios {
        let _ = writeln!(out, "{b} {r} {:.4}", r.to_f64());
    }
    let _ = writeln!(out, "mean = {:.4}", report.mean);
    let _ = writeln!(out, "variance = {:.4}", report.variance);
    Ok(out)
}

fn cmd_conjecture(max_base: u64, format: Format) -> Result<String, CliError> {
    reject_dot(format)?;
    let bases = participation::conjecture_scan(max_base);
    if format == Format::Json {
        return Ok(pretty(&json!({ "max_base": max_base, "exceptions": bases })));
    }
    let words: Vec<String> = bases.iter().map(u64::to_string).collect();
    Ok(words.join(" ") + "\n")
}

fn run(cli: &Cli) -> Result<(), CliError> {
    let mut out_path = None;
    let text = match &cli.command {
        Command::Pairs { base, a, max_digits, format, decimal } => {
            cmd_pairs(*base, a.as_deref(), *max_digits as usize, *format, *decimal)?
        }
        Command::Automaton { m, trim, format, out } => {
            out_path = out.clone();
            cmd_automaton(m, *trim, *format)?
        }
        Command::Regex { m } => cmd_regex(m)?,
        Command::Participation { a, format } => cmd_participation(*a, *format)?,
        Command::Omega { a_max, format } => cmd_omega(*a_max, *format)?,
        Command::Ratio { max_base, format } => cmd_ratio(*max_base, *format)?,
        Command::Conjecture { max_base, format } => cmd_conjecture(*max_base, *format)?,
    };
    match out_path {
        Some(path) => std::fs::write(&path, text).map_err(|source| CliError::Io { path, source }),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mut pool = rayon::ThreadPoolBuilder::new();
    if let Some(jobs) = cli.jobs {
        pool = pool.num_threads(jobs);
    }
    let pool = match pool.build() {
        Ok(pool) => pool,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    match pool.install(|| run(&cli)) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
