//! `lsi-forge` command-line front end.
//!
//! Exit status: 0 when every verdict passes, 1 when one fails (the report
//! carries the witness), 2 on configuration or input errors.

mod commands;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use lsi_forge::Tolerances;

#[derive(Debug, Parser)]
#[command(
    name = "lsi-forge",
    version,
    about = "Log-Sobolev and hypercontractivity checks on cyclic groups"
)]
pub struct Cli {
    /// Seed for every random draw.
    #[arg(long, global = true, default_value_t = 7)]
    pub seed: u64,
    /// Worker threads (defaults to the rayon default).
    #[arg(long, global = true, env = "LSI_FORGE_THREADS")]
    pub threads: Option<usize>,
    /// Tolerance override `name=value`, e.g. `slack=1e-10`. Repeatable.
    #[arg(long = "tol", global = true, value_name = "NAME=VALUE")]
    pub tol: Vec<String>,
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum CaseArg {
    Z6,
    Z4,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Minimum of 2<l, G l> - H_n[l] over the positive sphere by sampling and descent.
    VerifyLsi {
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        weight: String,
        #[arg(long, value_parser = parse_count, default_value = "1e5")]
        samples: usize,
        #[arg(long, value_parser = parse_count, default_value = "1000")]
        starts: usize,
    },
    /// Multi-start search for interior solutions of the Lagrange system.
    KktSearch {
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        weight: String,
        #[arg(long, value_parser = parse_count, default_value = "1e4")]
        starts: usize,
    },
    /// Derivative cascade behind the positivity of h.
    Cascade {
        #[arg(long = "case", value_enum, default_value_t = CaseArg::Z6)]
        case: CaseArg,
        #[arg(long, value_parser = parse_count, default_value = "1e5")]
        samples: usize,
        #[arg(long, default_value_t = 50.0)]
        x_max: f64,
    },
    /// Clause check and quadratic scan for a pair `gamma_n:gamma_2n`.
    PairCheck {
        #[arg(long)]
        pair: String,
        #[arg(long, value_parser = parse_count, default_value = "201")]
        resolution: usize,
    },
    /// Monte-Carlo check of the inequality chain lifting an n-LSI to 2n.
    Induction {
        #[arg(long)]
        pair: String,
        #[arg(long, value_parser = parse_count, default_value = "1e5")]
        samples: usize,
        #[arg(long, value_parser = parse_count, default_value = "201")]
        resolution: usize,
    },
    /// Optimal time t with |P_t f|_q <= |f|_p, by bisection.
    HyperTime {
        #[arg(long)]
        n: usize,
        /// Defaults to the word length on Z_n.
        #[arg(long)]
        weight: Option<String>,
        #[arg(long)]
        p: f64,
        #[arg(long)]
        q: f64,
        #[arg(long, value_parser = parse_count, default_value = "64")]
        starts: usize,
        /// Search over signed f as well.
        #[arg(long)]
        signed: bool,
    },
    /// Split of H_2n for an interleaved vector into inner and outer parts.
    EntropySplit {
        /// Comma-separated nonnegative entries; random when omitted.
        #[arg(long, requires = "b")]
        a: Option<String>,
        #[arg(long, requires = "a")]
        b: Option<String>,
        /// Half length for random vectors.
        #[arg(long, default_value_t = 6)]
        n: usize,
    },
}

/// Accepts `1000`, `1e6` or `2.5e3`, as long as the value is a whole number.
pub fn parse_count(s: &str) -> Result<usize, String> {
    if let Ok(v) = s.parse::<usize>() {
        return Ok(v);
    }
    let v: f64 = s.parse().map_err(|_| format!("`{s}` is not a count"))?;
    if v >= 0.0 && v.fract() == 0.0 && v <= 1e15 {
        Ok(v as usize)
    } else {
        Err(format!("`{s}` is not a nonnegative whole number"))
    }
}

/// Applies `name=value` overrides to the default tolerances.
pub fn tolerances(overrides: &[String]) -> Result<Tolerances, String> {
    let mut value = serde_json::to_value(Tolerances::default()).map_err(|e| e.to_string())?;
    let map = value
        .as_object_mut()
        .expect("struct serializes to an object");
    for item in overrides {
        let (name, raw) = item
            .split_once('=')
            .ok_or_else(|| format!("tolerance override `{item}` is not NAME=VALUE"))?;
        let v: f64 = raw
            .parse()
            .map_err(|_| format!("tolerance `{name}` needs a number, got `{raw}`"))?;
        if !(v > 0.0 && v.is_finite()) {
            return Err(format!("tolerance `{name}` must be positive and finite"));
        }
        let slot = map
            .get_mut(name)
            .ok_or_else(|| format!("unknown tolerance `{name}`"))?;
        *slot = serde_json::json!(v);
    }
    serde_json::from_value(value).map_err(|e| e.to_string())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::run(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("lsi-forge: {e}");
            ExitCode::from(2)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts() {
        assert_eq!(parse_count("1e6"), Ok(1_000_000));
        assert_eq!(parse_count("2.5e3"), Ok(2500));
        assert_eq!(parse_count("42"), Ok(42));
        assert!(parse_count("1.5").is_err());
        assert!(parse_count("-3").is_err());
        assert!(parse_count("lots").is_err());
    }

    #[test]
    fn tolerance_overrides() {
        let t = tolerances(&["slack=1e-10".into(), "bisection_width=0.01".into()]).unwrap();
        assert_eq!(t.slack, 1e-10);
        assert_eq!(t.bisection_width, 0.01);
        assert!(tolerances(&["nope=1".into()]).is_err());
        assert!(tolerances(&["slack".into()]).is_err());
        assert!(tolerances(&["slack=-1".into()]).is_err());
    }
}
