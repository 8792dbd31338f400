mod render;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;

use creepers::{
    discriminant, expand, family, ff_expand, parse_fixture, registry, scan_periods, verify, Error, Exec, FixtureKind,
    FixtureTable, RatPoly, SeedMode, VerifyStatus, DEFAULT_MAX_STEPS,
};

const POLY_MAX_STEPS: usize = 100;

#[derive(Parser)]
#[command(name = "creepers", version, about = "Exact continued fractions of quadratic orders and function fields")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    Order,
    Raw,
}

impl From<Mode> for SeedMode {
    fn from(m: Mode) -> Self {
        match m {
            Mode::Order => SeedMode::Order,
            Mode::Raw => SeedMode::Raw,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Expand sqrt(D), or the order of discriminant D.
    Expand {
        #[arg(long, allow_hyphen_values = true)]
        disc: BigInt,
        #[arg(long, value_enum, default_value = "order")]
        mode: Mode,
        #[arg(long, default_value_t = DEFAULT_MAX_STEPS)]
        max_steps: usize,
        /// Primes for the factor column, comma separated.
        #[arg(long, value_delimiter = ',')]
        factors: Option<Vec<u64>>,
    },
    /// Built-in discriminant families.
    Family {
        #[command(subcommand)]
        command: FamilyCommand,
    },
    /// Expand sqrt(D) for a polynomial D over the rationals.
    FfExpand {
        #[arg(long, allow_hyphen_values = true)]
        poly: String,
        #[arg(long, default_value_t = POLY_MAX_STEPS)]
        max_steps: usize,
    },
    /// Compare a fixture table against a fresh expansion.
    Verify(VerifyArgs),
    /// Period lengths of a family over a range of n.
    Scan {
        #[arg(long)]
        name: String,
        #[arg(long)]
        from: u32,
        #[arg(long)]
        to: u32,
        #[arg(long, default_value_t = DEFAULT_MAX_STEPS)]
        max_steps: usize,
        /// Evaluate n values one at a time.
        #[arg(long)]
        sequential: bool,
    },
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long)]
    fixture: PathBuf,
    #[arg(long, requires = "n", conflicts_with_all = ["disc", "poly"])]
    name: Option<String>,
    #[arg(long)]
    n: Option<u32>,
    #[arg(long, default_value_t = 1)]
    div: u64,
    #[arg(long, allow_hyphen_values = true, conflicts_with = "poly")]
    disc: Option<BigInt>,
    #[arg(long, value_enum, default_value = "order")]
    mode: Mode,
    #[arg(long, allow_hyphen_values = true)]
    poly: Option<String>,
    #[arg(long)]
    max_steps: Option<usize>,
}

#[derive(Subcommand)]
enum FamilyCommand {
    List,
    Gen {
        #[arg(long)]
        name: String,
        #[arg(long)]
        n: u32,
        #[arg(long, default_value_t = 1)]
        div: u64,
    },
    Expand {
        #[arg(long)]
        name: String,
        #[arg(long)]
        n: u32,
        #[arg(long, default_value_t = 1)]
        div: u64,
        #[arg(long, default_value_t = DEFAULT_MAX_STEPS)]
        max_steps: usize,
    },
}

enum Failure {
    Usage(String),
    Domain(Error),
    Mismatch,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::UnknownFamily(_) | Error::Parse { .. } | Error::KindMismatch { .. } => Failure::Usage(e.to_string()),
            e => Failure::Domain(e),
        }
    }
}

fn family_id(name: &str, n: u32, div: u64) -> String {
    if div == 1 {
        format!("{name}.n{n}")
    } else {
        format!("{name}-div{div}.n{n}")
    }
}

/// Recovers family, n and divisor from ids written by `family expand`.
fn parse_family_id(id: &str) -> Option<(String, u32, u64)> {
    let (stem, n) = id.rsplit_once(".n")?;
    let n = n.parse().ok()?;
    match stem.rsplit_once("-div") {
        Some((name, div)) if family(name).is_ok() => Some((name.to_string(), n, div.parse().ok()?)),
        _ => family(stem).is_ok().then(|| (stem.to_string(), n, 1)),
    }
}

fn parse_poly(s: &str) -> Result<RatPoly, Failure> {
    s.parse().map_err(|e| Failure::Usage(format!("bad polynomial `{s}`: {e}")))
}

fn run_verify(table: &FixtureTable, args: VerifyArgs) -> Result<String, Failure> {
    let prefix_steps = table.prefix_only.then(|| table.last_h().map_or(1, |h| h + 1));
    let VerifyArgs { name, n, div, disc, mode, poly, max_steps, .. } = args;
    let steps = max_steps.or(prefix_steps);
    let report = if let Some(p) = poly {
        let e = ff_expand(&parse_poly(&p)?, steps.unwrap_or(POLY_MAX_STEPS))?;
        verify(&e, table, None)?
    } else if let Some(d) = disc {
        let e = expand(&d, mode.into(), steps.unwrap_or(DEFAULT_MAX_STEPS))?;
        verify(&e, table, None)?
    } else {
        let (name, n, div) = match (name, n) {
            (Some(name), Some(n)) => (name, n, div),
            _ => parse_family_id(&table.id).ok_or_else(|| {
                Failure::Usage(format!("cannot infer a source for `{}`; give --name/--n, --disc or --poly", table.id))
            })?,
        };
        if table.kind == FixtureKind::Polynomial {
            return Err(Failure::Usage("families are integer; use --poly for polynomial fixtures".into()));
        }
        let f = family(&name)?;
        let e = expand(&discriminant(&f, n, div)?, SeedMode::Order, steps.unwrap_or(DEFAULT_MAX_STEPS))?;
        verify(&e, table, Some(&f.primes))?
    };
    let text = format!("{report}\n");
    if report.status == VerifyStatus::Mismatch {
        print!("{text}");
        return Err(Failure::Mismatch);
    }
    Ok(text)
}

fn execute(cli: Cli) -> Result<String, Failure> {
    match cli.command {
        Command::Expand { disc, mode, max_steps, factors } => {
            let e = expand(&disc, mode.into(), max_steps)?;
            Ok(render::expansion(&format!("disc{disc}"), &e, factors.as_deref()))
        }
        Command::Family { command: FamilyCommand::List } => Ok(render::registry(&registry())),
        Command::Family { command: FamilyCommand::Gen { name, n, div } } => {
            Ok(format!("{}\n", discriminant(&family(&name)?, n, div)?))
        }
        Command::Family { command: FamilyCommand::Expand { name, n, div, max_steps } } => {
            let f = family(&name)?;
            let e = expand(&discriminant(&f, n, div)?, SeedMode::Order, max_steps)?;
            Ok(render::expansion(&family_id(&name, n, div), &e, Some(&f.primes)))
        }
        Command::FfExpand { poly, max_steps } => {
            let e = ff_expand(&parse_poly(&poly)?, max_steps)?;
            Ok(render::poly_expansion("poly", &e))
        }
        Command::Verify(args) => {
            let text = std::fs::read_to_string(&args.fixture)
                .map_err(|e| Failure::Usage(format!("{}: {e}", args.fixture.display())))?;
            let table = parse_fixture(&text)?;
            run_verify(&table, args)
        }
        Command::Scan { name, from, to, max_steps, sequential } => {
            let f = family(&name)?;
            let exec = if sequential { Exec::Sequential } else { Exec::Parallel };
            let mut out = String::new();
            for row in scan_periods(&f, from, to, max_steps, exec) {
                match row.outcome {
                    Ok(o) => match o.period {
                        Some(l) => out.push_str(&format!("{}\t{l}\n", row.n)),
                        None => out.push_str(&format!("{}\ttruncated\n", row.n)),
                    },
                    Err(e) => eprintln!("n={}: {e}", row.n),
                }
            }
            Ok(out)
        }
    }
}

fn run<I, T>(argv: I) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    match execute(cli) {
        Ok(text) => {
            let mut stdout = std::io::stdout().lock();
            if stdout.write_all(text.as_bytes()).and_then(|_| stdout.flush()).is_err() {
                return 1;
            }
            0
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            2
        }
        Err(Failure::Domain(e)) => {
            eprintln!("error: {e}");
            4
        }
        Err(Failure::Mismatch) => {
            eprintln!("verification failed");
            3
        }
    }
}

fn main() -> ExitCode {
    ExitCode::from(run(std::env::args_os()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn family_ids_round_trip() {
        assert_eq!(parse_family_id(&family_id("easy-kreeper-67", 6, 1)), Some(("easy-kreeper-67".into(), 6, 1)));
        assert_eq!(parse_family_id(&family_id("sq-1319011", 8, 15)), Some(("sq-1319011".into(), 8, 15)));
        assert_eq!(parse_family_id("sleeper-elkies"), None);
        assert_eq!(parse_family_id("nobody.n3"), None);
    }

    #[test]
    fn usage_errors_exit_2() {
        assert_eq!(run(["creepers", "expand"]), 2);
        assert_eq!(run(["creepers", "bogus"]), 2);
        assert_eq!(run(["creepers", "family", "gen", "--name", "nobody", "--n", "3"]), 2);
    }

    #[test]
    fn domain_errors_exit_4() {
        assert_eq!(run(["creepers", "expand", "--disc", "16", "--mode", "raw"]), 4);
        assert_eq!(run(["creepers", "expand", "--disc", "7", "--mode", "order"]), 4);
        assert_eq!(run(["creepers", "ff-expand", "--poly", "X^2 + 2*X + 1"]), 4);
    }
}
