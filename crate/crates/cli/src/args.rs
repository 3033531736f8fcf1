//! Command-line grammar and the resolution step that folds in config-file
//! defaults, validates cross-flag preconditions, and applies the sweep cap.

use std::path::PathBuf;

use clap::{ArgGroup, Args, Parser, Subcommand, ValueEnum};
use fibkit_core::identities::{Mode, Ranges};

use crate::config::{self, FileConfig};
use crate::output::Format;
use crate::CliError;

const LONG_ABOUT: &str = "\
Exact arithmetic for the two-parameter Fibonacci and Lucas polynomial \
families: closed forms, binomial analogues, identity verification, 2-adic \
and d-adic valuations, and certified series tails. All values are exact; \
fractions serialize as p/q strings and never as floats.

The FIBKIT_MAX_N environment variable caps sweep sizes: built-in defaults \
shrink to the cap, while explicitly requested sizes beyond it are rejected. \
A JSON config file passed with --config supplies defaults for format, \
latex, jobs, s, t, q, and max-n.";

#[derive(Parser, Debug)]
#[command(name = "fibkit", version, about = "Exact Fibonacci-polynomial toolkit", long_about = LONG_ABOUT)]
pub struct Cli {
    /// Output format; `table` defaults to csv, everything else to text
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,

    /// Render polynomials as LaTeX instead of plain text
    #[arg(long, global = true)]
    pub latex: bool,

    /// JSON file with defaults for omitted flags
    #[arg(long, global = true, value_name = "PATH")]
    pub config: Option<PathBuf>,

    /// Worker threads for parameter sweeps; output is identical either way
    #[arg(long, global = true, value_name = "N")]
    pub jobs: Option<usize>,

    #[command(subcommand)]
    pub cmd: Cmd,
}

#[derive(Subcommand, Debug)]
pub enum Cmd {
    /// Print generalized Fibonacci or Lucas polynomials
    Seq(SeqArgs),
    /// Fibonomial, Lucanomial, q-deformed, and Gaussian binomials
    Binom(BinomArgs),
    /// Catalan analogues C(n) = {2n choose n}/{n+1}
    Catalan(CatalanArgs),
    /// 2-adic and d-adic valuations, carry counts, factorial valuations
    Valuation(ValuationArgs),
    /// Search or check (s*, d*) valuation-profile candidates at t = -1
    Conjecture(ConjectureArgs),
    /// Verify identity-registry rows over parameter sweeps
    Identity(IdentityArgs),
    /// Certified series tails: floors, closed sums, point enclosures
    Tails(TailsArgs),
    /// Reference tables computed at full precision
    Table(TableArgs),
    /// Run the whole acceptance suite, one report line per criterion
    VerifyAll(VerifyAllArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum SeqKindArg {
    /// {n}: {0} = 0, {1} = 1, {n} = s{n-1} + t{n-2}
    Fib,
    /// <n>: <0> = 2, <1> = s, same recursion
    Lucas,
    /// {n}(q): the q-weighted variant with t{n-2} scaled by q^(n-2)
    FibQ,
}

#[derive(Args, Debug)]
#[command(group = ArgGroup::new("index").required(true).args(["n", "upto"]))]
pub struct SeqArgs {
    /// Which family to print
    #[arg(long, value_enum, default_value_t = SeqKindArg::Fib)]
    pub kind: SeqKindArg,

    /// Single index; negative values need --t 1 or --t -1
    #[arg(long, allow_negative_numbers = true)]
    pub n: Option<i64>,

    /// Print every index from 0 through N
    #[arg(long, value_name = "N")]
    pub upto: Option<u32>,

    /// Specialize s to an integer
    #[arg(long, allow_negative_numbers = true)]
    pub s: Option<i64>,

    /// Specialize t to an integer
    #[arg(long, allow_negative_numbers = true)]
    pub t: Option<i64>,

    /// Specialize q to an integer (only meaningful for --kind fib-q)
    #[arg(long, allow_negative_numbers = true)]
    pub q: Option<i64>,
}

#[derive(Args, Debug)]
pub struct BinomArgs {
    /// Top index; negative values use the t = -1 specialization
    #[arg(long, allow_negative_numbers = true)]
    pub n: i64,

    /// Bottom index
    #[arg(long, allow_negative_numbers = true)]
    pub k: i64,

    /// Lucas analogue <n choose k> instead of {n choose k}
    #[arg(long)]
    pub lucas: bool,

    /// q-deformed Fibonacci analogue (not defined for --lucas)
    #[arg(long, conflicts_with = "lucas")]
    pub fib_q: bool,

    /// Plain Gaussian binomial [n choose k], a polynomial in q alone
    #[arg(long, conflicts_with_all = ["lucas", "fib_q"])]
    pub gaussian: bool,

    /// Specialize s to an integer
    #[arg(long, allow_negative_numbers = true)]
    pub s: Option<i64>,

    /// Specialize t to an integer
    #[arg(long, allow_negative_numbers = true)]
    pub t: Option<i64>,
}

#[derive(Args, Debug)]
#[command(group = ArgGroup::new("index").required(true).args(["n", "upto"]))]
pub struct CatalanArgs {
    /// Single index
    #[arg(long)]
    pub n: Option<u32>,

    /// Print every index from 0 through N
    #[arg(long, value_name = "N")]
    pub upto: Option<u32>,

    /// Specialize s to an integer
    #[arg(long, allow_negative_numbers = true)]
    pub s: Option<i64>,

    /// Specialize t to an integer
    #[arg(long, allow_negative_numbers = true)]
    pub t: Option<i64>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ValKind {
    /// nu of the sequence entry {n} at integer (s, t)
    Fib,
    /// nu of the running product {1}{2}...{n}
    Fibotorial,
    /// nu_2 of the Catalan analogue C(n)
    Catalan,
    /// nu_d({n}) at the special point (s, t) = (d, -1)
    Special,
    /// nu_d of a plain integer
    Int,
    /// Carries when adding m and n in base p
    Carries,
    /// nu_p(n!) by the digit formula
    Legendre,
}

#[derive(Args, Debug)]
pub struct ValuationArgs {
    /// What to take the valuation of
    #[arg(long, value_enum)]
    pub kind: ValKind,

    /// Sequence parameter s (fib, fibotorial, catalan)
    #[arg(long, allow_negative_numbers = true)]
    pub s: Option<i64>,

    /// Sequence parameter t (fib, fibotorial, catalan)
    #[arg(long, allow_negative_numbers = true)]
    pub t: Option<i64>,

    /// Index n
    #[arg(long)]
    pub n: Option<u64>,

    /// Sweep every index from 0 through N
    #[arg(long, value_name = "N", conflicts_with = "n")]
    pub upto: Option<u64>,

    /// Valuation base d (default 2; closed forms exist only for d = 2)
    #[arg(long)]
    pub d: Option<u64>,

    /// Base p for carries and legendre
    #[arg(long)]
    pub p: Option<u64>,

    /// First addend for carries
    #[arg(long)]
    pub m: Option<u64>,

    /// Integer input for --kind int, arbitrary precision
    #[arg(long, allow_hyphen_values = true, value_name = "INT")]
    pub x: Option<String>,
}

#[derive(Args, Debug)]
pub struct ConjectureArgs {
    /// Sequence parameter s >= 2 (t is fixed to -1)
    #[arg(long)]
    pub s: u64,

    /// Odd valuation base d >= 3
    #[arg(long)]
    pub d: u64,

    /// Profile length to scan (default 5000)
    #[arg(long, value_name = "N")]
    pub max_n: Option<u64>,

    /// Check this s* against the profile instead of searching
    #[arg(long, requires = "d_star")]
    pub s_star: Option<u64>,

    /// Check this d* against the profile instead of searching
    #[arg(long, requires = "s_star")]
    pub d_star: Option<u64>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    /// Exact polynomial identities in Z[s, t, q]
    Symbolic,
    /// Through the quadratic extension by the root difference
    QuadExt,
    /// At integer specialization points
    Specialized,
}

impl ModeArg {
    pub fn to_mode(self) -> Mode {
        match self {
            ModeArg::Symbolic => Mode::Symbolic,
            ModeArg::QuadExt => Mode::QuadExt,
            ModeArg::Specialized => Mode::Specialized,
        }
    }
}

#[derive(Args, Debug)]
pub struct IdentityArgs {
    /// Registry row to run; omitted means every row
    #[arg(long, conflicts_with = "list")]
    pub id: Option<String>,

    /// List registry ids and statements without running anything
    #[arg(long)]
    pub list: bool,

    /// Restrict verification to a single mode
    #[arg(long, value_enum)]
    pub mode: Option<ModeArg>,

    /// Sweep bounds as comma-separated assignments, e.g. n=8,m=6,k=6,r=3
    #[arg(long, value_name = "SPEC")]
    pub ranges: Option<String>,
}

#[derive(Args, Debug)]
pub struct TailsArgs {
    #[command(subcommand)]
    pub op: TailsOp,
}

#[derive(Subcommand, Debug)]
pub enum TailsOp {
    /// Floor of the reciprocal tail 1 / sum_{k>=n} 1/{rk}^power
    Floor {
        #[arg(long, allow_negative_numbers = true)]
        s: i64,
        #[arg(long, allow_negative_numbers = true)]
        t: i64,
        /// Index stride
        #[arg(long, default_value_t = 1)]
        r: u32,
        /// The tail starts at index rn
        #[arg(long)]
        n: u64,
        /// First or second power of the entries
        #[arg(long, default_value_t = 1)]
        power: u32,
    },
    /// sum_{n>=1} {n}/(s+t)^(n+1), closed value plus numeric enclosure
    Sum {
        #[arg(long)]
        s: i64,
        #[arg(long)]
        t: i64,
    },
    /// Evaluate sum_{n>=1} {n} z^n at a rational z inside convergence
    Eval {
        #[arg(long, allow_negative_numbers = true)]
        s: i64,
        #[arg(long, allow_negative_numbers = true)]
        t: i64,
        /// Rational point, e.g. 2/5 or -1/3
        #[arg(long, allow_hyphen_values = true)]
        z: String,
        /// Partial-sum length
        #[arg(long, default_value_t = 64)]
        terms: u64,
    },
}

#[derive(Args, Debug)]
pub struct TableArgs {
    /// The 16-cell (s*, d*) reference grid: s = 2..5 by d = 3, 5, 7, 9
    #[arg(long = "paper-3", required = true)]
    pub paper_3: bool,

    /// Profile length per cell (default 5000)
    #[arg(long, value_name = "N")]
    pub max_n: Option<u64>,
}

#[derive(Args, Debug)]
pub struct VerifyAllArgs {
    /// Run a single criterion, 1 through 12
    #[arg(long, value_name = "N")]
    pub criterion: Option<u32>,
}

/// Everything a command handler needs, after defaults and validation.
#[derive(Debug)]
pub struct Resolved {
    pub format: Format,
    pub latex: bool,
    pub cap: Option<u64>,
    pub jobs: Option<usize>,
    pub cmd: Cmd,
}

fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

pub fn parse_ranges(spec: &str) -> Result<Ranges, CliError> {
    let mut ranges = Ranges::default();
    for part in spec.split(',') {
        let part = part.trim();
        if part.is_empty() {
            continue;
        }
        let (key, value) = part
            .split_once('=')
            .ok_or_else(|| usage(format!("range `{part}` is not of the form key=value")))?;
        let value: u32 = value
            .trim()
            .parse()
            .map_err(|_| usage(format!("range value in `{part}` is not a number")))?;
        if value == 0 {
            return Err(usage(format!("range bound in `{part}` must be at least 1")));
        }
        match key.trim() {
            "n" => ranges.n = value,
            "m" => ranges.m = value,
            "k" => ranges.k = value,
            "r" => ranges.r = value,
            other => return Err(usage(format!("unknown range key `{other}` (use n, m, k, r)"))),
        }
    }
    Ok(ranges)
}

/// Fold config-file defaults into the parsed command line, then validate
/// the combinations clap cannot express.
pub fn resolve(cli: Cli, file: &FileConfig, cap: Option<u64>) -> Result<Resolved, CliError> {
    let mut cmd = cli.cmd;
    let default_format = match cmd {
        Cmd::Table(_) => Format::Csv,
        _ => Format::Text,
    };
    let format = cli.format.or(file.format).unwrap_or(default_format);
    let latex = cli.latex || file.latex.unwrap_or(false);
    let jobs = cli.jobs.or(file.jobs);

    match &mut cmd {
        Cmd::Seq(a) => {
            a.s = a.s.or(file.s);
            a.t = a.t.or(file.t);
            a.q = a.q.or(file.q);
            if a.kind != SeqKindArg::FibQ && a.q.is_some() {
                return Err(usage("--q only applies to --kind fib-q"));
            }
            if a.kind == SeqKindArg::FibQ && (a.s.is_some() || a.t.is_some()) {
                return Err(usage(
                    "--kind fib-q keeps s and t symbolic; drop --s and --t",
                ));
            }
            if let Some(n) = a.n {
                if n < 0 {
                    if a.kind != SeqKindArg::Fib {
                        return Err(usage("negative indices are defined for --kind fib only"));
                    }
                    if !matches!(a.t, Some(1) | Some(-1)) {
                        return Err(usage(
                            "a negative index stays polynomial only at t = 1 or t = -1; \
                             pass --t -1 or --t 1",
                        ));
                    }
                }
            }
            if let Some(upto) = a.upto {
                config::check_explicit("--upto", upto as u64, cap)?;
            }
        }
        Cmd::Binom(a) => {
            a.s = a.s.or(file.s);
            a.t = a.t.or(file.t);
            if a.gaussian && (a.s.is_some() || a.t.is_some()) {
                return Err(usage("--gaussian is a pure q polynomial; drop --s and --t"));
            }
            if a.n < 0 {
                if a.lucas || a.fib_q || a.gaussian {
                    return Err(usage(
                        "negative top indices are defined for the plain Fibonacci analogue only",
                    ));
                }
                if !matches!(a.t, None | Some(-1)) {
                    return Err(usage(
                        "a negative top index fixes t = -1; drop --t or pass --t -1",
                    ));
                }
            }
        }
        Cmd::Catalan(a) => {
            a.s = a.s.or(file.s);
            a.t = a.t.or(file.t);
            if let Some(upto) = a.upto {
                config::check_explicit("--upto", upto as u64, cap)?;
            }
        }
        Cmd::Valuation(a) => {
            a.s = a.s.or(file.s);
            a.t = a.t.or(file.t);
            let needs_st = matches!(a.kind, ValKind::Fib | ValKind::Fibotorial | ValKind::Catalan);
            if needs_st && (a.s.is_none() || a.t.is_none()) {
                return Err(usage("this valuation kind needs --s and --t"));
            }
            let sweepable = matches!(
                a.kind,
                ValKind::Fib | ValKind::Fibotorial | ValKind::Catalan | ValKind::Special
            );
            if a.upto.is_some() && !sweepable {
                return Err(usage("--upto sweeps apply to fib, fibotorial, catalan, special"));
            }
            match a.kind {
                ValKind::Fib => {
                    if a.n.is_none() && a.upto.is_none() {
                        return Err(usage("pass --n or --upto"));
                    }
                }
                ValKind::Fibotorial | ValKind::Catalan => {
                    if a.n.is_none() && a.upto.is_none() {
                        return Err(usage("pass --n or --upto"));
                    }
                    if !matches!(a.d, None | Some(2)) {
                        return Err(usage("closed forms for this kind exist only at d = 2"));
                    }
                }
                ValKind::Special => {
                    if a.d.is_none() {
                        return Err(usage("--kind special needs --d"));
                    }
                    if a.n.is_none() && a.upto.is_none() {
                        return Err(usage("pass --n or --upto"));
                    }
                }
                ValKind::Int => {
                    if a.x.is_none() {
                        return Err(usage("--kind int needs --x"));
                    }
                }
                ValKind::Carries => {
                    if a.p.is_none() || a.m.is_none() || a.n.is_none() {
                        return Err(usage("--kind carries needs --p, --m, and --n"));
                    }
                }
                ValKind::Legendre => {
                    if a.p.is_none() || a.n.is_none() {
                        return Err(usage("--kind legendre needs --p and --n"));
                    }
                }
            }
            if let Some(upto) = a.upto {
                config::check_explicit("--upto", upto, cap)?;
            }
        }
        Cmd::Conjecture(a) => {
            a.max_n = a.max_n.or(file.max_n);
            if let Some(m) = a.max_n {
                config::check_explicit("--max-n", m, cap)?;
            }
        }
        Cmd::Identity(a) => {
            if let Some(spec) = &a.ranges {
                let parsed = parse_ranges(spec)?;
                for (name, v) in [
                    ("n", parsed.n),
                    ("m", parsed.m),
                    ("k", parsed.k),
                    ("r", parsed.r),
                ] {
                    config::check_explicit(&format!("--ranges {name}"), v as u64, cap)?;
                }
            }
        }
        Cmd::Tails(_) => {}
        Cmd::Table(a) => {
            a.max_n = a.max_n.or(file.max_n);
            if let Some(m) = a.max_n {
                config::check_explicit("--max-n", m, cap)?;
            }
        }
        Cmd::VerifyAll(a) => {
            if let Some(c) = a.criterion {
                if !(1..=12).contains(&c) {
                    return Err(usage("criteria are numbered 1 through 12"));
                }
            }
        }
    }

    Ok(Resolved {
        format,
        latex,
        cap,
        jobs,
        cmd,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use clap::Parser;

    fn parse(args: &[&str]) -> Cli {
        Cli::try_parse_from(args).expect("parse")
    }

    #[test]
    fn ranges_spec_roundtrip() {
        let r = parse_ranges("n=8,m=6").unwrap();
        assert_eq!((r.n, r.m, r.k, r.r), (8, 6, 10, 10));
        assert!(parse_ranges("n=0").is_err());
        assert!(parse_ranges("z=3").is_err());
        assert!(parse_ranges("n:3").is_err());
    }

    #[test]
    fn negative_seq_index_needs_unit_t() {
        let cli = parse(&["fibkit", "seq", "--n", "-3"]);
        let err = resolve(cli, &FileConfig::default(), None).unwrap_err();
        assert!(matches!(err, CliError::Usage(_)));

        let cli = parse(&["fibkit", "seq", "--n", "-3", "--t", "-1"]);
        assert!(resolve(cli, &FileConfig::default(), None).is_ok());
    }

    #[test]
    fn q_flag_is_fib_q_only() {
        let cli = parse(&["fibkit", "seq", "--n", "3", "--q", "2"]);
        assert!(resolve(cli, &FileConfig::default(), None).is_err());
        let cli = parse(&["fibkit", "seq", "--kind", "fib-q", "--n", "3", "--q", "2"]);
        assert!(resolve(cli, &FileConfig::default(), None).is_ok());
    }

    #[test]
    fn config_fills_omitted_flags_only() {
        let file = FileConfig {
            s: Some(2),
            t: Some(-1),
            format: Some(Format::Json),
            ..FileConfig::default()
        };
        let cli = parse(&["fibkit", "seq", "--n", "5", "--s", "7"]);
        let r = resolve(cli, &file, None).unwrap();
        assert!(matches!(r.format, Format::Json));
        match r.cmd {
            Cmd::Seq(a) => {
                assert_eq!(a.s, Some(7));
                assert_eq!(a.t, Some(-1));
            }
            _ => unreachable!(),
        }
    }

    #[test]
    fn explicit_sweeps_respect_the_cap() {
        let cli = parse(&["fibkit", "catalan", "--upto", "50"]);
        assert!(resolve(cli, &FileConfig::default(), Some(10)).is_err());
        let cli = parse(&["fibkit", "catalan", "--upto", "50"]);
        assert!(resolve(cli, &FileConfig::default(), Some(50)).is_ok());
    }

    #[test]
    fn table_needs_its_grid_flag() {
        assert!(Cli::try_parse_from(["fibkit", "table"]).is_err());
        assert!(Cli::try_parse_from(["fibkit", "table", "--paper-3"]).is_ok());
    }
}
