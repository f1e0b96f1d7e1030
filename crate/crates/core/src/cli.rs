//! Command-line surface: `sieve`, `solve`, `table`, `verify`, `oracle`,
//! `classnum`, `lehmer`. Records are emitted as JSON lines, CSV in the
//! golden-table layout, or aligned text.

use std::io::Write;
use std::ops::RangeInclusive;
use std::path::PathBuf;
use std::str::FromStr;

use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use num_traits::ToPrimitive;
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::lehmer::{lehmer_term, primitive_divisor, LehmerParams};
use crate::oracle::{self, GoldenTable, OracleConfig};
use crate::quadfield;
use crate::sieve::{exponent_set, make_instance};
use crate::solver::{solve, Solution, SolveOptions};

/// Environment variable naming a golden CSV that replaces the embedded table.
pub const GOLDEN_ENV: &str = "LRN_GOLDEN";

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntRange(pub RangeInclusive<u64>);

impl FromStr for IntRange {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let parse = |t: &str| {
            t.trim()
                .parse::<u64>()
                .map_err(|_| format!("{t:?} is not a nonnegative integer"))
        };
        let (lo, hi) = match s.split_once("..") {
            Some((a, b)) => (parse(a)?, parse(b.trim_start_matches('='))?),
            None => {
                let v = parse(s)?;
                (v, v)
            }
        };
        if lo == 0 || lo > hi {
            return Err(format!("range {s:?} must be nonempty and start at 1 or above"));
        }
        Ok(IntRange(lo..=hi))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Jsonl,
    Csv,
    Pretty,
}

#[derive(Debug, Parser)]
#[command(name = "lrn", version, about = "Exact solver for C1*x^2 + C2 = y^n")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Box |r|, |s| <= N searched for every Thue equation.
    #[arg(long, global = true, default_value_t = 1_000_000, value_parser = clap::value_parser!(u64).range(1..))]
    pub thue_bound: u64,
    /// Largest y scanned for n = 4.
    #[arg(long, global = true, default_value_t = 1_000_000, value_parser = clap::value_parser!(u64).range(1..))]
    pub case3_bound: u64,
    /// Largest y^n examined by the brute-force oracle.
    #[arg(long, global = true, default_value_t = 1_000_000_000_000, value_parser = clap::value_parser!(u64).range(8..))]
    pub oracle_cap: u64,
    #[arg(long, global = true, value_enum, default_value_t = OutputFormat::Jsonl)]
    pub format: OutputFormat,
    /// Worker threads for sweeps.
    #[arg(long, global = true, default_value_t = 1, value_parser = clap::value_parser!(u64).range(1..))]
    pub jobs: u64,
    /// Golden CSV to verify against (default: the embedded table; overridden by LRN_GOLDEN).
    #[arg(long, global = true)]
    pub golden: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Exponent sieve report for one pair.
    Sieve { c1: u64, c2: u64 },
    /// All solutions for one pair.
    Solve { c1: u64, c2: u64 },
    /// Sweep C1 and C2 ranges, skipping pairs outside the supported regime.
    Table {
        #[arg(long, default_value = "2..10")]
        c1: IntRange,
        #[arg(long, default_value = "1..80")]
        c2: IntRange,
    },
    /// Sweep and compare with the golden table; exits 1 on any difference.
    Verify {
        #[arg(long, default_value = "2..10")]
        c1: IntRange,
        #[arg(long, default_value = "1..80")]
        c2: IntRange,
    },
    /// Brute-force solutions with y^n up to the oracle cap.
    Oracle {
        c1: u64,
        c2: u64,
        /// Only this y.
        #[arg(long)]
        fixed_y: Option<u64>,
        #[arg(long, default_value_t = 64, value_parser = clap::value_parser!(u32).range(3..))]
        n_max: u32,
    },
    /// Class number of Q(sqrt(-c)) for squarefree c.
    Classnum { c: u64 },
    /// Lehmer sequence term u_n for parameters (A, B) and its primitive divisor.
    Lehmer {
        #[arg(allow_hyphen_values = true)]
        a: i64,
        #[arg(allow_hyphen_values = true)]
        b: i64,
        n: u64,
    },
}

impl Cli {
    pub fn solve_options(&self) -> SolveOptions {
        SolveOptions {
            thue_bound: self.thue_bound,
            case3_bound: self.case3_bound,
            ..SolveOptions::default()
        }
    }
}

/// Record for one result of a sweep.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Record {
    Solution(Solution),
    Skip { c1: u64, c2: u64, reason: String },
}

impl Record {
    fn sort_key(&self) -> (u64, u64, u8, BigInt, BigInt, u32) {
        match self {
            Record::Skip { c1, c2, .. } => (*c1, *c2, 0, BigInt::default(), BigInt::default(), 0),
            Record::Solution(s) => (s.c1, s.c2, 1, s.x.clone(), s.y.clone(), s.n),
        }
    }
}

fn number(n: &BigInt) -> Value {
    match n.to_u64() {
        Some(v) => json!(v),
        None => json!(n.to_string()),
    }
}

pub fn solution_json(s: &Solution) -> Value {
    json!({
        "c1": s.c1,
        "c2": s.c2,
        "x": number(&s.x),
        "y": number(&s.y),
        "n": s.n,
        "case": s.case.to_string(),
        "complete": s.complete,
    })
}

pub fn record_json(r: &Record) -> Value {
    match r {
        Record::Solution(s) => solution_json(s),
        Record::Skip { c1, c2, reason } => json!({ "c1": c1, "c2": c2, "skip_reason": reason }),
    }
}

fn emit(out: &mut dyn Write, format: OutputFormat, records: &[Record]) -> std::io::Result<()> {
    match format {
        OutputFormat::Jsonl => {
            for r in records {
                writeln!(out, "{}", record_json(r))?;
            }
        }
        OutputFormat::Csv => {
            writeln!(out, "C1,C2,x,y,n")?;
            for r in records {
                if let Record::Solution(s) = r {
                    writeln!(out, "{},{},{},{},{}", s.c1, s.c2, s.x, s.y, s.n)?;
                }
            }
        }
        OutputFormat::Pretty => {
            for r in records {
                match r {
                    Record::Solution(s) => {
                        let tag = if s.complete { "complete" } else { "bounded" };
                        write!(out, "{s:<36} {:<8} {tag}", s.case.to_string())?;
                        if let Some(note) = s.note() {
                            write!(out, "  ({note})")?;
                        }
                        writeln!(out)?;
                    }
                    Record::Skip { c1, c2, reason } => {
                        writeln!(out, "skip ({c1}, {c2}): {reason}")?;
                    }
                }
            }
        }
    }
    Ok(())
}

/// Solves every pair in the ranges; records come back sorted, so output does
/// not depend on the number of workers.
pub fn sweep(c1s: &IntRange, c2s: &IntRange, opts: &SolveOptions, jobs: usize) -> Vec<Record> {
    let pairs: Vec<(u64, u64)> = c1s
        .0
        .clone()
        .flat_map(|a| c2s.0.clone().map(move |b| (a, b)))
        .collect();
    let work = || {
        pairs
            .par_iter()
            .flat_map_iter(|&(c1, c2)| {
                let inst = make_instance(c1, c2);
                match &inst.invalid_reason {
                    Some(reason) => vec![Record::Skip {
                        c1,
                        c2,
                        reason: reason.clone(),
                    }],
                    None => match solve(c1, c2, opts) {
                        Ok(sols) => sols.into_iter().map(Record::Solution).collect(),
                        Err(e) => vec![Record::Skip {
                            c1,
                            c2,
                            reason: e.to_string(),
                        }],
                    },
                }
            })
            .collect::<Vec<Record>>()
    };
    let mut records = match rayon::ThreadPoolBuilder::new().num_threads(jobs).build() {
        Ok(pool) => pool.install(work),
        Err(_) => work(),
    };
    records.sort_by_key(|r| r.sort_key());
    records
}

fn golden_table(cli: &Cli) -> crate::Result<GoldenTable> {
    let path = std::env::var_os(GOLDEN_ENV)
        .map(PathBuf::from)
        .or_else(|| cli.golden.clone());
    match path {
        Some(p) => oracle::load_golden(&p),
        None => oracle::embedded_golden(),
    }
}

/// Runs a parsed command; returns the process exit status.
pub fn execute(cli: &Cli, out: &mut dyn Write, err: &mut dyn Write) -> std::io::Result<i32> {
    let opts = cli.solve_options();
    match &cli.command {
        Command::Sieve { c1, c2 } => {
            let inst = make_instance(*c1, *c2);
            match exponent_set(&inst) {
                Ok(report) => {
                    if cli.format == OutputFormat::Pretty {
                        writeln!(out, "{}", serde_json::to_string_pretty(&report).unwrap())?;
                    } else {
                        writeln!(out, "{}", serde_json::to_string(&report).unwrap())?;
                    }
                    Ok(0)
                }
                Err(e) => {
                    writeln!(err, "error: {e}")?;
                    Ok(2)
                }
            }
        }
        Command::Solve { c1, c2 } => match solve(*c1, *c2, &opts) {
            Ok(sols) => {
                let records: Vec<Record> = sols.into_iter().map(Record::Solution).collect();
                emit(out, cli.format, &records)?;
                Ok(0)
            }
            Err(e) => {
                writeln!(err, "error: {e}")?;
                Ok(2)
            }
        },
        Command::Table { c1, c2 } => {
            let records = sweep(c1, c2, &opts, cli.jobs as usize);
            emit(out, cli.format, &records)?;
            Ok(0)
        }
        Command::Verify { c1, c2 } => {
            let table = match golden_table(cli) {
                Ok(t) => t,
                Err(e) => {
                    writeln!(err, "error: {e}")?;
                    return Ok(2);
                }
            };
            if !table.is_published() {
                writeln!(err, "note: golden table differs from the embedded one (sha256 {})", table.sha256)?;
            }
            let records = sweep(c1, c2, &opts, cli.jobs as usize);
            let sols: Vec<Solution> = records
                .into_iter()
                .filter_map(|r| match r {
                    Record::Solution(s) => Some(s),
                    Record::Skip { .. } => None,
                })
                .collect();
            let rows: Vec<_> = table
                .rows
                .iter()
                .filter(|r| c1.0.contains(&r.c1) && c2.0.contains(&r.c2))
                .cloned()
                .collect();
            let diff = oracle::golden_diff(&sols, &rows);
            writeln!(out, "{diff}")?;
            for row in &diff.missing {
                writeln!(out, "missing {row}")?;
            }
            for row in &diff.extra {
                writeln!(out, "extra {row}")?;
            }
            Ok(if diff.is_clean() { 0 } else { 1 })
        }
        Command::Oracle {
            c1,
            c2,
            fixed_y,
            n_max,
        } => {
            if *c1 == 0 || *c2 == 0 {
                writeln!(err, "error: C1 and C2 must be positive")?;
                return Ok(2);
            }
            let config = OracleConfig {
                value_cap: BigInt::from(cli.oracle_cap),
                n_max: *n_max,
                fixed_y: *fixed_y,
            };
            let records: Vec<Record> = oracle::brute_force(*c1, *c2, &config)
                .into_iter()
                .map(Record::Solution)
                .collect();
            emit(out, cli.format, &records)?;
            Ok(0)
        }
        Command::Classnum { c } => match quadfield::class_number(*c) {
            Ok(h) => {
                match cli.format {
                    OutputFormat::Jsonl => writeln!(out, "{}", json!({ "c": c, "class_number": h }))?,
                    _ => writeln!(out, "{h}")?,
                }
                Ok(0)
            }
            Err(e) => {
                writeln!(err, "error: {e}")?;
                Ok(2)
            }
        },
        Command::Lehmer { a, b, n } => {
            let params = LehmerParams::new(*a, *b);
            let term = match lehmer_term(&params, *n) {
                Ok(t) => t,
                Err(e) => {
                    writeln!(err, "error: {e}")?;
                    return Ok(2);
                }
            };
            let pd = primitive_divisor(&params, *n);
            let value = json!({
                "a": a,
                "b": b,
                "n": n,
                "lehmer_pair": params.is_lehmer_pair(),
                "term": term.to_string(),
                "primitive_divisor": pd.map(|p| p.to_string()),
            });
            match cli.format {
                OutputFormat::Pretty => writeln!(out, "{}", serde_json::to_string_pretty(&value).unwrap())?,
                _ => writeln!(out, "{value}")?,
            }
            Ok(0)
        }
    }
}

/// Parses `args` (including the program name) and runs; flag errors exit 2.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    let mut out = stdout.lock();
    let mut err = stderr.lock();
    execute(&cli, &mut out, &mut err).unwrap_or(1)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_capture(args: &[&str]) -> (i32, String) {
        let cli = Cli::try_parse_from(args).unwrap();
        let mut out = Vec::new();
        let mut err = Vec::new();
        let code = execute(&cli, &mut out, &mut err).unwrap();
        (code, String::from_utf8(out).unwrap())
    }

    #[test]
    fn ranges_parse() {
        assert_eq!("2..10".parse::<IntRange>().unwrap(), IntRange(2..=10));
        assert_eq!("2..=10".parse::<IntRange>().unwrap(), IntRange(2..=10));
        assert_eq!("7".parse::<IntRange>().unwrap(), IntRange(7..=7));
        assert!("10..2".parse::<IntRange>().is_err());
        assert!("0..3".parse::<IntRange>().is_err());
        assert!("a..b".parse::<IntRange>().is_err());
    }

    #[test]
    fn flag_errors() {
        assert!(Cli::try_parse_from(["lrn", "solve", "2"]).is_err());
        assert!(Cli::try_parse_from(["lrn", "table", "--c1", "5..2"]).is_err());
        assert!(Cli::try_parse_from(["lrn", "solve", "2", "1", "--thue-bound", "0"]).is_err());
        assert!(Cli::try_parse_from(["lrn", "solve", "2", "1", "--format", "xml"]).is_err());
        assert_eq!(run(["lrn", "frobnicate"]), 2);
    }

    #[test]
    fn solve_record() {
        let (code, out) = run_capture(&["lrn", "solve", "2", "1", "--thue-bound", "1000", "--case3-bound", "1000"]);
        assert_eq!(code, 0);
        let v: Value = serde_json::from_str(out.trim()).unwrap();
        assert_eq!(
            v,
            json!({"c1": 2, "c2": 1, "x": 11, "y": 3, "n": 5, "case": "CaseI", "complete": true})
        );
    }

    #[test]
    fn classnum_output() {
        assert_eq!(run_capture(&["lrn", "classnum", "110", "--format", "pretty"]), (0, "12\n".into()));
        let (code, _) = run_capture(&["lrn", "classnum", "12"]);
        assert_eq!(code, 2);
    }

    #[test]
    fn invalid_pair_is_an_input_error() {
        let (code, _) = run_capture(&["lrn", "solve", "1", "7"]);
        assert_eq!(code, 2);
    }

    #[test]
    fn table_emits_skips_and_is_parallel_invariant() {
        let args = |jobs: &str| {
            vec![
                "lrn", "table", "--c1", "1..4", "--c2", "1..8", "--thue-bound", "300",
                "--case3-bound", "300", "--jobs", jobs,
            ]
            .into_iter()
            .map(String::from)
            .collect::<Vec<_>>()
        };
        let one = {
            let cli = Cli::try_parse_from(args("1")).unwrap();
            let mut out = Vec::new();
            execute(&cli, &mut out, &mut Vec::new()).unwrap();
            out
        };
        let four = {
            let cli = Cli::try_parse_from(args("4")).unwrap();
            let mut out = Vec::new();
            execute(&cli, &mut out, &mut Vec::new()).unwrap();
            out
        };
        assert_eq!(one, four);
        let text = String::from_utf8(one).unwrap();
        assert!(text.contains(r#""skip_reason":"C1*C2 = 7 mod 8""#));
        assert!(text.contains(r#""skip_reason":"C1 is not squarefree""#));
        for line in text.lines() {
            let v: Value = serde_json::from_str(line).unwrap();
            let keys: Vec<&String> = v.as_object().unwrap().keys().collect();
            assert!(keys.len() == 3 || keys.len() == 7, "{line}");
        }
    }

    #[test]
    fn csv_mirrors_golden_layout() {
        let (_, out) = run_capture(&[
            "lrn", "solve", "2", "19", "--format", "csv", "--thue-bound", "500", "--case3-bound", "500",
        ]);
        assert_eq!(out, "C1,C2,x,y,n\n2,19,2,3,3\n2,19,33,13,3\n2,19,1429,21,5\n");
    }

    #[test]
    fn oracle_command() {
        let (code, out) = run_capture(&[
            "lrn", "oracle", "1", "7", "--fixed-y", "2", "--oracle-cap", "65536", "--format", "csv",
        ]);
        assert_eq!(code, 0);
        assert_eq!(out, "C1,C2,x,y,n\n1,7,1,2,3\n1,7,3,2,4\n1,7,5,2,5\n1,7,11,2,7\n1,7,181,2,15\n");
    }

    #[test]
    fn lehmer_command() {
        let (code, out) = run_capture(&["lrn", "lehmer", "1", "2", "7"]);
        assert_eq!(code, 0);
        let v: Value = serde_json::from_str(out.trim()).unwrap();
        assert_eq!(v["term"], json!("7"));
        assert_eq!(v["primitive_divisor"], Value::Null);
    }

    #[test]
    fn verify_small_range() {
        let (code, out) = run_capture(&[
            "lrn", "verify", "--c1", "2", "--c2", "1..20", "--thue-bound", "2000", "--case3-bound", "2000",
        ]);
        assert_eq!(out.lines().next().unwrap(), "8 matched, 0 missing, 0 extra");
        assert_eq!(code, 0);
    }
}
