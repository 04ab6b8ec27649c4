//! `symdesign`: exact `t_max` for circuits of k-local symmetric gates.

mod report;
mod table;

use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use serde::Deserialize;
use symdesign_core::suites::{run_suite, SUITE_NAMES};
use symdesign_core::{
    build_chi, build_s, canonical_order, closed_tmax, closed_tmax_sud, custom_matrix, lower_bound, parse_rational,
    problem, sectors, tmax_exact, ChargeMatrix, CycleType, Error, GroupSpec, SectorTable, SolveOptions, SudCase,
    TmaxValue,
};

use report::TmaxReport;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum GroupArg {
    U1,
    Su2,
    Zp,
    Sud,
}

#[derive(Parser, Debug)]
#[command(name = "symdesign", version, about = "Exact maximal design order of k-local symmetric circuits")]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value = "text")]
    format: Format,
    /// Worker threads for table reproduction.
    #[arg(long, global = true, env = "SYMDESIGN_THREADS")]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
struct ProblemArgs {
    #[arg(long, value_enum)]
    group: GroupArg,
    /// Order of the cyclic group (zp).
    #[arg(long)]
    p: Option<u32>,
    /// Local dimension (sud).
    #[arg(long)]
    d: Option<u32>,
    /// Number of sites.
    #[arg(long)]
    n: u32,
    /// Gate locality.
    #[arg(long)]
    k: u32,
    /// Conjugacy classes for sud, e.g. "(1),(12),(123)".
    #[arg(long)]
    classes: Option<String>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Exact t_max with a certificate and the closed-form comparison.
    Tmax {
        #[command(flatten)]
        problem: ProblemArgs,
        /// Solve even below the semi-universality threshold.
        #[arg(long)]
        assume_semiuniversal: bool,
        /// Examine at most this many sectors (result is then an upper bound).
        #[arg(long)]
        max_sectors: Option<usize>,
    },
    /// Lower bound from the first rank-deficient sector prefix.
    LowerBound {
        #[command(flatten)]
        problem: ProblemArgs,
    },
    /// Dump the charge matrix with labelled rows and columns.
    Smatrix {
        #[command(flatten)]
        problem: ProblemArgs,
        /// Order columns canonically (by multiplicity) instead of naturally.
        #[arg(long)]
        canonical: bool,
    },
    /// Reproduce a table of results, solver against closed form.
    Table {
        #[arg(long, value_enum)]
        reproduce: table::Which,
        /// Inclusive range such as 8..20.
        #[arg(long, value_parser = parse_range)]
        n_range: (u32, u32),
        /// Local dimensions for the SU(d) rows.
        #[arg(long, value_delimiter = ',', default_value = "3")]
        d: Vec<u32>,
        /// Also emit rows below the closed form's validity threshold.
        #[arg(long)]
        include_below: bool,
    },
    /// Run a verification suite.
    Verify {
        #[arg(long, value_parser = clap::builder::PossibleValuesParser::new(SUITE_NAMES))]
        suite: String,
        #[arg(long, default_value_t = 16)]
        n_max: u32,
        /// Seed for the random witness samples.
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Solve a custom problem read from a JSON file ("-" for stdin).
    Custom { file: PathBuf },
}

fn parse_range(s: &str) -> Result<(u32, u32), String> {
    let (a, b) =
        s.split_once("..=").or_else(|| s.split_once("..")).ok_or_else(|| format!("expected A..B, got '{s}'"))?;
    let a = a.trim().parse::<u32>().map_err(|e| e.to_string())?;
    let b = b.trim().parse::<u32>().map_err(|e| e.to_string())?;
    Ok((a, b))
}

enum Failure {
    Core(Error),
    Parse(String),
    Usage(String),
    Suite(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Core(e)
    }
}

impl Failure {
    fn exit(&self) -> (u8, String) {
        match self {
            Failure::Core(e @ Error::Verification(_)) => (4, e.to_string()),
            Failure::Core(e) => (2, e.to_string()),
            Failure::Usage(m) => (2, m.clone()),
            Failure::Parse(m) => (3, m.clone()),
            Failure::Suite(m) => (4, m.clone()),
        }
    }
}

fn group_of(p: &ProblemArgs) -> Result<GroupSpec, Failure> {
    let g = match p.group {
        GroupArg::U1 => GroupSpec::U1,
        GroupArg::Su2 => GroupSpec::SU2,
        GroupArg::Zp => GroupSpec::zp(p.p.ok_or_else(|| Failure::Usage("--group zp needs --p".into()))?)?,
        GroupArg::Sud => GroupSpec::sud(p.d.ok_or_else(|| Failure::Usage("--group sud needs --d".into()))?)?,
    };
    if p.classes.is_some() && !matches!(g, GroupSpec::SUd { .. }) {
        return Err(Failure::Usage("--classes only applies to --group sud".into()));
    }
    Ok(g)
}

/// Splits "(1),(12),(1,2,3)" at commas outside parentheses.
fn parse_classes(s: &str) -> Result<Vec<CycleType>, Failure> {
    let mut out = Vec::new();
    let (mut depth, mut start) = (0i32, 0usize);
    for (i, ch) in s.char_indices() {
        match ch {
            '(' => depth += 1,
            ')' => depth -= 1,
            ',' | ';' if depth == 0 => {
                out.push(&s[start..i]);
                start = i + 1;
            }
            _ => {}
        }
    }
    out.push(&s[start..]);
    let mut classes = out
        .into_iter()
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(CycleType::parse)
        .collect::<Result<Vec<_>, _>>()?;
    classes.sort_by_key(|c| (c.support(), c.cycles().to_vec()));
    classes.dedup();
    Ok(classes)
}

struct Built {
    group: GroupSpec,
    matrix: ChargeMatrix,
    table: SectorTable,
    case: Option<SudCase>,
}

fn build(p: &ProblemArgs) -> Result<Built, Failure> {
    let group = group_of(p)?;
    let table = canonical_order(&sectors(&group, p.n)?);
    let (matrix, case) = match (&group, &p.classes) {
        (GroupSpec::SUd { d }, Some(list)) => {
            let classes = parse_classes(list)?;
            let case = SudCase::ALL.into_iter().find(|c| {
                let mut want: Vec<CycleType> = c.classes().iter().map(|s| CycleType::parse(s).unwrap()).collect();
                want.sort_by_key(|c| (c.support(), c.cycles().to_vec()));
                want == classes && *d >= c.min_d()
            });
            (build_chi(*d, p.n, p.k, Some(&classes))?.align_to(&table)?, case)
        }
        _ => {
            let case = match (group, p.k) {
                (GroupSpec::SUd { .. }, 3) => Some(SudCase::K3),
                (GroupSpec::SUd { .. }, 4) => Some(SudCase::K4),
                _ => None,
            };
            let (a, _) = problem(&group, p.n, p.k)?;
            (a, case)
        }
    };
    Ok(Built { group, matrix, table, case })
}

fn closed_form(b: &Built, n: u32, k: u32) -> Option<TmaxValue> {
    let c = match (&b.group, b.case) {
        (GroupSpec::SUd { d }, Some(case)) => closed_tmax_sud(*d, n, case).ok(),
        (GroupSpec::SUd { .. }, None) => None,
        (g, _) => closed_tmax(g, n, k).ok(),
    }?;
    c.applies(n).then_some(c.value)
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct CustomProblem {
    m: Vec<serde_json::Number>,
    #[serde(default)]
    rows: Vec<Vec<serde_json::Value>>,
    #[serde(default)]
    labels: Option<Vec<String>>,
}

fn read_custom(path: &PathBuf) -> Result<CustomProblem, Failure> {
    let text = if path.as_os_str() == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s).map_err(|e| Failure::Usage(format!("stdin: {e}")))?;
        s
    } else {
        std::fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?
    };
    serde_json::from_str(&text).map_err(|e| {
        // the message ends with "at line L column C"
        Failure::Parse(format!("{}: {e}", path.display()))
    })
}

fn run_custom(path: &PathBuf, format: Format) -> Result<String, Failure> {
    let prob = read_custom(path)?;
    let m = prob
        .m
        .iter()
        .map(|x| {
            x.to_string()
                .parse::<BigInt>()
                .ok()
                .filter(|v| v.sign() == num_bigint::Sign::Plus)
                .ok_or_else(|| Failure::Parse(format!("m: '{x}' is not a positive integer")))
        })
        .collect::<Result<Vec<_>, _>>()?;
    let rows = prob
        .rows
        .iter()
        .enumerate()
        .map(|(i, r)| {
            r.iter()
                .enumerate()
                .map(|(j, v)| {
                    let s = match v {
                        serde_json::Value::String(s) => s.clone(),
                        serde_json::Value::Number(x) => x.to_string(),
                        other => other.to_string(),
                    };
                    parse_rational(&s).ok_or_else(|| Failure::Parse(format!("rows[{i}][{j}]: '{s}' is not p/q")))
                })
                .collect::<Result<Vec<_>, _>>()
        })
        .collect::<Result<Vec<_>, _>>()?;
    let table = SectorTable::custom(m.clone(), prob.labels)?;
    let canon = canonical_order(&table);
    let a = custom_matrix(&m, &rows, None)?.relabel(&table)?.align_to(&canon)?;
    let opts = SolveOptions { assume_semiuniversal: true, ..Default::default() };
    let result = tmax_exact(&a, &canon, &opts)?;
    Ok(TmaxReport::new("custom".into(), None, None, result, &canon, &table, None).render(format))
}

fn run(cli: Cli) -> Result<String, Failure> {
    let format = cli.format;
    match cli.command {
        Command::Tmax { problem, assume_semiuniversal, max_sectors } => {
            let b = build(&problem)?;
            let opts = SolveOptions { assume_semiuniversal, max_sectors };
            let result = tmax_exact(&b.matrix, &b.table, &opts)?;
            let closed = closed_form(&b, problem.n, problem.k);
            let natural = sectors(&b.group, problem.n)?;
            let (n, k) = (Some(problem.n), Some(problem.k));
            let rep = TmaxReport::new(b.group.to_string(), n, k, result, &b.table, &natural, closed);
            Ok(rep.render(format))
        }
        Command::LowerBound { problem } => {
            let b = build(&problem)?;
            let lb = lower_bound(&b.matrix, &b.table)?;
            Ok(report::render_lower_bound(&b.group.to_string(), problem.n, problem.k, &lb, format))
        }
        Command::Smatrix { problem, canonical } => {
            let b = build(&problem)?;
            let a = if canonical || b.group.local_dim().is_none() {
                b.matrix
            } else {
                let natural = sectors(&b.group, problem.n)?;
                match (&b.group, &problem.classes) {
                    (GroupSpec::SUd { .. }, Some(_)) => b.matrix.align_to(&natural)?,
                    (GroupSpec::SUd { d }, None) => build_chi(*d, problem.n, problem.k, None)?.align_to(&natural)?,
                    (g, _) => build_s(g, problem.n, problem.k)?,
                }
            };
            Ok(report::render_matrix(&b.group.to_string(), &a, format))
        }
        Command::Table { reproduce, n_range, d, include_below } => {
            let ds = d.iter().map(|&x| GroupSpec::sud(x).map(|_| x)).collect::<Result<Vec<_>, _>>()?;
            let rows = table::build(reproduce, n_range.0..=n_range.1, &ds, include_below);
            Ok(table::render(&rows, format))
        }
        Command::Verify { suite, n_max, seed } => {
            let r = run_suite(&suite, n_max, seed)?;
            let out = report::render_suite(&r, format);
            if r.passed() {
                Ok(out)
            } else {
                print!("{out}");
                Err(Failure::Suite(format!("suite {} failed", r.name)))
            }
        }
        Command::Custom { file } => run_custom(&file, format),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(t) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(t).build_global() {
            eprintln!("warning: thread pool: {e}");
        }
    }
    match run(cli) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(f) => {
            let (code, msg) = f.exit();
            eprintln!("error: {msg}");
            ExitCode::from(code)
        }
    }
}
