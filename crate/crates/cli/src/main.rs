mod report;
mod run;

use std::collections::BTreeMap;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use shintani_core::field::FieldContext;

use report::{tsv, Table};
use run::{ClassnumOptions, Failure, Method, Outcome};

#[derive(Parser)]
#[command(name = "shintani", version, about = "Exact class numbers of F(sqrt(-p)) over real quadratic F = Q(sqrt(d))")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Class number of K = F(sqrt(-p)) by one or all methods.
    Classnum(ClassnumArgs),
    /// One row per eligible prime up to --pmax.
    Table(TableArgs),
    /// Dump Shintani points, cycles, the kernel of pi, or a base-eps expansion.
    Inspect(InspectArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Tsv,
}

#[derive(Clone, Copy, ValueEnum)]
enum Which {
    Table1,
    Table2,
}

#[derive(Args)]
struct ClassnumArgs {
    #[arg(long)]
    d: u64,
    #[arg(long)]
    p: u64,
    #[arg(long, value_enum, default_value_t = Method::All)]
    method: Method,
    /// Pin the generator rho = a + b*theta, as "a,b".
    #[arg(long)]
    rho: Option<String>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
    #[arg(long)]
    no_crosscheck: bool,
    /// Include wall-clock time per method (makes output non-reproducible).
    #[arg(long)]
    timing: bool,
}

#[derive(Args)]
struct TableArgs {
    #[arg(long)]
    d: u64,
    #[arg(long)]
    pmax: u64,
    #[arg(long, value_enum, default_value_t = Which::Table1)]
    which: Which,
    /// Pin rho for one prime, as "p:a,b"; may be repeated.
    #[arg(long)]
    rho: Vec<String>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
    #[arg(long)]
    no_crosscheck: bool,
    #[arg(long)]
    max_digits: Option<usize>,
    /// Worker threads; defaults to SHINTANI_JOBS or the number of CPUs.
    #[arg(long)]
    jobs: Option<usize>,
}

#[derive(Args)]
struct InspectArgs {
    #[arg(long)]
    d: u64,
    #[arg(long)]
    p: Option<u64>,
    /// shintani-set, cycles, kernel, or eps-expand:NUM/DEN
    #[arg(long)]
    what: String,
    #[arg(long, value_enum)]
    format: Option<Format>,
    #[arg(long)]
    max_digits: Option<usize>,
}

fn json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("report serializes");
    s.push('\n');
    s
}

fn jobs(flag: Option<usize>) -> usize {
    flag.or_else(|| std::env::var("SHINTANI_JOBS").ok()?.parse().ok())
        .unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get()))
        .max(1)
}

fn classnum(args: &ClassnumArgs) -> Outcome<String> {
    let opts = ClassnumOptions {
        method: args.method,
        rho: args.rho.as_deref().map(run::parse_rho).transpose()?,
        crosscheck: !args.no_crosscheck,
        timing: args.timing,
    };
    let report = run::classnum(args.d, args.p, &opts)?;
    Ok(match args.format {
        Format::Json => json(&report),
        Format::Tsv => report.tsv(),
    })
}

fn table(args: &TableArgs) -> Outcome<String> {
    let field = FieldContext::new(args.d)?;
    let pinned: BTreeMap<u64, report::Rho> =
        args.rho.iter().map(|s| run::parse_pinned(s)).collect::<Outcome<_>>()?;
    let primes = run::eligible_primes(&field, args.pmax);
    let crosscheck = !args.no_crosscheck;
    let n = jobs(args.jobs);
    match args.which {
        Which::Table1 => {
            let rows = run::parallel_map(&primes, n, |&p| {
                run::table1_row(&field, p, pinned.get(&p).copied(), crosscheck)
            });
            let rows = rows.into_iter().collect::<Outcome<Vec<_>>>()?;
            Ok(match args.format {
                Format::Json => json(&Table { d: args.d, which: "table1", rows }),
                Format::Tsv => tsv(&rows),
            })
        }
        Which::Table2 => {
            let rows = run::parallel_map(&primes, n, |&p| run::table2_row(&field, p, args.max_digits, crosscheck));
            let rows = rows.into_iter().collect::<Outcome<Vec<_>>>()?;
            Ok(match args.format {
                Format::Json => json(&Table { d: args.d, which: "table2", rows }),
                Format::Tsv => tsv(&rows),
            })
        }
    }
}

fn inspect(args: &InspectArgs) -> Outcome<String> {
    let what = run::parse_what(&args.what)?;
    let dump = run::inspect(args.d, args.p, &what, args.max_digits)?;
    Ok(match (args.format, &dump) {
        // bare expansion string unless a format is asked for
        (None, report::Dump::EpsExpand { expansion, .. }) => format!("{expansion}\n"),
        (None | Some(Format::Json), _) => json(&dump),
        (Some(Format::Tsv), _) => dump.tsv(),
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (out, json_errors) = match &cli.command {
        Command::Classnum(a) => (classnum(a), matches!(a.format, Format::Json)),
        Command::Table(a) => (table(a), matches!(a.format, Format::Json)),
        Command::Inspect(a) => (inspect(a), !matches!(a.format, Some(Format::Tsv))),
    };
    match out {
        Ok(s) => {
            print!("{s}");
            ExitCode::SUCCESS
        }
        Err(e) => report_failure(&e, json_errors),
    }
}

fn report_failure(e: &Failure, as_json: bool) -> ExitCode {
    eprintln!("shintani: {e}");
    if as_json {
        print!("{}", json(&e.report()));
    }
    ExitCode::from(e.exit_code())
}
