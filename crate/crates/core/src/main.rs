//! Command-line front end: verify single points, run sweeps, hunt for
//! counterexamples.
//!
//! Exit codes are part of the interface and scripts may rely on them:
//! 0 = verified / no failures, 1 = a nonzero residual (a confirmed
//! counterexample for `search`), 2 = usage or domain error.

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use identikit::dyadic::{compute_terms, DyadicCase};
use identikit::identities::{registry_lookup, IdentityId, ParamPoint};
use identikit::report::{render_summary, CsvWriter, JsonlWriter, OutputRecord};
use identikit::sweep::{
    run_search, run_sweep_with, ConstraintMode, OutputFormat, Recheck, SweepSpec,
};

#[derive(Parser)]
#[command(
    name = "identikit",
    version,
    about = "Exact verification and counterexample search for a catalog of permutation and 2-adic identities",
    arg_required_else_help = true
)]
struct Cli {
    /// Print the built-in demonstration values (base cases of the two proven
    /// identities) and exit.
    #[arg(long)]
    seed_demo: bool,

    #[command(subcommand)]
    command: Option<Command>,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate one identity at one parameter point and print the record.
    Verify(VerifyArgs),
    /// Evaluate every point of a bounded parameter domain.
    Sweep(SweepArgs),
    /// Stream only failing records; hunt for counterexamples.
    Search(SearchArgs),
    /// Print the built-in demonstration values.
    SeedDemo,
}

#[derive(Args)]
struct VerifyArgs {
    /// Identity tag (vandermonde, li-shanlan, injection-diff, theorem-perm,
    /// conjecture, proof-reindex, dyadic).
    identity: String,
    #[arg(long)]
    j: Option<u64>,
    #[arg(long)]
    k: Option<u64>,
    #[arg(long)]
    m: Option<u64>,
    #[arg(long)]
    n: Option<u64>,
    #[arg(long)]
    i: Option<u64>,
    /// Evaluate and report out-of-domain points instead of rejecting them.
    #[arg(long)]
    allow_boundary: bool,
}

#[derive(Args)]
struct BoundsArgs {
    /// Largest n to enumerate (largest width j for dyadic).
    #[arg(long, visible_alias = "j-max")]
    n_max: u64,
    /// Cap on k (defaults to whatever the domain constraints allow).
    #[arg(long)]
    k_max: Option<u64>,
    /// Cap on m (defaults to whatever the domain constraints allow).
    #[arg(long)]
    m_max: Option<u64>,
    /// Worker threads.
    #[arg(long, env = "IDENTIKIT_WORKERS", default_value_t = 1)]
    workers: usize,
}

#[derive(Args)]
struct SweepArgs {
    /// Identity tag.
    identity: String,
    #[command(flatten)]
    bounds: BoundsArgs,
    /// Also evaluate the boundary shell (each domain inequality violated by
    /// exactly one, one at a time).
    #[arg(long)]
    include_boundary: bool,
    #[arg(long, value_enum, default_value_t = FormatArg::Summary)]
    format: FormatArg,
    /// Write records to this file instead of standard output.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct SearchArgs {
    /// Identity tag (typically `conjecture`; the others are proven).
    identity: String,
    #[command(flatten)]
    bounds: BoundsArgs,
    /// Stop at the first confirmed counterexample.
    #[arg(long)]
    stop_on_first: bool,
    /// Write failing records to this file instead of standard output.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum FormatArg {
    Jsonl,
    Csv,
    Summary,
}

const EXIT_OK: u8 = 0;
const EXIT_FAILED: u8 = 1;
const EXIT_USAGE: u8 = 2;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let code = if cli.seed_demo {
        seed_demo()
    } else {
        match cli.command {
            Some(Command::Verify(args)) => cmd_verify(&args),
            Some(Command::Sweep(args)) => cmd_sweep(&args),
            Some(Command::Search(args)) => cmd_search(&args),
            Some(Command::SeedDemo) => seed_demo(),
            None => EXIT_USAGE,
        }
    };
    ExitCode::from(code)
}

fn fail_usage(message: impl std::fmt::Display) -> u8 {
    eprintln!("identikit: {message}");
    EXIT_USAGE
}

fn parse_identity(tag: &str) -> Result<IdentityId, u8> {
    tag.parse::<IdentityId>().map_err(|e| fail_usage(e))
}

fn print_record(record: &identikit::VerificationRecord) {
    println!("{}", OutputRecord::from_record(record).to_jsonl());
}

fn cmd_verify(args: &VerifyArgs) -> u8 {
    let identity = match parse_identity(&args.identity) {
        Ok(id) => id,
        Err(code) => return code,
    };
    let point = ParamPoint { j: args.j, k: args.k, m: args.m, n: args.n, i: args.i };
    let entry = registry_lookup(identity);
    let record = match entry.eval(&point) {
        Ok(record) => record,
        Err(e) => return fail_usage(e),
    };
    if !record.in_domain && !args.allow_boundary {
        let requires = entry.violated_constraints(&point).join(" and ");
        return fail_usage(format!(
            "{identity} requires {requires} (got {point}); pass --allow-boundary to evaluate anyway"
        ));
    }
    print_record(&record);
    if record.holds {
        EXIT_OK
    } else {
        EXIT_FAILED
    }
}

fn build_spec(identity: IdentityId, bounds: &BoundsArgs, mode: ConstraintMode, output: OutputFormat) -> SweepSpec {
    SweepSpec {
        identity,
        n_max: bounds.n_max,
        k_max: bounds.k_max,
        m_max: bounds.m_max,
        mode,
        workers: bounds.workers,
        output,
    }
}

fn open_sink(out: &Option<PathBuf>) -> io::Result<Box<dyn Write>> {
    Ok(match out {
        Some(path) => Box::new(BufWriter::new(File::create(path)?)),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

fn cmd_sweep(args: &SweepArgs) -> u8 {
    let identity = match parse_identity(&args.identity) {
        Ok(id) => id,
        Err(code) => return code,
    };
    let mode = if args.include_boundary {
        ConstraintMode::IncludeBoundary
    } else {
        ConstraintMode::InDomainOnly
    };
    let output = match args.format {
        FormatArg::Jsonl => OutputFormat::Jsonl,
        FormatArg::Csv => OutputFormat::Csv,
        FormatArg::Summary => OutputFormat::Summary,
    };
    let spec = build_spec(identity, &args.bounds, mode, output);

    let report = match output {
        OutputFormat::Summary => run_sweep_with(&spec, |_| Ok(())),
        OutputFormat::Jsonl => match open_sink(&args.out) {
            Ok(sink) => {
                let mut writer = JsonlWriter::new(sink);
                let result = run_sweep_with(&spec, |record| writer.write(record));
                if let Err(e) = writer.finish().and_then(|mut w| w.flush()) {
                    return fail_usage(e);
                }
                result
            }
            Err(e) => return fail_usage(e),
        },
        OutputFormat::Csv => match open_sink(&args.out) {
            Ok(sink) => {
                let mut writer = CsvWriter::new(sink);
                let result = run_sweep_with(&spec, |record| writer.write(record));
                if let Err(e) = writer.finish() {
                    return fail_usage(e);
                }
                result
            }
            Err(e) => return fail_usage(e),
        },
    };

    match report {
        Ok(report) => {
            let summary = render_summary(&report);
            if output == OutputFormat::Summary {
                print!("{summary}");
            } else {
                eprint!("{summary}");
            }
            if report.failures.is_empty() {
                EXIT_OK
            } else {
                EXIT_FAILED
            }
        }
        Err(e) => fail_usage(e),
    }
}

fn describe_recheck(recheck: &Recheck) -> String {
    let oracle = match recheck.oracle_agrees {
        Some(true) => "oracle agrees with the evaluator's reference side",
        Some(false) => "oracle DISAGREES with the evaluator",
        None => "no oracle applies at this size",
    };
    let reproduced = if recheck.reproduced { "reproduced" } else { "NOT reproduced" };
    format!(
        "counterexample candidate at ({}): {reproduced} single-threaded; {oracle}",
        recheck.record.params
    )
}

fn cmd_search(args: &SearchArgs) -> u8 {
    let identity = match parse_identity(&args.identity) {
        Ok(id) => id,
        Err(code) => return code,
    };
    if identity.proven() {
        eprintln!(
            "identikit: note: {identity} is proven; a failure here would indicate an implementation bug, not new mathematics"
        );
    }
    let spec = build_spec(identity, &args.bounds, ConstraintMode::InDomainOnly, OutputFormat::Jsonl);

    let sink = match open_sink(&args.out) {
        Ok(sink) => sink,
        Err(e) => return fail_usage(e),
    };
    let mut writer = JsonlWriter::new(sink);
    let mut confirmed = 0u64;
    let result = run_search(&spec, args.stop_on_first, |recheck| {
        if recheck.reproduced {
            confirmed += 1;
        }
        eprintln!("identikit: {}", describe_recheck(recheck));
        writer.write(&recheck.record)
    });
    if let Err(e) = writer.finish().and_then(|mut w| w.flush()) {
        return fail_usage(e);
    }

    match result {
        Ok(report) => {
            eprintln!(
                "identikit: search over {} points: {} confirmed counterexample(s)",
                report.points_evaluated,
                report.failures.len()
            );
            if report.failures.is_empty() {
                EXIT_OK
            } else {
                EXIT_FAILED
            }
        }
        Err(e) => fail_usage(e),
    }
}

/// Worked base-case values of the two proven identities, for smoke testing.
fn seed_demo() -> u8 {
    let theorem = registry_lookup(IdentityId::TheoremPerm)
        .eval(&ParamPoint::kmn(1, 2, 3))
        .expect("base case evaluates");
    println!("# theorem-perm base case k=1: both sides equal m");
    print_record(&theorem);

    for k in [1u64, 2] {
        let case = DyadicCase::new(1, k).expect("j=1 cases are valid");
        let bs: Vec<u64> = compute_terms(&case).iter().map(|t| t.b).collect();
        println!(
            "# dyadic width j=1, k={k}: a={}, truncation values b = {bs:?}",
            case.a()
        );
        print_record(&identikit::dyadic::verify_dyadic(&case));
    }
    EXIT_OK
}
