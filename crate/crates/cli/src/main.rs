use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

mod commands;

#[derive(Parser)]
#[command(name = "soergel", version, about = "n-cohomology tables from Bruhat order complexes")]
struct Cli {
    /// Worker threads (falls back to SOERGEL_THREADS, then all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,

    /// Write the result here instead of stdout.
    #[arg(long, short, global = true)]
    output: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate the n-cohomology table of an orbit and a character.
    Table(CaseArgs),
    /// List A, D and the strata with their homology.
    Strata(CaseArgs),
    /// Run verification checks, either over a sweep or on one case.
    Verify(VerifyArgs),
    /// Hasse diagram of the Bruhat covers as a Graphviz digraph.
    Hasse(HasseArgs),
    /// Degree coincidence for the unitary pair U(a+b+1), U(a+b).
    Ggp(GgpArgs),
    /// The sign assignment on every cover edge.
    DumpSigns(DumpSignsArgs),
    /// Bases and differentials of a complex.
    DumpComplex(DumpComplexArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Dot,
    Text,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum SystemType {
    #[value(name = "A", alias = "a")]
    A,
}

#[derive(Args, Clone, Debug)]
struct SystemArgs {
    /// Root system type; only A is built in.
    #[arg(long = "type", value_enum, requires = "n", conflicts_with = "root_data")]
    system_type: Option<SystemType>,

    /// Ambient dimension: type A_{n-1} in n coordinates.
    #[arg(long)]
    n: Option<usize>,

    /// JSON root-data document (ambient_dim, simple_roots, optional compact data).
    #[arg(long, conflicts_with = "n")]
    root_data: Option<PathBuf>,

    /// Signature pattern of + and - signs; compact roots join equal signs.
    #[arg(long)]
    pattern: Option<String>,

    /// Lift the default ceiling of n = 8 (|W| = 40320).
    #[arg(long)]
    allow_large: bool,
}

#[derive(Args, Clone, Debug)]
struct CaseArgs {
    #[command(flatten)]
    system: SystemArgs,

    /// Character coordinates, comma separated; fractions like -1/2 allowed. Defaults to -rho.
    #[arg(long, allow_hyphen_values = true)]
    lambda: Option<String>,

    /// Orbit representative: "id", "w0" or a word like "s1.s2".
    #[arg(long, default_value = "id")]
    rep: String,

    /// Evaluate even when lambda + rho is not dominant.
    #[arg(long)]
    allow_nondominant: bool,

    /// Solve the sign system with random free variables from this seed.
    #[arg(long)]
    seed: Option<u64>,

    #[arg(long, value_enum)]
    format: Option<Format>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum SuiteArg {
    All,
    Nonvanishing,
    Serre,
    Corollary,
    Appendix,
    W0,
    Ggp,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum CharactersArg {
    Tdlds,
    TdldsZero,
    Samples,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum PatternsArg {
    All,
    Alternating,
}

#[derive(Args, Clone, Debug)]
struct VerifyArgs {
    #[arg(long, value_enum, default_value = "all")]
    suite: SuiteArg,

    /// Sweep n = min-n..=max-n (ignored when a single system is given).
    #[arg(long, default_value_t = 5)]
    max_n: usize,

    #[arg(long, default_value_t = 1)]
    min_n: usize,

    #[arg(long, value_enum, default_value = "samples")]
    characters: CharactersArg,

    #[arg(long, value_enum, default_value = "all")]
    patterns: PatternsArg,

    /// Include elapsed milliseconds in each report.
    #[arg(long)]
    timings: bool,

    #[command(flatten)]
    case: CaseArgs,
}

#[derive(Args, Clone, Debug)]
struct HasseArgs {
    #[command(flatten)]
    system: SystemArgs,

    /// Highlight these elements (comma-separated words).
    #[arg(long)]
    highlight: Option<String>,

    /// Highlight the stratum c of the orbit through --rep against --lambda.
    #[arg(long, conflicts_with = "highlight")]
    stratum: Option<usize>,

    #[arg(long, allow_hyphen_values = true)]
    lambda: Option<String>,

    #[arg(long, default_value = "id")]
    rep: String,
}

#[derive(Args, Clone, Debug)]
struct GgpArgs {
    a: usize,
    b: usize,

    #[arg(long)]
    seed: Option<u64>,

    #[arg(long, value_enum)]
    format: Option<Format>,
}

#[derive(Args, Clone, Debug)]
struct DumpSignsArgs {
    #[command(flatten)]
    system: SystemArgs,

    #[arg(long)]
    seed: Option<u64>,

    #[arg(long, value_enum)]
    format: Option<Format>,
}

#[derive(Args, Clone, Debug)]
struct DumpComplexArgs {
    #[command(flatten)]
    case: CaseArgs,

    /// Elements spanning the complex (comma-separated words); the whole group by default.
    #[arg(long)]
    elements: Option<String>,

    /// Use the stratum c of the orbit through --rep against --lambda instead.
    #[arg(long, conflicts_with = "elements")]
    stratum: Option<usize>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let threads = cli.threads.or_else(|| std::env::var("SOERGEL_THREADS").ok().and_then(|v| v.parse().ok()));
    if let Some(t) = threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(t).build_global() {
            eprintln!("error: thread pool: {}", e);
            return ExitCode::from(2);
        }
    }
    let result = match &cli.command {
        Command::Table(a) => commands::table(a),
        Command::Strata(a) => commands::strata(a),
        Command::Verify(a) => commands::verify(a),
        Command::Hasse(a) => commands::hasse(a),
        Command::Ggp(a) => commands::ggp(a),
        Command::DumpSigns(a) => commands::dump_signs(a),
        Command::DumpComplex(a) => commands::dump_complex(a),
    };
    match result {
        Ok(out) => {
            if let Err(e) = commands::emit(cli.output.as_deref(), &out.text) {
                eprintln!("error: {}", e);
                return ExitCode::from(2);
            }
            ExitCode::from(out.code)
        }
        Err(e) => {
            eprintln!("error: {}", e.message);
            ExitCode::from(e.code)
        }
    }
}
