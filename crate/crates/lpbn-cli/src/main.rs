//! Command-line front end: parse programs, run the analysis, compute
//! models, export graphs, and cross-check against the brute-force oracle.
//!
//! Exit codes: 0 on success, 1 on input errors (I/O, syntax), 2 when a
//! search budget or size cap was exhausted and the output is partial.

use std::fmt::Write as _;
use std::io::Read;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use lpbn::analyzer::{solve, AnalyzeOptions, SolveMethod};
use lpbn::bn::{encode, fixed_points, influence_graph, IgMode};
use lpbn::fixpoint::{least_fixpoint, quasi_to_program};
use lpbn::program::{AtomId, AtomTable, Program};
use lpbn::sgraph::{dependence_graph, positive_dependence_graph, CycleWitness};
use lpbn::{analyze, oracle, parse_program, report_to_json, report_to_text};

#[derive(Parser)]
#[command(
    name = "lpbn",
    version,
    about = "Static analysis and stable-model computation for ground normal logic programs"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run every graph criterion, combine the count bounds, and (for small
    /// programs) attach the exact stable models
    Analyze(AnalyzeArgs),
    /// Compute the stable models, one atom set per line
    Solve(SolveArgs),
    /// Compute the supported models (fixed points of the encoding)
    Supported(CommonArgs),
    /// List the fixed points of the encoding as bit-strings
    Fixpoints(CommonArgs),
    /// Print the least fixpoint as a program of purely negative rules
    Lfp(CommonArgs),
    /// Export the dependence, positive dependence, or influence graph as DOT
    Export(ExportArgs),
    /// Brute-force cross-checks for small instances
    Oracle(OracleArgs),
}

#[derive(Args)]
struct CommonArgs {
    /// Input file, or '-' for stdin
    input: String,
    /// Simple-cycle enumeration budget (default 1000000, or $LPBN_BUDGET)
    #[arg(long)]
    cycle_budget: Option<usize>,
    /// Fixed-point search node budget (default 1000000, or $LPBN_BUDGET)
    #[arg(long)]
    search_budget: Option<usize>,
    /// Least-fixpoint quasi-rule budget (default 1000000, or $LPBN_BUDGET)
    #[arg(long)]
    lfp_budget: Option<usize>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Human,
    Json,
}

#[derive(Args)]
struct AnalyzeArgs {
    #[command(flatten)]
    common: CommonArgs,
    /// Output format
    #[arg(long, value_enum, default_value = "human")]
    format: Format,
    /// Attach exact models (the default when the program fits the cap)
    #[arg(long, conflicts_with = "no_solve")]
    solve: bool,
    /// Skip exact solving
    #[arg(long)]
    no_solve: bool,
    /// Atom-count cap for exact solving
    #[arg(long, default_value_t = 20)]
    solve_cap: usize,
}

#[derive(Clone, Copy, ValueEnum)]
enum MethodArg {
    FixedpointFilter,
    Lfp,
    Bruteforce,
}

#[derive(Args)]
struct SolveArgs {
    #[command(flatten)]
    common: CommonArgs,
    /// Solving route
    #[arg(long, value_enum, default_value = "fixedpoint-filter")]
    method: MethodArg,
}

#[derive(Clone, Copy, ValueEnum)]
enum GraphKind {
    Dg,
    Pdg,
    Ig,
}

#[derive(Clone, Copy, ValueEnum)]
enum IgModeArg {
    Semantic,
    Syntactic,
}

#[derive(Args)]
struct ExportArgs {
    #[command(flatten)]
    common: CommonArgs,
    /// Which graph to export
    #[arg(long, value_enum, default_value = "dg")]
    graph: GraphKind,
    /// Influence-graph construction mode
    #[arg(long, value_enum, default_value = "semantic")]
    ig_mode: IgModeArg,
    /// Per-function support cap for the semantic influence graph
    #[arg(long, default_value_t = 24)]
    ig_cap: usize,
}

#[derive(Args)]
struct OracleArgs {
    #[command(subcommand)]
    what: OracleWhat,
}

#[derive(Subcommand)]
enum OracleWhat {
    /// All stable models by scanning every interpretation
    Stable(CommonArgs),
    /// All supported models by scanning every interpretation
    Supported(CommonArgs),
    /// All fixed points by scanning every state
    Fixpoints(CommonArgs),
    /// All simple signed cycles of the dependence graph
    Cycles {
        #[command(flatten)]
        common: CommonArgs,
        /// Maximum number of cycles to list
        #[arg(long, default_value_t = 10_000)]
        cap: usize,
    },
}

enum CliError {
    /// Unreadable or unparsable input.
    Input(String),
    /// A budget or cap ran out; partial output was already printed.
    Budget(String),
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Input(_) => 1,
            CliError::Budget(_) => 2,
        }
    }

    fn message(&self) -> &str {
        match self {
            CliError::Input(m) | CliError::Budget(m) => m,
        }
    }
}

fn env_budget() -> Result<Option<usize>, CliError> {
    match std::env::var("LPBN_BUDGET") {
        Err(_) => Ok(None),
        Ok(v) => v
            .parse::<usize>()
            .map(Some)
            .map_err(|_| CliError::Input(format!("LPBN_BUDGET is not a number: {v:?}"))),
    }
}

fn options_from(common: &CommonArgs) -> Result<AnalyzeOptions, CliError> {
    let env = env_budget()?;
    let defaults = AnalyzeOptions::default();
    Ok(AnalyzeOptions {
        cycle_budget: common.cycle_budget.or(env).unwrap_or(defaults.cycle_budget),
        search_budget: common
            .search_budget
            .or(env)
            .unwrap_or(defaults.search_budget),
        lfp_budget: common.lfp_budget.or(env).unwrap_or(defaults.lfp_budget),
        ..defaults
    })
}

fn load_program(input: &str) -> Result<Program, CliError> {
    let text = if input == "-" {
        let mut s = String::new();
        std::io::stdin()
            .read_to_string(&mut s)
            .map_err(|e| CliError::Input(format!("cannot read stdin: {e}")))?;
        s
    } else {
        std::fs::read_to_string(input)
            .map_err(|e| CliError::Input(format!("cannot read {input}: {e}")))?
    };
    parse_program(&text).map_err(|e| CliError::Input(format!("{input}:{e}")))
}

fn print_models(program: &Program, models: &[lpbn::Interpretation]) {
    for m in models {
        println!("{}", m.display_set(program.atoms()));
    }
}

fn cmd_analyze(args: &AnalyzeArgs) -> Result<(), CliError> {
    let program = load_program(&args.common.input)?;
    let mut options = options_from(&args.common)?;
    options.solve = !args.no_solve;
    options.solve_cap = args.solve_cap;
    let report = analyze(&program, &options)
        .map_err(|e| CliError::Input(format!("analysis failed: {e}")))?;
    match args.format {
        Format::Human => print!("{}", report_to_text(&report, program.atoms())),
        Format::Json => print!("{}", report_to_json(&report, program.atoms())),
    }
    if report.exhausted {
        return Err(CliError::Budget(
            "a budget was exhausted; the report is partial".to_string(),
        ));
    }
    Ok(())
}

fn cmd_solve(args: &SolveArgs) -> Result<(), CliError> {
    let program = load_program(&args.common.input)?;
    let options = options_from(&args.common)?;
    let method = match args.method {
        MethodArg::FixedpointFilter => SolveMethod::FixedpointFilter,
        MethodArg::Lfp => SolveMethod::Lfp,
        MethodArg::Bruteforce => SolveMethod::BruteForce,
    };
    match solve(&program, method, &options) {
        Ok(models) => {
            print_models(&program, &models);
            Ok(())
        }
        Err(e) => Err(CliError::Budget(e.to_string())),
    }
}

fn cmd_supported(common: &CommonArgs) -> Result<(), CliError> {
    let program = load_program(&common.input)?;
    let options = options_from(common)?;
    let network = encode(&program);
    match fixed_points(&network, options.search_budget) {
        Ok(states) => {
            print_models(&program, &states);
            Ok(())
        }
        Err(e) => {
            print_models(&program, &e.partial);
            Err(CliError::Budget(format!("{e}; listed models are partial")))
        }
    }
}

fn cmd_fixpoints(common: &CommonArgs) -> Result<(), CliError> {
    let program = load_program(&common.input)?;
    let options = options_from(common)?;
    let n = program.atom_count();
    let network = encode(&program);
    let (states, err) = match fixed_points(&network, options.search_budget) {
        Ok(states) => (states, None),
        Err(e) => (e.partial.clone(), Some(e)),
    };
    for s in &states {
        println!("{} {}", s.to_bitstring(n), s.display_set(program.atoms()));
    }
    match err {
        None => Ok(()),
        Some(e) => Err(CliError::Budget(format!("{e}; listed states are partial"))),
    }
}

fn cmd_lfp(common: &CommonArgs) -> Result<(), CliError> {
    let program = load_program(&common.input)?;
    let options = options_from(common)?;
    match least_fixpoint(&program, options.lfp_budget) {
        Ok(lfp) => {
            print!("{}", quasi_to_program(&program, &lfp));
            Ok(())
        }
        Err(e) => {
            print!("{}", quasi_to_program(&program, &e.partial));
            Err(CliError::Budget(format!("{e}; listed rules are partial")))
        }
    }
}

fn cmd_export(args: &ExportArgs) -> Result<(), CliError> {
    let program = load_program(&args.common.input)?;
    let atoms = program.atoms().clone();
    let label = move |v: usize| atoms.name(AtomId(v as u32)).to_string();
    match args.graph {
        GraphKind::Dg => print!("{}", dependence_graph(&program).to_dot("dg", label)),
        GraphKind::Pdg => print!(
            "{}",
            positive_dependence_graph(&program).to_dot("pdg", label)
        ),
        GraphKind::Ig => {
            let network = encode(&program);
            let (graph, note) = match args.ig_mode {
                IgModeArg::Syntactic => (
                    influence_graph(&network, IgMode::Syntactic, args.ig_cap)
                        .expect("syntactic mode has no cap"),
                    "syntactic (overapproximation)".to_string(),
                ),
                IgModeArg::Semantic => {
                    match influence_graph(&network, IgMode::Semantic, args.ig_cap) {
                        Ok(g) => (g, "semantic (exact)".to_string()),
                        Err(e) => (
                            influence_graph(&network, IgMode::Syntactic, args.ig_cap)
                                .expect("syntactic mode has no cap"),
                            format!("syntactic (approximate fallback: {e})"),
                        ),
                    }
                }
            };
            println!("// influence graph mode: {note}");
            print!("{}", graph.to_dot("ig", label));
        }
    }
    Ok(())
}

fn render_cycle(atoms: &AtomTable, w: &CycleWitness) -> String {
    let mut s = String::new();
    for (i, &v) in w.vertices.iter().enumerate() {
        if i > 0 {
            write!(s, " -({})-> ", w.signs[i - 1]).unwrap();
        }
        s.push_str(atoms.name(AtomId(v as u32)));
    }
    s
}

fn cmd_oracle(args: &OracleArgs) -> Result<(), CliError> {
    match &args.what {
        OracleWhat::Stable(common) => {
            let program = load_program(&common.input)?;
            let models = oracle::enumerate_stable_bruteforce(&program)
                .map_err(|e| CliError::Budget(e.to_string()))?;
            print_models(&program, &models);
            Ok(())
        }
        OracleWhat::Supported(common) => {
            let program = load_program(&common.input)?;
            let models = oracle::enumerate_supported_bruteforce(&program)
                .map_err(|e| CliError::Budget(e.to_string()))?;
            print_models(&program, &models);
            Ok(())
        }
        OracleWhat::Fixpoints(common) => {
            let program = load_program(&common.input)?;
            let n = program.atom_count();
            let states = oracle::enumerate_fixed_points_bruteforce(&encode(&program))
                .map_err(|e| CliError::Budget(e.to_string()))?;
            for s in &states {
                println!("{} {}", s.to_bitstring(n), s.display_set(program.atoms()));
            }
            Ok(())
        }
        OracleWhat::Cycles { common, cap } => {
            let program = load_program(&common.input)?;
            let graph = dependence_graph(&program);
            let (cycles, err) = match oracle::enumerate_signed_cycles(&graph, *cap) {
                Ok(cycles) => (cycles, None),
                Err(e) => (e.partial.clone(), Some(e)),
            };
            for w in &cycles {
                println!("{} {}", w.sign(), render_cycle(program.atoms(), w));
            }
            match err {
                None => Ok(()),
                Some(e) => Err(CliError::Budget(format!("{e}; listed cycles are partial"))),
            }
        }
    }
}

fn run(cli: &Cli) -> Result<(), CliError> {
    match &cli.command {
        Command::Analyze(args) => cmd_analyze(args),
        Command::Solve(args) => cmd_solve(args),
        Command::Supported(common) => cmd_supported(common),
        Command::Fixpoints(common) => cmd_fixpoints(common),
        Command::Lfp(common) => cmd_lfp(common),
        Command::Export(args) => cmd_export(args),
        Command::Oracle(args) => cmd_oracle(args),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                print!("{e}");
                return ExitCode::SUCCESS;
            }
            eprint!("{e}");
            return ExitCode::from(1);
        }
    };
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {}", e.message());
            ExitCode::from(e.code())
        }
    }
}
