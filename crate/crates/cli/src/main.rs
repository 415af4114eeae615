use std::path::PathBuf;
use std::process::ExitCode;

use clap::{ArgGroup, Parser, Subcommand, ValueEnum};

mod commands;

use commands::Report;

/// Z₂- and Z-embeddings of graphs into surfaces: crossing parities,
/// compatibility, factorizations, search and verification.
///
/// Exit codes: 0 affirmative, 1 negative (incompatible, not embeddable,
/// not an embedding), 2 unknown (budget exhausted), 3 input error.
#[derive(Parser, Debug)]
#[command(name = "z2embed", version)]
struct Cli {
    /// Print `key = value` lines instead of the human-readable report.
    #[arg(long, global = true)]
    kv: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum FactorMode {
    Even,
    Odd,
    Alternating,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Crossing parities (or signed crossing numbers) of a plane drawing.
    Crossings {
        #[arg(long)]
        drawing: PathBuf,
        #[arg(long)]
        signed: bool,
    },
    /// Is the graph compatible modulo 2 with a matrix?
    Compat {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        matrix: PathBuf,
    },
    /// Build a plane drawing whose crossing parities equal a matrix.
    Realize {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        matrix: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
    /// Factor a symmetric GF(2) or an alternating integer matrix.
    Factor {
        #[arg(long, value_enum)]
        mode: FactorMode,
        #[arg(long)]
        matrix: PathBuf,
    },
    /// Decide Z₂-embeddability into a given surface.
    #[command(group(ArgGroup::new("target").required(true).args(["genus", "crosscaps", "euler"])))]
    Solve {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        genus: Option<usize>,
        #[arg(long)]
        crosscaps: Option<usize>,
        #[arg(long, allow_hyphen_values = true)]
        euler: Option<i64>,
        #[arg(long)]
        budget_nodes: Option<u64>,
        /// Wall-clock cap in seconds.
        #[arg(long)]
        time_cap: Option<u64>,
        #[arg(long, default_value_t = 1)]
        threads: usize,
        #[arg(long)]
        witness_out: Option<PathBuf>,
    },
    /// Genus lower bounds for K_{m,n} or K_{2n}.
    #[command(group(ArgGroup::new("which").required(true).args(["kmn", "k2n"])))]
    Bound {
        #[arg(long, num_args = 2, value_names = ["M", "N"])]
        kmn: Option<Vec<u64>>,
        #[arg(long, value_name = "N")]
        k2n: Option<u64>,
    },
    /// Splice ribbon passes from a factor into a plane drawing.
    Construct {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        drawing: PathBuf,
        #[arg(long)]
        factor: PathBuf,
        /// `S:g` or `M:m`.
        #[arg(long)]
        surface: String,
        /// Integer factor and signed passes.
        #[arg(long)]
        z: bool,
        /// Write here instead of standard output.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check a surface drawing pair by pair.
    Verify {
        #[arg(long)]
        surface_drawing: PathBuf,
        #[arg(long)]
        z: bool,
        /// Also run the independent geometric check.
        #[arg(long)]
        geometric: bool,
    },
    /// Read the compatible matrix back from a surface drawing.
    Extract {
        #[arg(long)]
        surface_drawing: PathBuf,
        #[arg(long)]
        z: bool,
    },
}

fn run(cli: &Cli) -> Result<Report, String> {
    match &cli.command {
        Command::Crossings { drawing, signed } => commands::crossings(drawing, *signed),
        Command::Compat { graph, matrix } => commands::compat(graph, matrix),
        Command::Realize { graph, matrix, out } => commands::realize(graph, matrix, out),
        Command::Factor { mode, matrix } => commands::factor(*mode, matrix),
        Command::Solve { graph, genus, crosscaps, euler, budget_nodes, time_cap, threads, witness_out } => {
            let target = match (genus, crosscaps, euler) {
                (Some(g), _, _) => commands::Target::Genus(*g),
                (_, Some(m), _) => commands::Target::Crosscaps(*m),
                (_, _, Some(e)) => commands::Target::Euler(*e),
                _ => unreachable!("clap enforces one target"),
            };
            commands::solve(graph, target, *budget_nodes, *time_cap, *threads, witness_out.as_deref())
        }
        Command::Bound { kmn, k2n } => Ok(commands::bound(kmn.as_deref(), *k2n)),
        Command::Construct { graph, drawing, factor, surface, z, out } => {
            commands::construct(graph, drawing, factor, surface, *z, out.as_deref())
        }
        Command::Verify { surface_drawing, z, geometric } => commands::verify(surface_drawing, *z, *geometric),
        Command::Extract { surface_drawing, z } => commands::extract(surface_drawing, *z),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 3 } else { 0 });
        }
    };
    match run(&cli) {
        Ok(report) => {
            print!("{}", if cli.kv { report.kv_text() } else { report.human_text() });
            ExitCode::from(report.status as u8)
        }
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(3)
        }
    }
}
