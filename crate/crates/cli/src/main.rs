use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

mod commands;

#[derive(Parser, Debug)]
#[command(
    name = "ceptool",
    version,
    about = "Exact correlated equilibria of x*y games"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

/// Where the game comes from: the `n`-th example game or a JSON file.
#[derive(clap::Args, Debug, Clone)]
#[group(required = true, multiple = false)]
pub struct GameSource {
    /// Example game with strategies +-1/n, ..., +-1
    #[arg(long)]
    n: Option<usize>,
    /// Game file: {"cx": [...], "cy": [...]}
    #[arg(long)]
    game: Option<PathBuf>,
}

#[derive(Copy, Clone, Debug, ValueEnum)]
pub enum Method {
    /// Deviation sums for every recommendation and deviation
    Def,
    /// Vanishing x*y projections (needs xy != 0 on the support)
    Proj,
}

#[derive(Copy, Clone, Debug, ValueEnum)]
pub enum AlphaForm {
    /// alpha = C / sqrt(5)
    Sqrt5,
    /// alpha = C, exact
    Rational,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Enumerate extreme Nash equilibria
    Nash {
        #[command(flatten)]
        source: GameSource,
        /// Write the equilibria as JSON
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Enumerate extreme correlated equilibria through cycle patterns
    Cycles {
        #[command(flatten)]
        source: GameSource,
        /// Write the measures as JSON
        #[arg(long)]
        out: Option<PathBuf>,
        /// Write one SVG support plot per measure into this directory
        #[arg(long, value_name = "DIR")]
        emit_svg: Option<PathBuf>,
    },
    /// Enumerate vertices of the correlated-equilibrium polytope
    Vertices {
        #[command(flatten)]
        source: GameSource,
        /// Compare with the normalized cycle measures
        #[arg(long)]
        compare_cycles: bool,
        /// Print every vertex
        #[arg(long)]
        dump: bool,
    },
    /// Check whether a measure is a correlated equilibrium
    Check {
        #[arg(long)]
        game: PathBuf,
        #[arg(long)]
        measure: PathBuf,
        #[arg(long, value_enum, default_value = "def")]
        method: Method,
    },
    /// Rotation equilibrium with infinite support
    Ergodic {
        #[arg(long, default_value = "0.2")]
        a: String,
        #[arg(long, default_value = "0.8")]
        b: String,
        /// Rotation amount C; see --alpha-form
        #[arg(long, default_value = "1")]
        alpha_num: String,
        #[arg(long, value_enum, default_value = "sqrt5")]
        alpha_form: AlphaForm,
        /// Draw this many samples and report their statistics
        #[arg(long)]
        samples: Option<usize>,
        #[arg(long, default_value_t = commands::DEFAULT_SEED)]
        seed: u64,
        #[arg(long, default_value_t = 16)]
        bins: usize,
        #[arg(long, default_value_t = 10_000)]
        quad_points: usize,
        /// Write the support plot to this file
        #[arg(long, value_name = "FILE")]
        emit_svg: Option<PathBuf>,
    },
    /// Moment vectors and moment-preserving splits
    Moments {
        #[arg(long, required_unless_present = "demo")]
        measure: Option<PathBuf>,
        /// Comma-separated monomials, e.g. "1,x,y,xy,x^2y"
        #[arg(long, default_value = "1,x,y")]
        basis: String,
        /// Split an extreme equilibrium with more atoms than D moments
        #[arg(long, value_name = "D")]
        demo: Option<usize>,
        /// Write the two halves of the split as JSON
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run the cross-validation suite
    Report {
        /// Write summary.txt and the support plots here
        #[arg(long, value_name = "DIR")]
        out: Option<PathBuf>,
        /// Include the n = 3 vertex enumeration
        #[arg(long)]
        big: bool,
    },
}

fn configure_threads() -> anyhow::Result<()> {
    if let Ok(v) = std::env::var("CEPTOOL_THREADS") {
        let n: usize = v.parse().map_err(|_| {
            anyhow::anyhow!("CEPTOOL_THREADS must be a positive integer, got {v:?}")
        })?;
        rayon::ThreadPoolBuilder::new()
            .num_threads(n.max(1))
            .build_global()?;
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = configure_threads().and_then(|_| match cli.command {
        Command::Nash { source, out } => commands::nash(&source, out.as_deref()),
        Command::Cycles {
            source,
            out,
            emit_svg,
        } => commands::cycles(&source, out.as_deref(), emit_svg.as_deref()),
        Command::Vertices {
            source,
            compare_cycles,
            dump,
        } => commands::vertices(&source, compare_cycles, dump),
        Command::Check {
            game,
            measure,
            method,
        } => commands::check(&game, &measure, method),
        Command::Ergodic {
            a,
            b,
            alpha_num,
            alpha_form,
            samples,
            seed,
            bins,
            quad_points,
            emit_svg,
        } => commands::ergodic(&commands::ErgodicArgs {
            a,
            b,
            alpha_num,
            alpha_form,
            samples,
            seed,
            bins,
            quad_points,
            emit_svg,
        }),
        Command::Moments {
            measure,
            basis,
            demo,
            out,
        } => commands::moments(measure.as_deref(), &basis, demo, out.as_deref()),
        Command::Report { out, big } => commands::report(out.as_deref(), big),
    });
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
