use std::io::Write;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use quadperm::{HyperKind, SymmetryGroup};
use quadperm_cli::commands::{self, Condition, Context, Moves, Output, RepRequest};

/// Generalized permutations and one-cylinder half-translation surfaces.
#[derive(Debug, Parser)]
#[command(name = "quadperm", version, about)]
struct Cli {
    /// Print the JSON document instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Seed of every randomized choice.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Symmetries identifying permutations, among relabel, rotate, swap and reverse.
    #[arg(long, global = true, default_value = "relabel,rotate,swap")]
    sym: SymmetryGroup,
    /// Largest number of positions `r + l` enumerated.
    #[arg(long, global = true, default_value_t = 16)]
    limit: usize,
    /// Number of candidates tried by searches.
    #[arg(long, global = true, default_value_t = 100_000)]
    budget: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum ConditionArg {
    Weak,
    Red,
    Star,
    Irreducible,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Validate a permutation and print its canonical form.
    Parse { permutation: String },
    /// Stratum of the suspensions of a permutation.
    Stratum { permutation: String },
    /// Test one of the reducibility conditions.
    Check {
        #[arg(value_enum)]
        condition: ConditionArg,
        permutation: String,
    },
    /// Build the double cover of an integer suspension.
    Suspend {
        permutation: String,
        #[arg(long)]
        lambda: Option<String>,
    },
    /// Vertical saddle connections of an integer suspension.
    Spectrum {
        permutation: String,
        #[arg(long)]
        lambda: Option<String>,
    },
    /// Vertical cylinders of an integer suspension.
    Decompose {
        permutation: String,
        #[arg(long)]
        lambda: Option<String>,
    },
    /// Angle of a simple vertical cylinder, by default the one through the seam.
    Angle {
        permutation: String,
        #[arg(long)]
        lambda: Option<String>,
        #[arg(long)]
        cylinder: Option<usize>,
    },
    /// Permutation encoding a one-cylinder vertical direction.
    Vperm {
        permutation: String,
        #[arg(long)]
        lambda: Option<String>,
    },
    /// SL(2,Z) orbit of the double cover and its one-cylinder classes.
    Orbit {
        permutation: String,
        #[arg(long)]
        lambda: Option<String>,
        #[arg(long, default_value_t = 250_000)]
        cap: usize,
    },
    /// List the classes of a stratum or of a type.
    Enumerate {
        #[arg(long, allow_hyphen_values = true)]
        pattern: Option<String>,
        #[arg(long = "type", value_name = "R,L")]
        kind: Option<String>,
    },
    /// Merge the classes of a stratum into candidate components.
    Classify {
        #[arg(long, allow_hyphen_values = true)]
        pattern: String,
        #[arg(long)]
        no_vertical: bool,
        #[arg(long)]
        no_orbit: bool,
        #[arg(long)]
        no_excise: bool,
        /// Append one tab-separated line per class.
        #[arg(long)]
        tsv: bool,
    },
    /// Cut out a simple vertical cylinder.
    Excise {
        permutation: String,
        /// List every available excision.
        #[arg(long)]
        all: bool,
    },
    /// Bubble a handle with angle parameter `s`.
    Bubble {
        permutation: String,
        #[arg(long)]
        s: u64,
    },
    /// Named representatives.
    Rep {
        #[command(subcommand)]
        which: RepCommand,
    },
    /// Run the reproduction suite.
    ReproduceAppendix {
        /// A check id, the prefix of an id before its dot, or a criterion number.
        #[arg(long)]
        only: Option<String>,
    },
}

#[derive(Debug, Subcommand)]
enum RepCommand {
    Pi1 { r: usize, l: usize },
    Pi2 { r: usize, l: usize },
    Pi1a { r: usize, l: usize, a: usize },
    /// One of the exceptional representatives, such as `-1,9` or `12-II`.
    Irr {
        #[arg(allow_hyphen_values = true)]
        name: String,
    },
}

fn run(cli: Cli) -> Result<Output, String> {
    let ctx = Context { sym: cli.sym, seed: cli.seed, limit: cli.limit, budget: cli.budget };
    let lib = |r: quadperm::Result<Output>| r.map_err(|e| e.to_string());
    match cli.command {
        Command::Parse { permutation } => lib(commands::parse(&permutation, &ctx)),
        Command::Stratum { permutation } => lib(commands::stratum(&permutation, &ctx)),
        Command::Check { condition, permutation } => {
            let condition = match condition {
                ConditionArg::Weak => Condition::Weak,
                ConditionArg::Red => Condition::Red,
                ConditionArg::Star => Condition::Star,
                ConditionArg::Irreducible => Condition::Irreducible,
            };
            lib(commands::check(condition, &permutation))
        }
        Command::Suspend { permutation, lambda } => lib(commands::suspend(&permutation, lambda.as_deref(), &ctx)),
        Command::Spectrum { permutation, lambda } => lib(commands::spectrum(&permutation, lambda.as_deref(), &ctx)),
        Command::Decompose { permutation, lambda } => lib(commands::decompose(&permutation, lambda.as_deref(), &ctx)),
        Command::Angle { permutation, lambda, cylinder } => {
            lib(commands::angle(&permutation, lambda.as_deref(), cylinder, &ctx))
        }
        Command::Vperm { permutation, lambda } => lib(commands::vperm(&permutation, lambda.as_deref(), &ctx)),
        Command::Orbit { permutation, lambda, cap } => lib(commands::orbit(&permutation, lambda.as_deref(), cap, &ctx)),
        Command::Enumerate { pattern, kind } => lib(commands::enumerate(pattern.as_deref(), kind.as_deref(), &ctx)),
        Command::Classify { pattern, no_vertical, no_orbit, no_excise, tsv } => {
            let moves = Moves { vertical: !no_vertical, orbit: !no_orbit, excise: !no_excise };
            lib(commands::classify(&pattern, moves, tsv, &ctx))
        }
        Command::Excise { permutation, all } => lib(commands::excise(&permutation, all)),
        Command::Bubble { permutation, s } => lib(commands::bubble_handle(&permutation, s, &ctx)),
        Command::Rep { which } => {
            let request = match which {
                RepCommand::Pi1 { r, l } => RepRequest::Hyperelliptic { kind: HyperKind::Pi1, r, l, a: None },
                RepCommand::Pi2 { r, l } => RepRequest::Hyperelliptic { kind: HyperKind::Pi2, r, l, a: None },
                RepCommand::Pi1a { r, l, a } => RepRequest::Hyperelliptic { kind: HyperKind::Pi1a, r, l, a: Some(a) },
                RepCommand::Irr { name } => RepRequest::Irreducible(name),
            };
            lib(commands::rep(&request))
        }
        Command::ReproduceAppendix { only } => commands::reproduce_appendix(only.as_deref(), &ctx),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let json = cli.json;
    match run(cli) {
        Ok(out) => {
            let body = if json { out.to_json() } else { out.text };
            let mut stdout = std::io::stdout().lock();
            let _ = writeln!(stdout, "{body}");
            ExitCode::from(out.exit_code as u8)
        }
        Err(message) => {
            eprintln!("error: {message}");
            ExitCode::from(2)
        }
    }
}
