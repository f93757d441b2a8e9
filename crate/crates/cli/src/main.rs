use std::process::ExitCode;

use clap::{Parser, Subcommand};
use mediant::num_bigint::BigUint;
use mediant::render::{
    self, cmd_approx, cmd_farey, cmd_fusc, cmd_locate, cmd_stern, cmd_topograph, cmd_tree,
    cmd_verify, Format, Kind, RenderConfig, DEFAULT_DEPTH_CAP, EXIT_USAGE,
};
use mediant::tree::TreeKind;

#[derive(Parser)]
#[command(name = "mediant", version, about = "Exact enumeration of the positive rationals")]
struct Cli {
    /// Largest depth accepted by tree, topograph and verify.
    #[arg(long, global = true, default_value_t = DEFAULT_DEPTH_CAP)]
    max_depth_cap: usize,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print levels 0..=depth of a tree.
    Tree {
        /// cw, sb, matrix or topograph
        #[arg(long)]
        kind: Kind,
        #[arg(long)]
        depth: usize,
        /// text, json or dot
        #[arg(long, default_value = "text")]
        format: Format,
    },
    /// Path and breadth-first index of a positive fraction.
    Locate {
        /// cw or sb
        #[arg(long)]
        tree: TreeKind,
        value: String,
    },
    /// The first N terms of Stern's diatomic sequence.
    Stern {
        #[arg(long)]
        count: u64,
    },
    /// Number of hyperbinary representations of N.
    Fusc { n: u64 },
    /// Check both shadow maps and the topograph construction exhaustively.
    Verify {
        #[arg(long)]
        depth: usize,
        /// Worker threads for the exhaustive walk.
        #[arg(long, default_value_t = 1)]
        jobs: usize,
    },
    /// Closest fraction with bounded denominator.
    Approx {
        /// p/q or a decimal such as 3.14159
        #[arg(long)]
        target: String,
        #[arg(long)]
        max_den: BigUint,
    },
    /// Reduced fractions in [0, 1] with denominator at most D.
    Farey {
        #[arg(long)]
        max_den: u64,
    },
    /// The forward flow of the topograph from the edge {0, 1/0}.
    Topograph {
        #[arg(long)]
        depth: usize,
        #[arg(long, default_value = "text")]
        format: Format,
    },
}

fn run(cli: Cli) -> Result<ExitCode, mediant::Error> {
    let cap = cli.max_depth_cap;
    let out = match cli.command {
        Command::Tree {
            kind,
            depth,
            format,
        } => cmd_tree(&RenderConfig::new(kind, depth, format, cap)?),
        Command::Topograph { depth, format } => {
            render::check_depth(depth, cap)?;
            cmd_topograph(depth, format)
        }
        Command::Locate { tree, value } => render::to_json(&cmd_locate(tree, &value)?),
        Command::Stern { count } => cmd_stern(count),
        Command::Fusc { n } => cmd_fusc(n),
        Command::Farey { max_den } => cmd_farey(max_den)?,
        Command::Approx { target, max_den } => render::to_json(&cmd_approx(&target, &max_den)?),
        Command::Verify { depth, jobs } => {
            let outcome = cmd_verify(depth, Some(jobs), cap)?;
            print!("{}", outcome.to_json());
            eprintln!(
                "theorem: {} nodes in {:?}; topograph: {} frames in {:?}",
                outcome.theorem.nodes,
                outcome.theorem.wall_time,
                outcome.topograph.nodes,
                outcome.topograph.wall_time,
            );
            if let Some(path) = outcome.first_failure() {
                eprintln!("first failure at path {path:?}", path = path.to_string());
            }
            return Ok(ExitCode::from(outcome.exit_code() as u8));
        }
    };
    print!("{out}");
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(EXIT_USAGE as u8)
        }
    }
}
