use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand};
use serde_json::Value;

use spinetorsion::io::parse_spine;
use spinetorsion::moves::WalkOptions;
use spinetorsion::report;
use spinetorsion::spider::RepKind;
use spinetorsion::{Error, Result};

#[derive(Parser)]
#[command(name = "spinetorsion", version, about = "Branched spines, sliding moves and twisted torsion")]
struct Cli {
    /// Add elapsed wall time to the report.
    #[arg(long, global = true)]
    timing: bool,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Parse and validate a spine file.
    Validate { file: PathBuf },
    /// List every branching of the file's triangulation.
    Branchings { file: PathBuf },
    /// Counts, Euler characteristics, H₁ and boundary.
    Summary { file: PathBuf },
    /// Apply one move: `--face I [--variant K]` (2→3) or `--edge J` (3→2).
    Move {
        file: PathBuf,
        #[arg(long)]
        face: Option<usize>,
        #[arg(long)]
        variant: Option<u8>,
        #[arg(long)]
        edge: Option<usize>,
    },
    /// Seeded random walk of moves.
    Walk {
        file: PathBuf,
        #[arg(long)]
        steps: usize,
        #[arg(long)]
        seed: u64,
        #[arg(long)]
        h_null_only: bool,
        #[arg(long)]
        max_tets: Option<usize>,
    },
    /// The 21-row h-cycle table of a 2→3 move.
    Hcheck {
        file: PathBuf,
        #[arg(long)]
        face: usize,
        #[arg(long)]
        variant: u8,
    },
    /// Twisted torsion: `--rep trivial|free-abelian|cyclic:N[:CHAR]`.
    Torsion {
        file: PathBuf,
        #[arg(long)]
        rep: String,
        #[arg(long)]
        sign_refined: bool,
        /// Only `auto` is supported.
        #[arg(long)]
        homology_basis: Option<String>,
    },
    /// Euler chain class and maw cochain.
    Euler { file: PathBuf },
    /// Enumerate branched spines with N vertices.
    Census {
        #[arg(long)]
        tets: usize,
    },
    /// Torsion along a seeded h-null walk.
    Invariance {
        file: PathBuf,
        #[arg(long)]
        steps: usize,
        #[arg(long)]
        seed: u64,
        #[arg(long)]
        rep: String,
        #[arg(long)]
        max_tets: Option<usize>,
    },
}

fn read(p: &PathBuf) -> Result<String> {
    std::fs::read_to_string(p).map_err(|e| Error::Usage(format!("cannot read {}: {e}", p.display())))
}

fn load(p: &PathBuf) -> Result<spinetorsion::BranchedSpine> {
    parse_spine(&read(p)?)
}

fn run(cmd: Cmd) -> Result<Value> {
    match cmd {
        Cmd::Validate { file } => report::validate(&read(&file)?),
        Cmd::Branchings { file } => report::branchings(&read(&file)?),
        Cmd::Summary { file } => Ok(report::summary(&load(&file)?)),
        Cmd::Move { file, face, variant, edge } => report::do_move(&load(&file)?, face, variant, edge),
        Cmd::Walk { file, steps, seed, h_null_only, max_tets } => {
            report::walk(&load(&file)?, steps, seed, &WalkOptions { h_null_only, max_tets })
        }
        Cmd::Hcheck { file, face, variant } => report::hcheck(&load(&file)?, face, variant),
        Cmd::Torsion { file, rep, sign_refined, homology_basis } => {
            let auto = match homology_basis.as_deref() {
                None => false,
                Some("auto") => true,
                Some(other) => return Err(Error::Usage(format!("unknown homology basis `{other}`, expected `auto`"))),
            };
            report::torsion_report(&load(&file)?, &RepKind::parse(&rep)?, sign_refined, auto)
        }
        Cmd::Euler { file } => report::euler(&load(&file)?),
        Cmd::Census { tets } => {
            if tets == 0 {
                return Err(Error::Usage("--tets must be at least 1".into()));
            }
            Ok(report::census_report(tets))
        }
        Cmd::Invariance { file, steps, seed, rep, max_tets } => {
            report::invariance(&load(&file)?, steps, seed, &RepKind::parse(&rep)?, max_tets)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let start = Instant::now();
    let (mut v, code) = match run(cli.cmd) {
        Ok(v) => (v, 0),
        Err(e) => (report::error_report(&e), if e.is_validation() { 1 } else { 2 }),
    };
    if cli.timing {
        v["elapsed_ms"] = (start.elapsed().as_millis() as u64).into();
    }
    println!("{}", serde_json::to_string_pretty(&v).expect("report serializes"));
    ExitCode::from(code)
}
