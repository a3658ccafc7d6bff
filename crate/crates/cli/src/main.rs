use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use rotsurf::FormulaVariant;

mod commands;

#[derive(Parser)]
#[command(name = "rotsurf", version, about = "Rotational surfaces in E(2,4): curvature, geodesics, checks")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args, Clone)]
struct Common {
    /// Run configuration (TOML)
    #[arg(long)]
    config: Option<PathBuf>,
    /// Output directory
    #[arg(long)]
    out: Option<PathBuf>,
    /// Formula variant, overrides the config
    #[arg(long)]
    variant: Option<FormulaVariant>,
}

#[derive(Subcommand)]
enum Cmd {
    /// Mesh the configured surface and compare closed-form and numeric curvature
    Surface(Common),
    /// Integrate one geodesic and report invariant drifts
    Geodesic {
        #[command(flatten)]
        common: Common,
        /// Exit 0 even when the run stops early
        #[arg(long)]
        allow_early: bool,
    },
    /// One geodesic per (phi, theta) node of the [sweep] grid
    Sweep {
        #[command(flatten)]
        common: Common,
        /// Worker threads (default: all cores)
        #[arg(long)]
        workers: Option<usize>,
    },
    /// Run the verification suites
    Check {
        #[command(flatten)]
        common: Common,
        /// Run only this suite
        #[arg(long)]
        suite: Option<String>,
    },
    /// Drift and orbit SVG charts of the configured geodesic
    Plot(Common),
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let res = match cli.cmd {
        Cmd::Surface(c) => commands::surface(&c.into()),
        Cmd::Geodesic { common, allow_early } => commands::geodesic(&common.into(), allow_early),
        Cmd::Sweep { common, workers } => commands::sweep(&common.into(), workers),
        Cmd::Check { common, suite } => commands::check(&common.into(), suite.as_deref()),
        Cmd::Plot(c) => commands::plot(&c.into()),
    };
    match res {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.msg);
            ExitCode::from(f.code)
        }
    }
}

impl From<Common> for commands::Opts {
    fn from(c: Common) -> Self {
        commands::Opts {
            config: c.config,
            out: c.out,
            variant: c.variant,
        }
    }
}
