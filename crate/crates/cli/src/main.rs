//! `turnover`: reports on hyperbolic turnovers, collar bounds, rooms and
//! truncated simplices, as text or JSON.

mod commands;
mod format;

use std::io::{self, Write};
use std::process::ExitCode;

use clap::{ArgGroup, Args, Parser, Subcommand};
use turnover_core::{Error, Tolerance};

#[derive(Parser, Debug)]
#[command(
    name = "turnover",
    version,
    about = "Bounds and case exclusions for immersed hyperbolic turnovers"
)]
struct Cli {
    /// Emit one JSON document instead of text.
    #[arg(long, global = true)]
    json: bool,

    /// Absolute and relative tolerance for root finding and quadrature.
    #[arg(long, global = true, env = "TURNOVER_TOL", allow_negative_numbers = true)]
    tol: Option<f64>,

    /// Seed for randomized sweeps.
    #[arg(long, global = true, default_value_t = 1)]
    seed: u64,

    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone, Copy)]
struct Triple {
    p: u32,
    q: u32,
    r: u32,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Geometry class and area of a turnover.
    Area(Triple),
    /// Geometry class of a turnover.
    Classify(Triple),
    /// Collar bound between elliptic axes of orders n and m.
    Delta { n: u32, m: u32 },
    /// Admissible cone orders of boundary turnovers.
    Orders(Triple),
    /// Turnover groups containing the given one.
    Supergroups(Triple),
    /// Volume and boundary-area budgets.
    Bounds {
        #[command(flatten)]
        sig: Triple,
        #[arg(long, default_value_t = 1)]
        ext: u32,
    },
    /// Boundary turnovers that fit in the area budget.
    Candidates {
        #[command(flatten)]
        sig: Triple,
        #[arg(long, default_value_t = 1)]
        ext: u32,
        /// Comma-separated cone orders replacing the refined set.
        #[arg(long, value_delimiter = ',')]
        orders: Option<Vec<u32>>,
    },
    /// Full case analysis.
    Analyze {
        #[command(flatten)]
        sig: Triple,
        #[arg(long, default_value_t = 1)]
        ext: u32,
        /// Skip the built-in refinement inputs.
        #[arg(long)]
        no_refinements: bool,
        /// Drop open return paths forced to be closed.
        #[arg(long)]
        skip_forced_open: bool,
    },
    /// Truncated simplex volume and density.
    #[command(group(ArgGroup::new("input").required(true).args(["theta", "edge"])))]
    Rho3 {
        #[arg(long, allow_negative_numbers = true)]
        theta: Option<f64>,
        #[arg(long, allow_negative_numbers = true)]
        edge: Option<f64>,
    },
    /// Random sweep of the room isoperimetric inequalities.
    RoomCheck {
        #[arg(long, default_value_t = 100)]
        count: usize,
        /// Use this constant ceiling height instead of random ceilings.
        #[arg(long)]
        constant: Option<f64>,
    },
    /// Cited orbifold volumes.
    Registry,
    /// The supergroup table.
    Table,
}

pub struct Context {
    pub tol: Tolerance,
    pub seed: u64,
}

pub enum Failure {
    Usage(String),
    Numeric(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        if e.is_domain() {
            Failure::Usage(e.to_string())
        } else {
            Failure::Numeric(e.to_string())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Numeric(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(3)
        }
    }
}

fn run(cli: Cli) -> Result<(), Failure> {
    let tol = match cli.tol {
        Some(t) => Tolerance::uniform(t)?,
        None => Tolerance::default(),
    };
    let ctx = Context { tol, seed: cli.seed };
    let report = match &cli.command {
        Command::Area(t) => commands::area(t.p, t.q, t.r)?,
        Command::Classify(t) => commands::classify(t.p, t.q, t.r)?,
        Command::Delta { n, m } => commands::delta(*n, *m)?,
        Command::Orders(t) => commands::orders(t.p, t.q, t.r)?,
        Command::Supergroups(t) => commands::supergroups(t.p, t.q, t.r)?,
        Command::Bounds { sig, ext } => commands::bounds(sig.p, sig.q, sig.r, *ext)?,
        Command::Candidates { sig, ext, orders } => commands::candidates(sig.p, sig.q, sig.r, *ext, orders.as_deref())?,
        Command::Analyze {
            sig,
            ext,
            no_refinements,
            skip_forced_open,
        } => commands::analyze(sig.p, sig.q, sig.r, *ext, !no_refinements, *skip_forced_open)?,
        Command::Rho3 { theta, edge } => commands::rho3(*theta, *edge)?,
        Command::RoomCheck { count, constant } => commands::room_check(&ctx, *count, *constant)?,
        Command::Registry => commands::registry()?,
        Command::Table => commands::table()?,
    };
    let text = if cli.json {
        let mut doc = serde_json::to_string_pretty(&report.json).map_err(|e| Failure::Numeric(e.to_string()))?;
        doc.push('\n');
        doc
    } else {
        report.text
    };
    let mut out = io::stdout().lock();
    match out.write_all(text.as_bytes()).and_then(|()| out.flush()) {
        Err(e) if e.kind() != io::ErrorKind::BrokenPipe => return Err(Failure::Numeric(e.to_string())),
        _ => {}
    }
    report.status
}
