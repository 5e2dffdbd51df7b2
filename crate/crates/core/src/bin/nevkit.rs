use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use nevkit::error::Error;
use nevkit::scenario::{outcome, run_path, sweep, Outcome, RunFlags, SweepParam};

#[derive(Parser)]
#[command(name = "nevkit", version, about = "Run potential-theory check scenarios")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a scenario file, or every scenario in a directory.
    Run(Common),
    /// Run a scenario once per value of one parameter.
    Sweep {
        #[command(flatten)]
        common: Common,
        /// One of r, R, r0, grid.
        #[arg(long)]
        param: String,
        /// Comma-separated values.
        #[arg(long, value_delimiter = ',', num_args = 0..)]
        values: Vec<f64>,
    },
}

#[derive(Args)]
struct Common {
    #[arg(long)]
    scenario: PathBuf,
    #[arg(long, default_value = "out")]
    out: PathBuf,
    /// Worker threads (default: all cores).
    #[arg(long)]
    jobs: Option<usize>,
    /// Absolute slack of inequality verdicts.
    #[arg(long)]
    tol: Option<f64>,
    /// Lattice intervals per axis for suprema.
    #[arg(long)]
    grid: Option<usize>,
    /// Also evaluate the sharper bound with the auxiliary radius.
    #[arg(long)]
    tight: bool,
    /// Every failing check counts as expected.
    #[arg(long)]
    expect_fail: bool,
}

impl Common {
    fn flags(&self) -> Result<RunFlags, Error> {
        if let Some(t) = self.tol {
            if !(t >= 0.0 && t.is_finite()) {
                return Err(Error::InvalidInput(format!("--tol must be >= 0, got {t}")));
            }
        }
        Ok(RunFlags {
            tolerance: self.tol,
            grid: self.grid,
            tight: self.tight,
            expect_fail: self.expect_fail,
            seed: RunFlags::seed_from_env()?,
        })
    }
}

fn execute(cli: Cli) -> Result<Outcome, Error> {
    let common = match &cli.command {
        Command::Run(c) | Command::Sweep { common: c, .. } => c,
    };
    let flags = common.flags()?;
    let mut pool = rayon::ThreadPoolBuilder::new();
    if let Some(j) = common.jobs {
        pool = pool.num_threads(j.max(1));
    }
    let pool = pool.build().map_err(|e| Error::InvalidInput(e.to_string()))?;
    pool.install(|| match &cli.command {
        Command::Run(c) => {
            let entries = run_path(&c.scenario, &c.out, &flags)?;
            for e in &entries {
                println!("{:<40} {}", e.report.name, e.report.verdict);
            }
            Ok(outcome(&entries))
        }
        Command::Sweep { common, param, values } => {
            let p: SweepParam = param.parse()?;
            let rows = sweep(&common.scenario, &common.out, p, values, &flags)?;
            let entries: Vec<_> = rows.into_iter().map(|(_, e)| e).collect();
            println!("{} rows written to {}", entries.len(), common.out.join("sweep.csv").display());
            Ok(outcome(&entries))
        }
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match execute(cli) {
        Ok(o) => ExitCode::from(o as u8),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(Outcome::Invalid as u8)
        }
    }
}
