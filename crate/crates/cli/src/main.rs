use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::Context;
use clap::{Parser, Subcommand};
use gof_cli::{guard, table, test_cmd};

#[derive(Parser)]
#[command(name = "gof", version, about = "Goodness-of-fit tests U, V and W for univariate densities")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Reproduce an example table: statistics for draws from p and from q
    Table {
        #[arg(long)]
        example: String,
        /// Comma-separated sample sizes
        #[arg(long, value_delimiter = ',', default_value = "10,100,1000,10000,100000")]
        n: Vec<usize>,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long, default_value_t = 33)]
        trials: usize,
        /// Summary CSV; stdout when omitted
        #[arg(long)]
        out: Option<PathBuf>,
        /// Per-trial CSV
        #[arg(long)]
        detail: Option<PathBuf>,
    },
    /// Test a sample file against a density
    Test {
        #[arg(long)]
        samples: PathBuf,
        /// Spec file path, or builtin:NAME[:alt]
        #[arg(long)]
        density: String,
        #[arg(long, default_value = "u,v,w")]
        stats: String,
        /// Report file; CSV when the name ends in .csv, key=value otherwise
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Write pdf, cdf and distribution-of-p(X) curves as CSV
    Df {
        #[arg(long)]
        example: String,
        #[arg(long, default_value_t = 2001)]
        points: usize,
        #[arg(long, default_value = ".")]
        out: PathBuf,
    },
}

fn open(path: &Option<PathBuf>) -> anyhow::Result<Box<dyn Write>> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(
            File::create(p).with_context(|| format!("creating {}", p.display()))?,
        )),
        None => Box::new(std::io::stdout().lock()),
    })
}

fn run(cmd: Command) -> anyhow::Result<()> {
    match cmd {
        Command::Table {
            example,
            n,
            seed,
            trials,
            out,
            detail,
        } => {
            anyhow::ensure!(trials >= 1, "--trials must be at least 1");
            anyhow::ensure!(n.iter().all(|&n| n >= 1), "every n must be at least 1");
            guard::check_work(&n, trials, guard::max_work_from_env()?)?;
            let t = table::run_table(&example, &n, seed, trials)?;
            t.write_csv(open(&out)?)?;
            if let Some(p) = detail {
                t.write_detail_csv(open(&Some(p))?)?;
            }
        }
        Command::Test {
            samples,
            density,
            stats,
            out,
        } => {
            let stats = test_cmd::parse_stats(&stats)?;
            let report = test_cmd::run_test(&samples, &density, &stats)?;
            if report.outside_support > 0 {
                eprintln!(
                    "warning: {} draw(s) lie outside the support of {}",
                    report.outside_support, report.density
                );
            }
            match &out {
                Some(p) if p.extension().is_some_and(|e| e == "csv") => {
                    let mut w = open(&out)?;
                    writeln!(w, "{}\n{}", gof_core::TestReport::csv_header(), report.csv_row())?;
                }
                Some(_) => open(&out)?.write_all(report.to_key_value().as_bytes())?,
                None => print!("{}", report.to_key_value()),
            }
            for line in report.verdicts() {
                println!("{line}");
            }
        }
        Command::Df { example, points, out } => {
            for p in gof_cli::emit_curves(&example, points, &out)? {
                println!("{}", p.display());
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(gof_cli::exit_code(&e) as u8)
        }
    }
}
