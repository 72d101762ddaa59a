use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand};

use hypershape::report::{write_csv, write_jsonl, GridRow, OutputFormat};
use hypershape::Analyzer;

/// Shape operator, curvatures and point classes of hypersurfaces in E⁴.
#[derive(Parser, Debug)]
#[command(name = "hypershape", version)]
struct Cli {
    /// Absolute threshold below which a principal curvature counts as zero.
    #[arg(long, global = true, value_name = "EPS", allow_hyphen_values = true)]
    eps_k: Option<f64>,

    /// Relative Gram-determinant threshold for regular points.
    #[arg(long, global = true, value_name = "EPS", allow_hyphen_values = true)]
    eps_reg: Option<f64>,

    /// Machine-readable output format.
    #[arg(long, global = true, value_name = "csv|jsonl")]
    format: Option<OutputFormat>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Full report at one parameter point.
    Analyze {
        spec: PathBuf,
        /// Parameter point as `u,v,w`.
        #[arg(long, value_parser = parse_point, allow_hyphen_values = true)]
        at: [f64; 3],
    },
    /// Evaluate the sample grid and write one row per point.
    Grid {
        spec: PathBuf,
        /// Output file; `-` writes to stdout.
        #[arg(long)]
        out: PathBuf,
    },
    /// Measure every identity over the sample grid.
    Check { spec: PathBuf },
}

fn parse_point(s: &str) -> Result<[f64; 3], String> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    let [u, v, w] = parts.as_slice() else {
        return Err(format!("expected u,v,w but got `{s}`"));
    };
    let num = |t: &str| t.parse::<f64>().map_err(|e| format!("`{t}`: {e}"));
    Ok([num(u)?, num(v)?, num(w)?])
}

fn load(cli: &Cli, spec: &PathBuf) -> Result<Analyzer> {
    let analyzer = Analyzer::load(spec).with_context(|| format!("error in spec stage: {}", spec.display()))?;
    analyzer
        .with_overrides(cli.eps_k, cli.eps_reg)
        .context("error in spec stage")
}

fn write_rows(rows: &[GridRow], format: OutputFormat, out: impl Write) -> io::Result<()> {
    let mut out = BufWriter::new(out);
    match format {
        OutputFormat::Csv => write_csv(rows, &mut out)?,
        OutputFormat::Jsonl => write_jsonl(rows, &mut out)?,
    }
    out.flush()
}

fn run(cli: &Cli) -> Result<bool> {
    match &cli.command {
        Command::Analyze { spec, at } => {
            let analyzer = load(cli, spec)?;
            if !analyzer.surface.contains(*at) {
                eprintln!(
                    "warning: ({}, {}, {}) lies outside the sampled domain",
                    at[0], at[1], at[2]
                );
            }
            let row = GridRow {
                point: *at,
                outcome: analyzer.analyze_point(*at),
            };
            match &row.outcome {
                Ok(report) => {
                    print!("{}", report.to_text());
                    match cli.format {
                        Some(OutputFormat::Csv) => {
                            write_rows(std::slice::from_ref(&row), OutputFormat::Csv, io::stdout())?
                        }
                        Some(OutputFormat::Jsonl) => println!("{}", row.json_line()),
                        None => {}
                    }
                    Ok(true)
                }
                Err(e) => bail!("error in {} stage: {e}", e.stage()),
            }
        }
        Command::Grid { spec, out } => {
            let analyzer = load(cli, spec)?;
            let rows = analyzer.run_grid();
            let format = cli.format.unwrap_or_default();
            if out.as_os_str() == "-" {
                write_rows(&rows, format, io::stdout().lock())?;
            } else {
                let file = File::create(out).with_context(|| format!("cannot create {}", out.display()))?;
                write_rows(&rows, format, file)?;
            }
            let regular = rows.iter().filter(|r| r.outcome.is_ok()).count();
            eprintln!("{} points, {regular} regular", rows.len());
            if regular == 0 {
                bail!("no regular point in the grid");
            }
            Ok(true)
        }
        Command::Check { spec } => {
            let report = load(cli, spec)?.run_check();
            println!("{report}");
            Ok(report.passed())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::FAILURE,
        Err(e) => {
            eprintln!("{e:#}");
            ExitCode::FAILURE
        }
    }
}
