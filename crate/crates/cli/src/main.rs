mod config;
mod report;
mod surface;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use config::Config;
use report::ResidualReport;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use surface::{build_surface, render, Format};
use vkplate::scenarios::solve_ridge;

#[derive(Parser)]
#[command(name = "vkplate", version, about = "Residual verification of singular von Karman plate solutions")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build the configured scenario, run its residual suites, and write a JSON report.
    Verify {
        config: PathBuf,
        #[arg(long)]
        tol_bulk: Option<f64>,
        #[arg(long)]
        tol_interface: Option<f64>,
        #[arg(long)]
        tol_point: Option<f64>,
        /// report path (default: the config path with extension .report.json)
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Sample w on a grid cut along the folds.
    Surface {
        config: PathBuf,
        /// NR,NT for polar grids or NQ,NS for the straight fold
        #[arg(long, value_parser = parse_grid)]
        grid: (usize, usize),
        #[arg(long, value_enum, default_value = "csv")]
        format: SurfaceFormat,
        #[arg(long)]
        out: PathBuf,
    },
    /// Exponent, amplitude, and stress coefficient of the terminating ridge.
    SolveRidge {
        #[arg(long, allow_negative_numbers = true)]
        gamma: f64,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum SurfaceFormat {
    Csv,
    Obj,
}

fn parse_grid(s: &str) -> Result<(usize, usize), String> {
    let (a, b) = s.split_once(',').ok_or_else(|| format!("expected N1,N2, got '{s}'"))?;
    let parse = |t: &str| t.trim().parse::<usize>().map_err(|e| format!("bad grid size '{t}': {e}"));
    let (a, b) = (parse(a)?, parse(b)?);
    if a == 0 || b == 0 {
        return Err("grid sizes must be positive".into());
    }
    Ok((a, b))
}

fn default_report_path(config: &Path) -> PathBuf {
    config.with_extension("report.json")
}

fn verify(config: &Path, tols: [Option<f64>; 3], out: Option<PathBuf>) -> Result<bool> {
    let cfg = Config::load(config)?;
    let mut tol = cfg.tolerances;
    let [b, i, p] = tols;
    tol.bulk = b.unwrap_or(tol.bulk);
    tol.interface = i.unwrap_or(tol.interface);
    tol.point = p.unwrap_or(tol.point);
    let sc = cfg.build().context("constructing scenario")?;
    let probes = cfg.probes(&sc);
    let outcomes = sc.evaluate(&probes, &tol).context("evaluating residual suites")?;
    let report = ResidualReport::new(&cfg, &sc, tol, outcomes);
    let out = out.unwrap_or_else(|| default_report_path(config));
    let json = serde_json::to_string_pretty(&report)?;
    std::fs::write(&out, json + "\n").with_context(|| format!("cannot write report {}", out.display()))?;
    print!("{}", report.summary());
    println!("report written to {}", out.display());
    Ok(report.all_matched)
}

fn surface_cmd(config: &Path, grid: (usize, usize), format: SurfaceFormat, out: &Path) -> Result<()> {
    let cfg = Config::load(config)?;
    let sc = cfg.build().context("constructing scenario")?;
    let surf = build_surface(&sc, &cfg.scenario_params()?, grid)?;
    let format = match format {
        SurfaceFormat::Csv => Format::Csv,
        SurfaceFormat::Obj => Format::Obj,
    };
    std::fs::write(out, render(&surf, format, &sc.id)).with_context(|| format!("cannot write {}", out.display()))?;
    println!("{} vertices, {} triangles, {} folds written to {}", surf.vertices.len(), surf.triangles.len(), surf.folds.len(), out.display());
    Ok(())
}

fn solve_ridge_cmd(gamma: f64) -> Result<()> {
    if gamma == 0.0 {
        bail!("gamma must be nonzero");
    }
    let sol = solve_ridge(gamma, 1e-14)?;
    println!("mu={:.12} a={:.12} lambda={:.12}", sol.mu, sol.amplitude, sol.lambda);
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Verify { config, tol_bulk, tol_interface, tol_point, out } => verify(&config, [tol_bulk, tol_interface, tol_point], out),
        Command::Surface { config, grid, format, out } => surface_cmd(&config, grid, format, &out).map(|_| true),
        Command::SolveRidge { gamma } => solve_ridge_cmd(gamma).map(|_| true),
    };
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
