use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use khess::eigensolver2d::{epsilon_for, laplace_eigen, ma_eigen_ellipse, ma_rayleigh_upper};
use khess::geometry::{Shape, SupportBody2D};
use khess::radial_spectra::shoot_eigen;
use khess::stability_lab::{
    check_remark_deficiency_with, check_theorem_main2_with, check_theorem_main_with, export, load_records, run_sweep,
    FamilyKind, FamilySpec, FitOptions, Format,
};

#[derive(Parser)]
#[command(name = "khess", version, about = "k-Hessian eigenvalue and stability toolkit")]
struct Cli {
    /// Seed for the bootstrap resampling in theorem checks.
    #[arg(long, global = true, default_value_t = 0x5eed)]
    seed: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// λ_k of the unit ball in R^n by radial shooting.
    BallEigen {
        #[arg(long)]
        dim: usize,
        #[arg(long)]
        k: usize,
        #[arg(long, default_value_t = 1e-10)]
        tol: f64,
    },
    /// Eigenvalue estimate for a planar body given as JSON.
    Eigen {
        #[arg(long)]
        body: PathBuf,
        #[arg(long)]
        k: usize,
        /// Grid spacing for the finite-difference method.
        #[arg(long, default_value_t = 1.0 / 128.0)]
        h: f64,
        #[arg(long, value_enum)]
        method: Method,
    },
    /// Evaluate a body family and write one record per body.
    Sweep {
        #[arg(long, value_enum)]
        family: Family,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        points: usize,
        #[arg(long)]
        out: PathBuf,
        /// Override the family's grid spacing.
        #[arg(long)]
        grid_h: Option<f64>,
        #[arg(long, default_value_t = 1.0)]
        scale: f64,
        /// Also write the full JSON report here.
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Fit exponents on a sweep report and decide the theorem checks.
    Check {
        #[arg(long, value_enum)]
        theorem: Theorem,
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        json: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Method {
    Fd,
    Affine,
    Rayleigh,
}

#[derive(Clone, Copy, ValueEnum)]
enum Family {
    EllipseUnitProduct,
    EllipseArea,
    SmoothedPolygon,
}

impl From<Family> for FamilyKind {
    fn from(f: Family) -> Self {
        match f {
            Family::EllipseUnitProduct => FamilyKind::EllipseUnitProduct,
            Family::EllipseArea => FamilyKind::EllipseArea,
            Family::SmoothedPolygon => FamilyKind::SmoothedPolygon,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Theorem {
    Main,
    Main2,
    Remdef,
}

fn main() -> Result<ExitCode> {
    let cli = Cli::parse();
    match cli.command {
        Command::BallEigen { dim, k, tol } => {
            let pair = shoot_eigen(dim, k, tol)?;
            let out = json!({
                "n": pair.n,
                "k": pair.k,
                "lambda1": pair.lambda1,
                "r_star": pair.r_star,
                "error_estimate": pair.error_estimate,
            });
            println!("{}", serde_json::to_string_pretty(&out)?);
            Ok(ExitCode::SUCCESS)
        }
        Command::Eigen { body, k, h, method } => eigen(&body, k, h, method),
        Command::Sweep { family, k, points, out, grid_h, scale, json } => {
            let mut spec = FamilySpec::new(family.into(), k, points)?.with_scale(scale);
            if let Some(h) = grid_h {
                spec = spec.with_grid(h);
            }
            let outcome = run_sweep(&spec)?;
            export(&outcome.records, &[], &out, Format::from_path(&out))?;
            if let Some(path) = json {
                export(&outcome.records, &[], &path, Format::Json)?;
            }
            for f in &outcome.failures {
                eprintln!("param {}: {}", f.param, f.message);
            }
            eprintln!("{} records written to {}", outcome.records.len(), out.display());
            Ok(if outcome.failures.is_empty() { ExitCode::SUCCESS } else { ExitCode::FAILURE })
        }
        Command::Check { theorem, input, json } => {
            let records = load_records(&input)?;
            let opts = FitOptions { seed: cli.seed, ..FitOptions::default() };
            let (name, verdicts) = match theorem {
                Theorem::Main => ("main", check_theorem_main_with(&records, 2, &opts)?),
                Theorem::Main2 => ("main2", check_theorem_main2_with(&records, 2, 1, &opts)?),
                Theorem::Remdef => ("remdef", vec![check_remark_deficiency_with(&records, &opts)?]),
            };
            let pass = verdicts.iter().all(|v| v.pass);
            let out = json!({ "theorem": name, "pass": pass, "verdicts": verdicts });
            let text = serde_json::to_string_pretty(&out)?;
            if let Some(path) = json {
                fs::write(&path, format!("{text}\n")).with_context(|| format!("writing {}", path.display()))?;
            }
            println!("{text}");
            Ok(if pass { ExitCode::SUCCESS } else { ExitCode::FAILURE })
        }
    }
}

fn eigen(path: &PathBuf, k: usize, h: f64, method: Method) -> Result<ExitCode> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let body: SupportBody2D =
        serde_json::from_str(&text).with_context(|| format!("parsing body from {}", path.display()))?;
    let estimate = match (method, k) {
        (Method::Fd, 1) => laplace_eigen(&body, h)?,
        (Method::Affine, 2) => match body.shape() {
            Shape::Ellipse { a, b } => ma_eigen_ellipse(*a, *b)?,
            _ => bail!("the affine method needs an ellipse body"),
        },
        (Method::Rayleigh, 2) => ma_rayleigh_upper(&body)?,
        (Method::Fd, _) => bail!("finite differences solve the Laplacian only (k = 1)"),
        _ => bail!("affine and rayleigh methods are for k = 2"),
    };
    let epsilon = epsilon_for(&body, k, &estimate)?;
    let out = json!({
        "value": estimate.best_value(),
        "kind": estimate.kind.as_str(),
        "error_estimate": estimate.error_estimate,
        "epsilon": epsilon,
    });
    println!("{}", serde_json::to_string_pretty(&out)?);
    Ok(ExitCode::SUCCESS)
}
