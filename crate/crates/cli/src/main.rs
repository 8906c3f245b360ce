use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Parser, Subcommand, ValueEnum};

use ccsym::certify::{CertificateFile, CertifyOptions};
use ccsym::group::GroupData;
use ccsym::model::{decompose, nested_polyhedron, LiftStyle, PolyhedronKind};
use ccsym_cli::{export_curve, replay_file, run_case, DecompositionReport, RunOptions};

#[derive(Parser)]
#[command(name = "ccsym", version, about = "Certified symmetry reduction for nested polyhedra central configurations")]
struct Cli {
    /// Worker threads for certification; defaults to the machine parallelism.
    #[arg(long, global = true)]
    jobs: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Case {
    Tetrahedron,
    Octahedron,
    Cube,
}

impl From<Case> for PolyhedronKind {
    fn from(c: Case) -> Self {
        match c {
            Case::Tetrahedron => PolyhedronKind::Tetrahedron,
            Case::Octahedron => PolyhedronKind::Octahedron,
            Case::Cube => PolyhedronKind::Cube,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Style {
    RadicalPowers,
    Multilinear,
}

#[derive(clap::Args)]
struct CertifyArgs {
    #[arg(long, default_value_t = 16)]
    max_depth: u32,
    #[arg(long, value_enum, default_value_t = Style::RadicalPowers)]
    style: Style,
    /// Write the certificate file here.
    #[arg(long)]
    certificates: Option<PathBuf>,
}

impl CertifyArgs {
    fn options(&self) -> CertifyOptions {
        let style = match self.style {
            Style::RadicalPowers => LiftStyle::RadicalPowers,
            Style::Multilinear => LiftStyle::Multilinear,
        };
        CertifyOptions { max_depth: self.max_depth, style }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Block-decompose S(c) and print the multiplicities and block inventory.
    Decompose {
        #[arg(value_enum)]
        case: Case,
        /// Include the exact entries of every block.
        #[arg(long)]
        matrices: bool,
    },
    /// Certify the blocks of a case.
    Certify {
        #[arg(value_enum)]
        case: Case,
        #[arg(long)]
        block: Option<String>,
        #[command(flatten)]
        args: CertifyArgs,
    },
    /// Isolate the threshold delta where the mass ratio changes sign.
    Delta {
        #[arg(value_enum)]
        case: Case,
        #[arg(long, default_value_t = 5)]
        digits: u32,
        #[command(flatten)]
        args: CertifyArgs,
    },
    /// Full pipeline: blocks, threshold and equal-masses verdict.
    Report {
        #[arg(value_enum)]
        case: Case,
        #[arg(long, default_value_t = 5)]
        digits: u32,
        #[command(flatten)]
        args: CertifyArgs,
    },
    /// Write c(t) and the mass ratio on an equispaced grid as CSV.
    Curve {
        #[arg(value_enum)]
        case: Case,
        #[arg(long)]
        samples: usize,
        #[arg(long)]
        out: PathBuf,
    },
    /// Re-check every certificate in a certificate file.
    Replay { file: PathBuf },
    /// Validate a group data file and print its irrep degrees.
    Group { file: PathBuf },
}

fn print_json<T: serde::Serialize>(v: &T) -> Result<()> {
    println!("{}", serde_json::to_string_pretty(v)?);
    Ok(())
}

fn run(kind: PolyhedronKind, opts: RunOptions, out: Option<&Path>) -> Result<bool> {
    let run = run_case(kind, &opts)?;
    if let Some(path) = out {
        fs::write(path, run.certificates.to_json()?).with_context(|| format!("writing {}", path.display()))?;
    }
    print_json(&run.report)?;
    for f in &run.report.failures {
        eprintln!("{}: {}", f.stage, f.error);
    }
    Ok(run.report.all_verified)
}

fn main() -> ExitCode {
    match real_main() {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn real_main() -> Result<bool> {
    let cli = Cli::parse();
    if let Some(n) = cli.jobs {
        rayon::ThreadPoolBuilder::new().num_threads(n).build_global()?;
    }
    match cli.command {
        Command::Decompose { case, matrices } => {
            let kind = case.into();
            let d = decompose(&nested_polyhedron(kind))?;
            print_json(&DecompositionReport::new(kind, &d, matrices))?;
            Ok(true)
        }
        Command::Certify { case, block, args } => {
            let opts = RunOptions { certify: args.options(), block, delta: false, ..RunOptions::default() };
            run(case.into(), opts, args.certificates.as_deref())
        }
        Command::Delta { case, digits, args } => {
            let opts = RunOptions { certify: args.options(), blocks: false, digits, ..RunOptions::default() };
            run(case.into(), opts, args.certificates.as_deref())
        }
        Command::Report { case, digits, args } => {
            let opts = RunOptions { certify: args.options(), digits, ..RunOptions::default() };
            run(case.into(), opts, args.certificates.as_deref())
        }
        Command::Curve { case, samples, out } => {
            let rows = export_curve(case.into(), samples, &out)?;
            eprintln!("wrote {} rows to {}", rows.len(), out.display());
            Ok(true)
        }
        Command::Replay { file } => {
            let text = fs::read_to_string(&file).with_context(|| format!("reading {}", file.display()))?;
            let lines = replay_file(&CertificateFile::from_json(&text)?);
            for l in &lines {
                match &l.error {
                    None => println!("ok   [{}] {} ({})", l.index, l.target, l.kind),
                    Some(e) => println!("FAIL [{}] {} ({}): {e}", l.index, l.target, l.kind),
                }
            }
            Ok(lines.iter().all(|l| l.ok))
        }
        Command::Group { file } => {
            let data = GroupData::load(&file)?;
            println!("order {} degrees {:?}", data.group.order(), data.degrees());
            Ok(true)
        }
    }
}
