use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use bdris::channels::{self, FadingModel, RngStream, ScenarioGeometry};
use bdris::harness::{self, ExecutionMode};
use bdris::linalg::{symmetry_defect, unitarity_defect};
use bdris::solvers;
use bdris::Error;

#[derive(Parser)]
#[command(name = "bdris", version, about = "BD-RIS Max-SNR designs and Monte Carlo sweeps")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the experiment described by a spec file and write raw rows as CSV.
    Run {
        #[arg(long)]
        spec: PathBuf,
        #[arg(long)]
        out: PathBuf,
        /// Worker threads (default: all cores).
        #[arg(long)]
        threads: Option<usize>,
        /// Overrides the seed in the spec file.
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Solve one random SISO instance and print the design diagnostics.
    DemoSiso {
        #[arg(long)]
        m: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
    },
}

fn exit_code(err: &Error) -> u8 {
    match err {
        Error::Config(_) => 2,
        Error::Numerical { .. } | Error::Domain(_) | Error::Dimension(_) => 3,
        Error::Io { .. } => 1,
    }
}

fn run(spec_path: PathBuf, out: PathBuf, threads: Option<usize>, seed: Option<u64>) -> bdris::Result<()> {
    let mut spec = harness::load_spec(&spec_path).map_err(|e| match e {
        // an unreadable spec is a configuration problem for the caller
        Error::Io { path, message } => Error::Config(format!("cannot read {path}: {message}")),
        other => other,
    })?;
    if let Some(s) = seed {
        spec.seed = s;
    }
    if threads == Some(0) {
        return Err(Error::Config("--threads must be at least 1".into()));
    }
    let records = harness::run_experiment(&spec, ExecutionMode::Parallel { threads })?;
    harness::write_csv(&records, &out)?;
    let meta = harness::write_meta(&out, &spec)?;

    println!("{} rows -> {} ({})", records.len(), out.display(), meta.display());
    for s in harness::summarize(&records) {
        println!(
            "M={:<4} {:<28} {} mean {:>9.4} ± {:.4} (n={})",
            s.m,
            s.architecture.to_string(),
            s.metric,
            s.mean,
            s.std_err,
            s.count
        );
    }
    Ok(())
}

fn demo_siso(m: usize, seed: u64) -> bdris::Result<()> {
    if m == 0 {
        return Err(Error::Config("--m must be at least 1".into()));
    }
    let mut rng = RngStream::new(seed, 0);
    let ch = channels::sample_link(m, 1, &ScenarioGeometry::default(), &FadingModel::Rayleigh, &mut rng)?;
    let bd = solvers::max_snr_siso(&ch)?;
    let diag = solvers::diagonal_optimal(&ch)?;
    let bound = (ch.h_r.norm() * ch.h_t_vector().norm()).powi(2);
    let h = bd.equivalent_channel.scalar().unwrap_or_default();

    println!("M = {m}, seed = {seed}");
    println!("‖h_R‖²‖h_T‖²        = {bound:.6e}");
    println!("BD-RIS power        = {:.6e}", bd.achieved_power);
    println!("diagonal power      = {:.6e}", diag.achieved_power);
    println!("SNR gain            = {:.4} dB", harness::snr_gain_db(&bd, &diag)?);
    println!("h_eq                = {:.6e} {:+.3e}i", h.re, h.im);
    println!("|g_Rᴴ g_T − 1|      = {:.3e}", bd.alignment_residual);
    println!("‖ΘᴴΘ − I‖_F         = {:.3e}", unitarity_defect(&bd.ris.theta)?);
    println!("‖Θ − Θᵀ‖_F          = {:.3e}", symmetry_defect(&bd.ris.theta)?);
    if let Some(t) = &bd.takagi {
        let shown: Vec<String> = t.takagi_values.iter().take(4).map(|s| format!("{s:.6}")).collect();
        println!("Takagi values       = {} ...", shown.join(", "));
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Run { spec, out, threads, seed } => run(spec, out, threads, seed),
        Command::DemoSiso { m, seed } => demo_siso(m, seed),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
