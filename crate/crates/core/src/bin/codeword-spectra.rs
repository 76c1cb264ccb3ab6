use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use codeword_spectra::experiment::{
    run_code_info, run_moments, run_mp, run_paths_audit, run_spectrum, to_json, CodeSelector,
    Command, ExperimentConfig, DEFAULT_BINS, DEFAULT_LMAX, DEFAULT_REPEATS, DEFAULT_SEED,
};
use codeword_spectra::{Result, SampleMode};

#[derive(Parser)]
#[command(
    name = "codeword-spectra",
    version,
    about = "Spectra of Gram matrices built from codewords of linear codes"
)]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// ESD of the centred Gram matrix against the semicircle law.
    Spectrum(Opts),
    /// ESD of the Gram matrix against Marchenko–Pastur, p = round(y·n).
    Mp(Opts),
    /// Mean and variance of the trace moments across repeats.
    Moments(Opts),
    /// Dual distance, weight set and coherence of a code.
    CodeInfo(Opts),
    /// Closed-path audit at length --lmax.
    PathsAudit(Opts),
}

#[derive(Args)]
struct Opts {
    /// gold | rm1 | even | file
    #[arg(long)]
    code: String,
    #[arg(long)]
    m: Option<u32>,
    #[arg(long)]
    n: Option<usize>,
    /// Generator file: header `q n k`, then k rows.
    #[arg(long)]
    file: Option<PathBuf>,
    #[arg(long)]
    p: Option<usize>,
    #[arg(long)]
    y: Option<f64>,
    #[arg(long, default_value_t = DEFAULT_SEED)]
    seed: u64,
    #[arg(long, default_value_t = DEFAULT_REPEATS)]
    repeats: usize,
    #[arg(long, default_value_t = DEFAULT_BINS)]
    bins: usize,
    #[arg(long, default_value_t = DEFAULT_LMAX)]
    lmax: u32,
    #[arg(long)]
    out: Option<PathBuf>,
    /// distinct | with_replacement
    #[arg(long)]
    mode: Option<String>,
}

fn config(command: Command, o: &Opts) -> Result<ExperimentConfig> {
    let code = CodeSelector::from_flags(&o.code, o.m, o.n, o.file.as_deref())?;
    let mut c = ExperimentConfig::new(command, code);
    c.p = o.p;
    c.y = o.y;
    c.seed = o.seed;
    c.repeats = o.repeats;
    c.bins = o.bins;
    c.lmax = o.lmax;
    c.out = o.out.clone();
    if let Some(mode) = &o.mode {
        c.mode = mode.parse::<SampleMode>()?;
    }
    Ok(c)
}

fn run(cli: &Cli) -> Result<String> {
    match &cli.command {
        Cmd::Spectrum(o) => to_json(&run_spectrum(&config(Command::Spectrum, o)?)?),
        Cmd::Mp(o) => to_json(&run_mp(&config(Command::Mp, o)?)?),
        Cmd::Moments(o) => to_json(&run_moments(&config(Command::Moments, o)?)?),
        Cmd::CodeInfo(o) => to_json(&run_code_info(&config(Command::CodeInfo, o)?)?),
        Cmd::PathsAudit(o) => to_json(&run_paths_audit(&config(Command::PathsAudit, o)?)?),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(&cli) {
        Ok(json) => {
            print!("{json}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
