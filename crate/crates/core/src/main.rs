use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;
use tkklab::cli::{run, Command, RunOptions};

/// Exact structurable algebras, TKK Lie algebras and their inner-ideal geometries.
#[derive(Parser, Debug)]
#[command(name = "tkklab", version)]
struct Args {
    /// verify-algebra | build-tkk | geometry | polygon | moufang | relations | report
    command: String,
    /// Run configuration (TOML, or JSON by extension); for `polygon`, an exported geometry.
    config: PathBuf,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    samples: Option<usize>,
    #[arg(long)]
    threads: Option<usize>,
    /// Allow the large hexagons (J of dimension 3).
    #[arg(long)]
    large: bool,
    /// Negative control: build M(J, eta) with this eta for `relations`.
    #[arg(long, hide = true)]
    debug_eta: Option<i64>,
    /// Negative control: perturb one commutator-relation parameter.
    #[arg(long, hide = true)]
    debug_corrupt_relation: bool,
}

fn main() -> ExitCode {
    let args = match Args::try_parse() {
        Ok(a) => a,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    let Some(cmd) = Command::parse(&args.command) else {
        eprintln!("error: unknown command '{}'", args.command);
        return ExitCode::from(2);
    };
    if let Some(n) = args.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
            eprintln!("error: --threads: {e}");
            return ExitCode::from(2);
        }
    }
    let opts = RunOptions {
        out: args.out,
        seed: args.seed,
        samples: args.samples,
        large: args.large,
        debug_eta: args.debug_eta,
        debug_corrupt_relation: args.debug_corrupt_relation,
    };
    let mut stdout = std::io::stdout().lock();
    ExitCode::from(run(cmd, &args.config, &opts, &mut stdout) as u8)
}
