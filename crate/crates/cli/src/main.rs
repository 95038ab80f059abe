use std::io::{self, Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use topdesign_cli::{
    cmd_brute, cmd_crosscheck, cmd_decide, cmd_verify, parse_aleph_index, BruteOptions, CrosscheckOptions, Format,
    Outcome, VerifyOptions, WitnessOverride, EXIT_INPUT,
};
use topdesign_core::designs::GridSpec;
use topdesign_core::DesignType;

#[derive(Parser)]
#[command(name = "topdesign", version, about = "Decide and check topological designs on particular-point spaces")]
struct Cli {
    /// Output as JSON records or as readable text.
    #[arg(long, value_enum, global = true, default_value = "record")]
    format: FormatArg,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Text,
    Record,
}

#[derive(Clone, Copy, ValueEnum)]
enum WitnessArg {
    /// Every set pair-equivalent to D.
    W,
    /// Every set homeomorphic to D.
    L,
}

#[derive(Subcommand)]
enum Command {
    /// Decide whether a design exists for a query file ("-" reads stdin).
    Decide { query: PathBuf },
    /// Count blocks of the witness family containing concrete probes like fin:0,2 or cofin:3.
    Verify {
        query: PathBuf,
        probes: Vec<String>,
        #[arg(long, default_value_t = 50)]
        cutoff: u64,
        /// Check this family of blocks instead of the decided witness.
        #[arg(long, value_enum)]
        witness: Option<WitnessArg>,
    },
    /// Sweep the descriptor grid for inconsistencies.
    Crosscheck {
        /// Largest aleph index for card(X) and the subset sizes.
        #[arg(long, default_value = "1", value_parser = parse_aleph_index)]
        grid_max_aleph: u32,
        /// Largest finite size in the grid.
        #[arg(long, default_value_t = 6)]
        grid_max_finite: u64,
        /// Only finite C and D.
        #[arg(long)]
        finite_only: bool,
        #[arg(long, hide = true)]
        inject_fault: bool,
    },
    /// Check a finite block family by brute force.
    Brute {
        instance: PathBuf,
        /// Probe size; defaults to the c_size in the file.
        #[arg(long)]
        t: Option<u32>,
        #[arg(long = "type", default_value_t = 2, value_parser = clap::value_parser!(u8).range(1..=4))]
        ty: u8,
    },
}

fn read_input(path: &PathBuf) -> io::Result<String> {
    if path.as_os_str() == "-" {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s)?;
        Ok(s)
    } else {
        std::fs::read_to_string(path)
    }
}

fn run(cli: Cli) -> Outcome {
    let format = match cli.format {
        FormatArg::Text => Format::Text,
        FormatArg::Record => Format::Record,
    };
    let read = |path: &PathBuf| {
        read_input(path).map_err(|e| Outcome {
            code: EXIT_INPUT,
            stdout: String::new(),
            stderr: format!("error: cannot read {}: {e}\n", path.display()),
        })
    };
    match cli.command {
        Command::Decide { query } => match read(&query) {
            Ok(text) => cmd_decide(&text, format),
            Err(o) => o,
        },
        Command::Verify { query, probes, cutoff, witness } => {
            let witness = witness.map(|w| match w {
                WitnessArg::W => WitnessOverride::ClassW,
                WitnessArg::L => WitnessOverride::ClassL,
            });
            match read(&query) {
                Ok(text) => cmd_verify(&text, &probes, VerifyOptions { cutoff, witness }, format),
                Err(o) => o,
            }
        }
        Command::Crosscheck { grid_max_aleph, grid_max_finite, finite_only, inject_fault } => {
            let grid = GridSpec { max_finite: grid_max_finite, max_aleph: grid_max_aleph, finite_only };
            cmd_crosscheck(CrosscheckOptions { grid, inject_fault }, format)
        }
        Command::Brute { instance, t, ty } => {
            let ty = DesignType::from_number(ty).expect("range checked by clap");
            match read(&instance) {
                Ok(text) => cmd_brute(&text, BruteOptions { t, ty }, format),
                Err(o) => o,
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_INPUT as u8 } else { 0 });
        }
    };
    let outcome = run(cli);
    let mut stdout = io::stdout().lock();
    let _ = stdout.write_all(outcome.stdout.as_bytes()).and_then(|_| stdout.flush());
    let _ = io::stderr().write_all(outcome.stderr.as_bytes());
    ExitCode::from(outcome.code as u8)
}
