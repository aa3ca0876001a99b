use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use kostant::par::Mode;
use kostant::reduction::rng;
use kostant::report::{self, Pipeline, RunReport, Section, Status};
use kostant::rootsys::{CartanType, RootSystem};
use kostant::Error;

#[derive(Parser, Debug)]
#[command(name = "kostant", version, about = "Kostant cascades and coadjoint invariants of n and b")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Emit {
    Json,
    Text,
    Latex,
}

#[derive(Args, Debug, Clone)]
struct Common {
    /// Simple type and rank, e.g. G2, D5, E8
    #[arg(value_parser = parse_type)]
    algebra: CartanType,
    #[arg(long, value_enum, default_value = "json")]
    emit: Emit,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Add wall-clock milliseconds to the report (breaks byte-stability)
    #[arg(long)]
    timing: bool,
    /// Run checks on one thread
    #[arg(long)]
    sequential: bool,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Cartan matrix, positive roots, fundamental weights
    Roots(Common),
    /// The Kostant cascade
    Cascade(Common),
    /// varpi' in the cascade basis
    Ktable {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        check_paper: bool,
    },
    /// Z_i and Q_i by iterated Heisenberg reduction
    Invariants {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        verify: bool,
        /// Lift the size guard
        #[arg(long)]
        force: bool,
    },
    /// Corner-minor expansion for A_n
    Spherical {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        index: usize,
        #[arg(long)]
        borel: bool,
    },
    /// Borel-subalgebra checks
    Borel {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value_t = 4)]
        degree_bound: u32,
        #[arg(long, default_value_t = 5)]
        samples: usize,
        #[arg(long)]
        force: bool,
    },
    /// cascade, ktable --check-paper, invariants --verify and borel
    VerifyAll {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value_t = 4)]
        degree_bound: u32,
        #[arg(long, default_value_t = 5)]
        samples: usize,
        #[arg(long)]
        force: bool,
    },
}

fn parse_type(s: &str) -> Result<CartanType, String> {
    s.parse::<CartanType>().map_err(|e| e.to_string())
}

fn run(cmd: &Cmd) -> kostant::Result<(Common, Section, Pipeline)> {
    let common = match cmd {
        Cmd::Roots(c) | Cmd::Cascade(c) => c,
        Cmd::Ktable { common, .. }
        | Cmd::Invariants { common, .. }
        | Cmd::Spherical { common, .. }
        | Cmd::Borel { common, .. }
        | Cmd::VerifyAll { common, .. } => common,
    };
    let mode = if common.sequential {
        Mode::Sequential
    } else {
        Mode::Parallel
    };
    let mut g = rng(common.seed);
    let p = Pipeline::new(RootSystem::new(common.algebra)?)?;
    let section = match cmd {
        Cmd::Roots(_) => report::roots_section(&p.rs),
        Cmd::Cascade(_) => report::cascade_section(&p.rs, &p.cascade),
        Cmd::Ktable { check_paper, .. } => report::ktable_section(&p.rs, &p.cascade, &p.kt, *check_paper),
        Cmd::Invariants { verify, force, .. } => {
            report::reduction_guard(&p.rs, *force)?;
            report::invariants_section(&p.rs, &p.sc, &p.cascade, &p.kt, *verify, &mut g, mode)?.0
        }
        Cmd::Spherical { index, borel, .. } => report::spherical_section(&p.rs, &p.sc, *index, *borel)?,
        Cmd::Borel {
            degree_bound,
            samples,
            force,
            ..
        } => {
            report::reduction_guard(&p.rs, *force)?;
            report::borel_section(&p.rs, *degree_bound, *samples, &mut g, mode)?
        }
        Cmd::VerifyAll {
            degree_bound,
            samples,
            force,
            ..
        } => report::verify_all_section(&p, *force, *degree_bound, *samples, &mut g, mode)?,
    };
    Ok((common.clone(), section, p))
}

fn main() -> ExitCode {
    let argv: Vec<String> = std::env::args().collect();
    let cli = match Cli::try_parse_from(&argv) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    let start = Instant::now();
    let (common, section, p) = match run(&cli.cmd) {
        Ok(x) => x,
        Err(e) => {
            eprintln!("kostant: {e}");
            return ExitCode::from(match e {
                Error::GuardExceeded { .. } => 3,
                Error::InadmissibleType(_) | Error::InvalidArgument(_) | Error::OutOfScope(_) => 2,
                _ => 1,
            });
        }
    };
    let elapsed = start.elapsed().as_millis();
    match common.emit {
        Emit::Json => {
            let r = RunReport {
                command: argv[1..].to_vec(),
                algebra: common.algebra.to_string(),
                results: section.results.clone(),
                checks: section.checks.clone(),
                provenance: report::provenance(&p.sc, common.seed),
                timing_ms: common.timing.then_some(elapsed),
            };
            println!("{}", serde_json::to_string_pretty(&r).expect("serializable"));
        }
        Emit::Text => {
            print!("{}", section.text);
            for c in &section.checks {
                println!("[{}] {}: {}", status_word(c.status), c.name, c.detail);
            }
            if common.timing {
                println!("{elapsed} ms");
            }
        }
        Emit::Latex => print!("{}", section.latex),
    }
    if section.failed() {
        ExitCode::from(1)
    } else {
        ExitCode::SUCCESS
    }
}

fn status_word(s: Status) -> &'static str {
    match s {
        Status::Pass => "pass",
        Status::Fail => "fail",
        Status::Skipped => "skipped",
        Status::Discrepancy => "discrepancy",
    }
}
