use std::io::Write;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use finalg::liestruct::Limits;
use finalg::restricted::{sweep_family, SweepFamily};
use finalg_cli::builtins::load_input;
use finalg_cli::describe::describe;
use finalg_cli::report::{tsv_summary, Outcome};
use finalg_cli::scenarios::{find, run_scenarios, scenarios};
use finalg_cli::sweep::{run_on, SweepCheck};
use finalg_cli::Settings;

/// Exact checks of unit-group and Lie-structure statements on small algebras.
#[derive(Parser)]
#[command(name = "finalg", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    common: Common,
}

#[derive(Args)]
struct Common {
    /// Worker threads.
    #[arg(long, global = true, default_value_t = 1)]
    jobs: usize,
    /// Seed for sampled checks.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Largest algebra scanned element by element.
    #[arg(long, global = true, env = "FINALG_MAX_CARD")]
    max_algebra_card: Option<u64>,
    /// Largest unit group used for group computations.
    #[arg(long, global = true)]
    max_group_card: Option<u64>,
    /// Largest Engel length tried.
    #[arg(long, global = true)]
    engel_cap: Option<usize>,
    /// Print wall-clock times to stderr.
    #[arg(long, global = true)]
    timing: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Run named scenarios and print one JSON line per check.
    Run {
        /// Scenario ids.
        ids: Vec<String>,
        #[arg(long, conflicts_with = "ids")]
        all: bool,
        /// Also print a per-scenario TSV summary to stderr.
        #[arg(long)]
        tsv: bool,
    },
    /// Run one check over every presentation of a sweep family.
    Sweep { family: SweepFamily, check: SweepCheck },
    /// Print a structural profile of a builtin or a JSON file.
    Describe { input: String },
    /// List scenario ids, sweep families and sweep checks.
    List,
}

impl Common {
    fn settings(&self) -> Settings {
        let d = Settings::default();
        Settings {
            seed: self.seed,
            limits: Limits {
                max_card: self.max_algebra_card.unwrap_or(d.limits.max_card),
                engel_cap: self.engel_cap.unwrap_or(d.limits.engel_cap),
            },
            max_group_card: self.max_group_card.unwrap_or(d.max_group_card),
            jobs: self.jobs.max(1),
        }
    }
}

fn usage_error(msg: &str) -> ExitCode {
    eprintln!("error: {msg}");
    ExitCode::from(2)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let settings = cli.common.settings();
    let start = Instant::now();
    let mut out = std::io::stdout().lock();
    let code = match cli.command {
        Command::Run { ids, all, tsv } => {
            let list = if all {
                scenarios()
            } else if ids.is_empty() {
                return usage_error("give scenario ids or --all");
            } else {
                let mut list = Vec::new();
                for id in &ids {
                    match find(id) {
                        Some(s) => list.push(s),
                        None => return usage_error(&format!("unknown scenario '{id}'")),
                    }
                }
                list
            };
            let records = run_scenarios(&list, &settings);
            for r in &records {
                let _ = writeln!(out, "{}", r.to_line());
            }
            if tsv {
                eprint!("{}", tsv_summary(&records));
            }
            if records.iter().any(|r| r.outcome == Outcome::Fail) {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            }
        }
        Command::Sweep { family, check } => {
            let presentations = sweep_family(family);
            let report = run_on(family, check, &presentations, &settings);
            for line in report.lines(&presentations) {
                let _ = writeln!(out, "{line}");
            }
            if report.count(Outcome::Fail) > 0 {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            }
        }
        Command::Describe { input } => match load_input(&input) {
            Ok(input) => {
                let profile = describe(&input, &settings);
                let _ = writeln!(out, "{}", serde_json::to_string_pretty(&profile).expect("profiles serialize"));
                ExitCode::SUCCESS
            }
            Err(msg) => return usage_error(&msg),
        },
        Command::List => {
            for s in scenarios() {
                let _ = writeln!(out, "scenario\t{}\t{}", s.id, s.summary);
            }
            for f in SweepFamily::ALL {
                let _ = writeln!(out, "family\t{f}");
            }
            for c in SweepCheck::ALL {
                let _ = writeln!(out, "check\t{c}");
            }
            ExitCode::SUCCESS
        }
    };
    if cli.common.timing {
        eprintln!("elapsed\t{:.3}s", start.elapsed().as_secs_f64());
    }
    code
}
