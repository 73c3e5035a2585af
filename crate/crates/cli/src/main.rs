use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use gradloci::fixtures::{self, FixtureOptions};
use gradloci::report::{analyze, bbs_report, fixture_report, AnalyzeOptions, Mode, Report, ReportError};
use gradloci::Budget;

/// Singular loci of positively graded algebras over a polynomial base ring.
#[derive(Parser)]
#[command(name = "gradloci", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone, Copy)]
struct BudgetArgs {
    /// Maximal number of critical pairs per Gröbner basis computation.
    #[arg(long, env = "GRADLOCI_BUDGET")]
    budget: Option<usize>,
    /// Maximal sugar degree of a processed pair.
    #[arg(long, env = "GRADLOCI_MAX_DEGREE")]
    max_degree: Option<i64>,
}

impl BudgetArgs {
    fn budget(self) -> Budget {
        Budget {
            max_pairs: self.budget,
            max_degree: self.max_degree,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Summarize the border basis scheme of an order ideal.
    Bbs {
        file: PathBuf,
        /// Coefficients to eliminate, comma separated.
        #[arg(long, value_delimiter = ',')]
        z: Option<Vec<String>>,
        #[arg(long)]
        verbose: bool,
        #[arg(long)]
        json: bool,
        #[command(flatten)]
        budget: BudgetArgs,
    },
    /// Run one analysis on a problem descriptor.
    Analyze {
        file: PathBuf,
        /// lin-matrix, sing0, singv, sings, point, curve or invariants.
        #[arg(long, value_parser = parse_mode)]
        mode: Mode,
        #[arg(long)]
        verbose: bool,
        #[arg(long)]
        json: bool,
        #[command(flatten)]
        budget: BudgetArgs,
    },
    /// Run a built-in fixture, or `all` of them.
    Fixtures {
        name: String,
        #[arg(long)]
        json: bool,
        /// Include the scheme-level pipelines of the border basis fixtures.
        #[arg(long)]
        full: bool,
        #[command(flatten)]
        budget: BudgetArgs,
    },
    /// List the built-in fixtures.
    List,
}

fn parse_mode(s: &str) -> Result<Mode, String> {
    Mode::parse(s).ok_or_else(|| {
        let names: Vec<_> = Mode::ALL.iter().map(|m| m.name()).collect();
        format!("unknown mode `{s}`, expected one of {}", names.join(", "))
    })
}

fn read(path: &Path) -> Result<String, ReportError> {
    std::fs::read_to_string(path).map_err(|e| ReportError::Input(format!("{}: {e}", path.display())))
}

fn emit(reports: &[Report], json: bool, single: bool) {
    let text = if !json {
        reports.iter().map(Report::to_text).collect()
    } else if single {
        reports[0].to_json() + "\n"
    } else {
        serde_json::to_string_pretty(reports).expect("serializable") + "\n"
    };
    // a closed pipe is not an error worth reporting
    let _ = std::io::stdout().write_all(text.as_bytes());
}

fn run(cli: Cli) -> Result<i32, ReportError> {
    match cli.command {
        Command::Bbs { file, z, verbose, json, budget } => {
            let r = bbs_report(&read(&file)?, z.as_deref(), verbose, budget.budget())?;
            emit(&[r], json, true);
            Ok(0)
        }
        Command::Analyze { file, mode, verbose, json, budget } => {
            let opts = AnalyzeOptions {
                mode,
                verbose,
                budget: budget.budget(),
            };
            let r = analyze(&read(&file)?, &opts)?;
            emit(&[r], json, true);
            Ok(0)
        }
        Command::Fixtures { name, json, full, budget } => {
            let opts = FixtureOptions {
                budget: budget.budget(),
                full_pipeline: full,
            };
            let selected: Vec<_> = if name == "all" {
                fixtures::registry().iter().collect()
            } else {
                vec![fixtures::find(&name).map_err(|e| ReportError::Input(e.to_string()))?]
            };
            let runs: Vec<_> = selected.iter().map(|f| f.run(opts)).collect();
            let reports: Vec<_> = runs.iter().map(|r| fixture_report(r, opts.budget)).collect();
            emit(&reports, json, name != "all");
            let code = if runs.iter().any(|r| r.failures().any(|c| !c.budget_exceeded)) {
                1
            } else if runs.iter().any(|r| r.budget_exceeded()) {
                3
            } else {
                0
            };
            Ok(code)
        }
        Command::List => {
            for f in fixtures::registry() {
                let _ = writeln!(std::io::stdout(), "{:<14} {}", f.name, f.topic);
            }
            Ok(0)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("gradloci: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
