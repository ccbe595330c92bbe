use std::fs::File;
use std::io::BufWriter;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use thermistor::harness::{render_order_table, run_plan, ExperimentPlan};
use thermistor::schemes::StepRecord;
use thermistor::{ElemKind, Error, ManufacturedProblem, SchemeConfig, SchemeKind, TauRule};

#[derive(Parser)]
#[command(name = "thermistor", version, about = "IMEX BDF finite element solver for the 2D thermistor problem")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run one simulation of the manufactured problem and report its errors.
    Run {
        #[arg(long, default_value = "bdf2")]
        scheme: SchemeKind,
        #[arg(long, default_value = "quad")]
        elem: ElemKind,
        #[arg(long = "M")]
        m: usize,
        #[arg(long = "tau-rule", default_value = "sqrt-h")]
        tau_rule: TauRule,
        #[arg(long = "T", default_value_t = 1.0)]
        t_final: f64,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Per-step solver diagnostics as CSV.
        #[arg(long)]
        trace: Option<PathBuf>,
    },
    /// Run a named convergence study.
    Sweep {
        #[arg(long)]
        preset: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn exit_code(e: &Error) -> ExitCode {
    if e.is_solver_failure() {
        ExitCode::from(3)
    } else if matches!(e.root(), Error::InvalidConfig(_) | Error::InvalidMesh(_)) {
        ExitCode::from(2)
    } else {
        ExitCode::FAILURE
    }
}

fn run(cli: Cli) -> Result<ExitCode, Error> {
    let problem = ManufacturedProblem;
    match cli.command {
        Command::Run {
            scheme,
            elem,
            m,
            tau_rule,
            t_final,
            out,
            trace,
        } => {
            let config = SchemeConfig::new(scheme, m, elem, tau_rule).with_final_time(t_final);
            let sim = thermistor::run_simulation(&config, &problem)?;
            let report = thermistor::ErrorReport::from_simulation(&sim, &problem);
            if let Some(path) = trace {
                StepRecord::write_csv(&sim.trace, BufWriter::new(File::create(path)?))?;
            }
            let mut plan = ExperimentPlan::single(&config);
            plan.out = out;
            let result = thermistor::harness::PlanResult {
                plan,
                groups: vec![vec![thermistor::harness::RunOutcome {
                    config,
                    result: Ok(report.clone()),
                }]],
            };
            if let Some(path) = &result.plan.out {
                result.write_csv(BufWriter::new(File::create(path)?))?;
            }
            print!("{}", render_order_table(&[report]));
        }
        Command::Sweep { preset, out } => {
            let mut plan = ExperimentPlan::preset(&preset)?;
            plan.out = out;
            let result = run_plan(&plan, &problem)?;
            for reports in result.group_reports() {
                print!("{}", render_order_table(&reports));
                println!();
            }
            let failures: Vec<_> = result.failures().collect();
            if !failures.is_empty() {
                eprintln!("{} run(s) failed", failures.len());
                let solver = failures
                    .iter()
                    .any(|o| o.result.as_ref().is_err_and(|e| e.is_solver_failure()));
                return Ok(if solver { ExitCode::from(3) } else { ExitCode::FAILURE });
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            exit_code(&e)
        }
    }
}
