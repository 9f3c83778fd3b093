//! Command-line experiment runner.
//!
//! Subcommands map one-to-one onto the artifacts: `fig1` emits the
//! preparation/evolution trace, `table-1q` and `table-2q` the per-round
//! distillation tables, and `distill` the raw protocol telemetry.

use std::path::PathBuf;

use anyhow::Result;
use clap::{Args, Parser, Subcommand};

use vev_harness::config::{parse_model, ExperimentConfig, Overrides};
use vev_harness::experiments::{
    records_csv, run_records, run_table, run_trace, table_csv, trace_csv, write_output,
};
use vev_core::models::ModelKind;

#[derive(Parser)]
#[command(
    name = "vev",
    about = "Statevector experiments: adiabatic vacuum preparation and \
             ancilla-based distillation of vacuum expectation values",
    version
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Trace ⟨Z⟩ over the ramp and a constant-Hamiltonian segment (one qubit).
    Fig1(RunArgs),
    /// Per-round distillation table for the one-qubit model.
    #[command(name = "table-1q")]
    Table1q(RunArgs),
    /// Per-round distillation table for the two-site model.
    #[command(name = "table-2q")]
    Table2q(RunArgs),
    /// Raw per-round protocol telemetry (no sampling).
    Distill(DistillArgs),
}

#[derive(Args)]
struct RunArgs {
    /// Coupling J.
    #[arg(long)]
    j: Option<f64>,
    /// Total ramp time T.
    #[arg(long)]
    t_total: Option<f64>,
    /// Step size dt.
    #[arg(long)]
    dt: Option<f64>,
    /// Number of twirl rounds.
    #[arg(long)]
    rounds: Option<usize>,
    /// Shots per sampling run.
    #[arg(long)]
    shots: Option<u64>,
    /// Independent repetitions to average.
    #[arg(long)]
    reps: Option<usize>,
    /// Master seed; all sampling seeds derive from it.
    #[arg(long)]
    seed: Option<u64>,
    /// Controlled-unitary realization: exact | trotter.
    #[arg(long)]
    u_mode: Option<String>,
    /// Sub-steps per twirl in trotter mode.
    #[arg(long)]
    twirl_steps: Option<usize>,
    /// Starting bitstring override (qubit 0 first).
    #[arg(long)]
    initial: Option<String>,
    /// Optional key=value config file; flags override its values.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Output CSV path.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct DistillArgs {
    /// Model: one-qubit | two-site.
    #[arg(long, default_value = "one-qubit")]
    model: String,
    #[command(flatten)]
    run: RunArgs,
}

impl RunArgs {
    fn to_overrides(&self) -> Overrides {
        Overrides {
            model: None,
            j: self.j,
            t_total: self.t_total,
            dt: self.dt,
            rounds: self.rounds,
            shots: self.shots,
            reps: self.reps,
            seed: self.seed,
            u_mode: self.u_mode.clone(),
            twirl_steps: self.twirl_steps,
            initial: self.initial.clone(),
        }
    }

    fn build_config(&self, model: ModelKind) -> Result<ExperimentConfig> {
        let mut overrides = Overrides::default();
        if let Some(path) = &self.config {
            overrides = Overrides::from_file(path)?;
        }
        let merged = overrides.merged_with(self.to_overrides());
        merged.apply_to(ExperimentConfig::defaults(model))
    }

    fn out_path(&self, default_name: &str) -> PathBuf {
        self.out.clone().unwrap_or_else(|| PathBuf::from(default_name))
    }
}

fn main() -> Result<()> {
    let cli = Cli::parse();
    match cli.cmd {
        Cmd::Fig1(args) => {
            let cfg = args.build_config(ModelKind::OneQubit)?;
            let rows = run_trace(&cfg)?;
            let path = args.out_path("fig1.csv");
            write_output(&path, &trace_csv(&cfg, &rows))?;
            println!("wrote {} trace points to {}", rows.len(), path.display());
        }
        Cmd::Table1q(args) => {
            let cfg = args.build_config(ModelKind::OneQubit)?;
            let rows = run_table(&cfg)?;
            let path = args.out_path("table_1q.csv");
            write_output(&path, &table_csv(&cfg, &rows))?;
            print_table(&rows);
            println!("wrote {}", path.display());
        }
        Cmd::Table2q(args) => {
            let cfg = args.build_config(ModelKind::SchwingerTwoSite)?;
            let rows = run_table(&cfg)?;
            let path = args.out_path("table_2q.csv");
            write_output(&path, &table_csv(&cfg, &rows))?;
            print_table(&rows);
            println!("wrote {}", path.display());
        }
        Cmd::Distill(args) => {
            let model = parse_model(&args.model)?;
            let cfg = args.run.build_config(model)?;
            let records = run_records(&cfg)?;
            let path = args.run.out_path("distill.csv");
            write_output(&path, &records_csv(&cfg, &records))?;
            for r in &records {
                println!(
                    "round {}: e0 {:+.9}  theta {:+.9}  active {:.9}  value {:+.9}",
                    r.round, r.e0, r.theta, r.active_prob, r.cond_expect
                );
            }
            println!("wrote {}", path.display());
        }
    }
    Ok(())
}

fn print_table(rows: &[vev_harness::experiments::SummaryRow]) {
    println!("round  sampled-mean  std-error    active/shots           exact");
    for r in rows {
        println!(
            "{:>5}  {:+.9} {:.3e}  {:>10}/{:<10}  {:+.9}",
            r.round, r.mean, r.std_error, r.active_count, r.shots, r.exact_value
        );
    }
}
