//! The three experiment drivers: the preparation/evolution trace, the
//! per-round distillation tables, and a raw protocol-telemetry dump.

use anyhow::{bail, Context, Result};
use rayon::prelude::*;

use vev_core::distill::{run_distillation, run_distillation_states, TwirlConfig, TwirlRecord};
use vev_core::evolve::{evolve_constant, run_adiabatic_trace, Schedule};
use vev_core::models::ModelKind;
use vev_core::statevec::{RegisterLayout, StateVector};

use crate::config::{ExperimentConfig, SeedStream};
use crate::stats::{conditional_mean_active, summarize};

/// One row of the preparation/evolution trace.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TraceRow {
    pub t: f64,
    pub exact_z: f64,
    pub sampled_z: f64,
}

/// One row of a distillation table.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SummaryRow {
    pub round: usize,
    pub mean: f64,
    pub std_error: f64,
    pub active_count: u64,
    pub shots: u64,
    pub exact_value: f64,
}

/// Observable trace over the adiabatic ramp followed by an equally long
/// constant-Hamiltonian segment, with one sampled estimate per time point.
pub fn run_trace(cfg: &ExperimentConfig) -> Result<Vec<TraceRow>> {
    if cfg.model != ModelKind::OneQubit {
        bail!("the trace experiment is defined for the one-qubit model");
    }
    let spec = cfg.spec();
    let obs = spec.observable();
    let sched = Schedule::new(cfg.t_total, cfg.dt)?;
    let initial = cfg.initial_state()?;

    let ramp = run_adiabatic_trace(&spec, &sched, &initial)?;
    let t_end = sched.t_total();
    let (_, prepared) = ramp.last().expect("ramp trace is never empty").clone();
    let constant = evolve_constant(&prepared, &spec.target_hamiltonian(), t_end, cfg.dt)?;

    let mut points: Vec<(f64, StateVector<f64>)> = ramp;
    points.extend(
        constant
            .into_iter()
            .skip(1)
            .map(|(offset, state)| (t_end + offset, state)),
    );

    let seeds = SeedStream::take(cfg.seed, points.len());
    let layout = RegisterLayout::new(spec.n_physical(), 0);
    points
        .par_iter()
        .zip(seeds.par_iter())
        .map(|((t, state), &seed)| {
            let exact_z = state.expectation(&obs)?;
            let tally = state.sample_shots(cfg.shots, seed);
            let (sampled_z, _) = conditional_mean_active(&tally, &layout, &obs)?;
            Ok(TraceRow {
                t: *t,
                exact_z,
                sampled_z,
            })
        })
        .collect()
}

/// Distillation table: per round, the sampled conditional mean over active
/// shots averaged across reps, the active counts, and the exact statevector
/// reference.
pub fn run_table(cfg: &ExperimentConfig) -> Result<Vec<SummaryRow>> {
    if cfg.rounds > 8 {
        bail!("round count {} exceeds the 8-ancilla budget", cfg.rounds);
    }
    let spec = cfg.spec();
    let obs = spec.observable();
    let sched = Schedule::new(cfg.t_total, cfg.dt)?;
    let twirl = TwirlConfig {
        rounds: cfg.rounds,
        u_mode: cfg.u_mode,
    };

    let ramp = run_adiabatic_trace(&spec, &sched, &cfg.initial_state()?)?;
    let psi0 = ramp.last().expect("ramp trace is never empty").1.clone();
    let (records, states) = run_distillation_states(&psi0, &spec, &twirl, &obs)?;
    let layout = RegisterLayout::new(spec.n_physical(), cfg.rounds);

    // Rep r re-prepares the same deterministic state; only sampling varies,
    // through the recorded seed derivation.
    let rep_masters = SeedStream::take(cfg.seed, cfg.reps);
    let per_rep: Vec<Vec<(f64, u64)>> = rep_masters
        .par_iter()
        .map(|&rep_master| {
            let round_seeds = SeedStream::take(rep_master, cfg.rounds + 1);
            states
                .iter()
                .zip(round_seeds)
                .map(|(state, seed)| {
                    let tally = state.sample_shots(cfg.shots, seed);
                    conditional_mean_active(&tally, &layout, &obs)
                })
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;

    (0..=cfg.rounds)
        .map(|round| {
            let means: Vec<f64> = per_rep.iter().map(|rep| rep[round].0).collect();
            let (mean, std_error) = summarize(&means)?;
            let active_count: u64 = per_rep.iter().map(|rep| rep[round].1).sum();
            Ok(SummaryRow {
                round,
                mean,
                std_error,
                active_count,
                shots: cfg.shots * cfg.reps as u64,
                exact_value: records[round].cond_expect,
            })
        })
        .collect()
}

/// Protocol telemetry without sampling: the per-round records themselves.
pub fn run_records(cfg: &ExperimentConfig) -> Result<Vec<TwirlRecord<f64>>> {
    if cfg.rounds > 8 {
        bail!("round count {} exceeds the 8-ancilla budget", cfg.rounds);
    }
    let spec = cfg.spec();
    let sched = Schedule::new(cfg.t_total, cfg.dt)?;
    let ramp = run_adiabatic_trace(&spec, &sched, &cfg.initial_state()?)?;
    let psi0 = ramp.last().expect("ramp trace is never empty").1.clone();
    let twirl = TwirlConfig {
        rounds: cfg.rounds,
        u_mode: cfg.u_mode,
    };
    Ok(run_distillation(&psi0, &spec, &twirl, &spec.observable())?)
}

pub fn trace_csv(cfg: &ExperimentConfig, rows: &[TraceRow]) -> String {
    let mut out = cfg.csv_header();
    out.push_str("t,exact_z,sampled_z\n");
    for row in rows {
        out.push_str(&format!("{},{},{}\n", row.t, row.exact_z, row.sampled_z));
    }
    out
}

pub fn table_csv(cfg: &ExperimentConfig, rows: &[SummaryRow]) -> String {
    let mut out = cfg.csv_header();
    out.push_str("round,mean,std_error,active_count,shots,exact_value\n");
    for row in rows {
        out.push_str(&format!(
            "{},{},{},{},{},{}\n",
            row.round, row.mean, row.std_error, row.active_count, row.shots, row.exact_value
        ));
    }
    out
}

pub fn records_csv(cfg: &ExperimentConfig, records: &[TwirlRecord<f64>]) -> String {
    let mut out = cfg.csv_header();
    out.push_str("round,e0,theta,active_prob,cond_expect\n");
    for r in records {
        out.push_str(&format!(
            "{},{},{},{},{}\n",
            r.round, r.e0, r.theta, r.active_prob, r.cond_expect
        ));
    }
    out
}

/// Write CSV content to a file, creating parent directories as needed.
pub fn write_output(path: &std::path::Path, content: &str) -> Result<()> {
    if let Some(parent) = path.parent() {
        if !parent.as_os_str().is_empty() {
            std::fs::create_dir_all(parent)
                .with_context(|| format!("creating {}", parent.display()))?;
        }
    }
    std::fs::write(path, content).with_context(|| format!("writing {}", path.display()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use vev_core::models::ModelSpec;

    fn quick_cfg(model: ModelKind) -> ExperimentConfig {
        let mut cfg = ExperimentConfig::defaults(model);
        cfg.shots = 2000;
        cfg.t_total = 6.0;
        cfg.dt = 0.25;
        cfg.rounds = 2;
        cfg
    }

    #[test]
    fn trace_covers_both_segments_at_step_cadence() {
        let cfg = quick_cfg(ModelKind::OneQubit);
        let rows = run_trace(&cfg).unwrap();
        // 24 ramp steps + initial point + 24 constant steps.
        assert_eq!(rows.len(), 49);
        assert_eq!(rows[0].t, 0.0);
        assert!((rows[0].exact_z + 1.0).abs() < 1e-12);
        assert!((rows.last().unwrap().t - 12.0).abs() < 1e-9);
        for row in &rows {
            assert!(row.exact_z.abs() <= 1.0 + 1e-9);
            assert!(row.sampled_z.abs() <= 1.0);
        }
    }

    #[test]
    fn trace_rejects_the_two_site_model() {
        let cfg = quick_cfg(ModelKind::SchwingerTwoSite);
        assert!(run_trace(&cfg).is_err());
    }

    #[test]
    fn table_accounts_for_every_shot() {
        let mut cfg = quick_cfg(ModelKind::OneQubit);
        cfg.reps = 3;
        let rows = run_table(&cfg).unwrap();
        assert_eq!(rows.len(), cfg.rounds + 1);
        for row in &rows {
            assert_eq!(row.shots, cfg.shots * cfg.reps as u64);
            assert!(row.active_count <= row.shots);
            // Round 0 has fresh ancillas: nothing can be excluded.
            if row.round == 0 {
                assert_eq!(row.active_count, row.shots);
            }
        }
    }

    #[test]
    fn table_output_is_deterministic() {
        let cfg = quick_cfg(ModelKind::SchwingerTwoSite);
        let a = table_csv(&cfg, &run_table(&cfg).unwrap());
        let b = table_csv(&cfg, &run_table(&cfg).unwrap());
        assert_eq!(a, b);

        let mut different = cfg.clone();
        different.seed = 2;
        let c = table_csv(&different, &run_table(&different).unwrap());
        assert_ne!(a, c);
    }

    #[test]
    fn sampled_means_track_the_exact_column() {
        // At the reference schedule the exact column is the statevector
        // conditional expectation; sampled means stay within a loose
        // 6σ band of it.
        let mut cfg = ExperimentConfig::defaults(ModelKind::OneQubit);
        cfg.shots = 50_000;
        cfg.rounds = 1;
        let rows = run_table(&cfg).unwrap();
        let spec = ModelSpec::<f64>::one_qubit(1.0);
        let sigma = spec.measurement_variance().sqrt();
        for row in &rows {
            let band = 6.0 * sigma / (row.shots as f64).sqrt();
            assert!(
                (row.mean - row.exact_value).abs() < band,
                "round {}: {} vs {}",
                row.round,
                row.mean,
                row.exact_value
            );
        }
    }

    #[test]
    fn records_dump_matches_the_table_reference() {
        let cfg = quick_cfg(ModelKind::OneQubit);
        let records = run_records(&cfg).unwrap();
        let rows = run_table(&cfg).unwrap();
        assert_eq!(records.len(), rows.len());
        for (r, row) in records.iter().zip(rows.iter()) {
            assert!((r.cond_expect - row.exact_value).abs() < 1e-12);
        }
    }

    #[test]
    fn round_budget_is_enforced() {
        let mut cfg = quick_cfg(ModelKind::OneQubit);
        cfg.rounds = 9;
        assert!(run_table(&cfg).is_err());
        assert!(run_records(&cfg).is_err());
    }

    #[test]
    fn csv_headers_record_the_config() {
        let cfg = quick_cfg(ModelKind::OneQubit);
        let csv = table_csv(&cfg, &run_table(&cfg).unwrap());
        assert!(csv.contains("# model = one_qubit"));
        assert!(csv.contains("# seed = 1"));
        assert!(csv.contains("round,mean,std_error,active_count,shots,exact_value"));
    }
}
