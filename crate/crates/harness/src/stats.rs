//! Shot statistics: sample summaries, conditional means over active shots,
//! and a least-squares frequency fit for the oscillation traces.

use anyhow::{bail, Result};

use vev_core::pauli::PauliHamiltonian;
use vev_core::statevec::{RegisterLayout, ShotTally};

/// Arithmetic mean and standard error (sample std / √n) of a sample set.
pub fn summarize(samples: &[f64]) -> Result<(f64, f64)> {
    if samples.is_empty() {
        bail!("cannot summarize an empty sample set");
    }
    let n = samples.len() as f64;
    let mean = samples.iter().sum::<f64>() / n;
    if samples.len() == 1 {
        return Ok((mean, 0.0));
    }
    let var = samples.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (n - 1.0);
    Ok((mean, (var / n).sqrt()))
}

/// Mean of a diagonal observable over the active shots (all ancilla bits
/// zero), plus the active count.
pub fn conditional_mean_active(
    tally: &ShotTally,
    layout: &RegisterLayout,
    obs: &PauliHamiltonian<f64>,
) -> Result<(f64, u64)> {
    if layout.n_qubits() != tally.n_qubits() {
        bail!(
            "layout covers {} qubits but the tally has {}",
            layout.n_qubits(),
            tally.n_qubits()
        );
    }
    let phys_mask = (1usize << layout.n_physical) - 1;
    let mut active = 0u64;
    let mut acc = 0.0f64;
    for (&index, &count) in tally.counts() {
        if index >> layout.n_physical != 0 {
            continue;
        }
        let value = obs
            .diagonal_eigenvalue(index & phys_mask)
            .ok_or_else(|| anyhow::anyhow!("observable is not diagonal; shots cannot score it"))?;
        active += count;
        acc += value * count as f64;
    }
    if active == 0 {
        bail!("no active shots in the tally");
    }
    Ok((acc / active as f64, active))
}

/// Shots with at least one ancilla reading 1.
pub fn excluded_count(tally: &ShotTally, layout: &RegisterLayout) -> u64 {
    tally
        .counts()
        .iter()
        .filter(|(&index, _)| index >> layout.n_physical != 0)
        .map(|(_, &count)| count)
        .sum()
}

/// Best-fit angular frequency of `y ≈ c₀ + c₁·cos(ωt) + c₂·sin(ωt)` over a
/// bracket, by scanning and golden-section refinement of the residual.
pub fn fit_cosine_frequency(samples: &[(f64, f64)], omega_lo: f64, omega_hi: f64) -> Result<f64> {
    if samples.len() < 8 {
        bail!("frequency fit needs at least 8 samples");
    }
    let residual = |omega: f64| -> f64 {
        // Normal equations for the three linear parameters.
        let mut ata = [[0.0f64; 3]; 3];
        let mut atb = [0.0f64; 3];
        for &(t, y) in samples {
            let row = [1.0, (omega * t).cos(), (omega * t).sin()];
            for i in 0..3 {
                for j in 0..3 {
                    ata[i][j] += row[i] * row[j];
                }
                atb[i] += row[i] * y;
            }
        }
        let coeffs = solve3(ata, atb);
        samples
            .iter()
            .map(|&(t, y)| {
                let fit = coeffs[0] + coeffs[1] * (omega * t).cos() + coeffs[2] * (omega * t).sin();
                (y - fit).powi(2)
            })
            .sum()
    };

    let grid = 600;
    let mut best = omega_lo;
    let mut best_res = f64::INFINITY;
    for k in 0..=grid {
        let omega = omega_lo + (omega_hi - omega_lo) * k as f64 / grid as f64;
        let r = residual(omega);
        if r < best_res {
            best_res = r;
            best = omega;
        }
    }
    let span = (omega_hi - omega_lo) / grid as f64;
    let (mut a, mut b) = (best - span, best + span);
    let phi = (5.0f64.sqrt() - 1.0) / 2.0;
    let mut x1 = b - phi * (b - a);
    let mut x2 = a + phi * (b - a);
    let (mut f1, mut f2) = (residual(x1), residual(x2));
    for _ in 0..60 {
        if f1 < f2 {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - phi * (b - a);
            f1 = residual(x1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + phi * (b - a);
            f2 = residual(x2);
        }
    }
    Ok((a + b) / 2.0)
}

fn solve3(mut a: [[f64; 3]; 3], mut b: [f64; 3]) -> [f64; 3] {
    for col in 0..3 {
        let pivot = (col..3)
            .max_by(|&i, &j| a[i][col].abs().total_cmp(&a[j][col].abs()))
            .unwrap();
        a.swap(col, pivot);
        b.swap(col, pivot);
        let diag = a[col][col];
        if diag.abs() < 1e-300 {
            continue;
        }
        for row in 0..3 {
            if row != col {
                let factor = a[row][col] / diag;
                for k in col..3 {
                    a[row][k] -= factor * a[col][k];
                }
                b[row] -= factor * b[col];
            }
        }
    }
    let mut x = [0.0f64; 3];
    for i in 0..3 {
        x[i] = if a[i][i].abs() < 1e-300 { 0.0 } else { b[i] / a[i][i] };
    }
    x
}
