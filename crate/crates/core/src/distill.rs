//! Vacuum distillation: iterated ancilla-controlled twirls that route
//! excited-state amplitude onto ancilla-|1⟩ branches.
//!
//! One twirl is Hadamard on a fresh ancilla, then the controlled unitary
//! i·exp(−iθH_T) on the physical register, then Hadamard again. With the
//! time parameter fixed by θ·E₀ = π/2 the ground-state amplitude passes to
//! the ancilla-0 branch with unit coefficient while contamination at other
//! energies interferes toward the ancilla-1 branch. Each round re-estimates
//! the ground energy from the current active state, so no exact spectrum is
//! ever consumed.

use crate::dense::expm_exact;
use crate::error::{Error, Result};
use crate::evolve::{StepUnitaries, TrotterSplit};
use crate::models::ModelSpec;
use crate::pauli::PauliHamiltonian;
use crate::scalar::Scalar;
use crate::statevec::{hadamard, phase_s, RegisterLayout, StateVector};

/// How the controlled exponential of one twirl is realized.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum UMode {
    /// Single exact exponential from the eigendecomposition.
    Exact,
    /// Symmetric second-order split sub-steps covering the total time θ.
    Trotterized { steps: usize },
}

pub const DEFAULT_TWIRL_STEPS: usize = 100;

/// Number of rounds and controlled-unitary realization for a distillation run.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TwirlConfig {
    pub rounds: usize,
    pub u_mode: UMode,
}

impl TwirlConfig {
    pub fn new(rounds: usize) -> Self {
        Self {
            rounds,
            u_mode: UMode::Trotterized {
                steps: DEFAULT_TWIRL_STEPS,
            },
        }
    }

    pub fn with_u_mode(mut self, u_mode: UMode) -> Self {
        self.u_mode = u_mode;
        self
    }

    fn validate(&self) -> Result<()> {
        if let UMode::Trotterized { steps } = self.u_mode {
            if steps == 0 {
                return Err(Error::Config("twirl sub-step count must be at least 1".into()));
            }
        }
        Ok(())
    }
}

/// Telemetry for one round of the protocol.
///
/// `round` 0 is the raw approximate vacuum before any twirl. Every record
/// satisfies `theta · e0 = π/2`; `theta` is the time parameter the *next*
/// twirl will use.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TwirlRecord<T> {
    pub round: usize,
    pub e0: T,
    pub theta: T,
    pub active_prob: T,
    pub cond_expect: T,
}

/// Ground-energy estimate ⟨ψ|H_T|ψ⟩ on the renormalized active branch.
pub fn estimate_ground_energy<T: Scalar>(
    state: &StateVector<T>,
    layout: &RegisterLayout,
    ht: &PauliHamiltonian<T>,
) -> Result<T> {
    let (_, projected) = state.project_ancillas_zero(layout)?;
    projected.expectation(ht)
}

/// Time parameter from the defining relation θ·E₀ = π/2.
pub fn theta_for<T: Scalar>(e0: T) -> Result<T> {
    if e0 == T::zero() {
        return Err(Error::DegenerateProtocol(
            "ground-energy estimate is zero; the twirl time parameter is undefined".into(),
        ));
    }
    let theta = T::FRAC_PI_2() / e0;
    if !theta.is_finite() {
        return Err(Error::DegenerateProtocol(format!(
            "twirl time parameter overflowed for energy estimate {e0}"
        )));
    }
    Ok(theta)
}

/// Expectation of an observable on the renormalized active branch.
pub fn conditional_expectation<T: Scalar>(
    state: &StateVector<T>,
    layout: &RegisterLayout,
    obs: &PauliHamiltonian<T>,
) -> Result<T> {
    let (_, projected) = state.project_ancillas_zero(layout)?;
    projected.expectation(obs)
}

/// Apply one twirl: H on the ancilla, controlled i·exp(−iθH_T) on the
/// physical register, H on the ancilla again.
pub fn twirl_round<T: Scalar>(
    state: &mut StateVector<T>,
    layout: &RegisterLayout,
    ht: &PauliHamiltonian<T>,
    theta: T,
    ancilla: usize,
    cfg: &TwirlConfig,
) -> Result<()> {
    cfg.validate()?;
    if ancilla >= layout.n_ancilla {
        return Err(Error::Config(format!(
            "ancilla {ancilla} outside the {}-ancilla block",
            layout.n_ancilla
        )));
    }
    if ht.n_qubits() != layout.n_physical {
        return Err(Error::Config(format!(
            "Hamiltonian acts on {} qubits but the layout has {} physical qubits",
            ht.n_qubits(),
            layout.n_physical
        )));
    }
    let control = layout.ancilla_qubit(ancilla);
    let targets: Vec<usize> = (0..layout.n_physical).collect();

    state.apply_one_qubit(control, &hadamard())?;
    match cfg.u_mode {
        UMode::Exact => {
            let u = expm_exact(ht, theta)?;
            state.apply_controlled_block(control, &targets, &u)?;
        }
        UMode::Trotterized { steps } => {
            let split = TrotterSplit::of(ht)?;
            let dt = theta / T::lit(steps as f64);
            let step = StepUnitaries::new(&split, dt)?;
            for _ in 0..steps {
                step.apply_controlled(state, control)?;
            }
        }
    }
    // The factor i of the controlled unitary is a phase gate on the control.
    state.apply_one_qubit(control, &phase_s())?;
    state.apply_one_qubit(control, &hadamard())
}

/// Run the full protocol and also return the register state after every
/// round, for shot sampling.
pub fn run_distillation_states<T: Scalar>(
    psi0: &StateVector<T>,
    spec: &ModelSpec<T>,
    cfg: &TwirlConfig,
    obs: &PauliHamiltonian<T>,
) -> Result<(Vec<TwirlRecord<T>>, Vec<StateVector<T>>)> {
    cfg.validate()?;
    if psi0.n_qubits() != spec.n_physical() {
        return Err(Error::Config(format!(
            "approximate vacuum has {} qubits but the model needs {}",
            psi0.n_qubits(),
            spec.n_physical()
        )));
    }
    let ht = spec.target_hamiltonian();
    let layout = RegisterLayout::new(spec.n_physical(), cfg.rounds);
    let mut state = psi0.append_ancillas(cfg.rounds)?;

    let mut records = Vec::with_capacity(cfg.rounds + 1);
    let mut states = Vec::with_capacity(cfg.rounds + 1);
    records.push(observe_round(&state, &layout, &ht, obs, 0)?);
    states.push(state.clone());

    for round in 1..=cfg.rounds {
        let theta = records[round - 1].theta;
        twirl_round(&mut state, &layout, &ht, theta, round - 1, cfg)?;
        records.push(observe_round(&state, &layout, &ht, obs, round)?);
        states.push(state.clone());
    }
    Ok((records, states))
}

/// Run the full protocol: record 0 describes the raw approximate vacuum,
/// record j the active branch after the j-th twirl.
pub fn run_distillation<T: Scalar>(
    psi0: &StateVector<T>,
    spec: &ModelSpec<T>,
    cfg: &TwirlConfig,
    obs: &PauliHamiltonian<T>,
) -> Result<Vec<TwirlRecord<T>>> {
    Ok(run_distillation_states(psi0, spec, cfg, obs)?.0)
}

fn observe_round<T: Scalar>(
    state: &StateVector<T>,
    layout: &RegisterLayout,
    ht: &PauliHamiltonian<T>,
    obs: &PauliHamiltonian<T>,
    round: usize,
) -> Result<TwirlRecord<T>> {
    let (active_prob, projected) = state.project_ancillas_zero(layout)?;
    if active_prob < T::prob_floor() {
        return Err(Error::DegenerateProtocol(format!(
            "active probability {active_prob} underflowed at round {round}"
        )));
    }
    let e0 = projected.expectation(ht)?;
    let theta = theta_for(e0)?;
    let cond_expect = projected.expectation(obs)?;
    Ok(TwirlRecord {
        round,
        e0,
        theta,
        active_prob,
        cond_expect,
    })
}
