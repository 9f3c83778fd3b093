//! Time evolution: linear interpolation between initial and target
//! Hamiltonians, symmetric second-order operator splitting, and the two
//! drivers built from them (adiabatic ramp, constant-Hamiltonian segment).

use crate::dense::{expm_exact, DenseMatrix};
use crate::error::{Error, Result};
use crate::models::ModelSpec;
use crate::pauli::PauliHamiltonian;
use crate::scalar::Scalar;
use crate::statevec::StateVector;

/// Discretization of a total evolution time into uniform steps.
///
/// The step count is rounded so that `n_steps · dt` covers the requested
/// time; the effective total is recorded in `t_total`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Schedule<T> {
    t_total: T,
    dt: T,
    n_steps: usize,
}

impl<T: Scalar> Schedule<T> {
    pub fn new(t_total: T, dt: T) -> Result<Self> {
        if !dt.is_finite() || dt <= T::zero() {
            return Err(Error::Config(format!("step size must be positive, got {dt}")));
        }
        if !t_total.is_finite() || t_total < T::zero() {
            return Err(Error::Config(format!(
                "total time must be non-negative, got {t_total}"
            )));
        }
        let n_steps = (t_total / dt)
            .round()
            .to_usize()
            .ok_or_else(|| Error::Config("step count overflows usize".into()))?;
        let t_eff = dt * T::lit(n_steps as f64);
        Ok(Self {
            t_total: t_eff,
            dt,
            n_steps,
        })
    }

    pub fn t_total(&self) -> T {
        self.t_total
    }

    pub fn dt(&self) -> T {
        self.dt
    }

    pub fn n_steps(&self) -> usize {
        self.n_steps
    }

    /// Dimensionless ramp position s = t / T, clamped to [0, 1].
    pub fn s_at(&self, t: T) -> T {
        if self.t_total == T::zero() {
            return T::one();
        }
        (t / self.t_total).max(T::zero()).min(T::one())
    }
}

/// Two-part split H = A + B where all terms inside each part commute, so
/// each part exponentiates exactly.
#[derive(Debug, Clone)]
pub struct TrotterSplit<T> {
    part_a: PauliHamiltonian<T>,
    part_b: PauliHamiltonian<T>,
}

impl<T: Scalar> TrotterSplit<T> {
    /// Split into the diagonal terms (A) and the rest (B), verifying
    /// numerically that each part is internally commuting.
    pub fn of(h: &PauliHamiltonian<T>) -> Result<Self> {
        let n = h.n_qubits();
        let mut part_a = PauliHamiltonian::new(n);
        let mut part_b = PauliHamiltonian::new(n);
        for term in h.terms() {
            let ops: Vec<_> = term
                .word()
                .iter()
                .enumerate()
                .map(|(q, &p)| (q, p))
                .collect();
            if term.is_diagonal() {
                part_a.add_term(term.coeff(), &ops);
            } else {
                part_b.add_term(term.coeff(), &ops);
            }
        }
        let split = Self { part_a, part_b };
        split.check_internal_commutation()?;
        Ok(split)
    }

    pub fn part_a(&self) -> &PauliHamiltonian<T> {
        &self.part_a
    }

    pub fn part_b(&self) -> &PauliHamiltonian<T> {
        &self.part_b
    }

    fn check_internal_commutation(&self) -> Result<()> {
        for (name, part) in [("A", &self.part_a), ("B", &self.part_b)] {
            let n = part.n_qubits();
            let terms = part.terms();
            for i in 0..terms.len() {
                for j in i + 1..terms.len() {
                    let ops_i: Vec<_> =
                        terms[i].word().iter().enumerate().map(|(q, &p)| (q, p)).collect();
                    let ops_j: Vec<_> =
                        terms[j].word().iter().enumerate().map(|(q, &p)| (q, p)).collect();
                    let mi = PauliHamiltonian::new(n)
                        .with_term(terms[i].coeff(), &ops_i)
                        .to_dense()?;
                    let mj = PauliHamiltonian::new(n)
                        .with_term(terms[j].coeff(), &ops_j)
                        .to_dense()?;
                    let ab = mi.matrix().matmul(mj.matrix());
                    let ba = mj.matrix().matmul(mi.matrix());
                    let defect = ab.max_abs_diff(&ba);
                    if defect > T::validation_tol() {
                        return Err(Error::Validation(format!(
                            "terms {i} and {j} of split part {name} do not commute \
                             (commutator norm {defect})"
                        )));
                    }
                }
            }
        }
        Ok(())
    }
}

/// Exact step unitaries for one symmetric split step of size dt:
/// exp(−iA·dt/2), exp(−iB·dt), exp(−iA·dt/2).
pub(crate) struct StepUnitaries<T> {
    half_a: DenseMatrix<T>,
    full_b: DenseMatrix<T>,
    targets: Vec<usize>,
}

impl<T: Scalar> StepUnitaries<T> {
    pub(crate) fn new(split: &TrotterSplit<T>, dt: T) -> Result<Self> {
        let half = dt * T::lit(0.5);
        Ok(Self {
            half_a: expm_exact(split.part_a(), half)?,
            full_b: expm_exact(split.part_b(), dt)?,
            targets: (0..split.part_a().n_qubits()).collect(),
        })
    }

    pub(crate) fn apply(&self, state: &mut StateVector<T>) -> Result<()> {
        state.apply_block(&self.targets, &self.half_a)?;
        state.apply_block(&self.targets, &self.full_b)?;
        state.apply_block(&self.targets, &self.half_a)
    }

    /// Apply conditioned on a control qubit being 1.
    pub(crate) fn apply_controlled(&self, state: &mut StateVector<T>, control: usize) -> Result<()> {
        state.apply_controlled_block(control, &self.targets, &self.half_a)?;
        state.apply_controlled_block(control, &self.targets, &self.full_b)?;
        state.apply_controlled_block(control, &self.targets, &self.half_a)
    }
}

/// (1−s)·H₀ + s·H_T in canonical form.
pub fn interpolate<T: Scalar>(
    h0: &PauliHamiltonian<T>,
    ht: &PauliHamiltonian<T>,
    s: T,
) -> Result<PauliHamiltonian<T>> {
    if !(s >= T::zero() && s <= T::one()) {
        return Err(Error::Config(format!("ramp parameter s={s} outside [0, 1]")));
    }
    Ok(h0.scaled(T::one() - s).plus(&ht.scaled(s)))
}

/// One symmetric second-order step exp(−iA·dt/2)·exp(−iB·dt)·exp(−iA·dt/2).
pub fn trotter2_step<T: Scalar>(
    state: &mut StateVector<T>,
    split: &TrotterSplit<T>,
    dt: T,
) -> Result<()> {
    StepUnitaries::new(split, dt)?.apply(state)
}

/// Adiabatic ramp from the initial to the target Hamiltonian, recording the
/// state after every step. The interpolation parameter is evaluated at each
/// step midpoint, s = (t + dt/2)/T, which keeps the second-order accuracy of
/// the symmetric split.
pub fn run_adiabatic_trace<T: Scalar>(
    spec: &ModelSpec<T>,
    sched: &Schedule<T>,
    initial: &StateVector<T>,
) -> Result<Vec<(T, StateVector<T>)>> {
    if initial.n_qubits() != spec.n_physical() {
        return Err(Error::Config(format!(
            "initial state has {} qubits but the model needs {}",
            initial.n_qubits(),
            spec.n_physical()
        )));
    }
    let h0 = spec.initial_hamiltonian();
    let ht = spec.target_hamiltonian();
    let half = T::lit(0.5);
    let mut state = initial.clone();
    let mut trace = Vec::with_capacity(sched.n_steps() + 1);
    trace.push((T::zero(), state.clone()));
    for k in 0..sched.n_steps() {
        let t_mid = (T::lit(k as f64) + half) * sched.dt();
        let s = sched.s_at(t_mid);
        let h_s = interpolate(&h0, &ht, s)?;
        let split = TrotterSplit::of(&h_s)?;
        StepUnitaries::new(&split, sched.dt())?.apply(&mut state)?;
        trace.push((sched.dt() * T::lit((k + 1) as f64), state.clone()));
    }
    Ok(trace)
}

/// Final state of the adiabatic ramp: the approximate vacuum |ψ₀⟩.
pub fn run_adiabatic<T: Scalar>(
    spec: &ModelSpec<T>,
    sched: &Schedule<T>,
    initial: &StateVector<T>,
) -> Result<StateVector<T>> {
    Ok(run_adiabatic_trace(spec, sched, initial)?
        .pop()
        .expect("trace contains at least the initial state")
        .1)
}

/// Evolve under a fixed Hamiltonian with second-order split steps, emitting
/// the trajectory (t, state) including the t=0 input.
pub fn evolve_constant<T: Scalar>(
    state: &StateVector<T>,
    h: &PauliHamiltonian<T>,
    duration: T,
    dt: T,
) -> Result<Vec<(T, StateVector<T>)>> {
    let sched = Schedule::new(duration, dt)?;
    let split = TrotterSplit::of(h)?;
    let mut current = state.clone();
    let mut trajectory = Vec::with_capacity(sched.n_steps() + 1);
    trajectory.push((T::zero(), current.clone()));
    if sched.n_steps() == 0 {
        return Ok(trajectory);
    }
    let step = StepUnitaries::new(&split, dt)?;
    for k in 0..sched.n_steps() {
        step.apply(&mut current)?;
        trajectory.push((dt * T::lit((k + 1) as f64), current.clone()));
    }
    Ok(trajectory)
}
