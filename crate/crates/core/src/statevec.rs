//! Dense statevector over physical ⊕ ancilla qubits: gate application,
//! observable expectation, ancilla projection and seeded shot sampling.
//!
//! Qubit 0 sits on the least significant bit of the amplitude index; ancilla
//! j occupies index `n_physical + j`. Keeping ancillas above the physical
//! qubits means the all-ancillas-zero subspace is always the leading block of
//! the amplitude array and physical-register operators never depend on the
//! ancilla count.

use std::collections::BTreeMap;

use num_complex::Complex;
use rand::{RngExt, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::pauli::{PauliHamiltonian, MAX_QUBITS};
use crate::scalar::Scalar;

/// Hadamard gate.
pub fn hadamard<T: Scalar>() -> [[Complex<T>; 2]; 2] {
    let h = Complex::new(T::FRAC_1_SQRT_2(), T::zero());
    [[h, h], [h, -h]]
}

/// Phase gate diag(1, i).
pub fn phase_s<T: Scalar>() -> [[Complex<T>; 2]; 2] {
    let zero = Complex::new(T::zero(), T::zero());
    [
        [Complex::new(T::one(), T::zero()), zero],
        [zero, Complex::new(T::zero(), T::one())],
    ]
}

/// Split of a register into physical qubits and ancillas stacked above them.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RegisterLayout {
    pub n_physical: usize,
    pub n_ancilla: usize,
}

impl RegisterLayout {
    pub fn new(n_physical: usize, n_ancilla: usize) -> Self {
        Self {
            n_physical,
            n_ancilla,
        }
    }

    pub fn n_qubits(&self) -> usize {
        self.n_physical + self.n_ancilla
    }

    /// Global index of ancilla `j`.
    pub fn ancilla_qubit(&self, j: usize) -> usize {
        self.n_physical + j
    }

    fn check_against(&self, state: &StateVector<impl Scalar>) -> Result<()> {
        if self.n_qubits() != state.n_qubits {
            return Err(Error::Config(format!(
                "layout covers {} qubits but the state has {}",
                self.n_qubits(),
                state.n_qubits
            )));
        }
        Ok(())
    }
}

/// Normalized complex amplitudes over a qubit register.
#[derive(Debug, Clone, PartialEq)]
pub struct StateVector<T> {
    n_qubits: usize,
    amps: Vec<Complex<T>>,
}

impl<T: Scalar> StateVector<T> {
    /// Computational basis state from a bitstring; character `i` of `bits`
    /// is the value of qubit `i`.
    pub fn basis_state(n_qubits: usize, bits: &str) -> Result<Self> {
        check_register_size(n_qubits)?;
        if bits.len() != n_qubits {
            return Err(Error::Config(format!(
                "bitstring '{bits}' does not match a {n_qubits}-qubit register"
            )));
        }
        let mut index = 0usize;
        for (q, ch) in bits.chars().enumerate() {
            match ch {
                '0' => {}
                '1' => index |= 1 << q,
                _ => {
                    return Err(Error::Config(format!(
                        "bitstring '{bits}' contains a character other than 0/1"
                    )))
                }
            }
        }
        let mut amps = vec![Complex::new(T::zero(), T::zero()); 1 << n_qubits];
        amps[index] = Complex::new(T::one(), T::zero());
        Ok(Self { n_qubits, amps })
    }

    /// Wrap raw amplitudes, renormalizing; the length must be a power of two.
    pub fn from_amplitudes(amps: Vec<Complex<T>>) -> Result<Self> {
        if amps.is_empty() || !amps.len().is_power_of_two() {
            return Err(Error::Config(format!(
                "amplitude count {} is not a power of two",
                amps.len()
            )));
        }
        let n_qubits = amps.len().trailing_zeros() as usize;
        check_register_size(n_qubits)?;
        let norm_sqr: T = amps.iter().map(|a| a.norm_sqr()).sum();
        if norm_sqr < T::prob_floor() {
            return Err(Error::Validation("amplitude vector has zero norm".into()));
        }
        let scale = T::one() / norm_sqr.sqrt();
        let amps = amps.into_iter().map(|a| a * scale).collect();
        Ok(Self { n_qubits, amps })
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn amplitudes(&self) -> &[Complex<T>] {
        &self.amps
    }

    pub fn norm_sqr(&self) -> T {
        self.amps.iter().map(|a| a.norm_sqr()).sum()
    }

    /// ⟨self|other⟩.
    pub fn inner(&self, other: &Self) -> Complex<T> {
        assert_eq!(self.n_qubits, other.n_qubits, "register size mismatch");
        self.amps
            .iter()
            .zip(other.amps.iter())
            .map(|(a, b)| a.conj() * *b)
            .fold(Complex::new(T::zero(), T::zero()), |acc, v| acc + v)
    }

    /// |⟨self|other⟩|².
    pub fn fidelity(&self, other: &Self) -> T {
        self.inner(other).norm_sqr()
    }

    /// Same physical state with `count` fresh |0⟩ ancillas stacked on top.
    pub fn append_ancillas(&self, count: usize) -> Result<Self> {
        let n_qubits = self.n_qubits + count;
        check_register_size(n_qubits)?;
        let mut amps = self.amps.clone();
        amps.resize(1 << n_qubits, Complex::new(T::zero(), T::zero()));
        Ok(Self { n_qubits, amps })
    }

    /// Apply a 2×2 unitary to qubit `q`.
    pub fn apply_one_qubit(&mut self, q: usize, u: &[[Complex<T>; 2]; 2]) -> Result<()> {
        assert!(q < self.n_qubits, "qubit index {q} out of range");
        check_unitary_2x2(u)?;
        let step = 1 << q;
        let mut base = 0;
        while base < self.amps.len() {
            for offset in 0..step {
                let i0 = base + offset;
                let i1 = i0 + step;
                let a = self.amps[i0];
                let b = self.amps[i1];
                self.amps[i0] = u[0][0] * a + u[0][1] * b;
                self.amps[i1] = u[1][0] * a + u[1][1] * b;
            }
            base += 2 * step;
        }
        Ok(())
    }

    /// Apply a dense unitary to the listed target qubits. `targets[0]` is the
    /// least significant bit of the block index.
    pub fn apply_block(&mut self, targets: &[usize], u: &crate::dense::DenseMatrix<T>) -> Result<()> {
        self.apply_block_inner(None, targets, u)
    }

    /// Apply a dense unitary to the targets only on the control=1 branch.
    ///
    /// Any global phase inside `u` becomes a relative phase between the two
    /// control branches, so callers that need `i·exp(−iθH)` under control
    /// apply the exponential here and put the factor i on the control qubit
    /// as a phase gate.
    pub fn apply_controlled_block(
        &mut self,
        control: usize,
        targets: &[usize],
        u: &crate::dense::DenseMatrix<T>,
    ) -> Result<()> {
        if targets.contains(&control) {
            return Err(Error::Config(format!(
                "control qubit {control} overlaps the target set"
            )));
        }
        self.apply_block_inner(Some(control), targets, u)
    }

    fn apply_block_inner(
        &mut self,
        control: Option<usize>,
        targets: &[usize],
        u: &crate::dense::DenseMatrix<T>,
    ) -> Result<()> {
        for (k, &t) in targets.iter().enumerate() {
            assert!(t < self.n_qubits, "target qubit {t} out of range");
            if targets[..k].contains(&t) {
                return Err(Error::Config(format!("duplicate target qubit {t}")));
            }
        }
        if let Some(c) = control {
            assert!(c < self.n_qubits, "control qubit {c} out of range");
        }
        let subdim = 1usize << targets.len();
        if u.dim() != subdim {
            return Err(Error::Config(format!(
                "block dimension {} does not match {} target qubits",
                u.dim(),
                targets.len()
            )));
        }
        let defect = u.unitarity_defect();
        if defect > T::validation_tol() {
            return Err(Error::Validation(format!(
                "block matrix is not unitary (defect {defect})"
            )));
        }

        // Scatter table: block subindex bits -> register bit positions.
        let mut scatter = vec![0usize; subdim];
        for (r, slot) in scatter.iter_mut().enumerate() {
            let mut bits = 0usize;
            for (m, &t) in targets.iter().enumerate() {
                if (r >> m) & 1 == 1 {
                    bits |= 1 << t;
                }
            }
            *slot = bits;
        }
        let target_mask: usize = targets.iter().map(|&t| 1 << t).sum();

        let mut buf = vec![Complex::new(T::zero(), T::zero()); subdim];
        for base in 0..self.amps.len() {
            if base & target_mask != 0 {
                continue;
            }
            if let Some(c) = control {
                if (base >> c) & 1 == 0 {
                    continue;
                }
            }
            for (r, slot) in scatter.iter().enumerate() {
                buf[r] = self.amps[base | slot];
            }
            for (r, slot) in scatter.iter().enumerate() {
                let mut acc = Complex::new(T::zero(), T::zero());
                for (s, b) in buf.iter().enumerate() {
                    acc += u.get(r, s) * *b;
                }
                self.amps[base | slot] = acc;
            }
        }
        Ok(())
    }

    /// ⟨ψ|O|ψ⟩ for a Hermitian Pauli-sum observable. The observable may act
    /// on fewer qubits than the register; missing qubits are identity.
    pub fn expectation(&self, obs: &PauliHamiltonian<T>) -> Result<T> {
        if obs.n_qubits() > self.n_qubits {
            return Err(Error::Config(format!(
                "observable on {} qubits exceeds the {}-qubit register",
                obs.n_qubits(),
                self.n_qubits
            )));
        }
        let mut total = Complex::new(T::zero(), T::zero());
        for term in obs.terms() {
            let action = term.action();
            let mut acc = Complex::new(T::zero(), T::zero());
            for (i, amp) in self.amps.iter().enumerate() {
                let (j, weight) = action.apply(i);
                acc += self.amps[j].conj() * weight * *amp;
            }
            total += acc;
        }
        debug_assert!(
            total.im.abs() < T::lit(1e-9),
            "Hermitian expectation should be real"
        );
        Ok(total.re)
    }

    /// Probability of all ancillas reading 0 and the renormalized physical
    /// state on that branch.
    pub fn project_ancillas_zero(&self, layout: &RegisterLayout) -> Result<(T, StateVector<T>)> {
        layout.check_against(self)?;
        let phys_dim = 1usize << layout.n_physical;
        let active = &self.amps[..phys_dim];
        let prob: T = active.iter().map(|a| a.norm_sqr()).sum();
        if prob == T::zero() {
            return Err(Error::DegenerateProtocol(
                "the all-ancillas-zero subspace has zero probability".into(),
            ));
        }
        let scale = T::one() / prob.sqrt();
        let projected = StateVector {
            n_qubits: layout.n_physical,
            amps: active.iter().map(|a| *a * scale).collect(),
        };
        Ok((prob, projected))
    }

    /// Draw `n_shots` independent full-register measurements in the
    /// computational basis. Identical seeds give identical tallies.
    pub fn sample_shots(&self, n_shots: u64, seed: u64) -> ShotTally {
        assert!(n_shots >= 1, "at least one shot required");
        // Cumulative distribution in f64; only the outcome index depends on it.
        let mut cumulative = Vec::with_capacity(self.amps.len());
        let mut acc = 0.0f64;
        for a in &self.amps {
            acc += a
                .norm_sqr()
                .to_f64()
                .expect("probability representable as f64");
            cumulative.push(acc);
        }
        let last = self.amps.len() - 1;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut raw = vec![0u64; self.amps.len()];
        for _ in 0..n_shots {
            let u: f64 = rng.random::<f64>() * acc;
            let idx = cumulative.partition_point(|&c| c <= u).min(last);
            raw[idx] += 1;
        }
        let counts: BTreeMap<usize, u64> = raw
            .into_iter()
            .enumerate()
            .filter(|&(_, c)| c > 0)
            .collect();
        ShotTally {
            counts,
            n_shots,
            seed,
            n_qubits: self.n_qubits,
        }
    }
}

/// Measurement outcome counts from one seeded sampling run.
#[derive(Debug, Clone)]
pub struct ShotTally {
    counts: BTreeMap<usize, u64>,
    n_shots: u64,
    seed: u64,
    n_qubits: usize,
}

impl ShotTally {
    /// Counts keyed by basis index (qubit 0 = least significant bit).
    pub fn counts(&self) -> &BTreeMap<usize, u64> {
        &self.counts
    }

    pub fn n_shots(&self) -> u64 {
        self.n_shots
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    /// Render a basis index as a bitstring, qubit 0 first.
    pub fn bitstring(&self, index: usize) -> String {
        (0..self.n_qubits)
            .map(|q| if (index >> q) & 1 == 1 { '1' } else { '0' })
            .collect()
    }
}

fn check_register_size(n_qubits: usize) -> Result<()> {
    if n_qubits == 0 {
        return Err(Error::Config("register needs at least one qubit".into()));
    }
    if n_qubits > MAX_QUBITS {
        return Err(Error::Config(format!(
            "register of {n_qubits} qubits exceeds the {MAX_QUBITS}-qubit limit"
        )));
    }
    Ok(())
}

fn check_unitary_2x2<T: Scalar>(u: &[[Complex<T>; 2]; 2]) -> Result<()> {
    let mut worst = T::zero();
    for col in 0..2 {
        for row in 0..2 {
            // (U†U)[row][col]
            let mut acc = Complex::new(T::zero(), T::zero());
            for k in 0..2 {
                acc += u[k][row].conj() * u[k][col];
            }
            let expect = if row == col { T::one() } else { T::zero() };
            worst = worst.max((acc - Complex::new(expect, T::zero())).norm());
        }
    }
    if worst > T::validation_tol() {
        return Err(Error::Validation(format!(
            "2x2 gate is not unitary (defect {worst})"
        )));
    }
    Ok(())
}
