//! The two benchmark models and their closed-form ground-state data.
//!
//! `OneQubit` is the transverse-field toy system X + J·Z. `SchwingerTwoSite`
//! is the two-site lattice gauge Hamiltonian ½(X₀X₁ + Y₀Y₁) + J·Z₀ obtained
//! from staggered fermions after eliminating the gauge link, with J = ½g²a².

use crate::error::Result;
use crate::pauli::{Pauli, PauliHamiltonian};
use crate::scalar::Scalar;
use crate::statevec::StateVector;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ModelKind {
    OneQubit,
    SchwingerTwoSite,
}

/// Closed-form ground-state energy and vacuum expectation value of the
/// model observable.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AnalyticGround<T> {
    pub e0: T,
    pub vev: T,
}

/// A benchmark model instance: which Hamiltonian family and its coupling J.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModelSpec<T> {
    pub kind: ModelKind,
    pub j: T,
}

impl<T: Scalar> ModelSpec<T> {
    pub fn new(kind: ModelKind, j: T) -> Self {
        assert!(j.is_finite(), "coupling must be finite");
        Self { kind, j }
    }

    pub fn one_qubit(j: T) -> Self {
        Self::new(ModelKind::OneQubit, j)
    }

    pub fn schwinger_two_site(j: T) -> Self {
        Self::new(ModelKind::SchwingerTwoSite, j)
    }

    pub fn n_physical(&self) -> usize {
        match self.kind {
            ModelKind::OneQubit => 1,
            ModelKind::SchwingerTwoSite => 2,
        }
    }

    /// Target Hamiltonian whose ground state the protocol distills.
    pub fn target_hamiltonian(&self) -> PauliHamiltonian<T> {
        let half = T::lit(0.5);
        match self.kind {
            ModelKind::OneQubit => PauliHamiltonian::new(1)
                .with_term(T::one(), &[(0, Pauli::X)])
                .with_term(self.j, &[(0, Pauli::Z)]),
            ModelKind::SchwingerTwoSite => PauliHamiltonian::new(2)
                .with_term(half, &[(0, Pauli::X), (1, Pauli::X)])
                .with_term(half, &[(0, Pauli::Y), (1, Pauli::Y)])
                .with_term(self.j, &[(0, Pauli::Z)]),
        }
    }

    /// Initial Hamiltonian with a trivial product ground state.
    pub fn initial_hamiltonian(&self) -> PauliHamiltonian<T> {
        let half = T::lit(0.5);
        match self.kind {
            ModelKind::OneQubit => PauliHamiltonian::new(1).with_term(T::one(), &[(0, Pauli::Z)]),
            ModelKind::SchwingerTwoSite => PauliHamiltonian::new(2)
                .with_term(half, &[(0, Pauli::Z)])
                .with_term(-half, &[(1, Pauli::Z)]),
        }
    }

    /// Observable whose vacuum expectation value the experiments report.
    pub fn observable(&self) -> PauliHamiltonian<T> {
        match self.kind {
            ModelKind::OneQubit => PauliHamiltonian::new(1).with_term(T::one(), &[(0, Pauli::Z)]),
            ModelKind::SchwingerTwoSite => self.initial_hamiltonian(),
        }
    }

    /// Ground state of the initial Hamiltonian as a basis state.
    pub fn initial_state(&self) -> StateVector<T> {
        let bits = match self.kind {
            ModelKind::OneQubit => "1",
            ModelKind::SchwingerTwoSite => "10",
        };
        StateVector::basis_state(self.n_physical(), bits)
            .expect("initial basis state fits the register")
    }

    /// Closed-form ground energy and observable VEV.
    ///
    /// Both models have E₀ = −√(1+J²). The one-qubit VEV −J/√(1+J²) follows
    /// from diagonalizing X + JZ; the two-site VEV is
    /// −(J² + J√(J²+1)) / (J² + J√(J²+1) + 1).
    pub fn analytic_ground(&self) -> AnalyticGround<T> {
        let root = (T::one() + self.j * self.j).sqrt();
        let e0 = -root;
        let vev = match self.kind {
            ModelKind::OneQubit => -self.j / root,
            ModelKind::SchwingerTwoSite => {
                let u = self.j * self.j + self.j * root;
                -u / (u + T::one())
            }
        };
        AnalyticGround { e0, vev }
    }

    /// Variance of the observable's computational-basis measurement
    /// distribution in the exact ground state.
    ///
    /// The observable squares to the identity on the ground state's support
    /// (the charge-neutral sector for the two-site model), so the variance is
    /// 1 − vev².
    pub fn measurement_variance(&self) -> T {
        let vev = self.analytic_ground().vev;
        T::one() - vev * vev
    }
}

/// Exact ground state of the target Hamiltonian, from the eigensolver.
pub fn exact_ground_state<T: Scalar>(spec: &ModelSpec<T>) -> Result<StateVector<T>> {
    let dense = spec.target_hamiltonian().to_dense()?;
    let eig = crate::dense::eig_hermitian(&dense)?;
    StateVector::from_amplitudes(eig.ground().1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dense::eig_hermitian;
    use crate::pauli::Pauli;

    const SQRT_2: f64 = std::f64::consts::SQRT_2;

    fn term_coeff(h: &PauliHamiltonian<f64>, word: &[Pauli]) -> Option<f64> {
        h.terms()
            .iter()
            .find(|t| t.word() == word)
            .map(|t| t.coeff())
    }

    #[test]
    fn one_qubit_hamiltonian_terms() {
        let h = ModelSpec::<f64>::one_qubit(1.0).target_hamiltonian();
        assert_eq!(h.terms().len(), 2);
        assert_eq!(term_coeff(&h, &[Pauli::X]), Some(1.0));
        assert_eq!(term_coeff(&h, &[Pauli::Z]), Some(1.0));

        let h0 = ModelSpec::<f64>::one_qubit(1.0).target_hamiltonian();
        assert_eq!(h0.n_qubits(), 1);

        // Coupling off leaves only the transverse field.
        let free = ModelSpec::<f64>::one_qubit(0.0).target_hamiltonian();
        assert_eq!(free.terms().len(), 1);
        assert_eq!(term_coeff(&free, &[Pauli::X]), Some(1.0));
    }

    #[test]
    fn two_site_hamiltonian_terms() {
        let h = ModelSpec::<f64>::schwinger_two_site(2.0).target_hamiltonian();
        assert_eq!(h.terms().len(), 3);
        assert_eq!(term_coeff(&h, &[Pauli::X, Pauli::X]), Some(0.5));
        assert_eq!(term_coeff(&h, &[Pauli::Y, Pauli::Y]), Some(0.5));
        assert_eq!(term_coeff(&h, &[Pauli::Z, Pauli::I]), Some(2.0));
    }

    #[test]
    fn initial_hamiltonians_and_ground_states() {
        let one = ModelSpec::<f64>::one_qubit(1.0);
        let h0 = one.initial_hamiltonian();
        assert_eq!(term_coeff(&h0, &[Pauli::Z]), Some(1.0));
        // Ground state of Z is |1⟩.
        let s = one.initial_state();
        assert!((s.expectation(&h0).unwrap() + 1.0).abs() < 1e-12);

        let two = ModelSpec::<f64>::schwinger_two_site(1.0);
        let h0 = two.initial_hamiltonian();
        assert_eq!(term_coeff(&h0, &[Pauli::Z, Pauli::I]), Some(0.5));
        assert_eq!(term_coeff(&h0, &[Pauli::I, Pauli::Z]), Some(-0.5));
        let s = two.initial_state();
        assert!((s.expectation(&h0).unwrap() + 1.0).abs() < 1e-12);
    }

    #[test]
    fn observables() {
        let one = ModelSpec::<f64>::one_qubit(1.0).observable();
        assert_eq!(term_coeff(&one, &[Pauli::Z]), Some(1.0));

        let two = ModelSpec::<f64>::schwinger_two_site(1.0);
        let zbar = two.observable();
        assert_eq!(term_coeff(&zbar, &[Pauli::Z, Pauli::I]), Some(0.5));
        assert_eq!(term_coeff(&zbar, &[Pauli::I, Pauli::Z]), Some(-0.5));
        // Diagonal action on |1⟩₀|0⟩₁.
        let s = StateVector::<f64>::basis_state(2, "10").unwrap();
        assert!((s.expectation(&zbar).unwrap() + 1.0).abs() < 1e-12);
    }

    #[test]
    fn analytic_ground_specific_values() {
        let g = ModelSpec::<f64>::one_qubit(1.0).analytic_ground();
        assert!((g.e0 + SQRT_2).abs() < 1e-15);
        assert!((g.vev + SQRT_2 / 2.0).abs() < 1e-15);

        let g = ModelSpec::<f64>::schwinger_two_site(1.0).analytic_ground();
        assert!((g.e0 + SQRT_2).abs() < 1e-15);
        assert!((g.vev + 1.0 / SQRT_2).abs() < 1e-15);

        let g = ModelSpec::<f64>::schwinger_two_site(2.0).analytic_ground();
        assert!((g.e0 + 5.0f64.sqrt()).abs() < 1e-15);
        assert!((g.vev + 2.0 / 5.0f64.sqrt()).abs() < 1e-15);
        assert!((g.vev + 0.894_427_190_999_915_9).abs() < 1e-12);
    }

    #[test]
    fn analytic_ground_matches_eigensolver() {
        let one_qubit_js = [0.0, 0.5, 1.0, 2.0, 5.0];
        let two_site_js = [0.5, 1.0, 2.0];
        let specs = one_qubit_js
            .iter()
            .map(|&j| ModelSpec::<f64>::one_qubit(j))
            .chain(two_site_js.iter().map(|&j| ModelSpec::<f64>::schwinger_two_site(j)));
        for spec in specs {
            let truth = spec.analytic_ground();
            let eig = eig_hermitian(&spec.target_hamiltonian().to_dense().unwrap()).unwrap();
            assert!(
                (eig.values()[0] - truth.e0).abs() < 1e-10,
                "energy mismatch at J={}",
                spec.j
            );
            let ground = exact_ground_state(&spec).unwrap();
            let vev = ground.expectation(&spec.observable()).unwrap();
            assert!(
                (vev - truth.vev).abs() < 1e-10,
                "vev mismatch at J={} ({vev} vs {})",
                spec.j,
                truth.vev
            );
        }
    }

    #[test]
    fn measurement_variance_matches_ground_state_moments() {
        // σ² = ⟨O²⟩ − ⟨O⟩² in the exact ground state, with O² from the dense
        // matrix square.
        let specs = [
            ModelSpec::<f64>::one_qubit(0.5),
            ModelSpec::<f64>::one_qubit(1.0),
            ModelSpec::<f64>::one_qubit(2.0),
            ModelSpec::<f64>::schwinger_two_site(0.5),
            ModelSpec::<f64>::schwinger_two_site(1.0),
            ModelSpec::<f64>::schwinger_two_site(2.0),
        ];
        for spec in specs {
            let ground = exact_ground_state(&spec).unwrap();
            let obs = spec.observable().to_dense().unwrap();
            let m = obs.matrix();
            let mv = m.matvec(ground.amplitudes());
            let first: f64 = ground
                .amplitudes()
                .iter()
                .zip(mv.iter())
                .map(|(a, b)| (a.conj() * b).re)
                .sum();
            let m2v = m.matvec(&mv);
            let second: f64 = ground
                .amplitudes()
                .iter()
                .zip(m2v.iter())
                .map(|(a, b)| (a.conj() * b).re)
                .sum();
            let oracle = second - first * first;
            assert!(
                (spec.measurement_variance() - oracle).abs() < 1e-10,
                "variance mismatch for {:?} J={}",
                spec.kind,
                spec.j
            );
        }
        assert!((ModelSpec::<f64>::one_qubit(1.0).measurement_variance() - 0.5).abs() < 1e-15);
        assert!((ModelSpec::<f64>::schwinger_two_site(2.0).measurement_variance() - 0.2).abs() < 1e-15);
    }

    #[test]
    fn two_site_ground_state_lives_in_the_charge_neutral_sector() {
        for j in [0.5, 1.0, 2.0] {
            let ground = exact_ground_state(&ModelSpec::<f64>::schwinger_two_site(j)).unwrap();
            assert!(ground.amplitudes()[0].norm() < 1e-12);
            assert!(ground.amplitudes()[3].norm() < 1e-12);
        }
    }
}
