//! Pauli-string operator algebra.
//!
//! A Hamiltonian or observable is a real-weighted sum of Pauli words,
//! H = Σᵢ cᵢ Pᵢ, kept in a canonical form (words sorted, duplicates merged,
//! negligible coefficients dropped). Real coefficients make every operator
//! Hermitian by construction.

use std::fmt;

use num_complex::Complex;

use crate::dense::DenseHermitian;
use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Largest register handled by dense expansion (2^12 amplitudes).
pub const MAX_QUBITS: usize = 12;

/// A single-qubit Pauli operator.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Pauli {
    I,
    X,
    Y,
    Z,
}

impl Pauli {
    /// 2×2 matrix of this operator, row-major.
    pub fn matrix<T: Scalar>(self) -> [[Complex<T>; 2]; 2] {
        let zero = Complex::new(T::zero(), T::zero());
        let one = Complex::new(T::one(), T::zero());
        let i = Complex::new(T::zero(), T::one());
        match self {
            Pauli::I => [[one, zero], [zero, one]],
            Pauli::X => [[zero, one], [one, zero]],
            Pauli::Y => [[zero, -i], [i, zero]],
            Pauli::Z => [[one, zero], [zero, -one]],
        }
    }
}

impl fmt::Display for Pauli {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Pauli::I => "I",
            Pauli::X => "X",
            Pauli::Y => "Y",
            Pauli::Z => "Z",
        };
        write!(f, "{s}")
    }
}

/// One weighted Pauli word. `word[q]` is the letter acting on qubit `q`.
#[derive(Debug, Clone, PartialEq)]
pub struct PauliString<T> {
    coeff: T,
    word: Vec<Pauli>,
}

/// Precomputed basis-state action of one weighted word.
///
/// The word maps |i⟩ to `phase(i)`·|i ^ flip_mask⟩ where the phase is
/// `base · (−1)^popcount(i & sign_mask)`. X and Y letters contribute to
/// `flip_mask`, Z and Y letters to `sign_mask`, and each Y letter one factor
/// of `i` to `base` (which also carries the coefficient).
#[derive(Debug, Clone, Copy)]
pub struct WordAction<T> {
    pub flip_mask: usize,
    pub sign_mask: usize,
    pub base: Complex<T>,
}

impl<T: Scalar> WordAction<T> {
    /// Image of basis index `i` under the weighted word: `(index, amplitude)`.
    #[inline]
    pub fn apply(&self, i: usize) -> (usize, Complex<T>) {
        let sign = if (i & self.sign_mask).count_ones() & 1 == 1 {
            -T::one()
        } else {
            T::one()
        };
        (i ^ self.flip_mask, self.base * sign)
    }
}

impl<T: Scalar> PauliString<T> {
    pub fn new(coeff: T, word: Vec<Pauli>) -> Self {
        assert!(coeff.is_finite(), "Pauli coefficient must be finite");
        Self { coeff, word }
    }

    pub fn coeff(&self) -> T {
        self.coeff
    }

    pub fn word(&self) -> &[Pauli] {
        &self.word
    }

    /// True when the word contains no X or Y letter.
    pub fn is_diagonal(&self) -> bool {
        self.word.iter().all(|p| matches!(p, Pauli::I | Pauli::Z))
    }

    /// Bit masks and base phase describing this word's basis-state action.
    pub fn action(&self) -> WordAction<T> {
        let mut flip_mask = 0usize;
        let mut sign_mask = 0usize;
        let mut n_y = 0usize;
        for (q, p) in self.word.iter().enumerate() {
            match p {
                Pauli::I => {}
                Pauli::X => flip_mask |= 1 << q,
                Pauli::Y => {
                    flip_mask |= 1 << q;
                    sign_mask |= 1 << q;
                    n_y += 1;
                }
                Pauli::Z => sign_mask |= 1 << q,
            }
        }
        let one = Complex::new(T::one(), T::zero());
        let i = Complex::new(T::zero(), T::one());
        let base = match n_y % 4 {
            0 => one,
            1 => i,
            2 => -one,
            _ => -i,
        };
        WordAction {
            flip_mask,
            sign_mask,
            base: base * self.coeff,
        }
    }
}

impl<T: Scalar> fmt::Display for PauliString<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:+} ", self.coeff)?;
        if self.word.iter().all(|p| matches!(p, Pauli::I)) {
            return write!(f, "I");
        }
        let mut first = true;
        for (q, p) in self.word.iter().enumerate() {
            if !matches!(p, Pauli::I) {
                if !first {
                    write!(f, " ")?;
                }
                write!(f, "{p}{q}")?;
                first = false;
            }
        }
        Ok(())
    }
}

/// Hermitian operator as a canonical sum of weighted Pauli words.
#[derive(Debug, Clone, PartialEq)]
pub struct PauliHamiltonian<T> {
    terms: Vec<PauliString<T>>,
    n_qubits: usize,
}

impl<T: Scalar> PauliHamiltonian<T> {
    /// Empty operator (zero) on `n_qubits` qubits.
    pub fn new(n_qubits: usize) -> Self {
        assert!(n_qubits >= 1, "operator needs at least one qubit");
        Self {
            terms: Vec::new(),
            n_qubits,
        }
    }

    /// Add `coeff · Πₖ P(qₖ)` given sparse `(qubit, letter)` pairs; identity
    /// on unlisted qubits.
    pub fn add_term(&mut self, coeff: T, ops: &[(usize, Pauli)]) {
        let mut word = vec![Pauli::I; self.n_qubits];
        for &(q, p) in ops {
            assert!(q < self.n_qubits, "qubit index {q} out of range");
            word[q] = p;
        }
        self.terms.push(PauliString::new(coeff, word));
        self.canonicalize();
    }

    /// Builder form of [`add_term`](Self::add_term).
    pub fn with_term(mut self, coeff: T, ops: &[(usize, Pauli)]) -> Self {
        self.add_term(coeff, ops);
        self
    }

    pub fn terms(&self) -> &[PauliString<T>] {
        &self.terms
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// True when every term is diagonal in the computational basis.
    pub fn is_diagonal(&self) -> bool {
        self.terms.iter().all(PauliString::is_diagonal)
    }

    /// Term-wise sum of two operators on the same register.
    pub fn plus(&self, other: &Self) -> Self {
        assert_eq!(
            self.n_qubits, other.n_qubits,
            "operators act on different registers"
        );
        let mut out = self.clone();
        out.terms.extend(other.terms.iter().cloned());
        out.canonicalize();
        out
    }

    /// Operator scaled by a real factor.
    pub fn scaled(&self, factor: T) -> Self {
        let mut out = self.clone();
        for t in &mut out.terms {
            t.coeff *= factor;
        }
        out.canonicalize();
        out
    }

    /// Sort words, merge duplicates, drop coefficients below the merge
    /// threshold.
    fn canonicalize(&mut self) {
        self.terms.sort_by(|a, b| a.word.cmp(&b.word));
        let mut merged: Vec<PauliString<T>> = Vec::with_capacity(self.terms.len());
        for t in self.terms.drain(..) {
            match merged.last_mut() {
                Some(last) if last.word == t.word => last.coeff += t.coeff,
                _ => merged.push(t),
            }
        }
        merged.retain(|t| t.coeff.abs() >= T::merge_tol());
        self.terms = merged;
    }

    /// Eigenvalue of this operator on basis state `index`, when the operator
    /// is diagonal. `None` if any term carries an X or Y letter.
    pub fn diagonal_eigenvalue(&self, index: usize) -> Option<T> {
        if !self.is_diagonal() {
            return None;
        }
        let mut value = T::zero();
        for t in &self.terms {
            let a = t.action();
            let sign = if (index & a.sign_mask).count_ones() & 1 == 1 {
                -T::one()
            } else {
                T::one()
            };
            value += t.coeff * sign;
        }
        Some(value)
    }

    /// Dense matrix of the operator, qubit 0 on the least significant bit of
    /// the row/column index.
    pub fn to_dense(&self) -> Result<DenseHermitian<T>> {
        if self.n_qubits > MAX_QUBITS {
            return Err(Error::Config(format!(
                "dense expansion of {} qubits exceeds the {MAX_QUBITS}-qubit limit",
                self.n_qubits
            )));
        }
        let dim = 1usize << self.n_qubits;
        let mut m = crate::dense::DenseMatrix::zeros(dim);
        for t in &self.terms {
            let action = t.action();
            for col in 0..dim {
                let (row, amp) = action.apply(col);
                let cur = m.get(row, col);
                m.set(row, col, cur + amp);
            }
        }
        Ok(DenseHermitian::new(m).expect("real-coefficient Pauli sum is Hermitian"))
    }
}

impl<T: Scalar> fmt::Display for PauliHamiltonian<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, t) in self.terms.iter().enumerate() {
            if k > 0 {
                write!(f, "  ")?;
            }
            write!(f, "{t}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dense::DenseMatrix;
    use proptest::prelude::*;

    /// Independent dense oracle: literal Kronecker products, summed.
    fn kron_oracle(h: &PauliHamiltonian<f64>) -> DenseMatrix<f64> {
        let dim = 1 << h.n_qubits();
        let mut out = DenseMatrix::zeros(dim);
        for term in h.terms() {
            let mut m = DenseMatrix::from_rows(1, &[Complex::new(term.coeff(), 0.0)]);
            for &p in term.word() {
                let pm = p.matrix::<f64>();
                let pd = DenseMatrix::from_rows(2, &[pm[0][0], pm[0][1], pm[1][0], pm[1][1]]);
                m = pd.kron(&m);
            }
            for i in 0..dim {
                for j in 0..dim {
                    out.set(i, j, out.get(i, j) + m.get(i, j));
                }
            }
        }
        out
    }

    fn assert_matches_oracle(h: &PauliHamiltonian<f64>) {
        let dense = h.to_dense().unwrap();
        let oracle = kron_oracle(h);
        assert!(
            dense.matrix().max_abs_diff(&oracle) < 1e-12,
            "dense expansion disagrees with the Kronecker oracle for {h}"
        );
    }

    #[test]
    fn to_dense_one_qubit_transverse_field() {
        let h = PauliHamiltonian::<f64>::new(1)
            .with_term(1.0, &[(0, Pauli::X)])
            .with_term(1.0, &[(0, Pauli::Z)]);
        let m = h.to_dense().unwrap();
        let e = |re: f64| Complex::new(re, 0.0);
        assert_eq!(m.matrix().get(0, 0), e(1.0));
        assert_eq!(m.matrix().get(0, 1), e(1.0));
        assert_eq!(m.matrix().get(1, 0), e(1.0));
        assert_eq!(m.matrix().get(1, 1), e(-1.0));
        assert_matches_oracle(&h);
    }

    #[test]
    fn to_dense_two_site_coupling() {
        // ½(X₀X₁ + Y₀Y₁) + J·Z₀ at J=2, qubit 0 on the low bit: the hopping
        // block connects indices 1 (q0=1) and 2 (q1=1), Z₀ signs the diagonal.
        let j = 2.0;
        let h = PauliHamiltonian::<f64>::new(2)
            .with_term(0.5, &[(0, Pauli::X), (1, Pauli::X)])
            .with_term(0.5, &[(0, Pauli::Y), (1, Pauli::Y)])
            .with_term(j, &[(0, Pauli::Z)]);
        let m = h.to_dense().unwrap();
        let expected = [
            [j, 0.0, 0.0, 0.0],
            [0.0, -j, 1.0, 0.0],
            [0.0, 1.0, j, 0.0],
            [0.0, 0.0, 0.0, -j],
        ];
        for r in 0..4 {
            for c in 0..4 {
                let got = m.matrix().get(r, c);
                assert!(
                    (got - Complex::new(expected[r][c], 0.0)).norm() < 1e-12,
                    "entry ({r},{c}) = {got}"
                );
            }
        }
        assert_matches_oracle(&h);
    }

    #[test]
    fn to_dense_staggered_mass_is_diagonal() {
        let h = PauliHamiltonian::<f64>::new(2)
            .with_term(0.5, &[(0, Pauli::Z)])
            .with_term(-0.5, &[(1, Pauli::Z)]);
        let m = h.to_dense().unwrap();
        let expected = [0.0, -1.0, 1.0, 0.0];
        for r in 0..4 {
            for c in 0..4 {
                let want = if r == c { expected[r] } else { 0.0 };
                assert!((m.matrix().get(r, c) - Complex::new(want, 0.0)).norm() < 1e-12);
            }
        }
        assert_matches_oracle(&h);
    }

    #[test]
    fn to_dense_rejects_oversized_register() {
        let h = PauliHamiltonian::<f64>::new(13).with_term(1.0, &[(12, Pauli::Z)]);
        assert!(matches!(h.to_dense(), Err(crate::error::Error::Config(_))));
    }

    #[test]
    fn duplicate_words_merge() {
        let h = PauliHamiltonian::<f64>::new(1)
            .with_term(1.0, &[(0, Pauli::X)])
            .with_term(0.5, &[(0, Pauli::X)]);
        assert_eq!(h.terms().len(), 1);
        assert!((h.terms()[0].coeff() - 1.5).abs() < 1e-15);
    }

    #[test]
    fn cancelled_words_drop_out() {
        let h = PauliHamiltonian::<f64>::new(1)
            .with_term(1.0, &[(0, Pauli::X)])
            .with_term(-1.0, &[(0, Pauli::X)]);
        assert!(h.is_empty());
    }

    #[test]
    fn diagonal_eigenvalues() {
        let zbar = PauliHamiltonian::<f64>::new(2)
            .with_term(0.5, &[(0, Pauli::Z)])
            .with_term(-0.5, &[(1, Pauli::Z)]);
        assert_eq!(zbar.diagonal_eigenvalue(0), Some(0.0));
        assert_eq!(zbar.diagonal_eigenvalue(1), Some(-1.0));
        assert_eq!(zbar.diagonal_eigenvalue(2), Some(1.0));
        assert_eq!(zbar.diagonal_eigenvalue(3), Some(0.0));

        let x = PauliHamiltonian::<f64>::new(1).with_term(1.0, &[(0, Pauli::X)]);
        assert_eq!(x.diagonal_eigenvalue(0), None);
    }

    #[test]
    fn word_action_phases() {
        // Y|0⟩ = i|1⟩ and Y|1⟩ = −i|0⟩.
        let y = PauliHamiltonian::<f64>::new(1).with_term(1.0, &[(0, Pauli::Y)]);
        let action = y.terms()[0].action();
        let (j0, a0) = action.apply(0);
        assert_eq!(j0, 1);
        assert!((a0 - Complex::new(0.0, 1.0)).norm() < 1e-15);
        let (j1, a1) = action.apply(1);
        assert_eq!(j1, 0);
        assert!((a1 - Complex::new(0.0, -1.0)).norm() < 1e-15);
    }

    proptest! {
        // Linearity of the dense expansion against the Kronecker oracle.
        #[test]
        fn to_dense_is_linear(a in -3.0f64..3.0, b in -3.0f64..3.0) {
            let h1 = PauliHamiltonian::<f64>::new(2)
                .with_term(1.0, &[(0, Pauli::X), (1, Pauli::Y)])
                .with_term(-0.25, &[(1, Pauli::Z)]);
            let h2 = PauliHamiltonian::<f64>::new(2)
                .with_term(0.75, &[(0, Pauli::Z), (1, Pauli::Z)])
                .with_term(0.5, &[(0, Pauli::Y)]);
            let combined = h1.scaled(a).plus(&h2.scaled(b));
            let lhs = combined.to_dense().unwrap();
            let m1 = kron_oracle(&h1);
            let m2 = kron_oracle(&h2);
            let mut rhs = DenseMatrix::zeros(4);
            for i in 0..4 {
                for j in 0..4 {
                    rhs.set(i, j, m1.get(i, j) * a + m2.get(i, j) * b);
                }
            }
            prop_assert!(lhs.matrix().max_abs_diff(&rhs) < 1e-12);
        }
    }
}
