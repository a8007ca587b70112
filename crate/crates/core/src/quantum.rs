//! Dense state-vector simulation of the two- and three-qubit registers used by
//! the game circuits.
//!
//! Registers are ordered `(Q, A, B)` most-significant-first, so basis index
//! `4·q_Q + 2·q_A + q_B` corresponds to the ket `|q_Q q_A q_B⟩`. A two-qubit
//! register holds only `(A, B)` with index `2·q_A + q_B`.

use std::fmt;

use nalgebra::Matrix4;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Amplitude type used throughout the crate.
pub type ComplexScalar = Complex64;

/// Entrywise tolerance for algebraic identities (unitarity, norms, traces).
pub const ALGEBRAIC_TOL: f64 = 1e-12;

/// Slack allowed on eigenvalues that should be non-negative.
pub const PSD_TOL: f64 = 1e-10;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);
const I: Complex64 = Complex64::new(0.0, 1.0);

/// A named qubit of the register.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Qubit {
    /// The interrogator's resource qubit.
    Q,
    /// Alice's qubit.
    A,
    /// Bob's qubit.
    B,
}

impl Qubit {
    pub const ALL: [Qubit; 3] = [Qubit::Q, Qubit::A, Qubit::B];

    /// Bit weight of this qubit in the basis index of a `num_qubits` register.
    pub fn bit(self, num_qubits: usize) -> Result<usize> {
        match (num_qubits, self) {
            (3, Qubit::Q) => Ok(4),
            (2 | 3, Qubit::A) => Ok(2),
            (2 | 3, Qubit::B) => Ok(1),
            _ => Err(Error::InvalidQubit {
                qubit: self,
                num_qubits,
            }),
        }
    }
}

impl fmt::Display for Qubit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Qubit::Q => "Q",
            Qubit::A => "A",
            Qubit::B => "B",
        };
        f.write_str(s)
    }
}

/// A 2×2 unitary acting on one qubit.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Unitary2([[Complex64; 2]; 2]);

impl Unitary2 {
    /// Wraps `m`, checking `U†U = I` entrywise.
    pub fn new(m: [[Complex64; 2]; 2]) -> Result<Self> {
        let u = Unitary2(m);
        let dev = u.unitarity_defect();
        if !dev.is_finite() || dev > ALGEBRAIC_TOL {
            return Err(Error::NotUnitary(dev));
        }
        Ok(u)
    }

    pub const fn identity() -> Self {
        Unitary2([[ONE, ZERO], [ZERO, ONE]])
    }

    pub const fn pauli_x() -> Self {
        Unitary2([[ZERO, ONE], [ONE, ZERO]])
    }

    /// `σY = [[0, −i], [i, 0]]`.
    pub const fn pauli_y() -> Self {
        Unitary2([[ZERO, Complex64::new(0.0, -1.0)], [I, ZERO]])
    }

    pub const fn pauli_z() -> Self {
        Unitary2([[ONE, ZERO], [ZERO, Complex64::new(-1.0, 0.0)]])
    }

    /// `exp(iθσX) = cos θ·I + i sin θ·σX`.
    pub fn x_rotation(theta: f64) -> Self {
        let (s, c) = theta.sin_cos();
        let c = Complex64::new(c, 0.0);
        let is = Complex64::new(0.0, s);
        Unitary2([[c, is], [is, c]])
    }

    /// `exp(−iθσY) = [[cos θ, −sin θ], [sin θ, cos θ]]`, the real rotation
    /// taking `|0⟩` to `cos θ|0⟩ + sin θ|1⟩`.
    pub fn real_rotation(theta: f64) -> Self {
        let (s, c) = theta.sin_cos();
        Unitary2([
            [Complex64::new(c, 0.0), Complex64::new(-s, 0.0)],
            [Complex64::new(s, 0.0), Complex64::new(c, 0.0)],
        ])
    }

    pub fn entries(&self) -> &[[Complex64; 2]; 2] {
        &self.0
    }

    pub fn adjoint(&self) -> Self {
        let m = &self.0;
        Unitary2([[m[0][0].conj(), m[1][0].conj()], [m[0][1].conj(), m[1][1].conj()]])
    }

    /// Matrix product `self · rhs`.
    pub fn mul(&self, rhs: &Unitary2) -> Self {
        let (a, b) = (&self.0, &rhs.0);
        let mut out = [[ZERO; 2]; 2];
        for (r, row) in out.iter_mut().enumerate() {
            for (c, cell) in row.iter_mut().enumerate() {
                *cell = a[r][0] * b[0][c] + a[r][1] * b[1][c];
            }
        }
        Unitary2(out)
    }

    /// Largest entrywise deviation of `U†U` from the identity.
    pub fn unitarity_defect(&self) -> f64 {
        let p = self.adjoint().mul(self);
        let mut dev = 0.0f64;
        for r in 0..2 {
            for c in 0..2 {
                let target = if r == c { ONE } else { ZERO };
                dev = dev.max((p.0[r][c] - target).norm());
            }
        }
        dev
    }
}

/// A 4×4 unitary acting on an ordered pair of qubits; the first qubit of the
/// pair is the more significant one in the local basis.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Unitary4([[Complex64; 4]; 4]);

impl Unitary4 {
    pub fn new(m: [[Complex64; 4]; 4]) -> Result<Self> {
        let u = Unitary4(m);
        let dev = u.unitarity_defect();
        if !dev.is_finite() || dev > ALGEBRAIC_TOL {
            return Err(Error::NotUnitary(dev));
        }
        Ok(u)
    }

    pub fn identity() -> Self {
        let mut m = [[ZERO; 4]; 4];
        for (k, row) in m.iter_mut().enumerate() {
            row[k] = ONE;
        }
        Unitary4(m)
    }

    /// Tensor product `first ⊗ second`.
    pub fn kron(first: &Unitary2, second: &Unitary2) -> Self {
        let mut m = [[ZERO; 4]; 4];
        for (r, row) in m.iter_mut().enumerate() {
            for (c, cell) in row.iter_mut().enumerate() {
                *cell = first.0[r >> 1][c >> 1] * second.0[r & 1][c & 1];
            }
        }
        Unitary4(m)
    }

    pub fn entries(&self) -> &[[Complex64; 4]; 4] {
        &self.0
    }

    pub fn adjoint(&self) -> Self {
        let mut m = [[ZERO; 4]; 4];
        for (r, row) in m.iter_mut().enumerate() {
            for (c, cell) in row.iter_mut().enumerate() {
                *cell = self.0[c][r].conj();
            }
        }
        Unitary4(m)
    }

    pub fn mul(&self, rhs: &Unitary4) -> Self {
        let mut m = [[ZERO; 4]; 4];
        for (r, row) in m.iter_mut().enumerate() {
            for (c, cell) in row.iter_mut().enumerate() {
                *cell = (0..4).map(|k| self.0[r][k] * rhs.0[k][c]).sum();
            }
        }
        Unitary4(m)
    }

    pub fn unitarity_defect(&self) -> f64 {
        let p = self.adjoint().mul(self);
        let mut dev = 0.0f64;
        for r in 0..4 {
            for c in 0..4 {
                let target = if r == c { ONE } else { ZERO };
                dev = dev.max((p.0[r][c] - target).norm());
            }
        }
        dev
    }

    /// Largest entrywise distance to `other`.
    pub fn max_abs_diff(&self, other: &Unitary4) -> f64 {
        let mut d = 0.0f64;
        for r in 0..4 {
            for c in 0..4 {
                d = d.max((self.0[r][c] - other.0[r][c]).norm());
            }
        }
        d
    }
}

/// The interrogator's entangler `J(γ) = cos(γ/2)·I₄ + i sin(γ/2)·σX⊗σX`.
///
/// `J(γ)† = J(−γ)`.
pub fn entangler(gamma: f64) -> Unitary4 {
    let (s, c) = (gamma / 2.0).sin_cos();
    let c = Complex64::new(c, 0.0);
    let is = Complex64::new(0.0, s);
    // σX⊗σX is the anti-diagonal permutation.
    let mut m = [[ZERO; 4]; 4];
    for (k, row) in m.iter_mut().enumerate() {
        row[k] = c;
        row[3 - k] = is;
    }
    Unitary4(m)
}

/// Normalized amplitudes of a 2- or 3-qubit register.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StateVector {
    num_qubits: usize,
    amplitudes: Vec<Complex64>,
}

impl StateVector {
    /// Builds a state from `2^n` amplitudes (n ∈ {2, 3}); they must be finite
    /// and normalized within [`ALGEBRAIC_TOL`].
    pub fn new(amplitudes: Vec<Complex64>) -> Result<Self> {
        let num_qubits = match amplitudes.len() {
            4 => 2,
            8 => 3,
            n => return Err(Error::BadStateLength(n)),
        };
        let norm: f64 = amplitudes.iter().map(|a| a.norm_sqr()).sum();
        if !norm.is_finite() || (norm - 1.0).abs() > ALGEBRAIC_TOL {
            return Err(Error::NotNormalized(norm));
        }
        Ok(StateVector { num_qubits, amplitudes })
    }

    /// Computational basis state `|index⟩`.
    pub fn basis(num_qubits: usize, index: usize) -> Result<Self> {
        if !(2..=3).contains(&num_qubits) {
            return Err(Error::BadStateLength(1 << num_qubits.min(16)));
        }
        let dim = 1 << num_qubits;
        if index >= dim {
            return Err(Error::BadStateLength(index));
        }
        let mut amplitudes = vec![ZERO; dim];
        amplitudes[index] = ONE;
        Ok(StateVector { num_qubits, amplitudes })
    }

    /// `|0…0⟩`.
    pub fn zero(num_qubits: usize) -> Result<Self> {
        Self::basis(num_qubits, 0)
    }

    pub fn num_qubits(&self) -> usize {
        self.num_qubits
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    pub fn amplitude(&self, index: usize) -> Complex64 {
        self.amplitudes[index]
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amplitudes.iter().map(|a| a.norm_sqr()).sum()
    }

    /// Exact outcome probabilities in the computational basis.
    pub fn probabilities(&self) -> Vec<f64> {
        self.amplitudes.iter().map(|a| a.norm_sqr()).collect()
    }

    /// Largest entrywise amplitude distance to `other` (no phase alignment).
    pub fn max_abs_diff(&self, other: &StateVector) -> f64 {
        self.amplitudes
            .iter()
            .zip(&other.amplitudes)
            .map(|(a, b)| (a - b).norm())
            .fold(
                if self.num_qubits == other.num_qubits {
                    0.0
                } else {
                    f64::INFINITY
                },
                f64::max,
            )
    }

    /// Applies `gate` to `target`, identity elsewhere.
    pub fn apply_single_qubit(&self, gate: &Unitary2, target: Qubit) -> Result<Self> {
        let bit = target.bit(self.num_qubits)?;
        Ok(self.apply_masked(gate, 0, bit))
    }

    /// Applies `gate` to `target` on the subspace where every control is `|1⟩`.
    pub fn apply_controlled(&self, gate: &Unitary2, controls: &[Qubit], target: Qubit) -> Result<Self> {
        if controls.is_empty() {
            return Err(Error::NoControls);
        }
        let bit = target.bit(self.num_qubits)?;
        let mut mask = 0usize;
        for &c in controls {
            if c == target {
                return Err(Error::OverlappingQubits(c));
            }
            let cb = c.bit(self.num_qubits)?;
            if mask & cb != 0 {
                return Err(Error::OverlappingQubits(c));
            }
            mask |= cb;
        }
        Ok(self.apply_masked(gate, mask, bit))
    }

    fn apply_masked(&self, gate: &Unitary2, control_mask: usize, bit: usize) -> Self {
        let u = gate.entries();
        let mut out = self.amplitudes.clone();
        for lo in 0..out.len() {
            if lo & bit != 0 || lo & control_mask != control_mask {
                continue;
            }
            let hi = lo | bit;
            let (a0, a1) = (self.amplitudes[lo], self.amplitudes[hi]);
            out[lo] = u[0][0] * a0 + u[0][1] * a1;
            out[hi] = u[1][0] * a0 + u[1][1] * a1;
        }
        StateVector {
            num_qubits: self.num_qubits,
            amplitudes: out,
        }
    }

    /// Applies a two-qubit unitary to `(first, second)`; `first` is the more
    /// significant qubit of the local basis.
    pub fn apply_two_qubit(&self, gate: &Unitary4, first: Qubit, second: Qubit) -> Result<Self> {
        if first == second {
            return Err(Error::OverlappingQubits(first));
        }
        let b1 = first.bit(self.num_qubits)?;
        let b2 = second.bit(self.num_qubits)?;
        let u = gate.entries();
        let mut out = self.amplitudes.clone();
        for base in 0..out.len() {
            if base & (b1 | b2) != 0 {
                continue;
            }
            let idx = [base, base | b2, base | b1, base | b1 | b2];
            let local = idx.map(|i| self.amplitudes[i]);
            for (r, &i) in idx.iter().enumerate() {
                out[i] = (0..4).map(|c| u[r][c] * local[c]).sum();
            }
        }
        Ok(StateVector {
            num_qubits: self.num_qubits,
            amplitudes: out,
        })
    }

    /// Reduced density matrix of the two qubits kept after tracing out
    /// `discard`. The kept pair is listed in register order.
    pub fn partial_trace(&self, discard: Qubit) -> Result<DensityMatrix2> {
        if self.num_qubits != 3 {
            return Err(Error::WrongQubitCount {
                expected: 3,
                actual: self.num_qubits,
            });
        }
        let kept: Vec<Qubit> = Qubit::ALL.iter().copied().filter(|&q| q != discard).collect();
        let (hi, lo) = (kept[0].bit(3)?, kept[1].bit(3)?);
        let db = discard.bit(3)?;
        let full = |local: usize, d: usize| -> usize {
            (if local & 2 != 0 { hi } else { 0 }) | (if local & 1 != 0 { lo } else { 0 }) | d
        };
        let mut m = [[ZERO; 4]; 4];
        for (r, row) in m.iter_mut().enumerate() {
            for (c, cell) in row.iter_mut().enumerate() {
                *cell = [0, db]
                    .iter()
                    .map(|&d| self.amplitudes[full(r, d)] * self.amplitudes[full(c, d)].conj())
                    .sum();
            }
        }
        Ok(DensityMatrix2 {
            matrix: m,
            qubits: (kept[0], kept[1]),
        })
    }
}

/// Density matrix of a two-qubit subsystem.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix2 {
    matrix: [[Complex64; 4]; 4],
    qubits: (Qubit, Qubit),
}

impl DensityMatrix2 {
    /// Validates Hermiticity, unit trace and positivity.
    pub fn new(matrix: [[Complex64; 4]; 4], qubits: (Qubit, Qubit)) -> Result<Self> {
        let rho = DensityMatrix2 { matrix, qubits };
        rho.validate()?;
        Ok(rho)
    }

    /// Wraps `matrix` without checking the invariants.
    pub fn new_unchecked(matrix: [[Complex64; 4]; 4], qubits: (Qubit, Qubit)) -> Self {
        DensityMatrix2 { matrix, qubits }
    }

    /// Projector `|ψ⟩⟨ψ|` of a normalized two-qubit state.
    pub fn from_pure(state: &StateVector) -> Result<Self> {
        if state.num_qubits() != 2 {
            return Err(Error::WrongQubitCount {
                expected: 2,
                actual: state.num_qubits(),
            });
        }
        let a = state.amplitudes();
        let mut m = [[ZERO; 4]; 4];
        for (r, row) in m.iter_mut().enumerate() {
            for (c, cell) in row.iter_mut().enumerate() {
                *cell = a[r] * a[c].conj();
            }
        }
        Ok(DensityMatrix2 {
            matrix: m,
            qubits: (Qubit::A, Qubit::B),
        })
    }

    pub fn entries(&self) -> &[[Complex64; 4]; 4] {
        &self.matrix
    }

    pub fn qubits(&self) -> (Qubit, Qubit) {
        self.qubits
    }

    pub fn trace(&self) -> Complex64 {
        (0..4).map(|k| self.matrix[k][k]).sum()
    }

    /// `Tr ρ²`.
    pub fn purity(&self) -> f64 {
        let mut p = ZERO;
        for r in 0..4 {
            for c in 0..4 {
                p += self.matrix[r][c] * self.matrix[c][r];
            }
        }
        p.re
    }

    pub fn hermiticity_defect(&self) -> f64 {
        let mut d = 0.0f64;
        for r in 0..4 {
            for c in 0..4 {
                d = d.max((self.matrix[r][c] - self.matrix[c][r].conj()).norm());
            }
        }
        d
    }

    /// Eigenvalues in ascending order.
    pub fn eigenvalues(&self) -> [f64; 4] {
        let mut ev: Vec<f64> = self.to_nalgebra().symmetric_eigenvalues().iter().copied().collect();
        ev.sort_by(f64::total_cmp);
        [ev[0], ev[1], ev[2], ev[3]]
    }

    /// Number of eigenvalues above `tol`.
    pub fn rank(&self, tol: f64) -> usize {
        self.eigenvalues().iter().filter(|&&e| e > tol).count()
    }

    pub(crate) fn to_nalgebra(&self) -> Matrix4<Complex64> {
        Matrix4::from_fn(|r, c| self.matrix[r][c])
    }

    /// Checks the density-matrix invariants.
    pub fn validate(&self) -> Result<()> {
        if self
            .matrix
            .iter()
            .flatten()
            .any(|z| !z.re.is_finite() || !z.im.is_finite())
        {
            return Err(Error::InvalidDensityMatrix("non-finite entry".into()));
        }
        let h = self.hermiticity_defect();
        if h > ALGEBRAIC_TOL {
            return Err(Error::InvalidDensityMatrix(format!("not Hermitian (defect {h:e})")));
        }
        let tr = self.trace();
        if (tr - ONE).norm() > ALGEBRAIC_TOL {
            return Err(Error::InvalidDensityMatrix(format!("trace {tr} ≠ 1")));
        }
        let min = self.eigenvalues()[0];
        if min < -PSD_TOL {
            return Err(Error::InvalidDensityMatrix(format!("negative eigenvalue {min:e}")));
        }
        Ok(())
    }
}

/// One step of a circuit.
#[derive(Debug, Clone, PartialEq)]
pub enum Gate {
    Single {
        unitary: Unitary2,
        target: Qubit,
    },
    Controlled {
        unitary: Unitary2,
        controls: Vec<Qubit>,
        target: Qubit,
    },
    TwoQubit {
        unitary: Unitary4,
        qubits: (Qubit, Qubit),
    },
}

impl Gate {
    pub fn apply(&self, state: &StateVector) -> Result<StateVector> {
        match self {
            Gate::Single { unitary, target } => state.apply_single_qubit(unitary, *target),
            Gate::Controlled {
                unitary,
                controls,
                target,
            } => state.apply_controlled(unitary, controls, *target),
            Gate::TwoQubit { unitary, qubits } => state.apply_two_qubit(unitary, qubits.0, qubits.1),
        }
    }

    pub fn inverse(&self) -> Gate {
        match self {
            Gate::Single { unitary, target } => Gate::Single {
                unitary: unitary.adjoint(),
                target: *target,
            },
            Gate::Controlled {
                unitary,
                controls,
                target,
            } => Gate::Controlled {
                unitary: unitary.adjoint(),
                controls: controls.clone(),
                target: *target,
            },
            Gate::TwoQubit { unitary, qubits } => Gate::TwoQubit {
                unitary: unitary.adjoint(),
                qubits: *qubits,
            },
        }
    }
}

/// An ordered gate sequence.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Circuit {
    gates: Vec<Gate>,
}

impl Circuit {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn push(&mut self, gate: Gate) -> &mut Self {
        self.gates.push(gate);
        self
    }

    pub fn gates(&self) -> &[Gate] {
        &self.gates
    }

    pub fn run(&self, state: &StateVector) -> Result<StateVector> {
        self.gates.iter().try_fold(state.clone(), |s, g| g.apply(&s))
    }

    /// The circuit that undoes `self`.
    pub fn inverse(&self) -> Circuit {
        Circuit {
            gates: self.gates.iter().rev().map(Gate::inverse).collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::{FRAC_1_SQRT_2, FRAC_PI_2, FRAC_PI_4};

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn ket(n: usize, terms: &[(usize, Complex64)]) -> StateVector {
        let mut amps = vec![ZERO; 1 << n];
        for &(i, a) in terms {
            amps[i] = a;
        }
        StateVector::new(amps).unwrap()
    }

    #[test]
    fn paulis_are_unitary_and_hermitian() {
        for p in [
            Unitary2::identity(),
            Unitary2::pauli_x(),
            Unitary2::pauli_y(),
            Unitary2::pauli_z(),
        ] {
            assert!(p.unitarity_defect() < ALGEBRAIC_TOL);
            assert_eq!(p.adjoint(), p);
        }
    }

    #[test]
    fn identity_gate_is_noop() {
        let s = ket(3, &[(0, c(0.6, 0.0)), (5, c(0.0, 0.8))]);
        for q in Qubit::ALL {
            assert_eq!(s.apply_single_qubit(&Unitary2::identity(), q).unwrap(), s);
        }
    }

    #[test]
    fn x_on_a_flips_middle_bit() {
        let s = StateVector::zero(3)
            .unwrap()
            .apply_single_qubit(&Unitary2::pauli_x(), Qubit::A)
            .unwrap();
        assert_eq!(s, StateVector::basis(3, 0b010).unwrap());
    }

    #[test]
    fn y_convention() {
        let s = StateVector::zero(2)
            .unwrap()
            .apply_single_qubit(&Unitary2::pauli_y(), Qubit::B)
            .unwrap();
        assert_eq!(s.amplitude(1), I);
        assert_eq!(s.amplitude(0), ZERO);
    }

    #[test]
    fn q_is_not_in_two_qubit_register() {
        let s = StateVector::zero(2).unwrap();
        assert!(matches!(
            s.apply_single_qubit(&Unitary2::pauli_x(), Qubit::Q),
            Err(Error::InvalidQubit { .. })
        ));
    }

    #[test]
    fn toffoli_on_q_and_b_flips_a() {
        let s = StateVector::basis(3, 0b111).unwrap();
        let out = s
            .apply_controlled(&Unitary2::pauli_x(), &[Qubit::Q, Qubit::B], Qubit::A)
            .unwrap();
        assert_eq!(out, StateVector::basis(3, 0b101).unwrap());
    }

    #[test]
    fn controls_unsatisfied_on_zero() {
        let s = StateVector::zero(3).unwrap();
        let out = s
            .apply_controlled(&Unitary2::x_rotation(0.7), &[Qubit::A], Qubit::Q)
            .unwrap();
        assert_eq!(out, s);
    }

    #[test]
    fn controlled_rotation_on_resource_qubit() {
        let s = StateVector::basis(3, 0b011).unwrap();
        let out = s
            .apply_controlled(&Unitary2::x_rotation(FRAC_PI_4), &[Qubit::A], Qubit::Q)
            .unwrap();
        let expect = ket(3, &[(0b011, c(FRAC_1_SQRT_2, 0.0)), (0b111, c(0.0, FRAC_1_SQRT_2))]);
        assert!(out.max_abs_diff(&expect) < ALGEBRAIC_TOL);
    }

    #[test]
    fn overlapping_control_and_target_rejected() {
        let s = StateVector::zero(3).unwrap();
        assert_eq!(
            s.apply_controlled(&Unitary2::pauli_x(), &[Qubit::A], Qubit::A),
            Err(Error::OverlappingQubits(Qubit::A))
        );
        assert_eq!(
            s.apply_controlled(&Unitary2::pauli_x(), &[Qubit::B, Qubit::B], Qubit::A),
            Err(Error::OverlappingQubits(Qubit::B))
        );
        assert_eq!(
            s.apply_controlled(&Unitary2::pauli_x(), &[], Qubit::A),
            Err(Error::NoControls)
        );
    }

    #[test]
    fn entangler_special_values() {
        assert!(entangler(0.0).max_abs_diff(&Unitary4::identity()) < ALGEBRAIC_TOL);
        let xx = Unitary4::kron(&Unitary2::pauli_x(), &Unitary2::pauli_x());
        let j = entangler(FRAC_PI_2);
        for r in 0..4 {
            for col in 0..4 {
                let expect = (Unitary4::identity().entries()[r][col] + I * xx.entries()[r][col]) * FRAC_1_SQRT_2;
                assert!((j.entries()[r][col] - expect).norm() < ALGEBRAIC_TOL);
            }
        }
        for g in [0.3, 1.15, 2.9] {
            let p = entangler(g).mul(&entangler(-g));
            assert!(p.max_abs_diff(&Unitary4::identity()) < ALGEBRAIC_TOL);
            assert!(entangler(g).adjoint().max_abs_diff(&entangler(-g)) < ALGEBRAIC_TOL);
        }
    }

    #[test]
    fn partial_trace_of_product_is_pure_bell() {
        let h = FRAC_1_SQRT_2;
        let s = ket(3, &[(0b000, c(h, 0.0)), (0b011, c(h, 0.0))]);
        let rho = s.partial_trace(Qubit::Q).unwrap();
        assert_eq!(rho.qubits(), (Qubit::A, Qubit::B));
        for (r, c_) in [(0, 0), (0, 3), (3, 0), (3, 3)] {
            assert!((rho.entries()[r][c_] - c(0.5, 0.0)).norm() < ALGEBRAIC_TOL);
        }
        assert!((rho.purity() - 1.0).abs() < PSD_TOL);
    }

    #[test]
    fn partial_trace_of_ghz_is_classical_mixture() {
        let h = FRAC_1_SQRT_2;
        let s = ket(3, &[(0b000, c(h, 0.0)), (0b111, c(0.0, h))]);
        let rho = s.partial_trace(Qubit::Q).unwrap();
        for r in 0..4 {
            for col in 0..4 {
                let expect = if r == col && (r == 0 || r == 3) { 0.5 } else { 0.0 };
                assert!((rho.entries()[r][col] - c(expect, 0.0)).norm() < ALGEBRAIC_TOL);
            }
        }
    }

    #[test]
    fn partial_trace_of_w_is_rank_two() {
        // Hand computation: tracing any qubit of (|001⟩+|010⟩+|100⟩)/√3 leaves
        // (1/3)|00⟩⟨00| + (2/3)|Ψ⁺⟩⟨Ψ⁺|.
        let t = 1.0 / 3f64.sqrt();
        let w = ket(3, &[(1, c(t, 0.0)), (2, c(t, 0.0)), (4, c(t, 0.0))]);
        for q in Qubit::ALL {
            let rho = w.partial_trace(q).unwrap();
            assert!((rho.trace() - ONE).norm() < ALGEBRAIC_TOL);
            assert_eq!(rho.rank(1e-9), 2);
            let e = rho.entries();
            assert!((e[0][0].re - 1.0 / 3.0).abs() < ALGEBRAIC_TOL);
            for (r, c_) in [(1, 1), (1, 2), (2, 1), (2, 2)] {
                assert!((e[r][c_].re - 1.0 / 3.0).abs() < ALGEBRAIC_TOL);
            }
            assert!(e[3][3].norm() < ALGEBRAIC_TOL);
        }
    }

    #[test]
    fn partial_trace_needs_three_qubits() {
        let s = StateVector::zero(2).unwrap();
        assert!(matches!(s.partial_trace(Qubit::A), Err(Error::WrongQubitCount { .. })));
    }

    #[test]
    fn density_matrix_validation() {
        let mut m = [[ZERO; 4]; 4];
        m[0][0] = c(0.5, 0.0);
        m[1][1] = c(0.5, 0.0);
        assert!(DensityMatrix2::new(m, (Qubit::A, Qubit::B)).is_ok());
        m[0][1] = c(0.0, 0.1);
        assert!(DensityMatrix2::new(m, (Qubit::A, Qubit::B)).is_err());
        let mut m2 = [[ZERO; 4]; 4];
        m2[0][0] = c(1.5, 0.0);
        m2[1][1] = c(-0.5, 0.0);
        assert!(DensityMatrix2::new(m2, (Qubit::A, Qubit::B)).is_err());
    }

    #[test]
    fn unnormalized_state_rejected() {
        assert!(matches!(
            StateVector::new(vec![ONE, ONE, ZERO, ZERO]),
            Err(Error::NotNormalized(_))
        ));
        assert!(matches!(StateVector::new(vec![ONE; 3]), Err(Error::BadStateLength(3))));
    }

    #[test]
    fn circuit_inverse_restores_state() {
        let mut circ = Circuit::new();
        circ.push(Gate::TwoQubit {
            unitary: entangler(1.1),
            qubits: (Qubit::A, Qubit::B),
        })
        .push(Gate::Controlled {
            unitary: Unitary2::x_rotation(0.4),
            controls: vec![Qubit::A],
            target: Qubit::Q,
        })
        .push(Gate::Single {
            unitary: Unitary2::pauli_y(),
            target: Qubit::B,
        });
        let s0 = StateVector::zero(3).unwrap();
        let back = circ.inverse().run(&circ.run(&s0).unwrap()).unwrap();
        assert!(back.max_abs_diff(&s0) < ALGEBRAIC_TOL);
    }
}
