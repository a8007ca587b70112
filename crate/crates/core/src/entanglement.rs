//! Pairwise concurrence of the pre-strategy state.

use nalgebra::{Matrix4, SymmetricEigen};
use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::game::{prepare_pre_strategy_state, GameParams};
use crate::quantum::{DensityMatrix2, Qubit, StateVector, ALGEBRAIC_TOL, PSD_TOL};

/// Concurrences of the three qubit pairs.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ConcurrenceTriple {
    pub ab: f64,
    pub qb: f64,
    pub qa: f64,
}

/// Wootters concurrence `max(0, λ₁ − λ₂ − λ₃ − λ₄)`, with `λᵢ` the decreasing
/// square roots of the spectrum of `ρ·(σY⊗σY)·ρ*·(σY⊗σY)`.
///
/// The `λᵢ` are read off as the singular values of `τ_ij = w_iᵀ·(σY⊗σY)·w_j`,
/// where `ρ = Σ w_i w_i†` is the eigen-decomposition with weights folded into
/// the vectors. Taking square roots of the product spectrum instead would turn
/// rounding noise of order 1e-16 into spurious λ of order 1e-8.
pub fn wootters_concurrence(rho: &DensityMatrix2) -> Result<f64> {
    let h = rho.hermiticity_defect();
    if !h.is_finite() || h > ALGEBRAIC_TOL {
        return Err(Error::InvalidDensityMatrix(format!("not Hermitian (defect {h:e})")));
    }
    let tr = rho.trace();
    if (tr - Complex64::new(1.0, 0.0)).norm() > ALGEBRAIC_TOL {
        return Err(Error::InvalidDensityMatrix(format!("trace {tr} ≠ 1")));
    }

    let eig = SymmetricEigen::new(rho.to_nalgebra());
    let mut weighted = eig.eigenvectors;
    for (k, &p) in eig.eigenvalues.iter().enumerate() {
        if p < -PSD_TOL {
            return Err(Error::InvalidDensityMatrix(format!("negative eigenvalue {p:e}")));
        }
        // Clamp rounding-level negatives.
        let scale = Complex64::new(p.max(0.0).sqrt(), 0.0);
        weighted.column_mut(k).scale_mut(scale.re);
    }
    let tau = weighted.transpose() * spin_flip_matrix() * weighted;

    let mut lambdas: Vec<f64> = tau.svd(false, false).singular_values.iter().copied().collect();
    lambdas.sort_by(|a, b| b.total_cmp(a));
    let c = lambdas[0] - lambdas[1] - lambdas[2] - lambdas[3];
    Ok(c.clamp(0.0, 1.0))
}

/// `σY⊗σY = antidiag(−1, 1, 1, −1)`.
fn spin_flip_matrix() -> Matrix4<Complex64> {
    Matrix4::from_fn(|r, c| {
        if r + c != 3 {
            Complex64::new(0.0, 0.0)
        } else if r == 0 || r == 3 {
            Complex64::new(-1.0, 0.0)
        } else {
            Complex64::new(1.0, 0.0)
        }
    })
}

/// Concurrences of the three reduced pairs of a three-qubit state.
pub fn concurrences(state: &StateVector) -> Result<ConcurrenceTriple> {
    let of = |discard| state.partial_trace(discard).and_then(|rho| wootters_concurrence(&rho));
    Ok(ConcurrenceTriple {
        ab: of(Qubit::Q)?,
        qb: of(Qubit::A)?,
        qa: of(Qubit::B)?,
    })
}

/// Concurrences of the state the prisoners receive.
pub fn pairwise_concurrences(params: &GameParams) -> ConcurrenceTriple {
    concurrences(&prepare_pre_strategy_state(params)).expect("prepared state is a valid 3-qubit register")
}
