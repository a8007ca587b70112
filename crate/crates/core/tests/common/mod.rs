//! Dense-matrix reference implementation and random generators shared by
//! the integration tests. Deliberately independent of the library's gate
//! kernels: every operator is built as a full 8×8 matrix from Kronecker
//! products and projectors, then multiplied out.

#![allow(dead_code, clippy::needless_range_loop)]

use num_complex::Complex64 as C;
use qpd_core::{GameParams, PayoffPair, PayoffTable, StateVector, Strategy, StrategyProfile};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

pub type M2 = [[C; 2]; 2];
pub type M8 = [[C; 8]; 8];

const ZERO: C = C::new(0.0, 0.0);
const ONE: C = C::new(1.0, 0.0);

pub fn rng(seed: u64) -> StdRng {
    StdRng::seed_from_u64(seed)
}

pub fn eye2() -> M2 {
    [[ONE, ZERO], [ZERO, ONE]]
}

pub fn proj0() -> M2 {
    [[ONE, ZERO], [ZERO, ZERO]]
}

pub fn proj1() -> M2 {
    [[ZERO, ZERO], [ZERO, ONE]]
}

pub fn pauli(s: Strategy) -> M2 {
    let i = C::new(0.0, 1.0);
    match s {
        Strategy::I => eye2(),
        Strategy::X => [[ZERO, ONE], [ONE, ZERO]],
        Strategy::Y => [[ZERO, -i], [i, ZERO]],
        Strategy::Z => [[ONE, ZERO], [ZERO, -ONE]],
    }
}

/// `cos θ · I + i sin θ · X`.
pub fn exp_i_x(theta: f64) -> M2 {
    let (s, c) = theta.sin_cos();
    [[C::new(c, 0.0), C::new(0.0, s)], [C::new(0.0, s), C::new(c, 0.0)]]
}

/// `cos θ · I − i sin θ · Y`.
pub fn exp_minus_i_y(theta: f64) -> M2 {
    let (s, c) = theta.sin_cos();
    [[C::new(c, 0.0), C::new(-s, 0.0)], [C::new(s, 0.0), C::new(c, 0.0)]]
}

/// `a ⊗ b ⊗ c` in the (Q, A, B) ordering.
pub fn kron3(a: &M2, b: &M2, c: &M2) -> M8 {
    let mut m = [[ZERO; 8]; 8];
    for r in 0..8 {
        for col in 0..8 {
            m[r][col] = a[r >> 2][col >> 2] * b[(r >> 1) & 1][(col >> 1) & 1] * c[r & 1][col & 1];
        }
    }
    m
}

pub fn add(a: &M8, b: &M8) -> M8 {
    let mut m = *a;
    for r in 0..8 {
        for c in 0..8 {
            m[r][c] += b[r][c];
        }
    }
    m
}

pub fn mul(a: &M8, b: &M8) -> M8 {
    let mut m = [[ZERO; 8]; 8];
    for r in 0..8 {
        for c in 0..8 {
            m[r][c] = (0..8).map(|k| a[r][k] * b[k][c]).sum();
        }
    }
    m
}

pub fn dagger(a: &M8) -> M8 {
    let mut m = [[ZERO; 8]; 8];
    for r in 0..8 {
        for c in 0..8 {
            m[r][c] = a[c][r].conj();
        }
    }
    m
}

pub fn apply(a: &M8, v: &[C; 8]) -> [C; 8] {
    let mut out = [ZERO; 8];
    for r in 0..8 {
        out[r] = (0..8).map(|k| a[r][k] * v[k]).sum();
    }
    out
}

/// `I_Q ⊗ (cos(γ/2) I⊗I + i sin(γ/2) X⊗X)`.
pub fn entangler8(gamma: f64) -> M8 {
    let (s, c) = (gamma / 2.0).sin_cos();
    let x = pauli(Strategy::X);
    let mut m = kron3(&eye2(), &eye2(), &eye2());
    let xx = kron3(&eye2(), &x, &x);
    for r in 0..8 {
        for col in 0..8 {
            m[r][col] = m[r][col] * c + xx[r][col] * C::new(0.0, s);
        }
    }
    m
}

/// `u` on Q, controlled by A.
pub fn q_controlled_by_a(u: &M2) -> M8 {
    add(&kron3(&eye2(), &proj0(), &eye2()), &kron3(u, &proj1(), &eye2()))
}

/// Toffoli with controls Q, B and target A.
pub fn toffoli_qb_to_a() -> M8 {
    let x = pauli(Strategy::X);
    let mut m = kron3(&proj0(), &eye2(), &eye2());
    m = add(&m, &kron3(&proj1(), &eye2(), &proj0()));
    add(&m, &kron3(&proj1(), &x, &proj1()))
}

/// Full preparation operator, last gate leftmost.
pub fn preparation(p: &GameParams) -> M8 {
    let gates = [
        entangler8(p.gamma),
        q_controlled_by_a(&exp_i_x(p.delta)),
        toffoli_qb_to_a(),
        q_controlled_by_a(&exp_minus_i_y(p.eta)),
    ];
    gates
        .iter()
        .fold(kron3(&eye2(), &eye2(), &eye2()), |acc, g| mul(g, &acc))
}

/// `P† (I ⊗ U_A ⊗ U_B) P`.
pub fn game_operator(p: &GameParams, profile: StrategyProfile) -> M8 {
    let prep = preparation(p);
    let moves = kron3(&eye2(), &pauli(profile.alice), &pauli(profile.bob));
    mul(&dagger(&prep), &mul(&moves, &prep))
}

pub fn ground() -> [C; 8] {
    let mut v = [ZERO; 8];
    v[0] = ONE;
    v
}

/// Payoffs by summing `|ψ_{q,a,b}|²` over `q` and weighting with the table.
pub fn oracle_payoffs(p: &GameParams, profile: StrategyProfile, table: &PayoffTable) -> PayoffPair {
    let psi = apply(&game_operator(p, profile), &ground());
    let mut pay = PayoffPair::new(0.0, 0.0);
    for (idx, amp) in psi.iter().enumerate() {
        let cell = table.by_outcome(idx & 3);
        pay.alice += amp.norm_sqr() * cell.alice;
        pay.bob += amp.norm_sqr() * cell.bob;
    }
    pay
}

/// The analytic pre-strategy state.
pub fn closed_form_state(p: &GameParams) -> [C; 8] {
    let (sg, cg) = (p.gamma / 2.0).sin_cos();
    let (sd, cd) = p.delta.sin_cos();
    let (se, ce) = p.eta.sin_cos();
    let mut v = [ZERO; 8];
    v[0b000] = C::new(cg, 0.0);
    v[0b011] = C::new(0.0, sg * cd * ce);
    v[0b111] = C::new(0.0, sg * cd * se);
    v[0b101] = C::new(-sg * sd, 0.0);
    v
}

pub fn max_diff(a: &[C], b: &[C]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max)
}

pub fn unitarity_defect(m: &M8) -> f64 {
    let prod = mul(&dagger(m), m);
    let mut worst = 0.0f64;
    for r in 0..8 {
        for c in 0..8 {
            let target = if r == c { ONE } else { ZERO };
            worst = worst.max((prod[r][c] - target).norm());
        }
    }
    worst
}

pub fn random_params(rng: &mut StdRng) -> GameParams {
    use std::f64::consts::TAU;
    GameParams {
        gamma: rng.random_range(0.0..TAU),
        delta: rng.random_range(0.0..TAU),
        eta: rng.random_range(0.0..TAU),
    }
}

pub fn random_profile(rng: &mut StdRng) -> StrategyProfile {
    StrategyProfile::new(
        Strategy::ALL[rng.random_range(0..4)],
        Strategy::ALL[rng.random_range(0..4)],
    )
}

/// Random `U(2)` element from uniform Euler angles (not Haar-distributed).
pub fn random_unitary2(rng: &mut StdRng) -> qpd_core::Unitary2 {
    use std::f64::consts::TAU;
    let (a, b, c, d): (f64, f64, f64, f64) = (
        rng.random_range(0.0..TAU),
        rng.random_range(0.0..TAU),
        rng.random_range(0.0..TAU),
        rng.random_range(0.0..TAU),
    );
    let (s, co) = (c / 2.0).sin_cos();
    let ph = |x: f64| C::from_polar(1.0, x);
    let m = [
        [ph(a - b / 2.0 - d / 2.0) * co, -ph(a - b / 2.0 + d / 2.0) * s],
        [ph(a + b / 2.0 - d / 2.0) * s, ph(a + b / 2.0 + d / 2.0) * co],
    ];
    qpd_core::Unitary2::new(m).expect("Euler form is unitary")
}

pub fn random_state(rng: &mut StdRng, num_qubits: usize) -> StateVector {
    let dim = 1usize << num_qubits;
    let mut amps: Vec<C> = (0..dim)
        .map(|_| C::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)))
        .collect();
    let norm = amps.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
    for a in &mut amps {
        *a /= norm;
    }
    StateVector::new(amps).expect("normalized")
}
