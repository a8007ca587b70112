//! Payoff table, quaternionic strategies and the interrogation circuits.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::quantum::{entangler, Circuit, Gate, Qubit, StateVector, Unitary2, Unitary4};

/// A classical move; qubit value 0 is `Cooperate`, 1 is `Defect`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Move {
    Cooperate,
    Defect,
}

impl Move {
    pub const ALL: [Move; 2] = [Move::Cooperate, Move::Defect];

    fn index(self) -> usize {
        match self {
            Move::Cooperate => 0,
            Move::Defect => 1,
        }
    }
}

/// Expected payoffs of Alice and Bob.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PayoffPair {
    pub alice: f64,
    pub bob: f64,
}

impl PayoffPair {
    pub const fn new(alice: f64, bob: f64) -> Self {
        PayoffPair { alice, bob }
    }

    pub fn max_abs_diff(&self, other: &PayoffPair) -> f64 {
        (self.alice - other.alice).abs().max((self.bob - other.bob).abs())
    }
}

/// Classical payoffs for the four `(alice, bob)` move pairs.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PayoffTable {
    entries: [[PayoffPair; 2]; 2],
}

impl Default for PayoffTable {
    /// The standard dilemma table: CC → (11, 9), CD → (1, 10), DC → (10, 1),
    /// DD → (6, 6).
    fn default() -> Self {
        PayoffTable::new(
            PayoffPair::new(11.0, 9.0),
            PayoffPair::new(1.0, 10.0),
            PayoffPair::new(10.0, 1.0),
            PayoffPair::new(6.0, 6.0),
        )
    }
}

impl PayoffTable {
    pub const fn new(cc: PayoffPair, cd: PayoffPair, dc: PayoffPair, dd: PayoffPair) -> Self {
        PayoffTable {
            entries: [[cc, cd], [dc, dd]],
        }
    }

    pub fn get(&self, alice: Move, bob: Move) -> PayoffPair {
        self.entries[alice.index()][bob.index()]
    }

    /// Payoffs for outcome index `2·a + b`.
    pub fn by_outcome(&self, outcome: usize) -> PayoffPair {
        self.entries[(outcome >> 1) & 1][outcome & 1]
    }

    /// `(min, max)` over Alice's four entries.
    pub fn alice_range(&self) -> (f64, f64) {
        self.range(|p| p.alice)
    }

    /// `(min, max)` over Bob's four entries.
    pub fn bob_range(&self) -> (f64, f64) {
        self.range(|p| p.bob)
    }

    fn range(&self, f: impl Fn(&PayoffPair) -> f64) -> (f64, f64) {
        self.entries
            .iter()
            .flatten()
            .map(f)
            .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), v| (lo.min(v), hi.max(v)))
    }

    /// Pure equilibria of the classical game, as `(alice, bob)` move pairs.
    pub fn classical_equilibria(&self) -> Vec<(Move, Move)> {
        let mut out = Vec::new();
        for a in Move::ALL {
            for b in Move::ALL {
                let here = self.get(a, b);
                let alice_ok = Move::ALL.iter().all(|&x| self.get(x, b).alice <= here.alice);
                let bob_ok = Move::ALL.iter().all(|&y| self.get(a, y).bob <= here.bob);
                if alice_ok && bob_ok {
                    out.push((a, b));
                }
            }
        }
        out
    }

    /// Bob's strictly dominant move, if any.
    pub fn bob_dominant_move(&self) -> Option<Move> {
        Move::ALL.into_iter().find(|&m| {
            Move::ALL
                .iter()
                .filter(|&&o| o != m)
                .all(|&o| Move::ALL.iter().all(|&a| self.get(a, m).bob > self.get(a, o).bob))
        })
    }

    /// Alice's strictly dominant move, if any.
    pub fn alice_dominant_move(&self) -> Option<Move> {
        Move::ALL.into_iter().find(|&m| {
            Move::ALL
                .iter()
                .filter(|&&o| o != m)
                .all(|&o| Move::ALL.iter().all(|&b| self.get(m, b).alice > self.get(o, b).alice))
        })
    }

    /// Mutual defection is the only classical equilibrium, yet mutual
    /// cooperation is better for both players.
    pub fn is_dilemma(&self) -> bool {
        use Move::*;
        let (cc, dd) = (self.get(Cooperate, Cooperate), self.get(Defect, Defect));
        self.classical_equilibria() == vec![(Defect, Defect)] && cc.alice > dd.alice && cc.bob > dd.bob
    }

    /// Expected payoffs under an outcome distribution.
    pub fn expected(&self, dist: &OutcomeDistribution) -> PayoffPair {
        let mut out = PayoffPair::new(0.0, 0.0);
        for (k, p) in dist.0.iter().enumerate() {
            let e = self.by_outcome(k);
            out.alice += p * e.alice;
            out.bob += p * e.bob;
        }
        out
    }
}

/// One of the four quaternionic strategies.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Strategy {
    I,
    X,
    Y,
    Z,
}

impl Strategy {
    pub const ALL: [Strategy; 4] = [Strategy::I, Strategy::X, Strategy::Y, Strategy::Z];

    pub fn unitary(self) -> Unitary2 {
        match self {
            Strategy::I => Unitary2::identity(),
            Strategy::X => Unitary2::pauli_x(),
            Strategy::Y => Unitary2::pauli_y(),
            Strategy::Z => Unitary2::pauli_z(),
        }
    }

    pub fn label(self) -> char {
        match self {
            Strategy::I => 'I',
            Strategy::X => 'X',
            Strategy::Y => 'Y',
            Strategy::Z => 'Z',
        }
    }

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn from_label(c: char) -> Option<Strategy> {
        match c.to_ascii_uppercase() {
            'I' => Some(Strategy::I),
            'X' => Some(Strategy::X),
            'Y' => Some(Strategy::Y),
            'Z' => Some(Strategy::Z),
            _ => None,
        }
    }
}

impl fmt::Display for Strategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.label())
    }
}

/// `(alice, bob)` strategy pair; ordering matters because the table is asymmetric.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct StrategyProfile {
    pub alice: Strategy,
    pub bob: Strategy,
}

impl StrategyProfile {
    pub const fn new(alice: Strategy, bob: Strategy) -> Self {
        StrategyProfile { alice, bob }
    }

    /// All 16 profiles in lexicographic label order.
    pub fn all() -> impl Iterator<Item = StrategyProfile> {
        Strategy::ALL
            .into_iter()
            .flat_map(|a| Strategy::ALL.into_iter().map(move |b| StrategyProfile::new(a, b)))
    }
}

impl fmt::Display for StrategyProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.alice, self.bob)
    }
}

/// The interrogator's knobs, in radians.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct GameParams {
    /// Entangler strength.
    pub gamma: f64,
    /// Rotation angle of the resource qubit controlled by Alice's qubit.
    pub delta: f64,
    /// Extra rotation of the resource qubit; zero gives the W-side circuit.
    pub eta: f64,
}

impl GameParams {
    pub fn new(gamma: f64, delta: f64, eta: f64) -> Result<Self> {
        for (name, v) in [("gamma", gamma), ("delta", delta), ("eta", eta)] {
            if !v.is_finite() {
                return Err(Error::OutOfRange {
                    name,
                    value: v,
                    lo: f64::NEG_INFINITY,
                    hi: f64::INFINITY,
                });
            }
        }
        Ok(GameParams { gamma, delta, eta })
    }

    /// Parameters with `η = 0`.
    pub fn with_gamma_delta(gamma: f64, delta: f64) -> Self {
        GameParams { gamma, delta, eta: 0.0 }
    }

    /// Affine interpolation `(1−s)·self + s·other`.
    pub fn lerp(&self, other: &GameParams, s: f64) -> GameParams {
        GameParams {
            gamma: self.gamma + s * (other.gamma - self.gamma),
            delta: self.delta + s * (other.delta - self.delta),
            eta: self.eta + s * (other.eta - self.eta),
        }
    }
}

/// Joint probabilities of the measured `(A, B)` outcomes, indexed `2·a + b`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct OutcomeDistribution(pub [f64; 4]);

impl OutcomeDistribution {
    pub fn get(&self, alice: Move, bob: Move) -> f64 {
        self.0[2 * alice.index() + bob.index()]
    }

    pub fn total(&self) -> f64 {
        self.0.iter().sum()
    }
}

/// `P(a, b) = Σ_q |amp(q, a, b)|²`. The resource qubit is never measured, so
/// it is marginalized; two-qubit states are read directly.
pub fn measurement_distribution(state: &StateVector) -> OutcomeDistribution {
    let mut p = [0.0; 4];
    for (idx, amp) in state.amplitudes().iter().enumerate() {
        p[idx & 3] += amp.norm_sqr();
    }
    OutcomeDistribution(p)
}

/// Gates the interrogator applies before the prisoners move:
///
/// 1. `J(γ)` on `(A, B)`;
/// 2. `exp(iδσX)` on `Q`, controlled by `A`;
/// 3. `X` on `A`, controlled by `Q` and `B`;
/// 4. `exp(−iησY)` on `Q`, controlled by `A`.
///
/// The result from `|000⟩` is
/// `cos(γ/2)|000⟩ + i sin(γ/2)cosδ cosη|011⟩ + i sin(γ/2)cosδ sinη|111⟩ − sin(γ/2)sinδ|101⟩`.
pub fn preparation_circuit(params: &GameParams) -> Circuit {
    let mut c = Circuit::new();
    c.push(Gate::TwoQubit {
        unitary: entangler(params.gamma),
        qubits: (Qubit::A, Qubit::B),
    })
    .push(Gate::Controlled {
        unitary: Unitary2::x_rotation(params.delta),
        controls: vec![Qubit::A],
        target: Qubit::Q,
    })
    .push(Gate::Controlled {
        unitary: Unitary2::pauli_x(),
        controls: vec![Qubit::Q, Qubit::B],
        target: Qubit::A,
    })
    .push(Gate::Controlled {
        unitary: Unitary2::real_rotation(params.eta),
        controls: vec![Qubit::A],
        target: Qubit::Q,
    });
    c
}

/// The three-qubit state just before the prisoners apply their strategies.
pub fn prepare_pre_strategy_state(params: &GameParams) -> StateVector {
    Interrogation::new(params).pre_strategy_state().clone()
}

/// A prepared instance of the three-qubit game at fixed parameters.
///
/// The preparation is run once; each profile then costs one strategy layer
/// plus the reversal.
#[derive(Debug, Clone)]
pub struct Interrogation {
    params: GameParams,
    reversal: Circuit,
    prepared: StateVector,
}

impl Interrogation {
    pub fn new(params: &GameParams) -> Self {
        let prep = preparation_circuit(params);
        let zero = StateVector::zero(3).expect("3-qubit register");
        let prepared = prep.run(&zero).expect("gates address valid qubits");
        Interrogation {
            params: *params,
            reversal: prep.inverse(),
            prepared,
        }
    }

    pub fn params(&self) -> &GameParams {
        &self.params
    }

    pub fn pre_strategy_state(&self) -> &StateVector {
        &self.prepared
    }

    /// State after strategies and the interrogator's reversal.
    pub fn final_state(&self, profile: StrategyProfile) -> StateVector {
        self.prepared
            .apply_single_qubit(&profile.alice.unitary(), Qubit::A)
            .and_then(|s| s.apply_single_qubit(&profile.bob.unitary(), Qubit::B))
            .and_then(|s| self.reversal.run(&s))
            .expect("gates address valid qubits")
    }

    pub fn payoffs(&self, profile: StrategyProfile, table: &PayoffTable) -> PayoffPair {
        table.expected(&measurement_distribution(&self.final_state(profile)))
    }
}

/// Expected payoffs of `profile` in the three-qubit game.
pub fn evaluate_game(params: &GameParams, profile: StrategyProfile, table: &PayoffTable) -> PayoffPair {
    Interrogation::new(params).payoffs(profile, table)
}

/// Expected payoffs in the two-qubit game `J(γ) → U_A⊗U_B → J(−γ)`.
pub fn baseline_evaluate(gamma: f64, profile: StrategyProfile, table: &PayoffTable) -> PayoffPair {
    let j = entangler(gamma);
    let strategies = Unitary4::kron(&profile.alice.unitary(), &profile.bob.unitary());
    let out = StateVector::zero(2)
        .and_then(|s| s.apply_two_qubit(&j, Qubit::A, Qubit::B))
        .and_then(|s| s.apply_two_qubit(&strategies, Qubit::A, Qubit::B))
        .and_then(|s| s.apply_two_qubit(&j.adjoint(), Qubit::A, Qubit::B))
        .expect("2-qubit register");
    table.expected(&measurement_distribution(&out))
}
