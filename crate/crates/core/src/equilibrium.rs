//! Pure-strategy Nash equilibria over the 16 quaternionic profiles.

use std::fmt;

use serde::{Serialize, Serializer};

use crate::game::{GameParams, Interrogation, PayoffPair, PayoffTable, Strategy, StrategyProfile};

/// Default slack for the weak-equilibrium test.
pub const DEFAULT_EPSILON: f64 = 1e-9;

/// Payoffs of all 16 profiles at one parameter point.
#[derive(Debug, Clone, PartialEq)]
pub struct PayoffBimatrix {
    cells: [[PayoffPair; 4]; 4],
}

impl PayoffBimatrix {
    /// Runs the 16 circuit evaluations.
    pub fn compute(params: &GameParams, table: &PayoffTable) -> Self {
        let game = Interrogation::new(params);
        let mut cells = [[PayoffPair::new(0.0, 0.0); 4]; 4];
        for p in StrategyProfile::all() {
            cells[p.alice.index()][p.bob.index()] = game.payoffs(p, table);
        }
        PayoffBimatrix { cells }
    }

    pub fn from_cells(cells: [[PayoffPair; 4]; 4]) -> Self {
        PayoffBimatrix { cells }
    }

    pub fn get(&self, profile: StrategyProfile) -> PayoffPair {
        self.cells[profile.alice.index()][profile.bob.index()]
    }

    /// No unilateral deviation improves either player by more than `epsilon`.
    pub fn is_nash(&self, profile: StrategyProfile, epsilon: f64) -> bool {
        let here = self.get(profile);
        let alice_ok = Strategy::ALL
            .iter()
            .all(|&s| self.get(StrategyProfile::new(s, profile.bob)).alice <= here.alice + epsilon);
        let bob_ok = Strategy::ALL
            .iter()
            .all(|&s| self.get(StrategyProfile::new(profile.alice, s)).bob <= here.bob + epsilon);
        alice_ok && bob_ok
    }
}

/// Equilibrium label. `F`, `G` and `H` are the named families; every other
/// profile gets a systematic label.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum EquilibriumType {
    /// `(I, I)`.
    F,
    /// `(Z, X)`.
    G,
    /// `(X, Z)`.
    H,
    Other(StrategyProfile),
}

impl fmt::Display for EquilibriumType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EquilibriumType::F => f.write_str("F"),
            EquilibriumType::G => f.write_str("G"),
            EquilibriumType::H => f.write_str("H"),
            EquilibriumType::Other(p) => write!(f, "P-{p}"),
        }
    }
}

impl Serialize for EquilibriumType {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

pub fn classify(profile: StrategyProfile) -> EquilibriumType {
    use Strategy::*;
    match (profile.alice, profile.bob) {
        (I, I) => EquilibriumType::F,
        (Z, X) => EquilibriumType::G,
        (X, Z) => EquilibriumType::H,
        _ => EquilibriumType::Other(profile),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Equilibrium {
    pub profile: StrategyProfile,
    pub payoffs: PayoffPair,
    pub kind: EquilibriumType,
}

/// All weak pure equilibria at one parameter point.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EquilibriumReport {
    pub params: GameParams,
    /// Lexicographic in profile labels.
    pub equilibria: Vec<Equilibrium>,
    /// Index of the plotted equilibrium: highest Alice payoff, then Bob's,
    /// then earliest profile.
    pub best: Option<usize>,
}

impl EquilibriumReport {
    pub fn from_bimatrix(params: GameParams, bimatrix: &PayoffBimatrix, epsilon: f64) -> Self {
        let equilibria: Vec<Equilibrium> = StrategyProfile::all()
            .filter(|&p| bimatrix.is_nash(p, epsilon))
            .map(|p| Equilibrium {
                profile: p,
                payoffs: bimatrix.get(p),
                kind: classify(p),
            })
            .collect();
        let best = best_index(&equilibria);
        EquilibriumReport {
            params,
            equilibria,
            best,
        }
    }

    pub fn is_empty(&self) -> bool {
        self.equilibria.is_empty()
    }

    pub fn len(&self) -> usize {
        self.equilibria.len()
    }

    pub fn best(&self) -> Option<&Equilibrium> {
        self.best.map(|i| &self.equilibria[i])
    }

    pub fn contains(&self, profile: StrategyProfile) -> bool {
        self.equilibria.iter().any(|e| e.profile == profile)
    }

    pub fn contains_type(&self, kind: EquilibriumType) -> bool {
        self.equilibria.iter().any(|e| e.kind == kind)
    }
}

fn best_index(eqs: &[Equilibrium]) -> Option<usize> {
    let mut best: Option<usize> = None;
    for (i, e) in eqs.iter().enumerate() {
        match best {
            None => best = Some(i),
            Some(b) => {
                let cur = eqs[b].payoffs;
                // Strict improvement only, so the earliest profile wins exact ties.
                if e.payoffs.alice > cur.alice || (e.payoffs.alice == cur.alice && e.payoffs.bob > cur.bob) {
                    best = Some(i);
                }
            }
        }
    }
    best
}

/// Weak Nash test of `profile` under the default table.
pub fn is_nash(params: &GameParams, profile: StrategyProfile, epsilon: f64) -> bool {
    PayoffBimatrix::compute(params, &PayoffTable::default()).is_nash(profile, epsilon)
}

/// Every weak pure equilibrium under the default table.
pub fn find_pure_ne(params: &GameParams, epsilon: f64) -> EquilibriumReport {
    find_pure_ne_with(params, &PayoffTable::default(), epsilon)
}

pub fn find_pure_ne_with(params: &GameParams, table: &PayoffTable, epsilon: f64) -> EquilibriumReport {
    let bm = PayoffBimatrix::compute(params, table);
    EquilibriumReport::from_bimatrix(*params, &bm, epsilon)
}
