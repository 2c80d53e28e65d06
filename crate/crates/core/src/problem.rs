use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Graph, NodeSubset};
use crate::hamiltonian::{maxcut_cost, maxcut_mixer, mis_cost, mis_mixer, PauliSum};
use crate::simulator::InitialState;

/// The two problem families.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Problem {
    MaxCut,
    Mis,
}

impl Problem {
    pub const ALL: [Problem; 2] = [Problem::MaxCut, Problem::Mis];

    pub fn as_str(self) -> &'static str {
        match self {
            Problem::MaxCut => "maxcut",
            Problem::Mis => "mis",
        }
    }

    pub fn cost(self, g: &Graph) -> PauliSum {
        match self {
            Problem::MaxCut => maxcut_cost(g),
            Problem::Mis => mis_cost(g),
        }
    }

    pub fn mixer(self, g: &Graph) -> PauliSum {
        match self {
            Problem::MaxCut => maxcut_mixer(g),
            Problem::Mis => mis_mixer(g),
        }
    }

    /// Classical objective; `None` when `s` violates the problem's constraints.
    pub fn objective(self, g: &Graph, s: &NodeSubset) -> Result<Option<f64>> {
        match self {
            Problem::MaxCut => g.cut_value(s).map(Some),
            Problem::Mis => {
                if g.is_independent(s)? {
                    g.subset_weight(s).map(Some)
                } else {
                    Ok(None)
                }
            }
        }
    }

    /// `plus` for Max-Cut, the empty set for MIS.
    pub fn default_initial_state(self, num_nodes: usize) -> InitialState {
        match self {
            Problem::MaxCut => InitialState::Plus,
            Problem::Mis => InitialState::Basis(NodeSubset::empty(num_nodes)),
        }
    }

    /// Feasibility requirement on the initial state. MIS needs a basis
    /// state that is an independent set.
    pub fn check_initial_state(self, g: &Graph, init: &InitialState) -> Result<()> {
        match (self, init) {
            (Problem::MaxCut, InitialState::Plus) => Ok(()),
            (_, InitialState::Basis(s)) => {
                if self == Problem::Mis {
                    if let Some((i, j)) = g.violated_edge(s)? {
                        return Err(Error::Infeasible { state: s.to_string(), i, j });
                    }
                } else if s.num_nodes() != g.num_nodes() {
                    return Err(Error::LengthMismatch { expected: g.num_nodes(), got: s.num_nodes() });
                }
                Ok(())
            }
            (Problem::Mis, InitialState::Plus) => Err(Error::InvalidParams(
                "the plus state is not feasible for mis; pass an independent-set bitstring".into(),
            )),
        }
    }
}

impl FromStr for Problem {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "maxcut" => Ok(Problem::MaxCut),
            "mis" => Ok(Problem::Mis),
            other => Err(Error::InvalidParams(format!("unknown problem `{other}`"))),
        }
    }
}

impl fmt::Display for Problem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}
