//! Statevector simulation of QAOA and the quantum alternating operator
//! ansatz for Max-Cut and maximum (weighted) independent set.
//!
//! The pipeline is: build a [`graph::Graph`], turn it into cost and mixer
//! [`hamiltonian::PauliSum`]s, evolve a [`simulator::StateVector`] through
//! `p` alternating layers, and tune the `2p` angles with the bounded
//! Nelder–Mead search in [`optimizer`]. [`oracle`] holds brute-force
//! references, and [`cli`] writes JSON/CSV reports.
//!
//! ```
//! use qaoa_mis::prelude::*;
//!
//! let ring = NamedGraph::SquareRing.build();
//! let inst = Instance::new(Problem::Mis, &ring, Some("0000".parse().unwrap())).unwrap();
//! let curve = sweep_p1(&inst.cost_diag, &inst.engine, &inst.initial, inst.c_max, &beta_grid(200)).unwrap();
//! let best = curve.iter().map(|v| v.1).fold(0.0, f64::max);
//! assert!((best - 0.89).abs() < 0.01);
//! ```

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod cli;
pub mod error;
pub mod graph;
pub mod hamiltonian;
pub mod optimizer;
pub mod oracle;
pub mod problem;
pub mod simulator;

pub use error::{Error, Result};

pub mod prelude {
    pub use crate::error::{Error, Result};
    pub use crate::graph::{build_named_graph, Graph, NamedGraph, NodeSubset};
    pub use crate::hamiltonian::{
        maxcut_cost, maxcut_mixer, mis_cost, mis_mixer, Pauli, PauliString, PauliSum,
    };
    pub use crate::optimizer::{
        beta_grid, nelder_mead, sweep_p1, vqe_optimize, Instance, NelderMeadConfig, VqeOutcome,
        VqeRunConfig,
    };
    pub use crate::oracle::{brute_force_optimum, reference_evolve, OptimumReport};
    pub use crate::problem::Problem;
    pub use crate::simulator::{
        apply_mixer, apply_phase_separator, build_mixer_engine, expectation, init_state,
        probabilities, run_ansatz, AnsatzParams, InitialState, MixerEngine, StateVector,
    };
}
