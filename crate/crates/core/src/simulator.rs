//! Exact statevector evolution of the alternating ansatz
//! `U_B(beta_p) U_C(gamma_p) ... U_B(beta_1) U_C(gamma_1) |s>` and its
//! measurement statistics.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use faer::{Mat, Side};
use num_complex::Complex64;
use rand::distributions::{Distribution, WeightedIndex};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::graph::NodeSubset;
use crate::hamiltonian::{PauliSum, MAX_DENSE_QUBITS};

/// Largest tolerated `max |V diag(L) V^H - B|` for a cached eigenbasis.
pub const RECONSTRUCTION_TOLERANCE: f64 = 1e-9;

const ZERO: Complex64 = Complex64 { re: 0.0, im: 0.0 };

/// How the initial state is prepared.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum InitialState {
    /// `|+>^n`.
    Plus,
    /// A single computational basis state.
    Basis(NodeSubset),
}

impl FromStr for InitialState {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        if s == "plus" {
            Ok(InitialState::Plus)
        } else {
            Ok(InitialState::Basis(s.parse()?))
        }
    }
}

impl fmt::Display for InitialState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            InitialState::Plus => f.write_str("plus"),
            InitialState::Basis(s) => write!(f, "{s}"),
        }
    }
}

/// The `2^n` amplitudes of an `n`-qubit pure state. Amplitude `x` belongs to
/// the basis state whose bit `q` is the value of qubit `q`.
#[derive(Debug, Clone, PartialEq)]
pub struct StateVector {
    num_qubits: usize,
    amplitudes: Vec<Complex64>,
}

impl StateVector {
    pub fn from_amplitudes(amplitudes: Vec<Complex64>) -> Result<Self> {
        let dim = amplitudes.len();
        if dim < 2 || !dim.is_power_of_two() {
            return Err(Error::InvalidParams(format!("state length {dim} is not 2^n with n >= 1")));
        }
        Ok(Self { num_qubits: dim.trailing_zeros() as usize, amplitudes })
    }

    pub fn num_qubits(&self) -> usize {
        self.num_qubits
    }

    pub fn dim(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    pub fn into_amplitudes(self) -> Vec<Complex64> {
        self.amplitudes
    }

    pub fn norm(&self) -> f64 {
        self.amplitudes.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt()
    }

    /// Rescales to unit norm. Never called implicitly by the evolution.
    pub fn renormalize(&mut self) {
        let n = self.norm();
        if n > 0.0 {
            self.amplitudes.iter_mut().for_each(|a| *a /= n);
        }
    }

    /// `|| self - other ||_2`.
    pub fn distance(&self, other: &StateVector) -> f64 {
        self.amplitudes
            .iter()
            .zip(&other.amplitudes)
            .map(|(a, b)| (a - b).norm_sqr())
            .sum::<f64>()
            .sqrt()
    }

    fn check_dim(&self, len: usize) -> Result<()> {
        if len != self.dim() {
            return Err(Error::DimensionMismatch { expected: self.dim(), got: len });
        }
        Ok(())
    }
}

/// Prepares `|+>^n` or a basis state.
pub fn init_state(num_qubits: usize, init: &InitialState) -> Result<StateVector> {
    if num_qubits == 0 || num_qubits > 30 {
        return Err(Error::InvalidParams(format!("unsupported qubit count {num_qubits}")));
    }
    let dim = 1usize << num_qubits;
    let amplitudes = match init {
        InitialState::Plus => vec![Complex64::new((dim as f64).sqrt().recip(), 0.0); dim],
        InitialState::Basis(s) => {
            if s.num_nodes() != num_qubits {
                return Err(Error::LengthMismatch { expected: num_qubits, got: s.num_nodes() });
            }
            let mut v = vec![ZERO; dim];
            v[s.index() as usize] = Complex64::new(1.0, 0.0);
            v
        }
    };
    Ok(StateVector { num_qubits, amplitudes })
}

/// The 2p circuit angles. Gammas lie in `[0, 2pi]`, betas in `[0, pi]`.
#[derive(Debug, Clone, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct AnsatzParams {
    pub gammas: Vec<f64>,
    pub betas: Vec<f64>,
}

impl AnsatzParams {
    pub const GAMMA_MAX: f64 = 2.0 * PI;
    pub const BETA_MAX: f64 = PI;

    pub fn new(gammas: Vec<f64>, betas: Vec<f64>) -> Result<Self> {
        if gammas.len() != betas.len() {
            return Err(Error::InvalidParams(format!(
                "{} gammas but {} betas",
                gammas.len(),
                betas.len()
            )));
        }
        let out_of_range = |v: &f64, hi: f64| !(0.0..=hi).contains(v);
        if gammas.iter().any(|g| out_of_range(g, Self::GAMMA_MAX))
            || betas.iter().any(|b| out_of_range(b, Self::BETA_MAX))
        {
            return Err(Error::InvalidParams("angle outside its domain".into()));
        }
        Ok(Self { gammas, betas })
    }

    pub fn zeros(p: usize) -> Self {
        Self { gammas: vec![0.0; p], betas: vec![0.0; p] }
    }

    /// Splits `[gamma_1..gamma_p, beta_1..beta_p]`.
    pub fn from_flat(flat: &[f64]) -> Result<Self> {
        if !flat.len().is_multiple_of(2) {
            return Err(Error::InvalidParams(format!("odd parameter count {}", flat.len())));
        }
        let p = flat.len() / 2;
        Self::new(flat[..p].to_vec(), flat[p..].to_vec())
    }

    pub fn to_flat(&self) -> Vec<f64> {
        self.gammas.iter().chain(&self.betas).copied().collect()
    }

    pub fn depth(&self) -> usize {
        self.gammas.len()
    }

    /// Appends zero-angle layers up to depth `p`; the circuit is unchanged.
    pub fn padded(&self, p: usize) -> Self {
        let mut out = self.clone();
        out.gammas.resize(p.max(self.depth()), 0.0);
        out.betas.resize(p.max(self.depth()), 0.0);
        out
    }

    /// Per-coordinate bounds in flat layout.
    pub fn bounds(p: usize) -> Vec<(f64, f64)> {
        let mut b = vec![(0.0, Self::GAMMA_MAX); p];
        b.extend(std::iter::repeat_n((0.0, Self::BETA_MAX), p));
        b
    }
}

/// Precomputed strategy for `exp(-i beta B)`.
#[derive(Debug, Clone)]
pub enum MixerEngine {
    /// Every term is a single-qubit X: the exponential factorises into
    /// independent rotations. `weights[q]` is the total X coefficient on qubit q.
    ExactProduct { num_qubits: usize, weights: Vec<f64> },
    /// `B = V diag(values) V^H`, cached for reuse across all betas.
    Eigen { num_qubits: usize, vectors: Mat<Complex64>, values: Vec<f64> },
}

impl MixerEngine {
    pub fn new(mixer: &PauliSum) -> Result<Self> {
        let n = mixer.num_qubits();
        if mixer.is_single_qubit_x() {
            let mut weights = vec![0.0; n];
            for t in mixer.terms() {
                let (&q, _) = t.factors.iter().next().expect("single-qubit term");
                weights[q] += t.coefficient;
            }
            return Ok(MixerEngine::ExactProduct { num_qubits: n, weights });
        }
        if n > MAX_DENSE_QUBITS {
            return Err(Error::TooLarge {
                what: "qubit count for mixer eigendecomposition",
                n,
                max: MAX_DENSE_QUBITS,
            });
        }
        let dense = mixer.to_dense_matrix()?;
        let eig = dense
            .self_adjoint_eigen(Side::Lower)
            .map_err(|e| Error::InvalidParams(format!("mixer eigendecomposition failed: {e:?}")))?;
        let values = (0..eig.S().dim()).map(|k| eig.S()[k].re).collect();
        let engine = MixerEngine::Eigen { num_qubits: n, vectors: eig.U().to_owned(), values };
        let err = engine.reconstruction_error(&dense);
        if !(err < RECONSTRUCTION_TOLERANCE) {
            return Err(Error::InvalidParams(format!(
                "mixer eigendecomposition reconstruction error {err:e}"
            )));
        }
        Ok(engine)
    }

    pub fn num_qubits(&self) -> usize {
        match self {
            MixerEngine::ExactProduct { num_qubits, .. } | MixerEngine::Eigen { num_qubits, .. } => {
                *num_qubits
            }
        }
    }

    pub fn is_exact_product(&self) -> bool {
        matches!(self, MixerEngine::ExactProduct { .. })
    }

    /// `max |V diag(L) V^H - dense|`; zero for the product kind.
    /// NaN entries propagate, so a failed decomposition never looks accurate.
    pub fn reconstruction_error(&self, dense: &Mat<Complex64>) -> f64 {
        match self {
            MixerEngine::ExactProduct { .. } => 0.0,
            MixerEngine::Eigen { vectors, values, .. } => {
                let scaled =
                    Mat::from_fn(vectors.nrows(), vectors.ncols(), |r, c| vectors[(r, c)] * values[c]);
                let rebuilt = &scaled * vectors.adjoint();
                let mut worst = 0.0f64;
                for r in 0..dense.nrows() {
                    for c in 0..dense.ncols() {
                        let d = (rebuilt[(r, c)] - dense[(r, c)]).norm();
                        if d.is_nan() {
                            return f64::NAN;
                        }
                        worst = worst.max(d);
                    }
                }
                worst
            }
        }
    }

    /// `exp(-i beta B) |state>` in place.
    pub fn apply(&self, state: &mut StateVector, beta: f64) -> Result<()> {
        if state.num_qubits != self.num_qubits() {
            return Err(Error::DimensionMismatch {
                expected: 1 << self.num_qubits(),
                got: state.dim(),
            });
        }
        match self {
            MixerEngine::ExactProduct { weights, .. } => {
                for (q, &w) in weights.iter().enumerate() {
                    rotate_x(&mut state.amplitudes, q, beta * w);
                }
            }
            MixerEngine::Eigen { vectors, values, .. } => {
                let dim = state.dim();
                let amps = &mut state.amplitudes;
                // coefficients in the eigenbasis: c_k = sum_r conj(V_rk) psi_r
                let mut coeffs = vec![ZERO; dim];
                for (k, ck) in coeffs.iter_mut().enumerate() {
                    let mut acc = ZERO;
                    for r in 0..dim {
                        acc += vectors[(r, k)].conj() * amps[r];
                    }
                    *ck = acc * Complex64::from_polar(1.0, -beta * values[k]);
                }
                for (r, a) in amps.iter_mut().enumerate() {
                    let mut acc = ZERO;
                    for (k, ck) in coeffs.iter().enumerate() {
                        acc += vectors[(r, k)] * ck;
                    }
                    *a = acc;
                }
            }
        }
        Ok(())
    }
}

/// `exp(-i theta X_q)` applied to qubit `q`.
fn rotate_x(amps: &mut [Complex64], q: usize, theta: f64) {
    let (s, c) = theta.sin_cos();
    let mis = Complex64::new(0.0, -s);
    let bit = 1usize << q;
    for x in 0..amps.len() {
        if x & bit == 0 {
            let a0 = amps[x];
            let a1 = amps[x | bit];
            amps[x] = a0 * c + a1 * mis;
            amps[x | bit] = a0 * mis + a1 * c;
        }
    }
}

pub fn build_mixer_engine(mixer: &PauliSum) -> Result<MixerEngine> {
    MixerEngine::new(mixer)
}

/// Multiplies amplitude `x` by `exp(-i gamma d_x)`.
pub fn apply_phase_separator(state: &mut StateVector, diag: &[f64], gamma: f64) -> Result<()> {
    state.check_dim(diag.len())?;
    for (a, &d) in state.amplitudes.iter_mut().zip(diag) {
        *a *= Complex64::from_polar(1.0, -gamma * d);
    }
    Ok(())
}

pub fn apply_mixer(state: &mut StateVector, engine: &MixerEngine, beta: f64) -> Result<()> {
    engine.apply(state, beta)
}

/// Runs all layers in order, phase separator first within each layer.
pub fn run_ansatz(
    cost_diag: &[f64],
    engine: &MixerEngine,
    params: &AnsatzParams,
    initial: &StateVector,
) -> Result<StateVector> {
    initial.check_dim(cost_diag.len())?;
    if params.gammas.len() != params.betas.len() {
        return Err(Error::InvalidParams("gamma/beta length mismatch".into()));
    }
    let mut state = initial.clone();
    for (&gamma, &beta) in params.gammas.iter().zip(&params.betas) {
        apply_phase_separator(&mut state, cost_diag, gamma)?;
        engine.apply(&mut state, beta)?;
    }
    Ok(state)
}

/// `sum_x |a_x|^2 d_x`.
pub fn expectation(state: &StateVector, cost_diag: &[f64]) -> Result<f64> {
    state.check_dim(cost_diag.len())?;
    Ok(state.amplitudes.iter().zip(cost_diag).map(|(a, d)| a.norm_sqr() * d).sum())
}

pub fn probabilities(state: &StateVector) -> Vec<f64> {
    state.amplitudes.iter().map(|a| a.norm_sqr()).collect()
}

/// Multinomial draw of `shots` measurement outcomes; `counts[x]` is the
/// number of times basis state `x` was observed.
pub fn sample_counts(probs: &[f64], shots: usize, seed: u64) -> Result<Vec<usize>> {
    let dist = WeightedIndex::new(probs)
        .map_err(|e| Error::InvalidParams(format!("cannot sample distribution: {e}")))?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut counts = vec![0; probs.len()];
    for _ in 0..shots {
        counts[dist.sample(&mut rng)] += 1;
    }
    Ok(counts)
}
