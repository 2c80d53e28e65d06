//! Pauli-string sums and the cost/mixer Hamiltonians for Max-Cut and MIS.

use std::collections::BTreeMap;
use std::fmt;

use faer::Mat;
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::graph::Graph;

/// Largest qubit count for which a dense matrix is built.
pub const MAX_DENSE_QUBITS: usize = 14;

/// Coefficients below this magnitude are dropped during simplification.
const DROP_TOLERANCE: f64 = 1e-15;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Pauli {
    X,
    Y,
    Z,
}

impl fmt::Display for Pauli {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Pauli::X => "X",
            Pauli::Y => "Y",
            Pauli::Z => "Z",
        })
    }
}

/// `coefficient * P_{q1} P_{q2} ...`, identity on every qubit not listed.
#[derive(Debug, Clone, PartialEq)]
pub struct PauliString {
    pub coefficient: f64,
    pub factors: BTreeMap<usize, Pauli>,
}

impl PauliString {
    pub fn identity(coefficient: f64) -> Self {
        Self { coefficient, factors: BTreeMap::new() }
    }

    pub fn new(coefficient: f64, factors: impl IntoIterator<Item = (usize, Pauli)>) -> Self {
        Self { coefficient, factors: factors.into_iter().collect() }
    }

    pub fn is_identity(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn is_diagonal(&self) -> bool {
        self.factors.values().all(|p| *p == Pauli::Z)
    }

    /// Bit masks `(flip, phase_z, y)`: qubits touched by X or Y, qubits
    /// touched by Z or Y, and qubits touched by Y.
    fn masks(&self) -> (usize, usize, usize) {
        let mut flip = 0;
        let mut phase = 0;
        let mut y = 0;
        for (&q, &p) in &self.factors {
            match p {
                Pauli::X => flip |= 1 << q,
                Pauli::Z => phase |= 1 << q,
                Pauli::Y => {
                    flip |= 1 << q;
                    phase |= 1 << q;
                    y |= 1 << q;
                }
            }
        }
        (flip, phase, y)
    }

    /// Image of basis state `x`: `(target index, amplitude)`.
    fn act_on_basis(&self, x: usize) -> (usize, Complex64) {
        let (flip, phase, y) = self.masks();
        // Y = i X Z, so each Y contributes a factor i; Z phase is taken on the input bit.
        let sign = if (x & phase).count_ones() % 2 == 1 { -1.0 } else { 1.0 };
        let i_pow = (y.count_ones() % 4) as u8;
        let unit = match i_pow {
            0 => Complex64::new(1.0, 0.0),
            1 => Complex64::new(0.0, 1.0),
            2 => Complex64::new(-1.0, 0.0),
            _ => Complex64::new(0.0, -1.0),
        };
        (x ^ flip, unit * (sign * self.coefficient))
    }
}

impl fmt::Display for PauliString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} *", self.coefficient)?;
        if self.factors.is_empty() {
            return f.write_str(" I");
        }
        for (q, p) in &self.factors {
            write!(f, " {p}{q}")?;
        }
        Ok(())
    }
}

/// A real-weighted sum of Pauli strings on `num_qubits` qubits.
#[derive(Debug, Clone, PartialEq)]
pub struct PauliSum {
    num_qubits: usize,
    terms: Vec<PauliString>,
}

impl PauliSum {
    /// Collects terms without merging. Fails if a term touches a qubit
    /// outside `0..num_qubits`.
    pub fn from_terms(num_qubits: usize, terms: Vec<PauliString>) -> Result<Self> {
        if num_qubits == 0 {
            return Err(Error::InvalidParams("pauli sum needs at least one qubit".into()));
        }
        for t in &terms {
            if let Some((&q, _)) = t.factors.iter().next_back() {
                if q >= num_qubits {
                    return Err(Error::DimensionMismatch { expected: num_qubits, got: q + 1 });
                }
            }
        }
        Ok(Self { num_qubits, terms })
    }

    pub fn num_qubits(&self) -> usize {
        self.num_qubits
    }

    pub fn terms(&self) -> &[PauliString] {
        &self.terms
    }

    pub fn dim(&self) -> usize {
        1 << self.num_qubits
    }

    /// Merges terms with identical factor maps and drops vanishing
    /// coefficients. Output terms are ordered by factor map.
    pub fn simplified(&self) -> Self {
        let mut merged: BTreeMap<Vec<(usize, Pauli)>, f64> = BTreeMap::new();
        for t in &self.terms {
            let key: Vec<_> = t.factors.iter().map(|(&q, &p)| (q, p)).collect();
            *merged.entry(key).or_insert(0.0) += t.coefficient;
        }
        let terms = merged
            .into_iter()
            .filter(|(_, c)| c.abs() >= DROP_TOLERANCE)
            .map(|(k, c)| PauliString::new(c, k))
            .collect();
        Self { num_qubits: self.num_qubits, terms }
    }

    pub fn is_diagonal(&self) -> bool {
        self.terms.iter().all(PauliString::is_diagonal)
    }

    /// True iff every term is a single-qubit X.
    pub fn is_single_qubit_x(&self) -> bool {
        self.terms
            .iter()
            .all(|t| t.factors.len() == 1 && t.factors.values().all(|p| *p == Pauli::X))
    }

    /// Eigenvalue on every basis state, indexed by the basis integer.
    pub fn diagonal_values(&self) -> Result<Vec<f64>> {
        if let Some(t) = self.terms.iter().find(|t| !t.is_diagonal()) {
            return Err(Error::NotDiagonal(t.to_string()));
        }
        let masks: Vec<(usize, f64)> =
            self.terms.iter().map(|t| (t.masks().1, t.coefficient)).collect();
        Ok((0..self.dim())
            .map(|x| {
                masks
                    .iter()
                    .map(|&(m, c)| if (x & m).count_ones() % 2 == 1 { -c } else { c })
                    .sum()
            })
            .collect())
    }

    /// `H |state>` computed term by term without forming a matrix.
    pub fn apply(&self, state: &[Complex64]) -> Result<Vec<Complex64>> {
        if state.len() != self.dim() {
            return Err(Error::DimensionMismatch { expected: self.dim(), got: state.len() });
        }
        let mut out = vec![Complex64::new(0.0, 0.0); state.len()];
        for t in &self.terms {
            for (x, amp) in state.iter().enumerate() {
                if amp.norm_sqr() == 0.0 {
                    continue;
                }
                let (y, factor) = t.act_on_basis(x);
                out[y] += factor * amp;
            }
        }
        Ok(out)
    }

    /// Dense `2^n x 2^n` matrix; column `x` is the image of basis state `x`.
    pub fn to_dense_matrix(&self) -> Result<Mat<Complex64>> {
        if self.num_qubits > MAX_DENSE_QUBITS {
            return Err(Error::TooLarge {
                what: "qubit count for dense matrix",
                n: self.num_qubits,
                max: MAX_DENSE_QUBITS,
            });
        }
        let dim = self.dim();
        let mut m = Mat::<Complex64>::zeros(dim, dim);
        for t in &self.terms {
            for x in 0..dim {
                let (y, factor) = t.act_on_basis(x);
                m[(y, x)] += factor;
            }
        }
        Ok(m)
    }
}

impl fmt::Display for PauliSum {
    /// One term per line, qubits ascending.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, t) in self.terms.iter().enumerate() {
            if k > 0 {
                writeln!(f)?;
            }
            write!(f, "{t}")?;
        }
        Ok(())
    }
}

/// `1/2 * sum_{(i,j)} w_ij (I - Z_i Z_j)`; eigenvalue on `x` is the cut weight.
pub fn maxcut_cost(g: &Graph) -> PauliSum {
    let total: f64 = g.weighted_edges().map(|(_, w)| w).sum();
    let mut terms = vec![PauliString::identity(0.5 * total)];
    for ((i, j), w) in g.weighted_edges() {
        terms.push(PauliString::new(-0.5 * w, [(i - 1, Pauli::Z), (j - 1, Pauli::Z)]));
    }
    PauliSum { num_qubits: g.num_nodes(), terms }
}

/// `sum_i X_i`.
pub fn maxcut_mixer(g: &Graph) -> PauliSum {
    let terms = (0..g.num_nodes()).map(|q| PauliString::new(1.0, [(q, Pauli::X)])).collect();
    PauliSum { num_qubits: g.num_nodes(), terms }
}

/// `1/2 * sum_u w_u (I - Z_u)`; eigenvalue on `x` is the weight of the subset `x`.
pub fn mis_cost(g: &Graph) -> PauliSum {
    let total: f64 = g.node_weights().iter().sum();
    let mut terms = vec![PauliString::identity(0.5 * total)];
    for (q, &w) in g.node_weights().iter().enumerate() {
        terms.push(PauliString::new(-0.5 * w, [(q, Pauli::Z)]));
    }
    PauliSum { num_qubits: g.num_nodes(), terms }.simplified()
}

/// The 2^l expanded strings of `B_u = 2^-l X_u prod_{v in N(u)} (I + Z_v)`
/// for the 1-indexed node `u` of degree `l`.
pub fn mis_mixer_node(g: &Graph, u: usize) -> Vec<PauliString> {
    let nbrs = g.neighbors(u);
    let l = nbrs.len();
    let coefficient = 1.0 / (1u64 << l) as f64;
    (0..1usize << l)
        .map(|subset| {
            let mut s = PauliString::new(coefficient, [(u - 1, Pauli::X)]);
            for (k, &v) in nbrs.iter().enumerate() {
                if (subset >> k) & 1 == 1 {
                    s.factors.insert(v - 1, Pauli::Z);
                }
            }
            s
        })
        .collect()
}

/// `sum_u B_u` before merging identical strings.
pub fn mis_mixer_unsimplified(g: &Graph) -> PauliSum {
    let terms = (1..=g.num_nodes()).flat_map(|u| mis_mixer_node(g, u)).collect();
    PauliSum { num_qubits: g.num_nodes(), terms }
}

/// Feasibility-preserving MIS mixer `sum_u B_u`, simplified. On a basis
/// state, `B_u` flips bit `u` iff every neighbor of `u` is unoccupied and
/// annihilates the state otherwise.
pub fn mis_mixer(g: &Graph) -> PauliSum {
    mis_mixer_unsimplified(g).simplified()
}
