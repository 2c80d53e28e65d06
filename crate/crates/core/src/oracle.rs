//! Brute-force references used to validate the simulator and to normalise
//! expectations.
//!
//! [`reference_evolve`] builds every layer unitary as a dense matrix through
//! Kronecker products and a Padé scaling-and-squaring exponential. It uses
//! none of the simulator's machinery (no eigendecomposition, no diagonal
//! shortcut), so agreement between the two is meaningful.

use num_complex::Complex64;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::graph::{Graph, NodeSubset, MAX_ENUMERATION_NODES};
use crate::hamiltonian::{Pauli, PauliSum};
use crate::problem::Problem;
use crate::simulator::{AnsatzParams, StateVector};

/// Largest qubit count accepted by [`reference_evolve`].
pub const MAX_REFERENCE_QUBITS: usize = 10;

/// Exact optimum of a problem instance.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OptimumReport {
    pub problem: Problem,
    pub optimal_value: f64,
    #[serde(serialize_with = "subsets_as_strings")]
    pub optimizers: Vec<NodeSubset>,
}

fn subsets_as_strings<S: Serializer>(v: &[NodeSubset], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(ToString::to_string))
}

/// Scans all `2^n` subsets, skipping infeasible ones for MIS.
pub fn brute_force_optimum(problem: Problem, g: &Graph) -> Result<OptimumReport> {
    let n = g.num_nodes();
    if n > MAX_ENUMERATION_NODES {
        return Err(Error::TooLarge { what: "node count for brute force", n, max: MAX_ENUMERATION_NODES });
    }
    let mut best = f64::NEG_INFINITY;
    let mut optimizers = Vec::new();
    for x in 0..1u64 << n {
        let s = NodeSubset::from_index(n, x);
        let Some(value) = problem.objective(g, &s)? else { continue };
        let tol = 1e-12 * value.abs().max(1.0);
        if optimizers.is_empty() || value > best + tol {
            best = value;
            optimizers.clear();
            optimizers.push(s);
        } else if (value - best).abs() <= tol {
            optimizers.push(s);
        }
    }
    Ok(OptimumReport { problem, optimal_value: best, optimizers })
}

/// Row-major square complex matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct DenseMatrix {
    n: usize,
    data: Vec<Complex64>,
}

impl DenseMatrix {
    pub fn zeros(n: usize) -> Self {
        Self { n, data: vec![Complex64::new(0.0, 0.0); n * n] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            m.data[i * n + i] = Complex64::new(1.0, 0.0);
        }
        m
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn get(&self, r: usize, c: usize) -> Complex64 {
        self.data[r * self.n + c]
    }

    fn pauli(p: Option<Pauli>) -> Self {
        let o = Complex64::new(0.0, 0.0);
        let one = Complex64::new(1.0, 0.0);
        let i = Complex64::new(0.0, 1.0);
        let data = match p {
            None => vec![one, o, o, one],
            Some(Pauli::X) => vec![o, one, one, o],
            Some(Pauli::Y) => vec![o, -i, i, o],
            Some(Pauli::Z) => vec![one, o, o, -one],
        };
        Self { n: 2, data }
    }

    pub fn kron(&self, other: &Self) -> Self {
        let n = self.n * other.n;
        let mut out = Self::zeros(n);
        for ar in 0..self.n {
            for ac in 0..self.n {
                let a = self.get(ar, ac);
                if a == Complex64::new(0.0, 0.0) {
                    continue;
                }
                for br in 0..other.n {
                    for bc in 0..other.n {
                        out.data[(ar * other.n + br) * n + ac * other.n + bc] = a * other.get(br, bc);
                    }
                }
            }
        }
        out
    }

    pub fn matmul(&self, other: &Self) -> Self {
        let n = self.n;
        let mut out = Self::zeros(n);
        for r in 0..n {
            for k in 0..n {
                let a = self.data[r * n + k];
                if a == Complex64::new(0.0, 0.0) {
                    continue;
                }
                let row = &other.data[k * n..(k + 1) * n];
                let dst = &mut out.data[r * n..(r + 1) * n];
                for (d, b) in dst.iter_mut().zip(row) {
                    *d += a * b;
                }
            }
        }
        out
    }

    pub fn matvec(&self, v: &[Complex64]) -> Vec<Complex64> {
        (0..self.n)
            .map(|r| self.data[r * self.n..(r + 1) * self.n].iter().zip(v).map(|(a, b)| a * b).sum())
            .collect()
    }

    pub fn scaled(&self, s: Complex64) -> Self {
        Self { n: self.n, data: self.data.iter().map(|a| a * s).collect() }
    }

    fn add_scaled(&mut self, other: &Self, s: Complex64) {
        for (a, b) in self.data.iter_mut().zip(&other.data) {
            *a += b * s;
        }
    }

    pub fn adjoint(&self) -> Self {
        let n = self.n;
        let mut out = Self::zeros(n);
        for r in 0..n {
            for c in 0..n {
                out.data[c * n + r] = self.data[r * n + c].conj();
            }
        }
        out
    }

    /// Maximum absolute column sum.
    pub fn one_norm(&self) -> f64 {
        (0..self.n)
            .map(|c| (0..self.n).map(|r| self.get(r, c).norm()).sum::<f64>())
            .fold(0.0, f64::max)
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        self.data.iter().zip(&other.data).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max)
    }

    /// Solves `self * X = rhs` by Gaussian elimination with partial pivoting.
    fn solve(&self, rhs: &Self) -> Self {
        let n = self.n;
        let mut a = self.data.clone();
        let mut b = rhs.data.clone();
        for col in 0..n {
            let pivot = (col..n)
                .max_by(|&i, &j| a[i * n + col].norm().total_cmp(&a[j * n + col].norm()))
                .expect("non-empty range");
            if pivot != col {
                for k in 0..n {
                    a.swap(col * n + k, pivot * n + k);
                    b.swap(col * n + k, pivot * n + k);
                }
            }
            let inv = a[col * n + col].inv();
            for row in col + 1..n {
                let f = a[row * n + col] * inv;
                if f == Complex64::new(0.0, 0.0) {
                    continue;
                }
                for k in col..n {
                    let v = a[col * n + k];
                    a[row * n + k] -= f * v;
                }
                for k in 0..n {
                    let v = b[col * n + k];
                    b[row * n + k] -= f * v;
                }
            }
        }
        for col in (0..n).rev() {
            let inv = a[col * n + col].inv();
            for k in 0..n {
                b[col * n + k] *= inv;
            }
            for row in 0..col {
                let f = a[row * n + col];
                if f == Complex64::new(0.0, 0.0) {
                    continue;
                }
                for k in 0..n {
                    let v = b[col * n + k];
                    b[row * n + k] -= f * v;
                }
            }
        }
        Self { n, data: b }
    }
}

/// Dense matrix of a Pauli sum built from 2x2 Kronecker products, qubit
/// `n - 1` as the leftmost factor.
pub fn kronecker_dense(h: &PauliSum) -> Result<DenseMatrix> {
    let n = h.num_qubits();
    if n > MAX_REFERENCE_QUBITS {
        return Err(Error::TooLarge { what: "qubit count for reference", n, max: MAX_REFERENCE_QUBITS });
    }
    let mut total = DenseMatrix::zeros(1 << n);
    for t in h.terms() {
        let mut m = DenseMatrix::identity(1);
        for q in (0..n).rev() {
            m = m.kron(&DenseMatrix::pauli(t.factors.get(&q).copied()));
        }
        total.add_scaled(&m, Complex64::new(t.coefficient, 0.0));
    }
    Ok(total)
}

const PADE_ORDER: usize = 6;
/// Scaling target for `||A / 2^s||_1`.
const SCALED_NORM: f64 = 0.5;

/// `exp(a)` by diagonal Padé approximation of fixed order with scaling and squaring.
pub fn expm(a: &DenseMatrix) -> DenseMatrix {
    let norm = a.one_norm();
    let squarings = if norm > SCALED_NORM { (norm / SCALED_NORM).log2().ceil() as i32 } else { 0 };
    let scaled = a.scaled(Complex64::new(0.5f64.powi(squarings), 0.0));

    // c_k = (2q - k)! q! / ((2q)! k! (q - k)!)
    let q = PADE_ORDER;
    let mut coeffs = vec![1.0; q + 1];
    for k in 1..=q {
        coeffs[k] = coeffs[k - 1] * (q + 1 - k) as f64 / (k * (2 * q + 1 - k)) as f64;
    }

    let dim = a.size();
    let mut num = DenseMatrix::identity(dim);
    let mut den = DenseMatrix::identity(dim);
    let mut power = DenseMatrix::identity(dim);
    for (k, &c) in coeffs.iter().enumerate().skip(1) {
        power = power.matmul(&scaled);
        num.add_scaled(&power, Complex64::new(c, 0.0));
        let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
        den.add_scaled(&power, Complex64::new(sign * c, 0.0));
    }
    let mut result = den.solve(&num);
    for _ in 0..squarings {
        result = result.matmul(&result);
    }
    result
}

/// `exp(-i angle H)` as a dense matrix.
pub fn reference_unitary(h: &PauliSum, angle: f64) -> Result<DenseMatrix> {
    let dense = kronecker_dense(h)?;
    Ok(expm(&dense.scaled(Complex64::new(0.0, -angle))))
}

/// Evolves `initial` through the full ansatz using dense layer unitaries.
pub fn reference_evolve(
    cost: &PauliSum,
    mixer: &PauliSum,
    params: &AnsatzParams,
    initial: &StateVector,
) -> Result<StateVector> {
    let n = cost.num_qubits();
    if n > MAX_REFERENCE_QUBITS {
        return Err(Error::TooLarge { what: "qubit count for reference", n, max: MAX_REFERENCE_QUBITS });
    }
    if mixer.num_qubits() != n || initial.num_qubits() != n {
        return Err(Error::DimensionMismatch { expected: 1 << n, got: initial.dim() });
    }
    if params.gammas.len() != params.betas.len() {
        return Err(Error::InvalidParams("gamma/beta length mismatch".into()));
    }
    let cost_dense = kronecker_dense(cost)?;
    let mixer_dense = kronecker_dense(mixer)?;
    let mut amps = initial.amplitudes().to_vec();
    for (&gamma, &beta) in params.gammas.iter().zip(&params.betas) {
        let uc = expm(&cost_dense.scaled(Complex64::new(0.0, -gamma)));
        let ub = expm(&mixer_dense.scaled(Complex64::new(0.0, -beta)));
        amps = ub.matmul(&uc).matvec(&amps);
    }
    StateVector::from_amplitudes(amps)
}
