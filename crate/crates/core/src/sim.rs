//! Exact statevector simulation and dense-matrix oracles.

use ndarray::{linalg::kron, Array2};
use num_complex::Complex64;
use rand::distr::{weighted::WeightedIndex, Distribution as _};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::circuit::{Circuit, Gate, GateKind, Polarity};
use crate::error::{Error, Result};
use crate::MAX_QUBITS;

/// Width limit for [`circuit_unitary`].
pub const MAX_DENSE_QUBITS: usize = 12;

/// Tolerance on state norms and probability sums.
pub const NORM_TOL: f64 = 1e-12;

/// Entrywise tolerance for matrix comparisons.
pub const MATRIX_TOL: f64 = 1e-10;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);
const I: Complex64 = Complex64::new(0.0, 1.0);

/// 2x2 matrix of a gate kind, row-major.
pub fn gate_matrix(kind: GateKind) -> [[Complex64; 2]; 2] {
    match kind {
        GateKind::PauliX => [[ZERO, ONE], [ONE, ZERO]],
        GateKind::Hadamard => {
            let s = Complex64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
            [[s, s], [s, -s]]
        }
        GateKind::RotX(a) => {
            let (s, c) = (a / 2.0).sin_cos();
            [
                [Complex64::new(c, 0.0), Complex64::new(0.0, -s)],
                [Complex64::new(0.0, -s), Complex64::new(c, 0.0)],
            ]
        }
        GateKind::RotY(a) => {
            let (s, c) = (a / 2.0).sin_cos();
            [
                [Complex64::new(c, 0.0), Complex64::new(-s, 0.0)],
                [Complex64::new(s, 0.0), Complex64::new(c, 0.0)],
            ]
        }
        GateKind::RotZ(a) => [
            [Complex64::from_polar(1.0, -a / 2.0), ZERO],
            [ZERO, Complex64::from_polar(1.0, a / 2.0)],
        ],
        GateKind::Phase(a) => [[ONE, ZERO], [ZERO, Complex64::from_polar(1.0, a)]],
    }
}

/// Bit of qubit `q` in a basis index of an `n`-qubit register (q0 is the MSB).
#[inline]
pub fn qubit_mask(n_qubits: usize, q: usize) -> usize {
    1 << (n_qubits - 1 - q)
}

#[derive(Debug, Clone, PartialEq)]
pub struct StateVector {
    n_qubits: usize,
    amplitudes: Vec<Complex64>,
}

impl StateVector {
    /// `|0...0>`.
    pub fn zero(n_qubits: usize) -> Result<Self> {
        Self::basis(n_qubits, 0)
    }

    pub fn basis(n_qubits: usize, index: usize) -> Result<Self> {
        if n_qubits == 0 || n_qubits > MAX_QUBITS {
            return Err(Error::InvalidWidth(n_qubits));
        }
        let dim = 1usize << n_qubits;
        if index >= dim {
            return Err(Error::InvalidArgument(format!(
                "basis index {index} out of range for {n_qubits} qubits"
            )));
        }
        let mut amplitudes = vec![ZERO; dim];
        amplitudes[index] = ONE;
        Ok(StateVector {
            n_qubits,
            amplitudes,
        })
    }

    /// Wraps amplitudes, which must have power-of-two length and unit norm.
    pub fn from_amplitudes(amplitudes: Vec<Complex64>) -> Result<Self> {
        let dim = amplitudes.len();
        if dim < 2 || !dim.is_power_of_two() {
            return Err(Error::NotPowerOfTwo(dim));
        }
        let norm: f64 = amplitudes.iter().map(|a| a.norm_sqr()).sum();
        if (norm - 1.0).abs() > NORM_TOL {
            return Err(Error::InvalidArgument(format!(
                "state norm squared is {norm}, expected 1"
            )));
        }
        Ok(StateVector {
            n_qubits: dim.trailing_zeros() as usize,
            amplitudes,
        })
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amplitudes.iter().map(|a| a.norm_sqr()).sum()
    }

    /// Applies one gate in place, controls included.
    pub fn apply_gate(&mut self, gate: &Gate) {
        let n = self.n_qubits;
        let [[m00, m01], [m10, m11]] = gate_matrix(gate.kind);
        let tbit = qubit_mask(n, gate.target);
        let (mut cmask, mut cval) = (0usize, 0usize);
        for c in &gate.controls {
            let b = qubit_mask(n, c.qubit);
            cmask |= b;
            if c.polarity == Polarity::Closed {
                cval |= b;
            }
        }
        for i in 0..self.amplitudes.len() {
            if i & tbit != 0 || i & cmask != cval {
                continue;
            }
            let j = i | tbit;
            let (a0, a1) = (self.amplitudes[i], self.amplitudes[j]);
            self.amplitudes[i] = m00 * a0 + m01 * a1;
            self.amplitudes[j] = m10 * a0 + m11 * a1;
        }
    }
}

/// Runs `circuit` on `state`, gates in list order.
pub fn apply_circuit(state: &StateVector, circuit: &Circuit) -> Result<StateVector> {
    if state.n_qubits != circuit.n_qubits() {
        return Err(Error::WidthMismatch {
            expected: circuit.n_qubits(),
            actual: state.n_qubits,
        });
    }
    let mut out = state.clone();
    for g in circuit.gates() {
        out.apply_gate(g);
    }
    Ok(out)
}

/// Square complex matrix of dimension `2^n`.
#[derive(Debug, Clone, PartialEq)]
pub struct DenseUnitary {
    n_qubits: usize,
    matrix: Array2<Complex64>,
}

/// Result of matching a matrix to a reference up to a global phase.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhaseFit {
    /// Unit-modulus factor with `actual ~= phase * reference`.
    pub phase: Complex64,
    /// Largest entrywise deviation after applying `phase`.
    pub deviation: f64,
}

impl PhaseFit {
    pub fn within(&self, tol: f64) -> bool {
        self.deviation <= tol
    }
}

impl DenseUnitary {
    pub fn identity(n_qubits: usize) -> Self {
        let dim = 1 << n_qubits;
        DenseUnitary {
            n_qubits,
            matrix: Array2::eye(dim),
        }
    }

    pub fn from_array(matrix: Array2<Complex64>) -> Result<Self> {
        let (r, c) = matrix.dim();
        if r != c {
            return Err(Error::InvalidArgument(format!("matrix is {r}x{c}")));
        }
        if r < 1 || !r.is_power_of_two() {
            return Err(Error::NotPowerOfTwo(r));
        }
        Ok(DenseUnitary {
            n_qubits: r.trailing_zeros() as usize,
            matrix,
        })
    }

    /// Permutation matrix sending `|j>` to `|f(j)>`.
    pub fn permutation(n_qubits: usize, f: impl Fn(usize) -> usize) -> Self {
        let dim = 1 << n_qubits;
        let mut matrix = Array2::zeros((dim, dim));
        for j in 0..dim {
            matrix[[f(j), j]] = ONE;
        }
        DenseUnitary { n_qubits, matrix }
    }

    pub fn diagonal(entries: &[Complex64]) -> Result<Self> {
        let mut m = Array2::zeros((entries.len(), entries.len()));
        for (i, &e) in entries.iter().enumerate() {
            m[[i, i]] = e;
        }
        Self::from_array(m)
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn get(&self, row: usize, col: usize) -> Complex64 {
        self.matrix[[row, col]]
    }

    pub fn as_array(&self) -> &Array2<Complex64> {
        &self.matrix
    }

    pub fn matmul(&self, rhs: &DenseUnitary) -> DenseUnitary {
        DenseUnitary {
            n_qubits: self.n_qubits,
            matrix: self.matrix.dot(&rhs.matrix),
        }
    }

    /// `self ⊗ rhs`; `self` acts on the high-order qubits.
    pub fn kron(&self, rhs: &DenseUnitary) -> DenseUnitary {
        DenseUnitary {
            n_qubits: self.n_qubits + rhs.n_qubits,
            matrix: kron(&self.matrix, &rhs.matrix),
        }
    }

    pub fn scale(&self, s: Complex64) -> DenseUnitary {
        DenseUnitary {
            n_qubits: self.n_qubits,
            matrix: self.matrix.mapv(|z| z * s),
        }
    }

    pub fn add(&self, rhs: &DenseUnitary) -> DenseUnitary {
        DenseUnitary {
            n_qubits: self.n_qubits,
            matrix: &self.matrix + &rhs.matrix,
        }
    }

    pub fn adjoint(&self) -> DenseUnitary {
        DenseUnitary {
            n_qubits: self.n_qubits,
            matrix: self.matrix.t().mapv(|z| z.conj()),
        }
    }

    pub fn apply_to(&self, amplitudes: &[Complex64]) -> Vec<Complex64> {
        self.matrix
            .rows()
            .into_iter()
            .map(|row| row.iter().zip(amplitudes).map(|(a, b)| a * b).sum())
            .collect()
    }

    pub fn max_abs_diff(&self, other: &DenseUnitary) -> f64 {
        self.matrix
            .iter()
            .zip(other.matrix.iter())
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    /// Largest entry of `|U†U − I|`.
    pub fn unitarity_error(&self) -> f64 {
        self.adjoint()
            .matmul(self)
            .max_abs_diff(&DenseUnitary::identity(self.n_qubits))
    }

    pub fn is_unitary(&self, tol: f64) -> bool {
        self.unitarity_error() <= tol
    }

    /// Fits `self ~= e^{iφ} reference`, taking φ from the reference's
    /// largest-magnitude entry.
    pub fn phase_fit(&self, reference: &DenseUnitary) -> PhaseFit {
        let (idx, r) = reference
            .matrix
            .indexed_iter()
            .max_by(|a, b| a.1.norm().total_cmp(&b.1.norm()))
            .map(|(i, r)| (i, *r))
            .unwrap_or(((0, 0), ZERO));
        let ratio = self.matrix[idx] / r;
        let phase = if ratio.is_finite() && ratio.norm() > 0.0 {
            ratio / ratio.norm()
        } else {
            ONE
        };
        let deviation = self.max_abs_diff(&reference.scale(phase));
        PhaseFit { phase, deviation }
    }

    /// Restriction to the subspace where `qubit` has `value`. Rows and
    /// columns keep the order of the remaining qubits.
    pub fn block(&self, qubit: usize, value: bool) -> DenseUnitary {
        let n = self.n_qubits;
        let bit = qubit_mask(n, qubit);
        let idx: Vec<usize> = (0..self.dim())
            .filter(|i| (i & bit != 0) == value)
            .collect();
        let mut m = Array2::zeros((idx.len(), idx.len()));
        for (r, &i) in idx.iter().enumerate() {
            for (c, &j) in idx.iter().enumerate() {
                m[[r, c]] = self.matrix[[i, j]];
            }
        }
        DenseUnitary {
            n_qubits: n - 1,
            matrix: m,
        }
    }
}

/// Dense matrix of `circuit`; column `j` is the circuit applied to `|j>`.
pub fn circuit_unitary(circuit: &Circuit) -> Result<DenseUnitary> {
    let n = circuit.n_qubits();
    if n > MAX_DENSE_QUBITS {
        return Err(Error::OracleTooLarge(n));
    }
    let dim = 1 << n;
    let mut matrix = Array2::zeros((dim, dim));
    for j in 0..dim {
        let col = apply_circuit(&StateVector::basis(n, j)?, circuit)?;
        for (i, a) in col.amplitudes.iter().enumerate() {
            matrix[[i, j]] = *a;
        }
    }
    Ok(DenseUnitary {
        n_qubits: n,
        matrix,
    })
}

/// Unit vector `(|v> + coeff |w>)/√2` attached to a two-vertex tile.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TileVector {
    pub v: usize,
    pub w: usize,
    pub coeff: Complex64,
}

/// `2 Σ |t><t| − I` over a set of disjoint tiles covering the vertex set.
pub fn dense_tile_hamiltonian(n_qubits: usize, tiles: &[TileVector]) -> DenseUnitary {
    let dim = 1 << n_qubits;
    let mut m: Array2<Complex64> = Array2::eye(dim).mapv(|z: Complex64| -z);
    for t in tiles {
        // 2|t><t| = |v><v| + |w><w| + c|w><v| + c*|v><w|
        m[[t.v, t.v]] += ONE;
        m[[t.w, t.w]] += ONE;
        m[[t.w, t.v]] += t.coeff;
        m[[t.v, t.w]] += t.coeff.conj();
    }
    DenseUnitary {
        n_qubits,
        matrix: m,
    }
}

fn cycle_tiles(n_qubits: usize, offset: usize) -> Vec<TileVector> {
    let dim = 1usize << n_qubits;
    (0..dim / 2)
        .map(|x| TileVector {
            v: (2 * x + offset) % dim,
            w: (2 * x + offset + 1) % dim,
            coeff: ONE,
        })
        .collect()
}

/// Hamiltonian of the α tessellation `{2x, 2x+1}` on the `2^n`-cycle, `I ⊗ X`.
pub fn dense_h0(n_qubits: usize) -> DenseUnitary {
    dense_tile_hamiltonian(n_qubits, &cycle_tiles(n_qubits, 0))
}

/// Hamiltonian of the β tessellation `{2x+1, 2x+2}` on the `2^n`-cycle.
pub fn dense_h1(n_qubits: usize) -> DenseUnitary {
    dense_tile_hamiltonian(n_qubits, &cycle_tiles(n_qubits, 1))
}

/// `e^{-iθh} = cos θ I − i sin θ h` for an involution `h`.
pub fn dense_evolution(h: &DenseUnitary, theta: f64) -> Result<DenseUnitary> {
    let err = h
        .matmul(h)
        .max_abs_diff(&DenseUnitary::identity(h.n_qubits));
    if err > MATRIX_TOL {
        return Err(Error::NotInvolution(err));
    }
    let (s, c) = theta.sin_cos();
    Ok(DenseUnitary::identity(h.n_qubits)
        .scale(Complex64::new(c, 0.0))
        .add(&h.scale(-I * s)))
}

/// Outcome probabilities over `2^n` basis states.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Distribution(Vec<f64>);

impl Distribution {
    pub fn new(probs: Vec<f64>) -> Result<Self> {
        if probs.is_empty() {
            return Err(Error::InvalidDistribution("empty".into()));
        }
        if let Some(p) = probs.iter().find(|p| !p.is_finite() || **p < 0.0) {
            return Err(Error::InvalidDistribution(format!("entry {p}")));
        }
        let sum: f64 = probs.iter().sum();
        if (sum - 1.0).abs() > NORM_TOL {
            return Err(Error::InvalidDistribution(format!("sums to {sum}")));
        }
        Ok(Distribution(probs))
    }

    /// Normalised shot counts.
    pub fn from_counts(counts: &[u64]) -> Result<Self> {
        let total: u64 = counts.iter().sum();
        if total == 0 {
            return Err(Error::InvalidDistribution("no shots".into()));
        }
        Self::new(counts.iter().map(|&c| c as f64 / total as f64).collect())
    }

    pub fn point_mass(len: usize, at: usize) -> Result<Self> {
        let mut p = vec![0.0; len];
        *p.get_mut(at)
            .ok_or_else(|| Error::InvalidArgument(format!("outcome {at} out of range")))? = 1.0;
        Self::new(p)
    }

    pub fn uniform(len: usize) -> Result<Self> {
        Self::new(vec![1.0 / len as f64; len])
    }

    pub fn probs(&self) -> &[f64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Index of the largest probability (lowest index on ties).
    pub fn argmax(&self) -> usize {
        let mut best = 0;
        for (i, &p) in self.0.iter().enumerate() {
            if p > self.0[best] {
                best = i;
            }
        }
        best
    }

    pub fn support(&self, threshold: f64) -> Vec<usize> {
        (0..self.0.len())
            .filter(|&i| self.0[i] > threshold)
            .collect()
    }
}

/// `p_i = |a_i|^2`.
pub fn measure_distribution(state: &StateVector) -> Distribution {
    Distribution(state.amplitudes.iter().map(|a| a.norm_sqr()).collect())
}

/// Multinomial draw of `shots` outcomes, reproducible for a given seed.
pub fn sample(dist: &Distribution, shots: u32, seed: u64) -> Result<Vec<u64>> {
    if shots == 0 {
        return Err(Error::InvalidArgument("shots must be at least 1".into()));
    }
    let index =
        WeightedIndex::new(dist.probs()).map_err(|e| Error::InvalidDistribution(e.to_string()))?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut counts = vec![0u64; dist.len()];
    for _ in 0..shots {
        counts[index.sample(&mut rng)] += 1;
    }
    Ok(counts)
}
