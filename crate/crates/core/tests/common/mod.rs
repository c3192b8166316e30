//! Dense references assembled from matrix definitions, plus small helpers
//! shared by the integration suites. Nothing here goes through the circuit
//! builders.
#![allow(dead_code)]

use ndarray::Array2;
use num_complex::Complex64;
use sqwalk::sim::{dense_evolution, dense_h0, dense_h1};
use sqwalk::{Circuit, DenseUnitary, Gate, GateKind};

pub const TOL: f64 = 1e-10;

pub fn c(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

/// `Σ |x+1><x|` on `2^n` vertices.
pub fn dense_shift(n: usize) -> DenseUnitary {
    DenseUnitary::permutation(n, |x| (x + 1) % (1 << n))
}

/// Controlled-`u` reference built entry by entry from a 2x2 matrix.
pub fn controlled_dense(
    n: usize,
    controls: &[usize],
    target: usize,
    u: [[Complex64; 2]; 2],
) -> DenseUnitary {
    let dim = 1usize << n;
    let bit = |i: usize, q: usize| (i >> (n - 1 - q)) & 1;
    let mut m = ndarray::Array2::zeros((dim, dim));
    for col in 0..dim {
        if controls.iter().all(|&q| bit(col, q) == 1) {
            let tb = bit(col, target);
            for (out, urow) in u.iter().enumerate() {
                let row = (col & !(1 << (n - 1 - target))) | (out << (n - 1 - target));
                m[[row, col]] = urow[tb];
            }
        } else {
            m[[col, col]] = c(1.0);
        }
    }
    DenseUnitary::from_array(m).unwrap()
}

pub fn rx_matrix(t: f64) -> [[Complex64; 2]; 2] {
    let (s, co) = (t / 2.0).sin_cos();
    let mi = Complex64::new(0.0, -s);
    [[c(co), mi], [mi, c(co)]]
}

pub fn rz_matrix(t: f64) -> [[Complex64; 2]; 2] {
    let z = c(0.0);
    [
        [Complex64::from_polar(1.0, -t / 2.0), z],
        [z, Complex64::from_polar(1.0, t / 2.0)],
    ]
}

/// Single-qubit projector `|b><b|`.
pub fn projector(b: usize) -> DenseUnitary {
    let mut m = Array2::zeros((2, 2));
    m[[b, b]] = c(1.0);
    DenseUnitary::from_array(m).unwrap()
}

/// `cos θ I − i sin θ H0`, `cos θ I − i sin θ H1` for the `2^n`-cycle.
pub fn dense_u0_u1(n: usize, theta: f64) -> (DenseUnitary, DenseUnitary) {
    (
        dense_evolution(&dense_h0(n), theta).unwrap(),
        dense_evolution(&dense_h1(n), theta).unwrap(),
    )
}

pub fn dense_cycle_step(n: usize, theta: f64) -> DenseUnitary {
    let (u0, u1) = dense_u0_u1(n, theta);
    u1.matmul(&u0)
}

/// Four torus operators `[U00, U01, U10, U11]` from their block definitions.
pub fn dense_torus_layers(n: usize, theta: f64) -> [DenseUnitary; 4] {
    let h = n / 2;
    let (u0, u1) = dense_u0_u1(h, theta);
    let id = DenseUnitary::identity(h - 1);
    let p0 = id.kron(&projector(0));
    let p1 = id.kron(&projector(1));
    let u00 = p0.kron(&u0).add(&p1.kron(&u1));
    let u10 = p0.kron(&u1).add(&p1.kron(&u0));
    let u01 = u0.kron(&p0).add(&u1.kron(&p1));
    let u11 = u1.kron(&p0).add(&u0.kron(&p1));
    [u00, u01, u10, u11]
}

pub fn dense_torus_step(n: usize, theta: f64) -> DenseUnitary {
    let [u00, u01, u10, u11] = dense_torus_layers(n, theta);
    u11.matmul(&u10).matmul(&u01).matmul(&u00)
}

/// Interaction diagonals: every `|x>|x>` (full) or only `|x0>|x0>`.
pub fn dense_interaction(n_per: usize, phi: f64, marked: Option<usize>) -> DenseUnitary {
    let side = 1usize << n_per;
    let diag: Vec<Complex64> = (0..side * side)
        .map(|i| {
            let (x1, x2) = (i / side, i % side);
            let hit = match marked {
                None => x1 == x2,
                Some(m) => x1 == m && x2 == m,
            };
            if hit {
                Complex64::from_polar(1.0, phi)
            } else {
                c(1.0)
            }
        })
        .collect();
    DenseUnitary::diagonal(&diag).unwrap()
}

/// Cycle distance between two vertices of the `dim`-cycle.
pub fn cycle_distance(v: usize, w: usize, dim: usize) -> usize {
    let d = v.abs_diff(w);
    d.min(dim - d)
}

/// Success probability after `k` Grover rounds on `n_items`, by iterating the
/// two-amplitude recursion (marked amplitude, common unmarked amplitude).
pub fn grover_recursion(n_items: usize, k: usize) -> f64 {
    let nf = n_items as f64;
    let (mut a, mut b) = (1.0 / nf.sqrt(), 1.0 / nf.sqrt());
    for _ in 0..k {
        a = -a;
        let mean = (a + (nf - 1.0) * b) / nf;
        a = 2.0 * mean - a;
        b = 2.0 * mean - b;
    }
    a * a
}

/// `exp(m)` by scaling and squaring with a truncated Taylor series.
pub fn expm(m: &Array2<Complex64>) -> Array2<Complex64> {
    let norm: f64 = m.iter().map(|z| z.norm()).sum();
    let mut squarings = 0;
    let mut scale = 1.0;
    while norm * scale > 0.5 {
        scale /= 2.0;
        squarings += 1;
    }
    let a = m.mapv(|z| z * scale);
    let dim = m.nrows();
    let mut result = Array2::<Complex64>::eye(dim);
    let mut term = Array2::<Complex64>::eye(dim);
    for k in 1..30 {
        term = term.dot(&a).mapv(|z| z / k as f64);
        result += &term;
    }
    for _ in 0..squarings {
        result = result.dot(&result);
    }
    result
}

/// Greedy layering computed by explicit layer lists: each gate goes to the
/// first layer after the last layer that touches any of its qubits.
pub fn reference_depth(circuit: &Circuit) -> usize {
    let mut layers: Vec<Vec<usize>> = Vec::new();
    for g in circuit.gates() {
        let qs: Vec<usize> = g.qubits().collect();
        let last_busy = layers
            .iter()
            .rposition(|layer| layer.iter().any(|q| qs.contains(q)));
        let slot = last_busy.map_or(0, |i| i + 1);
        if slot == layers.len() {
            layers.push(Vec::new());
        }
        layers[slot].extend(qs);
    }
    layers.len()
}

/// Minimal reader for the QASM subset the emitter writes.
pub fn parse_qasm(text: &str) -> Circuit {
    let mut circuit: Option<Circuit> = None;
    for line in text.lines().map(str::trim).filter(|l| !l.is_empty()) {
        let line = line.strip_suffix(';').expect("statement ends with ;");
        if line.starts_with("OPENQASM") || line.starts_with("include") {
            continue;
        }
        if let Some(rest) = line.strip_prefix("qreg q[") {
            let n: usize = rest.trim_end_matches(']').parse().unwrap();
            circuit = Some(Circuit::new(n).unwrap());
            continue;
        }
        let (head, args) = line.split_once(' ').expect("gate and operands");
        let qubits: Vec<usize> = args
            .split(',')
            .map(|a| {
                a.trim()
                    .trim_start_matches("q[")
                    .trim_end_matches(']')
                    .parse()
                    .unwrap()
            })
            .collect();
        let (name, angle) = match head.split_once('(') {
            Some((name, rest)) => (
                name,
                Some(rest.trim_end_matches(')').parse::<f64>().unwrap()),
            ),
            None => (head, None),
        };
        let gate = match (name, angle) {
            ("x", None) => Gate::new(GateKind::PauliX, qubits[0]),
            ("h", None) => Gate::new(GateKind::Hadamard, qubits[0]),
            ("cx", None) => Gate::cx(qubits[0], qubits[1]),
            ("rx", Some(a)) => Gate::new(GateKind::RotX(a), qubits[0]),
            ("ry", Some(a)) => Gate::new(GateKind::RotY(a), qubits[0]),
            ("rz", Some(a)) => Gate::new(GateKind::RotZ(a), qubits[0]),
            ("u1", Some(a)) => Gate::new(GateKind::Phase(a), qubits[0]),
            other => panic!("unexpected statement {other:?}"),
        };
        circuit.as_mut().expect("qreg first").append(gate).unwrap();
    }
    circuit.expect("qreg declared")
}
