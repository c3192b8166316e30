//! Decompositions of multi-controlled gates into CNOT + single-qubit gates,
//! and the cyclic-shift permutation circuits built from them.
//!
//! The cascades here use no ancillas, so their CNOT cost grows as `2^m` in
//! the number of controls `m`. That is fine for the register sizes a walk on
//! a few dozen vertices needs.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::circuit::{Circuit, Gate, GateKind, Polarity};
use crate::error::{Error, Result};
use crate::sim::{circuit_unitary, MATRIX_TOL};

/// Which form of the shift permutation (and, downstream, which tile vectors)
/// a builder uses.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Variant {
    /// Exact increment built from Toffoli-type gates.
    #[default]
    Standard,
    /// Toffolis with two or more controls relaxed to controlled `R_x(π)`.
    Alternative,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LoweringOptions {
    /// `Alternative` relaxes every X with two or more controls to `R_x(π)`
    /// before lowering.
    pub variant: Variant,
    /// Check the lowered circuit against the dense matrix of its input.
    pub verify: bool,
    pub phase_tolerance: f64,
}

impl Default for LoweringOptions {
    fn default() -> Self {
        LoweringOptions {
            variant: Variant::Standard,
            verify: false,
            phase_tolerance: MATRIX_TOL,
        }
    }
}

impl LoweringOptions {
    pub fn verified() -> Self {
        LoweringOptions {
            verify: true,
            ..Self::default()
        }
    }
}

/// Position of the lowest set bit of `k`, computed as `log2(k - (k & (k-1)))`.
pub fn a_of_k(k: u64) -> Result<usize> {
    if k == 0 {
        return Err(Error::InvalidArgument("a(k) needs k >= 1".into()));
    }
    let lowest = k - (k & (k - 1));
    Ok(lowest.trailing_zeros() as usize)
}

fn check_operands(controls: &[usize], target: usize) -> Result<()> {
    let width = controls.iter().copied().chain([target]).max().unwrap_or(0) + 1;
    Gate::controlled(GateKind::PauliX, controls, target).validate(width)
}

/// Multi-controlled `R_z(θ)` as an alternating CNOT / `u1(±θ/2^m)` chain.
///
/// The CNOT controls after the first one follow `a(1), a(2), ...`, so each
/// control toggles the target parity an even number of times and the chain
/// costs exactly `2^m` CNOTs.
pub fn mcrz(theta: f64, controls: &[usize], target: usize) -> Result<Vec<Gate>> {
    let m = controls.len();
    if m == 0 {
        return Err(Error::EmptyControls);
    }
    check_operands(controls, target)?;
    if m >= 63 {
        return Err(Error::InvalidArgument(format!("{m} controls")));
    }
    let step = -theta / (1u64 << m) as f64;
    let mut gates = Vec::with_capacity(2 << m);
    gates.push(Gate::cx(controls[m - 1], target));
    gates.push(Gate::new(GateKind::Phase(step), target));
    for i in 1..(1u64 << m) {
        gates.push(Gate::cx(controls[a_of_k(i)?], target));
        let sign = if i % 2 == 0 { 1.0 } else { -1.0 };
        gates.push(Gate::new(GateKind::Phase(sign * step), target));
    }
    Ok(gates)
}

/// Multi-controlled `u1(φ)`: a `u1` on the first qubit followed by `mcrz`
/// stages of growing width, angles halving towards the first qubit.
pub fn mcphase(phi: f64, controls: &[usize], target: usize) -> Result<Vec<Gate>> {
    check_operands(controls, target)?;
    let line: Vec<usize> = controls.iter().copied().chain([target]).collect();
    let n = line.len() as i32;
    let mut gates = vec![Gate::new(GateKind::Phase(phi / 2f64.powi(n - 1)), line[0])];
    for i in 2..=n {
        let i_us = i as usize;
        gates.extend(mcrz(
            phi / 2f64.powi(n - i),
            &line[..i_us - 1],
            line[i_us - 1],
        )?);
    }
    Ok(gates)
}

/// Multi-controlled Z; with no controls this is a single `u1(π)`.
pub fn mcz(controls: &[usize], target: usize) -> Result<Vec<Gate>> {
    mcphase(PI, controls, target)
}

/// Multi-controlled X as `H · C(Z) · H` on the target.
pub fn mct(controls: &[usize], target: usize) -> Result<Vec<Gate>> {
    Ok(conjugate_h(target, mcz(controls, target)?))
}

/// Multi-controlled `R_x(θ)` as `H · C(R_z(θ)) · H` on the target.
pub fn mcrx(theta: f64, controls: &[usize], target: usize) -> Result<Vec<Gate>> {
    Ok(conjugate_h(target, mcrz(theta, controls, target)?))
}

/// Multi-controlled `R_y(θ)` via `R_y = S R_x S†`.
pub fn mcry(theta: f64, controls: &[usize], target: usize) -> Result<Vec<Gate>> {
    let mut gates = vec![Gate::new(GateKind::Phase(-PI / 2.0), target)];
    gates.extend(mcrx(theta, controls, target)?);
    gates.push(Gate::new(GateKind::Phase(PI / 2.0), target));
    Ok(gates)
}

fn conjugate_h(target: usize, inner: Vec<Gate>) -> Vec<Gate> {
    let h = Gate::new(GateKind::Hadamard, target);
    let mut gates = Vec::with_capacity(inner.len() + 2);
    gates.push(h.clone());
    gates.extend(inner);
    gates.push(h);
    gates
}

/// `|q> -> |q+1 mod 2^n>` on the register `qubits` (first entry is the MSB).
fn increment_on(circuit: &mut Circuit, qubits: &[usize]) -> Result<()> {
    let n = qubits.len();
    for j in 0..n - 1 {
        circuit.mcx(&qubits[j + 1..], qubits[j])?;
    }
    circuit.x(qubits[n - 1])?;
    Ok(())
}

/// Cyclic shift `|q> -> |q+1 mod 2^n>`.
///
/// Gate order: `C_{1..n-1}(X_0)` first, then shorter carries, then `X_{n-1}`.
pub fn increment_perm(n: usize) -> Result<Circuit> {
    let mut c = Circuit::new(n)?;
    let qubits: Vec<usize> = (0..n).collect();
    increment_on(&mut c, &qubits)?;
    Ok(c)
}

/// `|q> -> |q-1 mod 2^n>`.
pub fn decrement_perm(n: usize) -> Result<Circuit> {
    Ok(increment_perm(n)?.inverse())
}

/// Replaces every X gate with two or more controls by a controlled `R_x(π)`
/// on the same qubits.
pub fn relax_toffolis(circuit: &Circuit) -> Circuit {
    let mut out = Circuit::new(circuit.n_qubits()).expect("width already validated");
    for g in circuit.gates() {
        let mut g = g.clone();
        if g.kind == GateKind::PauliX && g.controls.len() >= 2 {
            g.kind = GateKind::RotX(PI);
        }
        out.append(g).expect("gate already validated");
    }
    out
}

/// Reduced-CNOT replacement for the increment: the same gate layout with
/// multi-controlled `R_x(π)` in place of the Toffolis. It shifts the walker
/// only up to per-vertex phases, which changes the tile vectors of the walk.
pub fn alt_increment(n: usize) -> Result<Circuit> {
    if n < 2 {
        return Err(Error::InvalidArgument(
            "alternative increment needs n >= 2".into(),
        ));
    }
    Ok(relax_toffolis(&increment_perm(n)?))
}

/// [`alt_increment`] on `targets` with `control` added to every gate, inside
/// a `width`-qubit register.
pub fn controlled_alt_increment_on(
    width: usize,
    control: usize,
    targets: &[usize],
) -> Result<Circuit> {
    if targets.len() < 2 {
        return Err(Error::InvalidArgument(
            "alternative increment needs n >= 2".into(),
        ));
    }
    if targets.contains(&control) {
        return Err(Error::InvalidArgument(format!(
            "control qubit {control} overlaps the target register"
        )));
    }
    let inner = alt_increment(targets.len())?;
    let mut c = Circuit::new(width)?;
    c.extend_mapped(&inner, targets)?;
    c.controlled_by(control)
}

/// Controlled [`alt_increment`] over `n + 1` qubits; the targets are every
/// qubit except `control`, in order.
pub fn controlled_alt_increment(n: usize, control: usize) -> Result<Circuit> {
    if control > n {
        return Err(Error::QubitOutOfRange {
            qubit: control,
            n_qubits: n + 1,
        });
    }
    let targets: Vec<usize> = (0..=n).filter(|&q| q != control).collect();
    controlled_alt_increment_on(n + 1, control, &targets)
}

/// Basis-gate sequence for one IR gate.
pub fn lower_gate(gate: &Gate) -> Result<Vec<Gate>> {
    if gate.is_basis() {
        return Ok(vec![gate.clone()]);
    }
    let open: Vec<usize> = gate
        .controls
        .iter()
        .filter(|c| c.polarity == Polarity::Open)
        .map(|c| c.qubit)
        .collect();
    let controls: Vec<usize> = gate.control_qubits().collect();
    let t = gate.target;
    let body = match gate.kind {
        GateKind::PauliX if controls.len() == 1 => vec![Gate::cx(controls[0], t)],
        GateKind::PauliX => mct(&controls, t)?,
        GateKind::Phase(a) => mcphase(a, &controls, t)?,
        GateKind::RotZ(a) => mcrz(a, &controls, t)?,
        GateKind::RotX(a) => mcrx(a, &controls, t)?,
        GateKind::RotY(a) => mcry(a, &controls, t)?,
        GateKind::Hadamard => return Err(Error::Unsupported(gate.to_string())),
    };
    let flips = open.iter().map(|&q| Gate::new(GateKind::PauliX, q));
    Ok(flips.clone().chain(body).chain(flips).collect())
}

/// Rewrites `circuit` over the basis `{x, h, rx, ry, rz, u1, cx}`.
pub fn lower(circuit: &Circuit, options: &LoweringOptions) -> Result<Circuit> {
    if options.phase_tolerance.is_nan() || options.phase_tolerance <= 0.0 {
        return Err(Error::InvalidArgument(
            "phase tolerance must be positive".into(),
        ));
    }
    let source = match options.variant {
        Variant::Standard => circuit.clone(),
        Variant::Alternative => relax_toffolis(circuit),
    };
    let mut out = Circuit::new(circuit.n_qubits())?;
    for g in source.gates() {
        out.extend_gates(lower_gate(g)?)?;
    }
    if options.verify {
        let fit = circuit_unitary(&out)?.phase_fit(&circuit_unitary(&source)?);
        if !fit.within(options.phase_tolerance) {
            return Err(Error::VerificationFailed(fit.deviation));
        }
    }
    Ok(out)
}
