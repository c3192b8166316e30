//! Gate IR and the circuit container.
//!
//! A [`Circuit`] is an ordered list of [`Gate`]s over a fixed register. The
//! first gate in the list acts first on the state. Gates may carry any number
//! of controls; the lowering passes in [`crate::synthesis`] reduce them to the
//! basis `{x, h, rx, ry, rz, u1, cx}`.

use std::collections::HashSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::MAX_QUBITS;

/// Single-qubit operation carried by a gate. Angles are radians, stored
/// exactly as given.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum GateKind {
    PauliX,
    Hadamard,
    RotX(f64),
    RotY(f64),
    RotZ(f64),
    /// `diag(1, e^{i angle})`, the `u1` gate.
    Phase(f64),
}

impl GateKind {
    pub fn angle(&self) -> Option<f64> {
        match *self {
            GateKind::RotX(a) | GateKind::RotY(a) | GateKind::RotZ(a) | GateKind::Phase(a) => {
                Some(a)
            }
            GateKind::PauliX | GateKind::Hadamard => None,
        }
    }

    pub fn adjoint(&self) -> GateKind {
        match *self {
            GateKind::PauliX => GateKind::PauliX,
            GateKind::Hadamard => GateKind::Hadamard,
            GateKind::RotX(a) => GateKind::RotX(-a),
            GateKind::RotY(a) => GateKind::RotY(-a),
            GateKind::RotZ(a) => GateKind::RotZ(-a),
            GateKind::Phase(a) => GateKind::Phase(-a),
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            GateKind::PauliX => "x",
            GateKind::Hadamard => "h",
            GateKind::RotX(_) => "rx",
            GateKind::RotY(_) => "ry",
            GateKind::RotZ(_) => "rz",
            GateKind::Phase(_) => "u1",
        }
    }
}

/// Whether a control fires on `|1>` (closed) or `|0>` (open).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub enum Polarity {
    #[default]
    Closed,
    Open,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Control {
    pub qubit: usize,
    pub polarity: Polarity,
}

impl Control {
    pub fn closed(qubit: usize) -> Self {
        Control {
            qubit,
            polarity: Polarity::Closed,
        }
    }

    pub fn open(qubit: usize) -> Self {
        Control {
            qubit,
            polarity: Polarity::Open,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Gate {
    pub kind: GateKind,
    pub target: usize,
    pub controls: Vec<Control>,
}

impl Gate {
    pub fn new(kind: GateKind, target: usize) -> Self {
        Gate {
            kind,
            target,
            controls: Vec::new(),
        }
    }

    /// Gate with closed controls on every qubit of `controls`.
    pub fn controlled(kind: GateKind, controls: &[usize], target: usize) -> Self {
        Gate {
            kind,
            target,
            controls: controls.iter().copied().map(Control::closed).collect(),
        }
    }

    pub fn cx(control: usize, target: usize) -> Self {
        Gate::controlled(GateKind::PauliX, &[control], target)
    }

    pub fn control_qubits(&self) -> impl Iterator<Item = usize> + '_ {
        self.controls.iter().map(|c| c.qubit)
    }

    /// Every qubit the gate touches, target last.
    pub fn qubits(&self) -> impl Iterator<Item = usize> + '_ {
        self.control_qubits().chain(std::iter::once(self.target))
    }

    pub fn adjoint(&self) -> Gate {
        Gate {
            kind: self.kind.adjoint(),
            target: self.target,
            controls: self.controls.clone(),
        }
    }

    /// True for gates in the lowered basis: uncontrolled single-qubit gates
    /// and the closed-control CNOT.
    pub fn is_basis(&self) -> bool {
        match self.controls.as_slice() {
            [] => true,
            [c] => self.kind == GateKind::PauliX && c.polarity == Polarity::Closed,
            _ => false,
        }
    }

    pub fn is_cnot(&self) -> bool {
        self.kind == GateKind::PauliX
            && self.controls.len() == 1
            && self.controls[0].polarity == Polarity::Closed
    }

    /// Checks the gate against a register of `n_qubits`.
    pub fn validate(&self, n_qubits: usize) -> Result<()> {
        if let Some(a) = self.kind.angle() {
            if !a.is_finite() {
                return Err(Error::NonFiniteAngle(a));
            }
        }
        let mut seen = HashSet::with_capacity(self.controls.len());
        for q in self.qubits() {
            if q >= n_qubits {
                return Err(Error::QubitOutOfRange { qubit: q, n_qubits });
            }
        }
        for c in self.control_qubits() {
            if c == self.target {
                return Err(Error::TargetInControls(c));
            }
            if !seen.insert(c) {
                return Err(Error::DuplicateControl(c));
            }
        }
        Ok(())
    }

    fn remapped(&self, map: &[usize]) -> Gate {
        Gate {
            kind: self.kind,
            target: map[self.target],
            controls: self
                .controls
                .iter()
                .map(|c| Control {
                    qubit: map[c.qubit],
                    polarity: c.polarity,
                })
                .collect(),
        }
    }
}

impl fmt::Display for Gate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.controls {
            f.write_str(match c.polarity {
                Polarity::Closed => "c",
                Polarity::Open => "o",
            })?;
        }
        f.write_str(self.kind.name())?;
        if let Some(a) = self.kind.angle() {
            write!(f, "({a})")?;
        }
        f.write_str(" ")?;
        for c in &self.controls {
            write!(f, "q{},", c.qubit)?;
        }
        write!(f, "q{}", self.target)
    }
}

/// Ordered gate list over a fixed register.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Circuit {
    n_qubits: usize,
    gates: Vec<Gate>,
}

impl Circuit {
    pub fn new(n_qubits: usize) -> Result<Self> {
        if n_qubits == 0 || n_qubits > MAX_QUBITS {
            return Err(Error::InvalidWidth(n_qubits));
        }
        Ok(Circuit {
            n_qubits,
            gates: Vec::new(),
        })
    }

    /// Builds a circuit from a gate list, validating every gate.
    pub fn from_gates(n_qubits: usize, gates: impl IntoIterator<Item = Gate>) -> Result<Self> {
        let mut c = Circuit::new(n_qubits)?;
        c.extend_gates(gates)?;
        Ok(c)
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn gates(&self) -> &[Gate] {
        &self.gates
    }

    pub fn len(&self) -> usize {
        self.gates.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gates.is_empty()
    }

    pub fn append(&mut self, gate: Gate) -> Result<&mut Self> {
        gate.validate(self.n_qubits)?;
        self.gates.push(gate);
        Ok(self)
    }

    pub fn extend_gates(&mut self, gates: impl IntoIterator<Item = Gate>) -> Result<&mut Self> {
        for g in gates {
            self.append(g)?;
        }
        Ok(self)
    }

    /// Appends all gates of `other`, which must have the same width.
    pub fn extend(&mut self, other: &Circuit) -> Result<&mut Self> {
        if other.n_qubits != self.n_qubits {
            return Err(Error::WidthMismatch {
                expected: self.n_qubits,
                actual: other.n_qubits,
            });
        }
        self.gates.extend_from_slice(&other.gates);
        Ok(self)
    }

    /// Appends `other` with its qubit `i` relabelled to `map[i]`.
    pub fn extend_mapped(&mut self, other: &Circuit, map: &[usize]) -> Result<&mut Self> {
        if map.len() != other.n_qubits {
            return Err(Error::WidthMismatch {
                expected: other.n_qubits,
                actual: map.len(),
            });
        }
        for g in &other.gates {
            self.append(g.remapped(map))?;
        }
        Ok(self)
    }

    pub fn x(&mut self, q: usize) -> Result<&mut Self> {
        self.append(Gate::new(GateKind::PauliX, q))
    }

    pub fn h(&mut self, q: usize) -> Result<&mut Self> {
        self.append(Gate::new(GateKind::Hadamard, q))
    }

    pub fn rx(&mut self, angle: f64, q: usize) -> Result<&mut Self> {
        self.append(Gate::new(GateKind::RotX(angle), q))
    }

    pub fn ry(&mut self, angle: f64, q: usize) -> Result<&mut Self> {
        self.append(Gate::new(GateKind::RotY(angle), q))
    }

    pub fn rz(&mut self, angle: f64, q: usize) -> Result<&mut Self> {
        self.append(Gate::new(GateKind::RotZ(angle), q))
    }

    pub fn phase(&mut self, angle: f64, q: usize) -> Result<&mut Self> {
        self.append(Gate::new(GateKind::Phase(angle), q))
    }

    pub fn cx(&mut self, control: usize, target: usize) -> Result<&mut Self> {
        self.append(Gate::cx(control, target))
    }

    pub fn mcx(&mut self, controls: &[usize], target: usize) -> Result<&mut Self> {
        self.append(Gate::controlled(GateKind::PauliX, controls, target))
    }

    /// Reversed gate list with every gate replaced by its adjoint.
    pub fn inverse(&self) -> Circuit {
        Circuit {
            n_qubits: self.n_qubits,
            gates: self.gates.iter().rev().map(Gate::adjoint).collect(),
        }
    }

    /// Adds `control` as an extra closed control to every gate.
    pub fn controlled_by(&self, control: usize) -> Result<Circuit> {
        let mut out = Circuit::new(self.n_qubits)?;
        for g in &self.gates {
            let mut g = g.clone();
            g.controls.insert(0, Control::closed(control));
            out.append(g)?;
        }
        Ok(out)
    }

    /// Number of CNOTs. Fails if any gate is outside the lowered basis.
    pub fn cnot_count(&self) -> Result<usize> {
        let mut count = 0;
        for g in &self.gates {
            if !g.is_basis() {
                return Err(Error::Unlowered(g.to_string()));
            }
            if g.is_cnot() {
                count += 1;
            }
        }
        Ok(count)
    }

    /// Critical-path length under greedy left-to-right layering: each gate
    /// lands one layer after the latest gate sharing a qubit with it.
    pub fn depth(&self) -> usize {
        let mut level = vec![0usize; self.n_qubits];
        let mut depth = 0;
        for g in &self.gates {
            let layer = g.qubits().map(|q| level[q]).max().unwrap_or(0) + 1;
            for q in g.qubits() {
                level[q] = layer;
            }
            depth = depth.max(layer);
        }
        depth
    }
}
