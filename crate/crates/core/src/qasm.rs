//! OpenQASM 2.0 output for lowered circuits.

use std::fmt::Write as _;

use crate::circuit::{Circuit, GateKind};
use crate::error::{Error, Result};

/// Formats an angle with 17 significant digits.
pub fn format_angle(a: f64) -> String {
    format!("{a:.16e}")
}

/// Serialises a lowered circuit. Gates with more than one control, or a
/// control on anything but X, are rejected.
pub fn emit_qasm(circuit: &Circuit) -> Result<String> {
    let mut out = String::new();
    out.push_str("OPENQASM 2.0;\n");
    out.push_str("include \"qelib1.inc\";\n");
    let _ = writeln!(out, "qreg q[{}];", circuit.n_qubits());
    for g in circuit.gates() {
        if !g.is_basis() {
            return Err(Error::Unlowered(g.to_string()));
        }
        if let [c] = g.controls.as_slice() {
            let _ = writeln!(out, "cx q[{}],q[{}];", c.qubit, g.target);
            continue;
        }
        match g.kind {
            GateKind::PauliX | GateKind::Hadamard => {
                let _ = writeln!(out, "{} q[{}];", g.kind.name(), g.target);
            }
            GateKind::RotX(a) | GateKind::RotY(a) | GateKind::RotZ(a) | GateKind::Phase(a) => {
                let _ = writeln!(
                    out,
                    "{}({}) q[{}];",
                    g.kind.name(),
                    format_angle(a),
                    g.target
                );
            }
        }
    }
    Ok(out)
}
