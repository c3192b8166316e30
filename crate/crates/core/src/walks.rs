//! Evolution-operator circuits for staggered quantum walks.
//!
//! Cycle of `2^n` vertices: one step is `U1 · U0`, where `U0 = I ⊗ R_x(2θ)`
//! couples the tiles `{2x, 2x+1}` and `U1 = P⁻¹ U0 P` couples `{2x+1, 2x+2}`
//! through the cyclic shift `P`.
//!
//! Torus of `2^(n/2) x 2^(n/2)` vertices, labelled row-major: the row index
//! lives on `q0..q(n/2-1)` and the column index on `q(n/2)..q(n-1)`. Each
//! step applies four local operators built from controlled shifts.
//!
//! Complete graph: the walk is Grover's operator; the search circuit adds a
//! phase oracle on vertex 0.

use std::f64::consts::{FRAC_PI_4, PI};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::circuit::{Circuit, Gate, GateKind};
use crate::error::{Error, Result};
use crate::sim::{dense_tile_hamiltonian, DenseUnitary, TileVector};
use crate::synthesis::{
    a_of_k, alt_increment, controlled_alt_increment_on, increment_perm, Variant,
};

/// Angle used when none is configured.
pub const DEFAULT_THETA: f64 = FRAC_PI_4;

/// Interaction phase used when none is configured.
pub const DEFAULT_PHI: f64 = PI;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Graph {
    Cycle,
    Torus,
    Complete,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct WalkSpec {
    pub graph: Graph,
    pub n_qubits: usize,
    pub theta: f64,
    pub variant: Variant,
    pub steps: usize,
}

impl WalkSpec {
    pub fn cycle(n_qubits: usize, theta: f64, variant: Variant, steps: usize) -> Self {
        WalkSpec {
            graph: Graph::Cycle,
            n_qubits,
            theta,
            variant,
            steps,
        }
    }

    pub fn torus(n_qubits: usize, theta: f64, variant: Variant, steps: usize) -> Self {
        WalkSpec {
            graph: Graph::Torus,
            n_qubits,
            theta,
            variant,
            steps,
        }
    }

    fn expect(&self, graph: Graph) -> Result<()> {
        if self.graph != graph {
            return Err(Error::InvalidArgument(format!(
                "expected a {graph:?} walk, got {:?}",
                self.graph
            )));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum InteractionMode {
    /// Phase whenever both walkers share a vertex.
    Full,
    /// Phase only when both walkers sit on the marked vertex.
    Marked,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct InteractionSpec {
    pub mode: InteractionMode,
    pub phi: f64,
    pub marked: usize,
}

/// Unit vector `(|v> + c|w>)/√2` of a β tile in the alternative walk.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum TileVectorTag {
    /// `c = 1`
    Plus,
    /// `c = -i`
    MinusI,
    /// `c = -1`
    Minus,
    /// `c = i`
    PlusI,
}

impl TileVectorTag {
    pub fn coefficient(self) -> Complex64 {
        match self {
            TileVectorTag::Plus => Complex64::new(1.0, 0.0),
            TileVectorTag::MinusI => Complex64::new(0.0, -1.0),
            TileVectorTag::Minus => Complex64::new(-1.0, 0.0),
            TileVectorTag::PlusI => Complex64::new(0.0, 1.0),
        }
    }
}

/// 2x2 block of the β-layer evolution on one tile.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum TileBlock {
    /// `R_x(2θ)`
    RxPos,
    /// `R_y(-2θ)`
    RyNeg,
    /// `R_x(-2θ)`
    RxNeg,
    /// `R_y(2θ)`
    RyPos,
}

impl TileBlock {
    pub fn gate(self, theta: f64) -> GateKind {
        match self {
            TileBlock::RxPos => GateKind::RotX(2.0 * theta),
            TileBlock::RyNeg => GateKind::RotY(-2.0 * theta),
            TileBlock::RxNeg => GateKind::RotX(-2.0 * theta),
            TileBlock::RyPos => GateKind::RotY(2.0 * theta),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct TileSequenceEntry {
    /// Tile `{v, w}` of the β tessellation.
    pub v: usize,
    pub w: usize,
    pub residue: usize,
    pub vector: TileVectorTag,
    pub block: TileBlock,
}

impl TileSequenceEntry {
    fn from_residue(v: usize, w: usize, residue: usize) -> Self {
        let (vector, block) = match residue % 4 {
            0 => (TileVectorTag::Plus, TileBlock::RxPos),
            1 => (TileVectorTag::MinusI, TileBlock::RyNeg),
            2 => (TileVectorTag::Minus, TileBlock::RxNeg),
            _ => (TileVectorTag::PlusI, TileBlock::RyPos),
        };
        TileSequenceEntry {
            v,
            w,
            residue: residue % 4,
            vector,
            block,
        }
    }
}

/// β-tile vectors realised by the alternative shift on the `2^n`-cycle.
///
/// Tile `k = 1 .. N/2 - 1` is `{2k-1, 2k}` and takes residue `a(k) mod 4`.
/// The wrap-around tile `{N-1, 0}` comes last; the relaxed top carry leaves
/// it with residue `(n - 2) mod 4`.
pub fn tile_sequence(n: usize) -> Result<Vec<TileSequenceEntry>> {
    if !(2..=crate::MAX_QUBITS).contains(&n) {
        return Err(Error::InvalidWidth(n));
    }
    let dim = 1usize << n;
    let mut seq = Vec::with_capacity(dim / 2);
    for k in 1..dim / 2 {
        seq.push(TileSequenceEntry::from_residue(
            2 * k - 1,
            2 * k,
            a_of_k(k as u64)?,
        ));
    }
    seq.push(TileSequenceEntry::from_residue(dim - 1, 0, n - 2));
    Ok(seq)
}

/// `2 Σ |β_k><β_k| − I` with the alternative tile vectors.
pub fn dense_h1_alternative(n: usize) -> Result<DenseUnitary> {
    let tiles: Vec<TileVector> = tile_sequence(n)?
        .into_iter()
        .map(|e| TileVector {
            v: e.v,
            w: e.w,
            coeff: e.vector.coefficient(),
        })
        .collect();
    Ok(dense_tile_hamiltonian(n, &tiles))
}

/// `U0 = I ⊗ R_x(2θ)`: a single rotation on the last qubit.
pub fn u0_circuit(n: usize, theta: f64) -> Result<Circuit> {
    let mut c = Circuit::new(n)?;
    c.rx(2.0 * theta, n - 1)?;
    Ok(c)
}

fn shift(n: usize, variant: Variant) -> Result<Circuit> {
    match variant {
        Variant::Standard => increment_perm(n),
        Variant::Alternative => alt_increment(n),
    }
}

/// `U1 = P⁻¹ U0 P`, with `U0` drawn as `X R_x(2θ) X` on the last qubit.
pub fn u1_circuit(n: usize, theta: f64, variant: Variant) -> Result<Circuit> {
    if n < 2 {
        return Err(Error::InvalidArgument("U1 needs n >= 2".into()));
    }
    let p = shift(n, variant)?;
    let mut c = p.clone();
    c.x(n - 1)?.rx(2.0 * theta, n - 1)?.x(n - 1)?;
    c.extend(&p.inverse())?;
    Ok(c)
}

/// One step `U1 · U0` of the cycle walk.
pub fn cycle_step(spec: &WalkSpec) -> Result<Circuit> {
    spec.expect(Graph::Cycle)?;
    let mut c = u0_circuit(spec.n_qubits, spec.theta)?;
    c.extend(&u1_circuit(spec.n_qubits, spec.theta, spec.variant)?)?;
    Ok(c)
}

/// `spec.steps` repetitions of the graph's step operator.
pub fn evolution(spec: &WalkSpec) -> Result<Circuit> {
    let step = match spec.graph {
        Graph::Cycle => cycle_step(spec)?,
        Graph::Torus => torus_step(spec)?,
        Graph::Complete => {
            return search_circuit(spec.n_qubits, spec.steps, spec.variant == Variant::Standard)
        }
    };
    let mut c = Circuit::new(spec.n_qubits)?;
    for _ in 0..spec.steps {
        c.extend(&step)?;
    }
    Ok(c)
}

fn check_walker_width(n_per_walker: usize) -> Result<()> {
    if n_per_walker == 0 || 2 * n_per_walker > crate::MAX_QUBITS {
        return Err(Error::InvalidWidth(2 * n_per_walker));
    }
    Ok(())
}

/// Phase `e^{iφ}` on every `|x>|x>`.
///
/// Register 2 is overwritten with `x1 XOR x2`, flipped so that equal
/// positions read all-ones, hit with a multi-controlled `u1(φ)`, then
/// restored.
pub fn interaction_full(n_per_walker: usize, phi: f64) -> Result<Circuit> {
    check_walker_width(n_per_walker)?;
    let n = n_per_walker;
    let mut compute = Circuit::new(2 * n)?;
    for i in 0..n {
        compute.cx(i, n + i)?;
    }
    for i in n..2 * n {
        compute.x(i)?;
    }
    let mut c = compute.clone();
    let controls: Vec<usize> = (n..2 * n - 1).collect();
    c.append(Gate::controlled(GateKind::Phase(phi), &controls, 2 * n - 1))?;
    c.extend(&compute.inverse())?;
    Ok(c)
}

/// Phase `e^{iφ}` on `|x0>|x0>` only.
pub fn interaction_marked(n_per_walker: usize, phi: f64, marked: usize) -> Result<Circuit> {
    check_walker_width(n_per_walker)?;
    let n = n_per_walker;
    if marked >= 1 << n {
        return Err(Error::InvalidArgument(format!(
            "marked vertex {marked} outside 0..{}",
            1 << n
        )));
    }
    let mut flips = Circuit::new(2 * n)?;
    for i in 0..n {
        if marked >> (n - 1 - i) & 1 == 0 {
            flips.x(i)?.x(n + i)?;
        }
    }
    let mut c = flips.clone();
    let controls: Vec<usize> = (0..2 * n - 1).collect();
    c.append(Gate::controlled(GateKind::Phase(phi), &controls, 2 * n - 1))?;
    c.extend(&flips)?;
    Ok(c)
}

pub fn interaction(n_per_walker: usize, spec: &InteractionSpec) -> Result<Circuit> {
    match spec.mode {
        InteractionMode::Full => interaction_full(n_per_walker, spec.phi),
        InteractionMode::Marked => interaction_marked(n_per_walker, spec.phi, spec.marked),
    }
}

/// `(U_step ⊗ U_step) · R`. Walker 1 holds the high-order qubits.
pub fn two_walker_step(
    n_per_walker: usize,
    theta: f64,
    interaction_spec: &InteractionSpec,
    variant: Variant,
) -> Result<Circuit> {
    let n = n_per_walker;
    let mut c = interaction(n, interaction_spec)?;
    let single = cycle_step(&WalkSpec::cycle(n, theta, variant, 1))?;
    let first: Vec<usize> = (0..n).collect();
    let second: Vec<usize> = (n..2 * n).collect();
    c.extend_mapped(&single, &first)?;
    c.extend_mapped(&single, &second)?;
    Ok(c)
}

/// Which controlled shift of the torus walk.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PermAxis {
    /// Shift of the column register, controlled by `q(n/2-1)`.
    Qx,
    /// Shift of the row register, controlled by `q(n-1)`.
    Qy,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    Forward,
    Inverse,
}

/// Controlled shift on a `2 * n_half`-qubit torus register.
pub fn controlled_perm(
    n_half: usize,
    which: PermAxis,
    direction: Direction,
    variant: Variant,
) -> Result<Circuit> {
    if n_half < 2 {
        return Err(Error::InvalidArgument(format!(
            "torus needs at least 2 qubits per axis, got {n_half}"
        )));
    }
    let n = 2 * n_half;
    let (control, targets): (usize, Vec<usize>) = match which {
        PermAxis::Qx => (n_half - 1, (n_half..n).collect()),
        PermAxis::Qy => (n - 1, (0..n_half).collect()),
    };
    let forward = match variant {
        Variant::Standard => {
            let mut c = Circuit::new(n)?;
            c.extend_mapped(&increment_perm(n_half)?, &targets)?;
            c.controlled_by(control)?
        }
        Variant::Alternative => controlled_alt_increment_on(n, control, &targets)?,
    };
    Ok(match direction {
        Direction::Forward => forward,
        Direction::Inverse => forward.inverse(),
    })
}

/// The four local operators `[U00, U01, U10, U11]` of one torus step.
pub fn torus_layers(n: usize, theta: f64, variant: Variant) -> Result<[Circuit; 4]> {
    if !n.is_multiple_of(2) {
        return Err(Error::InvalidArgument(format!(
            "torus register must have an even qubit count, got {n}"
        )));
    }
    let h = n / 2;
    let sandwich = |which: PermAxis, rot_qubit: usize| -> Result<Circuit> {
        let mut c = controlled_perm(h, which, Direction::Forward, variant)?;
        c.rx(2.0 * theta, rot_qubit)?;
        c.extend(&controlled_perm(h, which, Direction::Inverse, variant)?)?;
        Ok(c)
    };
    let u00 = sandwich(PermAxis::Qx, n - 1)?;
    let u01 = sandwich(PermAxis::Qy, h - 1)?;
    let conjugated = |inner: &Circuit, q: usize| -> Result<Circuit> {
        let mut c = Circuit::new(n)?;
        c.x(q)?.extend(inner)?.x(q)?;
        Ok(c)
    };
    let u10 = conjugated(&u00, h - 1)?;
    let u11 = conjugated(&u01, n - 1)?;
    Ok([u00, u01, u10, u11])
}

/// One torus step `U11 U10 U01 U00`, `U00` applied first.
pub fn torus_step(spec: &WalkSpec) -> Result<Circuit> {
    spec.expect(Graph::Torus)?;
    let layers = torus_layers(spec.n_qubits, spec.theta, spec.variant)?;
    let mut c = Circuit::new(spec.n_qubits)?;
    for layer in &layers {
        c.extend(layer)?;
    }
    Ok(c)
}

/// `I − 2|0><0|` (up to global phase) as `X^n · C(Z) · X^n`. With
/// `exact = false` the inner gate is a controlled `R_z(π)`, which is cheaper
/// but only reflects up to relative phases.
pub fn reflection_r(n: usize, exact: bool) -> Result<Circuit> {
    let mut c = Circuit::new(n)?;
    for q in 0..n {
        c.x(q)?;
    }
    let controls: Vec<usize> = (0..n - 1).collect();
    let kind = if exact {
        GateKind::Phase(PI)
    } else {
        GateKind::RotZ(PI)
    };
    c.append(Gate::controlled(kind, &controls, n - 1))?;
    for q in 0..n {
        c.x(q)?;
    }
    Ok(c)
}

/// `H^n R H^n`, the Grover operator up to sign.
pub fn grover_diffusion(n: usize, exact: bool) -> Result<Circuit> {
    let mut c = Circuit::new(n)?;
    for q in 0..n {
        c.h(q)?;
    }
    c.extend(&reflection_r(n, exact)?)?;
    for q in 0..n {
        c.h(q)?;
    }
    Ok(c)
}

/// Uniform-state preparation followed by `steps` rounds of oracle then
/// diffusion. The marked vertex is 0.
pub fn search_circuit(n: usize, steps: usize, exact: bool) -> Result<Circuit> {
    let mut c = Circuit::new(n)?;
    for q in 0..n {
        c.h(q)?;
    }
    let round = {
        let mut r = reflection_r(n, exact)?;
        r.extend(&grover_diffusion(n, exact)?)?;
        r
    };
    for _ in 0..steps {
        c.extend(&round)?;
    }
    Ok(c)
}

/// Nearest integer to `π √N / 4`, halves rounded up.
pub fn optimal_steps(vertices: usize) -> Result<usize> {
    if !vertices.is_power_of_two() {
        return Err(Error::NotPowerOfTwo(vertices));
    }
    Ok((PI * (vertices as f64).sqrt() / 4.0 + 0.5).floor() as usize)
}

/// `|k>` from `|0...0>`.
pub fn basis_prep(n: usize, k: usize) -> Result<Circuit> {
    if k >= 1 << n {
        return Err(Error::InvalidArgument(format!("vertex {k} out of range")));
    }
    let mut c = Circuit::new(n)?;
    for q in 0..n {
        if k >> (n - 1 - q) & 1 == 1 {
            c.x(q)?;
        }
    }
    Ok(c)
}

/// `(|a> + |b>)/√2` from `|0...0>`: a Hadamard on the highest differing
/// qubit, CNOT fan-out to the other differing qubits, then X on the bits of
/// `a`.
pub fn pair_prep(n: usize, a: usize, b: usize) -> Result<Circuit> {
    let dim = 1usize << n;
    if a >= dim || b >= dim || a == b {
        return Err(Error::InvalidArgument(format!(
            "pair ({a}, {b}) must be two distinct vertices below {dim}"
        )));
    }
    let diff = a ^ b;
    let differing: Vec<usize> = (0..n).filter(|&q| diff >> (n - 1 - q) & 1 == 1).collect();
    let mut c = Circuit::new(n)?;
    c.h(differing[0])?;
    for &q in &differing[1..] {
        c.cx(differing[0], q)?;
    }
    c.extend(&basis_prep(n, a)?)?;
    Ok(c)
}

/// Equal superposition of the even labels: H on every qubit but the last.
pub fn even_superposition_prep(n: usize) -> Result<Circuit> {
    let mut c = Circuit::new(n)?;
    for q in 0..n - 1 {
        c.h(q)?;
    }
    Ok(c)
}

pub fn uniform_prep(n: usize) -> Result<Circuit> {
    let mut c = Circuit::new(n)?;
    for q in 0..n {
        c.h(q)?;
    }
    Ok(c)
}
