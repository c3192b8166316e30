//! Experiment runners: build the lowered circuit for a scenario, simulate it
//! exactly step by step, and collect the distributions.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::circuit::Circuit;
use crate::error::{Error, Result};
use crate::sim::{
    apply_circuit, measure_distribution, sample, Distribution, StateVector, NORM_TOL,
};
use crate::synthesis::{lower, LoweringOptions, Variant};
use crate::walks::{
    self, cycle_step, even_superposition_prep, grover_diffusion, optimal_steps, pair_prep,
    reflection_r, torus_step, two_walker_step, uniform_prep, InteractionMode, InteractionSpec,
    WalkSpec,
};

/// Starting state of a run.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum InitialState {
    /// `basis:<k>`
    Basis(usize),
    /// `pair:<a>,<b>` for `(|a> + |b>)/√2`
    Pair(usize, usize),
    /// `uniform`
    Uniform,
    /// `even-superposition`
    EvenSuperposition,
    /// `pairpos:<x1>,<x2>`, one walker on each vertex
    PairPos(usize, usize),
}

fn parse_pair(s: &str) -> Option<(usize, usize)> {
    let (a, b) = s.split_once(',')?;
    Some((a.trim().parse().ok()?, b.trim().parse().ok()?))
}

impl FromStr for InitialState {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::InvalidArgument(format!("unrecognised initial state '{s}'"));
        match s {
            "uniform" => return Ok(InitialState::Uniform),
            "even-superposition" => return Ok(InitialState::EvenSuperposition),
            _ => {}
        }
        let (kind, arg) = s.split_once(':').ok_or_else(bad)?;
        match kind {
            "basis" => arg
                .trim()
                .parse()
                .map(InitialState::Basis)
                .map_err(|_| bad()),
            "pair" => parse_pair(arg)
                .map(|(a, b)| InitialState::Pair(a, b))
                .ok_or_else(bad),
            "pairpos" => parse_pair(arg)
                .map(|(a, b)| InitialState::PairPos(a, b))
                .ok_or_else(bad),
            _ => Err(bad()),
        }
    }
}

impl fmt::Display for InitialState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            InitialState::Basis(k) => write!(f, "basis:{k}"),
            InitialState::Pair(a, b) => write!(f, "pair:{a},{b}"),
            InitialState::Uniform => f.write_str("uniform"),
            InitialState::EvenSuperposition => f.write_str("even-superposition"),
            InitialState::PairPos(a, b) => write!(f, "pairpos:{a},{b}"),
        }
    }
}

impl InitialState {
    fn prep(&self, n: usize) -> Result<Circuit> {
        match *self {
            InitialState::Basis(k) => walks::basis_prep(n, k),
            InitialState::Pair(a, b) => pair_prep(n, a, b),
            InitialState::Uniform => uniform_prep(n),
            InitialState::EvenSuperposition => even_superposition_prep(n),
            InitialState::PairPos(..) => Err(Error::InvalidArgument(
                "pairpos is only valid for two-walker runs".into(),
            )),
        }
    }
}

/// Parameters echoed into the result; unused ones are omitted.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct Params {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n_per_walker: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub theta: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub phi: Option<f64>,
    pub steps: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub variant: Option<Variant>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub mode: Option<InteractionMode>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub marked: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub initial: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub exact_reflection: Option<bool>,
    pub seed: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub shots: Option<u32>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Peak {
    pub outcome: usize,
    pub probability: f64,
}

/// One run. `probabilities[0]` is the initial distribution and row `k` the
/// distribution after `k` steps.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentResult {
    pub experiment: String,
    pub params: Params,
    pub probabilities: Vec<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub counts: Option<Vec<Vec<u64>>>,
    pub cnot_count: usize,
    pub depth: usize,
    /// `(row, col)` of each outcome label, torus runs only.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub coords: Option<Vec<(usize, usize)>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub success_probability: Option<f64>,
    pub peak: Peak,
}

impl ExperimentResult {
    pub fn to_json(&self) -> Result<String> {
        serde_json::to_string_pretty(self).map_err(|e| Error::InvariantViolation(e.to_string()))
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::InvalidArgument(e.to_string()))
    }

    /// Final distribution.
    pub fn last(&self) -> &[f64] {
        self.probabilities.last().map(Vec::as_slice).unwrap_or(&[])
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct Sampling {
    pub shots: Option<u32>,
    pub seed: u64,
}

struct Trace {
    rows: Vec<Distribution>,
    circuit: Circuit,
}

/// Simulates `prep` then `steps` copies of `step`, all lowered, recording the
/// distribution after the preparation and after every step.
fn trace(prep: &Circuit, step: &Circuit, steps: usize) -> Result<Trace> {
    let opts = LoweringOptions::default();
    let prep = lower(prep, &opts)?;
    let step = lower(step, &opts)?;
    let mut full = prep.clone();
    let mut state = apply_circuit(&StateVector::zero(prep.n_qubits())?, &prep)?;
    let mut rows = vec![checked(&state)?];
    for _ in 0..steps {
        state = apply_circuit(&state, &step)?;
        rows.push(checked(&state)?);
        full.extend(&step)?;
    }
    Ok(Trace {
        rows,
        circuit: full,
    })
}

fn checked(state: &StateVector) -> Result<Distribution> {
    let norm = state.norm_sqr();
    if (norm - 1.0).abs() > NORM_TOL {
        return Err(Error::InvariantViolation(format!(
            "state norm drifted to {norm}"
        )));
    }
    Distribution::new(measure_distribution(state).probs().to_vec())
        .map_err(|e| Error::InvariantViolation(e.to_string()))
}

fn finish(
    experiment: &str,
    params: Params,
    trace: Trace,
    sampling: Sampling,
) -> Result<ExperimentResult> {
    let counts = match sampling.shots {
        Some(shots) => Some(
            trace
                .rows
                .iter()
                .enumerate()
                .map(|(i, d)| sample(d, shots, sampling.seed.wrapping_add(i as u64)))
                .collect::<Result<Vec<_>>>()?,
        ),
        None => None,
    };
    let last = trace.rows.last().expect("at least the initial row");
    let outcome = last.argmax();
    Ok(ExperimentResult {
        experiment: experiment.to_string(),
        params,
        peak: Peak {
            outcome,
            probability: last.probs()[outcome],
        },
        probabilities: trace.rows.iter().map(|d| d.probs().to_vec()).collect(),
        counts,
        cnot_count: trace.circuit.cnot_count()?,
        depth: trace.circuit.depth(),
        coords: None,
        success_probability: None,
    })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CycleConfig {
    pub n: usize,
    pub theta: f64,
    pub steps: usize,
    pub variant: Variant,
    pub initial: InitialState,
}

pub fn run_cycle(cfg: &CycleConfig, sampling: Sampling) -> Result<ExperimentResult> {
    let spec = WalkSpec::cycle(cfg.n, cfg.theta, cfg.variant, 1);
    let t = trace(&cfg.initial.prep(cfg.n)?, &cycle_step(&spec)?, cfg.steps)?;
    let params = Params {
        n: Some(cfg.n),
        theta: Some(cfg.theta),
        steps: cfg.steps,
        variant: Some(cfg.variant),
        initial: Some(cfg.initial.to_string()),
        seed: sampling.seed,
        shots: sampling.shots,
        ..Params::default()
    };
    finish("cycle", params, t, sampling)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TwoWalkerConfig {
    pub n_per_walker: usize,
    pub theta: f64,
    pub interaction: InteractionSpec,
    pub steps: usize,
    pub variant: Variant,
    /// Starting vertices of walker 1 and walker 2.
    pub start: (usize, usize),
}

pub fn run_two_walkers(cfg: &TwoWalkerConfig, sampling: Sampling) -> Result<ExperimentResult> {
    let n = cfg.n_per_walker;
    let (x1, x2) = cfg.start;
    let side = 1usize.checked_shl(n as u32).unwrap_or(0);
    if x1 >= side || x2 >= side {
        return Err(Error::InvalidArgument(format!(
            "walker positions ({x1}, {x2}) outside 0..{side}"
        )));
    }
    let prep = walks::basis_prep(2 * n, x1 * side + x2)?;
    let step = two_walker_step(n, cfg.theta, &cfg.interaction, cfg.variant)?;
    let t = trace(&prep, &step, cfg.steps)?;
    let params = Params {
        n_per_walker: Some(n),
        theta: Some(cfg.theta),
        phi: Some(cfg.interaction.phi),
        steps: cfg.steps,
        variant: Some(cfg.variant),
        mode: Some(cfg.interaction.mode),
        marked: match cfg.interaction.mode {
            InteractionMode::Marked => Some(cfg.interaction.marked),
            InteractionMode::Full => None,
        },
        initial: Some(InitialState::PairPos(x1, x2).to_string()),
        seed: sampling.seed,
        shots: sampling.shots,
        ..Params::default()
    };
    finish("two-walkers", params, t, sampling)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TorusConfig {
    pub n: usize,
    pub theta: f64,
    pub steps: usize,
    pub variant: Variant,
    pub initial: InitialState,
}

pub fn run_torus(cfg: &TorusConfig, sampling: Sampling) -> Result<ExperimentResult> {
    let spec = WalkSpec::torus(cfg.n, cfg.theta, cfg.variant, 1);
    let step = torus_step(&spec)?;
    let t = trace(&cfg.initial.prep(cfg.n)?, &step, cfg.steps)?;
    let params = Params {
        n: Some(cfg.n),
        theta: Some(cfg.theta),
        steps: cfg.steps,
        variant: Some(cfg.variant),
        initial: Some(cfg.initial.to_string()),
        seed: sampling.seed,
        shots: sampling.shots,
        ..Params::default()
    };
    let side = 1usize << (cfg.n / 2);
    let mut result = finish("torus", params, t, sampling)?;
    result.coords = Some((0..1usize << cfg.n).map(|l| (l / side, l % side)).collect());
    Ok(result)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SearchConfig {
    pub n: usize,
    /// Defaults to [`optimal_steps`] when absent.
    pub steps: Option<usize>,
    pub exact_reflection: bool,
}

pub fn run_search(cfg: &SearchConfig, sampling: Sampling) -> Result<ExperimentResult> {
    let steps = match cfg.steps {
        Some(s) => s,
        None => optimal_steps(1usize.checked_shl(cfg.n as u32).unwrap_or(0))?,
    };
    let mut round = reflection_r(cfg.n, cfg.exact_reflection)?;
    round.extend(&grover_diffusion(cfg.n, cfg.exact_reflection)?)?;
    let t = trace(&uniform_prep(cfg.n)?, &round, steps)?;
    let params = Params {
        n: Some(cfg.n),
        steps,
        exact_reflection: Some(cfg.exact_reflection),
        initial: Some(InitialState::Uniform.to_string()),
        seed: sampling.seed,
        shots: sampling.shots,
        ..Params::default()
    };
    let mut result = finish("search", params, t, sampling)?;
    result.success_probability = Some(result.last()[0]);
    Ok(result)
}

/// Default interaction for two-walker runs: marked vertex `marked`, phase π.
pub fn marked_interaction(marked: usize) -> InteractionSpec {
    InteractionSpec {
        mode: InteractionMode::Marked,
        phi: walks::DEFAULT_PHI,
        marked,
    }
}
