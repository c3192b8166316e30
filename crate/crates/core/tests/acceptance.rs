//! Acceptance checks. Runs without the libtest harness so every criterion
//! prints its own line; exits nonzero if any criterion fails.

mod common;

use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, FRAC_PI_8, PI};
use std::process::ExitCode;
use std::time::Instant;

use common::*;
use rand::{RngExt, SeedableRng};
use rand_chacha::ChaCha8Rng;
use sqwalk::experiment::{run_search, Sampling, SearchConfig};
use sqwalk::metrics::{hellinger, total_variation};
use sqwalk::sim::{apply_circuit, circuit_unitary, measure_distribution};
use sqwalk::synthesis::{
    alt_increment, increment_perm, lower, mcrx, mcrz, mct, mcz, LoweringOptions, Variant,
};
use sqwalk::walks::{
    controlled_perm, cycle_step, interaction_full, interaction_marked, pair_prep, torus_layers,
    torus_step, Direction, PermAxis, WalkSpec,
};
use sqwalk::{Circuit, DenseUnitary, Distribution, StateVector};

/// Outcome of one criterion: pass flag plus a short measured summary.
type Check = Result<String, String>;
type Criterion = (&'static str, fn() -> Check);

fn lowered(c: &Circuit) -> Circuit {
    lower(c, &LoweringOptions::default()).unwrap()
}

fn unitary(c: &Circuit) -> DenseUnitary {
    circuit_unitary(c).unwrap()
}

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn criterion_1() -> Check {
    let perm = lowered(&increment_perm(4).unwrap()).cnot_count().unwrap();
    let alt = lowered(&alt_increment(4).unwrap()).cnot_count().unwrap();
    let rz = Circuit::from_gates(4, mcrz(0.7, &[0, 1, 2], 3).unwrap())
        .unwrap()
        .cnot_count()
        .unwrap();
    let summary = format!("P(4)={perm} alt-P(4)={alt} mcrz(3 controls)={rz}");
    ensure((perm, alt, rz) == (21, 13, 8), || summary.clone())?;
    Ok(summary)
}

fn criterion_2() -> Check {
    let mut worst: f64 = 0.0;
    for n in 1..=6 {
        let circ = lowered(&increment_perm(n).unwrap());
        let dim = 1 << n;
        for q in 0..dim {
            let out = apply_circuit(&StateVector::basis(n, q).unwrap(), &circ).unwrap();
            let amp = out.amplitudes()[(q + 1) % dim];
            worst = worst.max((amp - c(1.0)).norm());
        }
    }
    ensure(worst <= 1e-10, || format!("max |amp - 1| = {worst:e}"))?;
    Ok(format!("n=1..6 exhaustive, max |amp - 1| = {worst:.1e}"))
}

fn fit(got: &Circuit, want: &DenseUnitary) -> f64 {
    let a = unitary(got).phase_fit(want).deviation;
    let b = unitary(&lowered(got)).phase_fit(want).deviation;
    a.max(b)
}

fn criterion_3() -> Check {
    let thetas = [0.0, FRAC_PI_8, FRAC_PI_4, FRAC_PI_2];
    let mut worst: f64 = 0.0;
    let mut cases = 0;
    let mut track = |name: &str, d: f64| -> Result<(), String> {
        cases += 1;
        worst = worst.max(d);
        ensure(d <= 1e-10, || format!("{name}: deviation {d:e}"))
    };
    for &t in &thetas {
        for n in 2..=4 {
            let step = cycle_step(&WalkSpec::cycle(n, t, Variant::Standard, 1)).unwrap();
            track(
                &format!("cycle n={n} θ={t}"),
                fit(&step, &dense_cycle_step(n, t)),
            )?;
        }
        let n = 4;
        let step = torus_step(&WalkSpec::torus(n, t, Variant::Standard, 1)).unwrap();
        track(&format!("torus θ={t}"), fit(&step, &dense_torus_step(n, t)))?;
        let layers = torus_layers(n, t, Variant::Standard).unwrap();
        let x = DenseUnitary::permutation(n, |i| i ^ (1 << (n - n / 2)));
        let conj = x.matmul(&unitary(&layers[0])).matmul(&x);
        track("U10 vs conjugated U00", fit(&layers[2], &conj))?;
        track("U10 dense", fit(&layers[2], &dense_torus_layers(n, t)[2]))?;
    }
    let z = [[c(1.0), c(0.0)], [c(0.0), c(-1.0)]];
    let xm = [[c(0.0), c(1.0)], [c(1.0), c(0.0)]];
    for n in 2..=4 {
        let ctrls: Vec<usize> = (0..n - 1).collect();
        let t = n - 1;
        let circ = |g| Circuit::from_gates(n, g).unwrap();
        track(
            "mcz",
            fit(
                &circ(mcz(&ctrls, t).unwrap()),
                &controlled_dense(n, &ctrls, t, z),
            ),
        )?;
        track(
            "mct",
            fit(
                &circ(mct(&ctrls, t).unwrap()),
                &controlled_dense(n, &ctrls, t, xm),
            ),
        )?;
        for &th in &thetas {
            let want = controlled_dense(n, &ctrls, t, rx_matrix(th));
            track("mcrx", fit(&circ(mcrx(th, &ctrls, t).unwrap()), &want))?;
        }
    }
    // controlled shift of the column register, control q1, on the 4x4 torus
    let qx = DenseUnitary::permutation(4, |i| {
        if (i >> 2) & 1 == 1 {
            (i & !3) | ((i + 1) & 3)
        } else {
            i
        }
    });
    let got = controlled_perm(2, PermAxis::Qx, Direction::Forward, Variant::Standard).unwrap();
    track("controlled P", fit(&got, &qx))?;
    for n in 1..=3 {
        let mut wide = Circuit::new(n + 1).unwrap();
        let targets: Vec<usize> = (1..=n).collect();
        wide.extend_mapped(&increment_perm(n).unwrap(), &targets)
            .unwrap();
        let cp = wide.controlled_by(0).unwrap();
        let dim = 1 << n;
        let want = DenseUnitary::permutation(n + 1, |i| {
            if i >= dim {
                dim + (i - dim + 1) % dim
            } else {
                i
            }
        });
        track(&format!("controlled P n={n}"), fit(&cp, &want))?;
    }
    Ok(format!("{cases} cases, worst deviation {worst:.1e}"))
}

fn criterion_4() -> Check {
    let step =
        lowered(&cycle_step(&WalkSpec::cycle(4, FRAC_PI_4, Variant::Alternative, 1)).unwrap());
    let out = apply_circuit(&StateVector::zero(4).unwrap(), &step).unwrap();
    let p = measure_distribution(&out);
    let allowed = [0, 1, 2, 15];
    let stray: f64 = (0..16)
        .filter(|x| !allowed.contains(x))
        .map(|x| p.probs()[x])
        .sum();
    let total: f64 = p.probs().iter().sum();
    ensure(stray <= 1e-12 && (total - 1.0).abs() <= 1e-12, || {
        format!("mass outside {{0,1,2,15}} = {stray:e}, total = {total}")
    })?;
    Ok(format!("support {:?}, total {total:.15}", p.support(1e-12)))
}

fn search_p0(n: usize, exact: bool) -> f64 {
    run_search(
        &SearchConfig {
            n,
            steps: Some(3),
            exact_reflection: exact,
        },
        Sampling::default(),
    )
    .unwrap()
    .success_probability
    .unwrap()
}

fn criterion_5() -> Check {
    let exact = search_p0(4, true);
    let closed = grover_recursion(16, 3);
    let formula = (7.0 * 0.25f64.asin()).sin().powi(2);
    let r3 = search_p0(3, false);
    let r4 = search_p0(4, false);
    let summary = format!(
        "exact n=4: {exact:.10} (oracle {closed:.10}); relaxed n=3: {r3:.4} > 0.375; relaxed n=4: {r4:.4} > 0.1875"
    );
    ensure(
        (exact - closed).abs() <= 1e-9
            && (closed - formula).abs() <= 1e-12
            && r3 > 0.375
            && r4 > 0.1875,
        || summary.clone(),
    )?;
    Ok(summary)
}

fn criterion_6() -> Check {
    let n = 3;
    let step = lowered(&cycle_step(&WalkSpec::cycle(n, FRAC_PI_4, Variant::Standard, 1)).unwrap());
    let mut state = apply_circuit(
        &StateVector::zero(n).unwrap(),
        &lowered(&pair_prep(n, 3, 4).unwrap()),
    )
    .unwrap();
    let mut rows = Vec::new();
    for _ in 0..8 {
        state = apply_circuit(&state, &step).unwrap();
        rows.push(measure_distribution(&state).probs().to_vec());
    }
    // independent evolution with the dense step
    let dense = dense_cycle_step(n, FRAC_PI_4);
    let mut amps = vec![c(0.0); 8];
    amps[3] = c(0.5f64.sqrt());
    amps[4] = c(0.5f64.sqrt());
    for (k, row) in rows.iter().enumerate() {
        amps = dense.apply_to(&amps);
        for (x, p) in row.iter().enumerate() {
            ensure((p - amps[x].norm_sqr()).abs() <= 1e-10, || {
                format!("step {} outcome {x} differs from dense", k + 1)
            })?;
            ensure((p - row[7 - x]).abs() <= 1e-10, || {
                format!("step {} asymmetric at {x}", k + 1)
            })?;
        }
        let total: f64 = row.iter().sum();
        ensure((total - 1.0).abs() <= 1e-12, || {
            format!("step {} sums to {total}", k + 1)
        })?;
    }
    let p1 = &rows[0];
    let mut order: Vec<usize> = (0..8).collect();
    order.sort_by(|&a, &b| p1[b].total_cmp(&p1[a]));
    let top = p1[order[0]];
    let peaks_at_2_5 = (p1[2] - p1[5]).abs() <= 1e-10
        && (p1[2] - top).abs() <= 1e-10
        && (0..8)
            .filter(|x| *x != 2 && *x != 5)
            .all(|x| p1[x] < top - 1e-10);
    let shown: Vec<String> = p1.iter().map(|p| format!("{p:.4}")).collect();
    ensure(peaks_at_2_5, || {
        format!(
            "symmetry and normalisation hold for all 8 steps, but step 1 = [{}]: maxima at {:?}, p(2)=p(5)={:.4}",
            shown.join(", "),
            (0..8).filter(|&x| (p1[x] - top).abs() <= 1e-10).collect::<Vec<_>>(),
            p1[2]
        )
    })?;
    Ok(format!("step 1 = [{}]", shown.join(", ")))
}

fn criterion_7() -> Check {
    let mut worst: f64 = 0.0;
    for n_per in 1..=3 {
        for phi in [0.5, FRAC_PI_2, PI, -2.0] {
            let full = unitary(&interaction_full(n_per, phi).unwrap());
            let d = full
                .phase_fit(&dense_interaction(n_per, phi, None))
                .deviation;
            worst = worst.max(d);
            for x0 in 0..1 << n_per {
                let m = unitary(&interaction_marked(n_per, phi, x0).unwrap());
                worst = worst.max(
                    m.phase_fit(&dense_interaction(n_per, phi, Some(x0)))
                        .deviation,
                );
            }
        }
    }
    ensure(worst <= 1e-10, || format!("worst deviation {worst:e}"))?;
    Ok(format!("full and marked, worst deviation {worst:.1e}"))
}

fn random_dist(rng: &mut ChaCha8Rng, len: usize) -> Distribution {
    let w: Vec<f64> = (0..len).map(|_| rng.random::<f64>() + 1e-9).collect();
    let s: f64 = w.iter().sum();
    let mut p: Vec<f64> = w.iter().map(|x| x / s).collect();
    let drift = 1.0 - p.iter().sum::<f64>();
    p[0] += drift;
    Distribution::new(p).unwrap()
}

fn criterion_8() -> Check {
    let d = |p: &[f64], q: &[f64]| {
        total_variation(
            &Distribution::new(p.to_vec()).unwrap(),
            &Distribution::new(q.to_vec()).unwrap(),
        )
        .unwrap()
    };
    let h = |p: &[f64], q: &[f64]| {
        hellinger(
            &Distribution::new(p.to_vec()).unwrap(),
            &Distribution::new(q.to_vec()).unwrap(),
        )
        .unwrap()
    };
    ensure(d(&[0.5, 0.5], &[0.5, 0.5]) == 0.0, || "d(p,p)".into())?;
    ensure((d(&[1.0, 0.0], &[0.0, 1.0]) - 1.0).abs() < 1e-15, || {
        "d disjoint".into()
    })?;
    ensure((d(&[0.5, 0.5], &[1.0, 0.0]) - 0.5).abs() < 1e-15, || {
        "d half".into()
    })?;
    ensure((h(&[1.0, 0.0], &[0.0, 1.0]) - 1.0).abs() < 1e-15, || {
        "h disjoint".into()
    })?;
    let hv = h(&[0.5, 0.5], &[1.0, 0.0]);
    ensure((hv - (1.0 - 0.5f64.sqrt()).sqrt()).abs() < 1e-15, || {
        format!("h half = {hv}")
    })?;

    let mut rng = ChaCha8Rng::seed_from_u64(20);
    for i in 0..1000 {
        let len = rng.random_range(2..=32);
        let p = random_dist(&mut rng, len);
        let q = random_dist(&mut rng, len);
        let (dpq, dqp) = (
            total_variation(&p, &q).unwrap(),
            total_variation(&q, &p).unwrap(),
        );
        let (hpq, hqp) = (hellinger(&p, &q).unwrap(), hellinger(&q, &p).unwrap());
        ensure(
            (dpq - dqp).abs() <= 1e-15 && (hpq - hqp).abs() <= 1e-15,
            || format!("pair {i} asymmetric"),
        )?;
        ensure(
            hpq * hpq <= dpq + 1e-12 && dpq <= 2f64.sqrt() * hpq + 1e-12,
            || format!("pair {i}: h={hpq} d={dpq}"),
        )?;
    }
    Ok(format!(
        "hand values plus 1000 seeded pairs, h(half)={hv:.4}"
    ))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 8] = [
        ("gate counts 21 / 13 / 8", criterion_1),
        ("increment maps |q> to |q+1>", criterion_2),
        ("oracle equivalence", criterion_3),
        ("16-cycle alternative step support", criterion_4),
        ("search success probabilities", criterion_5),
        ("8-cycle symmetric scenario", criterion_6),
        ("interaction diagonals", criterion_7),
        ("distribution metrics", criterion_8),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = run();
        let ms = start.elapsed().as_millis();
        match outcome {
            Ok(detail) => println!("criterion {} [{name}] PASS ({ms} ms): {detail}", i + 1),
            Err(detail) => {
                failed += 1;
                println!("criterion {} [{name}] FAIL ({ms} ms): {detail}", i + 1);
            }
        }
    }
    println!(
        "criterion 9 [hardware fidelity tables] SKIP: device data, formulas covered by criterion 8"
    );
    println!(
        "acceptance: {} passed, {failed} failed",
        criteria.len() - failed
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
