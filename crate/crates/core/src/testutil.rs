//! Reference matrices built straight from gate definitions, independent of
//! the simulator's gate kernel.

use ndarray::Array2;
use num_complex::Complex64;

use crate::sim::DenseUnitary;

pub fn mat2(a: Complex64, b: Complex64, c: Complex64, d: Complex64) -> [[Complex64; 2]; 2] {
    [[a, b], [c, d]]
}

/// `m` on `target`, conditioned on every qubit in `controls` being 1.
pub fn mc_dense(
    n: usize,
    controls: &[usize],
    target: usize,
    m: [[Complex64; 2]; 2],
) -> DenseUnitary {
    let dim = 1usize << n;
    let bit = |q: usize| 1usize << (n - 1 - q);
    let mut u = Array2::<Complex64>::zeros((dim, dim));
    for col in 0..dim {
        let fires = controls.iter().all(|&c| col & bit(c) != 0);
        if !fires {
            u[[col, col]] = Complex64::new(1.0, 0.0);
            continue;
        }
        let t_in = usize::from(col & bit(target) != 0);
        for (t_out, mrow) in m.iter().enumerate() {
            let row = (col & !bit(target)) | if t_out == 1 { bit(target) } else { 0 };
            u[[row, col]] = mrow[t_in];
        }
    }
    DenseUnitary::from_array(u).unwrap()
}

pub fn assert_phase_equal(actual: &DenseUnitary, reference: &DenseUnitary, tol: f64) {
    let fit = actual.phase_fit(reference);
    assert!(
        fit.within(tol),
        "deviation {:e} after fitting phase {}",
        fit.deviation,
        fit.phase
    );
}
