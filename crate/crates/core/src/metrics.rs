//! Distances between outcome distributions.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::sim::Distribution;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FidelityReport {
    /// Total variation distance.
    pub d: f64,
    /// Hellinger distance.
    pub h: f64,
    pub one_minus_d: f64,
    pub one_minus_h: f64,
}

fn paired<'a>(
    p: &'a Distribution,
    q: &'a Distribution,
) -> Result<impl Iterator<Item = (f64, f64)> + 'a> {
    if p.len() != q.len() {
        return Err(Error::LengthMismatch(p.len(), q.len()));
    }
    Ok(p.probs().iter().copied().zip(q.probs().iter().copied()))
}

/// `½ Σ |p_x − q_x|`
pub fn total_variation(p: &Distribution, q: &Distribution) -> Result<f64> {
    let d: f64 = paired(p, q)?.map(|(a, b)| (a - b).abs()).sum::<f64>() / 2.0;
    Ok(d.clamp(0.0, 1.0))
}

/// `sqrt(½ Σ (√p_x − √q_x)²)`
pub fn hellinger(p: &Distribution, q: &Distribution) -> Result<f64> {
    let h2: f64 = paired(p, q)?
        .map(|(a, b)| (a.sqrt() - b.sqrt()).powi(2))
        .sum::<f64>()
        / 2.0;
    Ok(h2.sqrt().clamp(0.0, 1.0))
}

pub fn fidelity_report(p: &Distribution, q: &Distribution) -> Result<FidelityReport> {
    let d = total_variation(p, q)?;
    let h = hellinger(p, q)?;
    Ok(FidelityReport {
        d,
        h,
        one_minus_d: 1.0 - d,
        one_minus_h: 1.0 - h,
    })
}
