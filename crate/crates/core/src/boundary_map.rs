//! The map family `f_ε : S^{d-1} → K°` and its barycentric weights.
//!
//! For a direction `n` the factor `c_ij = ε + max(0, -<n, n_ij>)` is small
//! when `x_j` lies "below" `x_i` as seen from `n`. Each point gets the
//! product `c_i = Π_{j≠i} c_ij`, and `f_ε(n)` is the convex combination of
//! the points with weights `λ_i = c_i / Σ_j c_j`.
//!
//! The products are accumulated as sums of logarithms and normalized after
//! subtracting the maximum, since `c_i` can be as small as `ε^{n-1}`.

use crate::error::{Error, Result};
use crate::geom::{PointConfiguration, UnitDirection};
use crate::linalg::{axpy, dot};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

/// Largest configuration the weight evaluation accepts.
pub const MAX_POINTS: usize = 1000;
/// Largest ambient dimension the weight evaluation accepts.
pub const MAX_DIM: usize = 6;

/// Barycentric weights of `f_ε(n)`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct WeightVector {
    pub epsilon: f64,
    pub direction: UnitDirection,
    pub lambdas: Vec<f64>,
    /// `log c_i(ε, n)`, unshifted.
    pub log_c: Vec<f64>,
}

impl WeightVector {
    /// Index of the largest weight (lowest index on ties).
    pub fn argmax(&self) -> usize {
        let mut best = 0;
        for (i, &l) in self.lambdas.iter().enumerate() {
            if l > self.lambdas[best] {
                best = i;
            }
        }
        best
    }
}

/// One evaluated image point `f_ε(n)`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MapImage {
    pub direction: UnitDirection,
    pub point: Vec<f64>,
}

pub fn check_epsilon(epsilon: f64) -> Result<()> {
    if epsilon > 0.0 && epsilon <= 1.0 {
        Ok(())
    } else {
        Err(Error::InvalidEpsilon(epsilon))
    }
}

fn check_direction(config: &PointConfiguration, n: &UnitDirection) -> Result<()> {
    if n.dim() != config.dim() {
        return Err(Error::DimensionMismatch {
            expected: config.dim(),
            found: n.dim(),
        });
    }
    Ok(())
}

fn check_limits(config: &PointConfiguration) -> Result<()> {
    if config.len() > MAX_POINTS || config.dim() > MAX_DIM {
        return Err(Error::NumericalOverflow {
            points: config.len(),
            dim: config.dim(),
        });
    }
    Ok(())
}

/// `c_ij(ε, n) = ε + max(0, -<n, n_ij>)`.
pub fn c_factor(
    config: &PointConfiguration,
    i: usize,
    j: usize,
    epsilon: f64,
    n: &UnitDirection,
) -> Result<f64> {
    config.check_index(i)?;
    config.check_index(j)?;
    if i == j {
        return Err(Error::SameIndex(i));
    }
    if !(epsilon > 0.0) {
        return Err(Error::InvalidEpsilon(epsilon));
    }
    check_direction(config, n)?;
    Ok(epsilon + (-dot(n.as_slice(), config.dir(i, j))).max(0.0))
}

/// Log-domain products `log c_i(ε, n)` for every point.
fn log_factors(config: &PointConfiguration, epsilon: f64, n: &[f64]) -> Vec<f64> {
    let m = config.len();
    let mut log_c = vec![0.0; m];
    for i in 0..m {
        for j in i + 1..m {
            // <n, n_ji> = -<n, n_ij>
            let s = dot(n, config.dir(i, j));
            log_c[i] += (epsilon + (-s).max(0.0)).ln();
            log_c[j] += (epsilon + s.max(0.0)).ln();
        }
    }
    log_c
}

/// Weights `λ_i(ε, n) = c_i / Δ`.
pub fn weights(config: &PointConfiguration, epsilon: f64, n: &UnitDirection) -> Result<WeightVector> {
    check_epsilon(epsilon)?;
    check_direction(config, n)?;
    check_limits(config)?;
    let log_c = log_factors(config, epsilon, n.as_slice());
    let top = log_c.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let shifted: Vec<f64> = log_c.iter().map(|l| (l - top).exp()).collect();
    let total: f64 = shifted.iter().sum();
    let lambdas = shifted.iter().map(|w| w / total).collect();
    Ok(WeightVector {
        epsilon,
        direction: n.clone(),
        lambdas,
        log_c,
    })
}

/// Convex combination of the points with the given weights, anchored at
/// the heaviest point so that images near a vertex keep full precision.
pub fn combine(config: &PointConfiguration, w: &WeightVector) -> Vec<f64> {
    let anchor = w.argmax();
    let base = config.point(anchor);
    let mut offset = vec![0.0; config.dim()];
    for (j, &l) in w.lambdas.iter().enumerate() {
        if j == anchor {
            continue;
        }
        let d: Vec<f64> = config.point(j).iter().zip(base).map(|(a, b)| a - b).collect();
        axpy(l, &d, &mut offset);
    }
    base.iter().zip(&offset).map(|(b, o)| b + o).collect()
}

/// `f_ε(n) = Σ λ_i(ε, n) x_i`.
pub fn evaluate(config: &PointConfiguration, epsilon: f64, n: &UnitDirection) -> Result<MapImage> {
    let w = weights(config, epsilon, n)?;
    Ok(MapImage {
        direction: n.clone(),
        point: combine(config, &w),
    })
}

/// [`evaluate`] over many directions, in parallel. Output order and
/// values are identical to a sequential loop.
pub fn evaluate_batch(
    config: &PointConfiguration,
    epsilon: f64,
    dirs: &[UnitDirection],
) -> Result<Vec<MapImage>> {
    dirs.par_iter().map(|n| evaluate(config, epsilon, n)).collect()
}

/// Image points only.
pub fn image_points(
    config: &PointConfiguration,
    epsilon: f64,
    dirs: &[UnitDirection],
) -> Result<Vec<Vec<f64>>> {
    Ok(evaluate_batch(config, epsilon, dirs)?
        .into_iter()
        .map(|m| m.point)
        .collect())
}

/// `c_i(n) = lim_{ε→0⁺} c_i(ε, n) = Π_{j≠i} max(0, -<n, n_ij>)`.
pub fn limit_factor(config: &PointConfiguration, i: usize, n: &UnitDirection) -> Result<f64> {
    config.check_index(i)?;
    check_direction(config, n)?;
    let mut prod = 1.0;
    for j in 0..config.len() {
        if j == i {
            continue;
        }
        let f = (-dot(n.as_slice(), config.dir(i, j))).max(0.0);
        if f == 0.0 {
            return Ok(0.0);
        }
        prod *= f;
    }
    Ok(prod)
}

/// Indices whose limit factor exceeds `tol`.
pub fn positive_limit_indices(config: &PointConfiguration, n: &UnitDirection, tol: f64) -> Result<Vec<usize>> {
    let mut out = Vec::new();
    for i in 0..config.len() {
        if limit_factor(config, i, n)? > tol {
            out.push(i);
        }
    }
    Ok(out)
}
