//! Point configurations, unit directions and affine hyperplanes.

use crate::error::{Error, Result};
use crate::linalg::{self, dot, norm};
use serde::{Deserialize, Serialize};

/// Default distinctness tolerance, relative to the configuration diameter.
pub const DISTINCT_REL_TOL: f64 = 1e-9;
/// Default relative singular-value threshold for the affine rank test.
pub const RANK_REL_TOL: f64 = 1e-9;

/// A direction on the unit sphere S^{d-1}.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct UnitDirection(Vec<f64>);

impl UnitDirection {
    /// Normalizes `v`; fails on zero or non-finite input.
    pub fn new(v: Vec<f64>) -> Result<Self> {
        let n = norm(&v);
        if !(n > 0.0 && n.is_finite()) {
            return Err(Error::ZeroVector(n));
        }
        if (n - 1.0).abs() <= 1e-15 {
            return Ok(Self(v));
        }
        Ok(Self(v.into_iter().map(|x| x / n).collect()))
    }

    /// Direction at angle `theta` in the plane.
    pub fn from_angle(theta: f64) -> Self {
        Self(vec![theta.cos(), theta.sin()])
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn into_inner(self) -> Vec<f64> {
        self.0
    }

    pub fn neg(&self) -> Self {
        Self(self.0.iter().map(|x| -x).collect())
    }

    /// Angle to another direction, in radians.
    pub fn angle_to(&self, other: &UnitDirection) -> f64 {
        dot(&self.0, &other.0).clamp(-1.0, 1.0).acos()
    }
}

impl AsRef<[f64]> for UnitDirection {
    fn as_ref(&self) -> &[f64] {
        &self.0
    }
}

/// Hyperplane `{x : <normal, x> = offset}`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AffineHyperplane {
    pub normal: UnitDirection,
    pub offset: f64,
}

impl AffineHyperplane {
    pub fn new(normal: UnitDirection, offset: f64) -> Self {
        Self { normal, offset }
    }

    /// Hyperplane through `points`, which must have affine rank `d - 1`.
    /// The orientation is arbitrary; use [`Self::flipped`] to reorient.
    pub fn through(points: &[&[f64]], tol: f64) -> Option<Self> {
        let dim = points.first()?.len();
        let diffs: Vec<Vec<f64>> = points[1..].iter().map(|p| linalg::sub(p, points[0])).collect();
        let basis = linalg::orthonormal_basis(&diffs, tol);
        if basis.len() + 1 != dim {
            return None;
        }
        let normal = linalg::complement_vector(&basis, dim)?;
        let offset = dot(&normal, points[0]);
        Some(Self {
            normal: UnitDirection(normal),
            offset,
        })
    }

    pub fn flipped(&self) -> Self {
        Self {
            normal: self.normal.neg(),
            offset: -self.offset,
        }
    }

    /// Positive on the side the normal points to.
    #[inline]
    pub fn signed_distance(&self, x: &[f64]) -> f64 {
        dot(self.normal.as_slice(), x) - self.offset
    }

    pub fn contains(&self, x: &[f64], tol: f64) -> bool {
        self.signed_distance(x).abs() <= tol
    }
}

/// `n` distinct labeled points in R^d together with the unit directions
/// `n_ij = (x_j - x_i) / |x_j - x_i|` for all ordered pairs.
#[derive(Clone, Debug)]
pub struct PointConfiguration {
    dim: usize,
    n: usize,
    coords: Vec<f64>,
    // n * n * dim, zero on the diagonal
    dirs: Vec<f64>,
    diameter: f64,
}

impl PointConfiguration {
    /// Builds a configuration with the default distinctness tolerance
    /// (`1e-9 × diameter`).
    pub fn new(raw: &[Vec<f64>]) -> Result<Self> {
        build_configuration(raw, None)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    #[inline]
    pub fn point(&self, i: usize) -> &[f64] {
        &self.coords[i * self.dim..(i + 1) * self.dim]
    }

    pub fn points(&self) -> impl Iterator<Item = &[f64]> {
        self.coords.chunks_exact(self.dim)
    }

    pub fn to_vecs(&self) -> Vec<Vec<f64>> {
        self.points().map(|p| p.to_vec()).collect()
    }

    /// Unit vector from `x_i` to `x_j`. Zero when `i == j`.
    #[inline]
    pub fn dir(&self, i: usize, j: usize) -> &[f64] {
        let base = (i * self.n + j) * self.dim;
        &self.dirs[base..base + self.dim]
    }

    pub fn diameter(&self) -> f64 {
        self.diameter
    }

    pub fn centroid(&self) -> Vec<f64> {
        let mut c = vec![0.0; self.dim];
        for p in self.points() {
            linalg::axpy(1.0, p, &mut c);
        }
        c.iter().map(|x| x / self.n as f64).collect()
    }

    pub fn check_index(&self, i: usize) -> Result<()> {
        if i < self.n {
            Ok(())
        } else {
            Err(Error::IndexOutOfRange { index: i, len: self.n })
        }
    }

    /// Affine rank of the points (d for nondegenerate configurations).
    pub fn affine_rank(&self, rank_tol: f64) -> usize {
        let refs: Vec<&[f64]> = self.points().collect();
        linalg::affine_rank(&refs, rank_tol)
    }

    /// Configuration with every point mapped through `x -> s x + t`.
    pub fn transformed(&self, s: f64, t: &[f64]) -> Result<Self> {
        let raw: Vec<Vec<f64>> = self
            .points()
            .map(|p| p.iter().zip(t).map(|(x, ti)| s * x + ti).collect())
            .collect();
        Self::new(&raw)
    }
}

/// Validates `raw` and caches the pairwise unit directions.
///
/// `distinctness_tol` defaults to `1e-9 × diameter`.
pub fn build_configuration(
    raw: &[Vec<f64>],
    distinctness_tol: Option<f64>,
) -> Result<PointConfiguration> {
    if raw.len() < 2 {
        return Err(Error::TooFewPoints {
            required: 2,
            found: raw.len(),
        });
    }
    let dim = raw[0].len();
    if dim == 0 {
        return Err(Error::DimensionMismatch { expected: 1, found: 0 });
    }
    for p in raw {
        if p.len() != dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                found: p.len(),
            });
        }
        if p.iter().any(|x| !x.is_finite()) {
            return Err(Error::InvalidPlan("non-finite coordinate".into()));
        }
    }
    let n = raw.len();
    let mut diameter: f64 = 0.0;
    for i in 0..n {
        for j in i + 1..n {
            diameter = diameter.max(linalg::dist(&raw[i], &raw[j]));
        }
    }
    let tol = distinctness_tol.unwrap_or(DISTINCT_REL_TOL * diameter);
    let mut dirs = vec![0.0; n * n * dim];
    for i in 0..n {
        for j in i + 1..n {
            let d = linalg::dist(&raw[i], &raw[j]);
            if d <= tol {
                return Err(Error::DuplicatePoints(i, j));
            }
            let bij = (i * n + j) * dim;
            let bji = (j * n + i) * dim;
            for k in 0..dim {
                let v = (raw[j][k] - raw[i][k]) / d;
                dirs[bij + k] = v;
                dirs[bji + k] = -v;
            }
        }
    }
    Ok(PointConfiguration {
        dim,
        n,
        coords: raw.iter().flatten().copied().collect(),
        dirs,
        diameter,
    })
}

/// True iff the points affinely span R^d.
pub fn is_nondegenerate(config: &PointConfiguration, rank_tol: f64) -> bool {
    config.affine_rank(rank_tol) == config.dim()
}
