//! Hausdorff distances between finite sets and targets that can report a
//! point-to-set distance.

use crate::error::{Error, Result};
use crate::hull::{boundary_distance, FaceId, HullDescription};
use crate::linalg::{self, dot};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

/// Anything that can measure the distance from a point to itself.
pub trait DistanceOracle: Sync {
    fn distance(&self, p: &[f64]) -> f64;
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(from = "Vec<Vec<f64>>", into = "Vec<Vec<f64>>")]
pub struct FiniteSet {
    points: Vec<Vec<f64>>,
    /// Coordinate with the largest spread.
    axis: usize,
    /// Point indices sorted by that coordinate.
    order: Vec<usize>,
    keys: Vec<f64>,
}

impl From<Vec<Vec<f64>>> for FiniteSet {
    fn from(points: Vec<Vec<f64>>) -> Self {
        let dim = points.first().map_or(0, Vec::len);
        let spread = |c: usize| {
            let (lo, hi) = points
                .iter()
                .fold((f64::INFINITY, f64::NEG_INFINITY), |(a, b), p| (a.min(p[c]), b.max(p[c])));
            hi - lo
        };
        let axis = (0..dim).max_by(|&a, &b| spread(a).total_cmp(&spread(b))).unwrap_or(0);
        let mut order: Vec<usize> = (0..points.len()).collect();
        if dim > 0 {
            order.sort_by(|&a, &b| points[a][axis].total_cmp(&points[b][axis]));
        }
        let keys = order.iter().map(|&k| if dim > 0 { points[k][axis] } else { 0.0 }).collect();
        Self {
            points,
            axis,
            order,
            keys,
        }
    }
}

impl From<FiniteSet> for Vec<Vec<f64>> {
    fn from(s: FiniteSet) -> Self {
        s.points
    }
}

impl FiniteSet {
    pub fn new(points: Vec<Vec<f64>>) -> Result<Self> {
        if let Some(d) = points.first().map(Vec::len) {
            if let Some(p) = points.iter().find(|p| p.len() != d) {
                return Err(Error::DimensionMismatch {
                    expected: d,
                    found: p.len(),
                });
            }
        }
        Ok(Self::from(points))
    }

    pub fn points(&self) -> &[Vec<f64>] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// Index of and distance to the nearest point. Scans outward from `p`
    /// along the sorted axis and stops once the axis gap alone exceeds the
    /// best distance found.
    pub fn nearest(&self, p: &[f64]) -> Option<(usize, f64)> {
        if self.points.is_empty() {
            return None;
        }
        if p.is_empty() {
            return Some((0, 0.0));
        }
        let x = p[self.axis];
        let start = self.keys.partition_point(|&k| k < x);
        let (mut best_k, mut best) = (usize::MAX, f64::INFINITY);
        let (mut lo, mut hi) = (start, start);
        loop {
            let bound = best.sqrt();
            let left = lo > 0 && x - self.keys[lo - 1] <= bound;
            let right = hi < self.keys.len() && self.keys[hi] - x <= bound;
            if !left && !right {
                break;
            }
            let mut visit = |i: usize| {
                let k = self.order[i];
                let d2 = linalg::dist_sq(p, &self.points[k]);
                if d2 < best || (d2 == best && k < best_k) {
                    best = d2;
                    best_k = k;
                }
            };
            if left {
                lo -= 1;
                visit(lo);
            }
            if right {
                visit(hi);
                hi += 1;
            }
        }
        Some((best_k, best.sqrt()))
    }
}

impl DistanceOracle for FiniteSet {
    fn distance(&self, p: &[f64]) -> f64 {
        self.nearest(p).map_or(f64::INFINITY, |(_, d)| d)
    }
}

/// The boundary of a hull.
pub struct HullBoundary<'a>(pub &'a HullDescription);

impl DistanceOracle for HullBoundary<'_> {
    fn distance(&self, p: &[f64]) -> f64 {
        boundary_distance(self.0, p).0
    }
}

/// A single closed face of a hull.
pub struct HullFace<'a> {
    pub hull: &'a HullDescription,
    pub face: FaceId,
}

impl DistanceOracle for HullFace<'_> {
    fn distance(&self, p: &[f64]) -> f64 {
        self.hull.distance_to_face(self.face, p).0
    }
}

/// Union of closed segments joining consecutive vertices.
#[derive(Clone, Debug, PartialEq)]
pub struct Polyline(pub Vec<Vec<f64>>);

pub fn segment_distance(p: &[f64], a: &[f64], b: &[f64]) -> f64 {
    let ab = linalg::sub(b, a);
    let ap = linalg::sub(p, a);
    let len2 = dot(&ab, &ab);
    let t = if len2 > 0.0 { (dot(&ap, &ab) / len2).clamp(0.0, 1.0) } else { 0.0 };
    let mut q = a.to_vec();
    linalg::axpy(t, &ab, &mut q);
    linalg::dist(p, &q)
}

impl DistanceOracle for Polyline {
    fn distance(&self, p: &[f64]) -> f64 {
        match self.0.len() {
            0 => f64::INFINITY,
            1 => linalg::dist(p, &self.0[0]),
            _ => self
                .0
                .windows(2)
                .map(|w| segment_distance(p, &w[0], &w[1]))
                .fold(f64::INFINITY, f64::min),
        }
    }
}

/// Wraps a closure as an oracle.
pub struct FnOracle<F>(pub F);

impl<F: Fn(&[f64]) -> f64 + Sync> DistanceOracle for FnOracle<F> {
    fn distance(&self, p: &[f64]) -> f64 {
        (self.0)(p)
    }
}

/// `max_{a ∈ A} dist(a, target)`.
pub fn directed_hausdorff<T: DistanceOracle + ?Sized>(a: &FiniteSet, target: &T) -> Result<f64> {
    if a.is_empty() {
        return Err(Error::EmptySet);
    }
    Ok(a.points.par_iter().map(|p| target.distance(p)).reduce(|| 0.0, f64::max))
}

pub fn symmetric_hausdorff(a: &FiniteSet, b: &FiniteSet) -> Result<f64> {
    if a.is_empty() || b.is_empty() {
        return Err(Error::EmptySet);
    }
    Ok(directed_hausdorff(a, b)?.max(directed_hausdorff(b, a)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::hull::{build_hull, sample_boundary};

    fn set(points: &[&[f64]]) -> FiniteSet {
        FiniteSet::new(points.iter().map(|p| p.to_vec()).collect()).unwrap()
    }

    #[test]
    fn single_pair() {
        let a = set(&[&[0.0, 0.0]]);
        let b = set(&[&[3.0, 4.0]]);
        assert_eq!(directed_hausdorff(&a, &b).unwrap(), 5.0);
    }

    #[test]
    fn boundary_samples_are_on_the_boundary() {
        let h = build_hull(&fixtures::cube(), None).unwrap();
        let pts = sample_boundary(&h, 50, 3).into_iter().map(|(p, _)| p).collect();
        let a = FiniteSet::new(pts).unwrap();
        assert!(directed_hausdorff(&a, &HullBoundary(&h)).unwrap() < 1e-12);
    }

    #[test]
    fn points_to_segment() {
        let a = set(&[&[0.0, 0.0], &[1.0, 0.0]]);
        let seg = Polyline(vec![vec![0.0, 1.0], vec![1.0, 1.0]]);
        assert_eq!(directed_hausdorff(&a, &seg).unwrap(), 1.0);
    }

    #[test]
    fn symmetric_cases() {
        let a = set(&[&[0.0], &[10.0]]);
        let b = set(&[&[0.0]]);
        assert_eq!(symmetric_hausdorff(&a, &a).unwrap(), 0.0);
        assert_eq!(symmetric_hausdorff(&b, &a).unwrap(), 10.0);
        assert_eq!(directed_hausdorff(&b, &a).unwrap(), 0.0);
    }

    #[test]
    fn empty_sets_are_rejected() {
        let e = FiniteSet::new(vec![]).unwrap();
        let a = set(&[&[0.0]]);
        assert!(matches!(directed_hausdorff(&e, &a), Err(Error::EmptySet)));
        assert!(matches!(symmetric_hausdorff(&a, &e), Err(Error::EmptySet)));
    }

    #[test]
    fn face_oracle_matches_segment_distance() {
        let h = build_hull(&fixtures::unit_square(), None).unwrap();
        let top = h.face_with_members(&[2, 3]).unwrap();
        let oracle = HullFace { hull: &h, face: top };
        let seg = Polyline(vec![vec![1.0, 1.0], vec![0.0, 1.0]]);
        for p in [[0.5, 0.2], [2.0, 3.0], [-1.0, 1.0], [0.3, 1.5]] {
            assert!((oracle.distance(&p) - seg.distance(&p)).abs() < 1e-15);
        }
    }

    #[test]
    fn nearest_matches_brute_force() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(5);
        let pts: Vec<Vec<f64>> = (0..500).map(|_| vec![rng.random(), 3.0 * rng.random::<f64>(), rng.random()]).collect();
        let set = FiniteSet::new(pts.clone()).unwrap();
        assert_eq!(set.axis, 1);
        for _ in 0..200 {
            let q: Vec<f64> = (0..3).map(|_| 4.0 * rng.random::<f64>() - 1.0).collect();
            let brute = pts
                .iter()
                .enumerate()
                .map(|(k, p)| (k, linalg::dist(p, &q)))
                .min_by(|a, b| a.1.total_cmp(&b.1).then(a.0.cmp(&b.0)))
                .unwrap();
            let (k, d) = set.nearest(&q).unwrap();
            assert_eq!(k, brute.0);
            assert!((d - brute.1).abs() < 1e-15);
        }
    }

    #[test]
    fn mixed_dimensions_are_rejected() {
        assert!(FiniteSet::new(vec![vec![0.0], vec![0.0, 1.0]]).is_err());
    }
}
