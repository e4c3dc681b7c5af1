//! Convergence experiments: ε-sweeps measuring how fast the images
//! `f_ε(S^{d-1})` approach the hull boundary, face-limit probes,
//! degenerate configurations, the arctan graph example and the
//! indentations of planar image curves.

use crate::boundary_map::{check_epsilon, image_points};
use crate::error::{Error, Result};
use crate::fan::{face_center_direction, w_set_contains};
use crate::geom::{PointConfiguration, UnitDirection, RANK_REL_TOL};
use crate::hull::{boundary_distance, build_hull, sample_boundary, FaceId, HullDescription};
use crate::linalg::{self, dot};
use crate::metrics::{directed_hausdorff, segment_distance, FiniteSet, FnOracle, Polyline};
use crate::sampling::{sample, sample_log_polar, Focus, SamplePlan, Strategy};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;
use std::time::Instant;

pub fn default_epsilons() -> Vec<f64> {
    vec![1e-1, 1e-2, 1e-3, 1e-4]
}

/// Every ε in (0, 1] and the list strictly decreasing.
pub fn check_schedule(epsilons: &[f64]) -> Result<()> {
    if epsilons.is_empty() {
        return Err(Error::InvalidSchedule("empty ε list".into()));
    }
    for &e in epsilons {
        check_epsilon(e)?;
    }
    if epsilons.windows(2).any(|w| w[1] >= w[0]) {
        return Err(Error::InvalidSchedule("ε values must be strictly decreasing".into()));
    }
    Ok(())
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SweepOptions {
    pub label: String,
    /// Largest cap radius around each facet normal.
    pub cap_radius: f64,
    /// Samples per cap level and facet.
    pub cap_count: usize,
    /// Caps shrink down to `min_radius_factor × ε`.
    pub min_radius_factor: f64,
    /// Arc points per ridge at which the ridge's normal arc is crossed.
    pub crossing_positions: usize,
    /// Largest transverse offset of a crossing.
    pub crossing_reach: f64,
    pub crossing_per_decade: usize,
}

impl Default for SweepOptions {
    fn default() -> Self {
        Self {
            label: "config".into(),
            cap_radius: 0.5,
            cap_count: 4096,
            min_radius_factor: 1e-3,
            crossing_positions: 3,
            crossing_reach: 0.2,
            crossing_per_decade: 64,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ConvergenceRow {
    pub epsilon: f64,
    pub outer_dist: f64,
    pub inner_dist: f64,
    pub n_samples: usize,
    pub wall_ms: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ConvergenceReport {
    pub config_id: String,
    pub epsilons: Vec<f64>,
    pub rows: Vec<ConvergenceRow>,
    /// Boundary samples the inner distance is measured from.
    pub n_boundary: usize,
    /// Least-squares slope of `ln outer_dist` against `ln ε`.
    pub slope: f64,
    pub intercept: f64,
    pub fit_residual: f64,
    /// Number of rows (the smallest ε values) entering the fit.
    pub fit_points: usize,
}

/// Fits `ln y = slope · ln ε + c` over the rows within three decades of
/// the smallest ε.
pub fn fit_slope(epsilons: &[f64], values: &[f64]) -> (f64, f64, f64, usize) {
    let smallest = epsilons.iter().copied().fold(f64::INFINITY, f64::min);
    let (x, y): (Vec<f64>, Vec<f64>) = epsilons
        .iter()
        .zip(values)
        .filter(|(e, v)| **e <= smallest * 1e3 * (1.0 + 1e-9) && **v > 0.0)
        .map(|(e, v)| (e.ln(), v.ln()))
        .unzip();
    if x.len() < 2 {
        return (f64::NAN, f64::NAN, f64::NAN, x.len());
    }
    let (s, c, r) = linalg::linear_fit(&x, &y);
    (s, c, r, x.len())
}

fn facet_caps(hull: &HullDescription, plan: &SamplePlan, opts: &SweepOptions, min_radius: f64) -> Result<Vec<UnitDirection>> {
    let mut out = Vec::new();
    for (k, f) in hull.facets().iter().enumerate() {
        let p = SamplePlan::new(plan.dim, plan.strategy, opts.cap_count, plan.seed.wrapping_add(1000 * (k as u64 + 1)))
            .with_cap(Some(hull.facet_face(k)), opts.cap_radius);
        out.extend(sample_log_polar(&p, &f.outward_normal, min_radius)?);
    }
    Ok(out)
}

/// Point at angle `theta` from `a` on the great circle towards `b`.
fn arc_point(a: &[f64], b: &[f64], theta: f64) -> Option<Vec<f64>> {
    let mut t = b.to_vec();
    linalg::axpy(-dot(a, b), a, &mut t);
    let t = linalg::normalized(&t)?;
    let mut p = linalg::scale(a, theta.cos());
    linalg::axpy(theta.sin(), &t, &mut p);
    Some(p)
}

/// Unit directions spanning the ridge, along which a direction leaves the
/// arc of its normal region towards the regions of the ridge's vertices.
fn ridge_transverse(hull: &HullDescription, ridge: FaceId, seed: u64) -> Vec<Vec<f64>> {
    let f = &hull.faces()[ridge];
    let p0 = hull.config().point(f.vertex_indices[0]);
    let diffs: Vec<Vec<f64>> = f.vertex_indices[1..]
        .iter()
        .map(|&v| linalg::sub(hull.config().point(v), p0))
        .collect();
    let basis = linalg::orthonormal_basis(&diffs, 1e-9);
    let mut out: Vec<Vec<f64>> = basis.iter().flat_map(|b| [b.clone(), linalg::scale(b, -1.0)]).collect();
    if basis.len() > 1 {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for _ in 0..8 {
            let mut v = vec![0.0; hull.dim()];
            for b in &basis {
                linalg::axpy(rng.sample::<f64, _>(rand_distr::StandardNormal), b, &mut v);
            }
            out.extend(linalg::normalized(&v));
        }
    }
    out
}

/// Directions `normalize(m + s·u)` for every base point `m`, transverse
/// direction `u` and `s` log-spaced from `s_max` down to `s_min`.
fn crossings(bases: &[Vec<f64>], transverse: &[Vec<f64>], s_max: f64, s_min: f64, per_decade: usize) -> Result<Vec<UnitDirection>> {
    let steps = ((s_max / s_min).log10() * per_decade as f64).ceil() as usize;
    let mut out = Vec::new();
    for m in bases {
        out.push(UnitDirection::new(m.clone())?);
        for u in transverse {
            for k in 0..=steps {
                let mut n = m.clone();
                linalg::axpy(s_max * 10f64.powf(-(k as f64) / per_decade as f64), u, &mut n);
                out.push(UnitDirection::new(n)?);
            }
        }
    }
    Ok(out)
}

/// Crossings of the arcs that form the normal regions of ridges, at
/// interior points of each arc. Only present for `d ≥ 3`.
fn ridge_crossings(hull: &HullDescription, opts: &SweepOptions, s_min: f64, seed: u64) -> Result<Vec<UnitDirection>> {
    let d = hull.dim();
    let mut out = Vec::new();
    if d < 3 {
        return Ok(out);
    }
    for f in hull.faces().iter().filter(|f| f.dim == d - 2 && f.incident_facets.len() == 2) {
        let a = hull.facets()[f.incident_facets[0]].outward_normal.as_slice();
        let b = hull.facets()[f.incident_facets[1]].outward_normal.as_slice();
        let arc = dot(a, b).clamp(-1.0, 1.0).acos();
        let bases: Vec<Vec<f64>> = (1..=opts.crossing_positions)
            .filter_map(|k| arc_point(a, b, arc * k as f64 / (opts.crossing_positions + 1) as f64))
            .collect();
        let transverse = ridge_transverse(hull, f.id, seed);
        out.extend(crossings(&bases, &transverse, opts.crossing_reach, s_min, opts.crossing_per_decade)?);
    }
    Ok(out)
}

/// Outer and inner distances between `f_ε(S^{d-1})` and the hull boundary
/// for each ε, with the fitted convergence order.
pub fn theorem_sweep(
    hull: &HullDescription,
    epsilons: &[f64],
    global_plan: &SamplePlan,
    boundary_per_facet: usize,
) -> Result<ConvergenceReport> {
    theorem_sweep_with(hull, epsilons, global_plan, boundary_per_facet, &SweepOptions::default())
}

pub fn theorem_sweep_with(
    hull: &HullDescription,
    epsilons: &[f64],
    global_plan: &SamplePlan,
    boundary_per_facet: usize,
    opts: &SweepOptions,
) -> Result<ConvergenceReport> {
    check_schedule(epsilons)?;
    let config = hull.config();
    if global_plan.dim != config.dim() {
        return Err(Error::DimensionMismatch {
            expected: config.dim(),
            found: global_plan.dim,
        });
    }
    let global = sample(global_plan)?;
    let boundary = FiniteSet::new(
        sample_boundary(hull, boundary_per_facet.max(1), global_plan.seed)
            .into_iter()
            .map(|(p, _)| p)
            .collect(),
    )?;
    let rows = epsilons
        .par_iter()
        .map(|&eps| -> Result<ConvergenceRow> {
            let start = Instant::now();
            let mut dirs = global.clone();
            dirs.extend(facet_caps(hull, global_plan, opts, opts.min_radius_factor * eps)?);
            dirs.extend(ridge_crossings(hull, opts, 0.1 * opts.min_radius_factor * eps, global_plan.seed)?);
            let images = image_points(config, eps, &dirs)?;
            let outer_dist = images
                .par_iter()
                .map(|p| boundary_distance(hull, p).0)
                .reduce(|| 0.0, f64::max);
            let cloud = FiniteSet::new(images)?;
            let inner_dist = directed_hausdorff(&boundary, &cloud)?;
            Ok(ConvergenceRow {
                epsilon: eps,
                outer_dist,
                inner_dist,
                n_samples: dirs.len(),
                wall_ms: start.elapsed().as_secs_f64() * 1e3,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let outer: Vec<f64> = rows.iter().map(|r| r.outer_dist).collect();
    let (slope, intercept, fit_residual, fit_points) = fit_slope(epsilons, &outer);
    Ok(ConvergenceReport {
        config_id: opts.label.clone(),
        epsilons: epsilons.to_vec(),
        rows,
        n_boundary: boundary.len(),
        slope,
        intercept,
        fit_residual,
        fit_points,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FaceLimitRow {
    pub epsilon: f64,
    /// `max` over probe images of the distance to the face.
    pub image_to_face: f64,
    /// `max` over face samples of the distance to the probe images.
    pub face_to_image: f64,
    pub n_probe: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FaceLimitReport {
    pub face: FaceId,
    /// Face whose normal region the probe caps are centered in.
    pub center_face: FaceId,
    pub cap_radius: f64,
    pub rows: Vec<FaceLimitRow>,
}

/// Images of directions near the normal region of `face`, compared with
/// the face itself. The probe is a log-polar cap centered in the normal
/// region of `plan.focus.face` (default: `face`) reaching down to a
/// hundredth of the smallest ε, plus crossings of the ridge arcs inside
/// `face` when the cap is centered on it; only directions inside `W_face`
/// are kept.
pub fn face_limit_probe(hull: &HullDescription, face: FaceId, epsilons: &[f64], plan: &SamplePlan) -> Result<FaceLimitReport> {
    check_schedule(epsilons)?;
    let f = hull.face(face)?;
    if f.dim < 1 {
        return Err(Error::FaceTooSmall { face, dim: f.dim, min: 1 });
    }
    let focus = plan.focus.clone().unwrap_or(Focus {
        face: Some(face),
        cap_radius: 0.5,
    });
    let center_face = focus.face.unwrap_or(face);
    let center = face_center_direction(hull, center_face)?;
    let mut p = plan.clone();
    p.focus = Some(focus.clone());
    let smallest = epsilons[epsilons.len() - 1];
    let mut candidates = sample_log_polar(&p, &center, 0.01 * smallest)?;
    if center_face == face {
        candidates.extend(subridge_crossings(hull, face, &center, focus.cap_radius, 1e-3 * smallest, plan.seed)?);
    }
    let mut probe = Vec::new();
    for n in candidates {
        if w_set_contains(hull, face, &n)? {
            probe.push(n);
        }
    }
    if probe.is_empty() {
        return Err(Error::EmptyProbe);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(plan.seed);
    let mut face_pts: Vec<Vec<f64>> = f.vertex_indices.iter().map(|&i| hull.config().point(i).to_vec()).collect();
    face_pts.extend(hull.sample_face(face, plan.count, &mut rng));
    let face_set = FiniteSet::new(face_pts)?;
    let rows = epsilons
        .iter()
        .map(|&eps| -> Result<FaceLimitRow> {
            let images = image_points(hull.config(), eps, &probe)?;
            let image_to_face = images
                .par_iter()
                .map(|x| hull.distance_to_face(face, x).0)
                .reduce(|| 0.0, f64::max);
            let face_to_image = directed_hausdorff(&face_set, &FiniteSet::new(images)?)?;
            Ok(FaceLimitRow {
                epsilon: eps,
                image_to_face,
                face_to_image,
                n_probe: probe.len(),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(FaceLimitReport {
        face,
        center_face,
        cap_radius: focus.cap_radius,
        rows,
    })
}

/// Crossings of the normal arcs of the ridges inside `face`, at points
/// within `reach` of `center`.
fn subridge_crossings(
    hull: &HullDescription,
    face: FaceId,
    center: &UnitDirection,
    reach: f64,
    s_min: f64,
    seed: u64,
) -> Result<Vec<UnitDirection>> {
    let d = hull.dim();
    let mut out = Vec::new();
    if d < 3 {
        return Ok(out);
    }
    let c = center.as_slice();
    for g in hull.faces().iter().filter(|g| g.dim == d - 2 && g.incident_facets.len() == 2) {
        if !hull.is_subface(g.id, face) {
            continue;
        }
        let a = hull.facets()[g.incident_facets[0]].outward_normal.as_slice();
        let b = hull.facets()[g.incident_facets[1]].outward_normal.as_slice();
        let arc = dot(a, b).clamp(-1.0, 1.0).acos();
        let bases: Vec<Vec<f64>> = (1..16)
            .filter_map(|k| arc_point(a, b, arc * k as f64 / 16.0))
            .filter(|m| dot(m, c).clamp(-1.0, 1.0).acos() <= reach)
            .collect();
        let transverse = ridge_transverse(hull, g.id, seed);
        out.extend(crossings(&bases, &transverse, 0.2_f64.min(reach), s_min, 64)?);
    }
    Ok(out)
}

/// Affine span of a configuration with orthonormal in-span and normal bases.
struct Span {
    origin: Vec<f64>,
    basis: Vec<Vec<f64>>,
    normal: Vec<Vec<f64>>,
}

impl Span {
    fn of(config: &PointConfiguration) -> Self {
        let origin = config.point(0).to_vec();
        let diffs: Vec<Vec<f64>> = config.points().skip(1).map(|p| linalg::sub(p, &origin)).collect();
        let basis = linalg::orthonormal_basis(&diffs, RANK_REL_TOL * config.diameter());
        let normal = linalg::complement_basis(&basis, config.dim());
        Self { origin, basis, normal }
    }

    fn project(&self, p: &[f64]) -> Vec<f64> {
        let rel = linalg::sub(p, &self.origin);
        self.basis.iter().map(|b| dot(&rel, b)).collect()
    }

    fn lift(&self, y: &[f64]) -> Vec<f64> {
        let mut x = self.origin.clone();
        for (c, b) in y.iter().zip(&self.basis) {
            linalg::axpy(*c, b, &mut x);
        }
        x
    }

    fn normal_offset(&self, p: &[f64]) -> f64 {
        let rel = linalg::sub(p, &self.origin);
        self.normal.iter().map(|u| dot(&rel, u).powi(2)).sum::<f64>().sqrt()
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DegenerateRow {
    pub epsilon: f64,
    pub image_to_hull: f64,
    pub hull_to_image: f64,
    pub hausdorff: f64,
    pub n_samples: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DegenerateReport {
    /// Dimension of the affine span.
    pub rank: usize,
    pub hull_diameter: f64,
    pub rows: Vec<DegenerateRow>,
}

/// Directions `normalize(w + s·v)` with `w` normal to the span, `v` in it
/// and `s` log-spaced from 10 down to `s_min`. Near `w` the map behaves
/// like the map of the reduced configuration at `ε/s`, so the in-span
/// directions `v` include caps around the reduced facet normals.
fn near_normal_directions(span: &Span, inner: &HullDescription, dim: usize, s_min: f64, seed: u64) -> Result<Vec<UnitDirection>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut combo = |vs: &[Vec<f64>], k: usize| -> Vec<Vec<f64>> {
        (0..k)
            .filter_map(|_| {
                let mut v = vec![0.0; dim];
                for b in vs {
                    linalg::axpy(rng.sample::<f64, _>(rand_distr::StandardNormal), b, &mut v);
                }
                linalg::normalized(&v)
            })
            .collect()
    };
    let ws = if span.normal.len() == 1 {
        vec![span.normal[0].clone(), linalg::scale(&span.normal[0], -1.0)]
    } else {
        combo(&span.normal, 16)
    };
    let rank = span.basis.len();
    let lift_dir = |y: &[f64]| {
        let mut v = vec![0.0; dim];
        for (c, b) in y.iter().zip(&span.basis) {
            linalg::axpy(*c, b, &mut v);
        }
        v
    };
    let mut vs: Vec<Vec<f64>> = if rank == 1 {
        vec![span.basis[0].clone(), linalg::scale(&span.basis[0], -1.0)]
    } else {
        let global = SamplePlan::new(rank, Strategy::default_for(rank), 64, seed);
        sample(&global)?.iter().map(|u| lift_dir(u.as_slice())).collect()
    };
    if rank > 1 {
        let per_decade = if rank == 2 { 16 } else { 64 };
        for (k, f) in inner.facets().iter().enumerate() {
            let plan = SamplePlan::new(rank, Strategy::default_for(rank), per_decade, seed.wrapping_add(k as u64))
                .with_cap(None, 0.5);
            for u in sample_log_polar(&plan, &f.outward_normal, 0.5 * s_min)? {
                vs.push(lift_dir(u.as_slice()));
            }
        }
    }
    const PER_DECADE: usize = 96;
    let decades = 1.0 - s_min.log10();
    let steps = (decades * PER_DECADE as f64).ceil() as usize;
    let mut out = Vec::new();
    for w in &ws {
        out.push(UnitDirection::new(w.clone())?);
        for v in &vs {
            for k in 0..=steps {
                let s = 10f64.powf(1.0 - k as f64 / PER_DECADE as f64);
                let mut n = w.clone();
                linalg::axpy(s, v, &mut n);
                out.push(UnitDirection::new(n)?);
            }
        }
    }
    Ok(out)
}

/// Hausdorff distance between `f_ε(S^{d-1})` and the full
/// lower-dimensional hull of a degenerate configuration.
pub fn degenerate_limit_probe(config: &PointConfiguration, epsilons: &[f64], plan: &SamplePlan) -> Result<DegenerateReport> {
    check_schedule(epsilons)?;
    let span = Span::of(config);
    let rank = span.basis.len();
    if rank == config.dim() {
        return Err(Error::RequiresDegenerate);
    }
    let reduced: Vec<Vec<f64>> = config.points().map(|p| span.project(p)).collect();
    let inner = build_hull(&PointConfiguration::new(&reduced)?, None)?;
    let solid_distance = |p: &[f64]| {
        let y = span.project(p);
        let inside = inner.facet_signed_distances(&y).iter().all(|&s| s <= 0.0);
        let d_in = if inside { 0.0 } else { boundary_distance(&inner, &y).0 };
        d_in.hypot(span.normal_offset(p))
    };

    let mut rng = ChaCha8Rng::seed_from_u64(plan.seed);
    let mut k_pts: Vec<Vec<f64>> = reduced.clone();
    if rank == 1 {
        let (lo, hi) = reduced.iter().fold((f64::INFINITY, f64::NEG_INFINITY), |(a, b), y| (a.min(y[0]), b.max(y[0])));
        let m = plan.count.max(2);
        k_pts.extend((0..m).map(|k| vec![lo + (hi - lo) * k as f64 / (m - 1) as f64]));
    } else {
        k_pts.extend(sample_boundary(&inner, plan.count.div_ceil(inner.facets().len()), plan.seed).into_iter().map(|(p, _)| p));
        let (lo, hi): (Vec<f64>, Vec<f64>) = (0..rank)
            .map(|c| reduced.iter().fold((f64::INFINITY, f64::NEG_INFINITY), |(a, b), y| (a.min(y[c]), b.max(y[c]))))
            .unzip();
        let mut accepted = 0;
        while accepted < plan.count {
            let y: Vec<f64> = (0..rank).map(|c| lo[c] + (hi[c] - lo[c]) * rng.random::<f64>()).collect();
            if inner.facet_signed_distances(&y).iter().all(|&s| s <= 0.0) {
                k_pts.push(y);
                accepted += 1;
            }
        }
    }
    let k_set = FiniteSet::new(k_pts.iter().map(|y| span.lift(y)).collect())?;

    let mut dirs = sample(plan)?;
    let smallest = epsilons[epsilons.len() - 1];
    dirs.extend(near_normal_directions(&span, &inner, config.dim(), 1e-3 * smallest, plan.seed)?);
    let rows = epsilons
        .iter()
        .map(|&eps| -> Result<DegenerateRow> {
            let images = FiniteSet::new(image_points(config, eps, &dirs)?)?;
            let image_to_hull = directed_hausdorff(&images, &FnOracle(solid_distance))?;
            let hull_to_image = directed_hausdorff(&k_set, &images)?;
            Ok(DegenerateRow {
                epsilon: eps,
                image_to_hull,
                hull_to_image,
                hausdorff: image_to_hull.max(hull_to_image),
                n_samples: dirs.len(),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(DegenerateReport {
        rank,
        hull_diameter: config.diameter(),
        rows,
    })
}

/// `(2/π)(1−ε) arctan(x/ε)`, a smooth odd function whose graphs converge
/// to a step with a vertical riser.
pub fn arctan_graph(epsilon: f64, x: f64) -> f64 {
    2.0 / PI * (1.0 - epsilon) * (x / epsilon).atan()
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GraphLimitRow {
    pub epsilon: f64,
    pub hausdorff: f64,
    pub graph_to_curve: f64,
    pub curve_to_graph: f64,
    pub min_value: f64,
    pub max_value: f64,
    /// Values lie in `(−1+ε, 1−ε)` and reach both ends up to the
    /// analytic tail `(2/π)(1−ε)ε/L` of the finite grid.
    pub range_ok: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GraphLimitReport {
    pub half_width: f64,
    pub rows: Vec<GraphLimitRow>,
}

/// Distance from `p` to the polyline through `(xs[k], ys[k])` with `xs`
/// increasing; only segments that can beat the running best are visited.
fn graph_distance(xs: &[f64], ys: &[f64], p: &[f64]) -> f64 {
    let nseg = xs.len() - 1;
    let seg = |k: usize| segment_distance(p, &[xs[k], ys[k]], &[xs[k + 1], ys[k + 1]]);
    let start = xs.partition_point(|&x| x < p[0]).saturating_sub(1).min(nseg - 1);
    let mut best = seg(start);
    let mut k = start;
    while k > 0 && xs[k] >= p[0] - best {
        k -= 1;
        best = best.min(seg(k));
    }
    let mut k = start + 1;
    while k < nseg && xs[k] <= p[0] + best {
        best = best.min(seg(k));
        k += 1;
    }
    best
}

/// Hausdorff distance between the graph of [`arctan_graph`] over
/// `x_grid` and the limiting curve `{y=−1, x≤0} ∪ {x=0} ∪ {y=1, x≥0}`.
pub fn graph_limit_demo(epsilons: &[f64], x_grid: &[f64]) -> Result<GraphLimitReport> {
    for &e in epsilons {
        check_epsilon(e)?;
    }
    if x_grid.len() < 3 || x_grid.windows(2).any(|w| w[1] <= w[0]) {
        return Err(Error::InvalidSchedule("x grid must be strictly increasing with at least 3 points".into()));
    }
    let l = x_grid[x_grid.len() - 1];
    if l < 1.0 || (x_grid[0] + l).abs() > 1e-12 * l {
        return Err(Error::InvalidSchedule("x grid must span a symmetric interval [-L, L] with L ≥ 1".into()));
    }
    let limit = Polyline(vec![vec![-l, -1.0], vec![0.0, -1.0], vec![0.0, 1.0], vec![l, 1.0]]);
    let mut curve: Vec<Vec<f64>> = x_grid
        .iter()
        .flat_map(|&x| {
            let y = if x < 0.0 { -1.0 } else { 1.0 };
            let mut v = vec![vec![x, y]];
            if x == 0.0 {
                v.push(vec![0.0, -1.0]);
            }
            v
        })
        .collect();
    let m = x_grid.len();
    curve.extend((0..=m).map(|k| vec![0.0, -1.0 + 2.0 * k as f64 / m as f64]));
    let rows = epsilons
        .iter()
        .map(|&eps| {
            let ys: Vec<f64> = x_grid.iter().map(|&x| arctan_graph(eps, x)).collect();
            let graph_to_curve = x_grid
                .par_iter()
                .zip(&ys)
                .map(|(&x, &y)| crate::metrics::DistanceOracle::distance(&limit, &[x, y]))
                .reduce(|| 0.0, f64::max);
            let curve_to_graph = curve
                .par_iter()
                .map(|p| graph_distance(x_grid, &ys, p))
                .reduce(|| 0.0, f64::max);
            let min_value = ys.iter().copied().fold(f64::INFINITY, f64::min);
            let max_value = ys.iter().copied().fold(f64::NEG_INFINITY, f64::max);
            let top = 1.0 - eps;
            let tail = 2.0 / PI * top * eps / l + 1e-12;
            let range_ok = -top < min_value && max_value < top && top - max_value <= tail && min_value + top <= tail;
            GraphLimitRow {
                epsilon: eps,
                hausdorff: graph_to_curve.max(curve_to_graph),
                graph_to_curve,
                curve_to_graph,
                min_value,
                max_value,
                range_ok,
            }
        })
        .collect();
    Ok(GraphLimitReport { half_width: l, rows })
}

/// Indices of the vertices of a closed planar polyline where it turns
/// against its overall orientation. Turns with `|sin| ≤ 1e-9` count as
/// straight.
pub fn concave_turns(polyline: &[Vec<f64>]) -> Vec<usize> {
    let n = polyline.len();
    if n < 3 {
        return Vec::new();
    }
    let area: f64 = (0..n)
        .map(|i| {
            let (a, b) = (&polyline[i], &polyline[(i + 1) % n]);
            a[0] * b[1] - a[1] * b[0]
        })
        .sum();
    if area == 0.0 {
        return Vec::new();
    }
    let orient = area.signum();
    (0..n)
        .filter(|&i| {
            let prev = &polyline[(i + n - 1) % n];
            let (cur, next) = (&polyline[i], &polyline[(i + 1) % n]);
            let e1 = linalg::sub(cur, prev);
            let e2 = linalg::sub(next, cur);
            let cross = e1[0] * e2[1] - e1[1] * e2[0];
            orient * cross < -1e-9 * linalg::norm(&e1) * linalg::norm(&e2)
        })
        .collect()
}

/// Groups sorted cyclic indices into maximal runs of consecutive values.
pub fn cyclic_runs(indices: &[usize], n: usize) -> Vec<Vec<usize>> {
    let mut runs: Vec<Vec<usize>> = Vec::new();
    for &i in indices {
        match runs.last_mut() {
            Some(r) if *r.last().unwrap() + 1 == i => r.push(i),
            _ => runs.push(vec![i]),
        }
    }
    if runs.len() > 1 && runs[0][0] == 0 && *runs.last().unwrap().last().unwrap() == n - 1 {
        let first = runs.remove(0);
        runs.last_mut().unwrap().extend(first);
    }
    runs
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Indentation {
    /// Position in the angle-ordered sample.
    pub index: usize,
    pub direction: UnitDirection,
    pub point: Vec<f64>,
}

/// Concave turns of the planar image curve `f_ε(S^1)`, sampled in angle
/// order.
pub fn nonconvexity_probe(config: &PointConfiguration, epsilon: f64, plan: &SamplePlan) -> Result<Vec<Indentation>> {
    if config.dim() != 2 {
        return Err(Error::DimensionUnsupported {
            required: 2,
            found: config.dim(),
        });
    }
    let mut dirs = sample(plan)?;
    if plan.strategy != Strategy::UniformGrid2d {
        let angle = |n: &UnitDirection| n.as_slice()[1].atan2(n.as_slice()[0]);
        dirs.sort_by(|a, b| angle(a).total_cmp(&angle(b)));
    }
    let images = image_points(config, epsilon, &dirs)?;
    Ok(concave_turns(&images)
        .into_iter()
        .map(|i| Indentation {
            index: i,
            direction: dirs[i].clone(),
            point: images[i].clone(),
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn schedule_validation() {
        assert!(check_schedule(&default_epsilons()).is_ok());
        assert!(matches!(check_schedule(&[0.1, 0.1]), Err(Error::InvalidSchedule(_))));
        assert!(matches!(check_schedule(&[0.0]), Err(Error::InvalidEpsilon(_))));
        assert!(matches!(check_schedule(&[]), Err(Error::InvalidSchedule(_))));
    }

    #[test]
    fn slope_of_exact_power_law() {
        let eps = default_epsilons();
        let v: Vec<f64> = eps.iter().map(|e| 3.0 * e * e).collect();
        let (s, c, r, k) = fit_slope(&eps, &v);
        assert!((s - 2.0).abs() < 1e-12);
        assert!((c - 3f64.ln()).abs() < 1e-10);
        assert!(r < 1e-12);
        assert_eq!(k, 4);
        let five = [1.0, 0.1, 0.01, 0.001, 0.0001];
        assert_eq!(fit_slope(&five, &five).3, 4);
    }

    #[test]
    fn arctan_values() {
        assert!((arctan_graph(0.1, 0.1) - 0.45).abs() < 1e-12);
        assert_eq!(arctan_graph(0.3, 0.0), 0.0);
        assert_eq!(arctan_graph(0.01, -2.0), -arctan_graph(0.01, 2.0));
    }

    #[test]
    fn graph_distance_matches_brute_force() {
        let xs: Vec<f64> = (0..=200).map(|k| -2.0 + 0.02 * k as f64).collect();
        let ys: Vec<f64> = xs.iter().map(|&x| arctan_graph(0.05, x)).collect();
        let line = Polyline(xs.iter().zip(&ys).map(|(&x, &y)| vec![x, y]).collect());
        for p in [[0.0, 0.5], [1.3, -1.0], [-2.5, 0.2], [0.01, 0.9]] {
            let d = graph_distance(&xs, &ys, &p);
            assert!((d - crate::metrics::DistanceOracle::distance(&line, &p)).abs() < 1e-15);
        }
    }

    #[test]
    fn graph_grid_validation() {
        assert!(graph_limit_demo(&[0.1], &[-0.5, 0.0, 0.5]).is_err());
        assert!(graph_limit_demo(&[0.1], &[-2.0, 0.0, 1.0]).is_err());
        assert!(graph_limit_demo(&[0.0], &[-1.0, 0.0, 1.0]).is_err());
    }

    #[test]
    fn convex_polygon_has_no_concave_turns() {
        let sq = vec![vec![0.0, 0.0], vec![1.0, 0.0], vec![1.0, 1.0], vec![0.0, 1.0]];
        assert!(concave_turns(&sq).is_empty());
        let mut cw = sq.clone();
        cw.reverse();
        assert!(concave_turns(&cw).is_empty());
        let dart = vec![vec![0.0, 0.0], vec![2.0, 1.0], vec![0.0, 2.0], vec![0.5, 1.0]];
        assert_eq!(concave_turns(&dart), vec![3]);
    }

    #[test]
    fn runs_wrap_around() {
        assert_eq!(cyclic_runs(&[0, 1, 5, 6, 9], 10), vec![vec![5, 6], vec![9, 0, 1]]);
        assert_eq!(cyclic_runs(&[2], 10), vec![vec![2]]);
        assert!(cyclic_runs(&[], 10).is_empty());
    }

    #[test]
    fn probes_reject_wrong_inputs() {
        let plan = SamplePlan::new(2, Strategy::UniformGrid2d, 100, 0);
        let sq = build_hull(&fixtures::unit_square(), None).unwrap();
        let corner = sq.face_with_members(&[0]).unwrap();
        assert!(matches!(face_limit_probe(&sq, corner, &[0.1], &plan), Err(Error::FaceTooSmall { .. })));
        assert!(matches!(
            degenerate_limit_probe(&fixtures::triangle(), &[0.1], &plan),
            Err(Error::RequiresDegenerate)
        ));
        let p3 = SamplePlan::new(3, Strategy::Fibonacci3d, 100, 0);
        assert!(matches!(
            nonconvexity_probe(&fixtures::cube(), 0.1, &p3),
            Err(Error::DimensionUnsupported { .. })
        ));
    }

    #[test]
    fn probe_outside_w_set_is_empty() {
        let sq = build_hull(&fixtures::unit_square(), None).unwrap();
        let bottom = sq.face_with_members(&[0, 1]).unwrap();
        let opposite = sq.face_with_members(&[2, 3]).unwrap();
        let plan = SamplePlan::new(2, Strategy::UniformGrid2d, 50, 0).with_cap(Some(opposite), 0.3);
        assert!(matches!(face_limit_probe(&sq, bottom, &[0.1], &plan), Err(Error::EmptyProbe)));
    }

    #[test]
    fn small_triangle_sweep() {
        let h = build_hull(&fixtures::triangle(), None).unwrap();
        let plan = SamplePlan::new(2, Strategy::UniformGrid2d, 500, 0);
        let r = theorem_sweep(&h, &[0.1, 0.01], &plan, 20).unwrap();
        assert_eq!(r.rows.len(), 2);
        assert!(r.rows.iter().all(|row| row.outer_dist > 0.0));
        assert!(r.rows[1].outer_dist < r.rows[0].outer_dist);
        assert_eq!(r.fit_points, 2);
    }
}
