//! Desk-scale convex hull oracle.
//!
//! Facets are found by brute force: every d-subset of points spans a
//! candidate hyperplane, which is kept when all points lie on one side.
//! Candidates with the same set of on-plane points are merged. The face
//! lattice is the closure of the facet point sets under intersection.
//!
//! This is deliberately simple. It is the ground truth that the sphere
//! maps are measured against, not a fast hull algorithm.

use crate::error::{Error, Result};
use crate::geom::{is_nondegenerate, AffineHyperplane, PointConfiguration, UnitDirection, RANK_REL_TOL};
use crate::linalg::{self, dot};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use std::collections::{BTreeSet, HashMap};

/// Default coplanarity tolerance, relative to the configuration diameter.
pub const COPLANAR_REL_TOL: f64 = 1e-9;
/// Default support tie tolerance, relative to the configuration diameter.
pub const TIE_REL_TOL: f64 = 1e-9;

pub type FaceId = usize;

/// Brute-force point limit for the given dimension.
pub fn point_limit(dim: usize) -> Option<usize> {
    match dim {
        1 => Some(1000),
        2 => Some(60),
        3 => Some(30),
        4 => Some(20),
        5 => Some(16),
        6 => Some(14),
        _ => None,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PointClass {
    Vertex,
    BoundaryNonvertex,
    Interior,
}

/// A facet: the configuration points on a supporting hyperplane.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Facet {
    /// Every configuration point on the hyperplane, sorted.
    pub vertex_indices: Vec<usize>,
    pub outward_normal: UnitDirection,
    pub offset: f64,
}

impl Facet {
    pub fn hyperplane(&self) -> AffineHyperplane {
        AffineHyperplane::new(self.outward_normal.clone(), self.offset)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Face {
    pub id: FaceId,
    pub dim: usize,
    /// Hull vertices of the face, sorted.
    pub vertex_indices: Vec<usize>,
    /// All configuration points lying on the face (vertices included).
    pub members: Vec<usize>,
    /// Indices into [`HullDescription::facets`].
    pub incident_facets: Vec<usize>,
}

/// Relative-boundary description of a face inside its own affine hull.
#[derive(Clone, Debug)]
struct FaceGeometry {
    origin: Vec<f64>,
    basis: Vec<Vec<f64>>,
    /// (subface, outward normal within the face's affine hull, offset)
    bounds: Vec<(FaceId, Vec<f64>, f64)>,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct HullTolerances {
    pub coplanarity: f64,
    pub tie: f64,
}

#[derive(Clone, Debug)]
pub struct HullDescription {
    config: PointConfiguration,
    tol: HullTolerances,
    facets: Vec<Facet>,
    faces: Vec<Face>,
    facet_faces: Vec<FaceId>,
    flags: Vec<PointClass>,
    containment: Vec<(FaceId, FaceId)>,
    children: Vec<Vec<FaceId>>,
    by_members: HashMap<Vec<usize>, FaceId>,
    geometry: Vec<Option<FaceGeometry>>,
}

fn for_each_combination(n: usize, k: usize, mut f: impl FnMut(&[usize])) {
    if k > n {
        return;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        f(&idx);
        // rightmost position that can still advance
        let Some(i) = (0..k).rev().find(|&i| idx[i] != i + n - k) else {
            return;
        };
        idx[i] += 1;
        for j in i + 1..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

fn is_subset(a: &[usize], b: &[usize]) -> bool {
    // both sorted
    let mut j = 0;
    for &x in a {
        while j < b.len() && b[j] < x {
            j += 1;
        }
        if j == b.len() || b[j] != x {
            return false;
        }
    }
    true
}

fn intersect(a: &[usize], b: &[usize]) -> Vec<usize> {
    a.iter().copied().filter(|x| b.binary_search(x).is_ok()).collect()
}

/// Builds the hull of a nondegenerate configuration.
///
/// `coplanarity_tol` defaults to `1e-9 × diameter`.
pub fn build_hull(config: &PointConfiguration, coplanarity_tol: Option<f64>) -> Result<HullDescription> {
    let d = config.dim();
    let n = config.len();
    let limit = point_limit(d).ok_or(Error::DimensionUnsupported { required: 6, found: d })?;
    if n > limit {
        return Err(Error::TooManyPoints { dim: d, limit, found: n });
    }
    if !is_nondegenerate(config, RANK_REL_TOL) {
        return Err(Error::DegenerateConfiguration {
            rank: config.affine_rank(RANK_REL_TOL),
            dim: d,
        });
    }
    let diam = config.diameter();
    let tol = HullTolerances {
        coplanarity: coplanarity_tol.unwrap_or(COPLANAR_REL_TOL * diam),
        tie: TIE_REL_TOL * diam,
    };

    let mut facets: Vec<Facet> = Vec::new();
    let mut seen: HashMap<Vec<usize>, usize> = HashMap::new();
    for_each_combination(n, d, |combo| {
        if facets.iter().any(|f| is_subset(combo, &f.vertex_indices)) {
            return;
        }
        let pts: Vec<&[f64]> = combo.iter().map(|&i| config.point(i)).collect();
        let Some(h) = AffineHyperplane::through(&pts, 1e-9) else {
            return;
        };
        let sd: Vec<f64> = config.points().map(|p| h.signed_distance(p)).collect();
        let h = if sd.iter().all(|&s| s <= tol.coplanarity) {
            h
        } else if sd.iter().all(|&s| s >= -tol.coplanarity) {
            h.flipped()
        } else {
            return;
        };
        let members: Vec<usize> = (0..n).filter(|&i| sd[i].abs() <= tol.coplanarity).collect();
        if seen.contains_key(&members) {
            return;
        }
        seen.insert(members.clone(), facets.len());
        facets.push(Facet {
            vertex_indices: members,
            outward_normal: h.normal,
            offset: h.offset,
        });
    });
    facets.sort_by(|a, b| a.vertex_indices.cmp(&b.vertex_indices));

    // a point is a vertex iff its incident facet normals span R^d
    let flags: Vec<PointClass> = (0..n)
        .map(|i| {
            let normals: Vec<Vec<f64>> = facets
                .iter()
                .filter(|f| f.vertex_indices.binary_search(&i).is_ok())
                .map(|f| f.outward_normal.as_slice().to_vec())
                .collect();
            if normals.is_empty() {
                PointClass::Interior
            } else if linalg::rank(&normals, d, 1e-9) == d {
                PointClass::Vertex
            } else {
                PointClass::BoundaryNonvertex
            }
        })
        .collect();

    // close facet point sets under intersection
    let mut sets: BTreeSet<Vec<usize>> = facets.iter().map(|f| f.vertex_indices.clone()).collect();
    loop {
        let current: Vec<Vec<usize>> = sets.iter().cloned().collect();
        let mut added = false;
        for a in 0..current.len() {
            for b in a + 1..current.len() {
                let s = intersect(&current[a], &current[b]);
                if !s.is_empty() && sets.insert(s) {
                    added = true;
                }
            }
        }
        if !added {
            break;
        }
    }

    let mut faces: Vec<Face> = sets
        .into_iter()
        .map(|members| {
            let vertex_indices: Vec<usize> = members
                .iter()
                .copied()
                .filter(|&i| flags[i] == PointClass::Vertex)
                .collect();
            let pts: Vec<&[f64]> = vertex_indices.iter().map(|&i| config.point(i)).collect();
            let dim = linalg::affine_rank(&pts, 1e-9);
            let incident_facets = facets
                .iter()
                .enumerate()
                .filter(|(_, f)| is_subset(&members, &f.vertex_indices))
                .map(|(k, _)| k)
                .collect();
            Face {
                id: 0,
                dim,
                vertex_indices,
                members,
                incident_facets,
            }
        })
        .collect();
    faces.sort_by(|a, b| (a.dim, &a.vertex_indices).cmp(&(b.dim, &b.vertex_indices)));
    for (k, f) in faces.iter_mut().enumerate() {
        f.id = k;
    }
    let by_members: HashMap<Vec<usize>, FaceId> = faces.iter().map(|f| (f.members.clone(), f.id)).collect();
    let facet_faces: Vec<FaceId> = facets.iter().map(|f| by_members[&f.vertex_indices]).collect();

    let mut containment = Vec::new();
    let mut children = vec![Vec::new(); faces.len()];
    for g in &faces {
        for f in &faces {
            if f.dim == g.dim + 1 && is_subset(&g.members, &f.members) {
                containment.push((g.id, f.id));
                children[f.id].push(g.id);
            }
        }
    }

    let mut hull = HullDescription {
        config: config.clone(),
        tol,
        facets,
        faces,
        facet_faces,
        flags,
        containment,
        children,
        by_members,
        geometry: Vec::new(),
    };
    hull.geometry = (0..hull.faces.len()).map(|id| hull.face_geometry(id)).collect();
    Ok(hull)
}

impl HullDescription {
    pub fn config(&self) -> &PointConfiguration {
        &self.config
    }

    pub fn dim(&self) -> usize {
        self.config.dim()
    }

    pub fn tolerances(&self) -> HullTolerances {
        self.tol
    }

    /// Replaces the support tie tolerance used by [`classify_direction`].
    pub fn with_tie_tolerance(mut self, tie: f64) -> Self {
        self.tol.tie = tie;
        self
    }

    pub fn facets(&self) -> &[Facet] {
        &self.facets
    }

    pub fn faces(&self) -> &[Face] {
        &self.faces
    }

    pub fn face(&self, id: FaceId) -> Result<&Face> {
        self.faces.get(id).ok_or(Error::UnknownFace(id))
    }

    /// Face id of the k-th facet.
    pub fn facet_face(&self, k: usize) -> FaceId {
        self.facet_faces[k]
    }

    /// Facet index of a face that is a facet.
    pub fn facet_of_face(&self, id: FaceId) -> Option<usize> {
        self.facet_faces.iter().position(|&f| f == id)
    }

    pub fn vertex_flags(&self) -> &[PointClass] {
        &self.flags
    }

    pub fn vertices(&self) -> Vec<usize> {
        (0..self.flags.len()).filter(|&i| self.flags[i] == PointClass::Vertex).collect()
    }

    /// Covering pairs `(sub, super)` with `dim(super) = dim(sub) + 1`.
    pub fn containment(&self) -> &[(FaceId, FaceId)] {
        &self.containment
    }

    /// Faces covered by `id` (one dimension lower).
    pub fn subfaces(&self, id: FaceId) -> &[FaceId] {
        &self.children[id]
    }

    pub fn face_with_members(&self, members: &[usize]) -> Option<FaceId> {
        self.by_members.get(members).copied()
    }

    /// Number of faces per dimension, `f_0, …, f_{d-1}`.
    pub fn f_vector(&self) -> Vec<usize> {
        let mut f = vec![0; self.dim()];
        for face in &self.faces {
            f[face.dim] += 1;
        }
        f
    }

    /// `true` when `sub`'s points are all on `sup`.
    pub fn is_subface(&self, sub: FaceId, sup: FaceId) -> bool {
        is_subset(&self.faces[sub].members, &self.faces[sup].members)
    }

    fn face_geometry(&self, id: FaceId) -> Option<FaceGeometry> {
        let face = &self.faces[id];
        if face.dim == 0 {
            return None;
        }
        let origin = self.config.point(face.vertex_indices[0]).to_vec();
        let diffs: Vec<Vec<f64>> = face.vertex_indices[1..]
            .iter()
            .map(|&v| linalg::sub(self.config.point(v), &origin))
            .collect();
        let basis = linalg::orthonormal_basis(&diffs, 1e-9);
        let mut bounds = Vec::new();
        for &g in &self.children[id] {
            let sub = &self.faces[g];
            let g0 = self.config.point(sub.vertex_indices[0]);
            let sub_diffs: Vec<Vec<f64>> = sub.vertex_indices[1..]
                .iter()
                .map(|&v| linalg::sub(self.config.point(v), g0))
                .collect();
            let sub_basis = linalg::orthonormal_basis(&sub_diffs, 1e-9);
            // a vertex of the face off the subface points inward
            let Some(&w) = face
                .vertex_indices
                .iter()
                .find(|v| sub.vertex_indices.binary_search(v).is_err())
            else {
                continue;
            };
            let mut r = linalg::sub(self.config.point(w), g0);
            for b in &sub_basis {
                let c = dot(&r, b);
                linalg::axpy(-c, b, &mut r);
            }
            let Some(inward) = linalg::normalized(&r) else { continue };
            let outward = linalg::scale(&inward, -1.0);
            let offset = dot(&outward, g0);
            bounds.push((g, outward, offset));
        }
        Some(FaceGeometry { origin, basis, bounds })
    }

    /// Euclidean distance from `p` to the face, with the lowest-dimensional
    /// face on which the nearest point lies.
    pub fn distance_to_face(&self, id: FaceId, p: &[f64]) -> (f64, FaceId) {
        let face = &self.faces[id];
        let Some(geo) = &self.geometry[id] else {
            return (linalg::dist(p, self.config.point(face.vertex_indices[0])), id);
        };
        let rel = linalg::sub(p, &geo.origin);
        let mut q = geo.origin.clone();
        for b in &geo.basis {
            linalg::axpy(dot(&rel, b), b, &mut q);
        }
        let violated: Vec<FaceId> = geo
            .bounds
            .iter()
            .filter(|(_, u, off)| dot(u, &q) - off > 0.0)
            .map(|(g, _, _)| *g)
            .collect();
        if violated.is_empty() {
            return (linalg::dist(p, &q), id);
        }
        violated
            .into_iter()
            .map(|g| self.distance_to_face(g, p))
            .min_by(|a, b| a.0.total_cmp(&b.0))
            .unwrap()
    }

    /// Signed distances `<n_F, p> - offset_F` to every facet hyperplane.
    pub fn facet_signed_distances(&self, p: &[f64]) -> Vec<f64> {
        self.facets
            .iter()
            .map(|f| dot(f.outward_normal.as_slice(), p) - f.offset)
            .collect()
    }

    /// Boundary distance of the convex combination `Σ λ_i x_i`, evaluated
    /// as `min_F Σ λ_i (offset_F - <n_F, x_i>)` with the points of `F`
    /// contributing exactly zero. Unlike [`boundary_distance`] on the
    /// rounded coordinates this stays positive when the combination sits
    /// within an ulp of a vertex. Negative only if some weight is negative.
    pub fn barycentric_depth(&self, lambdas: &[f64]) -> f64 {
        self.facets
            .iter()
            .map(|f| {
                (0..self.config.len())
                    .filter(|i| f.vertex_indices.binary_search(i).is_err())
                    .map(|i| lambdas[i] * (f.offset - dot(f.outward_normal.as_slice(), self.config.point(i))))
                    .sum::<f64>()
            })
            .fold(f64::INFINITY, f64::min)
    }

    /// Simplices (vertex index lists) triangulating a face, by pulling
    /// its lowest-index vertex.
    pub fn triangulate_face(&self, id: FaceId) -> Vec<Vec<usize>> {
        let face = &self.faces[id];
        if face.dim == 0 || face.vertex_indices.len() == face.dim + 1 {
            return vec![face.vertex_indices.clone()];
        }
        let apex = face.vertex_indices[0];
        let mut out = Vec::new();
        for &g in &self.children[id] {
            if self.faces[g].vertex_indices.binary_search(&apex).is_ok() {
                continue;
            }
            for mut s in self.triangulate_face(g) {
                s.insert(0, apex);
                out.push(s);
            }
        }
        out
    }

    /// `count` points drawn uniformly from a face.
    pub fn sample_face(&self, id: FaceId, count: usize, rng: &mut ChaCha8Rng) -> Vec<Vec<f64>> {
        let simplices = self.triangulate_face(id);
        let vols: Vec<f64> = simplices
            .iter()
            .map(|s| {
                let pts: Vec<&[f64]> = s.iter().map(|&i| self.config.point(i)).collect();
                linalg::simplex_volume(&pts)
            })
            .collect();
        let total: f64 = vols.iter().sum();
        (0..count)
            .map(|_| {
                let mut pick = rng.random::<f64>() * total;
                let mut k = 0;
                while k + 1 < vols.len() && pick >= vols[k] {
                    pick -= vols[k];
                    k += 1;
                }
                let s = &simplices[k];
                // flat Dirichlet weights from unit exponentials
                let w: Vec<f64> = s.iter().map(|_| -(1.0 - rng.random::<f64>()).ln()).collect();
                let wsum: f64 = w.iter().sum();
                let mut x = vec![0.0; self.dim()];
                for (&i, wi) in s.iter().zip(&w) {
                    linalg::axpy(wi / wsum, self.config.point(i), &mut x);
                }
                x
            })
            .collect()
    }
}

/// The face whose relative interior contains the normal direction `n`,
/// found as the face spanned by the maximizers of `<n, x_i>`.
pub fn classify_direction(hull: &HullDescription, n: &UnitDirection, tie_tol: Option<f64>) -> Result<FaceId> {
    let tie = tie_tol.unwrap_or(hull.tol.tie);
    let maximizers = support_set(hull.config(), n, tie)?;
    if let Some(id) = hull.face_with_members(&maximizers) {
        return Ok(id);
    }
    // maximal faces inside the tie set
    let inside: Vec<FaceId> = hull
        .faces
        .iter()
        .filter(|f| is_subset(&f.members, &maximizers))
        .map(|f| f.id)
        .collect();
    let competing = inside
        .iter()
        .copied()
        .filter(|&a| !inside.iter().any(|&b| b != a && hull.is_subface(a, b)))
        .collect();
    Err(Error::AmbiguousTie { maximizers, competing })
}

/// Indices within `tie` of the maximal support value `max_i <n, x_i>`.
pub fn support_set(config: &PointConfiguration, n: &UnitDirection, tie: f64) -> Result<Vec<usize>> {
    if n.dim() != config.dim() {
        return Err(Error::DimensionMismatch {
            expected: config.dim(),
            found: n.dim(),
        });
    }
    let s: Vec<f64> = config.points().map(|p| dot(n.as_slice(), p)).collect();
    let top = s.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    Ok((0..s.len()).filter(|&i| s[i] >= top - tie).collect())
}

/// Gap between the largest and second-largest support values.
pub fn support_margin(config: &PointConfiguration, n: &UnitDirection) -> f64 {
    let mut s: Vec<f64> = config.points().map(|p| dot(n.as_slice(), p)).collect();
    s.sort_by(|a, b| b.total_cmp(a));
    if s.len() < 2 {
        return f64::INFINITY;
    }
    s[0] - s[1]
}

/// Direct test of `<n, n_ij> ≤ 0` (or `< 0` when `strict`) for all `j ≠ i`.
pub fn in_normal_spherical_polytope(config: &PointConfiguration, i: usize, n: &UnitDirection, strict: bool) -> bool {
    (0..config.len()).filter(|&j| j != i).all(|j| {
        let s = dot(n.as_slice(), config.dir(i, j));
        if strict {
            s < 0.0
        } else {
            s <= 0.0
        }
    })
}

/// Distance from `p` to the hull boundary and the nearest face.
pub fn boundary_distance(hull: &HullDescription, p: &[f64]) -> (f64, FaceId) {
    let sd = hull.facet_signed_distances(p);
    if sd.iter().all(|&s| s <= 0.0) {
        // inside: the nearest boundary point is on the closest facet plane
        let (k, s) = sd
            .iter()
            .enumerate()
            .max_by(|a, b| a.1.total_cmp(b.1))
            .expect("hull has facets");
        return (-s, hull.facet_face(k));
    }
    (0..hull.facets.len())
        .map(|k| hull.distance_to_face(hull.facet_face(k), p))
        .min_by(|a, b| a.0.total_cmp(&b.0))
        .expect("hull has facets")
}

/// `per_facet` uniform points on every facet, tagged with the facet's face id.
pub fn sample_boundary(hull: &HullDescription, per_facet: usize, seed: u64) -> Vec<(Vec<f64>, FaceId)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(per_facet * hull.facets.len());
    for k in 0..hull.facets.len() {
        let id = hull.facet_face(k);
        for p in hull.sample_face(id, per_facet, &mut rng) {
            out.push((p, id));
        }
    }
    out
}
