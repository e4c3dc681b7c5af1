//! Normal cones, the spherical dual complex and the set-valued Gauss map.
//!
//! Every face `F` of the hull boundary owns the cone of outward directions
//! that touch the hull exactly along `F`; it is generated by the outward
//! normals of the facets containing `F`. Intersected with the unit sphere
//! these cones tile `S^{d-1}`.

use crate::error::{Error, Result};
use crate::geom::{PointConfiguration, UnitDirection};
use crate::hull::{self, build_hull, boundary_distance, FaceId, HullDescription};
use crate::linalg::{self, dot};
use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, BTreeSet, HashSet};

/// Absolute planarity tolerance for flattened dual cells (unit-sphere scale).
pub const PLANARITY_TOL: f64 = 1e-7;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct NormalCone {
    pub face: FaceId,
    /// Outward normals of the facets containing the face.
    pub generators: Vec<UnitDirection>,
    /// Facet indices of the generators.
    pub generator_facets: Vec<usize>,
    /// `d - dim(face)`.
    pub dim: usize,
}

/// One normal cone per face of the hull.
pub fn normal_fan(hull: &HullDescription) -> Vec<NormalCone> {
    hull.faces()
        .iter()
        .map(|f| NormalCone {
            face: f.id,
            generators: f
                .incident_facets
                .iter()
                .map(|&k| hull.facets()[k].outward_normal.clone())
                .collect(),
            generator_facets: f.incident_facets.clone(),
            dim: hull.dim() - f.dim,
        })
        .collect()
}

/// A direction in the relative interior of the face's normal spherical
/// polytope: the normalized sum of its generators.
pub fn face_center_direction(hull: &HullDescription, face: FaceId) -> Result<UnitDirection> {
    let f = hull.face(face)?;
    let mut s = vec![0.0; hull.dim()];
    for &k in &f.incident_facets {
        linalg::axpy(1.0, hull.facets()[k].outward_normal.as_slice(), &mut s);
    }
    UnitDirection::new(s)
}

/// Value of the Gauss map at a boundary point: the minimal face containing
/// the point and the vertex directions of its normal spherical polytope.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GaussValue {
    pub face: FaceId,
    pub cell: Vec<UnitDirection>,
}

impl GaussValue {
    pub fn is_singleton(&self) -> bool {
        self.cell.len() == 1
    }
}

pub fn gauss_map(hull: &HullDescription, x: &[f64]) -> Result<GaussValue> {
    let tol = hull.tolerances().coplanarity;
    let (d, _) = boundary_distance(hull, x);
    if d > tol {
        return Err(Error::NotOnBoundary(d));
    }
    let sd = hull.facet_signed_distances(x);
    let containing: Vec<usize> = (0..sd.len()).filter(|&k| sd[k].abs() <= tol).collect();
    let mut members = hull.facets()[containing[0]].vertex_indices.clone();
    for &k in &containing[1..] {
        let other = &hull.facets()[k].vertex_indices;
        members.retain(|i| other.binary_search(i).is_ok());
    }
    let face = hull
        .face_with_members(&members)
        .or_else(|| hull.faces().iter().find(|f| f.incident_facets == containing).map(|f| f.id))
        .ok_or(Error::NotOnBoundary(d))?;
    let cell = hull
        .face(face)?
        .incident_facets
        .iter()
        .map(|&k| hull.facets()[k].outward_normal.clone())
        .collect();
    Ok(GaussValue { face, cell })
}

/// Set-valued inverse of the Gauss map: the face exposed by `n`.
pub fn inverse_gauss(hull: &HullDescription, n: &UnitDirection) -> Result<FaceId> {
    hull::classify_direction(hull, n, None)
}

/// Membership in the open set `W_F`: the union of the normal regions of
/// `F` and all of its subfaces.
pub fn w_set_contains(hull: &HullDescription, face: FaceId, n: &UnitDirection) -> Result<bool> {
    let f = hull.face(face)?;
    if f.dim < 1 {
        return Err(Error::FaceTooSmall { face, dim: f.dim, min: 1 });
    }
    let exposed = hull::support_set(hull.config(), n, hull.tolerances().tie)?;
    Ok(exposed.iter().all(|i| f.members.binary_search(i).is_ok()))
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SphericalCell {
    pub face: FaceId,
    /// `d - 1 - dim(face)`.
    pub dim: usize,
    /// Facet indices whose normals are the cell's vertex directions.
    pub vertices: Vec<usize>,
}

/// The tiling of the sphere by normal spherical polytopes.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SphericalDualComplex {
    /// Vertex directions (the facet normals), indexed by facet.
    pub directions: Vec<UnitDirection>,
    pub cells: Vec<SphericalCell>,
    /// `(a, b)` when cell `a` lies in the boundary of cell `b` (dual of
    /// the hull's covering relation, reversed).
    pub incidence: Vec<(usize, usize)>,
    /// Cell counts by cell dimension.
    pub face_counts: Vec<usize>,
}

pub fn spherical_dual(hull: &HullDescription) -> SphericalDualComplex {
    let d = hull.dim();
    let cells: Vec<SphericalCell> = hull
        .faces()
        .iter()
        .map(|f| SphericalCell {
            face: f.id,
            dim: d - 1 - f.dim,
            vertices: f.incident_facets.clone(),
        })
        .collect();
    let mut face_counts = vec![0; d];
    for c in &cells {
        face_counts[c.dim] += 1;
    }
    // G ⊂ F in the hull  ⇔  S_F ⊂ ∂S_G
    let incidence = hull.containment().iter().map(|&(g, f)| (f, g)).collect();
    SphericalDualComplex {
        directions: hull.facets().iter().map(|f| f.outward_normal.clone()).collect(),
        cells,
        incidence,
        face_counts,
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FlatCell {
    /// Configuration index of the hull vertex this cell is dual to.
    pub vertex: usize,
    /// Facet indices, cyclically ordered counter-clockwise seen from outside.
    pub ring: Vec<usize>,
}

/// Spherical dual with every cell replaced by the polygon on its vertex
/// directions.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FlattenedDual {
    pub vertices: Vec<Vec<f64>>,
    pub cells: Vec<FlatCell>,
}

fn require_3d(hull: &HullDescription) -> Result<()> {
    if hull.dim() != 3 {
        return Err(Error::DimensionUnsupported {
            required: 3,
            found: hull.dim(),
        });
    }
    Ok(())
}

pub fn flattened_spherical_dual(hull: &HullDescription) -> Result<FlattenedDual> {
    require_3d(hull)?;
    let vertices: Vec<Vec<f64>> = hull
        .facets()
        .iter()
        .map(|f| f.outward_normal.as_slice().to_vec())
        .collect();
    let mut cells = Vec::new();
    for f in hull.faces().iter().filter(|f| f.dim == 0) {
        let gens = &f.incident_facets;
        let mut axis = vec![0.0; 3];
        for &k in gens {
            linalg::axpy(1.0, &vertices[k], &mut axis);
        }
        let axis = linalg::normalized(&axis).ok_or(Error::ZeroVector(0.0))?;
        let frame = linalg::complement_basis(&[axis.clone()], 3);
        let (t1, mut t2) = (frame[0].clone(), frame[1].clone());
        // make (t1, t2, axis) right-handed
        let cross = [
            t1[1] * t2[2] - t1[2] * t2[1],
            t1[2] * t2[0] - t1[0] * t2[2],
            t1[0] * t2[1] - t1[1] * t2[0],
        ];
        if dot(&cross, &axis) < 0.0 {
            t2 = linalg::scale(&t2, -1.0);
        }
        let mut ring: Vec<(f64, usize)> = gens
            .iter()
            .map(|&k| (dot(&vertices[k], &t2).atan2(dot(&vertices[k], &t1)), k))
            .collect();
        ring.sort_by(|a, b| a.0.total_cmp(&b.0));
        cells.push(FlatCell {
            vertex: f.vertex_indices[0],
            ring: ring.into_iter().map(|(_, k)| k).collect(),
        });
    }
    Ok(FlattenedDual { vertices, cells })
}

/// Hull of the facet normals.
pub fn outer_normal_transform(hull: &HullDescription, coplanarity_tol: Option<f64>) -> Result<HullDescription> {
    let raw: Vec<Vec<f64>> = hull
        .facets()
        .iter()
        .map(|f| f.outward_normal.as_slice().to_vec())
        .collect();
    let config = PointConfiguration::new(&raw)?;
    build_hull(&config, coplanarity_tol)
}

/// Vertex-facet incidence of a polytope; it determines the face lattice.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Incidence {
    pub vertices: usize,
    pub facets: Vec<Vec<usize>>,
}

impl Incidence {
    pub fn of_hull(hull: &HullDescription) -> Self {
        let vertices = hull.vertices();
        let index: BTreeMap<usize, usize> = vertices.iter().enumerate().map(|(k, &v)| (v, k)).collect();
        let facets = hull
            .facets()
            .iter()
            .map(|f| {
                let mut s: Vec<usize> = f.vertex_indices.iter().filter_map(|i| index.get(i).copied()).collect();
                s.sort_unstable();
                s
            })
            .collect();
        Self {
            vertices: vertices.len(),
            facets,
        }
    }

    /// Incidence of the dual polytope: vertices are the hull's facets and
    /// each hull vertex contributes the facet set around it.
    pub fn dual_of_hull(hull: &HullDescription) -> Self {
        let facets = hull
            .faces()
            .iter()
            .filter(|f| f.dim == 0)
            .map(|f| f.incident_facets.clone())
            .collect();
        Self {
            vertices: hull.facets().len(),
            facets,
        }
    }

    fn vertex_facets(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); self.vertices];
        for (k, f) in self.facets.iter().enumerate() {
            for &v in f {
                out[v].push(k);
            }
        }
        out
    }
}

/// Colour refinement over both incidence structures at once, so the
/// resulting vertex colours are comparable between them.
fn refine_colours(a: &Incidence, b: &Incidence) -> (Vec<usize>, Vec<usize>) {
    let inc = [a, b];
    let vf = [a.vertex_facets(), b.vertex_facets()];
    let mut vcol: [Vec<usize>; 2] = [vec![0; a.vertices], vec![0; b.vertices]];
    let mut fcol: [Vec<usize>; 2] = [
        a.facets.iter().map(|f| f.len()).collect(),
        b.facets.iter().map(|f| f.len()).collect(),
    ];
    let rounds = a.vertices + a.facets.len() + 1;
    for _ in 0..rounds {
        let mut table: BTreeMap<(usize, Vec<usize>), usize> = BTreeMap::new();
        let mut keys: [Vec<(usize, Vec<usize>)>; 2] = [Vec::new(), Vec::new()];
        for s in 0..2 {
            for v in 0..inc[s].vertices {
                let mut around: Vec<usize> = vf[s][v].iter().map(|&f| fcol[s][f]).collect();
                around.sort_unstable();
                keys[s].push((vcol[s][v], around));
            }
        }
        for k in keys.iter().flatten() {
            let next = table.len();
            table.entry(k.clone()).or_insert(next);
        }
        let new_v: [Vec<usize>; 2] = [
            keys[0].iter().map(|k| table[k]).collect(),
            keys[1].iter().map(|k| table[k]).collect(),
        ];
        let mut ftable: BTreeMap<(usize, Vec<usize>), usize> = BTreeMap::new();
        let mut fkeys: [Vec<(usize, Vec<usize>)>; 2] = [Vec::new(), Vec::new()];
        for s in 0..2 {
            for (k, f) in inc[s].facets.iter().enumerate() {
                let mut around: Vec<usize> = f.iter().map(|&v| new_v[s][v]).collect();
                around.sort_unstable();
                fkeys[s].push((fcol[s][k], around));
            }
        }
        for k in fkeys.iter().flatten() {
            let next = ftable.len();
            ftable.entry(k.clone()).or_insert(next);
        }
        let stable = new_v[0].iter().collect::<HashSet<_>>().len() == vcol[0].iter().collect::<HashSet<_>>().len()
            && new_v[1].iter().collect::<HashSet<_>>().len() == vcol[1].iter().collect::<HashSet<_>>().len();
        vcol = new_v;
        fcol = [
            fkeys[0].iter().map(|k| ftable[k]).collect(),
            fkeys[1].iter().map(|k| ftable[k]).collect(),
        ];
        if stable {
            break;
        }
    }
    let [va, vb] = vcol;
    (va, vb)
}

/// Whether two vertex-facet incidence structures are isomorphic, i.e. the
/// polytopes have the same combinatorial type.
pub fn incidence_isomorphic(a: &Incidence, b: &Incidence) -> bool {
    if a.vertices != b.vertices || a.facets.len() != b.facets.len() {
        return false;
    }
    let sizes = |i: &Incidence| {
        let mut s: Vec<usize> = i.facets.iter().map(|f| f.len()).collect();
        s.sort_unstable();
        s
    };
    if sizes(a) != sizes(b) {
        return false;
    }
    let (ca, cb) = refine_colours(a, b);
    let hist = |c: &[usize]| {
        let mut h = c.to_vec();
        h.sort_unstable();
        h
    };
    if hist(&ca) != hist(&cb) {
        return false;
    }
    let target: HashSet<Vec<usize>> = b
        .facets
        .iter()
        .map(|f| {
            let mut f = f.clone();
            f.sort_unstable();
            f
        })
        .collect();
    let avf = a.vertex_facets();
    let bvf = b.vertex_facets();
    let common = |vf: &[Vec<usize>], u: usize, v: usize| vf[u].iter().filter(|f| vf[v].contains(f)).count();

    struct Search<'a> {
        a: &'a Incidence,
        ca: Vec<usize>,
        cb: Vec<usize>,
        target: HashSet<Vec<usize>>,
        map: Vec<Option<usize>>,
        used: Vec<bool>,
    }
    fn extend(s: &mut Search<'_>, v: usize, common_ok: &dyn Fn(&[Option<usize>], usize, usize) -> bool) -> bool {
        if v == s.a.vertices {
            return s.a.facets.iter().all(|f| {
                let mut img: Vec<usize> = f.iter().map(|&u| s.map[u].unwrap()).collect();
                img.sort_unstable();
                s.target.contains(&img)
            });
        }
        for w in 0..s.cb.len() {
            if s.used[w] || s.cb[w] != s.ca[v] || !common_ok(&s.map, v, w) {
                continue;
            }
            s.map[v] = Some(w);
            s.used[w] = true;
            if extend(s, v + 1, common_ok) {
                return true;
            }
            s.map[v] = None;
            s.used[w] = false;
        }
        false
    }
    let check = |map: &[Option<usize>], v: usize, w: usize| {
        (0..v).all(|u| {
            let mu = map[u].unwrap();
            common(&avf, u, v) == common(&bvf, mu, w)
        })
    };
    let mut s = Search {
        a,
        ca,
        cb,
        target,
        map: vec![None; a.vertices],
        used: vec![false; b.vertices],
    };
    extend(&mut s, 0, &check)
}

/// Result of comparing the outer normal transform with the dual polytope.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DualVerdict {
    /// Outer normal transform is combinatorially equivalent to the dual.
    pub equivalent: bool,
    /// Every flattened cell is planar and strictly supports the others.
    pub flattened_convex: bool,
}

/// Best-fit plane `(normal, offset, max deviation)` through `points`.
fn fit_plane(points: &[&[f64]]) -> (Vec<f64>, f64, f64) {
    let k = points.len();
    let mut c = vec![0.0; 3];
    for p in points {
        linalg::axpy(1.0 / k as f64, p, &mut c);
    }
    let m = nalgebra::DMatrix::from_fn(k.max(3), 3, |r, col| if r < k { points[r][col] - c[col] } else { 0.0 });
    let svd = m.svd(false, true);
    let v_t = svd.v_t.expect("requested V^T");
    let (mut best, mut smallest) = (0, f64::INFINITY);
    for (i, &s) in svd.singular_values.iter().enumerate() {
        if s < smallest {
            smallest = s;
            best = i;
        }
    }
    let mut normal: Vec<f64> = (0..3).map(|j| v_t[(best, j)]).collect();
    if dot(&normal, &c) < 0.0 {
        normal = linalg::scale(&normal, -1.0);
    }
    let offset = dot(&normal, &c);
    let dev = points.iter().map(|p| (dot(&normal, p) - offset).abs()).fold(0.0, f64::max);
    (normal, offset, dev)
}

/// Whether the flattened dual is the boundary of a convex body, checked
/// cell by cell with [`PLANARITY_TOL`].
pub fn flattened_is_convex(flat: &FlattenedDual) -> bool {
    flat.cells.iter().all(|cell| {
        let pts: Vec<&[f64]> = cell.ring.iter().map(|&k| flat.vertices[k].as_slice()).collect();
        let (normal, offset, dev) = fit_plane(&pts);
        if dev > PLANARITY_TOL || offset <= PLANARITY_TOL {
            return false;
        }
        let on_cell: BTreeSet<usize> = cell.ring.iter().copied().collect();
        flat.vertices
            .iter()
            .enumerate()
            .filter(|(k, _)| !on_cell.contains(k))
            .all(|(_, v)| dot(&normal, v) < offset - PLANARITY_TOL)
    })
}

/// Evaluates both sides of the equivalence between a convex flattened dual
/// and a combinatorially dual outer normal transform.
pub fn dual_combinatorics_check(hull: &HullDescription) -> Result<DualVerdict> {
    require_3d(hull)?;
    let flat = flattened_spherical_dual(hull)?;
    let flattened_convex = flattened_is_convex(&flat);
    let transform = outer_normal_transform(hull, Some(PLANARITY_TOL))?;
    let equivalent = incidence_isomorphic(&Incidence::of_hull(&transform), &Incidence::dual_of_hull(hull));
    Ok(DualVerdict {
        equivalent,
        flattened_convex,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn dir(v: &[f64]) -> UnitDirection {
        UnitDirection::new(v.to_vec()).unwrap()
    }

    #[test]
    fn square_fan() {
        let h = build_hull(&fixtures::unit_square(), None).unwrap();
        let fan = normal_fan(&h);
        let rays = fan.iter().filter(|c| c.generators.len() == 1).count();
        let corners = fan.iter().filter(|c| c.generators.len() == 2).count();
        assert_eq!((rays, corners), (4, 4));
        for c in &fan {
            assert_eq!(c.dim, 2 - h.face(c.face).unwrap().dim);
        }
    }

    #[test]
    fn cube_fan() {
        let h = build_hull(&fixtures::cube(), None).unwrap();
        let mut counts = [0; 4];
        for c in normal_fan(&h) {
            counts[c.generators.len()] += 1;
        }
        assert_eq!(counts, [0, 6, 12, 8]);
    }

    #[test]
    fn triangle_corner_cone() {
        let h = build_hull(&fixtures::triangle(), None).unwrap();
        let origin = h.face_with_members(&[0]).unwrap();
        let cone = &normal_fan(&h)[origin];
        let mut g: Vec<Vec<f64>> = cone.generators.iter().map(|d| d.as_slice().to_vec()).collect();
        g.sort_by(|a, b| a.partial_cmp(b).unwrap());
        assert!(linalg::dist(&g[0], &[-1.0, 0.0]) < 1e-15);
        assert!(linalg::dist(&g[1], &[0.0, -1.0]) < 1e-15);
    }

    #[test]
    fn gauss_map_on_square() {
        let h = build_hull(&fixtures::unit_square(), None).unwrap();
        let g = gauss_map(&h, &[0.5, 0.0]).unwrap();
        assert!(g.is_singleton());
        assert!(linalg::dist(g.cell[0].as_slice(), &[0.0, -1.0]) < 1e-15);
        let corner = gauss_map(&h, &[0.0, 0.0]).unwrap();
        assert_eq!(corner.cell.len(), 2);
        assert_eq!(h.face(corner.face).unwrap().dim, 0);
        assert!(matches!(gauss_map(&h, &[0.5, 0.5]), Err(Error::NotOnBoundary(_))));
    }

    #[test]
    fn gauss_map_at_tetrahedron_facet_centroid() {
        let h = build_hull(&fixtures::regular_tetrahedron(), None).unwrap();
        for (k, f) in h.facets().iter().enumerate() {
            let mut c = vec![0.0; 3];
            for &i in &f.vertex_indices {
                linalg::axpy(1.0 / 3.0, h.config().point(i), &mut c);
            }
            let g = gauss_map(&h, &c).unwrap();
            assert_eq!(g.face, h.facet_face(k));
            assert_eq!(g.cell, vec![f.outward_normal.clone()]);
        }
    }

    #[test]
    fn w_sets_of_square_top_edge() {
        let h = build_hull(&fixtures::unit_square(), None).unwrap();
        let top = h.face_with_members(&[2, 3]).unwrap();
        assert!(w_set_contains(&h, top, &dir(&[0.0, 1.0])).unwrap());
        assert!(w_set_contains(&h, top, &dir(&[0.3, 1.0])).unwrap());
        assert!(!w_set_contains(&h, top, &dir(&[0.0, -1.0])).unwrap());
        let corner = h.face_with_members(&[2]).unwrap();
        assert!(matches!(w_set_contains(&h, corner, &dir(&[1.0, 1.0])), Err(Error::FaceTooSmall { .. })));
    }

    #[test]
    fn inverse_gauss_delegates() {
        let h = build_hull(&fixtures::cube(), None).unwrap();
        let n = dir(&[0.0, 0.0, 1.0]);
        assert_eq!(inverse_gauss(&h, &n).unwrap(), hull::classify_direction(&h, &n, None).unwrap());
    }

    #[test]
    fn cube_flattens_to_octahedron() {
        let h = build_hull(&fixtures::cube(), None).unwrap();
        let flat = flattened_spherical_dual(&h).unwrap();
        assert_eq!(flat.cells.len(), 8);
        assert!(flat.cells.iter().all(|c| c.ring.len() == 3));
        for v in &flat.vertices {
            assert_eq!(v.iter().filter(|x| x.abs() == 1.0).count(), 1);
        }
        let t = outer_normal_transform(&h, None).unwrap();
        assert_eq!(t.facets().len(), 8);
    }

    #[test]
    fn tetrahedron_transform_is_a_tetrahedron() {
        let h = build_hull(&fixtures::regular_tetrahedron(), None).unwrap();
        let flat = flattened_spherical_dual(&h).unwrap();
        assert_eq!(flat.cells.len(), 4);
        assert_eq!(outer_normal_transform(&h, None).unwrap().facets().len(), 4);
    }

    #[test]
    fn flattened_rings_are_counter_clockwise_from_outside() {
        let h = build_hull(&fixtures::cube(), None).unwrap();
        let flat = flattened_spherical_dual(&h).unwrap();
        for cell in &flat.cells {
            let p: Vec<&[f64]> = cell.ring.iter().map(|&k| flat.vertices[k].as_slice()).collect();
            let e1 = linalg::sub(p[1], p[0]);
            let e2 = linalg::sub(p[2], p[0]);
            let n = [
                e1[1] * e2[2] - e1[2] * e2[1],
                e1[2] * e2[0] - e1[0] * e2[2],
                e1[0] * e2[1] - e1[1] * e2[0],
            ];
            assert!(dot(&n, p[0]) > 0.0);
        }
    }

    #[test]
    fn isomorphism_distinguishes_small_polytopes() {
        let cube = build_hull(&fixtures::cube(), None).unwrap();
        let oct = outer_normal_transform(&cube, None).unwrap();
        assert!(incidence_isomorphic(&Incidence::of_hull(&oct), &Incidence::dual_of_hull(&cube)));
        assert!(!incidence_isomorphic(&Incidence::of_hull(&cube), &Incidence::of_hull(&oct)));
        // relabelled copy
        let a = Incidence {
            vertices: 4,
            facets: vec![vec![0, 1], vec![1, 2], vec![2, 3], vec![0, 3]],
        };
        let b = Incidence {
            vertices: 4,
            facets: vec![vec![0, 2], vec![1, 2], vec![1, 3], vec![0, 3]],
        };
        assert!(incidence_isomorphic(&a, &b));
    }

    #[test]
    fn dual_check_requires_three_dimensions() {
        let h = build_hull(&fixtures::unit_square(), None).unwrap();
        assert!(matches!(dual_combinatorics_check(&h), Err(Error::DimensionUnsupported { .. })));
        assert!(matches!(flattened_spherical_dual(&h), Err(Error::DimensionUnsupported { .. })));
    }

    #[test]
    fn spherical_dual_of_cube() {
        let h = build_hull(&fixtures::cube(), None).unwrap();
        let s = spherical_dual(&h);
        assert_eq!(s.cells.len(), h.faces().len());
        // octahedron face counts: 6 vertices, 12 edges, 8 triangles
        assert_eq!(s.face_counts, vec![6, 12, 8]);
        for &(a, b) in &s.incidence {
            assert!(s.cells[a].dim + 1 == s.cells[b].dim);
            assert!(s.cells[a].vertices.iter().all(|v| s.cells[b].vertices.contains(v)));
        }
    }

    #[test]
    fn dual_verdicts_on_fixtures() {
        let verdict = |c| dual_combinatorics_check(&build_hull(&c, None).unwrap()).unwrap();
        let yes = DualVerdict { equivalent: true, flattened_convex: true };
        let no = DualVerdict { equivalent: false, flattened_convex: false };
        assert_eq!(verdict(fixtures::cube()), yes);
        assert_eq!(verdict(fixtures::regular_tetrahedron()), yes);
        assert_eq!(verdict(fixtures::truncated_tetrahedron()), no);
        let tt = build_hull(&fixtures::truncated_tetrahedron(), None).unwrap();
        let t = outer_normal_transform(&tt, Some(PLANARITY_TOL)).unwrap();
        assert_eq!((t.vertices().len(), t.facets().len()), (8, 6));
    }
}
