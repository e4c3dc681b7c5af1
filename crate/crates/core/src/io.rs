//! File formats: point CSV, OBJ meshes and point clouds, SVG figures,
//! JSON documents for hulls, duals and convergence reports.

use crate::error::{Error, Result};
use crate::fan::{spherical_dual, DualVerdict, FlattenedDual, SphericalCell};
use crate::geom::PointConfiguration;
use crate::hull::{HullDescription, PointClass};
use crate::lab::{ConvergenceRow, DegenerateRow};
use crate::linalg;
use serde::{Deserialize, Serialize};
use std::fmt::Write as _;
use std::io::{BufRead, Write};

/// Seventeen significant digits: enough to round-trip any `f64`.
pub fn fmt_f64(x: f64) -> String {
    format!("{x:.16e}")
}

fn parse_f64(s: &str, line: usize) -> Result<f64> {
    s.trim().parse::<f64>().map_err(|e| Error::Parse {
        line,
        msg: format!("`{}`: {e}", s.trim()),
    })
}

/// Reads `dim,<d>` followed by rows of `d` comma-separated numbers. Blank
/// lines and lines starting with `#` are skipped.
pub fn read_points<R: BufRead>(reader: R) -> Result<(usize, Vec<Vec<f64>>)> {
    let mut dim = None;
    let mut rows = Vec::new();
    for (k, line) in reader.lines().enumerate() {
        let line = line?;
        let lineno = k + 1;
        let t = line.trim();
        if t.is_empty() || t.starts_with('#') {
            continue;
        }
        match dim {
            None => {
                let (key, value) = t.split_once(',').ok_or_else(|| Error::Parse {
                    line: lineno,
                    msg: "expected header `dim,<d>`".into(),
                })?;
                if key.trim() != "dim" {
                    return Err(Error::Parse {
                        line: lineno,
                        msg: "expected header `dim,<d>`".into(),
                    });
                }
                let d: usize = value.trim().parse().map_err(|_| Error::Parse {
                    line: lineno,
                    msg: format!("bad dimension `{}`", value.trim()),
                })?;
                if d == 0 {
                    return Err(Error::Parse {
                        line: lineno,
                        msg: "dimension must be positive".into(),
                    });
                }
                dim = Some(d);
            }
            Some(d) => {
                let row = t.split(',').map(|f| parse_f64(f, lineno)).collect::<Result<Vec<_>>>()?;
                if row.len() != d {
                    return Err(Error::DimensionMismatch {
                        expected: d,
                        found: row.len(),
                    });
                }
                rows.push(row);
            }
        }
    }
    let dim = dim.ok_or(Error::Parse {
        line: 0,
        msg: "missing header `dim,<d>`".into(),
    })?;
    Ok((dim, rows))
}

pub fn write_points<W: Write>(mut w: W, dim: usize, rows: &[Vec<f64>]) -> Result<()> {
    writeln!(w, "dim,{dim}")?;
    for r in rows {
        let line: Vec<String> = r.iter().map(|&x| fmt_f64(x)).collect();
        writeln!(w, "{}", line.join(","))?;
    }
    Ok(())
}

pub fn read_points_file(path: &std::path::Path) -> Result<(usize, Vec<Vec<f64>>)> {
    let f = std::fs::File::open(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    read_points(std::io::BufReader::new(f))
}

/// Points file validated into a configuration.
pub fn read_configuration(path: &std::path::Path, distinctness_tol: Option<f64>) -> Result<PointConfiguration> {
    let (_, rows) = read_points_file(path)?;
    crate::geom::build_configuration(&rows, distinctness_tol)
}

pub fn write_obj_points<W: Write>(mut w: W, points: &[Vec<f64>]) -> Result<()> {
    for p in points {
        let c: Vec<String> = p.iter().map(|&x| fmt_f64(x)).collect();
        writeln!(w, "v {}", c.join(" "))?;
    }
    Ok(())
}

/// Vertices and polygons (0-based indices) of an OBJ file.
pub type Mesh = (Vec<Vec<f64>>, Vec<Vec<usize>>);

pub fn write_obj_mesh<W: Write>(mut w: W, vertices: &[Vec<f64>], faces: &[Vec<usize>]) -> Result<()> {
    write_obj_points(&mut w, vertices)?;
    for f in faces {
        let idx: Vec<String> = f.iter().map(|i| (i + 1).to_string()).collect();
        writeln!(w, "f {}", idx.join(" "))?;
    }
    Ok(())
}

/// Reads `v` and `f` records; other records are ignored.
pub fn read_obj<R: BufRead>(reader: R) -> Result<Mesh> {
    let mut vs = Vec::new();
    let mut fs = Vec::new();
    for (k, line) in reader.lines().enumerate() {
        let line = line?;
        let mut parts = line.split_whitespace();
        match parts.next() {
            Some("v") => vs.push(parts.map(|s| parse_f64(s, k + 1)).collect::<Result<Vec<_>>>()?),
            Some("f") => fs.push(
                parts
                    .map(|s| {
                        let head = s.split('/').next().unwrap_or(s);
                        head.parse::<usize>()
                            .ok()
                            .and_then(|i| i.checked_sub(1))
                            .ok_or_else(|| Error::Parse {
                                line: k + 1,
                                msg: format!("bad face index `{s}`"),
                            })
                    })
                    .collect::<Result<Vec<_>>>()?,
            ),
            _ => {}
        }
    }
    Ok((vs, fs))
}

/// Flattened dual as a polygon mesh.
pub fn flattened_mesh(flat: &FlattenedDual) -> Mesh {
    (flat.vertices.clone(), flat.cells.iter().map(|c| c.ring.clone()).collect())
}

/// Spherical dual as a triangle mesh on the unit sphere: each cell is fanned
/// from its center with every geodesic side split into `subdivisions`.
pub fn spherical_mesh(flat: &FlattenedDual, subdivisions: usize) -> Mesh {
    let k = subdivisions.max(1);
    let mut vs: Vec<Vec<f64>> = Vec::new();
    let mut fs = Vec::new();
    let on_sphere = |p: Vec<f64>| linalg::normalized(&p).unwrap_or(p);
    for cell in &flat.cells {
        let mut c = vec![0.0; 3];
        for &i in &cell.ring {
            linalg::axpy(1.0, &flat.vertices[i], &mut c);
        }
        let center = vs.len();
        vs.push(on_sphere(c));
        let first = vs.len();
        let m = cell.ring.len();
        for j in 0..m {
            let a = &flat.vertices[cell.ring[j]];
            let b = &flat.vertices[cell.ring[(j + 1) % m]];
            for s in 0..k {
                let t = s as f64 / k as f64;
                let mut p = linalg::scale(a, 1.0 - t);
                linalg::axpy(t, b, &mut p);
                vs.push(on_sphere(p));
            }
        }
        let ring_len = m * k;
        for j in 0..ring_len {
            fs.push(vec![center, first + j, first + (j + 1) % ring_len]);
        }
    }
    (vs, fs)
}

/// SVG figure of a planar configuration: hull edges, input points and the
/// closed image polyline in sample order. The viewport is the hull's
/// bounding box with a 10% margin.
pub fn render_svg(hull: &HullDescription, images: &[Vec<f64>]) -> Result<String> {
    let config = hull.config();
    if config.dim() != 2 {
        return Err(Error::DimensionUnsupported {
            required: 2,
            found: config.dim(),
        });
    }
    let verts = hull.vertices();
    let (mut x0, mut y0, mut x1, mut y1) = (f64::INFINITY, f64::INFINITY, f64::NEG_INFINITY, f64::NEG_INFINITY);
    for &v in &verts {
        let p = config.point(v);
        x0 = x0.min(p[0]);
        x1 = x1.max(p[0]);
        y0 = y0.min(p[1]);
        y1 = y1.max(p[1]);
    }
    let margin = 0.1 * (x1 - x0).max(y1 - y0);
    let (x0, y0, w, h) = (x0 - margin, y0 - margin, x1 - x0 + 2.0 * margin, y1 - y0 + 2.0 * margin);

    let stroke = 0.003 * w.max(h);
    // flip y so the figure reads with the usual orientation
    let tx = |p: &[f64]| (p[0], 2.0 * y0 + h - p[1]);
    let mut s = String::new();
    writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" viewBox="{} {} {} {}" width="800" height="{}">"#,
        x0,
        y0,
        w,
        h,
        (800.0 * h / w).round()
    )
    .unwrap();
    for f in hull.facets() {
        let a = tx(config.point(f.vertex_indices[0]));
        let b = tx(config.point(*f.vertex_indices.last().unwrap()));
        writeln!(
            s,
            r#"<line x1="{}" y1="{}" x2="{}" y2="{}" stroke="black" stroke-width="{stroke}"/>"#,
            a.0, a.1, b.0, b.1
        )
        .unwrap();
    }
    if !images.is_empty() {
        let pts: Vec<String> = images
            .iter()
            .map(|p| {
                let q = tx(p);
                format!("{},{}", q.0, q.1)
            })
            .collect();
        writeln!(
            s,
            r#"<polygon points="{}" fill="none" stroke="blue" stroke-width="{stroke}"/>"#,
            pts.join(" ")
        )
        .unwrap();
    }
    for p in config.points() {
        let q = tx(p);
        writeln!(s, r#"<circle cx="{}" cy="{}" r="{}" fill="red"/>"#, q.0, q.1, 3.0 * stroke).unwrap();
    }
    s.push_str("</svg>\n");
    Ok(s)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FacetRecord {
    pub vertices: Vec<usize>,
    pub normal: Vec<f64>,
    pub offset: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FaceRecord {
    pub id: usize,
    pub dim: usize,
    pub vertices: Vec<usize>,
}

/// Structured description of a hull.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct HullDocument {
    pub dim: usize,
    pub points: Vec<Vec<f64>>,
    pub vertices: Vec<usize>,
    pub boundary_nonvertices: Vec<usize>,
    pub interior: Vec<usize>,
    pub facets: Vec<FacetRecord>,
    pub faces: Vec<FaceRecord>,
    /// `(sub, sup)` covering pairs of the face lattice.
    pub containment: Vec<(usize, usize)>,
    pub f_vector: Vec<usize>,
    /// Alternating sum of the f-vector; `1 - (-1)^d` for a polytope boundary.
    pub euler_characteristic: i64,
    pub euler_expected: i64,
}

impl HullDocument {
    pub fn from_hull(hull: &HullDescription) -> Self {
        let pick = |c: PointClass| -> Vec<usize> {
            hull.vertex_flags()
                .iter()
                .enumerate()
                .filter(|(_, f)| **f == c)
                .map(|(i, _)| i)
                .collect()
        };
        let f_vector = hull.f_vector();
        let euler = f_vector
            .iter()
            .enumerate()
            .map(|(k, &f)| if k % 2 == 0 { f as i64 } else { -(f as i64) })
            .sum();
        let d = hull.dim() as i64;
        Self {
            dim: hull.dim(),
            points: hull.config().to_vecs(),
            vertices: pick(PointClass::Vertex),
            boundary_nonvertices: pick(PointClass::BoundaryNonvertex),
            interior: pick(PointClass::Interior),
            facets: hull
                .facets()
                .iter()
                .map(|f| FacetRecord {
                    vertices: f.vertex_indices.clone(),
                    normal: f.outward_normal.as_slice().to_vec(),
                    offset: f.offset,
                })
                .collect(),
            faces: hull
                .faces()
                .iter()
                .map(|f| FaceRecord {
                    id: f.id,
                    dim: f.dim,
                    vertices: f.vertex_indices.clone(),
                })
                .collect(),
            containment: hull.containment().to_vec(),
            f_vector,
            euler_characteristic: euler,
            euler_expected: 1 - if d % 2 == 0 { 1 } else { -1 },
        }
    }
}

/// Combinatorial type of the spherical dual together with the flattened
/// dual, the outer normal transform and the convexity verdict.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DualDocument {
    /// Cell counts by cell dimension.
    pub face_counts: Vec<usize>,
    pub cells: Vec<SphericalCell>,
    pub incidence: Vec<(usize, usize)>,
    pub directions: Vec<Vec<f64>>,
    pub flattened: FlattenedDual,
    pub transform_vertices: usize,
    pub transform_facets: Vec<Vec<usize>>,
    pub verdict: DualVerdict,
}

impl DualDocument {
    pub fn new(hull: &HullDescription, flattened: FlattenedDual, transform: &HullDescription, verdict: DualVerdict) -> Self {
        let dual = spherical_dual(hull);
        Self {
            face_counts: dual.face_counts,
            cells: dual.cells,
            incidence: dual.incidence,
            directions: dual.directions.iter().map(|d| d.as_slice().to_vec()).collect(),
            flattened,
            transform_vertices: transform.vertices().len(),
            transform_facets: transform.facets().iter().map(|f| f.vertex_indices.clone()).collect(),
            verdict,
        }
    }
}

/// Which face a direction exposes.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FaceReport {
    pub direction: Vec<f64>,
    pub face: usize,
    pub dim: usize,
    pub kind: String,
    pub vertices: Vec<usize>,
    /// Short form such as `edge {2,3}`.
    pub label: String,
}

impl FaceReport {
    pub fn new(hull: &HullDescription, direction: &[f64], face: usize) -> Result<Self> {
        let f = hull.face(face)?;
        let kind = match (f.dim, hull.dim() - f.dim) {
            (0, _) => "vertex".to_string(),
            (1, _) => "edge".to_string(),
            (_, 1) => "facet".to_string(),
            (k, _) => format!("{k}-face"),
        };
        let ids: Vec<String> = f.vertex_indices.iter().map(|i| i.to_string()).collect();
        Ok(Self {
            direction: direction.to_vec(),
            face,
            dim: f.dim,
            label: format!("{kind} {{{}}}", ids.join(",")),
            kind,
            vertices: f.vertex_indices.clone(),
        })
    }
}

pub fn to_json<T: Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("documents serialize") + "\n"
}

pub fn from_json<T: for<'de> Deserialize<'de>>(text: &str) -> Result<T> {
    serde_json::from_str(text).map_err(|e| Error::Parse {
        line: e.line(),
        msg: e.to_string(),
    })
}

pub const REPORT_HEADER: &str = "epsilon,outer_dist,inner_dist,n_samples,wall_ms";

pub fn write_report_csv<W: Write>(mut w: W, rows: &[ConvergenceRow]) -> Result<()> {
    writeln!(w, "{REPORT_HEADER}")?;
    for r in rows {
        writeln!(
            w,
            "{},{},{},{},{}",
            fmt_f64(r.epsilon),
            fmt_f64(r.outer_dist),
            fmt_f64(r.inner_dist),
            r.n_samples,
            fmt_f64(r.wall_ms)
        )?;
    }
    Ok(())
}

fn split_fields(line: &str, n: usize, lineno: usize) -> Result<Vec<&str>> {
    let f: Vec<&str> = line.split(',').map(str::trim).collect();
    if f.len() != n {
        return Err(Error::Parse {
            line: lineno,
            msg: format!("expected {n} fields, found {}", f.len()),
        });
    }
    Ok(f)
}

fn parse_usize(s: &str, line: usize) -> Result<usize> {
    s.parse().map_err(|_| Error::Parse {
        line,
        msg: format!("bad count `{s}`"),
    })
}

pub fn read_report_csv<R: BufRead>(reader: R) -> Result<Vec<ConvergenceRow>> {
    let mut rows = Vec::new();
    for (k, line) in reader.lines().enumerate() {
        let line = line?;
        if k == 0 {
            if line.trim() != REPORT_HEADER {
                return Err(Error::Parse {
                    line: 1,
                    msg: format!("expected header `{REPORT_HEADER}`"),
                });
            }
            continue;
        }
        if line.trim().is_empty() {
            continue;
        }
        let f = split_fields(&line, 5, k + 1)?;
        rows.push(ConvergenceRow {
            epsilon: parse_f64(f[0], k + 1)?,
            outer_dist: parse_f64(f[1], k + 1)?,
            inner_dist: parse_f64(f[2], k + 1)?,
            n_samples: parse_usize(f[3], k + 1)?,
            wall_ms: parse_f64(f[4], k + 1)?,
        });
    }
    Ok(rows)
}

pub const DEGENERATE_HEADER: &str = "epsilon,image_to_hull,hull_to_image,hausdorff,n_samples";

pub fn write_degenerate_csv<W: Write>(mut w: W, rows: &[DegenerateRow]) -> Result<()> {
    writeln!(w, "{DEGENERATE_HEADER}")?;
    for r in rows {
        writeln!(
            w,
            "{},{},{},{},{}",
            fmt_f64(r.epsilon),
            fmt_f64(r.image_to_hull),
            fmt_f64(r.hull_to_image),
            fmt_f64(r.hausdorff),
            r.n_samples
        )?;
    }
    Ok(())
}

pub fn read_degenerate_csv<R: BufRead>(reader: R) -> Result<Vec<DegenerateRow>> {
    let mut rows = Vec::new();
    for (k, line) in reader.lines().enumerate() {
        let line = line?;
        if k == 0 {
            if line.trim() != DEGENERATE_HEADER {
                return Err(Error::Parse {
                    line: 1,
                    msg: format!("expected header `{DEGENERATE_HEADER}`"),
                });
            }
            continue;
        }
        if line.trim().is_empty() {
            continue;
        }
        let f = split_fields(&line, 5, k + 1)?;
        rows.push(DegenerateRow {
            epsilon: parse_f64(f[0], k + 1)?,
            image_to_hull: parse_f64(f[1], k + 1)?,
            hull_to_image: parse_f64(f[2], k + 1)?,
            hausdorff: parse_f64(f[3], k + 1)?,
            n_samples: parse_usize(f[4], k + 1)?,
        });
    }
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fan::{dual_combinatorics_check, flattened_spherical_dual, outer_normal_transform, PLANARITY_TOL};
    use crate::fixtures;
    use crate::hull::build_hull;

    #[test]
    fn points_round_trip() {
        let rows = vec![vec![0.1, -2.5e-300], vec![1.0 / 3.0, 7e22]];
        let mut buf = Vec::new();
        write_points(&mut buf, 2, &rows).unwrap();
        let text = String::from_utf8(buf.clone()).unwrap();
        assert!(text.starts_with("dim,2\n"));
        let (d, back) = read_points(&buf[..]).unwrap();
        assert_eq!(d, 2);
        assert_eq!(back, rows);
    }

    #[test]
    fn points_parse_errors() {
        assert!(matches!(read_points("dims,2\n".as_bytes()), Err(Error::Parse { line: 1, .. })));
        assert!(matches!(read_points("dim,2\n1,x\n".as_bytes()), Err(Error::Parse { line: 2, .. })));
        assert!(matches!(read_points("dim,2\n1,2,3\n".as_bytes()), Err(Error::DimensionMismatch { .. })));
        assert!(matches!(read_points("".as_bytes()), Err(Error::Parse { .. })));
        let (_, rows) = read_points("# comment\ndim,1\n\n3\n".as_bytes()).unwrap();
        assert_eq!(rows, vec![vec![3.0]]);
    }

    #[test]
    fn obj_round_trip() {
        let vs = vec![vec![1.0, 2.0, 3.0], vec![0.0, -1.0, 1e-17], vec![0.5, 0.5, 0.5]];
        let fs = vec![vec![0, 1, 2]];
        let mut buf = Vec::new();
        write_obj_mesh(&mut buf, &vs, &fs).unwrap();
        let (v2, f2) = read_obj(&buf[..]).unwrap();
        assert_eq!((v2, f2), (vs, fs));
    }

    #[test]
    fn spherical_mesh_lies_on_the_sphere() {
        let h = build_hull(&fixtures::cube(), None).unwrap();
        let flat = flattened_spherical_dual(&h).unwrap();
        let (vs, fs) = spherical_mesh(&flat, 4);
        assert_eq!(fs.len(), 8 * 3 * 4);
        assert!(vs.iter().all(|v| (linalg::norm(v) - 1.0).abs() < 1e-15));
    }

    #[test]
    fn hull_document_for_square_with_center() {
        let h = build_hull(&fixtures::square_with_center(), None).unwrap();
        let doc = HullDocument::from_hull(&h);
        assert_eq!(doc.vertices, vec![0, 1, 2, 3]);
        assert_eq!(doc.interior, vec![4]);
        assert_eq!(doc.facets.len(), 4);
        assert_eq!(doc.euler_characteristic, doc.euler_expected);
        let back: HullDocument = from_json(&to_json(&doc)).unwrap();
        assert_eq!(back, doc);
    }

    #[test]
    fn tetrahedron_euler_check() {
        let doc = HullDocument::from_hull(&build_hull(&fixtures::regular_tetrahedron(), None).unwrap());
        assert_eq!(doc.f_vector, vec![4, 6, 4]);
        assert_eq!((doc.euler_characteristic, doc.euler_expected), (2, 2));
    }

    #[test]
    fn dual_document_round_trip() {
        let h = build_hull(&fixtures::cube(), None).unwrap();
        let t = outer_normal_transform(&h, Some(PLANARITY_TOL)).unwrap();
        let doc = DualDocument::new(&h, flattened_spherical_dual(&h).unwrap(), &t, dual_combinatorics_check(&h).unwrap());
        assert_eq!(doc.face_counts, vec![6, 12, 8]);
        assert_eq!(doc.transform_vertices, 6);
        let back: DualDocument = from_json(&to_json(&doc)).unwrap();
        assert_eq!(back, doc);
    }

    fn c_top() -> FaceReport {
        let c = build_hull(&fixtures::cube(), None).unwrap();
        let n = crate::geom::UnitDirection::new(vec![0.0, 0.0, 1.0]).unwrap();
        FaceReport::new(&c, n.as_slice(), crate::hull::classify_direction(&c, &n, None).unwrap()).unwrap()
    }

    #[test]
    fn face_report_labels() {
        let h = build_hull(&fixtures::unit_square(), None).unwrap();
        let n = crate::geom::UnitDirection::new(vec![1.0, 0.0]).unwrap();
        let id = crate::hull::classify_direction(&h, &n, None).unwrap();
        let r = FaceReport::new(&h, n.as_slice(), id).unwrap();
        assert_eq!(r.label, "edge {1,2}");
        let top = c_top();
        assert_eq!(top.kind, "facet");
        let c = build_hull(&fixtures::cube(), None).unwrap();
        let e = c.faces().iter().find(|f| f.dim == 1).unwrap().id;
        assert_eq!(FaceReport::new(&c, &[0.0, 0.0, 1.0], e).unwrap().kind, "edge");
    }

    #[test]
    fn report_round_trip() {
        let rows = vec![
            ConvergenceRow {
                epsilon: 0.1,
                outer_dist: 0.0123456789012345678,
                inner_dist: 1.0 / 7.0,
                n_samples: 1234,
                wall_ms: 12.5,
            },
            ConvergenceRow {
                epsilon: 1e-4,
                outer_dist: 3e-6,
                inner_dist: 2e-3,
                n_samples: 99,
                wall_ms: 0.0,
            },
        ];
        let mut buf = Vec::new();
        write_report_csv(&mut buf, &rows).unwrap();
        assert_eq!(read_report_csv(&buf[..]).unwrap(), rows);
        assert!(read_report_csv("eps\n".as_bytes()).is_err());
    }

    #[test]
    fn svg_requires_the_plane() {
        let h = build_hull(&fixtures::cube(), None).unwrap();
        assert!(matches!(render_svg(&h, &[]), Err(Error::DimensionUnsupported { .. })));
        let t = build_hull(&fixtures::triangle(), None).unwrap();
        let svg = render_svg(&t, &[vec![0.2, 0.2], vec![0.3, 0.1]]).unwrap();
        assert!(svg.starts_with("<svg"));
        assert_eq!(svg.matches("<line").count(), 3);
        assert_eq!(svg.matches("<circle").count(), 3);
    }
}
