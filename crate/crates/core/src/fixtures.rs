//! Standard point configurations used by tests, examples and the CLI.

use crate::geom::PointConfiguration;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn build(raw: Vec<Vec<f64>>) -> PointConfiguration {
    PointConfiguration::new(&raw).expect("fixture points are distinct")
}

/// (0,0), (1,0), (0,1).
pub fn triangle() -> PointConfiguration {
    build(vec![vec![0.0, 0.0], vec![1.0, 0.0], vec![0.0, 1.0]])
}

/// Corners of the unit square, counter-clockwise from the origin.
pub fn unit_square() -> PointConfiguration {
    build(vec![vec![0.0, 0.0], vec![1.0, 0.0], vec![1.0, 1.0], vec![0.0, 1.0]])
}

/// Unit square corners plus the center (index 4).
pub fn square_with_center() -> PointConfiguration {
    build(vec![
        vec![0.0, 0.0],
        vec![1.0, 0.0],
        vec![1.0, 1.0],
        vec![0.0, 1.0],
        vec![0.5, 0.5],
    ])
}

/// Regular k-gon inscribed in the unit circle.
pub fn regular_polygon(k: usize) -> PointConfiguration {
    build(
        (0..k)
            .map(|i| {
                let t = 2.0 * std::f64::consts::PI * i as f64 / k as f64;
                vec![t.cos(), t.sin()]
            })
            .collect(),
    )
}

fn tetrahedron_vertices() -> Vec<Vec<f64>> {
    vec![
        vec![1.0, 1.0, 1.0],
        vec![1.0, -1.0, -1.0],
        vec![-1.0, 1.0, -1.0],
        vec![-1.0, -1.0, 1.0],
    ]
}

/// Alternate corners of the cube `[-1, 1]^3`.
pub fn regular_tetrahedron() -> PointConfiguration {
    build(tetrahedron_vertices())
}

/// Corners of `[-1, 1]^3`.
pub fn cube() -> PointConfiguration {
    let mut raw = Vec::new();
    for &x in &[-1.0, 1.0] {
        for &y in &[-1.0, 1.0] {
            for &z in &[-1.0, 1.0] {
                raw.push(vec![x, y, z]);
            }
        }
    }
    build(raw)
}

/// Regular tetrahedron truncated at one third along every edge.
pub fn truncated_tetrahedron() -> PointConfiguration {
    let v = tetrahedron_vertices();
    let mut raw = Vec::new();
    for i in 0..4 {
        for j in 0..4 {
            if i != j {
                raw.push((0..3).map(|k| v[i][k] + (v[j][k] - v[i][k]) / 3.0).collect());
            }
        }
    }
    build(raw)
}

/// Three collinear points in the plane.
pub fn collinear_triple() -> PointConfiguration {
    build(vec![vec![0.0, 0.0], vec![1.0, 0.5], vec![2.0, 1.0]])
}

/// Four coplanar points in R^3 forming a quadrilateral in the plane z = 0.5.
pub fn planar_quadrilateral() -> PointConfiguration {
    build(vec![
        vec![0.0, 0.0, 0.5],
        vec![2.0, 0.0, 0.5],
        vec![1.5, 1.0, 0.5],
        vec![0.0, 1.0, 0.5],
    ])
}

/// `n` points uniform in `[0, 1]^dim`, redrawn until nondegenerate with
/// a comfortable minimum spacing.
pub fn random_configuration(dim: usize, n: usize, seed: u64) -> PointConfiguration {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    loop {
        let raw: Vec<Vec<f64>> = (0..n).map(|_| (0..dim).map(|_| rng.random::<f64>()).collect()).collect();
        let Ok(c) = PointConfiguration::new(&raw) else { continue };
        let spaced = (0..n).all(|i| (i + 1..n).all(|j| crate::linalg::dist(c.point(i), c.point(j)) > 0.02));
        if spaced && crate::geom::is_nondegenerate(&c, 1e-6) {
            return c;
        }
    }
}
