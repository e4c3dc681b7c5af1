use hullmap::fixtures::{self, random_configuration};
use hullmap::lab::{default_epsilons, theorem_sweep};
use hullmap::hull::in_normal_spherical_polytope;
use hullmap::linalg::{dist, dot, linear_fit};
use hullmap::sampling::sample;
use hullmap::{build_hull, evaluate, PointConfiguration, SamplePlan, Strategy, UnitDirection};

/// The random directions exposing vertex `v` whose pair products
/// `<n, n_ij>` stay furthest from zero, so that no near-tie delays the
/// asymptotic regime.
fn generic_directions(c: &PointConfiguration, v: usize, want: usize) -> Vec<UnitDirection> {
    let plan = SamplePlan::new(c.dim(), Strategy::GaussianRandom, 20_000, v as u64);
    let clearance = |n: &UnitDirection| {
        (0..c.len())
            .flat_map(|i| (0..c.len()).filter(move |&j| j != i).map(move |j| (i, j)))
            .map(|(i, j)| dot(n.as_slice(), c.dir(i, j)).abs())
            .fold(f64::INFINITY, f64::min)
    };
    let mut dirs: Vec<(f64, UnitDirection)> = sample(&plan)
        .unwrap()
        .into_iter()
        .filter(|n| in_normal_spherical_polytope(c, v, n, true))
        .map(|n| (clearance(&n), n))
        .collect();
    dirs.sort_by(|a, b| b.0.total_cmp(&a.0));
    dirs.into_iter().take(want).map(|(_, n)| n).collect()
}

#[test]
fn images_approach_their_vertex_linearly() {
    let eps: [f64; 5] = [1e-1, 1e-2, 1e-3, 1e-4, 1e-5];
    let x: Vec<f64> = eps.iter().map(|e| e.ln()).collect();
    for c in [fixtures::triangle(), fixtures::cube(), random_configuration(2, 7, 1), random_configuration(3, 8, 2)] {
        let h = build_hull(&c, None).unwrap();
        for &v in &h.vertices() {
            let dirs = generic_directions(&c, v, 5);
            assert!(!dirs.is_empty());
            for n in dirs {
                let d: Vec<f64> = eps.iter().map(|&e| dist(&evaluate(&c, e, &n).unwrap().point, c.point(v))).collect();
                let y: Vec<f64> = d.iter().map(|e| e.ln()).collect();
                let (slope, _, _) = linear_fit(&x, &y);
                assert!((slope - 1.0).abs() <= 0.2, "vertex {v}: slope {slope}, {d:?}");
                let ratio = d[3] / d[4];
                assert!((9.0..11.0).contains(&ratio), "vertex {v}: ratio {ratio}");
            }
        }
    }
}

#[test]
fn outer_distance_trends_down() {
    for c in [fixtures::triangle(), fixtures::unit_square(), random_configuration(2, 6, 4)] {
        let h = build_hull(&c, None).unwrap();
        let plan = SamplePlan::new(2, Strategy::UniformGrid2d, 2000, 0);
        let r = theorem_sweep(&h, &default_epsilons(), &plan, 50).unwrap();
        assert!(r.rows.iter().all(|row| row.outer_dist >= 0.0));
        for j in 0..r.rows.len() {
            for k in j + 2..r.rows.len() {
                assert!(r.rows[k].outer_dist <= 1.05 * r.rows[j].outer_dist);
            }
        }
        assert!(r.fit_residual.is_finite());
    }
}
