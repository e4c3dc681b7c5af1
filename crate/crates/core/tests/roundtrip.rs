use hullmap::fan::{dual_combinatorics_check, flattened_spherical_dual, outer_normal_transform, PLANARITY_TOL};
use hullmap::fixtures;
use hullmap::io::{self, DualDocument, HullDocument};
use hullmap::lab::{ConvergenceRow, DegenerateRow};
use hullmap::build_hull;
use proptest::prelude::*;
use std::fs::File;
use std::io::BufReader;

fn close(a: &[Vec<f64>], b: &[Vec<f64>]) -> bool {
    a.len() == b.len()
        && a.iter().zip(b).all(|(p, q)| p.len() == q.len() && p.iter().zip(q).all(|(x, y)| (x - y).abs() <= 1e-12 * x.abs().max(1.0)))
}

fn coords(dim: usize) -> impl Strategy<Value = Vec<Vec<f64>>> {
    prop::collection::vec(prop::collection::vec(-1e6f64..1e6, dim), 1..40)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn points_files_round_trip(rows in (1usize..=6).prop_flat_map(coords)) {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("pts.csv");
        io::write_points(File::create(&path).unwrap(), rows[0].len(), &rows).unwrap();
        let (dim, back) = io::read_points_file(&path).unwrap();
        prop_assert_eq!(dim, rows[0].len());
        prop_assert!(close(&rows, &back));
    }

    #[test]
    fn obj_point_clouds_round_trip(rows in coords(3)) {
        let mut buf = Vec::new();
        io::write_obj_points(&mut buf, &rows).unwrap();
        let (back, faces) = io::read_obj(buf.as_slice()).unwrap();
        prop_assert!(faces.is_empty());
        prop_assert!(close(&rows, &back));
    }

    #[test]
    fn report_csvs_round_trip(vals in prop::collection::vec((1e-12f64..1.0, 0.0f64..10.0, 0.0f64..10.0, 0usize..100_000), 1..10)) {
        let rows: Vec<ConvergenceRow> = vals
            .iter()
            .map(|&(e, a, b, n)| ConvergenceRow { epsilon: e, outer_dist: a, inner_dist: b, n_samples: n, wall_ms: a * 7.0 })
            .collect();
        let mut buf = Vec::new();
        io::write_report_csv(&mut buf, &rows).unwrap();
        let back = io::read_report_csv(buf.as_slice()).unwrap();
        prop_assert_eq!(back.len(), rows.len());
        for (r, s) in rows.iter().zip(&back) {
            prop_assert!(close(
                &[vec![r.epsilon, r.outer_dist, r.inner_dist, r.wall_ms]],
                &[vec![s.epsilon, s.outer_dist, s.inner_dist, s.wall_ms]]
            ));
            prop_assert_eq!(r.n_samples, s.n_samples);
        }

        let rows: Vec<DegenerateRow> = vals
            .iter()
            .map(|&(e, a, b, n)| DegenerateRow { epsilon: e, image_to_hull: a, hull_to_image: b, hausdorff: a.max(b), n_samples: n })
            .collect();
        let mut buf = Vec::new();
        io::write_degenerate_csv(&mut buf, &rows).unwrap();
        prop_assert_eq!(io::read_degenerate_csv(buf.as_slice()).unwrap(), rows);
    }
}

#[test]
fn hull_and_dual_documents_round_trip_through_files() {
    let dir = tempfile::tempdir().unwrap();
    for c in [fixtures::cube(), fixtures::truncated_tetrahedron(), fixtures::regular_tetrahedron()] {
        let h = build_hull(&c, None).unwrap();
        let doc = HullDocument::from_hull(&h);
        let path = dir.path().join("hull.json");
        std::fs::write(&path, io::to_json(&doc)).unwrap();
        let back: HullDocument = io::from_json(&std::fs::read_to_string(&path).unwrap()).unwrap();
        assert_eq!(back, doc);

        let flat = flattened_spherical_dual(&h).unwrap();
        let transform = outer_normal_transform(&h, Some(PLANARITY_TOL)).unwrap();
        let dual = DualDocument::new(&h, flat.clone(), &transform, dual_combinatorics_check(&h).unwrap());
        std::fs::write(&path, io::to_json(&dual)).unwrap();
        let back: DualDocument = io::from_json(&std::fs::read_to_string(&path).unwrap()).unwrap();
        assert_eq!(back, dual);

        let (vs, fs) = io::flattened_mesh(&flat);
        let obj = dir.path().join("flat.obj");
        io::write_obj_mesh(File::create(&obj).unwrap(), &vs, &fs).unwrap();
        let (vs2, fs2) = io::read_obj(BufReader::new(File::open(&obj).unwrap())).unwrap();
        assert!(close(&vs, &vs2));
        assert_eq!(fs, fs2);
    }
}

#[test]
fn unreadable_files_are_io_errors() {
    let dir = tempfile::tempdir().unwrap();
    let missing = dir.path().join("absent.csv");
    assert!(matches!(io::read_points_file(&missing), Err(hullmap::Error::Io(_))));
}
