//! Concurrence, fidelity and grid sweeps.

mod common;

use std::f64::consts::{FRAC_1_SQRT_2, PI};
use std::io::Cursor;

use proptest::prelude::*;
use rand::Rng;

use xyqubit::observables::{ground_concurrence_from_state, odd_reference_state};
use xyqubit::sweep::{read_csv, write_csv, Axis, GRID_HEADER};
use xyqubit::{
    apply_uz, concurrence, detect_crossings, export_csv, fidelity, ground_concurrence,
    ground_fidelity_map, ground_state, sweep, Error, Observable, PureState4,
};

proptest! {
    #[test]
    fn measures_stay_in_unit_interval(seed in any::<u64>()) {
        let mut rng = common::rng(seed);
        let (a, b) = (common::random_state(&mut rng), common::random_state(&mut rng));
        let c = concurrence(&a);
        let f = fidelity(&a, &b);
        prop_assert!((0.0..=1.0).contains(&c));
        prop_assert!((0.0..=1.0).contains(&f));
        prop_assert_eq!(f, fidelity(&b, &a));
    }

    #[test]
    fn concurrence_matches_reduced_purity(seed in any::<u64>()) {
        let s = common::random_state(&mut common::rng(seed));
        prop_assert!((concurrence(&s) - common::concurrence_via_purity(&s)).abs() < 1e-7);
    }

    #[test]
    fn concurrence_is_local_unitary_invariant(seed in any::<u64>(), phi in -10.0..10.0f64, alpha in 0.0..6.3f64) {
        let s = common::random_state(&mut common::rng(seed));
        prop_assert!((concurrence(&apply_uz(&s, phi)) - concurrence(&s)).abs() < 1e-12);
        prop_assert!((concurrence(&s.with_global_phase(alpha)) - concurrence(&s)).abs() < 1e-12);
    }

    #[test]
    fn fidelity_saturates_only_on_rays(seed in any::<u64>(), alpha in 0.0..6.3f64) {
        let mut rng = common::rng(seed);
        let (a, b) = (common::random_state(&mut rng), common::random_state(&mut rng));
        prop_assert!((fidelity(&a, &a.with_global_phase(alpha)) - 1.0).abs() < 1e-14);
        prop_assert!((a.inner(&a.with_global_phase(alpha)).norm() - 1.0).abs() < 1e-14);
        prop_assert!(fidelity(&a, &b) < 1.0 - 1e-12);
    }

    #[test]
    fn closed_form_concurrence_matches_ground_state(l in -3.0..3.0f64, g in -3.0..3.0f64) {
        prop_assume!(l.hypot(g) > 1e-6);
        let closed = ground_concurrence(l, g).unwrap();
        prop_assert!((closed - ground_concurrence_from_state(l, g)).abs() < 1e-12);
    }
}

#[test]
fn concurrence_examples() {
    let h = FRAC_1_SQRT_2;
    assert_eq!(concurrence(&PureState4::from_real([0.0, h, h, 0.0]).unwrap()), 1.0);
    assert_eq!(concurrence(&PureState4::from_real([1.0, 0.0, 0.0, 0.0]).unwrap()), 0.0);
    assert_eq!(ground_concurrence(2.0, 0.0).unwrap(), 0.0);
    assert_eq!(ground_concurrence(0.3, 0.4).unwrap(), 1.0);
    assert_eq!(ground_concurrence(0.0, 2.0).unwrap(), 1.0);
    assert_eq!(ground_concurrence(0.0, 0.5).unwrap(), 1.0);
    assert!(matches!(ground_concurrence(0.0, 0.0), Err(Error::OriginUndefined)));
    assert_eq!(ground_concurrence_from_state(0.0, 0.0), 1.0);
}

#[test]
fn fidelity_examples() {
    let h = FRAC_1_SQRT_2;
    let up = PureState4::from_real([1.0, 0.0, 0.0, 0.0]).unwrap();
    let bell = PureState4::from_real([h, 0.0, 0.0, h]).unwrap();
    let triplet = PureState4::from_real([0.0, h, h, 0.0]).unwrap();
    let singlet = PureState4::from_real([0.0, h, -h, 0.0]).unwrap();
    assert_eq!(fidelity(&up, &up), 1.0);
    assert_eq!(fidelity(&triplet, &singlet), 0.0);
    assert!((fidelity(&bell, &up) - 0.5).abs() < 1e-15);
    assert_eq!(ground_fidelity_map(0.3, 0.4), 1.0);
    assert_eq!(ground_fidelity_map(2.0, 0.0), 0.0);
    assert_eq!(ground_fidelity_map(0.0, 2.0), 0.0);
    assert_eq!(fidelity(&odd_reference_state(), &triplet), 1.0);
}

#[test]
fn concurrence_jump_is_one_minus_sine() {
    let mut rng = common::rng(21);
    for _ in 0..500 {
        let theta: f64 = rng.random_range(0.0..2.0 * PI);
        let (s, c) = theta.sin_cos();
        let inside = ground_concurrence(0.999 * c, 0.999 * s).unwrap();
        let outside = ground_concurrence(1.001 * c, 1.001 * s).unwrap();
        assert!((inside - outside - (1.0 - s.abs())).abs() < 1e-12, "theta {theta}");
    }
    assert_eq!(ground_concurrence(0.0, 0.999).unwrap(), ground_concurrence(0.0, 1.001).unwrap());
}

#[test]
fn fidelity_jumps_along_every_ray() {
    for k in 0..360 {
        let (s, c) = (2.0 * PI * k as f64 / 360.0).sin_cos();
        assert_eq!(ground_fidelity_map(0.999 * c, 0.999 * s), 1.0);
        assert_eq!(ground_fidelity_map(1.001 * c, 1.001 * s), 0.0);
        // on the circle the odd state is the reported ground state
        assert_eq!(ground_fidelity_map(c, s), 1.0);
    }
}

#[test]
fn ground_state_fidelity_matches_sector_overlap() {
    let mut rng = common::rng(4);
    for _ in 0..200 {
        let (l, g): (f64, f64) = (rng.random_range(-3.0..3.0), rng.random_range(-3.0..3.0));
        let gs = ground_state(l, g, 0.0).state;
        let direct = gs.inner(&odd_reference_state()).norm_sqr();
        assert!((ground_fidelity_map(l, g) - direct).abs() < 1e-12);
    }
}

#[test]
fn sweeps_are_symmetric_under_reflections() {
    for obs in [Observable::Gap, Observable::Concurrence, Observable::Fidelity] {
        let grid = sweep(obs, (-2.0, 2.0), (-2.0, 2.0), 101).unwrap();
        let n = 101;
        for i in 0..n {
            for j in 0..n {
                let v = grid.value(i, j);
                assert_eq!(v, grid.value(i, n - 1 - j), "{obs} gamma reflection at ({i}, {j})");
                assert_eq!(v, grid.value(n - 1 - i, j), "{obs} lambda reflection at ({i}, {j})");
            }
        }
    }
}

#[test]
fn symmetric_axis_nodes() {
    let axis = Axis::new(-2.0, 2.0, 401).unwrap();
    assert_eq!(axis.node(0), -2.0);
    assert_eq!(axis.node(400), 2.0);
    assert_eq!(axis.node(200), 0.0);
    for i in 0..401 {
        assert_eq!(axis.node(i), -axis.node(400 - i));
    }
}

#[test]
fn crossings_trace_the_unit_circle() {
    let grid = sweep(Observable::Gap, (-2.0, 2.0), (-2.0, 2.0), 401).unwrap();
    let set = detect_crossings(&grid, 0.02).unwrap();
    assert!(set.points.len() >= 100);
    for &(l, g) in &set.points {
        assert!((l.hypot(g) - 1.0).abs() <= 0.02 + 1e-15);
    }
    // every ray meets the detected band
    for k in 0..36 {
        let tau = 2.0 * PI * k as f64 / 36.0;
        let near = set
            .points
            .iter()
            .any(|&(l, g)| (g.atan2(l) - tau).rem_euclid(2.0 * PI).min((tau - g.atan2(l)).rem_euclid(2.0 * PI)) < 0.05);
        assert!(near, "no crossing near angle {tau}");
    }
}

#[test]
fn empty_crossing_set_is_reported() {
    let grid = sweep(Observable::Gap, (-1.5, 1.5), (-1.5, 1.5), 101).unwrap();
    assert!(matches!(detect_crossings(&grid, 1e-12), Err(Error::EmptyResult { .. })));
    let conc = sweep(Observable::Concurrence, (-1.0, 1.0), (-1.0, 1.0), 3).unwrap();
    assert!(detect_crossings(&conc, 0.1).is_err());
}

#[test]
fn sweep_validation() {
    assert!(matches!(sweep(Observable::Gap, (-2.0, 2.0), (-2.0, 2.0), 1), Err(Error::InvalidInput(_))));
    assert!(sweep(Observable::Gap, (2.0, -2.0), (-2.0, 2.0), 11).is_err());
    assert!(sweep(Observable::Gap, (f64::NAN, 2.0), (-2.0, 2.0), 11).is_err());
    assert!(sweep(Observable::Gap, (-2.0, 2.0), (-2.0, 2.0), 10_001).is_err());
}

#[test]
fn sweep_is_deterministic() {
    let a = sweep(Observable::Concurrence, (-2.0, 2.0), (-2.0, 2.0), 61).unwrap();
    let b = sweep(Observable::Concurrence, (-2.0, 2.0), (-2.0, 2.0), 61).unwrap();
    assert_eq!(a, b);
    let (mut x, mut y) = (Vec::new(), Vec::new());
    write_csv(&a, &mut x).unwrap();
    write_csv(&b, &mut y).unwrap();
    assert_eq!(x, y);
}

#[test]
fn csv_layout_and_reimport() {
    let grid = sweep(Observable::Gap, (-2.0, 2.0), (-2.0, 2.0), 101).unwrap();
    let mut bytes = Vec::new();
    write_csv(&grid, &mut bytes).unwrap();
    let text = String::from_utf8(bytes.clone()).unwrap();
    assert!(text.starts_with("lambda,gamma,value\n"));
    assert!(!text.contains('\r'));
    assert_eq!(text.lines().count(), 10_202);
    // lambda outer
    let second: Vec<&str> = text.lines().nth(2).unwrap().split(',').collect();
    assert_eq!(second[0], "-2.000000000000e0");
    assert_eq!(second[1], "-1.960000000000e0");

    let rows = read_csv(Cursor::new(&bytes)).unwrap();
    assert_eq!(rows.len(), 10_201);
    let mut again = format!("{GRID_HEADER}\n");
    for &(l, g, v) in &rows {
        again.push_str(&format!("{l:.12e},{g:.12e},{v:.12e}\n"));
    }
    assert_eq!(again, text);
    for ((l, g, v), (l0, g0, v0)) in rows.iter().zip(grid.iter()) {
        assert_eq!((*l, *g), (l0, g0));
        assert!((v - v0).abs() <= 5e-13 * v0.abs());
    }
}

#[test]
fn export_reports_io_failure() {
    let grid = sweep(Observable::Fidelity, (-1.0, 1.0), (-1.0, 1.0), 5).unwrap();
    assert!(matches!(export_csv(&grid, "/nonexistent/dir/out.csv"), Err(Error::Io { .. })));
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("f.csv");
    export_csv(&grid, &path).unwrap();
    let rows = xyqubit::sweep::import_csv(&path).unwrap();
    assert_eq!(rows.len(), 25);
    assert!(read_csv(Cursor::new("lambda,gamma\n1,2\n")).is_err());
}
