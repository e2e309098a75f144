use gtspline::knots::{build_interval_system, report_text, solve_intervals, Feasibility};
use gtspline::meshes::{bracelet, grid, net_mesh};
use gtspline::net::NetKind;

fn intervals(f: &Feasibility) -> &[f64] {
    match f {
        Feasibility::Feasible { intervals } => intervals,
        _ => panic!("expected a feasible system"),
    }
}

#[test]
fn quads_and_grids_take_unit_intervals() {
    let sys = build_interval_system(&grid(1, 1).unwrap());
    assert_eq!(sys.constraints.len(), 2);
    assert!(intervals(&solve_intervals(&sys).unwrap()).iter().all(|&v| (v - 1.0).abs() < 1e-9));
    let sys = build_interval_system(&grid(5, 4).unwrap());
    assert!(intervals(&solve_intervals(&sys).unwrap()).iter().all(|&v| (v - 1.0).abs() < 1e-9));
}

#[test]
fn t_junction_halves_the_fine_intervals() {
    let mesh = net_mesh(NetKind::T1, 1, |_, _| 0.0).unwrap();
    let sys = build_interval_system(&mesh);
    let v = intervals(&solve_intervals(&sys).unwrap()).to_vec();
    for (k, &(a, b)) in sys.segments.iter().enumerate() {
        let (p, q) = (mesh.vertices[a], mesh.vertices[b]);
        // horizontal fine segments under the coarse middle column
        let under = p.y == q.y && p.y < 0.0 && p.x.min(q.x) >= -1.0 && p.x.max(q.x) <= 1.0;
        let want = if under { 0.5 } else { 1.0 };
        assert!((v[k] - want).abs() < 1e-9, "{p:?} {q:?} {}", v[k]);
    }
    // scaling a solution keeps it a solution
    for c in &sys.constraints {
        let sum = |ix: &[usize]| ix.iter().map(|&i| 3.0 * v[i]).sum::<f64>();
        assert!((sum(&c.lhs) - sum(&c.rhs)).abs() < 1e-9);
    }
}

#[test]
fn crossing_faces_are_skipped() {
    let sys = build_interval_system(&net_mesh(NetKind::T2, 1, |_, _| 0.0).unwrap());
    assert_eq!(sys.skipped.len(), 1);
    assert!(matches!(solve_intervals(&sys).unwrap(), Feasibility::Feasible { .. }));
}

#[test]
fn bracelet_forces_the_helical_strip_to_zero() {
    let b = bracelet(10, 4, 4).unwrap();
    let sys = build_interval_system(&b.mesh);
    let res = solve_intervals(&sys).unwrap();
    let Feasibility::Infeasible { forced_zero } = &res else { panic!("bracelet should be infeasible") };
    for x in [1, 0, -1] {
        let (a, c) = b.grey_segment(x);
        assert!(forced_zero.contains(&sys.segment_index(a, c).unwrap()));
    }
    // every forced segment is transverse to the helical strip
    let grey: Vec<usize> = (1 - 4 * 10..=1).map(|x| sys.segment_index(b.grey_segment(x).0, b.grey_segment(x).1).unwrap()).collect();
    assert!(forced_zero.iter().all(|i| grey.contains(i)));
    assert!(report_text(&sys, &res).contains("infeasible"));
}
