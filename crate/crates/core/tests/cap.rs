mod common;

use common::*;
use gtspline::audit::cross_jet_residuals;
use gtspline::bezier::true_degree;
use gtspline::cap::{
    assemble_cap_t2, build_cap_t1, build_cap_t3, g1_boundary_data, g1_identity_residual, reparam_table_t1,
    reparam_table_t2, reparam_table_t3, Cap, Reparameterization, Side,
};
use gtspline::frame::{build_frame, Frame};
use gtspline::net::{NetKind, TNet};
use gtspline::Point3;
use rand::Rng;

fn check_cap(frame: &Frame, cap: &Cap, scale: f64) {
    for b in &cap.boundaries {
        let (res, pos) =
            g1_identity_residual(cap.get(&b.cap).unwrap(), b.side, frame.get(&b.frame).unwrap(), &b.rho, scale)
                .unwrap();
        assert!(pos < 1e-13, "{} {} C0 {pos}", b.cap, b.side.name());
        assert!(res < 1e-12, "{} {} G1 {res}", b.cap, b.side.name());
    }
    for j in &cap.joins {
        let r = cross_jet_residuals(cap.get(&j.a).unwrap(), cap.get(&j.b).unwrap(), j.dir, j.continuity.beta(), 1, 33);
        assert!(r[0] < 1e-13 && r[1] < 1e-12, "{} {} {:?}", j.a, j.b, r);
    }
}

#[test]
fn t1_and_t3_caps_join_the_frame() {
    for seed in 0..10 {
        for kind in [NetKind::T1, NetKind::T3] {
            let net = random_net(kind, seed);
            let f = build_frame(&net).unwrap();
            let cap = if kind == NetKind::T1 { build_cap_t1(&f) } else { build_cap_t3(&f) }.unwrap();
            assert_eq!(cap.patches.len(), if kind == NetKind::T1 { 2 } else { 4 });
            assert!(cap.patches.values().all(|p| p.deg_u() == 4 && p.deg_v() == 4));
            check_cap(&f, &cap, net.scale());
        }
    }
}

#[test]
fn t2_cap_joins_for_any_free_values() {
    let mut r = rng(99);
    for seed in 0..5 {
        let net = random_net(NetKind::T2, seed);
        let f = build_frame(&net).unwrap();
        let inner: [Point3; 9] =
            std::array::from_fn(|_| Point3::new(r.gen_range(-1.0..1.0), r.gen_range(-1.0..1.0), r.gen_range(-1.0..1.0)));
        let cap = assemble_cap_t2(&f, &inner).unwrap();
        check_cap(&f, &cap, net.scale());
    }
}

#[test]
fn t1_cap_interior_columns_have_degree_three() {
    let net = random_net(NetKind::T1, 4);
    let f = build_frame(&net).unwrap();
    let cap = build_cap_t1(&f).unwrap();
    let (pl, pr) = (cap.get("pl").unwrap(), cap.get("pr").unwrap());
    for i in 2..=4 {
        assert!(true_degree(&pl.column(i)) <= 3);
        assert!(true_degree(&pr.column(4 - i)) <= 3);
    }
}

#[test]
fn caps_of_flat_nets_are_planar() {
    for kind in [NetKind::T1, NetKind::T3] {
        let f = build_frame(&TNet::flat(kind)).unwrap();
        let cap = if kind == NetKind::T1 { build_cap_t1(&f) } else { build_cap_t3(&f) }.unwrap();
        assert!(cap.patches.values().flat_map(|p| p.coeffs()).all(|c| c.z.abs() < 1e-15));
    }
}

#[test]
fn mirror_symmetric_net_gives_mirrored_cap() {
    for (kind, pairs) in [(NetKind::T1, vec![("pl", "pr")]), (NetKind::T3, vec![("p1", "p4"), ("p2", "p3")])] {
        let base = random_net(kind, 31);
        let m = base.mirrored().unwrap().map(|p| Point3::new(-p.x, p.y, p.z));
        let rows = base
            .rows
            .iter()
            .zip(&m.rows)
            .map(|(a, b)| a.iter().zip(b).map(|(p, q)| (*p + *q) * 0.5).collect())
            .collect();
        let net = TNet::new(kind, rows).unwrap();
        let f = build_frame(&net).unwrap();
        let cap = if kind == NetKind::T1 { build_cap_t1(&f) } else { build_cap_t3(&f) }.unwrap();
        for (l, r) in pairs {
            let pl = cap.get(l).unwrap().flipped_u().map(|p| Point3::new(-p.x, p.y, p.z));
            assert!(pl.max_coeff_diff(cap.get(r).unwrap()) < 1e-13, "{l} {r}");
        }
    }
}

#[test]
fn reparameterization_tables() {
    let t1 = reparam_table_t1();
    assert_eq!(t1[0].0, Side::Left);
    assert_eq!((t1[0].1.a_at(0.0), t1[0].1.a_at(1.0)), (1.0, 0.5));
    assert!((0..=10).all(|k| t1[0].1.b_at(k as f64 / 10.0) == 0.0));
    assert_eq!(t1[1].1.b_at(0.5), 0.25);
    let t3 = reparam_table_t3();
    assert!((t3[0].1.a_at(1.0) - 2.0 / 3.0).abs() < 1e-15);
    assert_eq!(t3[1].1.b_at(0.5), 0.125);
    assert_eq!(t3[1].1.negated_b().b_at(0.5), -0.125);
    let t2 = reparam_table_t2();
    let tl = &t2.iter().find(|e| e.0 == "tl").unwrap().1;
    assert_eq!(tl.iter().find(|s| s.0 == Side::Top).unwrap().1.a_at(1.0), 0.75);
    let br = &t2.iter().find(|e| e.0 == "br").unwrap().1;
    assert_eq!(br.iter().find(|s| s.0 == Side::Right).unwrap().1.a_at(0.0), 1.0);
    assert_eq!(br.iter().find(|s| s.0 == Side::Bottom).unwrap().1.a_at(0.0), 0.75);
    for (_, sides) in &t2 {
        for (_, r) in sides {
            assert!(r.min_a() >= 0.5);
        }
    }
    for (_, r) in t1.iter().chain(&t3) {
        assert!(r.min_a() > 0.0);
    }
}

#[test]
fn identity_reparameterization_reproduces_c1() {
    let mut r = rng(5);
    let curve = |r: &mut rand_chacha::ChaCha8Rng| -> Vec<Point3> {
        (0..4).map(|_| Point3::new(r.gen_range(-1.0..1.0), r.gen_range(-1.0..1.0), r.gen_range(-1.0..1.0))).collect()
    };
    let (p, d) = (curve(&mut r), curve(&mut r));
    let rows = g1_boundary_data(&p, &d, &Reparameterization::identity()).unwrap();
    // cross derivative of the raised rows equals D raised
    let dd: Vec<Point3> = rows[0].iter().zip(&rows[1]).map(|(a, b)| (*b - *a) * 4.0).collect();
    let want = gtspline::bezier::curve_raise(&d, 1);
    assert!(dd.iter().zip(&want).all(|(a, b)| (*a - *b).norm() < 1e-14));
}

#[test]
fn g1_holds_at_sampled_points() {
    // pointwise oracle: D_cap(u) = a(u) D(u) + b(u) P'(u) at 33 samples
    let net = random_net(NetKind::T1, 17);
    let f = build_frame(&net).unwrap();
    let cap = build_cap_t1(&f).unwrap();
    let b = cap.boundaries.iter().find(|b| b.side == Side::Left).unwrap();
    let (pc, fr) = (cap.get(&b.cap).unwrap(), f.get(&b.frame).unwrap());
    for k in 0..33 {
        let t = k as f64 / 32.0;
        let dc = pc.partial_deriv(0.0, t, gtspline::Dir::U, 1).unwrap();
        let df = fr.partial_deriv(1.0, t, gtspline::Dir::U, 1).unwrap();
        let pt = fr.partial_deriv(1.0, t, gtspline::Dir::V, 1).unwrap();
        let res = dc - (df * b.rho.a_at(t) + pt * b.rho.b_at(t));
        assert!(res.norm() / net.scale() < 1e-12);
    }
}
