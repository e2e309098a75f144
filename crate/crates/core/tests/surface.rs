mod common;

use common::*;
use gtspline::audit::{audit_surface, Tolerances, DEFAULT_SAMPLES};
use gtspline::meshes::{bracelet, grid, net_mesh};
use gtspline::surface::{build_surface, JoinClass};

fn bumpy(x: f64, y: f64) -> f64 {
    0.3 * (0.7 * x).sin() + 0.05 * x * y + 0.02 * y * y * y
}

#[test]
fn every_join_meets_its_class() {
    for kind in KINDS {
        let s = build_surface(&net_mesh(kind, 3, bumpy).unwrap()).unwrap();
        assert!(s.joins.iter().any(|j| matches!(j.class, JoinClass::G1 { .. })));
        let rep = audit_surface(&s, &Tolerances::default(), DEFAULT_SAMPLES);
        assert!(rep.all_pass(), "{kind:?}\n{}", rep.failures().map(|r| format!("{r:?}\n")).collect::<String>());
    }
}

#[test]
fn quad_grid_is_all_c2() {
    let s = build_surface(&grid(6, 5).unwrap()).unwrap();
    assert_eq!(s.patches.len(), 4 * 3);
    assert_eq!(s.joins.len(), 3 * 3 + 4 * 2);
    let rep = audit_surface(&s, &Tolerances::default(), DEFAULT_SAMPLES);
    assert!(rep.all_pass() && rep.records.iter().all(|r| r.achieved == "C2"));
}

#[test]
fn bracelet_surface_passes() {
    let b = bracelet(10, 4, 4).unwrap();
    let s = build_surface(&b.mesh).unwrap();
    let rep = audit_surface(&s, &Tolerances::default(), DEFAULT_SAMPLES);
    assert!(rep.all_pass(), "{}", rep.to_text());
}

#[test]
fn perturbed_coefficient_fails_nearby() {
    let mut s = build_surface(&net_mesh(gtspline::net::NetKind::T1, 3, bumpy).unwrap()).unwrap();
    let i = s.index_of("n0/c/left").or_else(|| s.patches.iter().position(|p| p.name.starts_with("n0/c/"))).unwrap();
    let p = &mut s.patches[i].patch;
    let c = p.coeff(2, 1);
    p.set(2, 1, c + gtspline::Point3::new(0.0, 0.0, 1e-3));
    let rep = audit_surface(&s, &Tolerances::default(), DEFAULT_SAMPLES);
    assert!(!rep.all_pass());
    let name = &s.patches[i].name;
    assert!(rep.failures().all(|r| r.a.starts_with(&format!("{name}:")) || r.b.starts_with(&format!("{name}:"))));
}

#[test]
fn net_patches_are_fully_joined() {
    for kind in KINDS {
        let s = build_surface(&net_mesh(kind, 3, bumpy).unwrap()).unwrap();
        for (i, p) in s.patches.iter().enumerate().filter(|(_, p)| p.name.starts_with('n')) {
            for e in gtspline::Edge::ALL {
                assert!((s.coverage(i, e) - 1.0).abs() < 1e-12, "{kind:?} {} {:?} {}", p.name, e, s.coverage(i, e));
            }
        }
    }
}
