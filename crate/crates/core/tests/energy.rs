mod common;

use common::*;
use gtspline::bezier::BBPatch;
use gtspline::energy::{gauss_legendre, patch_energy, patch_energy_matrix};
use gtspline::Point3;
use rand::Rng;

fn lifted(h: f64) -> BBPatch {
    BBPatch::from_fn(1, 1, |i, j| Point3::new(i as f64, j as f64, if i == 1 && j == 1 { h } else { 0.0 }))
}

#[test]
fn quadrature_integrates_polynomials() {
    let q = gauss_legendre(4);
    for k in 0..8 {
        let s: f64 = q.iter().map(|&(t, w)| w * t.powi(k)).sum();
        assert!((s - 1.0 / (k as f64 + 1.0)).abs() < 1e-14);
    }
}

#[test]
fn bilinear_energies() {
    // (u, v, h u v): F1 = 2 + 2h^2/3, F2 = 2 h^2
    for h in [0.0, 0.5, 2.0] {
        let p = lifted(h);
        assert!((patch_energy(&p, 1).unwrap() - (2.0 + 2.0 * h * h / 3.0)).abs() < 1e-12);
        assert!((patch_energy(&p, 2).unwrap() - 2.0 * h * h).abs() < 1e-12);
    }
    assert_eq!(patch_energy(&lifted(0.0), 2).unwrap(), 0.0);
    assert!(patch_energy_matrix(1, 1, 3).is_err());
}

#[test]
fn energy_is_translation_invariant_and_nonnegative() {
    let mut r = rng(3);
    for _ in 0..10 {
        let p = BBPatch::from_fn(3, 4, |_, _| Point3::new(r.gen_range(-1.0..1.0), r.gen_range(-1.0..1.0), r.gen_range(-1.0..1.0)));
        let t = Point3::new(4.0, -2.0, 7.0);
        for k in 1..=3 {
            let (a, b) = (patch_energy(&p, k).unwrap(), patch_energy(&p.map(|c| c + t), k).unwrap());
            assert!(a >= 0.0 && (a - b).abs() < 1e-10 * a.max(1.0));
        }
    }
}

#[test]
fn cubic_degree_energy_vanishes_on_quadratics() {
    let p = BBPatch::from_fn(2, 2, |i, j| Point3::new(i as f64, (i * j) as f64, (j * j) as f64));
    let e = patch_energy(&p, 3).unwrap();
    assert!(e.abs() < 1e-11, "{e}");
}
