#![allow(dead_code)]

use gtspline::net::{NetKind, TNet};
use gtspline::{Affine3, Point3};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Reference layout with jittered positions and random heights.
pub fn random_net(kind: NetKind, seed: u64) -> TNet {
    let mut r = rng(seed);
    let rows = kind
        .reference_xy()
        .into_iter()
        .map(|row| {
            row.into_iter()
                .map(|(x, y)| {
                    Point3::new(
                        x + r.gen_range(-0.2..0.2),
                        y + r.gen_range(-0.2..0.2),
                        r.gen_range(-1.0..1.0),
                    )
                })
                .collect()
        })
        .collect();
    TNet::new(kind, rows).unwrap()
}

pub fn random_affine(seed: u64) -> Affine3 {
    let mut r = rng(seed);
    let mut m = [[0.0; 3]; 3];
    for (i, row) in m.iter_mut().enumerate() {
        for (j, v) in row.iter_mut().enumerate() {
            *v = r.gen_range(-1.0..1.0) + if i == j { 2.0 } else { 0.0 };
        }
    }
    Affine3 { m, t: Point3::new(r.gen_range(-5.0..5.0), r.gen_range(-5.0..5.0), r.gen_range(-5.0..5.0)) }
}

pub const KINDS: [NetKind; 3] = [NetKind::T1, NetKind::T2, NetKind::T3];

/// Rotation about a random axis plus a translation.
pub fn random_rigid(seed: u64) -> Affine3 {
    let mut r = rng(seed);
    let a = Point3::new(r.gen_range(-1.0..1.0), r.gen_range(-1.0..1.0), r.gen_range(-1.0..1.0));
    let a = a * (1.0 / a.norm());
    let (s, c) = r.gen_range(0.0..std::f64::consts::TAU).sin_cos();
    let k = [[0.0, -a.z, a.y], [a.z, 0.0, -a.x], [-a.y, a.x, 0.0]];
    let mut m = [[0.0; 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            let kk: f64 = (0..3).map(|l| k[i][l] * k[l][j]).sum();
            m[i][j] = if i == j { 1.0 } else { 0.0 } + s * k[i][j] + (1.0 - c) * kk;
        }
    }
    Affine3 { m, t: Point3::new(r.gen_range(-5.0..5.0), r.gen_range(-5.0..5.0), r.gen_range(-5.0..5.0)) }
}
