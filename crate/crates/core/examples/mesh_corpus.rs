//! Write the golden mesh corpus: one file per net kind, a mesh holding two
//! nets, the bracelet, a plain grid, and two meshes `build` must refuse.
//!
//! `cargo run --example mesh_corpus -- golden/meshes`

use std::path::PathBuf;

use gtspline::io::save_mesh;
use gtspline::meshes::{bracelet, grid, lattice_mesh, net_lattice, net_mesh};
use gtspline::net::NetKind;
use gtspline::Point3;

fn bumpy(x: f64, y: f64) -> f64 {
    0.4 * (0.5 * x).sin() * (0.4 * y).cos() + 0.03 * x * y
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let dir = PathBuf::from(std::env::args().nth(1).unwrap_or_else(|| "golden/meshes".into()));
    std::fs::create_dir_all(&dir)?;
    let lift = |x: i32, y: i32| Point3::new(x as f64, y as f64, bumpy(x as f64, y as f64));

    save_mesh(&net_mesh(NetKind::T1, 3, bumpy)?, &dir.join("t1.json"))?;
    save_mesh(&net_mesh(NetKind::T2, 3, bumpy)?, &dir.join("t2.json"))?;
    save_mesh(&net_mesh(NetKind::T3, 3, bumpy)?, &dir.join("t3.obj"))?;
    save_mesh(&grid(8, 6)?, &dir.join("grid.obj"))?;
    save_mesh(&bracelet(10, 4, 4)?.mesh, &dir.join("bracelet.obj"))?;

    // a T1 net and a T3 net eight columns apart
    let nodes: Vec<_> = (-6..=5)
        .flat_map(|y| (-6..=22).map(move |x| (x, y)))
        .filter(|&(x, y)| (x != 0 || y < 0) && (y < 0 && ![12, 14, 16].contains(&x) || y >= 0 && ![12, 13, 15, 16].contains(&x)))
        .collect();
    save_mesh(&lattice_mesh(&nodes, lift)?, &dir.join("t1_t3.obj"))?;

    // refused: a pentagon whose ring runs off the boundary
    let nodes: Vec<_> = net_lattice(NetKind::T1, 3).into_iter().filter(|p| p.1 <= 1).collect();
    save_mesh(&lattice_mesh(&nodes, lift)?, &dir.join("bad_boundary.obj"))?;
    // refused: two pentagons three columns apart
    let nodes: Vec<_> = (-6..=6)
        .flat_map(|y| (-8..=8).map(move |x| (x, y)))
        .filter(|&(x, y)| y < 0 || (x != 0 && x != 3))
        .collect();
    save_mesh(&lattice_mesh(&nodes, lift)?, &dir.join("bad_close.obj"))?;
    println!("wrote corpus to {}", dir.display());
    Ok(())
}
