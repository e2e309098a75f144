//! Small synthetic meshes: grids, isolated nets with a margin, and the bracelet.

use std::collections::BTreeMap;

use crate::detect::planar_faces;
use crate::error::Result;
use crate::net::NetKind;
use crate::point::Point3;
use crate::tmesh::TMesh;

/// Mesh spanned by integer lattice nodes, faces as in [`planar_faces`].
pub fn lattice_mesh(nodes: &[(i32, i32)], pos: impl Fn(i32, i32) -> Point3) -> Result<TMesh> {
    let (_, faces) = planar_faces(nodes);
    TMesh::new(nodes.iter().map(|&(x, y)| pos(x, y)).collect(), faces)
}

/// `nx` by `ny` unit quads in the plane z = 0.
pub fn grid(nx: i32, ny: i32) -> Result<TMesh> {
    let nodes: Vec<_> = (0..=ny).flat_map(|y| (0..=nx).map(move |x| (x, y))).collect();
    lattice_mesh(&nodes, |x, y| Point3::new(x as f64, y as f64, 0.0))
}

/// Lattice nodes of one net of `kind` surrounded by `margin` extra rings.
pub fn net_lattice(kind: NetKind, margin: i32) -> Vec<(i32, i32)> {
    let (xr, yr) = match kind {
        NetKind::T1 => (3 + margin, (-3 - margin, 2 + margin)),
        NetKind::T3 => (5 + margin, (-3 - margin, 2 + margin)),
        NetKind::T2 => (3 + margin, (-3 - margin, 3 + margin)),
    };
    let keep = |x: i32, y: i32| match kind {
        NetKind::T1 => x != 0 || y < 0,
        NetKind::T3 if y < 0 => ![-2, 0, 2].contains(&x),
        NetKind::T3 => ![-2, -1, 1, 2].contains(&x),
        // the missing half-column and half-row run out to the boundary
        NetKind::T2 => (x != 0 || y < 0) && (y != 0 || x < 0),
    };
    (yr.0..=yr.1).flat_map(|y| (-xr..=xr).map(move |x| (x, y))).filter(|&(x, y)| keep(x, y)).collect()
}

/// One net of `kind` with a margin, lifted by `height`.
pub fn net_mesh(kind: NetKind, margin: i32, height: impl Fn(f64, f64) -> f64) -> Result<TMesh> {
    lattice_mesh(&net_lattice(kind, margin), |x, y| {
        let (x, y) = (x as f64, y as f64);
        Point3::new(x, y, height(x, y))
    })
}

/// Vertex ids of interest in the bracelet mesh.
#[derive(Debug, Clone)]
pub struct Bracelet {
    pub mesh: TMesh,
    /// Vertex of the helical strip at unrolled position `x`.
    pub helix: BTreeMap<i64, usize>,
    pub pentagon: usize,
    /// Columns around the cylinder.
    pub columns: i64,
}

impl Bracelet {
    /// Transverse edge of the grey helical strip at unrolled position `x`.
    pub fn grey_segment(&self, x: i64) -> (usize, usize) {
        let (a, b) = (self.helix[&x], self.helix[&(x + self.columns)]);
        (a.min(b), a.max(b))
    }
}

/// A cylinder whose lower part is one helical strip of quads climbing one row
/// per turn; a band of quads closes on top of it through a single pentagon,
/// above which rows are ordinary rings. Rule 1 then forces the helical
/// strip's transverse knot intervals to zero.
pub fn bracelet(columns: i64, turns: i64, upper_rows: i64) -> Result<Bracelet> {
    let l = columns;
    let radius = l as f64 / std::f64::consts::TAU;
    let at = |angle_steps: f64, z: f64| {
        let t = std::f64::consts::TAU * angle_steps / l as f64;
        Point3::new(radius * t.cos(), radius * t.sin(), z)
    };
    let mut verts = vec![];
    let mut helix = BTreeMap::new();
    let pmin = 1 - turns * l;
    for x in pmin..=l + 1 {
        helix.insert(x, verts.len());
        verts.push(at(x as f64, x as f64 / l as f64));
    }
    // upper[r][j] sits above helix column j + 1
    let mut upper = vec![];
    for r in 0..=upper_rows {
        upper.push((0..l).map(|j| {
            verts.push(at((j + 1) as f64, 2.0 + 1.0 / l as f64 + r as f64));
            verts.len() - 1
        }).collect::<Vec<_>>());
    }
    let h = |x: i64| helix[&x];
    let u = |r: usize, j: i64| upper[r][j.rem_euclid(l) as usize];
    let mut faces = vec![];
    for p in pmin..=0 {
        faces.push(vec![h(p), h(p + 1), h(p + 1 + l), h(p + l)]);
    }
    let pentagon = faces.len();
    faces.push(vec![h(1), h(2), u(0, 1), u(0, 0), h(l + 1)]);
    for c in 1..l {
        faces.push(vec![h(c + 1), h(c + 2), u(0, c + 1), u(0, c)]);
    }
    for r in 0..upper_rows as usize {
        for j in 0..l {
            faces.push(vec![u(r, j), u(r, j + 1), u(r + 1, j + 1), u(r + 1, j)]);
        }
    }
    Ok(Bracelet { mesh: TMesh::new(verts, faces)?, helix, pentagon, columns: l })
}
