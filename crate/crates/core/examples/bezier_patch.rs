//! Tensor-product Bezier basics: evaluation, derivatives, subdivision and
//! degree raising on a small bicubic patch.

use gtspline::bezier::{true_degree, BBPatch, Dir, Edge};
use gtspline::Point3;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    // a bicubic graph z = sin(x) cos(y) sampled at the control grid
    let p = BBPatch::from_fn(3, 3, |i, j| {
        let (x, y) = (i as f64 / 3.0, j as f64 / 3.0);
        Point3::new(x, y, x.sin() * y.cos())
    });
    let mid = p.eval(0.5, 0.5)?;
    println!("p(0.5, 0.5) = ({:.6}, {:.6}, {:.6})", mid.x, mid.y, mid.z);
    let du = p.partial_deriv(0.5, 0.5, Dir::U, 1)?;
    let dv = p.partial_deriv(0.5, 0.5, Dir::V, 1)?;
    let n = du.cross(dv);
    println!("normal at centre = ({:.6}, {:.6}, {:.6})", n.x, n.y, n.z);

    // split in u at 0.3: the halves meet C-infinity, so values and first derivatives agree
    let (a, b) = p.subdivide(Dir::U, 0.3)?;
    let left = a.eval(1.0, 0.4)?;
    let right = b.eval(0.0, 0.4)?;
    let whole = p.eval(0.3, 0.4)?;
    println!("split at u=0.3: |left-whole| = {:.1e}, |right-whole| = {:.1e}", (left - whole).norm(), (right - whole).norm());
    let ta = a.partial_deriv(1.0, 0.4, Dir::U, 1)? * (1.0 / 0.3);
    let tb = b.partial_deriv(0.0, 0.4, Dir::U, 1)? * (1.0 / 0.7);
    println!("scaled u-derivatives differ by {:.1e}", (ta - tb).norm());

    // raising the degree keeps the surface; true_degree recovers the original
    let r = p.degree_raise(5, 4)?;
    let diff = (r.eval(0.2, 0.7)? - p.eval(0.2, 0.7)?).norm();
    println!("raised to {}x{}: deviation {diff:.1e}, true degree of column 2 = {}", r.deg_u(), r.deg_v(), true_degree(&r.column(2)));

    for e in [Edge::VMin, Edge::VMax, Edge::UMin, Edge::UMax] {
        let c = p.edge_curve(e);
        println!("edge {:5}: {} control points, ends at z = {:.4} .. {:.4}", e.name(), c.len(), c[0].z, c[c.len() - 1].z);
    }
    Ok(())
}
