//! The T2 net has more freedom than its constraints fix. The 17 free points
//! minimize the summed third-order energy over all 16 patches; this example
//! solves that system directly, compares it with the precomputed weights and
//! shows the energy growing under small perturbations.

use gtspline::net::{NetKind, TNet};
use gtspline::t2::{solve_unknowns, t2_energy, t2_weights};
use gtspline::Point3;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let net = TNet::from_fn(NetKind::T2, |x, y| Point3::new(x, y, 0.1 * x * x - 0.05 * x * y + 0.08 * y * y * y / 3.0));
    let e = t2_energy(&net)?;
    let z = e.minimize()?;
    println!("unknowns {}, energy at minimum {:.6e}, condition {:.2e}", z.len(), e.eval(&z), e.condition());

    let pre = t2_weights()?.apply(&net);
    let direct = solve_unknowns(&net)?;
    let gap = pre.iter().zip(&direct).map(|(a, b)| (*a - *b).norm()).fold(0.0, f64::max);
    println!("precomputed weights vs direct solve: {gap:.1e}");

    let e0 = e.eval(&z);
    for k in 0..5 {
        let eps = 10f64.powi(-k - 1);
        let bumped: Vec<Point3> = z.iter().enumerate().map(|(i, p)| *p + Point3::new(0.0, 0.0, if i % 3 == 0 { eps } else { -eps })).collect();
        println!("perturbation {eps:.0e}: energy rises by {:.3e}", e.eval(&bumped) - e0);
    }
    Ok(())
}
