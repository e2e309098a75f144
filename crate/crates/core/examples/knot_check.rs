//! Knot-interval feasibility. A plain grid admits positive intervals; the
//! bracelet mesh forces every transverse interval of its helical strip to
//! zero, so no positive knot assignment exists and a GT-spline is needed.

use gtspline::knots::{build_interval_system, report_text, solve_intervals, Feasibility};
use gtspline::meshes::{bracelet, grid};
use gtspline::surface::build_surface;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let g = grid(4, 3)?;
    match solve_intervals(&build_interval_system(&g))? {
        Feasibility::Feasible { intervals } => println!("grid: feasible, {} segments", intervals.len()),
        Feasibility::Infeasible { forced_zero } => println!("grid: infeasible ({} forced)", forced_zero.len()),
    }

    let b = bracelet(10, 4, 4)?;
    let sys = build_interval_system(&b.mesh);
    let res = solve_intervals(&sys)?;
    if let Feasibility::Infeasible { forced_zero } = &res {
        let grey = (1 - 4 * b.columns..=1).filter(|&x| {
            let (u, v) = b.grey_segment(x);
            sys.segment_index(u, v).is_some_and(|i| forced_zero.contains(&i))
        });
        println!("bracelet: infeasible, {} forced-zero segments, {} of them on the helical strip", forced_zero.len(), grey.count());
    }
    if std::env::args().any(|a| a == "--report") {
        print!("{}", report_text(&sys, &res));
    }

    // the GT-spline construction does not need knot intervals
    let s = build_surface(&b.mesh)?;
    println!("bracelet surface: {} patches, {} joins", s.patches.len(), s.joins.len());
    Ok(())
}
