//! Knot-interval feasibility: Rule 1 of classical T-splines asks that the
//! intervals on opposite sides of every face sum to the same value.

use minilp::{ComparisonOp, OptimizationDirection, Problem, Variable};

use crate::error::{GtError, Result};
use crate::tmesh::TMesh;

const ZERO: f64 = 1e-9;

/// `Σ lhs = Σ rhs` over edge-segment indices.
#[derive(Debug, Clone, PartialEq)]
pub struct Constraint {
    pub face: usize,
    pub lhs: Vec<usize>,
    pub rhs: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct IntervalSystem {
    /// Edge segments as `(min vertex, max vertex)`.
    pub segments: Vec<(usize, usize)>,
    pub constraints: Vec<Constraint>,
    /// Faces left out, with the reason.
    pub skipped: Vec<(usize, String)>,
}

impl IntervalSystem {
    pub fn segment_index(&self, a: usize, b: usize) -> Option<usize> {
        self.segments.binary_search(&(a.min(b), a.max(b))).ok()
    }
}

/// Two constraints per face, sides split at its corners (vertices that are not T-junctions).
pub fn build_interval_system(mesh: &TMesh) -> IntervalSystem {
    let segments = mesh.edges();
    let idx = |a: usize, b: usize| segments.binary_search(&(a.min(b), a.max(b))).unwrap();
    let mut constraints = vec![];
    let mut skipped = vec![];
    for (f, face) in mesh.faces.iter().enumerate() {
        let n = face.len();
        let ts = mesh.t_vertices(f);
        let corners: Vec<usize> = (0..n).filter(|k| !ts.contains(k)).collect();
        if corners.len() != 4 {
            skipped.push((f, format!("{} corners", corners.len())));
            continue;
        }
        let sides: Vec<Vec<usize>> = (0..4)
            .map(|s| {
                let (a, b) = (corners[s], corners[(s + 1) % 4]);
                let len = (b + n - a) % n;
                (0..len).map(|k| idx(face[(a + k) % n], face[(a + k + 1) % n])).collect()
            })
            .collect();
        let split: Vec<bool> = sides.iter().map(|s| s.len() > 1).collect();
        if (0..4).any(|s| split[s] && split[(s + 1) % 4]) {
            skipped.push((f, "T-junctions on adjacent sides (crossing)".into()));
            continue;
        }
        constraints.push(Constraint { face: f, lhs: sides[0].clone(), rhs: sides[2].clone() });
        constraints.push(Constraint { face: f, lhs: sides[1].clone(), rhs: sides[3].clone() });
    }
    IntervalSystem { segments, constraints, skipped }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Feasibility {
    /// Positive intervals, largest equal to 1.
    Feasible { intervals: Vec<f64> },
    /// Segments that are zero in every non-negative solution.
    Infeasible { forced_zero: Vec<usize> },
}

fn lp_err(e: minilp::Error) -> GtError {
    GtError::Numerical(format!("linear program: {e}"))
}

fn base_problem(sys: &IntervalSystem, dir: OptimizationDirection, obj: impl Fn(usize) -> f64) -> (Problem, Vec<Variable>) {
    let mut p = Problem::new(dir);
    let x: Vec<Variable> = (0..sys.segments.len()).map(|i| p.add_var(obj(i), (0.0, 1.0))).collect();
    for c in &sys.constraints {
        let mut terms: Vec<(Variable, f64)> = c.lhs.iter().map(|&i| (x[i], 1.0)).collect();
        terms.extend(c.rhs.iter().map(|&i| (x[i], -1.0)));
        p.add_constraint(&terms, ComparisonOp::Eq, 0.0);
    }
    (p, x)
}

/// Maximize the smallest interval; if it is zero, certify which segments are forced to zero.
pub fn solve_intervals(sys: &IntervalSystem) -> Result<Feasibility> {
    use OptimizationDirection::Maximize;
    let n = sys.segments.len();
    let (mut p, x) = base_problem(sys, Maximize, |_| 0.0);
    let t = p.add_var(1.0, (0.0, 1.0));
    for &xi in &x {
        p.add_constraint(&[(xi, 1.0), (t, -1.0)], ComparisonOp::Ge, 0.0);
    }
    let tmin = p.solve().map_err(lp_err)?.objective();
    if tmin > ZERO {
        // among max-min solutions, prefer intervals as large as possible
        let (mut q, x) = base_problem(sys, Maximize, |_| 1.0);
        for &xi in &x {
            q.add_constraint(&[(xi, 1.0)], ComparisonOp::Ge, tmin * (1.0 - 1e-12));
        }
        let s = q.solve().map_err(lp_err)?;
        let v: Vec<f64> = x.iter().map(|&xi| s[xi]).collect();
        let mx = v.iter().cloned().fold(0.0, f64::max);
        return Ok(Feasibility::Feasible { intervals: v.iter().map(|a| a / mx).collect() });
    }
    // segments positive in some solution are not forced; probe the rest one by one
    let (q, x) = base_problem(sys, Maximize, |_| 1.0);
    let s = q.solve().map_err(lp_err)?;
    let mut forced = vec![];
    for i in 0..n {
        if s[x[i]] > ZERO {
            continue;
        }
        let (q, x) = base_problem(sys, Maximize, |j| if j == i { 1.0 } else { 0.0 });
        if q.solve().map_err(lp_err)?[x[i]] <= ZERO {
            forced.push(i);
        }
    }
    Ok(Feasibility::Infeasible { forced_zero: forced })
}

/// Structured text: one line per segment.
pub fn report_text(sys: &IntervalSystem, result: &Feasibility) -> String {
    let mut s = String::from("# gtspline knot-check v1\n");
    for (f, why) in &sys.skipped {
        s += &format!("skipped face {f}: {why}\n");
    }
    match result {
        Feasibility::Feasible { intervals } => {
            s += "feasible\n";
            for (seg, v) in sys.segments.iter().zip(intervals) {
                s += &format!("segment {} {} interval {v}\n", seg.0, seg.1);
            }
        }
        Feasibility::Infeasible { forced_zero } => {
            s += &format!("infeasible forced-zero {}\n", forced_zero.len());
            for &i in forced_zero {
                s += &format!("segment {} {} zero\n", sys.segments[i].0, sys.segments[i].1);
            }
        }
    }
    s
}
