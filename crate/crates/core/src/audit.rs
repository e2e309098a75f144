//! Numerical verification of continuity claims.

use crate::bezier::{BBPatch, Dir, Edge};
use crate::cap::Reparameterization;
use crate::surface::{EdgeRef, GTSurface, JoinClass, SurfaceJoin};
use crate::point::{bbox_diagonal, Point3};

pub const DEFAULT_SAMPLES: usize = 33;

fn scale(a: &BBPatch, b: &BBPatch) -> f64 {
    bbox_diagonal(a.coeffs().iter().chain(b.coeffs())).max(1e-300)
}

fn edge_point(dir: Dir, at: f64, s: f64) -> (f64, f64) {
    match dir {
        Dir::U => (at, s),
        Dir::V => (s, at),
    }
}

fn samples(n: usize) -> impl Iterator<Item = f64> {
    let n = n.max(2);
    (0..n).map(move |k| k as f64 / (n - 1) as f64)
}

/// Per-order residuals of a β-scaled cross-derivative match.
///
/// `a` meets `b` across `a`'s max edge in `dir` and `b`'s min edge; entry `k`
/// is the max over samples of `|D^k b - beta^k D^k a|`, normalized by the
/// bounding-box diagonal of both patches.
pub fn cross_jet_residuals(a: &BBPatch, b: &BBPatch, dir: Dir, beta: f64, order: usize, n: usize) -> Vec<f64> {
    let sc = scale(a, b);
    (0..=order)
        .map(|k| {
            samples(n)
                .map(|s| {
                    let (ua, va) = edge_point(dir, 1.0, s);
                    let (ub, vb) = edge_point(dir, 0.0, s);
                    let da = a.partial_deriv(ua, va, dir, k).unwrap_or(Point3::ZERO);
                    let db = b.partial_deriv(ub, vb, dir, k).unwrap_or(Point3::ZERO);
                    (db - da * beta.powi(k as i32)).norm()
                })
                .fold(0.0, f64::max)
                / sc
        })
        .collect()
}

/// Max normalized position mismatch along the shared edge.
pub fn c0_residual(a: &BBPatch, b: &BBPatch, dir: Dir, n: usize) -> f64 {
    cross_jet_residuals(a, b, dir, 1.0, 0, n)[0]
}

/// C¹-with-β residual (first order only).
pub fn c_beta_residual(a: &BBPatch, b: &BBPatch, dir: Dir, beta: f64, n: usize) -> f64 {
    cross_jet_residuals(a, b, dir, beta, 1, n)[1]
}

/// C² residual: worst of the first and second order β-scaled matches.
pub fn c2_residual(a: &BBPatch, b: &BBPatch, dir: Dir, beta: f64, n: usize) -> f64 {
    let r = cross_jet_residuals(a, b, dir, beta, 2, n);
    r[1].max(r[2])
}

// ---------------------------------------------------------------------------
// Edge joins of whole surfaces

/// Position and derivatives of a patch at parameter `s` along one of its edges.
#[derive(Debug, Clone, Copy)]
pub struct EdgeJet {
    pub pos: Point3,
    /// First derivative across the edge, pointing out of the patch.
    pub out: Point3,
    /// Second derivative across the edge.
    pub out2: Point3,
    /// Derivative along the edge parameter.
    pub along: Point3,
}

pub fn edge_jet(p: &BBPatch, edge: Edge, s: f64) -> EdgeJet {
    let (u, v, sign) = match edge {
        Edge::VMin => (s, 0.0, -1.0),
        Edge::VMax => (s, 1.0, 1.0),
        Edge::UMin => (0.0, s, -1.0),
        Edge::UMax => (1.0, s, 1.0),
    };
    let cross = edge.cross_dir();
    let along = match cross {
        Dir::U => Dir::V,
        Dir::V => Dir::U,
    };
    let d = |dir, k| p.partial_deriv(u, v, dir, k).unwrap_or(Point3::ZERO);
    EdgeJet { pos: d(cross, 0), out: d(cross, 1) * sign, out2: d(cross, 2), along: d(along, 1) }
}

/// Worst residuals of one join over `n` samples, normalized by the bounding
/// box diagonal of both patches.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct JoinResiduals {
    pub c0: f64,
    /// First-order mismatch: β-scaled cross derivatives, or the G¹ identity.
    pub first: f64,
    /// Second-order β²-scaled mismatch (C² joins only).
    pub second: f64,
}

pub fn join_residuals(pa: &BBPatch, pb: &BBPatch, join: &SurfaceJoin, n: usize) -> JoinResiduals {
    let sc = scale(pa, pb);
    let mut r = JoinResiduals::default();
    for w in samples(n) {
        let (sa, sb) = (join.a.at(w), join.b.at(w));
        let a = edge_jet(pa, join.a.edge, sa);
        let b = edge_jet(pb, join.b.edge, sb);
        r.c0 = r.c0.max((a.pos - b.pos).norm() / sc);
        match &join.class {
            JoinClass::C2 { beta } | JoinClass::C1 { beta } => {
                r.first = r.first.max((a.out * *beta + b.out).norm() / sc);
                if matches!(join.class, JoinClass::C2 { .. }) {
                    r.second = r.second.max((a.out2 * (beta * beta) - b.out2).norm() / sc);
                }
            }
            JoinClass::G1 { rho } => {
                let want = a.out * rho.a_at(sa) + a.along * rho.b_at(sa);
                r.first = r.first.max((want + b.out).norm() / sc);
            }
        }
    }
    r
}

/// G¹ residual where `f` meets `f_tilde` across `f`'s `v = 1` edge and
/// `f_tilde`'s `v = 0` edge: max of `|∂_v f̃ - a ∂_v f - b ∂_u f|`.
/// A position mismatch is returned separately as the first value.
pub fn g1_residual(f: &BBPatch, f_tilde: &BBPatch, rho: &Reparameterization, n: usize) -> (f64, f64) {
    let join = SurfaceJoin {
        a: EdgeRef::whole(0, Edge::VMax),
        b: EdgeRef::whole(1, Edge::VMin),
        class: JoinClass::G1 { rho: rho.clone() },
        hv: false,
    };
    let r = join_residuals(f, f_tilde, &join, n);
    (r.c0, r.first)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerances {
    pub c0: f64,
    pub g1: f64,
    pub c1: f64,
    pub c2: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self { c0: 1e-10, g1: 1e-10, c1: 1e-10, c2: 1e-12 }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct EdgeRecord {
    pub join: usize,
    pub a: String,
    pub b: String,
    pub declared: &'static str,
    pub hv: bool,
    pub residuals: JoinResiduals,
    /// Best class the residuals support: `C0-fail`, `C0`, `G1`, `C1b` or `C2`.
    pub achieved: &'static str,
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct ContinuityReport {
    pub records: Vec<EdgeRecord>,
}

impl ContinuityReport {
    pub fn all_pass(&self) -> bool {
        self.records.iter().all(|r| r.pass)
    }

    pub fn failures(&self) -> impl Iterator<Item = &EdgeRecord> {
        self.records.iter().filter(|r| !r.pass)
    }

    pub fn worst(&self, class: &str) -> f64 {
        self.records
            .iter()
            .filter(|r| r.declared == class)
            .map(|r| r.residuals.first.max(r.residuals.second))
            .fold(0.0, f64::max)
    }

    pub fn to_text(&self) -> String {
        let mut s = String::from("# gtspline continuity v1\n");
        for r in &self.records {
            s += &format!(
                "join {} {} {} declared={}{} c0={:.3e} d1={:.3e} d2={:.3e} achieved={} {}\n",
                r.join,
                r.a,
                r.b,
                r.declared,
                if r.hv { " hv" } else { "" },
                r.residuals.c0,
                r.residuals.first,
                r.residuals.second,
                r.achieved,
                if r.pass { "PASS" } else { "FAIL" }
            );
        }
        let bad = self.failures().count();
        s += &format!("summary joins={} failed={bad} {}\n", self.records.len(), if bad == 0 { "PASS" } else { "FAIL" });
        s
    }
}

fn edge_label(s: &GTSurface, e: &EdgeRef) -> String {
    format!("{}:{}[{},{}]", s.patches[e.patch].name, e.edge.name(), e.s0, e.s1)
}

pub fn audit_surface(s: &GTSurface, tol: &Tolerances, n: usize) -> ContinuityReport {
    let records = s
        .joins
        .iter()
        .enumerate()
        .map(|(k, j)| {
            let r = join_residuals(&s.patches[j.a.patch].patch, &s.patches[j.b.patch].patch, j, n);
            let achieved = if r.c0 > tol.c0 {
                "C0-fail"
            } else {
                match j.class {
                    JoinClass::G1 { .. } if r.first <= tol.g1 => "G1",
                    JoinClass::C2 { .. } if r.first <= tol.c2 && r.second <= tol.c2 => "C2",
                    JoinClass::C2 { .. } | JoinClass::C1 { .. } if r.first <= tol.c1 => "C1b",
                    _ => "C0",
                }
            };
            let pass = match j.class {
                JoinClass::G1 { .. } => achieved == "G1",
                JoinClass::C1 { .. } => achieved == "C1b",
                JoinClass::C2 { .. } => achieved == "C2",
            };
            EdgeRecord {
                join: k,
                a: edge_label(s, &j.a),
                b: edge_label(s, &j.b),
                declared: j.class.name(),
                hv: j.hv,
                residuals: r,
                achieved,
                pass,
            }
        })
        .collect();
    ContinuityReport { records }
}
