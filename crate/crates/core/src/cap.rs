//! Bi-4 caps joined G¹ to the frame.
//!
//! Along each cap side the frame supplies its boundary curve `P(u)` and its
//! cross derivative `D(u)` pointing into the cap. The cap's own cross
//! derivative is set to `a(u) D(u) + b(u) P'(u)`, which is the G¹ condition
//! `∂_v f̃ = a ∂_v f + b ∂_u f` written per side. Sides are parameterized
//! along `+x` (bottom, top) or `+y` (left, right).

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::bezier::{binomial, curve_derivative, curve_raise, curve_scale_by, BBPatch, Dir, Edge};
use crate::error::{domain, Result};
use crate::frame::{Continuity, Frame, Join};
use crate::net::NetKind;
use crate::point::Point3;

/// `a(u)` and `b(u)` of a reparameterization, monomial coefficients.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Reparameterization {
    pub a: Vec<f64>,
    pub b: Vec<f64>,
}

fn poly_eval(c: &[f64], u: f64) -> f64 {
    c.iter().rev().fold(0.0, |acc, &k| acc * u + k)
}

/// Monomial coefficients to Bernstein coefficients of degree `deg`.
fn monomial_to_bernstein(c: &[f64], deg: usize) -> Vec<f64> {
    (0..=deg)
        .map(|i| {
            c.iter()
                .enumerate()
                .filter(|(k, _)| *k <= i)
                .map(|(k, &ck)| ck * binomial(i, k) / binomial(deg, k))
                .sum()
        })
        .collect()
}

impl Reparameterization {
    /// `a(u) = a0 + a1 u`, `b(u) = c (1-u) u`.
    pub fn linear(a0: f64, a1: f64, c: f64) -> Self {
        Self { a: vec![a0, a1], b: vec![0.0, c, -c] }
    }

    pub fn identity() -> Self {
        Self::linear(1.0, 0.0, 0.0)
    }

    pub fn a_at(&self, u: f64) -> f64 {
        poly_eval(&self.a, u)
    }

    pub fn b_at(&self, u: f64) -> f64 {
        poly_eval(&self.b, u)
    }

    pub fn a_bernstein(&self) -> Vec<f64> {
        monomial_to_bernstein(&self.a, self.a.len().max(2) - 1)
    }

    pub fn b_bernstein(&self) -> Vec<f64> {
        monomial_to_bernstein(&self.b, self.b.len().max(3) - 1)
    }

    /// `b` negated, used for the mirrored sides.
    pub fn negated_b(&self) -> Self {
        Self { a: self.a.clone(), b: self.b.iter().map(|v| -v).collect() }
    }

    /// Minimum of `a` on a dense sample of `[0,1]`.
    pub fn min_a(&self) -> f64 {
        (0..=64).map(|k| self.a_at(k as f64 / 64.0)).fold(f64::INFINITY, f64::min)
    }
}

/// Side of a cap patch.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Side {
    Bottom,
    Top,
    Left,
    Right,
}

impl Side {
    pub fn edge(self) -> Edge {
        match self {
            Side::Bottom => Edge::VMin,
            Side::Top => Edge::VMax,
            Side::Left => Edge::UMin,
            Side::Right => Edge::UMax,
        }
    }

    /// Edge of the neighboring frame patch that touches this cap side.
    pub fn frame_edge(self) -> Edge {
        match self {
            Side::Bottom => Edge::VMax,
            Side::Top => Edge::VMin,
            Side::Left => Edge::UMax,
            Side::Right => Edge::UMin,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Side::Bottom => "bottom",
            Side::Top => "top",
            Side::Left => "left",
            Side::Right => "right",
        }
    }
}

/// Boundary curve of a patch along `edge` and its cross derivative pointing
/// out of the patch across that edge.
fn side_jet(p: &BBPatch, edge: Edge) -> (Vec<Point3>, Vec<Point3>) {
    let deg = match edge {
        Edge::VMin | Edge::VMax => p.deg_v(),
        Edge::UMin | Edge::UMax => p.deg_u(),
    } as f64;
    let r0 = p.inner_row(edge, 0);
    let r1 = p.inner_row(edge, 1);
    let d = r0.iter().zip(&r1).map(|(a, b)| (*a - *b) * deg).collect();
    (r0, d)
}

/// Frame data `(P, D)` seen from a cap side, `D` pointing into the cap.
pub fn frame_side_data(frame_patch: &BBPatch, side: Side) -> (Vec<Point3>, Vec<Point3>) {
    side_jet(frame_patch, side.frame_edge())
}

/// Cap data `(P, T)` along a side, `T` pointing into the cap.
pub fn cap_side_data(cap_patch: &BBPatch, side: Side) -> (Vec<Point3>, Vec<Point3>) {
    let (p, d) = side_jet(cap_patch, side.edge());
    (p, d.into_iter().map(|v| -v).collect())
}

/// The two cap coefficient rows (degree 4) next to a side, from the frame
/// curve `p`, its into-cap derivative `d` and the reparameterization.
pub fn g1_boundary_data(p: &[Point3], d: &[Point3], rho: &Reparameterization) -> Result<[Vec<Point3>; 2]> {
    let n = 4;
    let a = curve_scale_by(&rho.a_bernstein(), d);
    let b = curve_scale_by(&rho.b_bernstein(), &curve_derivative(p));
    if a.len() > n + 1 || b.len() > n + 1 || p.len() > n + 1 {
        return Err(crate::GtError::Numerical(format!(
            "reparameterized border exceeds degree {n}: a·D has degree {}, b·P' degree {}",
            a.len() - 1,
            b.len() - 1
        )));
    }
    let a = curve_raise(&a, n + 1 - a.len());
    let b = curve_raise(&b, n + 1 - b.len());
    let row0 = curve_raise(p, n + 1 - p.len());
    let row1 = row0.iter().zip(a.iter().zip(&b)).map(|(r, (x, y))| *r + (*x + *y) / n as f64).collect();
    Ok([row0, row1])
}

/// Max coefficient of the polynomial `T - a D - b P'` (degree-4 Bernstein form),
/// normalized by `scale`. Also returns the C⁰ mismatch of the boundary curves.
pub fn g1_identity_residual(
    cap_patch: &BBPatch,
    side: Side,
    frame_patch: &BBPatch,
    rho: &Reparameterization,
    scale: f64,
) -> Result<(f64, f64)> {
    let (pf, df) = frame_side_data(frame_patch, side);
    let (pc, tc) = cap_side_data(cap_patch, side);
    let want = g1_boundary_data(&pf, &df, rho)?;
    let deg = pc.len() - 1;
    let pos = curve_raise(&pf, deg + 1 - pf.len())
        .iter()
        .zip(&pc)
        .map(|(a, b)| (*a - *b).norm())
        .fold(0.0, f64::max);
    let wt: Vec<Point3> = want[0].iter().zip(&want[1]).map(|(a, b)| (*b - *a) * 4.0).collect();
    let wt = curve_raise(&wt, deg + 1 - wt.len());
    let res = wt.iter().zip(&tc).map(|(a, b)| (*a - *b).norm()).fold(0.0, f64::max);
    Ok((res / scale, pos / scale))
}

/// One G¹ cap-frame boundary.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CapBoundary {
    pub cap: String,
    pub side: Side,
    pub frame: String,
    pub rho: Reparameterization,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Cap {
    pub kind: NetKind,
    pub patches: BTreeMap<String, BBPatch>,
    pub boundaries: Vec<CapBoundary>,
    /// Joins between cap patches.
    pub joins: Vec<Join>,
}

impl Cap {
    pub fn get(&self, slot: &str) -> Result<&BBPatch> {
        self.patches.get(slot).ok_or_else(|| crate::GtError::Domain(format!("no cap slot {slot}")))
    }
}

pub fn reparam_table_t1() -> [(Side, Reparameterization); 3] {
    [
        (Side::Left, Reparameterization::linear(1.0, -0.5, 0.0)),
        (Side::Top, Reparameterization::linear(1.0, 0.0, 1.0)),
        (Side::Bottom, Reparameterization::linear(1.0, 0.0, -0.5)),
    ]
}

/// Left-half table; the right half negates `b` on top and bottom.
pub fn reparam_table_t3() -> [(Side, Reparameterization); 3] {
    [
        (Side::Left, Reparameterization::linear(1.0, -1.0 / 3.0, 0.0)),
        (Side::Top, Reparameterization::linear(1.0, 0.0, 0.5)),
        (Side::Bottom, Reparameterization::linear(1.0, 0.0, -1.0 / 3.0)),
    ]
}

/// Per cap patch (bl, br, tr, tl) its two frame sides.
pub fn reparam_table_t2() -> [(&'static str, [(Side, Reparameterization); 2]); 4] {
    let r = Reparameterization::linear;
    [
        ("bl", [(Side::Bottom, r(1.0, -0.25, -0.25)), (Side::Left, r(1.0, -0.25, -0.25))]),
        ("br", [(Side::Bottom, r(0.75, -0.25, 0.25)), (Side::Right, r(1.0, -0.25, 0.5))]),
        ("tr", [(Side::Top, r(0.75, -0.25, -0.5)), (Side::Right, r(0.75, -0.25, -0.5))]),
        ("tl", [(Side::Top, r(1.0, -0.25, 0.5)), (Side::Left, r(0.75, -0.25, 0.25))]),
    ]
}

/// Fill a bi-4 cap patch from side data; columns still missing their middle
/// coefficient get it from the rule that makes the column of true degree 3.
fn assemble(sides: &[(Side, [Vec<Point3>; 2])]) -> BBPatch {
    let mut p = BBPatch::constant(4, 4, Point3::ZERO);
    let mut known = [[false; 5]; 5];
    let mut order: Vec<&(Side, [Vec<Point3>; 2])> = sides.iter().collect();
    order.sort_by_key(|(s, _)| matches!(s, Side::Bottom | Side::Top));
    for (side, rows) in order {
        for (k, row) in rows.iter().enumerate() {
            p.set_inner_row(side.edge(), k, row);
            for t in 0..5 {
                let (i, j) = match side {
                    Side::Bottom => (t, k),
                    Side::Top => (t, 4 - k),
                    Side::Left => (k, t),
                    Side::Right => (4 - k, t),
                };
                known[i][j] = true;
            }
        }
    }
    for (i, col) in known.iter().enumerate() {
        if !col[2] {
            let c = p.column(i);
            p.set(i, 2, (c[1] * 4.0 + c[3] * 4.0 - c[0] - c[4]) / 6.0);
        }
    }
    p
}

fn side_rows(frame: &Frame, slot: &str, side: Side, rho: &Reparameterization) -> Result<[Vec<Point3>; 2]> {
    let (p, d) = frame_side_data(frame.get(slot)?, side);
    g1_boundary_data(&p, &d, rho)
}

fn cap_from_spec(
    kind: NetKind,
    frame: &Frame,
    spec: Vec<(&str, Vec<(Side, &str, Reparameterization)>)>,
    joins: Vec<Join>,
) -> Result<Cap> {
    let mut patches = BTreeMap::new();
    let mut boundaries = Vec::new();
    for (name, sides) in spec {
        let mut data = Vec::new();
        for (side, slot, rho) in sides {
            data.push((side, side_rows(frame, slot, side, &rho)?));
            boundaries.push(CapBoundary { cap: name.into(), side, frame: slot.into(), rho });
        }
        patches.insert(name.to_string(), assemble(&data));
    }
    Ok(Cap { kind, patches, boundaries, joins })
}

fn cap_join(a: &str, b: &str, beta: f64) -> Join {
    Join { a: a.into(), b: b.into(), dir: Dir::U, continuity: Continuity::C1 { beta }, hv: false }
}

pub fn build_cap_t1(frame: &Frame) -> Result<Cap> {
    if frame.kind != NetKind::T1 {
        return domain("T1 cap needs a T1 frame");
    }
    let [(_, left), (_, top), (_, bot)] = reparam_table_t1();
    let spec = vec![
        ("pl", vec![(Side::Left, "l0", left.clone()), (Side::Top, "t-1", top.clone()), (Side::Bottom, "b-1", bot.clone())]),
        ("pr", vec![(Side::Right, "r0", left), (Side::Top, "t1", top.negated_b()), (Side::Bottom, "b1", bot.negated_b())]),
    ];
    cap_from_spec(NetKind::T1, frame, spec, vec![cap_join("pl", "pr", 1.0)])
}

pub fn build_cap_t3(frame: &Frame) -> Result<Cap> {
    if frame.kind != NetKind::T3 {
        return domain("T3 cap needs a T3 frame");
    }
    let [(_, left), (_, top), (_, bot)] = reparam_table_t3();
    let (topn, botn) = (top.negated_b(), bot.negated_b());
    let spec = vec![
        ("p1", vec![(Side::Left, "l0", left.clone()), (Side::Top, "tA", top.clone()), (Side::Bottom, "b1", bot.clone())]),
        ("p2", vec![(Side::Top, "tB", topn.clone()), (Side::Bottom, "b2a", botn.clone())]),
        ("p3", vec![(Side::Top, "tC", top), (Side::Bottom, "b2b", bot)]),
        ("p4", vec![(Side::Right, "r0", left), (Side::Top, "tD", topn), (Side::Bottom, "b3", botn)]),
    ];
    let joins = vec![cap_join("p1", "p2", 0.5), cap_join("p2", "p3", 1.0), cap_join("p3", "p4", 2.0)];
    cap_from_spec(NetKind::T3, frame, spec, joins)
}

/// T2 cap from a frame with its free points fixed and the nine free interior
/// coefficients at composite indices `(2,4,6)^2`, listed row by row.
pub fn assemble_cap_t2(frame: &Frame, inner: &[Point3; 9]) -> Result<Cap> {
    if frame.kind != NetKind::T2 {
        return domain("T2 cap needs a T2 frame");
    }
    let table = reparam_table_t2();
    let frame_slot = |cap: &str, side: Side| match (cap, side) {
        ("bl", Side::Bottom) => "b1",
        ("bl", _) => "l1",
        ("br", Side::Bottom) => "b2",
        ("br", _) => "ra",
        ("tr", Side::Top) => "tb",
        ("tr", _) => "rb",
        ("tl", Side::Top) => "ta",
        _ => "l2",
    };
    let offset = |cap: &str| match cap {
        "bl" => (0, 0),
        "br" => (4, 0),
        "tr" => (4, 4),
        _ => (0, 4),
    };
    // composite 9x9 grid
    let mut g = [[Point3::ZERO; 9]; 9];
    let mut boundaries = Vec::new();
    for (cap, sides) in &table {
        let (oi, oj) = offset(cap);
        for (side, rho) in sides {
            let slot = frame_slot(cap, *side);
            let rows = side_rows(frame, slot, *side, rho)?;
            for (k, row) in rows.iter().enumerate() {
                for (t, &p) in row.iter().enumerate() {
                    let (i, j) = match side {
                        Side::Bottom => (t, k),
                        Side::Top => (t, 4 - k),
                        Side::Left => (k, t),
                        Side::Right => (4 - k, t),
                    };
                    g[oi + i][oj + j] = p;
                }
            }
            boundaries.push(CapBoundary { cap: cap.to_string(), side: *side, frame: slot.into(), rho: rho.clone() });
        }
    }
    // interior: free values at (2,4,6)^2, C² across the composite midlines
    let idx = [2usize, 4, 6];
    for (a, &i) in idx.iter().enumerate() {
        for (b, &j) in idx.iter().enumerate() {
            g[i][j] = inner[b * 3 + a];
        }
    }
    let fill = |c2: Point3, c4: Point3, c6: Point3| {
        let e = (c6 - c2) * 0.25;
        (c4 - e, c4 + e)
    };
    for &j in &idx {
        let (c3, c5) = fill(g[2][j], g[4][j], g[6][j]);
        g[3][j] = c3;
        g[5][j] = c5;
    }
    for i in 2..=6 {
        let (c3, c5) = fill(g[i][2], g[i][4], g[i][6]);
        g[i][3] = c3;
        g[i][5] = c5;
    }
    let mut patches = BTreeMap::new();
    for cap in ["bl", "br", "tr", "tl"] {
        let (oi, oj) = offset(cap);
        patches.insert(cap.to_string(), BBPatch::from_fn(4, 4, |i, j| g[oi + i][oj + j]));
    }
    let joins = vec![
        cap_join("bl", "br", 1.0),
        cap_join("tl", "tr", 1.0),
        Join { a: "bl".into(), b: "tl".into(), dir: Dir::V, continuity: Continuity::C1 { beta: 1.0 }, hv: false },
        Join { a: "br".into(), b: "tr".into(), dir: Dir::V, continuity: Continuity::C1 { beta: 1.0 }, hv: false },
    ];
    Ok(Cap { kind: NetKind::T2, patches, boundaries, joins })
}
