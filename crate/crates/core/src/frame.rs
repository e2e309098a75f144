//! The bi-3 frame surrounding each central face.
//!
//! Every frame patch starts as the bicubic conversion of a 4x4 window of net
//! nodes (see [`crate::spline::frame_windows`]). Where two windows disagree
//! along the inner boundary, the overlap point is averaged and its two direct
//! neighbors are re-chosen so the combined boundary curve is C².

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::bezier::{BBPatch, Dir};
use crate::error::{domain, Result};
use crate::net::{t2_exists, NetKind, TNet};
use crate::point::Point3;
use crate::spline::{frame_windows, Piece, WindowSpec};

/// Continuity declared across a shared edge.
///
/// `beta` relates the cross derivatives of the two patches: the patch after
/// the edge has `d/dt = beta * d/dt` of the patch before it.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum Continuity {
    C2 { beta: f64 },
    C1 { beta: f64 },
}

impl Continuity {
    pub fn beta(self) -> f64 {
        match self {
            Continuity::C2 { beta } | Continuity::C1 { beta } => beta,
        }
    }

    pub fn order(self) -> usize {
        match self {
            Continuity::C2 { .. } => 2,
            Continuity::C1 { .. } => 1,
        }
    }
}

/// Patch `a` meets patch `b` across `a`'s max edge in `dir` and `b`'s min edge.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Join {
    pub a: String,
    pub b: String,
    pub dir: Dir,
    pub continuity: Continuity,
    /// Edge lies on an hv-curve (a frame edge emanating from a cap corner).
    pub hv: bool,
}

impl Join {
    fn new(a: &str, b: &str, dir: Dir, continuity: Continuity, hv: bool) -> Self {
        Self { a: a.into(), b: b.into(), dir, continuity, hv }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Frame {
    pub kind: NetKind,
    pub patches: BTreeMap<String, BBPatch>,
    pub joins: Vec<Join>,
}

impl Frame {
    pub fn get(&self, slot: &str) -> Result<&BBPatch> {
        self.patches.get(slot).ok_or_else(|| crate::GtError::Domain(format!("no frame slot {slot}")))
    }

    pub fn hv_curves(&self) -> impl Iterator<Item = &Join> {
        self.joins.iter().filter(|j| j.hv)
    }

    /// Lengths of frame edges that collapsed to a point (degenerate input).
    pub fn degenerate_edges(&self, tol: f64) -> Vec<String> {
        let mut out = Vec::new();
        for (name, p) in &self.patches {
            for e in crate::bezier::Edge::ALL {
                let c = p.edge_curve(e);
                let len: f64 = c.windows(2).map(|w| (w[1] - w[0]).norm()).sum();
                if len <= tol {
                    out.push(format!("{name}:{}", e.name()));
                }
            }
        }
        out
    }
}

/// Re-connect a T1 or T3 net into the regular grid seen from one side.
///
/// Rows run bottom to top. The left grid keeps the first fine nodes, the
/// right grid the last ones; the coarse rows are shared.
pub fn reconnect_nets(net: &TNet, right: bool) -> Result<Vec<Vec<Point3>>> {
    if net.kind == NetKind::T2 {
        return domain("re-connection applies to T1 and T3 nets");
    }
    let w = net.rows[3].len();
    Ok(net
        .rows
        .iter()
        .enumerate()
        .map(|(r, row)| if r < 3 && right { row[1..=w].to_vec() } else { row[..w].to_vec() })
        .collect())
}

fn spec(kind: NetKind, slot: &str) -> WindowSpec {
    frame_windows(kind).into_iter().find(|w| w.slot == slot).expect("known slot")
}

/// Bicubic conversion of a slot's window, ignoring any split.
fn whole(net: &TNet, slot: &str) -> Result<BBPatch> {
    let mut s = spec(net.kind, slot);
    s.piece = Piece::Whole;
    crate::spline::window_patch(net, &s)
}

/// Average two candidate end points and choose the neighbors so that the
/// two-segment curve `.. c1 c2 q | q d1 d2 ..` of equal segment lengths is C².
pub fn c2_junction(c1: Point3, c3: Point3, d0: Point3, d2: Point3) -> (Point3, Point3, Point3) {
    let q = (c3 + d0) * 0.5;
    let (c2, d1) = c2_neighbors(c1, q, d2);
    (c2, q, d1)
}

/// Neighbors of a given junction point making equal-length segments C².
pub fn c2_neighbors(c1: Point3, q: Point3, d2: Point3) -> (Point3, Point3) {
    let e = (c1 - d2) * 0.25;
    (q + e, q - e)
}

fn ins(m: &mut BTreeMap<String, BBPatch>, slot: &str, p: BBPatch) {
    m.insert(slot.to_string(), p);
}

fn c2(beta: f64) -> Continuity {
    Continuity::C2 { beta }
}

fn c1(beta: f64) -> Continuity {
    Continuity::C1 { beta }
}

pub fn build_frame(net: &TNet) -> Result<Frame> {
    match net.kind {
        NetKind::T1 => build_frame_t1(net),
        NetKind::T3 => build_frame_t3(net),
        NetKind::T2 => build_frame_t2(net, &T2FreePoints::initial_guess(net)),
    }
}

pub fn build_frame_t1(net: &TNet) -> Result<Frame> {
    if net.kind != NetKind::T1 {
        return domain("T1 frame needs a T1 net");
    }
    let mut m = BTreeMap::new();
    for s in ["l-1", "l0", "l1", "r-1", "r0", "r1"] {
        ins(&mut m, s, whole(net, s)?);
    }
    // bottom: average the two candidates for the point below the T-junction
    let mut bl = whole(net, "b-1")?;
    let mut br = whole(net, "b1")?;
    let (cc, dd) = (bl.row(3), br.row(3));
    let (x2, q, y1) = c2_junction(cc[1], cc[3], dd[0], dd[2]);
    bl.set(2, 3, x2);
    bl.set(3, 3, q);
    br.set(0, 3, q);
    br.set(1, 3, y1);
    ins(&mut m, "b-1", bl);
    ins(&mut m, "b1", br);
    // top: halves of the left and right top patches, joined at the averaged point
    let mut tl = whole(net, "t-1")?.subdivide(Dir::U, 0.5)?.0;
    let mut tr = whole(net, "t1")?.subdivide(Dir::U, 0.5)?.1;
    let (cc, dd) = (tl.row(0), tr.row(0));
    let (x2, q, y1) = c2_junction(cc[1], cc[3], dd[0], dd[2]);
    tl.set(2, 0, x2);
    tl.set(3, 0, q);
    tr.set(0, 0, q);
    tr.set(1, 0, y1);
    ins(&mut m, "t-1", tl);
    ins(&mut m, "t1", tr);

    let joins = vec![
        Join::new("l-1", "l0", Dir::V, c2(1.0), false),
        Join::new("l0", "l1", Dir::V, c2(1.0), false),
        Join::new("r-1", "r0", Dir::V, c2(1.0), false),
        Join::new("r0", "r1", Dir::V, c2(1.0), false),
        Join::new("l-1", "b-1", Dir::U, c1(1.0), true),
        Join::new("b-1", "b1", Dir::U, c2(1.0), false),
        Join::new("b1", "r-1", Dir::U, c1(1.0), true),
        Join::new("l1", "t-1", Dir::U, c1(0.5), true),
        Join::new("t-1", "t1", Dir::U, c2(1.0), false),
        Join::new("t1", "r1", Dir::U, c1(2.0), true),
    ];
    Ok(Frame { kind: NetKind::T1, patches: m, joins })
}

pub fn build_frame_t3(net: &TNet) -> Result<Frame> {
    if net.kind != NetKind::T3 {
        return domain("T3 frame needs a T3 net");
    }
    let mut m = BTreeMap::new();
    for s in ["l-1", "l0", "l1", "r-1", "r0", "r1"] {
        ins(&mut m, s, whole(net, s)?);
    }
    // bottom: B1 | B2 | B3 with two averaged junctions, completed to a C² curve
    let mut b1 = whole(net, "b1")?;
    let mut b2 = whole(net, "b2a")?;
    let b2r = whole(net, "b2b")?;
    let mut b3 = whole(net, "b3")?;
    let ql = (b1.coeff(3, 3) + b2r.coeff(0, 3)) * 0.5;
    let qr = (b2.coeff(3, 3) + b3.coeff(0, 3)) * 0.5;
    let (c1_, d2_) = (b1.coeff(1, 3), b3.coeff(2, 3));
    // c2 = ql - x, m1 = ql + x, m2 = qr - y, d1 = qr + y
    let x = ((qr - c1_) * 4.0 - (d2_ - ql)) / 15.0;
    let y = ((d2_ - ql) * 4.0 - (qr - c1_)) / 15.0;
    b1.set(2, 3, ql - x);
    b1.set(3, 3, ql);
    b2.set_row(3, &[ql, ql + x, qr - y, qr]);
    b3.set(0, 3, qr);
    b3.set(1, 3, qr + y);
    let (b2a, b2b) = b2.subdivide(Dir::U, 0.5)?;
    ins(&mut m, "b1", b1);
    ins(&mut m, "b2a", b2a);
    ins(&mut m, "b2b", b2b);
    ins(&mut m, "b3", b3);
    // top: left and right top patches meet at the averaged point, then split 2:1 and 1:2
    let mut t1 = whole(net, "tA")?;
    let mut t2 = whole(net, "tC")?;
    let (cc, dd) = (t1.row(0), t2.row(0));
    let (x2, q, y1) = c2_junction(cc[1], cc[3], dd[0], dd[2]);
    t1.set(2, 0, x2);
    t1.set(3, 0, q);
    t2.set(0, 0, q);
    t2.set(1, 0, y1);
    let (ta, tb) = t1.subdivide(Dir::U, 2.0 / 3.0)?;
    let (tc, td) = t2.subdivide(Dir::U, 1.0 / 3.0)?;
    ins(&mut m, "tA", ta);
    ins(&mut m, "tB", tb);
    ins(&mut m, "tC", tc);
    ins(&mut m, "tD", td);

    let joins = vec![
        Join::new("l-1", "l0", Dir::V, c2(1.0), false),
        Join::new("l0", "l1", Dir::V, c2(1.0), false),
        Join::new("r-1", "r0", Dir::V, c2(1.0), false),
        Join::new("r0", "r1", Dir::V, c2(1.0), false),
        Join::new("l-1", "b1", Dir::U, c1(1.0), true),
        Join::new("b1", "b2a", Dir::U, c2(0.5), false),
        Join::new("b2a", "b2b", Dir::U, c2(1.0), false),
        Join::new("b2b", "b3", Dir::U, c2(2.0), false),
        Join::new("b3", "r-1", Dir::U, c1(1.0), true),
        Join::new("l1", "tA", Dir::U, c1(2.0 / 3.0), true),
        Join::new("tA", "tB", Dir::U, c2(0.5), false),
        Join::new("tB", "tC", Dir::U, c2(1.0), false),
        Join::new("tC", "tD", Dir::U, c2(2.0), false),
        Join::new("tD", "r1", Dir::U, c1(1.5), true),
    ];
    Ok(Frame { kind: NetKind::T3, patches: m, joins })
}

/// The eight frame coefficients of a T2 frame left free for the energy solve.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct T2FreePoints {
    /// Cap corners: bottom-left, bottom-right, top-right, top-left.
    pub corners: [Point3; 4],
    /// Mid points of the inner boundary curves: bottom, right, top, left.
    pub mids: [Point3; 4],
}

impl T2FreePoints {
    pub const COUNT: usize = 8;

    /// Centroids of the nodes around each point, a planar placeholder.
    pub fn initial_guess(net: &TNet) -> Self {
        let around = |cx: i32, cy: i32| {
            let pts: Vec<Point3> = (cx - 1..=cx + 1)
                .flat_map(|x| (cy - 1..=cy + 1).map(move |y| (x, y)))
                .filter(|&(x, y)| t2_exists(x, y))
                .filter_map(|(x, y)| net.t2_node(x, y))
                .collect();
            pts.iter().copied().sum::<Point3>() / pts.len() as f64
        };
        Self {
            corners: [around(-1, -1), around(1, -1), around(1, 1), around(-1, 1)],
            mids: [around(0, -1), around(1, 0), around(0, 1), around(-1, 0)],
        }
    }

    pub fn to_vec(&self) -> Vec<Point3> {
        self.corners.iter().chain(self.mids.iter()).copied().collect()
    }

    pub fn from_slice(v: &[Point3]) -> Self {
        Self { corners: [v[0], v[1], v[2], v[3]], mids: [v[4], v[5], v[6], v[7]] }
    }
}

/// T2 frame with the eight free boundary points supplied by the caller.
pub fn build_frame_t2(net: &TNet, free: &T2FreePoints) -> Result<Frame> {
    if net.kind != NetKind::T2 {
        return domain("T2 frame needs a T2 net");
    }
    let [kbl, kbr, ktr, ktl] = free.corners;
    let [mb, mr, mt, ml] = free.mids;
    let mut blc = whole(net, "blc")?;
    let mut brc = whole(net, "brc")?;
    let mut trc = whole(net, "trc")?;
    let mut tlc = whole(net, "tlc")?;
    blc.set(3, 3, kbl);
    brc.set(0, 3, kbr);
    trc.set(0, 0, ktr);
    tlc.set(3, 0, ktl);

    // inner boundary curves: corner neighbors by C¹ prolongation, mid neighbors by C²
    let curve = |k0: Point3, n0: Point3, mid: Point3, n1: Point3, k1: Point3| {
        let (a2, b1) = c2_neighbors(n0, mid, n1);
        ([k0, n0, a2, mid], [mid, b1, n1, k1])
    };
    let (bot1, bot2) = curve(
        kbl,
        kbl + (kbl - blc.coeff(2, 3)),
        mb,
        kbr + (kbr - brc.coeff(1, 3)),
        kbr,
    );
    let (lft1, lft2) = curve(
        kbl,
        kbl + (kbl - blc.coeff(3, 2)),
        ml,
        ktl + (ktl - tlc.coeff(3, 1)),
        ktl,
    );
    let (rgt1, rgt2) = curve(
        kbr,
        kbr + (kbr - brc.coeff(0, 2)) * 0.5,
        mr,
        ktr + (ktr - trc.coeff(0, 1)) * 0.5,
        ktr,
    );
    let (top1, top2) = curve(
        ktl,
        ktl + (ktl - tlc.coeff(2, 0)) * 0.5,
        mt,
        ktr + (ktr - trc.coeff(1, 0)) * 0.5,
        ktr,
    );

    let mut b1 = whole(net, "b1")?;
    let mut b2 = whole(net, "b2")?;
    b1.set_row(3, &bot1);
    b2.set_row(3, &bot2);
    let mut l1 = whole(net, "l1")?;
    let mut l2 = whole(net, "l2")?;
    l1.set_column(3, &lft1);
    l2.set_column(3, &lft2);
    let (mut ra, mut rb) = whole(net, "ra")?.subdivide(Dir::V, 0.5)?;
    ra.set_column(0, &rgt1);
    rb.set_column(0, &rgt2);
    let (mut ta, mut tb) = whole(net, "ta")?.subdivide(Dir::U, 0.5)?;
    ta.set_row(0, &top1);
    tb.set_row(0, &top2);

    let mut m = BTreeMap::new();
    for (s, p) in [
        ("blc", blc),
        ("b1", b1),
        ("b2", b2),
        ("brc", brc),
        ("ra", ra),
        ("rb", rb),
        ("trc", trc),
        ("ta", ta),
        ("tb", tb),
        ("tlc", tlc),
        ("l1", l1),
        ("l2", l2),
    ] {
        ins(&mut m, s, p);
    }
    let joins = vec![
        Join::new("blc", "b1", Dir::U, c1(1.0), true),
        Join::new("b1", "b2", Dir::U, c2(1.0), false),
        Join::new("b2", "brc", Dir::U, c1(1.0), true),
        Join::new("blc", "l1", Dir::V, c1(1.0), true),
        Join::new("l1", "l2", Dir::V, c2(1.0), false),
        Join::new("l2", "tlc", Dir::V, c1(1.0), true),
        Join::new("brc", "ra", Dir::V, c1(0.5), true),
        Join::new("ra", "rb", Dir::V, c2(1.0), false),
        Join::new("rb", "trc", Dir::V, c1(2.0), true),
        Join::new("tlc", "ta", Dir::U, c1(0.5), true),
        Join::new("ta", "tb", Dir::U, c2(1.0), false),
        Join::new("tb", "trc", Dir::U, c1(2.0), true),
    ];
    Ok(Frame { kind: NetKind::T2, patches: m, joins })
}
