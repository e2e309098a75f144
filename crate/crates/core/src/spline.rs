//! Uniform bicubic B-spline to Bézier conversion and the tensor-border of a net.

use crate::bezier::{BBPatch, Dir, Edge};
use crate::error::Result;
use crate::net::{t2_exists, NetKind, TNet};
use crate::point::Point3;

/// Uniform cubic B-spline segment `d0..d3` to its four Bézier coefficients.
pub fn bspline_segment(d: [Point3; 4]) -> [Point3; 4] {
    [
        (d[0] + d[1] * 4.0 + d[2]) / 6.0,
        (d[1] * 2.0 + d[2]) / 3.0,
        (d[1] + d[2] * 2.0) / 3.0,
        (d[1] + d[2] * 4.0 + d[3]) / 6.0,
    ]
}

/// Convert a 4x4 window of uniform B-spline nodes to a bicubic patch.
///
/// `rows[j][i]`: `j` counts rows bottom to top (the `v` direction), `i` counts
/// nodes left to right (the `u` direction).
pub fn bspline_to_bb(rows: &[[Point3; 4]; 4]) -> BBPatch {
    // convert along u first, then along v
    let mut half = [[Point3::ZERO; 4]; 4];
    for j in 0..4 {
        half[j] = bspline_segment(rows[j]);
    }
    let mut grid = vec![vec![Point3::ZERO; 4]; 4];
    for i in 0..4 {
        let col = bspline_segment([half[0][i], half[1][i], half[2][i], half[3][i]]);
        for j in 0..4 {
            grid[i][j] = col[j];
        }
    }
    BBPatch::from_fn(3, 3, |i, j| grid[i][j])
}

/// Which piece of a split window patch a frame slot keeps.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Piece {
    Whole,
    First(Dir, f64),
    Second(Dir, f64),
}

/// A frame slot sourced from a 4x4 window of net nodes.
///
/// `nodes[j][i]` holds the `(row, col)` of the net node, or `None` where the
/// window reaches into the central face. Missing nodes only influence
/// coefficients that the frame construction overwrites.
#[derive(Debug, Clone, PartialEq)]
pub struct WindowSpec {
    pub slot: &'static str,
    pub nodes: [[Option<(usize, usize)>; 4]; 4],
    pub piece: Piece,
    /// Edges of the slot patch that lie on the outer boundary of the net region.
    pub outer: &'static [Edge],
}

fn lr_window(
    slot: &'static str,
    right: bool,
    col0: usize,
    row0: usize,
    piece: Piece,
    outer: &'static [Edge],
) -> WindowSpec {
    // left net pairs coarse c_k with fine f_k, right net pairs c_k with f_{k+1}
    let mut nodes = [[None; 4]; 4];
    for (j, row) in nodes.iter_mut().enumerate() {
        for (i, n) in row.iter_mut().enumerate() {
            let r = row0 + j;
            let k = col0 + i;
            let c = if right && r < 3 { k + 1 } else { k };
            *n = Some((r, c));
        }
    }
    WindowSpec { slot, nodes, piece, outer }
}

fn t2_window(slot: &'static str, xs: [i32; 4], ys: [i32; 4], piece: Piece, outer: &'static [Edge]) -> WindowSpec {
    let mut nodes = [[None; 4]; 4];
    for (j, row) in nodes.iter_mut().enumerate() {
        for (i, n) in row.iter_mut().enumerate() {
            let (x, y) = (xs[i], ys[j]);
            if t2_exists(x, y) {
                let r = (y + 3) as usize;
                let c = (-3..x).filter(|&xx| t2_exists(xx, y)).count();
                *n = Some((r, c));
            }
        }
    }
    WindowSpec { slot, nodes, piece, outer }
}

/// The window specs of every frame slot of a net kind.
pub fn frame_windows(kind: NetKind) -> Vec<WindowSpec> {
    use Edge::*;
    use Piece::*;
    match kind {
        NetKind::T1 => vec![
            lr_window("l-1", false, 0, 0, Whole, &[UMin, VMin]),
            lr_window("l0", false, 0, 1, Whole, &[UMin]),
            lr_window("l1", false, 0, 2, Whole, &[UMin, VMax]),
            lr_window("b-1", false, 1, 0, Whole, &[VMin]),
            lr_window("b1", true, 1, 0, Whole, &[VMin]),
            lr_window("r-1", true, 2, 0, Whole, &[UMax, VMin]),
            lr_window("r0", true, 2, 1, Whole, &[UMax]),
            lr_window("r1", true, 2, 2, Whole, &[UMax, VMax]),
            lr_window("t-1", false, 1, 2, First(Dir::U, 0.5), &[VMax]),
            lr_window("t1", true, 1, 2, Second(Dir::U, 0.5), &[VMax]),
        ],
        NetKind::T3 => vec![
            lr_window("l-1", false, 0, 0, Whole, &[UMin, VMin]),
            lr_window("l0", false, 0, 1, Whole, &[UMin]),
            lr_window("l1", false, 0, 2, Whole, &[UMin, VMax]),
            lr_window("b1", false, 1, 0, Whole, &[VMin]),
            lr_window("b2a", false, 2, 0, First(Dir::U, 0.5), &[VMin]),
            lr_window("b2b", true, 1, 0, Second(Dir::U, 0.5), &[VMin]),
            lr_window("b3", true, 2, 0, Whole, &[VMin]),
            lr_window("r-1", true, 3, 0, Whole, &[UMax, VMin]),
            lr_window("r0", true, 3, 1, Whole, &[UMax]),
            lr_window("r1", true, 3, 2, Whole, &[UMax, VMax]),
            lr_window("tA", false, 1, 2, First(Dir::U, 2.0 / 3.0), &[VMax]),
            lr_window("tB", false, 1, 2, Second(Dir::U, 2.0 / 3.0), &[VMax]),
            lr_window("tC", true, 2, 2, First(Dir::U, 1.0 / 3.0), &[VMax]),
            lr_window("tD", true, 2, 2, Second(Dir::U, 1.0 / 3.0), &[VMax]),
        ],
        NetKind::T2 => vec![
            t2_window("blc", [-3, -2, -1, 0], [-3, -2, -1, 0], Whole, &[UMin, VMin]),
            t2_window("b1", [-2, -1, 0, 1], [-3, -2, -1, 0], Whole, &[VMin]),
            t2_window("b2", [-1, 0, 1, 2], [-3, -2, -1, 0], Whole, &[VMin]),
            t2_window("brc", [0, 1, 2, 3], [-3, -2, -1, 1], Whole, &[UMax, VMin]),
            t2_window("ra", [0, 1, 2, 3], [-2, -1, 1, 2], First(Dir::V, 0.5), &[UMax]),
            t2_window("rb", [0, 1, 2, 3], [-2, -1, 1, 2], Second(Dir::V, 0.5), &[UMax]),
            t2_window("trc", [-1, 1, 2, 3], [-1, 1, 2, 3], Whole, &[UMax, VMax]),
            t2_window("ta", [-2, -1, 1, 2], [0, 1, 2, 3], First(Dir::U, 0.5), &[VMax]),
            t2_window("tb", [-2, -1, 1, 2], [0, 1, 2, 3], Second(Dir::U, 0.5), &[VMax]),
            t2_window("tlc", [-3, -2, -1, 1], [0, 1, 2, 3], Whole, &[UMin, VMax]),
            t2_window("l1", [-3, -2, -1, 0], [-2, -1, 0, 1], Whole, &[UMin]),
            t2_window("l2", [-3, -2, -1, 0], [-1, 0, 1, 2], Whole, &[UMin]),
        ],
    }
}

/// Gather the window nodes, filling gaps from the nearest present node of the row.
fn gather(net: &TNet, spec: &WindowSpec) -> [[Point3; 4]; 4] {
    let mut out = [[Point3::ZERO; 4]; 4];
    for j in 0..4 {
        for i in 0..4 {
            let src = spec.nodes[j][i]
                .or_else(|| (0..4).rev().filter(|&k| k < i).find_map(|k| spec.nodes[j][k]))
                .or_else(|| (0..4).find_map(|k| spec.nodes[j][k]))
                .or_else(|| spec.nodes[j - 1][i]);
            let (r, c) = src.expect("window row has a node");
            out[j][i] = net.node(r, c);
        }
    }
    out
}

/// The bicubic patch of a window, before any frame modification.
pub fn window_patch(net: &TNet, spec: &WindowSpec) -> Result<BBPatch> {
    let p = bspline_to_bb(&gather(net, spec));
    Ok(match spec.piece {
        Piece::Whole => p,
        Piece::First(d, t) => p.subdivide(d, t)?.0,
        Piece::Second(d, t) => p.subdivide(d, t)?.1,
    })
}

/// Three outermost coefficient rows of a frame slot along one outer edge.
#[derive(Debug, Clone, PartialEq)]
pub struct BorderStrip {
    pub slot: &'static str,
    pub edge: Edge,
    /// `rows[k]` is the `k`-th row counted inward from the edge.
    pub rows: Vec<Vec<Point3>>,
}

/// The tensor-border of a net: the data every frame must reproduce so that it
/// joins the surrounding regular bicubic patches with C² continuity.
pub fn tensor_border(net: &TNet) -> Result<Vec<BorderStrip>> {
    let mut out = Vec::new();
    for spec in frame_windows(net.kind) {
        let p = window_patch(net, &spec)?;
        for &edge in spec.outer {
            out.push(BorderStrip { slot: spec.slot, edge, rows: (0..3).map(|k| p.inner_row(edge, k)).collect() });
        }
    }
    Ok(out)
}
