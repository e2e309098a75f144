//! A whole GT-spline surface: regular bicubic patches, frames and caps, with
//! every shared edge recorded as an explicit join.

use std::collections::{BTreeMap, BTreeSet};

use crate::bezier::{BBPatch, Dir, Edge};
use crate::cap::{build_cap_t1, build_cap_t3, Cap, Reparameterization};
use crate::detect::{detect_tnets, embed, DetectedNet, SeparationReport, Template};
use crate::error::{GtError, Result};
use crate::frame::{build_frame, Continuity, Frame};
use crate::net::{NetKind, TNet};
use crate::spline::{bspline_to_bb, frame_windows, Piece};
use crate::tmesh::TMesh;

/// Frame and cap of one net.
pub fn build_net(net: &TNet) -> Result<(Frame, Cap)> {
    match net.kind {
        NetKind::T1 => {
            let f = build_frame(net)?;
            let c = build_cap_t1(&f)?;
            Ok((f, c))
        }
        NetKind::T3 => {
            let f = build_frame(net)?;
            let c = build_cap_t3(&f)?;
            Ok((f, c))
        }
        NetKind::T2 => crate::t2::build_t2(net),
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct NamedPatch {
    pub name: String,
    pub patch: BBPatch,
    /// Where the patch came from, free text.
    pub source: String,
}

/// Part `[s0, s1]` of one patch edge (`s0 > s1` runs against the edge parameter).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EdgeRef {
    pub patch: usize,
    pub edge: Edge,
    pub s0: f64,
    pub s1: f64,
}

impl EdgeRef {
    pub fn whole(patch: usize, edge: Edge) -> Self {
        Self { patch, edge, s0: 0.0, s1: 1.0 }
    }

    pub fn at(&self, w: f64) -> f64 {
        self.s0 + w * (self.s1 - self.s0)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum JoinClass {
    /// Cross derivatives of `b` equal `beta^k` times those of `a`.
    C2 { beta: f64 },
    C1 { beta: f64 },
    /// `a` is a frame patch, `b` a cap patch; the into-cap derivative is
    /// `rho.a` times the frame's outward derivative plus `rho.b` times its
    /// derivative along the edge.
    G1 { rho: Reparameterization },
}

impl JoinClass {
    pub fn name(&self) -> &'static str {
        match self {
            JoinClass::C2 { .. } => "C2",
            JoinClass::C1 { .. } => "C1",
            JoinClass::G1 { .. } => "G1",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SurfaceJoin {
    pub a: EdgeRef,
    pub b: EdgeRef,
    pub class: JoinClass,
    /// Edge lies on an hv-curve.
    pub hv: bool,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct GTSurface {
    pub patches: Vec<NamedPatch>,
    pub joins: Vec<SurfaceJoin>,
    /// Faces without a patch: quads whose 4x4 neighborhood is not regular,
    /// and non-quads of nets that were not built.
    pub uncovered: Vec<usize>,
}

impl GTSurface {
    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.patches.iter().position(|p| p.name == name)
    }

    pub fn get(&self, name: &str) -> Option<&BBPatch> {
        self.index_of(name).map(|i| &self.patches[i].patch)
    }

    /// Total length of `edge` of patch `p` covered by joins.
    pub fn coverage(&self, p: usize, edge: Edge) -> f64 {
        self.joins_of(p).iter().filter(|j| j.a.edge == edge).map(|j| (j.a.s1 - j.a.s0).abs()).sum()
    }

    /// Joins touching patch `p`, each seen with `p` on the `a` side.
    pub fn joins_of(&self, p: usize) -> Vec<SurfaceJoin> {
        self.joins
            .iter()
            .filter_map(|j| {
                if j.a.patch == p {
                    Some(j.clone())
                } else if j.b.patch == p {
                    Some(SurfaceJoin { a: j.b, b: j.a, ..j.clone() })
                } else {
                    None
                }
            })
            .collect()
    }
}

/// A patch edge lying on the mesh edge `from -> to`, covering `[t0, t1]` of it.
#[derive(Debug, Clone, Copy)]
struct MeshEdgeSpan {
    patch: usize,
    edge: Edge,
    from: usize,
    to: usize,
    t0: f64,
    t1: f64,
}

fn edge_corners(edge: Edge) -> ((usize, usize), (usize, usize)) {
    // (row, col) in a 4x4 window, start and end of the edge parameter
    match edge {
        Edge::VMin => ((1, 1), (1, 2)),
        Edge::VMax => ((2, 1), (2, 2)),
        Edge::UMin => ((1, 1), (2, 1)),
        Edge::UMax => ((1, 2), (2, 2)),
    }
}

fn piece_interval(piece: Piece, edge: Edge) -> (f64, f64) {
    let along = match edge.cross_dir() {
        Dir::U => Dir::V,
        Dir::V => Dir::U,
    };
    match piece {
        Piece::First(d, t) if d == along => (0.0, t),
        Piece::Second(d, t) if d == along => (t, 1.0),
        _ => (0.0, 1.0),
    }
}

fn max_edge(dir: Dir) -> Edge {
    match dir {
        Dir::U => Edge::UMax,
        Dir::V => Edge::VMax,
    }
}

fn min_edge(dir: Dir) -> Edge {
    match dir {
        Dir::U => Edge::UMin,
        Dir::V => Edge::VMin,
    }
}

fn class_of(c: Continuity) -> JoinClass {
    match c {
        Continuity::C2 { beta } => JoinClass::C2 { beta },
        Continuity::C1 { beta } => JoinClass::C1 { beta },
    }
}

struct Builder {
    surface: GTSurface,
    spans: Vec<MeshEdgeSpan>,
}

impl Builder {
    fn push(&mut self, name: String, patch: BBPatch, source: String) -> usize {
        self.surface.patches.push(NamedPatch { name, patch, source });
        self.surface.patches.len() - 1
    }

    fn add_regular(&mut self, mesh: &TMesh, face: usize) -> bool {
        let Ok(emb) = embed(mesh, &Template::regular(), face, 0) else { return false };
        let node = |i: usize, j: usize| emb.vertex[j * 4 + i];
        let mut rows = [[crate::Point3::ZERO; 4]; 4];
        for (j, row) in rows.iter_mut().enumerate() {
            for (i, p) in row.iter_mut().enumerate() {
                *p = mesh.vertices[node(i, j)];
            }
        }
        let idx = self.push(format!("q{face}"), bspline_to_bb(&rows), format!("regular face {face}"));
        for edge in Edge::ALL {
            let ((r0, c0), (r1, c1)) = edge_corners(edge);
            let (from, to) = (node(c0, r0), node(c1, r1));
            self.spans.push(MeshEdgeSpan { patch: idx, edge, from, to, t0: 0.0, t1: 1.0 });
        }
        true
    }

    fn add_net(&mut self, k: usize, det: &DetectedNet) -> Result<()> {
        let net = &det.net;
        let (frame, cap) = build_net(net)?;
        let kind = net.kind.name();
        let mut idx = BTreeMap::new();
        for (slot, p) in &frame.patches {
            let name = format!("n{k}/f/{slot}");
            let src = format!("{kind} frame of net at face {}", det.face);
            idx.insert(format!("f/{slot}"), self.push(name, p.clone(), src));
        }
        for (slot, p) in &cap.patches {
            let name = format!("n{k}/c/{slot}");
            let src = format!("{kind} cap of net at face {}", det.face);
            idx.insert(format!("c/{slot}"), self.push(name, p.clone(), src));
        }
        for spec in frame_windows(net.kind) {
            let patch = idx[&format!("f/{}", spec.slot)];
            for &edge in spec.outer {
                let ((r0, c0), (r1, c1)) = edge_corners(edge);
                let id = |r: usize, c: usize| -> Result<usize> {
                    let (nr, nc) = spec.nodes[r][c]
                        .ok_or_else(|| GtError::Numerical(format!("window {} lacks a corner node", spec.slot)))?;
                    Ok(net.ids[nr][nc])
                };
                let (t0, t1) = piece_interval(spec.piece, edge);
                self.spans.push(MeshEdgeSpan { patch, edge, from: id(r0, c0)?, to: id(r1, c1)?, t0, t1 });
            }
        }
        for (prefix, joins) in [("f", &frame.joins), ("c", &cap.joins)] {
            for j in joins {
                let a = idx[&format!("{prefix}/{}", j.a)];
                let b = idx[&format!("{prefix}/{}", j.b)];
                self.surface.joins.push(SurfaceJoin {
                    a: EdgeRef::whole(a, max_edge(j.dir)),
                    b: EdgeRef::whole(b, min_edge(j.dir)),
                    class: class_of(j.continuity),
                    hv: j.hv,
                });
            }
        }
        for bd in &cap.boundaries {
            self.surface.joins.push(SurfaceJoin {
                a: EdgeRef::whole(idx[&format!("f/{}", bd.frame)], bd.side.frame_edge()),
                b: EdgeRef::whole(idx[&format!("c/{}", bd.cap)], bd.side.edge()),
                class: JoinClass::G1 { rho: bd.rho.clone() },
                hv: false,
            });
        }
        Ok(())
    }

    /// Pair up patch edges lying on the same mesh edge.
    fn match_mesh_edges(&mut self) {
        let mut groups: BTreeMap<(usize, usize), Vec<(usize, f64, f64)>> = BTreeMap::new();
        for (i, s) in self.spans.iter().enumerate() {
            // normalize to run from the smaller vertex id
            let (key, t0, t1) = if s.from < s.to {
                ((s.from, s.to), s.t0, s.t1)
            } else {
                ((s.to, s.from), 1.0 - s.t0, 1.0 - s.t1)
            };
            groups.entry(key).or_default().push((i, t0, t1));
        }
        for list in groups.values() {
            for x in 0..list.len() {
                for y in x + 1..list.len() {
                    let (i, a0, a1) = list[x];
                    let (j, b0, b1) = list[y];
                    let lo = a0.min(a1).max(b0.min(b1));
                    let hi = a0.max(a1).min(b0.max(b1));
                    if hi - lo <= 1e-12 {
                        continue;
                    }
                    let own = |t0: f64, t1: f64, t: f64| (t - t0) / (t1 - t0);
                    let (sa, sb) = (self.spans[i], self.spans[j]);
                    if sa.patch == sb.patch {
                        continue;
                    }
                    self.surface.joins.push(SurfaceJoin {
                        a: EdgeRef { patch: sa.patch, edge: sa.edge, s0: own(a0, a1, lo), s1: own(a0, a1, hi) },
                        b: EdgeRef { patch: sb.patch, edge: sb.edge, s0: own(b0, b1, lo), s1: own(b0, b1, hi) },
                        class: JoinClass::C2 { beta: 1.0 },
                        hv: false,
                    });
                }
            }
        }
    }
}

/// Build the surface of a mesh. Fails if any net is too close to another or
/// to the boundary; use [`build_surface_report`] to see why.
pub fn build_surface(mesh: &TMesh) -> Result<GTSurface> {
    let (surface, report) = build_surface_report(mesh)?;
    if !report.all_ok() {
        return Err(GtError::Separation(report.to_text()));
    }
    Ok(surface)
}

/// Build from whatever nets are well separated, returning the separation
/// report alongside.
pub fn build_surface_report(mesh: &TMesh) -> Result<(GTSurface, SeparationReport)> {
    let (nets, report) = detect_tnets(mesh)?;
    let mut b = Builder { surface: GTSurface::default(), spans: vec![] };
    let region: BTreeSet<usize> = nets.iter().flat_map(|n| n.region_faces()).collect();
    for (f, face) in mesh.faces.iter().enumerate() {
        if region.contains(&f) {
            continue;
        }
        if face.len() != 4 || !b.add_regular(mesh, f) {
            b.surface.uncovered.push(f);
        }
    }
    for (k, det) in nets.iter().enumerate() {
        b.add_net(k, det)?;
    }
    b.match_mesh_edges();
    Ok((b.surface, report))
}
