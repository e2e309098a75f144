//! Finding T-nets in a mesh by matching layout templates face by face.

use std::collections::{BTreeMap, BTreeSet};

use crate::error::{GtError, Result};
use crate::net::{NetKind, TNet};
use crate::tmesh::TMesh;

/// A planar layout: integer nodes and the faces they bound (counter-clockwise).
#[derive(Debug, Clone)]
pub struct Template {
    pub nodes: Vec<(i32, i32)>,
    pub faces: Vec<Vec<usize>>,
    /// `(x0, y0, x1, y1)` of each face.
    pub rects: Vec<(i32, i32, i32, i32)>,
    /// The face matched first.
    pub seed: usize,
    /// Faces replaced by frame and cap.
    pub region: Vec<usize>,
    valence: Vec<usize>,
    inner: Vec<bool>,
}

fn find(parent: &mut [usize], i: usize) -> usize {
    let mut r = i;
    while parent[r] != r {
        r = parent[r];
    }
    parent[i] = r;
    r
}

/// Faces of the planar layout spanned by integer nodes: unit squares merged
/// wherever no edge between consecutive nodes of a line separates them.
pub fn planar_faces(nodes: &[(i32, i32)]) -> (Vec<(i32, i32, i32, i32)>, Vec<Vec<usize>>) {
    let index: BTreeMap<(i32, i32), usize> = nodes.iter().enumerate().map(|(i, &p)| (p, i)).collect();
    let (x0, x1) = (nodes.iter().map(|p| p.0).min().unwrap(), nodes.iter().map(|p| p.0).max().unwrap());
    let (y0, y1) = (nodes.iter().map(|p| p.1).min().unwrap(), nodes.iter().map(|p| p.1).max().unwrap());
    // unit segments covered by an edge between consecutive nodes of a line
    let mut hseg = BTreeSet::new();
    let mut vseg = BTreeSet::new();
    for y in y0..=y1 {
        let xs: Vec<i32> = (x0..=x1).filter(|&x| index.contains_key(&(x, y))).collect();
        for w in xs.windows(2) {
            hseg.extend((w[0]..w[1]).map(|x| (x, y)));
        }
    }
    for x in x0..=x1 {
        let ys: Vec<i32> = (y0..=y1).filter(|&y| index.contains_key(&(x, y))).collect();
        for w in ys.windows(2) {
            vseg.extend((w[0]..w[1]).map(|y| (x, y)));
        }
    }
    let (w, h) = ((x1 - x0) as usize, (y1 - y0) as usize);
    let sq = |x: i32, y: i32| (y - y0) as usize * w + (x - x0) as usize;
    let mut parent: Vec<usize> = (0..w * h).collect();
    for y in y0..y1 {
        for x in x0..x1 {
            if x + 1 < x1 && !vseg.contains(&(x + 1, y)) {
                let (a, b) = (find(&mut parent, sq(x, y)), find(&mut parent, sq(x + 1, y)));
                parent[a] = b;
            }
            if y + 1 < y1 && !hseg.contains(&(x, y + 1)) {
                let (a, b) = (find(&mut parent, sq(x, y)), find(&mut parent, sq(x, y + 1)));
                parent[a] = b;
            }
        }
    }
    let mut comps: BTreeMap<usize, (i32, i32, i32, i32)> = BTreeMap::new();
    for y in y0..y1 {
        for x in x0..x1 {
            let r = find(&mut parent, sq(x, y));
            let e = comps.entry(r).or_insert((x, y, x + 1, y + 1));
            *e = (e.0.min(x), e.1.min(y), e.2.max(x + 1), e.3.max(y + 1));
        }
    }
    let mut rects: Vec<_> = comps.into_values().collect();
    rects.sort_by_key(|r| (r.1, r.0));
    let faces: Vec<Vec<usize>> = rects
        .iter()
        .map(|&(a, b, c, d)| {
            let mut cyc: Vec<(i32, i32)> = (a..c).map(|x| (x, b)).collect();
            cyc.extend((b..d).map(|y| (c, y)));
            cyc.extend((a + 1..=c).rev().map(|x| (x, d)));
            cyc.extend((b + 1..=d).rev().map(|y| (a, y)));
            cyc.iter().filter_map(|p| index.get(p).copied()).collect()
        })
        .collect();
    (rects, faces)
}

impl Template {
    fn from_nodes(nodes: Vec<(i32, i32)>, seed_rect: (i32, i32, i32, i32), region: (i32, i32, i32, i32)) -> Self {
        let (rects, faces) = planar_faces(&nodes);
        let mut edges = BTreeSet::new();
        let mut incident = vec![0; nodes.len()];
        for f in &faces {
            for k in 0..f.len() {
                let (a, b) = (f[k], f[(k + 1) % f.len()]);
                edges.insert((a.min(b), a.max(b)));
                incident[a] += 1;
            }
        }
        let mut valence = vec![0; nodes.len()];
        for &(a, b) in &edges {
            valence[a] += 1;
            valence[b] += 1;
        }
        let inner = (0..nodes.len()).map(|n| incident[n] == valence[n]).collect();
        let seed = rects.iter().position(|&r| r == seed_rect).expect("seed face in template");
        let region = (0..rects.len())
            .filter(|&f| {
                let r = rects[f];
                r.0 >= region.0 && r.1 >= region.1 && r.2 <= region.2 && r.3 <= region.3
            })
            .collect();
        Self { nodes, faces, rects, seed, region, valence, inner }
    }

    /// Net layout of a kind; node order is the net's row order.
    pub fn for_kind(kind: NetKind) -> Self {
        let nodes = kind.reference_xy().into_iter().flatten().map(|(x, y)| (x as i32, y as i32)).collect();
        match kind {
            NetKind::T1 => Self::from_nodes(nodes, (-1, -1, 1, 0), (-2, -2, 2, 1)),
            NetKind::T3 => Self::from_nodes(nodes, (-3, -1, 3, 0), (-4, -2, 4, 1)),
            NetKind::T2 => Self::from_nodes(nodes, (-1, -1, 1, 1), (-2, -2, 2, 2)),
        }
    }

    /// The 4x4 node window of one regular quad, seeded at the middle face.
    pub fn regular() -> Self {
        let nodes = (0..4).flat_map(|y| (0..4).map(move |x| (x, y))).collect();
        Self::from_nodes(nodes, (1, 1, 2, 2), (1, 1, 2, 2))
    }

    pub fn valence(&self, n: usize) -> usize {
        self.valence[n]
    }

    pub fn is_inner(&self, n: usize) -> bool {
        self.inner[n]
    }

    /// Positions on the seed face of inner nodes with valence 3.
    pub fn seed_t_positions(&self) -> BTreeSet<usize> {
        let f = &self.faces[self.seed];
        (0..f.len()).filter(|&k| self.inner[f[k]] && self.valence[f[k]] == 3).collect()
    }
}

/// Template nodes and faces mapped into the mesh.
#[derive(Debug, Clone, PartialEq)]
pub struct Embedding {
    pub vertex: Vec<usize>,
    pub face: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq)]
pub enum EmbedFailure {
    /// The layout runs off the mesh boundary.
    Boundary { vertices: Vec<usize> },
    /// The mesh differs from the layout near these elements.
    Mismatch { vertices: Vec<usize>, faces: Vec<usize>, reason: String },
}

/// Map a template into the mesh, its seed face onto `face` rotated by `shift`.
pub fn embed(mesh: &TMesh, tpl: &Template, face: usize, shift: usize) -> std::result::Result<Embedding, EmbedFailure> {
    let mismatch = |vertices: Vec<usize>, faces: Vec<usize>, reason: &str| EmbedFailure::Mismatch {
        vertices,
        faces,
        reason: reason.to_string(),
    };
    let mut vmap: Vec<Option<usize>> = vec![None; tpl.nodes.len()];
    let mut fmap: Vec<Option<usize>> = vec![None; tpl.faces.len()];
    let mut used: BTreeMap<usize, usize> = BTreeMap::new();
    let mut assign = |tf: usize, mf: usize, offset: usize, vmap: &mut Vec<Option<usize>>, fmap: &mut Vec<Option<usize>>| {
        let (cyc, mcyc) = (&tpl.faces[tf], &mesh.faces[mf]);
        if cyc.len() != mcyc.len() {
            return Err(mismatch(mcyc.clone(), vec![mf], "face arity differs from the layout"));
        }
        for (k, &n) in cyc.iter().enumerate() {
            let v = mcyc[(k + offset) % cyc.len()];
            match vmap[n] {
                Some(w) if w != v => return Err(mismatch(vec![v, w], vec![mf], "faces do not close up")),
                Some(_) => {}
                None => {
                    if let Some(&other) = used.get(&v) {
                        if other != n {
                            return Err(mismatch(vec![v], vec![mf], "layout wraps onto itself"));
                        }
                    }
                    used.insert(v, n);
                    vmap[n] = Some(v);
                }
            }
        }
        fmap[tf] = Some(mf);
        Ok(())
    };
    assign(tpl.seed, face, shift, &mut vmap, &mut fmap)?;
    loop {
        let mut progress = false;
        for tf in 0..tpl.faces.len() {
            if fmap[tf].is_some() {
                continue;
            }
            let cyc = &tpl.faces[tf];
            let n = cyc.len();
            let Some(k) = (0..n).find(|&k| vmap[cyc[k]].is_some() && vmap[cyc[(k + 1) % n]].is_some()) else {
                continue;
            };
            let (a, b) = (vmap[cyc[k]].unwrap(), vmap[cyc[(k + 1) % n]].unwrap());
            let Some(mf) = mesh.face_of(a, b) else {
                return Err(EmbedFailure::Boundary { vertices: vec![a, b] });
            };
            let idx = mesh.faces[mf].iter().position(|&v| v == a).unwrap();
            let m = mesh.faces[mf].len();
            assign(tf, mf, (idx + m * 8 - k) % m.max(1), &mut vmap, &mut fmap)?;
            progress = true;
        }
        if !progress {
            break;
        }
    }
    let face: Vec<usize> = fmap.iter().map(|f| f.expect("template is connected")).collect();
    if face.iter().collect::<BTreeSet<_>>().len() != face.len() {
        return Err(mismatch(vec![], face.clone(), "layout wraps onto itself"));
    }
    let vertex: Vec<usize> = vmap.into_iter().map(|v| v.expect("every node is on a face")).collect();
    for (n, &v) in vertex.iter().enumerate() {
        if tpl.is_inner(n) && (mesh.is_boundary_vertex(v) || mesh.valence(v) != tpl.valence(n)) {
            return Err(mismatch(vec![v], vec![], "irregular vertex inside the footprint"));
        }
    }
    Ok(Embedding { vertex, face })
}

#[derive(Debug, Clone, PartialEq)]
pub enum SeparationStatus {
    Ok,
    TooClose { vertices: Vec<usize>, faces: Vec<usize>, reason: String },
}

#[derive(Debug, Clone, PartialEq)]
pub struct SeparationEntry {
    pub face: usize,
    pub kind: NetKind,
    pub status: SeparationStatus,
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct SeparationReport {
    pub entries: Vec<SeparationEntry>,
}

impl SeparationReport {
    pub fn all_ok(&self) -> bool {
        self.entries.iter().all(|e| e.status == SeparationStatus::Ok)
    }

    pub fn to_text(&self) -> String {
        let mut s = String::from("# gtspline separation v1\n");
        for e in &self.entries {
            match &e.status {
                SeparationStatus::Ok => s += &format!("face {} {} ok\n", e.face, e.kind.name()),
                SeparationStatus::TooClose { vertices, faces, reason } => {
                    s += &format!(
                        "face {} {} too-close vertices={:?} faces={:?} reason=\"{}\"\n",
                        e.face,
                        e.kind.name(),
                        vertices,
                        faces,
                        reason
                    )
                }
            }
        }
        s
    }
}

/// A net found in a mesh.
#[derive(Debug, Clone)]
pub struct DetectedNet {
    /// The non-quad face.
    pub face: usize,
    pub net: TNet,
    pub embedding: Embedding,
}

impl DetectedNet {
    /// Mesh faces replaced by frame and cap.
    pub fn region_faces(&self) -> Vec<usize> {
        Template::for_kind(self.net.kind).region.iter().map(|&f| self.embedding.face[f]).collect()
    }
}

pub fn kind_of_arity(n: usize) -> Option<NetKind> {
    match n {
        5 => Some(NetKind::T1),
        6 => Some(NetKind::T2),
        7 => Some(NetKind::T3),
        _ => None,
    }
}

/// Classify every non-quad face; nets failing separation are reported, not returned.
pub fn detect_tnets(mesh: &TMesh) -> Result<(Vec<DetectedNet>, SeparationReport)> {
    let mut found: Vec<DetectedNet> = vec![];
    let mut report = SeparationReport::default();
    for (f, face) in mesh.faces.iter().enumerate() {
        if face.len() == 4 {
            continue;
        }
        let kind = kind_of_arity(face.len())
            .ok_or_else(|| GtError::Classification { face: f, reason: format!("{}-gon", face.len()) })?;
        let too_close = |vertices, faces, reason: &str| SeparationEntry {
            face: f,
            kind,
            status: SeparationStatus::TooClose { vertices, faces, reason: reason.into() },
        };
        let on_boundary: Vec<usize> = face.iter().copied().filter(|&v| mesh.is_boundary_vertex(v)).collect();
        if !on_boundary.is_empty() {
            report.entries.push(too_close(on_boundary, vec![f], "net touches the mesh boundary"));
            continue;
        }
        let tpl = Template::for_kind(kind);
        let want = tpl.seed_t_positions();
        let have: BTreeSet<usize> = mesh.t_vertices(f).into_iter().collect();
        let n = face.len();
        let shift = (0..n).find(|&s| want.iter().map(|&p| (p + s) % n).collect::<BTreeSet<_>>() == have);
        let Some(shift) = shift else {
            return Err(GtError::Classification {
                face: f,
                reason: format!("T-junctions at positions {have:?} match no {} layout", kind.name()),
            });
        };
        match embed(mesh, &tpl, f, shift) {
            Ok(embedding) => {
                let mut it = embedding.vertex.iter();
                let ids: Vec<Vec<usize>> =
                    kind.row_lengths().iter().map(|&l| it.by_ref().take(l).copied().collect()).collect();
                let rows = ids.iter().map(|r| r.iter().map(|&v| mesh.vertices[v]).collect()).collect();
                let net = TNet::with_ids(kind, rows, ids)?;
                report.entries.push(SeparationEntry { face: f, kind, status: SeparationStatus::Ok });
                found.push(DetectedNet { face: f, net, embedding });
            }
            Err(EmbedFailure::Boundary { vertices }) => {
                report.entries.push(too_close(vertices, vec![], "footprint runs off the mesh boundary"))
            }
            Err(EmbedFailure::Mismatch { vertices, faces, reason }) => {
                report.entries.push(too_close(vertices, faces, &reason))
            }
        }
    }
    // footprints of different nets must not share faces
    let mut clash = BTreeSet::new();
    for i in 0..found.len() {
        for j in i + 1..found.len() {
            let a: BTreeSet<_> = found[i].embedding.face.iter().collect();
            let shared: Vec<usize> = found[j].embedding.face.iter().copied().filter(|f| a.contains(f)).collect();
            if !shared.is_empty() {
                for k in [i, j] {
                    clash.insert(found[k].face);
                    let e = report.entries.iter_mut().find(|e| e.face == found[k].face).unwrap();
                    e.status = SeparationStatus::TooClose {
                        vertices: vec![],
                        faces: shared.clone(),
                        reason: "footprints of two nets overlap".into(),
                    };
                }
            }
        }
    }
    found.retain(|d| !clash.contains(&d.face));
    Ok((found, report))
}

/// The 18 inner nodes of a T1 net in stencil order.
pub fn extract_inner_nodes(net: &TNet) -> Result<Vec<crate::point::Point3>> {
    net.inner_nodes()
}
