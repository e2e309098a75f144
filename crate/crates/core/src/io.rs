//! Mesh and surface files.
//!
//! Meshes: Wavefront OBJ (faces of 4 to 7 vertices) and a JSON form that
//! also lists the T-junction vertices. Surfaces: a line-based text format
//! whose numbers are written in shortest round-trip form, so export followed
//! by import is bit-exact.

use std::collections::BTreeSet;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::bezier::{BBPatch, Edge};
use crate::cap::Reparameterization;
use crate::error::{GtError, Result};
use crate::point::Point3;
use crate::surface::{EdgeRef, GTSurface, JoinClass, NamedPatch, SurfaceJoin};
use crate::tmesh::TMesh;

fn perr<T>(line: usize, msg: impl Into<String>) -> Result<T> {
    Err(GtError::Parse { line, msg: msg.into() })
}

fn num<T: std::str::FromStr>(tok: Option<&str>, line: usize, what: &str) -> Result<T> {
    match tok {
        Some(t) => t.parse().or_else(|_| perr(line, format!("bad {what} '{t}'"))),
        None => perr(line, format!("missing {what}")),
    }
}

// ---------------------------------------------------------------------------
// Meshes

/// Parse OBJ text: `v x y z` and `f i j k ...` (1-based, negative indices and
/// `i/t/n` forms accepted). Other records are ignored.
pub fn parse_obj(text: &str) -> Result<TMesh> {
    let mut verts = vec![];
    let mut faces = vec![];
    for (k, raw) in text.lines().enumerate() {
        let line = k + 1;
        let mut it = raw.split('#').next().unwrap_or("").split_whitespace();
        match it.next() {
            Some("v") => {
                let x = num(it.next(), line, "coordinate")?;
                let y = num(it.next(), line, "coordinate")?;
                let z = num(it.next(), line, "coordinate")?;
                verts.push(Point3::new(x, y, z));
            }
            Some("f") => {
                let mut face = vec![];
                for tok in it {
                    let head = tok.split('/').next().unwrap_or("");
                    let i: i64 = num(Some(head), line, "vertex index")?;
                    let idx = if i > 0 { i - 1 } else { verts.len() as i64 + i };
                    if i == 0 || idx < 0 || idx as usize >= verts.len() {
                        return perr(line, format!("vertex index {i} out of range"));
                    }
                    face.push(idx as usize);
                }
                if !(4..=7).contains(&face.len()) {
                    return perr(line, format!("face has {} vertices; only 4 to 7 are supported", face.len()));
                }
                faces.push(face);
            }
            _ => {}
        }
    }
    TMesh::new(verts, faces)
}

pub fn mesh_to_obj(mesh: &TMesh) -> String {
    let mut s = String::new();
    for p in &mesh.vertices {
        s += &format!("v {:?} {:?} {:?}\n", p.x, p.y, p.z);
    }
    for f in &mesh.faces {
        let ids: Vec<String> = f.iter().map(|v| (v + 1).to_string()).collect();
        s += &format!("f {}\n", ids.join(" "));
    }
    s
}

#[derive(Debug, Serialize, Deserialize)]
struct MeshJson {
    format: String,
    version: u32,
    vertices: Vec<[f64; 3]>,
    faces: Vec<Vec<usize>>,
    t_junctions: Vec<usize>,
}

const JSON_FORMAT: &str = "gtspline-tmesh";

/// Vertices acting as T-junctions in some face.
pub fn t_junction_vertices(mesh: &TMesh) -> Vec<usize> {
    let set: BTreeSet<usize> =
        (0..mesh.faces.len()).flat_map(|f| mesh.t_vertices(f).into_iter().map(move |k| mesh.faces[f][k])).collect();
    set.into_iter().collect()
}

/// Parse the JSON mesh form; the listed T-junctions must agree with the topology.
pub fn parse_tmesh_json(text: &str) -> Result<TMesh> {
    let m: MeshJson = serde_json::from_str(text).or_else(|e| perr(e.line(), e.to_string()))?;
    if m.format != JSON_FORMAT || m.version != 1 {
        return perr(1, format!("unsupported format {} v{}", m.format, m.version));
    }
    let mesh = TMesh::new(m.vertices.iter().map(|v| Point3::new(v[0], v[1], v[2])).collect(), m.faces)?;
    let listed: BTreeSet<usize> = m.t_junctions.into_iter().collect();
    let found: BTreeSet<usize> = t_junction_vertices(&mesh).into_iter().collect();
    if listed != found {
        return Err(GtError::Integrity(format!(
            "listed T-junctions {:?} differ from the topology's {:?}",
            listed, found
        )));
    }
    Ok(mesh)
}

pub fn mesh_to_json(mesh: &TMesh) -> Result<String> {
    let m = MeshJson {
        format: JSON_FORMAT.into(),
        version: 1,
        vertices: mesh.vertices.iter().map(|p| [p.x, p.y, p.z]).collect(),
        faces: mesh.faces.clone(),
        t_junctions: t_junction_vertices(mesh),
    };
    Ok(serde_json::to_string_pretty(&m)?)
}

/// Load `.obj` or `.json` by extension.
pub fn load_mesh(path: &Path) -> Result<TMesh> {
    let text = std::fs::read_to_string(path)?;
    match path.extension().and_then(|e| e.to_str()) {
        Some("json") => parse_tmesh_json(&text),
        _ => parse_obj(&text),
    }
}

pub fn save_mesh(mesh: &TMesh, path: &Path) -> Result<()> {
    let text = match path.extension().and_then(|e| e.to_str()) {
        Some("json") => mesh_to_json(mesh)?,
        _ => mesh_to_obj(mesh),
    };
    Ok(std::fs::write(path, text)?)
}

// ---------------------------------------------------------------------------
// Surfaces

const SURFACE_HEADER: &str = "# gtspline patches v1";

fn poly_text(c: &[f64]) -> String {
    let mut s = c.len().to_string();
    for v in c {
        s += &format!(" {v:?}");
    }
    s
}

fn edge_text(e: &EdgeRef) -> String {
    format!("{} {} {:?} {:?}", e.patch, e.edge.name(), e.s0, e.s1)
}

pub fn surface_to_text(s: &GTSurface) -> String {
    let mut out = format!("{SURFACE_HEADER}\npatches {}\n", s.patches.len());
    for p in &s.patches {
        let (du, dv) = (p.patch.deg_u(), p.patch.deg_v());
        out += &format!("patch {} {du} {dv} {}\n", p.name, p.source);
        for i in 0..=du {
            for j in 0..=dv {
                let c = p.patch.coeff(i, j);
                out += &format!("{:?} {:?} {:?}\n", c.x, c.y, c.z);
            }
        }
    }
    out += &format!("joins {}\n", s.joins.len());
    for j in &s.joins {
        let class = match &j.class {
            JoinClass::C2 { beta } => format!("C2 {beta:?}"),
            JoinClass::C1 { beta } => format!("C1 {beta:?}"),
            JoinClass::G1 { rho } => format!("G1 {} {}", poly_text(&rho.a), poly_text(&rho.b)),
        };
        out += &format!("join {} {} {} {class}\n", edge_text(&j.a), edge_text(&j.b), j.hv as u8);
    }
    let unc: Vec<String> = s.uncovered.iter().map(|f| f.to_string()).collect();
    out += &format!("uncovered {}\n", unc.join(" ")).trim_end().to_string();
    out += "\n";
    out
}

struct Lines<'a> {
    it: std::iter::Enumerate<std::str::Lines<'a>>,
    line: usize,
}

impl<'a> Lines<'a> {
    fn next(&mut self) -> Result<&'a str> {
        match self.it.next() {
            Some((k, l)) => {
                self.line = k + 1;
                Ok(l)
            }
            None => perr(self.line + 1, "unexpected end of file"),
        }
    }

    fn keyword(&mut self, kw: &str) -> Result<std::str::SplitWhitespace<'a>> {
        let l = self.next()?;
        let mut toks = l.split_whitespace();
        if toks.next() != Some(kw) {
            return perr(self.line, format!("expected '{kw}'"));
        }
        Ok(toks)
    }
}

fn parse_edge_ref<'a>(t: &mut impl Iterator<Item = &'a str>, line: usize, n: usize) -> Result<EdgeRef> {
    let patch: usize = num(t.next(), line, "patch index")?;
    if patch >= n {
        return perr(line, format!("patch index {patch} out of range"));
    }
    let e = t.next().unwrap_or("");
    let edge = Edge::parse(e).ok_or_else(|| GtError::Parse { line, msg: format!("bad edge '{e}'") })?;
    Ok(EdgeRef { patch, edge, s0: num(t.next(), line, "parameter")?, s1: num(t.next(), line, "parameter")? })
}

fn parse_poly<'a>(t: &mut impl Iterator<Item = &'a str>, line: usize) -> Result<Vec<f64>> {
    let n: usize = num(t.next(), line, "coefficient count")?;
    (0..n).map(|_| num(t.next(), line, "coefficient")).collect()
}

pub fn surface_from_text(text: &str) -> Result<GTSurface> {
    let mut ls = Lines { it: text.lines().enumerate(), line: 0 };
    if ls.next()?.trim() != SURFACE_HEADER {
        return perr(1, format!("expected header '{SURFACE_HEADER}'"));
    }
    let n: usize = num(ls.keyword("patches")?.next(), ls.line, "patch count")?;
    let mut s = GTSurface::default();
    for _ in 0..n {
        let l = ls.next()?;
        let mut head = l.splitn(5, ' ');
        if head.next() != Some("patch") {
            return perr(ls.line, "expected 'patch'");
        }
        let name = head.next().unwrap_or("").to_string();
        let du: usize = num(head.next(), ls.line, "degree")?;
        let dv: usize = num(head.next(), ls.line, "degree")?;
        if du == 0 || dv == 0 || du > 8 || dv > 8 {
            return perr(ls.line, format!("unsupported degree {du}x{dv}"));
        }
        let source = head.next().unwrap_or("").to_string();
        let mut cs = vec![];
        for _ in 0..(du + 1) * (dv + 1) {
            let mut t = ls.next()?.split_whitespace();
            let line = ls.line;
            cs.push(Point3::new(num(t.next(), line, "x")?, num(t.next(), line, "y")?, num(t.next(), line, "z")?));
        }
        let patch = BBPatch::from_fn(du, dv, |i, j| cs[i * (dv + 1) + j]);
        s.patches.push(NamedPatch { name, patch, source });
    }
    let m: usize = num(ls.keyword("joins")?.next(), ls.line, "join count")?;
    for _ in 0..m {
        let mut t = ls.keyword("join")?;
        let line = ls.line;
        let a = parse_edge_ref(&mut t, line, n)?;
        let b = parse_edge_ref(&mut t, line, n)?;
        let hv = num::<u8>(t.next(), line, "hv flag")? == 1;
        let class = match t.next() {
            Some("C2") => JoinClass::C2 { beta: num(t.next(), line, "beta")? },
            Some("C1") => JoinClass::C1 { beta: num(t.next(), line, "beta")? },
            Some("G1") => {
                let a = parse_poly(&mut t, line)?;
                let b = parse_poly(&mut t, line)?;
                JoinClass::G1 { rho: Reparameterization { a, b } }
            }
            other => return perr(line, format!("bad join class {other:?}")),
        };
        s.joins.push(SurfaceJoin { a, b, class, hv });
    }
    let t = ls.keyword("uncovered")?;
    let line = ls.line;
    s.uncovered = t.map(|x| num(Some(x), line, "face index")).collect::<Result<_>>()?;
    Ok(s)
}
