//! Quad-dominant meshes whose 5-, 6- and 7-gons encode T-junctions.

use std::collections::{BTreeSet, HashMap};

use crate::error::{GtError, Result};
use crate::point::Point3;

#[derive(Debug, Clone)]
pub struct TMesh {
    pub vertices: Vec<Point3>,
    pub faces: Vec<Vec<usize>>,
    /// directed edge -> (face, index of the edge's start in that face)
    half: HashMap<(usize, usize), (usize, usize)>,
    adj: Vec<BTreeSet<usize>>,
}

impl TMesh {
    /// Validate faces and build the half-edge map.
    pub fn new(vertices: Vec<Point3>, faces: Vec<Vec<usize>>) -> Result<Self> {
        if let Some(i) = vertices.iter().position(|p| !p.is_finite()) {
            return Err(GtError::Structure(format!("vertex {i} is not finite")));
        }
        let mut half = HashMap::new();
        for (f, face) in faces.iter().enumerate() {
            if !(4..=7).contains(&face.len()) {
                return Err(GtError::Structure(format!("face {f} has {} sides; only 4 to 7 are supported", face.len())));
            }
            if let Some(&v) = face.iter().find(|&&v| v >= vertices.len()) {
                return Err(GtError::Structure(format!("face {f} references missing vertex {v}")));
            }
            if face.iter().collect::<BTreeSet<_>>().len() != face.len() {
                return Err(GtError::Structure(format!("face {f} repeats a vertex")));
            }
            for k in 0..face.len() {
                let e = (face[k], face[(k + 1) % face.len()]);
                if half.insert(e, (f, k)).is_some() {
                    return Err(GtError::Structure(format!(
                        "edge {}-{} is non-manifold or inconsistently oriented",
                        e.0, e.1
                    )));
                }
            }
        }
        let mut adj = vec![BTreeSet::new(); vertices.len()];
        for &(a, b) in half.keys() {
            adj[a].insert(b);
            adj[b].insert(a);
        }
        let mesh = Self { vertices, faces, half, adj };
        mesh.check_vertex_fans()?;
        Ok(mesh)
    }

    /// Every vertex must see its faces as one fan.
    fn check_vertex_fans(&self) -> Result<()> {
        let mut incident = vec![0usize; self.vertices.len()];
        for face in &self.faces {
            for &v in face {
                incident[v] += 1;
            }
        }
        for (v, &count) in incident.iter().enumerate() {
            if count > 0 && self.fan(v).len() != count {
                return Err(GtError::Structure(format!("vertex {v} is non-manifold")));
            }
        }
        Ok(())
    }

    /// Faces around `v` in rotation order, starting at a boundary if any.
    pub fn fan(&self, v: usize) -> Vec<usize> {
        let outgoing: Vec<(usize, usize)> =
            self.adj[v].iter().map(|&w| (v, w)).filter(|e| self.half.contains_key(e)).collect();
        // a boundary start is an outgoing edge with no twin
        let start = outgoing.iter().find(|e| !self.half.contains_key(&(e.1, e.0))).or(outgoing.first());
        let Some(&start) = start else { return vec![] };
        let mut out = vec![];
        let mut e = start;
        loop {
            let (f, k) = self.half[&e];
            out.push(f);
            // previous vertex of v in f; the next fan face owns the twin of (v, prev)
            let face = &self.faces[f];
            let prev = face[(k + face.len() - 1) % face.len()];
            match self.half.get(&(v, prev)) {
                Some(_) if (v, prev) == start => break,
                Some(_) => e = (v, prev),
                None => break,
            }
            if out.len() > self.faces.len() {
                break;
            }
        }
        out
    }

    pub fn face_of(&self, a: usize, b: usize) -> Option<usize> {
        self.half.get(&(a, b)).map(|x| x.0)
    }

    pub fn is_boundary_edge(&self, a: usize, b: usize) -> bool {
        self.half.contains_key(&(a, b)) != self.half.contains_key(&(b, a))
    }

    pub fn neighbors(&self, v: usize) -> &BTreeSet<usize> {
        &self.adj[v]
    }

    pub fn valence(&self, v: usize) -> usize {
        self.neighbors(v).len()
    }

    pub fn is_boundary_vertex(&self, v: usize) -> bool {
        self.neighbors(v).iter().any(|&w| self.is_boundary_edge(v, w))
    }

    /// Undirected edges as `(min, max)`.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        self.half.keys().map(|&(a, b)| (a.min(b), a.max(b))).collect::<BTreeSet<_>>().into_iter().collect()
    }

    pub fn boundary_edges(&self) -> Vec<(usize, usize)> {
        self.half.keys().filter(|&&(a, b)| !self.half.contains_key(&(b, a))).copied().collect()
    }

    pub fn interior_edge_count(&self) -> usize {
        self.half.len() - self.edges().len()
    }

    /// Number of closed boundary curves.
    pub fn boundary_loops(&self) -> usize {
        let next: HashMap<usize, usize> = self.boundary_edges().into_iter().collect();
        let mut seen = BTreeSet::new();
        let mut loops = 0;
        for &s in next.keys() {
            if seen.contains(&s) {
                continue;
            }
            loops += 1;
            let mut v = s;
            while seen.insert(v) {
                v = next[&v];
            }
        }
        loops
    }

    /// Positions in a non-quad face of its T-junctions (interior vertices of valence 3).
    pub fn t_vertices(&self, f: usize) -> Vec<usize> {
        let face = &self.faces[f];
        if face.len() == 4 {
            return vec![];
        }
        (0..face.len()).filter(|&k| !self.is_boundary_vertex(face[k]) && self.valence(face[k]) == 3).collect()
    }

    /// Relabel vertices (`perm[old] = new`) and reorder faces (`face_perm[new] = old`).
    pub fn relabeled(&self, perm: &[usize], face_perm: &[usize]) -> Result<Self> {
        let mut verts = vec![Point3::ZERO; self.vertices.len()];
        for (old, &new) in perm.iter().enumerate() {
            verts[new] = self.vertices[old];
        }
        let faces = face_perm.iter().map(|&f| self.faces[f].iter().map(|&v| perm[v]).collect()).collect();
        Self::new(verts, faces)
    }
}
