//! Triangle meshes sampled from a surface.
//!
//! Each patch is sampled on a uniform grid. Along a join, every patch edge
//! also receives the samples of the patch across it, so after welding the
//! triangles meet vertex to vertex even where one edge faces two split pieces.

use std::collections::HashMap;

use crate::bezier::Edge;
use crate::error::{domain, Result};
use crate::point::Point3;
use crate::surface::GTSurface;

pub const WELD_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Clone, Default)]
pub struct TriMesh {
    pub positions: Vec<Point3>,
    pub triangles: Vec<[usize; 3]>,
}

impl TriMesh {
    /// Edges used by exactly one triangle.
    pub fn boundary_edges(&self) -> Vec<(usize, usize)> {
        let mut count: HashMap<(usize, usize), usize> = HashMap::new();
        for t in &self.triangles {
            for k in 0..3 {
                let (a, b) = (t[k], t[(k + 1) % 3]);
                *count.entry((a.min(b), a.max(b))).or_default() += 1;
            }
        }
        let mut out: Vec<_> = count.into_iter().filter(|&(_, c)| c == 1).map(|(e, _)| e).collect();
        out.sort();
        out
    }

    pub fn normal(&self, t: usize) -> Point3 {
        let [a, b, c] = self.triangles[t].map(|i| self.positions[i]);
        (b - a).cross(c - a)
    }

    pub fn to_obj(&self) -> String {
        let mut s = String::new();
        for p in &self.positions {
            s += &format!("v {:?} {:?} {:?}\n", p.x, p.y, p.z);
        }
        for t in &self.triangles {
            s += &format!("f {} {} {}\n", t[0] + 1, t[1] + 1, t[2] + 1);
        }
        s
    }
}

/// Merge points closer than `tol`; returns the kept points and the old-to-new map.
pub fn weld(points: &[Point3], tol: f64) -> (Vec<Point3>, Vec<usize>) {
    let key = |p: Point3| ((p.x / tol).floor() as i64, (p.y / tol).floor() as i64, (p.z / tol).floor() as i64);
    let mut grid: HashMap<(i64, i64, i64), Vec<usize>> = HashMap::new();
    let mut kept: Vec<Point3> = vec![];
    let mut map = Vec::with_capacity(points.len());
    for &p in points {
        let k = key(p);
        let mut hit = None;
        'search: for dx in -1..=1 {
            for dy in -1..=1 {
                for dz in -1..=1 {
                    if let Some(list) = grid.get(&(k.0 + dx, k.1 + dy, k.2 + dz)) {
                        if let Some(&i) = list.iter().find(|&&i| (kept[i] - p).norm() <= tol) {
                            hit = Some(i);
                            break 'search;
                        }
                    }
                }
            }
        }
        let i = hit.unwrap_or_else(|| {
            kept.push(p);
            grid.entry(k).or_default().push(kept.len() - 1);
            kept.len() - 1
        });
        map.push(i);
    }
    (kept, map)
}

fn uniform(n: usize) -> Vec<f64> {
    (0..n).map(|k| k as f64 / (n - 1) as f64).collect()
}

/// Extra parameters on each edge of patch `p`, sorted, excluding its own grid.
fn edge_extras(s: &GTSurface, p: usize, grid: &[f64]) -> HashMap<Edge, Vec<f64>> {
    let mut out: HashMap<Edge, Vec<f64>> = HashMap::new();
    for j in s.joins_of(p) {
        let (lo, hi) = (j.b.s0.min(j.b.s1), j.b.s0.max(j.b.s1));
        for &t in grid {
            if t < lo - 1e-12 || t > hi + 1e-12 {
                continue;
            }
            let w = (t - j.b.s0) / (j.b.s1 - j.b.s0);
            let s_own = j.a.at(w).clamp(0.0, 1.0);
            if grid.iter().all(|g| (g - s_own).abs() > 1e-12) {
                out.entry(j.a.edge).or_default().push(s_own);
            }
        }
    }
    for v in out.values_mut() {
        v.sort_by(f64::total_cmp);
        v.dedup_by(|a, b| (*a - *b).abs() <= 1e-12);
    }
    out
}

/// Sample every patch on `samples` x `samples` points and weld.
pub fn tessellate(s: &GTSurface, samples: usize) -> Result<TriMesh> {
    if samples < 2 {
        return domain("tessellation needs at least 2 samples per side");
    }
    let g = uniform(samples);
    let last = samples - 1;
    let mut pts = vec![];
    let mut tris = vec![];
    for (pi, np) in s.patches.iter().enumerate() {
        let extras = edge_extras(s, pi, &g);
        let ex = |e: Edge, lo: f64, hi: f64, rev: bool| -> Vec<f64> {
            let mut v: Vec<f64> =
                extras.get(&e).map(|v| v.iter().copied().filter(|&t| t > lo && t < hi).collect()).unwrap_or_default();
            if rev {
                v.reverse();
            }
            v
        };
        for j in 0..last {
            for i in 0..last {
                let (u0, u1, v0, v1) = (g[i], g[i + 1], g[j], g[j + 1]);
                let mut poly = vec![(u0, v0)];
                if j == 0 {
                    poly.extend(ex(Edge::VMin, u0, u1, false).into_iter().map(|u| (u, v0)));
                }
                poly.push((u1, v0));
                if i + 1 == last {
                    poly.extend(ex(Edge::UMax, v0, v1, false).into_iter().map(|v| (u1, v)));
                }
                poly.push((u1, v1));
                if j + 1 == last {
                    poly.extend(ex(Edge::VMax, u0, u1, true).into_iter().map(|u| (u, v1)));
                }
                poly.push((u0, v1));
                if i == 0 {
                    poly.extend(ex(Edge::UMin, v0, v1, true).into_iter().map(|v| (u0, v)));
                }
                let base = pts.len();
                for &(u, v) in &poly {
                    pts.push(np.patch.eval(u, v)?);
                }
                if poly.len() == 4 {
                    tris.push([base, base + 1, base + 2]);
                    tris.push([base, base + 2, base + 3]);
                } else {
                    let c = pts.len();
                    pts.push(np.patch.eval((u0 + u1) / 2.0, (v0 + v1) / 2.0)?);
                    for k in 0..poly.len() {
                        tris.push([c, base + k, base + (k + 1) % poly.len()]);
                    }
                }
            }
        }
    }
    let (positions, map) = weld(&pts, WELD_TOLERANCE);
    let triangles = tris.into_iter().map(|t: [usize; 3]| t.map(|i| map[i])).collect();
    Ok(TriMesh { positions, triangles })
}
