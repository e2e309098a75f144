//! Isophotes: level sets of `N·d`, the unit normal against a fixed direction.
//! A kink in the tangent plane shows up as a break or corner in these curves.

use std::collections::HashMap;

use crate::bezier::{BBPatch, Dir, Edge};
use crate::error::{domain, Result};
use crate::point::{bbox_diagonal, Point3};
use crate::surface::GTSurface;

#[derive(Debug, Clone, PartialEq)]
pub struct Isophote {
    pub level: f64,
    pub patch: usize,
    pub points: Vec<Point3>,
    /// Patch edge and edge parameter of each open end lying on the patch boundary.
    pub ends: [Option<(Edge, f64)>; 2],
    pub closed: bool,
}

fn unit_normal(p: &BBPatch, u: f64, v: f64, degenerate: f64) -> Option<Point3> {
    let du = p.partial_deriv(u, v, Dir::U, 1).ok()?;
    let dv = p.partial_deriv(u, v, Dir::V, 1).ok()?;
    let n = du.cross(dv);
    let len = n.norm();
    (len > degenerate).then(|| n * (1.0 / len))
}

/// Cell-edge key: (vertical?, i, j) for the grid edge starting at node (i, j).
type Key = (bool, usize, usize);

struct PatchField<'a> {
    p: &'a BBPatch,
    d: Point3,
    degenerate: f64,
}

impl PatchField<'_> {
    fn value(&self, u: f64, v: f64) -> f64 {
        unit_normal(self.p, u, v, self.degenerate).map_or(f64::NAN, |n| n.dot(self.d))
    }

    /// Root of `value - level` between two parameter points, by bisection.
    fn root(&self, a: (f64, f64), b: (f64, f64), level: f64) -> (f64, f64) {
        let at = |t: f64| (a.0 + t * (b.0 - a.0), a.1 + t * (b.1 - a.1));
        let fa = self.value(a.0, a.1) - level;
        let (mut lo, mut hi) = (0.0, 1.0);
        for _ in 0..60 {
            let mid = 0.5 * (lo + hi);
            let (u, v) = at(mid);
            let fm = self.value(u, v) - level;
            if !fm.is_finite() {
                break;
            }
            if (fm >= 0.0) == (fa >= 0.0) {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        at(0.5 * (lo + hi))
    }
}

fn chain(segments: &[(Key, Key)]) -> Vec<(Vec<Key>, bool)> {
    let mut adj: HashMap<Key, Vec<usize>> = HashMap::new();
    for (i, (a, b)) in segments.iter().enumerate() {
        adj.entry(*a).or_default().push(i);
        adj.entry(*b).or_default().push(i);
    }
    let mut used = vec![false; segments.len()];
    let mut out = vec![];
    let walk = |start: Key, used: &mut Vec<bool>| -> Vec<Key> {
        let mut keys = vec![start];
        let mut cur = start;
        while let Some(&s) = adj[&cur].iter().find(|&&s| !used[s]) {
            used[s] = true;
            let (a, b) = segments[s];
            cur = if a == cur { b } else { a };
            keys.push(cur);
        }
        keys
    };
    let mut starts: Vec<Key> = adj.iter().filter(|(_, v)| v.len() == 1).map(|(k, _)| *k).collect();
    starts.sort();
    for k in starts {
        if adj[&k].iter().any(|&s| !used[s]) {
            out.push((walk(k, &mut used), false));
        }
    }
    for i in 0..segments.len() {
        if !used[i] {
            out.push((walk(segments[i].0, &mut used), true));
        }
    }
    out
}

/// Level sets of `N·dir` on a `sampling` x `sampling` grid per patch.
/// Cells touching a point with a degenerate normal are skipped, which splits
/// the curves there.
pub fn isophotes(s: &GTSurface, dir: Point3, levels: &[f64], sampling: usize) -> Result<Vec<Isophote>> {
    if dir.norm() == 0.0 || !dir.is_finite() {
        return domain("isophote direction must be a nonzero vector");
    }
    if sampling < 1 {
        return domain("isophote sampling must be positive");
    }
    let d = dir * (1.0 / dir.norm());
    let n = sampling;
    let g: Vec<f64> = (0..=n).map(|k| k as f64 / n as f64).collect();
    let mut out = vec![];
    for (pi, np) in s.patches.iter().enumerate() {
        let diag = bbox_diagonal(np.patch.coeffs());
        let field = PatchField { p: &np.patch, d, degenerate: 1e-12 * diag * diag };
        let f: Vec<Vec<f64>> = (0..=n).map(|j| (0..=n).map(|i| field.value(g[i], g[j])).collect()).collect();
        for &level in levels {
            let above = |i: usize, j: usize| f[j][i] >= level;
            let mut segs: Vec<(Key, Key)> = vec![];
            for j in 0..n {
                for i in 0..n {
                    if [f[j][i], f[j][i + 1], f[j + 1][i], f[j + 1][i + 1]].iter().any(|x| !x.is_finite()) {
                        continue;
                    }
                    // cell edges counterclockwise: bottom, right, top, left
                    let edges: [(Key, bool); 4] = [
                        ((false, i, j), above(i, j) != above(i + 1, j)),
                        ((true, i + 1, j), above(i + 1, j) != above(i + 1, j + 1)),
                        ((false, i, j + 1), above(i, j + 1) != above(i + 1, j + 1)),
                        ((true, i, j), above(i, j) != above(i, j + 1)),
                    ];
                    let hits: Vec<Key> = edges.iter().filter(|e| e.1).map(|e| e.0).collect();
                    match hits.len() {
                        2 => segs.push((hits[0], hits[1])),
                        4 => {
                            let centre = field.value((g[i] + g[i + 1]) / 2.0, (g[j] + g[j + 1]) / 2.0);
                            // pair so the curves separate the corners that disagree with the centre
                            if (centre >= level) == above(i, j) {
                                segs.push((hits[0], hits[1]));
                                segs.push((hits[2], hits[3]));
                            } else {
                                segs.push((hits[0], hits[3]));
                                segs.push((hits[1], hits[2]));
                            }
                        }
                        _ => {}
                    }
                }
            }
            let mut cache: HashMap<Key, (f64, f64)> = HashMap::new();
            let mut param = |k: Key| {
                *cache.entry(k).or_insert_with(|| {
                    let (vert, i, j) = k;
                    let b = if vert { (g[i], g[j + 1]) } else { (g[i + 1], g[j]) };
                    field.root((g[i], g[j]), b, level)
                })
            };
            let boundary = |k: Key, uv: (f64, f64)| -> Option<(Edge, f64)> {
                match k {
                    (false, _, 0) => Some((Edge::VMin, uv.0)),
                    (false, _, j) if j == n => Some((Edge::VMax, uv.0)),
                    (true, 0, _) => Some((Edge::UMin, uv.1)),
                    (true, i, _) if i == n => Some((Edge::UMax, uv.1)),
                    _ => None,
                }
            };
            for (keys, closed) in chain(&segs) {
                let uvs: Vec<(f64, f64)> = keys.iter().map(|&k| param(k)).collect();
                let points = uvs.iter().map(|&(u, v)| np.patch.eval(u, v)).collect::<Result<Vec<_>>>()?;
                let ends = if closed {
                    [None, None]
                } else {
                    [boundary(keys[0], uvs[0]), boundary(*keys.last().unwrap(), *uvs.last().unwrap())]
                };
                out.push(Isophote { level, patch: pi, points, ends, closed });
            }
        }
    }
    Ok(out)
}

/// Curve ends on a joined edge with no matching end across it, within the
/// sampling resolution. An empty result means every curve continues.
pub fn isophote_breaks(s: &GTSurface, curves: &[Isophote], sampling: usize) -> Vec<(usize, Point3)> {
    let mut ends: Vec<(usize, f64, Point3, Option<(Edge, f64)>)> = vec![];
    for c in curves.iter().filter(|c| !c.closed) {
        ends.push((c.patch, c.level, c.points[0], c.ends[0]));
        ends.push((c.patch, c.level, *c.points.last().unwrap(), c.ends[1]));
    }
    let mut breaks = vec![];
    for &(p, level, at, end) in &ends {
        let Some((edge, w)) = end else { continue };
        let joined = s.joins_of(p).iter().any(|j| {
            j.a.edge == edge && w >= j.a.s0.min(j.a.s1) - 1e-12 && w <= j.a.s0.max(j.a.s1) + 1e-12
        });
        if !joined {
            continue;
        }
        let tol = bbox_diagonal(s.patches[p].patch.coeffs()) / sampling as f64;
        let matched = ends.iter().any(|&(q, l, other, _)| q != p && l == level && (other - at).norm() <= tol);
        if !matched {
            breaks.push((p, at));
        }
    }
    breaks
}

/// Polyline OBJ (`v` and `l` records).
pub fn isophotes_to_obj(curves: &[Isophote]) -> String {
    let mut s = String::new();
    let mut next = 1;
    for c in curves {
        s += &format!("# level {:?} patch {}\n", c.level, c.patch);
        for p in &c.points {
            s += &format!("v {:?} {:?} {:?}\n", p.x, p.y, p.z);
        }
        let ids: Vec<String> = (next..next + c.points.len()).map(|i| i.to_string()).collect();
        s += &format!("l {}\n", ids.join(" "));
        next += c.points.len();
    }
    s
}
