//! Weight stencils of the left T1 cap patch over the 18 inner net nodes.
//!
//! Weights are stored scaled by 144, so each stencil sums to 144.

use std::fmt::Write as _;

use crate::bezier::BBPatch;
use crate::cap::build_cap_t1;
use crate::error::{GtError, Result};
use crate::frame::build_frame_t1;
use crate::net::{NetKind, TNet};
use crate::point::Point3;

pub const SCALE: f64 = 144.0;
pub const NODES: usize = 18;

#[derive(Debug, Clone, PartialEq)]
pub struct StencilSet {
    /// `weights[i][j][k]`: weight (x144) of inner node `k` in coefficient `(i, j)`.
    pub weights: [[[f64; NODES]; 5]; 5],
}

impl StencilSet {
    pub fn stencil(&self, i: usize, j: usize) -> &[f64; NODES] {
        &self.weights[i][j]
    }

    /// Verify every stencil sums to 144.
    pub fn check(&self, tol: f64) -> Result<()> {
        for i in 0..5 {
            for j in 0..5 {
                let s: f64 = self.weights[i][j].iter().sum();
                if (s - SCALE).abs() > tol {
                    return Err(GtError::Integrity(format!("stencil ({i},{j}) sums to {s}, expected 144")));
                }
            }
        }
        Ok(())
    }

    /// Stencil laid out as the net: two rows of four (coarse, top row first)
    /// then two rows of five (fine, top row first).
    pub fn layout(&self, i: usize, j: usize) -> [Vec<f64>; 4] {
        let w = &self.weights[i][j];
        [w[0..4].to_vec(), w[4..8].to_vec(), w[8..13].to_vec(), w[13..18].to_vec()]
    }

    /// Plain-text table, one stencil per line as rationals.
    pub fn export(&self) -> String {
        let mut s = String::from("# gtspline T1 stencils v1\n# i j then 18 weights x144: coarse rows (4,4) top first, fine rows (5,5) top first\n");
        for i in 0..5 {
            for j in 0..5 {
                write!(s, "{i} {j}").unwrap();
                for &w in &self.weights[i][j] {
                    write!(s, " {}", rational(w)).unwrap();
                }
                s.push('\n');
            }
        }
        s
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut weights = [[[f64::NAN; NODES]; 5]; 5];
        for (ln, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let err = |msg: String| GtError::Parse { line: ln + 1, msg };
            let tok: Vec<&str> = line.split_whitespace().collect();
            if tok.len() != NODES + 2 {
                return Err(err(format!("expected {} fields, got {}", NODES + 2, tok.len())));
            }
            let i: usize = tok[0].parse().map_err(|_| err("bad index".into()))?;
            let j: usize = tok[1].parse().map_err(|_| err("bad index".into()))?;
            if i > 4 || j > 4 {
                return Err(err("index out of range".into()));
            }
            for k in 0..NODES {
                weights[i][j][k] = parse_rational(tok[k + 2]).ok_or_else(|| err(format!("bad weight {}", tok[k + 2])))?;
            }
        }
        if weights.iter().flatten().flatten().any(|w| w.is_nan()) {
            return Err(GtError::Integrity("stencil table incomplete".into()));
        }
        let set = Self { weights };
        set.check(1e-9)?;
        Ok(set)
    }
}

/// Shortest `p/q` (q up to 4096) within 1e-9 of `x`, else the decimal.
pub fn rational(x: f64) -> String {
    for q in 1..=4096i64 {
        let p = (x * q as f64).round();
        if (p / q as f64 - x).abs() < 1e-9 {
            let p = p as i64;
            return if q == 1 { format!("{p}") } else { format!("{p}/{q}") };
        }
    }
    format!("{x:?}")
}

fn parse_rational(s: &str) -> Option<f64> {
    match s.split_once('/') {
        Some((p, q)) => Some(p.parse::<f64>().ok()? / q.parse::<f64>().ok()?),
        None => s.parse().ok(),
    }
}

fn t1_net_from_inner(inner: &[Point3], ring: Point3) -> TNet {
    let mut net = TNet::from_fn(NetKind::T1, |_, _| ring);
    for (&(r, c), &p) in TNet::t1_inner_slots().iter().zip(inner) {
        net.rows[r][c] = p;
    }
    net
}

fn left_patch(net: &TNet) -> Result<BBPatch> {
    let cap = build_cap_t1(&build_frame_t1(net)?)?;
    Ok(cap.get("pl")?.clone())
}

/// Run the T1 pipeline once per inner basis node and collect the weights.
pub fn derive_stencils() -> Result<StencilSet> {
    let mut weights = [[[0.0; NODES]; 5]; 5];
    for k in 0..NODES {
        let mut inner = vec![Point3::ZERO; NODES];
        inner[k] = Point3::new(1.0, 0.0, 0.0);
        let p = left_patch(&t1_net_from_inner(&inner, Point3::ZERO))?;
        for (i, row) in weights.iter_mut().enumerate() {
            for (j, w) in row.iter_mut().enumerate() {
                w[k] = p.coeff(i, j).x * SCALE;
            }
        }
    }
    // the construction must ignore the ring and be affine in the inner nodes
    let probe = Point3::new(0.3, -1.7, 2.5);
    let shifted = left_patch(&t1_net_from_inner(&[probe; NODES], Point3::new(5.0, 7.0, -3.0)))?;
    if shifted.coeffs().iter().any(|c| (*c - probe).norm() > 1e-12) {
        return Err(GtError::Numerical("cap depends on ring nodes or is not affine".into()));
    }
    let set = StencilSet { weights };
    set.check(1e-10)?;
    Ok(set)
}

/// Left cap patch from the 18 inner nodes.
pub fn apply_stencils(inner: &[Point3], set: &StencilSet) -> Result<BBPatch> {
    if inner.len() != NODES {
        return crate::error::domain(format!("expected {NODES} inner nodes, got {}", inner.len()));
    }
    set.check(1e-9)?;
    Ok(BBPatch::from_fn(4, 4, |i, j| {
        inner.iter().zip(&set.weights[i][j]).map(|(p, w)| *p * (w / SCALE)).sum()
    }))
}
