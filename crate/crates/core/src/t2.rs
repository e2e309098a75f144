//! The crossing (T2) construction: frame and cap share 17 unknown
//! coefficients fixed by minimizing `F_3` over all frame and cap patches.

use std::sync::OnceLock;

use crate::bezier::BBPatch;
use crate::cap::{assemble_cap_t2, Cap};
use crate::energy::{assemble_energy, probe_affine, QuadraticEnergy};
use crate::error::{domain, GtError, Result};
use crate::frame::{build_frame_t2, Frame, T2FreePoints};
use crate::net::{NetKind, TNet};
use crate::point::Point3;

/// 4 corners, 4 mid points, 9 interior cap coefficients.
pub const UNKNOWNS: usize = 17;
pub const KAPPA: usize = 3;

/// Split the unknown vector into frame points and cap interior.
pub fn split_unknowns(z: &[Point3]) -> (T2FreePoints, [Point3; 9]) {
    (T2FreePoints::from_slice(&z[..8]), std::array::from_fn(|k| z[8 + k]))
}

pub fn build_t2_with(net: &TNet, z: &[Point3]) -> Result<(Frame, Cap)> {
    if z.len() != UNKNOWNS {
        return domain(format!("expected {UNKNOWNS} unknowns, got {}", z.len()));
    }
    let (free, inner) = split_unknowns(z);
    let frame = build_frame_t2(net, &free)?;
    let cap = assemble_cap_t2(&frame, &inner)?;
    Ok((frame, cap))
}

fn all_patches(frame: &Frame, cap: &Cap) -> Vec<BBPatch> {
    frame.patches.values().chain(cap.patches.values()).cloned().collect()
}

/// `F_3` over the 12 frame and 4 cap patches as a quadratic in the unknowns.
pub fn t2_energy(net: &TNet) -> Result<QuadraticEnergy> {
    if net.kind != NetKind::T2 {
        return domain("T2 energy needs a T2 net");
    }
    let aff = probe_affine(UNKNOWNS, |z| {
        let (f, c) = build_t2_with(net, z)?;
        Ok(all_patches(&f, &c))
    })?;
    assemble_energy(&aff, KAPPA)
}

/// Solve the normal equations for this net directly.
pub fn solve_unknowns(net: &TNet) -> Result<Vec<Point3>> {
    t2_energy(net)?.minimize()
}

/// Precomputed affine weights of the 17 unknowns over the 42 net nodes.
#[derive(Debug, Clone)]
pub struct T2Weights {
    /// `w[k][n]`: weight of node `n` (row-major over the net layout) in unknown `k`.
    pub w: Vec<Vec<f64>>,
}

impl T2Weights {
    pub fn apply(&self, net: &TNet) -> Vec<Point3> {
        let nodes: Vec<Point3> = net.nodes().copied().collect();
        self.w.iter().map(|row| row.iter().zip(&nodes).map(|(w, p)| *p * *w).sum()).collect()
    }
}

fn compute_weights() -> Result<T2Weights> {
    let n = NetKind::T2.node_count();
    let mut w = vec![vec![0.0; n]; UNKNOWNS];
    let mut idx = 0;
    let lens = NetKind::T2.row_lengths();
    for (r, &len) in lens.iter().enumerate() {
        for c in 0..len {
            let mut net = TNet::from_fn(NetKind::T2, |_, _| Point3::ZERO);
            net.rows[r][c] = Point3::new(1.0, 0.0, 0.0);
            let z = solve_unknowns(&net)?;
            for k in 0..UNKNOWNS {
                w[k][idx] = z[k].x;
            }
            idx += 1;
        }
    }
    for (k, row) in w.iter().enumerate() {
        let s: f64 = row.iter().sum();
        if (s - 1.0).abs() > 1e-9 {
            return Err(GtError::Numerical(format!("unknown {k}: weights sum to {s}, not 1")));
        }
    }
    Ok(T2Weights { w })
}

/// The weights, computed once per process.
pub fn t2_weights() -> Result<&'static T2Weights> {
    static CELL: OnceLock<std::result::Result<T2Weights, String>> = OnceLock::new();
    CELL.get_or_init(|| compute_weights().map_err(|e| e.to_string()))
        .as_ref()
        .map_err(|e| GtError::Numerical(e.clone()))
}

/// Frame and cap of a T2 net using the precomputed weights.
pub fn build_t2(net: &TNet) -> Result<(Frame, Cap)> {
    if net.kind != NetKind::T2 {
        return domain("T2 construction needs a T2 net");
    }
    let z = t2_weights()?.apply(net);
    build_t2_with(net, &z)
}
