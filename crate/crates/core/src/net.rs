//! Canonically indexed local control nets around T-junctions.
//!
//! A net is stored as ragged rows of nodes, bottom to top, each row left to
//! right. The layouts (counting the one-ring extension needed for the
//! tensor-border) are:
//!
//! | kind | rows 0..=2 (fine side) | row 3 | rows 4..=5 (or 4..=6) |
//! |------|------------------------|-------|-----------------------|
//! | T1   | 7 nodes                | 6     | 6 (rows 4,5)          |
//! | T3   | 8 nodes                | 7     | 7 (rows 4,5)          |
//! | T2   | 7 nodes                | 3     | 6 (rows 4,5,6)        |
//!
//! For T1 and T3 the lower three rows carry one more node column than the
//! upper three: the extra column terminates at the T-junction(s) on the
//! lower boundary of the central face. For T2 the grid is indexed by
//! `(x, y)` in `-3..=3`; node `(x, y)` exists iff `(x != 0 || y <= -1)` and
//! `(y != 0 || x <= -1)`, so the central hexagon `[-1,1]^2` has T-junctions
//! at `(0,-1)` (bottom side) and `(-1,0)` (left side).

use serde::{Deserialize, Serialize};

use crate::error::{domain, Result};
use crate::point::{Affine3, Point3};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum NetKind {
    /// One T-junction, nominally pentagonal face.
    T1,
    /// Two T-junctions in crossing directions, nominally hexagonal face.
    T2,
    /// Two T-junctions facing each other, nominally heptagonal face.
    T3,
}

impl NetKind {
    pub fn row_lengths(self) -> &'static [usize] {
        match self {
            NetKind::T1 => &[7, 7, 7, 6, 6, 6],
            NetKind::T3 => &[8, 8, 8, 7, 7, 7],
            NetKind::T2 => &[7, 7, 7, 3, 6, 6, 6],
        }
    }

    pub fn face_arity(self) -> usize {
        match self {
            NetKind::T1 => 5,
            NetKind::T2 => 6,
            NetKind::T3 => 7,
        }
    }

    pub fn node_count(self) -> usize {
        self.row_lengths().iter().sum()
    }

    pub fn name(self) -> &'static str {
        match self {
            NetKind::T1 => "T1",
            NetKind::T2 => "T2",
            NetKind::T3 => "T3",
        }
    }

    /// Flat reference positions of the canonical layout, row by row.
    pub fn reference_xy(self) -> Vec<Vec<(f64, f64)>> {
        let rows = |fine: &[f64], coarse: &[f64]| -> Vec<Vec<(f64, f64)>> {
            (0..6)
                .map(|r| {
                    let y = r as f64 - 3.0;
                    let xs = if r < 3 { fine } else { coarse };
                    xs.iter().map(|&x| (x, y)).collect()
                })
                .collect()
        };
        match self {
            NetKind::T1 => rows(&[-3.0, -2.0, -1.0, 0.0, 1.0, 2.0, 3.0], &[-3.0, -2.0, -1.0, 1.0, 2.0, 3.0]),
            NetKind::T3 => rows(
                &[-5.0, -4.0, -3.0, -1.0, 1.0, 3.0, 4.0, 5.0],
                &[-5.0, -4.0, -3.0, 0.0, 3.0, 4.0, 5.0],
            ),
            NetKind::T2 => t2_coords()
                .into_iter()
                .map(|row| row.into_iter().map(|(x, y)| (x as f64, y as f64)).collect())
                .collect(),
        }
    }
}

/// Integer `(x, y)` coordinates of the T2 layout, row by row.
pub fn t2_coords() -> Vec<Vec<(i32, i32)>> {
    (-3..=3)
        .map(|y| (-3..=3).filter(|&x| t2_exists(x, y)).map(|x| (x, y)).collect())
        .collect()
}

pub fn t2_exists(x: i32, y: i32) -> bool {
    (-3..=3).contains(&x) && (-3..=3).contains(&y) && (x != 0 || y <= -1) && (y != 0 || x <= -1)
}

/// A classified local net in canonical orientation.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TNet {
    pub kind: NetKind,
    pub rows: Vec<Vec<Point3>>,
    /// Mesh vertex ids of the nodes, same shape as `rows` (empty when synthetic).
    #[serde(default)]
    pub ids: Vec<Vec<usize>>,
}

impl TNet {
    pub fn new(kind: NetKind, rows: Vec<Vec<Point3>>) -> Result<Self> {
        let net = Self { kind, rows, ids: Vec::new() };
        net.validate()?;
        Ok(net)
    }

    pub fn with_ids(kind: NetKind, rows: Vec<Vec<Point3>>, ids: Vec<Vec<usize>>) -> Result<Self> {
        let net = Self { kind, rows, ids };
        net.validate()?;
        if net.ids.iter().map(|r| r.len()).collect::<Vec<_>>() != kind.row_lengths() {
            return domain("vertex-id grid does not match the net layout");
        }
        Ok(net)
    }

    fn validate(&self) -> Result<()> {
        let lens: Vec<usize> = self.rows.iter().map(|r| r.len()).collect();
        if lens != self.kind.row_lengths() {
            return domain(format!(
                "{} net expects rows {:?}, got {:?} (missing ring node?)",
                self.kind.name(),
                self.kind.row_lengths(),
                lens
            ));
        }
        if self.rows.iter().flatten().any(|p| !p.is_finite()) {
            return domain("non-finite net node");
        }
        Ok(())
    }

    /// Canonical net built from a position function of the reference layout.
    pub fn from_fn(kind: NetKind, f: impl Fn(f64, f64) -> Point3) -> Self {
        let rows = kind
            .reference_xy()
            .into_iter()
            .map(|row| row.into_iter().map(|(x, y)| f(x, y)).collect())
            .collect();
        Self { kind, rows, ids: Vec::new() }
    }

    /// The flat reference net in the plane `z = 0`.
    pub fn flat(kind: NetKind) -> Self {
        Self::from_fn(kind, |x, y| Point3::new(x, y, 0.0))
    }

    pub fn node(&self, row: usize, col: usize) -> Point3 {
        self.rows[row][col]
    }

    pub fn nodes(&self) -> impl Iterator<Item = &Point3> {
        self.rows.iter().flatten()
    }

    pub fn map(&self, f: impl Fn(Point3) -> Point3) -> Self {
        Self {
            kind: self.kind,
            rows: self.rows.iter().map(|r| r.iter().map(|&p| f(p)).collect()).collect(),
            ids: self.ids.clone(),
        }
    }

    pub fn transform(&self, a: &Affine3) -> Self {
        self.map(|p| a.apply(p))
    }

    /// Bounding-box diagonal of the nodes, at least 1e-300.
    pub fn scale(&self) -> f64 {
        crate::point::bbox_diagonal(self.nodes()).max(1e-300)
    }

    /// Node lookup for T2 nets by integer grid coordinate.
    pub fn t2_node(&self, x: i32, y: i32) -> Option<Point3> {
        if self.kind != NetKind::T2 || !t2_exists(x, y) {
            return None;
        }
        let row = (y + 3) as usize;
        let col = self.rows_x(row).iter().position(|&c| c == x)?;
        Some(self.rows[row][col])
    }

    fn rows_x(&self, row: usize) -> Vec<i32> {
        let y = row as i32 - 3;
        (-3..=3).filter(|&x| t2_exists(x, y)).collect()
    }

    /// The 18 inner nodes of a T1 net, in stencil order: the two coarse rows
    /// (4 nodes each) top to bottom, then the two fine rows (5 nodes each)
    /// top to bottom, each row left to right.
    pub fn inner_nodes(&self) -> Result<Vec<Point3>> {
        if self.kind != NetKind::T1 {
            return domain(format!("inner-node extraction requires a T1 net, got {}", self.kind.name()));
        }
        let mut out = Vec::with_capacity(18);
        for r in [4usize, 3] {
            out.extend_from_slice(&self.rows[r][1..5]);
        }
        for r in [2usize, 1] {
            out.extend_from_slice(&self.rows[r][1..6]);
        }
        Ok(out)
    }

    /// Position of each inner node in the T1 layout as `(row, col)`, matching
    /// [`TNet::inner_nodes`].
    pub fn t1_inner_slots() -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(18);
        for r in [4usize, 3] {
            out.extend((1..5).map(|c| (r, c)));
        }
        for r in [2usize, 1] {
            out.extend((1..6).map(|c| (r, c)));
        }
        out
    }

    /// Mirror the net left-right (reverses every row). The kinds T1 and T3 are
    /// mirror symmetric, so the result is again a canonical net.
    pub fn mirrored(&self) -> Result<Self> {
        if self.kind == NetKind::T2 {
            return domain("T2 nets are not left-right symmetric; use the diagonal transpose");
        }
        let rev = |rows: &Vec<Vec<Point3>>| rows.iter().map(|r| r.iter().rev().copied().collect()).collect();
        Ok(Self {
            kind: self.kind,
            rows: rev(&self.rows),
            ids: self.ids.iter().map(|r| r.iter().rev().copied().collect()).collect(),
        })
    }

    /// Reflect a T2 net across its diagonal `x = y`.
    pub fn t2_transposed(&self) -> Result<Self> {
        if self.kind != NetKind::T2 {
            return domain("diagonal transpose applies to T2 nets only");
        }
        let coords = t2_coords();
        let rows = coords
            .iter()
            .map(|row| row.iter().map(|&(x, y)| self.t2_node(y, x).expect("layout is diagonal symmetric")).collect())
            .collect();
        Ok(Self { kind: NetKind::T2, rows, ids: Vec::new() })
    }
}
