//! Tensor-product Bernstein-Bézier patches and univariate Bézier curves.
//!
//! Patch domains are always the unit square. Coefficients are stored with the
//! `u` index outermost: `coeff(i, j)` multiplies `B_i(u) B_j(v)`.

use serde::{Deserialize, Serialize};

use crate::error::{domain, Result};
use crate::point::{Affine3, Point3};

/// Binomial coefficient for the small degrees used here.
pub fn binomial(n: usize, k: usize) -> f64 {
    if k > n {
        return 0.0;
    }
    let k = k.min(n - k);
    let mut r = 1.0;
    for i in 0..k {
        r = r * (n - i) as f64 / (i + 1) as f64;
    }
    r
}

/// Bernstein basis value `B_k^d(t)`.
pub fn bernstein(d: usize, k: usize, t: f64) -> f64 {
    binomial(d, k) * (1.0 - t).powi((d - k) as i32) * t.powi(k as i32)
}

fn check_unit(t: f64, name: &str) -> Result<()> {
    if !(0.0..=1.0).contains(&t) || t.is_nan() {
        return domain(format!("parameter {name}={t} outside [0,1]"));
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// Univariate curves

/// De Casteljau evaluation of a Bézier curve.
pub fn curve_eval(cs: &[Point3], t: f64) -> Point3 {
    let mut w = cs.to_vec();
    let n = w.len();
    for r in 1..n {
        for i in 0..n - r {
            w[i] = w[i].lerp(w[i + 1], t);
        }
    }
    w[0]
}

/// Hodograph: coefficients of the derivative curve.
pub fn curve_derivative(cs: &[Point3]) -> Vec<Point3> {
    let d = cs.len() - 1;
    if d == 0 {
        return vec![Point3::ZERO];
    }
    cs.windows(2).map(|w| (w[1] - w[0]) * d as f64).collect()
}

/// Degree elevation by `by` steps.
pub fn curve_raise(cs: &[Point3], by: usize) -> Vec<Point3> {
    let mut cur = cs.to_vec();
    for _ in 0..by {
        let d = cur.len() - 1;
        let n = d + 1;
        let mut next = Vec::with_capacity(n + 1);
        next.push(cur[0]);
        for i in 1..n {
            let a = i as f64 / n as f64;
            next.push(cur[i - 1] * a + cur[i] * (1.0 - a));
        }
        next.push(cur[d]);
        cur = next;
    }
    cur
}

/// Split a curve at `t`, both halves reparameterized to `[0,1]`.
pub fn curve_split(cs: &[Point3], t: f64) -> (Vec<Point3>, Vec<Point3>) {
    let n = cs.len();
    let mut w = cs.to_vec();
    let mut left = vec![w[0]];
    let mut right = vec![w[n - 1]];
    for r in 1..n {
        for i in 0..n - r {
            w[i] = w[i].lerp(w[i + 1], t);
        }
        left.push(w[0]);
        right.push(w[n - 1 - r]);
    }
    right.reverse();
    (left, right)
}

/// Product of a scalar polynomial (Bernstein coefficients) with a Bézier curve,
/// returned in the Bernstein basis of the summed degree.
pub fn curve_scale_by(poly: &[f64], cs: &[Point3]) -> Vec<Point3> {
    let m = poly.len() - 1;
    let n = cs.len() - 1;
    let mut out = vec![Point3::ZERO; m + n + 1];
    for (i, &a) in poly.iter().enumerate() {
        for (j, &c) in cs.iter().enumerate() {
            let w = binomial(m, i) * binomial(n, j) / binomial(m + n, i + j);
            out[i + j] += c * (a * w);
        }
    }
    out
}

/// Least-squares projection onto degree `target` curves, measured on the
/// coefficients of the degree-raised result. Returns the residual (max abs).
fn reduction_residual(cs: &[Point3], target: usize) -> f64 {
    let d = cs.len() - 1;
    if target >= d {
        return 0.0;
    }
    // Elevation matrix E: (d+1) x (target+1).
    let rows = d + 1;
    let cols = target + 1;
    let mut e = nalgebra::DMatrix::<f64>::zeros(rows, cols);
    for k in 0..cols {
        let mut unit = vec![Point3::ZERO; cols];
        unit[k] = Point3::new(1.0, 0.0, 0.0);
        let raised = curve_raise(&unit, d - target);
        for r in 0..rows {
            e[(r, k)] = raised[r].x;
        }
    }
    let svd = e.clone().svd(true, true);
    let mut worst: f64 = 0.0;
    for c in 0..3 {
        let b = nalgebra::DVector::from_iterator(rows, cs.iter().map(|p| p.component(c)));
        let x = svd.solve(&b, 1e-14).expect("svd solve");
        let r = &e * x - &b;
        worst = worst.max(r.amax());
    }
    worst
}

/// Smallest degree `d'` such that the curve is a degree-raise of a degree-`d'` curve.
///
/// The least-squares reduction residual is compared against `1e-10` times the
/// coefficient bounding-box diagonal (absolute `1e-10` for degenerate curves).
pub fn true_degree(cs: &[Point3]) -> usize {
    assert!(!cs.is_empty(), "true_degree of an empty coefficient list");
    let scale = crate::point::bbox_diagonal(cs.iter()).max(1.0);
    let tol = 1e-10 * scale;
    let d = cs.len() - 1;
    (0..=d)
        .find(|&t| reduction_residual(cs, t) <= tol)
        .unwrap_or(d)
}

// ---------------------------------------------------------------------------
// Patches

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Dir {
    U,
    V,
}

/// One of the four boundary edges of the unit square.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Edge {
    /// `v = 0`, parameterized by `u`.
    VMin,
    /// `v = 1`, parameterized by `u`.
    VMax,
    /// `u = 0`, parameterized by `v`.
    UMin,
    /// `u = 1`, parameterized by `v`.
    UMax,
}

impl Edge {
    pub const ALL: [Edge; 4] = [Edge::VMin, Edge::VMax, Edge::UMin, Edge::UMax];

    /// Direction transversal to the edge.
    pub fn cross_dir(self) -> Dir {
        match self {
            Edge::VMin | Edge::VMax => Dir::V,
            Edge::UMin | Edge::UMax => Dir::U,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Edge::VMin => "v0",
            Edge::VMax => "v1",
            Edge::UMin => "u0",
            Edge::UMax => "u1",
        }
    }

    pub fn parse(s: &str) -> Option<Edge> {
        Edge::ALL.into_iter().find(|e| e.name() == s)
    }
}

/// A tensor-product Bernstein-Bézier patch over `[0,1]^2`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BBPatch {
    deg_u: usize,
    deg_v: usize,
    coeffs: Vec<Point3>,
}

impl BBPatch {
    /// Build from a grid indexed `grid[i][j]` (`i` along `u`).
    pub fn from_grid(grid: Vec<Vec<Point3>>) -> Result<Self> {
        if grid.is_empty() || grid[0].is_empty() {
            return domain("empty coefficient grid");
        }
        let nv = grid[0].len();
        if grid.iter().any(|c| c.len() != nv) {
            return domain("ragged coefficient grid");
        }
        let deg_u = grid.len() - 1;
        let coeffs: Vec<Point3> = grid.into_iter().flatten().collect();
        if coeffs.iter().any(|p| !p.is_finite()) {
            return domain("non-finite control point");
        }
        Ok(Self { deg_u, deg_v: nv - 1, coeffs })
    }

    pub fn from_fn(deg_u: usize, deg_v: usize, mut f: impl FnMut(usize, usize) -> Point3) -> Self {
        let mut coeffs = Vec::with_capacity((deg_u + 1) * (deg_v + 1));
        for i in 0..=deg_u {
            for j in 0..=deg_v {
                coeffs.push(f(i, j));
            }
        }
        Self { deg_u, deg_v, coeffs }
    }

    pub fn constant(deg_u: usize, deg_v: usize, p: Point3) -> Self {
        Self::from_fn(deg_u, deg_v, |_, _| p)
    }

    pub fn deg_u(&self) -> usize {
        self.deg_u
    }

    pub fn deg_v(&self) -> usize {
        self.deg_v
    }

    pub fn coeff(&self, i: usize, j: usize) -> Point3 {
        self.coeffs[i * (self.deg_v + 1) + j]
    }

    pub fn set(&mut self, i: usize, j: usize, p: Point3) {
        let n = self.deg_v + 1;
        self.coeffs[i * n + j] = p;
    }

    pub fn coeffs(&self) -> &[Point3] {
        &self.coeffs
    }

    /// Coefficients with fixed `j` (a curve in `u`).
    pub fn row(&self, j: usize) -> Vec<Point3> {
        (0..=self.deg_u).map(|i| self.coeff(i, j)).collect()
    }

    /// Coefficients with fixed `i` (a curve in `v`).
    pub fn column(&self, i: usize) -> Vec<Point3> {
        (0..=self.deg_v).map(|j| self.coeff(i, j)).collect()
    }

    pub fn set_row(&mut self, j: usize, row: &[Point3]) {
        for (i, &p) in row.iter().enumerate() {
            self.set(i, j, p);
        }
    }

    pub fn set_column(&mut self, i: usize, col: &[Point3]) {
        for (j, &p) in col.iter().enumerate() {
            self.set(i, j, p);
        }
    }

    pub fn map(&self, f: impl Fn(Point3) -> Point3) -> Self {
        Self { deg_u: self.deg_u, deg_v: self.deg_v, coeffs: self.coeffs.iter().map(|&p| f(p)).collect() }
    }

    pub fn transform(&self, a: &Affine3) -> Self {
        self.map(|p| a.apply(p))
    }

    /// Swap the roles of `u` and `v`.
    pub fn transposed(&self) -> Self {
        Self::from_fn(self.deg_v, self.deg_u, |i, j| self.coeff(j, i))
    }

    /// Reverse the `u` direction (`u -> 1-u`).
    pub fn flipped_u(&self) -> Self {
        Self::from_fn(self.deg_u, self.deg_v, |i, j| self.coeff(self.deg_u - i, j))
    }

    /// Reverse the `v` direction.
    pub fn flipped_v(&self) -> Self {
        Self::from_fn(self.deg_u, self.deg_v, |i, j| self.coeff(i, self.deg_v - j))
    }

    /// Evaluate by de Casteljau: first along `v` for every `u`-index, then along `u`.
    pub fn eval(&self, u: f64, v: f64) -> Result<Point3> {
        check_unit(u, "u")?;
        check_unit(v, "v")?;
        Ok(self.eval_unchecked(u, v))
    }

    pub(crate) fn eval_unchecked(&self, u: f64, v: f64) -> Point3 {
        let cols: Vec<Point3> = (0..=self.deg_u).map(|i| curve_eval(&self.column(i), v)).collect();
        curve_eval(&cols, u)
    }

    /// The difference-of-coefficients patch for one derivative in `dir`.
    pub fn derivative_patch(&self, dir: Dir) -> Self {
        match dir {
            Dir::U => {
                if self.deg_u == 0 {
                    return Self::constant(0, self.deg_v, Point3::ZERO);
                }
                let d = self.deg_u as f64;
                Self::from_fn(self.deg_u - 1, self.deg_v, |i, j| (self.coeff(i + 1, j) - self.coeff(i, j)) * d)
            }
            Dir::V => self.transposed().derivative_patch(Dir::U).transposed(),
        }
    }

    /// `order`-th partial derivative in `dir` at `(u, v)`.
    pub fn partial_deriv(&self, u: f64, v: f64, dir: Dir, order: usize) -> Result<Point3> {
        let deg = match dir {
            Dir::U => self.deg_u,
            Dir::V => self.deg_v,
        };
        if order > deg {
            return domain(format!("derivative order {order} exceeds degree {deg}"));
        }
        check_unit(u, "u")?;
        check_unit(v, "v")?;
        let mut p = self.clone();
        for _ in 0..order {
            p = p.derivative_patch(dir);
        }
        Ok(p.eval_unchecked(u, v))
    }

    /// Mixed derivative `d^a/du^a d^b/dv^b` without degree checks (zero past the degree).
    pub fn mixed_deriv(&self, u: f64, v: f64, a: usize, b: usize) -> Point3 {
        if a > self.deg_u || b > self.deg_v {
            return Point3::ZERO;
        }
        let mut p = self.clone();
        for _ in 0..a {
            p = p.derivative_patch(Dir::U);
        }
        for _ in 0..b {
            p = p.derivative_patch(Dir::V);
        }
        p.eval_unchecked(u, v)
    }

    pub fn degree_raise(&self, new_u: usize, new_v: usize) -> Result<Self> {
        if new_u < self.deg_u || new_v < self.deg_v {
            return domain(format!(
                "cannot lower degree ({}, {}) to ({new_u}, {new_v})",
                self.deg_u, self.deg_v
            ));
        }
        let cols: Vec<Vec<Point3>> =
            (0..=self.deg_u).map(|i| curve_raise(&self.column(i), new_v - self.deg_v)).collect();
        let mut out = Self::constant(new_u, new_v, Point3::ZERO);
        for j in 0..=new_v {
            let row: Vec<Point3> = cols.iter().map(|c| c[j]).collect();
            out.set_row(j, &curve_raise(&row, new_u - self.deg_u));
        }
        Ok(out)
    }

    /// Split at parameter `t` in `dir`; both halves live on the unit square.
    pub fn subdivide(&self, dir: Dir, t: f64) -> Result<(Self, Self)> {
        if !(t > 0.0 && t < 1.0) {
            return domain(format!("subdivision parameter {t} outside (0,1)"));
        }
        match dir {
            Dir::U => {
                let mut a = self.clone();
                let mut b = self.clone();
                for j in 0..=self.deg_v {
                    let (l, r) = curve_split(&self.row(j), t);
                    a.set_row(j, &l);
                    b.set_row(j, &r);
                }
                Ok((a, b))
            }
            Dir::V => {
                let (a, b) = self.transposed().subdivide(Dir::U, t)?;
                Ok((a.transposed(), b.transposed()))
            }
        }
    }

    /// Boundary coefficient row of an edge, ordered along the edge parameter.
    pub fn edge_curve(&self, edge: Edge) -> Vec<Point3> {
        match edge {
            Edge::VMin => self.row(0),
            Edge::VMax => self.row(self.deg_v),
            Edge::UMin => self.column(0),
            Edge::UMax => self.column(self.deg_u),
        }
    }

    /// The `k`-th coefficient row counted inward from `edge`.
    pub fn inner_row(&self, edge: Edge, k: usize) -> Vec<Point3> {
        match edge {
            Edge::VMin => self.row(k),
            Edge::VMax => self.row(self.deg_v - k),
            Edge::UMin => self.column(k),
            Edge::UMax => self.column(self.deg_u - k),
        }
    }

    pub fn set_inner_row(&mut self, edge: Edge, k: usize, row: &[Point3]) {
        match edge {
            Edge::VMin => self.set_row(k, row),
            Edge::VMax => {
                let j = self.deg_v - k;
                self.set_row(j, row)
            }
            Edge::UMin => self.set_column(k, row),
            Edge::UMax => {
                let i = self.deg_u - k;
                self.set_column(i, row)
            }
        }
    }

    /// Jet of `order` along `edge`: position curve and cross derivatives with
    /// respect to the patch's own transversal parameter.
    pub fn extract_jet(&self, edge: Edge, order: usize) -> Result<Jet> {
        let dir = edge.cross_dir();
        let d = match dir {
            Dir::U => self.deg_u,
            Dir::V => self.deg_v,
        };
        if order > 2 || order > d {
            return domain(format!("jet order {order} not supported for transversal degree {d}"));
        }
        let mut curves = Vec::with_capacity(order + 1);
        let mut p = self.clone();
        for _ in 0..=order {
            curves.push(p.edge_curve(edge));
            p = p.derivative_patch(dir);
        }
        Ok(Jet { edge, order, curves })
    }

    /// Maximum coefficient distance to another patch of the same degree.
    pub fn max_coeff_diff(&self, o: &BBPatch) -> f64 {
        assert_eq!((self.deg_u, self.deg_v), (o.deg_u, o.deg_v), "degree mismatch");
        self.coeffs.iter().zip(&o.coeffs).map(|(a, b)| (*a - *b).norm()).fold(0.0, f64::max)
    }
}

/// Boundary jet of a patch along one edge.
#[derive(Debug, Clone, PartialEq)]
pub struct Jet {
    pub edge: Edge,
    pub order: usize,
    /// `curves[k]` is the `k`-th transversal derivative along the edge.
    pub curves: Vec<Vec<Point3>>,
}

impl Jet {
    pub fn curve(&self, k: usize) -> &[Point3] {
        &self.curves[k]
    }

    /// Reconstruct the first `order + 1` coefficient rows (counted from the
    /// edge) of a patch with transversal degree `degree`.
    pub fn boundary_rows(&self, degree: usize) -> Vec<Vec<Point3>> {
        let mut rows: Vec<Vec<Point3>> = Vec::new();
        let sign: f64 = match self.edge {
            Edge::VMin | Edge::UMin => 1.0,
            Edge::VMax | Edge::UMax => -1.0,
        };
        for k in 0..=self.order {
            // k-th derivative at the edge: d!/(d-k)! * sum_m (-1)^{k-m} C(k,m) row_m (inward, signed).
            let scale = (0..k).map(|m| (degree - m) as f64).product::<f64>();
            let deriv = self.curve(k);
            let row: Vec<Point3> = (0..deriv.len())
                .map(|i| {
                    let mut acc = deriv[i] * (sign.powi(k as i32) / scale);
                    for m in 0..k {
                        let c = binomial(k, m) * if (k - m) % 2 == 0 { 1.0 } else { -1.0 };
                        acc -= rows[m][i] * c;
                    }
                    acc
                })
                .collect();
            rows.push(row);
        }
        rows
    }
}
