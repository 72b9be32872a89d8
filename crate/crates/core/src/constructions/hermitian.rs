//! The generalized quadrangle `H(3, q²)` of the Hermitian form
//! `b(x, y) = x₁y₁^q + x₂y₄^q + x₃y₃^q + x₄y₂^q`.

use std::collections::HashMap;

use crate::arith::is_prime_power;
use crate::finite_field::{FieldElem, SquareField};
use crate::{Error, Result};

/// Default largest `q` for which the geometry is enumerated.
pub const HERMITIAN_CAP: u64 = 9;

/// A projective point, scaled so its last nonzero coordinate is 1.
pub type Point = [FieldElem; 4];

#[derive(Clone, Debug)]
pub struct HermitianGeometry {
    pub q: u64,
    pub field: SquareField,
    /// Isotropic points in lexicographic order of packed coordinates.
    pub points: Vec<Point>,
    point_index: HashMap<Point, usize>,
    /// Totally isotropic lines as sorted point indices, lines in lexicographic order.
    pub lines: Vec<Vec<usize>>,
    /// Sorted line indices through each point.
    pub lines_of_point: Vec<Vec<usize>>,
    /// Points with `x₁ = 0`.
    pub ovoid: Vec<usize>,
    /// `⟨(0, 1, 0, 0)⟩`.
    pub p0: usize,
}

pub fn build_hermitian_geometry(q: u64) -> Result<HermitianGeometry> {
    build_hermitian_geometry_capped(q, HERMITIAN_CAP)
}

pub fn build_hermitian_geometry_capped(q: u64, cap: u64) -> Result<HermitianGeometry> {
    if !is_prime_power(q) {
        return Err(Error::InvalidParams(format!("q = {q} is not a prime power")));
    }
    if q > cap {
        return Err(Error::InvalidParams(format!("q = {q} exceeds the geometry cap {cap}")));
    }
    let field = SquareField::new(q as u32)?;
    let big_q = field.field.order();

    // Canonical isotropic vectors: last nonzero coordinate equal to 1.
    let mut points = Vec::new();
    for last in 0..4 {
        let free = big_q.pow(last as u32);
        for code in 0..free {
            let mut x = [FieldElem::ZERO; 4];
            let mut c = code;
            for xi in x.iter_mut().take(last) {
                *xi = FieldElem(c % big_q);
                c /= big_q;
            }
            x[last] = FieldElem::ONE;
            if form(&field, &x, &x).is_zero() {
                points.push(x);
            }
        }
    }
    points.sort_unstable();
    let point_index: HashMap<Point, usize> = points.iter().enumerate().map(|(i, &p)| (p, i)).collect();

    let mut geo = HermitianGeometry {
        q,
        p0: point_index[&[FieldElem::ZERO, FieldElem::ONE, FieldElem::ZERO, FieldElem::ZERO]],
        ovoid: (0..points.len()).filter(|&i| points[i][0].is_zero()).collect(),
        lines_of_point: vec![Vec::new(); points.len()],
        lines: Vec::new(),
        field,
        points,
        point_index,
    };
    geo.lines = geo.enumerate_lines();
    for (l, pts) in geo.lines.iter().enumerate() {
        for &p in pts {
            geo.lines_of_point[p].push(l);
        }
    }
    geo.check()?;
    Ok(geo)
}

/// `b(x, y)`.
pub fn form(f: &SquareField, x: &Point, y: &Point) -> FieldElem {
    let g = &f.field;
    let terms = [(x[0], y[0]), (x[1], y[3]), (x[2], y[2]), (x[3], y[1])];
    terms.iter().fold(FieldElem::ZERO, |acc, &(a, b)| g.add(acc, g.mul(a, f.conj(b))))
}

impl HermitianGeometry {
    pub fn point_index(&self, x: &Point) -> Option<usize> {
        self.point_index.get(&self.normalize(x)?).copied()
    }

    /// Scales a nonzero vector to canonical form.
    pub fn normalize(&self, x: &Point) -> Option<Point> {
        let f = &self.field.field;
        let last = x.iter().rposition(|c| !c.is_zero())?;
        let s = f.inv(x[last]).ok()?;
        Some(x.map(|c| f.mul(c, s)))
    }

    /// Each 2-space once, from its reduced basis `u = e_i + …`, `v = e_j + …`
    /// (`i < j`, `u_j = 0`, entries before the pivots zero).
    fn enumerate_lines(&self) -> Vec<Vec<usize>> {
        let f = &self.field;
        let g = &f.field;
        let big_q = g.order();
        let fill = |pivot: usize, skip: Option<usize>| -> Vec<Point> {
            let free: Vec<usize> = (pivot + 1..4).filter(|&k| Some(k) != skip).collect();
            let mut out = Vec::new();
            for code in 0..big_q.pow(free.len() as u32) {
                let mut x = [FieldElem::ZERO; 4];
                x[pivot] = FieldElem::ONE;
                let mut c = code;
                for &k in &free {
                    x[k] = FieldElem(c % big_q);
                    c /= big_q;
                }
                if form(f, &x, &x).is_zero() {
                    out.push(x);
                }
            }
            out
        };
        let mut lines = Vec::new();
        for i in 0..4 {
            for j in i + 1..4 {
                let us = fill(i, Some(j));
                let vs = fill(j, None);
                for u in &us {
                    for v in &vs {
                        if !form(f, u, v).is_zero() {
                            continue;
                        }
                        let mut pts: Vec<usize> = g
                            .elements()
                            .map(|t| {
                                let w: Point = std::array::from_fn(|k| g.add(u[k], g.mul(t, v[k])));
                                self.point_index(&w).expect("isotropic combination")
                            })
                            .collect();
                        pts.push(self.point_index(v).expect("isotropic"));
                        pts.sort_unstable();
                        lines.push(pts);
                    }
                }
            }
        }
        lines.sort_unstable();
        lines
    }

    fn check(&self) -> Result<()> {
        let q = self.q as usize;
        let fail = |msg: String| Err(Error::Construction(msg));
        let want_points = (q * q + 1) * (q * q * q + 1);
        let want_lines = (q + 1) * (q * q * q + 1);
        if self.points.len() != want_points {
            return fail(format!("{} points, expected {want_points}", self.points.len()));
        }
        if self.lines.len() != want_lines {
            return fail(format!("{} lines, expected {want_lines}", self.lines.len()));
        }
        if let Some(l) = self.lines.iter().position(|l| l.len() != q * q + 1) {
            return fail(format!("line {l} has {} points", self.lines[l].len()));
        }
        if let Some(p) = self.lines_of_point.iter().position(|l| l.len() != q + 1) {
            return fail(format!("point {p} lies on {} lines", self.lines_of_point[p].len()));
        }
        if self.ovoid.len() != q * q * q + 1 {
            return fail(format!("ovoid has {} points", self.ovoid.len()));
        }
        let mut on_ovoid = vec![false; self.points.len()];
        for &o in &self.ovoid {
            on_ovoid[o] = true;
        }
        if let Some(l) = self.lines.iter().position(|l| l.iter().filter(|&&p| on_ovoid[p]).count() > 1) {
            return fail(format!("line {l} meets the ovoid twice"));
        }
        let mut param: Vec<usize> = vec![self.p0];
        for (a, b) in self.field.hermitian_trace_zero_pairs() {
            let x = [FieldElem::ZERO, a, b, FieldElem::ONE];
            param.push(self.point_index(&x).ok_or_else(|| Error::Construction("parametrized ovoid point is not isotropic".into()))?);
        }
        param.sort_unstable();
        if param != self.ovoid {
            return fail("the parametrized ovoid differs from the hyperplane section".into());
        }
        Ok(())
    }

    /// The line through points `a ≠ b`, if they are collinear.
    pub fn line_through(&self, a: usize, b: usize) -> Option<usize> {
        let lb = &self.lines_of_point[b];
        self.lines_of_point[a].iter().copied().find(|l| lb.binary_search(l).is_ok())
    }

    /// Image of line `l` under a collineation given on points.
    pub fn map_line(&self, l: usize, f: impl Fn(usize) -> usize) -> Option<usize> {
        let pts = &self.lines[l];
        self.line_through(f(pts[0]), f(pts[1]))
    }

    pub fn concurrent(&self, a: usize, b: usize) -> bool {
        let (la, lb) = (&self.lines[a], &self.lines[b]);
        la.iter().any(|p| lb.binary_search(p).is_ok())
    }
}
