//! Radial edges and the Type 1/2/3 classification of interior boundary points.

use crate::error::{Error, Result};
use crate::geometry::all_collinear;
use crate::lattice::{HalfPlane, InteriorHull, LatticePoint, LatticePolygon};
use crate::triangulation::Triangulation;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum PointType {
    One,
    Two,
    Three,
}

impl PointType {
    /// Contribution to `b2 + 2 b3`.
    pub fn weight(self) -> usize {
        match self {
            PointType::One => 0,
            PointType::Two => 1,
            PointType::Three => 2,
        }
    }

    /// Type of a point joined radially to `targets`. A point with no radial
    /// edge counts as Type 1.
    pub fn of_targets(targets: &[LatticePoint]) -> PointType {
        if targets.len() <= 1 {
            PointType::One
        } else if all_collinear(targets) {
            PointType::Two
        } else {
            PointType::Three
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TypeClassification {
    pub points: Vec<(LatticePoint, PointType)>,
    pub b1: usize,
    pub b2: usize,
    pub b3: usize,
}

impl TypeClassification {
    pub fn weight(&self) -> usize {
        self.b2 + 2 * self.b3
    }
}

/// Geometry of `P` and `P_int` shared by every triangulation of `P`.
pub(crate) struct TypeContext {
    pub genus: usize,
    inner_planes: Vec<HalfPlane>,
    on_outer: Vec<bool>,
    on_inner: Vec<bool>,
    points: Vec<LatticePoint>,
}

impl TypeContext {
    pub fn new(poly: &LatticePolygon) -> Result<Self> {
        let InteriorHull::Polygon(inner) = poly.interior_hull() else {
            return Err(Error::Precondition("radial edges need a two-dimensional interior polygon".into()));
        };
        let points = poly.lattice_points();
        let outer: std::collections::BTreeSet<LatticePoint> = poly.boundary_cycle().into_iter().collect();
        let inner_cycle: std::collections::BTreeSet<LatticePoint> = inner.boundary_cycle().into_iter().collect();
        Ok(Self {
            genus: poly.genus(),
            inner_planes: inner.half_planes(),
            on_outer: points.iter().map(|p| outer.contains(p)).collect(),
            on_inner: points.iter().map(|p| inner_cycle.contains(p)).collect(),
            points,
        })
    }

    /// Whether the segment from `v` on the interior boundary towards `w`
    /// avoids the interior of `P_int`. By convexity this is decided by the
    /// direction at `v`.
    pub fn is_radial(&self, v: &LatticePoint, w: &LatticePoint) -> bool {
        let d = *w - *v;
        !self.inner_planes.iter().filter(|h| h.slack(v) == 0).all(|h| h.a * d.x + h.b * d.y < 0)
    }

    pub fn classify(&self, t: &Triangulation) -> Result<TypeClassification> {
        if t.points() != self.points.as_slice() {
            return Err(Error::Precondition("triangulation does not use the polygon's lattice points".into()));
        }
        let adj = t.adjacency();
        let mut points = Vec::new();
        let (mut b1, mut b2, mut b3) = (0, 0, 0);
        for (i, nbrs) in adj.iter().enumerate() {
            if !self.on_inner[i] {
                continue;
            }
            let v = self.points[i];
            let targets: Vec<LatticePoint> = nbrs
                .iter()
                .filter(|&&j| self.on_outer[j] && self.is_radial(&v, &self.points[j]))
                .map(|&j| self.points[j])
                .collect();
            let ty = PointType::of_targets(&targets);
            match ty {
                PointType::One => b1 += 1,
                PointType::Two => b2 += 1,
                PointType::Three => b3 += 1,
            }
            points.push((v, ty));
        }
        Ok(TypeClassification { points, b1, b2, b3 })
    }

    pub fn radial_edges(&self, t: &Triangulation) -> Vec<(LatticePoint, LatticePoint)> {
        let mut out = Vec::new();
        for (i, nbrs) in t.adjacency().iter().enumerate() {
            if !self.on_inner[i] {
                continue;
            }
            for &j in nbrs {
                if self.on_outer[j] && self.is_radial(&self.points[i], &self.points[j]) {
                    out.push((self.points[i], self.points[j]));
                }
            }
        }
        out
    }

    pub fn formula(&self, t: &Triangulation) -> Result<usize> {
        Ok(self.genus - 3 + self.classify(t)?.weight())
    }
}

fn non_hyperelliptic_context(t: &Triangulation) -> Result<TypeContext> {
    let poly = t.polygon();
    if poly.genus() == 0 || poly.is_hyperelliptic()? {
        return Err(Error::Precondition("expected a non-hyperelliptic polygon".into()));
    }
    TypeContext::new(&poly)
}

/// Edges from a boundary point of `P_int` to a boundary point of `P` that
/// do not pass through the interior of `P_int`.
pub fn radial_edges(t: &Triangulation) -> Result<Vec<(LatticePoint, LatticePoint)>> {
    Ok(non_hyperelliptic_context(t)?.radial_edges(t))
}

pub fn classify_types(t: &Triangulation) -> Result<TypeClassification> {
    non_hyperelliptic_context(t)?.classify(t)
}

/// `g - 3 + b2 + 2 b3`.
pub fn dim_formula(t: &Triangulation) -> Result<usize> {
    non_hyperelliptic_context(t)?.formula(t)
}

/// Interior points of a hyperelliptic polygon in order along their line.
pub(crate) struct HyperellipticContext {
    pub genus: usize,
    interior: Vec<usize>,
    is_interior: Vec<bool>,
    points: Vec<LatticePoint>,
}

impl HyperellipticContext {
    pub fn new(poly: &LatticePolygon) -> Result<Self> {
        let g = poly.genus();
        if g < 2 || !poly.is_hyperelliptic()? {
            return Err(Error::Precondition("expected a hyperelliptic polygon of genus at least 2".into()));
        }
        let points = poly.lattice_points();
        let inner = poly.interior_points();
        // Lexicographic order is an order along the interior line.
        let interior: Vec<usize> = inner.iter().map(|p| points.binary_search(p).unwrap()).collect();
        let mut is_interior = vec![false; points.len()];
        for &i in &interior {
            is_interior[i] = true;
        }
        Ok(Self { genus: g, interior, is_interior, points })
    }

    /// `(b_e, b_m)`.
    pub fn counts(&self, t: &Triangulation) -> Result<(usize, usize)> {
        if t.points() != self.points.as_slice() {
            return Err(Error::Precondition("triangulation does not use the polygon's lattice points".into()));
        }
        let adj = t.adjacency();
        let g = self.genus;
        let boundary = |i: usize| -> Vec<LatticePoint> {
            adj[i].iter().filter(|&&j| !self.is_interior[j]).map(|&j| self.points[j]).collect()
        };
        let joined_inside = |i: usize| adj[i].iter().any(|&j| self.is_interior[j]);
        let mut be = 0;
        for end in [self.interior[0], self.interior[g - 1]] {
            if joined_inside(end) && all_collinear(&boundary(end)) {
                be += 1;
            }
        }
        let bm = self.interior[1..g - 1].iter().filter(|&&i| boundary(i).len() == 2).count();
        Ok((be, bm))
    }

    pub fn formula(&self, t: &Triangulation) -> Result<usize> {
        let (be, bm) = self.counts(t)?;
        Ok(2 * self.genus - 1 - be - bm)
    }
}

/// `2g - 1 - b_e - b_m`.
pub fn dim_formula_hyperelliptic(t: &Triangulation) -> Result<usize> {
    HyperellipticContext::new(&t.polygon())?.formula(t)
}
