//! Convex lattice polygons: lattice points, genus, interior hulls,
//! relaxations, unimodular maps and a canonical normal form.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Signed;

use crate::error::{Error, Result};
use crate::geometry::{convex_hull, orient, shoelace2, Point};
use crate::Rational;

pub type LatticePoint = Point<i64>;
pub type RationalPoint = Point<Rational>;

pub fn to_rational(p: &LatticePoint) -> RationalPoint {
    Point::new(Rational::from_integer(p.x.into()), Rational::from_integer(p.y.into()))
}

/// Position of a point relative to a closed polygon.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Location {
    Interior,
    Boundary,
    Outside,
}

/// The closed half-plane `a x + b y <= c` with `gcd(a, b) = 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct HalfPlane {
    pub a: i64,
    pub b: i64,
    pub c: i64,
}

impl HalfPlane {
    /// Supporting half-plane of the counterclockwise edge `p -> q`.
    pub fn of_edge(p: &LatticePoint, q: &LatticePoint) -> Self {
        let d = *q - *p;
        let g = d.x.gcd(&d.y);
        let (a, b) = (d.y / g, -d.x / g);
        HalfPlane { a, b, c: a * p.x + b * p.y }
    }

    /// `c - (a x + b y)`: positive strictly inside, zero on the line.
    pub fn slack(&self, p: &LatticePoint) -> i64 {
        self.c - (self.a * p.x + self.b * p.y)
    }

    pub fn relaxed(&self) -> HalfPlane {
        HalfPlane { c: self.c + 1, ..*self }
    }
}

/// A convex polygon with integer vertices, stored counterclockwise from its
/// lexicographically smallest vertex with no redundant vertices.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LatticePolygon {
    vertices: Vec<LatticePoint>,
}

impl LatticePolygon {
    /// Convex hull of an arbitrary point list; rejects hulls that are not
    /// two-dimensional.
    pub fn new(points: &[LatticePoint]) -> Result<Self> {
        let hull = convex_hull(points);
        if hull.len() < 3 {
            return Err(Error::InvalidPolygon(format!(
                "convex hull of {} point(s) is not two-dimensional",
                points.len()
            )));
        }
        Ok(Self { vertices: hull })
    }

    pub fn from_coords(coords: &[(i64, i64)]) -> Result<Self> {
        let pts: Vec<LatticePoint> = coords.iter().map(|&(x, y)| Point::new(x, y)).collect();
        Self::new(&pts)
    }

    /// Parses `x1,y1 x2,y2 ...`.
    pub fn parse(text: &str) -> Result<Self> {
        let mut pts = Vec::new();
        for tok in text.split_whitespace() {
            let (x, y) = tok
                .split_once(',')
                .ok_or_else(|| Error::Parse(format!("expected `x,y`, found `{tok}`")))?;
            let x: i64 = x.trim().parse().map_err(|_| Error::Parse(format!("bad integer in `{tok}`")))?;
            let y: i64 = y.trim().parse().map_err(|_| Error::Parse(format!("bad integer in `{tok}`")))?;
            pts.push(Point::new(x, y));
        }
        if pts.is_empty() {
            return Err(Error::Parse("empty polygon literal".into()));
        }
        Self::new(&pts)
    }

    pub fn vertices(&self) -> &[LatticePoint] {
        &self.vertices
    }

    /// Counterclockwise edges `(v_i, v_{i+1})`.
    pub fn edges(&self) -> impl Iterator<Item = (LatticePoint, LatticePoint)> + '_ {
        let n = self.vertices.len();
        (0..n).map(move |i| (self.vertices[i], self.vertices[(i + 1) % n]))
    }

    pub fn half_planes(&self) -> Vec<HalfPlane> {
        self.edges().map(|(p, q)| HalfPlane::of_edge(&p, &q)).collect()
    }

    /// Twice the area.
    pub fn area2(&self) -> i64 {
        shoelace2(&self.vertices)
    }

    pub fn area(&self) -> Rational {
        Rational::new(self.area2().into(), 2.into())
    }

    pub fn locate(&self, p: &LatticePoint) -> Location {
        let mut on_line = false;
        for (a, b) in self.edges() {
            let o = orient(&a, &b, p);
            if o < 0 {
                return Location::Outside;
            }
            if o == 0 {
                on_line = true;
            }
        }
        if on_line {
            Location::Boundary
        } else {
            Location::Interior
        }
    }

    /// Lattice points of the closed polygon in lexicographic order.
    pub fn lattice_points(&self) -> Vec<LatticePoint> {
        let (x0, x1) = minmax(self.vertices.iter().map(|p| p.x));
        let (y0, y1) = minmax(self.vertices.iter().map(|p| p.y));
        let mut out = Vec::new();
        for x in x0..=x1 {
            for y in y0..=y1 {
                let p = Point::new(x, y);
                if self.locate(&p) != Location::Outside {
                    out.push(p);
                }
            }
        }
        out
    }

    pub fn interior_points(&self) -> Vec<LatticePoint> {
        self.lattice_points().into_iter().filter(|p| self.locate(p) == Location::Interior).collect()
    }

    /// Boundary lattice points in counterclockwise order starting at the
    /// first vertex.
    pub fn boundary_cycle(&self) -> Vec<LatticePoint> {
        let mut out = Vec::new();
        for (p, q) in self.edges() {
            let d = q - p;
            let g = d.x.gcd(&d.y);
            let step = Point::new(d.x / g, d.y / g);
            for k in 0..g {
                out.push(p + step * k);
            }
        }
        out
    }

    pub fn genus(&self) -> usize {
        self.interior_points().len()
    }

    pub fn boundary_point_count(&self) -> usize {
        self.edges().map(|(p, q)| (q - p).x.gcd(&(q - p).y) as usize).sum()
    }

    pub fn interior_hull(&self) -> InteriorHull {
        InteriorHull::of_points(&self.interior_points())
    }

    pub fn is_hyperelliptic(&self) -> Result<bool> {
        let hull = self.interior_hull();
        if matches!(hull, InteriorHull::Empty) {
            return Err(Error::Precondition("genus 0 polygon has no hyperelliptic classification".into()));
        }
        Ok(hull.dimension() <= 1)
    }

    /// Intersection of the half-planes `a x + b y <= c + 1` over all edges.
    pub fn relaxed(&self) -> RationalPolygon {
        let planes: Vec<HalfPlane> = self.half_planes().iter().map(HalfPlane::relaxed).collect();
        RationalPolygon::from_half_planes(&planes)
    }

    /// Whether the polygon equals the relaxation of its interior polygon.
    pub fn is_maximal(&self) -> Result<bool> {
        match self.interior_hull() {
            InteriorHull::Polygon(q) => Ok(q.relaxed() == RationalPolygon::from_lattice(self)),
            InteriorHull::Empty => Err(Error::Precondition("genus 0 polygon".into())),
            _ => Err(Error::Precondition("maximality is only defined for non-hyperelliptic polygons".into())),
        }
    }

    /// A map placing the interior points at `(1,1), ..., (g,1)`, which puts a
    /// hyperelliptic polygon of genus at least 2 inside `0 <= y <= 2`.
    pub fn hyperelliptic_frame(&self) -> Result<UnimodularMap> {
        let interior = self.interior_points();
        if interior.len() < 2 || !crate::geometry::all_collinear(&interior) {
            return Err(Error::Precondition("expected a hyperelliptic polygon of genus at least 2".into()));
        }
        let d = interior[1] - interior[0];
        let (s, t) = bezout(d.x, d.y);
        let linear = UnimodularMap::linear([[s, t], [-d.y, d.x]])?;
        let p0 = linear.apply(&interior[0]);
        let map = UnimodularMap::translation(Point::new(1 - p0.x, 1 - p0.y)).compose(&linear);
        let (lo, hi) = minmax(self.vertices.iter().map(|p| map.apply(p).y));
        if (lo, hi) != (0, 2) {
            return Err(Error::Precondition(format!("polygon spans heights {lo}..{hi} around its interior line")));
        }
        Ok(map)
    }

    pub fn apply(&self, t: &UnimodularMap) -> LatticePolygon {
        let pts: Vec<LatticePoint> = self.vertices.iter().map(|p| t.apply(p)).collect();
        LatticePolygon::new(&pts).expect("unimodular image of a polygon is a polygon")
    }

    pub fn translate(&self, v: LatticePoint) -> LatticePolygon {
        self.apply(&UnimodularMap::translation(v))
    }

    /// Canonical representative of the unimodular equivalence class.
    pub fn normal_form(&self) -> LatticePolygon {
        self.normal_form_with_map().0
    }

    /// Normal form together with a map sending `self` onto it.
    ///
    /// For every flag (vertex `v`, neighbouring vertex `u`) there is exactly
    /// one unimodular map sending `v` to the origin, the primitive direction
    /// of `vu` to `(1,0)`, the polygon into `y >= 0`, and the other edge at `v`
    /// to a primitive vector `(s, t)` with `0 <= s < t`. The normal form is the
    /// lexicographically least image over all flags.
    pub fn normal_form_with_map(&self) -> (LatticePolygon, UnimodularMap) {
        let n = self.vertices.len();
        let mut best: Option<(LatticePolygon, UnimodularMap)> = None;
        for i in 0..n {
            let v = self.vertices[i];
            for (u, w) in [
                (self.vertices[(i + 1) % n], self.vertices[(i + n - 1) % n]),
                (self.vertices[(i + n - 1) % n], self.vertices[(i + 1) % n]),
            ] {
                let t = flag_map(v, u, w);
                let image = self.apply(&t);
                if best.as_ref().is_none_or(|(b, _)| image.vertices < b.vertices) {
                    best = Some((image, t));
                }
            }
        }
        best.expect("polygon has vertices")
    }

    pub fn contains_polygon(&self, other: &LatticePolygon) -> bool {
        other.vertices.iter().all(|p| self.locate(p) != Location::Outside)
    }

    pub fn literal(&self) -> String {
        self.vertices.iter().map(|p| format!("{},{}", p.x, p.y)).collect::<Vec<_>>().join(" ")
    }
}

impl fmt::Display for LatticePolygon {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "conv(")?;
        for (i, p) in self.vertices.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, ")")
    }
}

fn minmax(it: impl Iterator<Item = i64>) -> (i64, i64) {
    it.fold((i64::MAX, i64::MIN), |(lo, hi), v| (lo.min(v), hi.max(v)))
}

/// Extended Euclid: returns `(s, t)` with `s a + t b = gcd(a, b)` (positive gcd).
pub fn bezout(a: i64, b: i64) -> (i64, i64) {
    let e = a.extended_gcd(&b);
    if e.gcd < 0 {
        (-e.x, -e.y)
    } else {
        (e.x, e.y)
    }
}

fn flag_map(v: LatticePoint, u: LatticePoint, w: LatticePoint) -> UnimodularMap {
    let e = u - v;
    let g = e.x.gcd(&e.y);
    let e = Point::new(e.x / g, e.y / g);
    let (s, t) = bezout(e.x, e.y);
    let mut r1 = [s, t];
    let mut r2 = [-e.y, e.x];
    let wv = w - v;
    if r2[0] * wv.x + r2[1] * wv.y < 0 {
        r2 = [-r2[0], -r2[1]];
    }
    let wy = r2[0] * wv.x + r2[1] * wv.y;
    let wx = r1[0] * wv.x + r1[1] * wv.y;
    // Primitive direction of the second edge, then reduce its x into [0, t).
    let gw = wx.gcd(&wy);
    let (px, py) = (wx / gw, wy / gw);
    let c = -Integer::div_floor(&px, &py);
    r1 = [r1[0] + c * r2[0], r1[1] + c * r2[1]];
    let linear = [r1, r2];
    let image_v = Point::new(linear[0][0] * v.x + linear[0][1] * v.y, linear[1][0] * v.x + linear[1][1] * v.y);
    UnimodularMap::new(linear, Point::new(-image_v.x, -image_v.y)).expect("flag map is unimodular")
}

/// Convex hull of the interior lattice points, tagged by dimension.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum InteriorHull {
    Empty,
    Point(LatticePoint),
    Segment(LatticePoint, LatticePoint),
    Polygon(LatticePolygon),
}

impl InteriorHull {
    pub fn of_points(points: &[LatticePoint]) -> Self {
        let hull = convex_hull(points);
        match hull.len() {
            0 => InteriorHull::Empty,
            1 => InteriorHull::Point(hull[0]),
            2 => InteriorHull::Segment(hull[0], hull[1]),
            _ => InteriorHull::Polygon(LatticePolygon { vertices: hull }),
        }
    }

    /// -1 for empty, otherwise the affine dimension.
    pub fn dimension(&self) -> i32 {
        match self {
            InteriorHull::Empty => -1,
            InteriorHull::Point(_) => 0,
            InteriorHull::Segment(..) => 1,
            InteriorHull::Polygon(_) => 2,
        }
    }

    pub fn polygon(&self) -> Option<&LatticePolygon> {
        match self {
            InteriorHull::Polygon(p) => Some(p),
            _ => None,
        }
    }

    pub fn apply(&self, t: &UnimodularMap) -> InteriorHull {
        match self {
            InteriorHull::Empty => InteriorHull::Empty,
            InteriorHull::Point(p) => InteriorHull::Point(t.apply(p)),
            InteriorHull::Segment(a, b) => InteriorHull::of_points(&[t.apply(a), t.apply(b)]),
            InteriorHull::Polygon(p) => InteriorHull::Polygon(p.apply(t)),
        }
    }
}

/// Convex polygon with rational vertices, canonical vertex order as for
/// [`LatticePolygon`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalPolygon {
    pub vertices: Vec<RationalPoint>,
}

impl RationalPolygon {
    pub fn from_lattice(p: &LatticePolygon) -> Self {
        Self { vertices: p.vertices.iter().map(to_rational).collect() }
    }

    /// Bounded intersection of half-planes; redundant constraints vanish
    /// because only pairwise line intersections satisfying every constraint
    /// survive as vertex candidates.
    pub fn from_half_planes(planes: &[HalfPlane]) -> Self {
        let mut candidates = Vec::new();
        for (i, h1) in planes.iter().enumerate() {
            for h2 in &planes[i + 1..] {
                let det = h1.a * h2.b - h1.b * h2.a;
                if det == 0 {
                    continue;
                }
                let x = Rational::new((h1.c * h2.b - h1.b * h2.c).into(), det.into());
                let y = Rational::new((h1.a * h2.c - h1.c * h2.a).into(), det.into());
                let p = Point::new(x, y);
                let inside = planes.iter().all(|h| {
                    Rational::from_integer(h.a.into()) * p.x.clone() + Rational::from_integer(h.b.into()) * p.y.clone()
                        <= Rational::from_integer(h.c.into())
                });
                if inside {
                    candidates.push(p);
                }
            }
        }
        Self { vertices: convex_hull(&candidates) }
    }

    pub fn is_lattice(&self) -> bool {
        self.vertices.iter().all(|p| p.x.is_integer() && p.y.is_integer())
    }

    pub fn to_lattice(&self) -> Option<LatticePolygon> {
        if !self.is_lattice() || self.vertices.len() < 3 {
            return None;
        }
        let pts: Vec<LatticePoint> = self
            .vertices
            .iter()
            .map(|p| Point::new(to_i64(&p.x.to_integer()), to_i64(&p.y.to_integer())))
            .collect();
        LatticePolygon::new(&pts).ok()
    }
}

fn to_i64(v: &BigInt) -> i64 {
    i64::try_from(v).expect("coordinate fits in i64")
}

/// A segment with rational endpoints (hence rational slope).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Segment {
    pub a: RationalPoint,
    pub b: RationalPoint,
}

impl Segment {
    pub fn new(a: RationalPoint, b: RationalPoint) -> Result<Self> {
        if a == b {
            return Err(Error::Precondition("segment endpoints must be distinct".into()));
        }
        Ok(Self { a, b })
    }

    pub fn lattice(a: LatticePoint, b: LatticePoint) -> Result<Self> {
        Self::new(to_rational(&a), to_rational(&b))
    }

    /// Lattice length: for lattice endpoints, the number of lattice points
    /// minus one; extended to rational segments by `l(kS) = k l(S)`.
    pub fn lattice_length(&self) -> Rational {
        let dx = self.b.x.clone() - self.a.x.clone();
        let dy = self.b.y.clone() - self.a.y.clone();
        let scale = dx.denom().lcm(dy.denom());
        let ix = (dx * Rational::from_integer(scale.clone())).to_integer();
        let iy = (dy * Rational::from_integer(scale.clone())).to_integer();
        let g = ix.gcd(&iy);
        Rational::new(g.abs(), scale)
    }
}

/// Affine map `p -> A p + v` with `det A = ±1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct UnimodularMap {
    pub matrix: [[i64; 2]; 2],
    pub translation: LatticePoint,
}

impl UnimodularMap {
    pub fn new(matrix: [[i64; 2]; 2], translation: LatticePoint) -> Result<Self> {
        let det = matrix[0][0] * matrix[1][1] - matrix[0][1] * matrix[1][0];
        if det.abs() != 1 {
            return Err(Error::Precondition(format!("matrix determinant is {det}, expected ±1")));
        }
        Ok(Self { matrix, translation })
    }

    pub fn linear(matrix: [[i64; 2]; 2]) -> Result<Self> {
        Self::new(matrix, Point::new(0, 0))
    }

    pub fn identity() -> Self {
        Self { matrix: [[1, 0], [0, 1]], translation: Point::new(0, 0) }
    }

    pub fn translation(v: LatticePoint) -> Self {
        Self { matrix: [[1, 0], [0, 1]], translation: v }
    }

    pub fn det(&self) -> i64 {
        self.matrix[0][0] * self.matrix[1][1] - self.matrix[0][1] * self.matrix[1][0]
    }

    pub fn apply(&self, p: &LatticePoint) -> LatticePoint {
        let m = &self.matrix;
        Point::new(
            m[0][0] * p.x + m[0][1] * p.y + self.translation.x,
            m[1][0] * p.x + m[1][1] * p.y + self.translation.y,
        )
    }

    /// Linear part only (for direction vectors).
    pub fn apply_vector(&self, v: &LatticePoint) -> LatticePoint {
        let m = &self.matrix;
        Point::new(m[0][0] * v.x + m[0][1] * v.y, m[1][0] * v.x + m[1][1] * v.y)
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &UnimodularMap) -> UnimodularMap {
        let a = &self.matrix;
        let b = &other.matrix;
        let mut m = [[0i64; 2]; 2];
        for (i, row) in m.iter_mut().enumerate() {
            for (j, cell) in row.iter_mut().enumerate() {
                *cell = a[i][0] * b[0][j] + a[i][1] * b[1][j];
            }
        }
        UnimodularMap { matrix: m, translation: self.apply(&other.translation) }
    }

    pub fn inverse(&self) -> UnimodularMap {
        let d = self.det();
        let m = &self.matrix;
        let inv = [[m[1][1] * d, -m[0][1] * d], [-m[1][0] * d, m[0][0] * d]];
        let lin = UnimodularMap { matrix: inv, translation: Point::new(0, 0) };
        let t = lin.apply(&self.translation);
        UnimodularMap { matrix: inv, translation: Point::new(-t.x, -t.y) }
    }
}

/// Lattice length of an integral segment; convenience for edge bookkeeping.
pub fn integral_length(a: &LatticePoint, b: &LatticePoint) -> i64 {
    let d = *b - *a;
    d.x.gcd(&d.y)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rational;

    fn poly(c: &[(i64, i64)]) -> LatticePolygon {
        LatticePolygon::from_coords(c).unwrap()
    }

    fn pt(x: i64, y: i64) -> LatticePoint {
        Point::new(x, y)
    }

    #[test]
    fn lattice_points_examples() {
        assert_eq!(poly(&[(0, 0), (1, 0), (0, 1)]).lattice_points(), vec![pt(0, 0), pt(0, 1), pt(1, 0)]);
        assert_eq!(poly(&[(0, 0), (2, 0), (0, 2)]).lattice_points().len(), 6);
        // Bounding-box scan of conv((1,0),(0,3),(3,1)) by hand: 3 vertices + 3 interior.
        let t = poly(&[(1, 0), (0, 3), (3, 1)]);
        let brute: Vec<LatticePoint> = (0..=3)
            .flat_map(|x| (0..=3).map(move |y| pt(x, y)))
            .filter(|p| {
                let (a, b, c) = (pt(1, 0), pt(0, 3), pt(3, 1));
                let s = [orient(&a, &c, p), orient(&c, &b, p), orient(&b, &a, p)];
                s.iter().all(|&v| v >= 0)
            })
            .collect();
        assert_eq!(t.lattice_points().len(), brute.len());
        assert_eq!(brute.len(), 6);
    }

    #[test]
    fn genus_and_boundary_examples() {
        assert_eq!(poly(&[(0, 0), (1, 0), (0, 1)]).genus(), 0);
        assert_eq!(poly(&[(1, 0), (0, 3), (3, 1)]).genus(), 3);
        assert_eq!(poly(&[(0, 0), (3, 0), (0, 3), (3, 3)]).genus(), 4);
        assert_eq!(poly(&[(1, 0), (0, 3), (3, 1)]).boundary_point_count(), 3);
        assert_eq!(poly(&[(0, 0), (2, 0), (0, 2)]).boundary_point_count(), 6);
        assert_eq!(poly(&[(0, 0), (0, 3), (3, 0), (3, 3)]).boundary_point_count(), 12);
    }

    #[test]
    fn lattice_length_examples() {
        let seg = |a: (i64, i64), b: (i64, i64)| Segment::lattice(pt(a.0, a.1), pt(b.0, b.1)).unwrap();
        assert_eq!(seg((0, 0), (2, 2)).lattice_length(), rational(2, 1));
        assert_eq!(seg((0, 0), (3, 0)).lattice_length(), rational(3, 1));
        let half = Segment::new(
            Point::new(rational(0, 1), rational(0, 1)),
            Point::new(rational(1, 2), rational(1, 2)),
        )
        .unwrap();
        assert_eq!(half.lattice_length(), rational(1, 2));
        assert!(Segment::lattice(pt(1, 1), pt(1, 1)).is_err());
    }

    #[test]
    fn interior_hull_examples() {
        assert_eq!(poly(&[(0, 0), (1, 0), (0, 1)]).interior_hull(), InteriorHull::Empty);
        assert_eq!(
            poly(&[(0, 0), (4, 0), (0, 4)]).interior_hull(),
            InteriorHull::Polygon(poly(&[(1, 1), (2, 1), (1, 2)]))
        );
        assert_eq!(
            poly(&[(0, 0), (0, 3), (2, 0), (2, 3)]).interior_hull(),
            InteriorHull::Segment(pt(1, 1), pt(1, 2))
        );
    }

    #[test]
    fn hyperelliptic_examples() {
        assert!(!poly(&[(0, 0), (4, 0), (0, 4)]).is_hyperelliptic().unwrap());
        assert!(poly(&[(0, 0), (0, 3), (2, 0), (2, 3)]).is_hyperelliptic().unwrap());
        assert!(!poly(&[(1, 0), (0, 3), (3, 1)]).is_hyperelliptic().unwrap());
        assert!(poly(&[(0, 0), (1, 0), (0, 1)]).is_hyperelliptic().is_err());
    }

    #[test]
    fn relaxation_examples() {
        let r = |c: &[(i64, i64)]| RationalPolygon::from_lattice(&poly(c));
        assert_eq!(poly(&[(0, 0), (0, 1), (3, 0), (2, 1)]).relaxed(), r(&[(-1, -1), (-1, 2), (5, -1), (2, 2)]));
        assert_eq!(poly(&[(1, 1), (2, 1), (1, 2)]).relaxed(), r(&[(0, 0), (4, 0), (0, 4)]));
        assert_eq!(poly(&[(0, 0), (1, 0), (0, 1)]).relaxed(), r(&[(-1, -1), (3, -1), (-1, 3)]));
        // A non-lattice relaxation.
        let thin = poly(&[(0, 0), (2, 1), (1, 1)]);
        assert!(!thin.relaxed().vertices.is_empty());
    }

    #[test]
    fn maximality_examples() {
        assert!(poly(&[(0, 0), (4, 0), (0, 4)]).is_maximal().unwrap());
        assert!(!poly(&[(1, 0), (0, 3), (3, 1)]).is_maximal().unwrap());
        assert!(poly(&[(-1, -1), (-1, 2), (5, -1), (2, 2)]).is_maximal().unwrap());
        assert!(poly(&[(0, 0), (0, 3), (2, 0), (2, 3)]).is_maximal().is_err());
    }

    #[test]
    fn unimodular_maps() {
        let p = poly(&[(0, 0), (2, 0), (1, 1), (0, 1)]);
        assert_eq!(p.apply(&UnimodularMap::identity()), p);
        let swap = UnimodularMap::linear([[0, 1], [1, 0]]).unwrap();
        assert_eq!(p.apply(&swap), poly(&[(0, 0), (1, 0), (1, 1), (0, 2)]));
        let s1 = UnimodularMap::linear([[1, -1], [0, 1]]).unwrap();
        let s2 = UnimodularMap::linear([[1, -2], [0, 1]]).unwrap();
        assert_eq!(p.apply(&s1).apply(&s1), p.apply(&s2));
        assert_eq!(s1.compose(&s1), s2);
        assert!(UnimodularMap::linear([[2, 0], [0, 1]]).is_err());
        let t = UnimodularMap::new([[2, 1], [1, 1]], pt(3, -4)).unwrap();
        assert_eq!(t.compose(&t.inverse()), UnimodularMap::identity());
    }

    #[test]
    fn normal_form_of_equivalent_polygons() {
        let p = poly(&[(0, 0), (2, 0), (1, 1), (0, 1)]);
        let nf = p.normal_form();
        for m in [[[0, 1], [1, 0]], [[1, -1], [0, 1]], [[2, 1], [1, 1]]] {
            let q = p.apply(&UnimodularMap::linear(m).unwrap());
            assert_eq!(q.normal_form(), nf);
        }
        assert_eq!(nf.normal_form(), nf);
        let (img, t) = p.normal_form_with_map();
        assert_eq!(p.apply(&t), img);
    }

    /// Independent equivalence oracle for triangles: try every vertex
    /// bijection and check the induced linear map is integral and unimodular.
    fn triangles_equivalent(a: &LatticePolygon, b: &LatticePolygon) -> bool {
        let (va, vb) = (a.vertices(), b.vertices());
        let perms = [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];
        perms.iter().any(|p| {
            let (e1, e2) = (va[1] - va[0], va[2] - va[0]);
            let (f1, f2) = (vb[p[1]] - vb[p[0]], vb[p[2]] - vb[p[0]]);
            let d = e1.det(&e2);
            // M [e1 e2] = [f1 f2]  =>  M = [f1 f2] adj([e1 e2]) / d
            let m00 = f1.x * e2.y - f2.x * e1.y;
            let m01 = -f1.x * e2.x + f2.x * e1.x;
            let m10 = f1.y * e2.y - f2.y * e1.y;
            let m11 = -f1.y * e2.x + f2.y * e1.x;
            if [m00, m01, m10, m11].iter().any(|v| v % d != 0) {
                return false;
            }
            let (m00, m01, m10, m11) = (m00 / d, m01 / d, m10 / d, m11 / d);
            (m00 * m11 - m01 * m10).abs() == 1
        })
    }

    #[test]
    fn normal_form_separates_triangles_like_the_oracle() {
        for b1 in 0..=9 {
            for b2 in 0..=9 {
                let t1 = poly(&[(0, 0), (0, 1), (9, b1)]);
                let t2 = poly(&[(0, 0), (0, 1), (9, b2)]);
                assert_eq!(t1.normal_form() == t2.normal_form(), triangles_equivalent(&t1, &t2), "b={b1},{b2}");
            }
        }
        let a = poly(&[(0, 0), (0, 1), (9, 2)]);
        let b = poly(&[(0, 0), (0, 1), (9, 7)]);
        assert_eq!(a.normal_form() == b.normal_form(), triangles_equivalent(&a, &b));
    }

    #[test]
    fn parse_literal() {
        let p = LatticePolygon::parse("1,0 0,3  3,1").unwrap();
        assert_eq!(p, poly(&[(1, 0), (0, 3), (3, 1)]));
        assert!(LatticePolygon::parse("1,0 2").is_err());
        assert!(LatticePolygon::parse("0,0 1,1 2,2").is_err());
    }
}
