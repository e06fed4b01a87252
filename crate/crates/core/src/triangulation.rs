//! Fine unimodular triangulations of a polygon's lattice points: validation,
//! exhaustive enumeration, regularity and secondary cones.

use std::collections::{BTreeMap, BTreeSet};

use num_integer::Integer;
use num_traits::{Signed, Zero};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::geometry::{orient, segments_cross};
use crate::lattice::{LatticePoint, LatticePolygon, UnimodularMap};
use crate::lp::{LinearProgram, LpOutcome};
use crate::scalar::Field;
use crate::Rational;

pub const DEFAULT_MAX_POINTS: usize = 16;
pub const DEFAULT_MAX_TRIANGULATIONS: usize = 1_000_000;

/// A triangulation of `conv(points)` using every point as a vertex.
///
/// Triangles are stored as ascending index triples, and the triangle list is
/// sorted, so structural equality is equality of triangulations.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Triangulation {
    points: Vec<LatticePoint>,
    triangles: Vec<[usize; 3]>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct InteriorEdge {
    pub a: usize,
    pub b: usize,
    /// The two incident triangles (indices into `triangles()`).
    pub triangles: [usize; 2],
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BoundaryEdge {
    pub a: usize,
    pub b: usize,
    pub triangle: usize,
}

#[derive(Clone, Debug, Default)]
pub struct EdgePartition {
    pub interior: Vec<InteriorEdge>,
    pub boundary: Vec<BoundaryEdge>,
}

impl Triangulation {
    /// Builds and fully validates a triangulation: every triangle is
    /// nondegenerate, triangles do not overlap, they cover the convex hull of
    /// the points, and every point is used.
    pub fn new(points: Vec<LatticePoint>, triangles: Vec<[usize; 3]>) -> Result<Self> {
        let t = Self::from_parts(points, triangles);
        t.validate()?;
        Ok(t)
    }

    pub(crate) fn from_parts(points: Vec<LatticePoint>, triangles: Vec<[usize; 3]>) -> Self {
        let mut triangles: Vec<[usize; 3]> = triangles
            .into_iter()
            .map(|mut t| {
                t.sort_unstable();
                t
            })
            .collect();
        triangles.sort_unstable();
        Self { points, triangles }
    }

    pub fn points(&self) -> &[LatticePoint] {
        &self.points
    }

    pub fn triangles(&self) -> &[[usize; 3]] {
        &self.triangles
    }

    pub fn index_of(&self, p: &LatticePoint) -> Option<usize> {
        self.points.iter().position(|q| q == p)
    }

    pub fn polygon(&self) -> LatticePolygon {
        LatticePolygon::new(&self.points).expect("triangulated point set is two-dimensional")
    }

    fn validate(&self) -> Result<()> {
        let n = self.points.len();
        let bad = |m: String| Err(Error::InvalidTriangulation(m));
        let distinct: BTreeSet<_> = self.points.iter().collect();
        if distinct.len() != n {
            return bad("duplicate points".into());
        }
        let poly = LatticePolygon::new(&self.points).map_err(|e| Error::InvalidTriangulation(e.to_string()))?;
        let mut used = vec![false; n];
        let mut area2 = 0i64;
        for t in &self.triangles {
            if t.iter().any(|&i| i >= n) {
                return bad(format!("triangle {t:?} indexes outside the point list"));
            }
            if t[0] == t[1] || t[1] == t[2] {
                return bad(format!("triangle {t:?} repeats a vertex"));
            }
            let o = orient(&self.points[t[0]], &self.points[t[1]], &self.points[t[2]]);
            if o == 0 {
                return bad(format!("triangle {t:?} is degenerate"));
            }
            area2 += o.abs();
            for &i in t {
                used[i] = true;
            }
        }
        if let Some(i) = used.iter().position(|u| !u) {
            return bad(format!("point {} is not a vertex of any triangle", self.points[i]));
        }
        if area2 != poly.area2() {
            return bad(format!("triangles cover area {}/2, polygon has area {}/2", area2, poly.area2()));
        }
        // Each edge must have at most one triangle on each side, and no two
        // edges may cross. Together with the area count this forces a
        // tiling.
        let mut sides: BTreeMap<(usize, usize), (u32, u32)> = BTreeMap::new();
        for t in &self.triangles {
            for (a, b, c) in [(t[0], t[1], t[2]), (t[0], t[2], t[1]), (t[1], t[2], t[0])] {
                let entry = sides.entry((a, b)).or_default();
                if orient(&self.points[a], &self.points[b], &self.points[c]) > 0 {
                    entry.0 += 1;
                } else {
                    entry.1 += 1;
                }
            }
        }
        if sides.values().any(|&(l, r)| l > 1 || r > 1) {
            return bad("two triangles overlap along an edge".into());
        }
        let edges: Vec<(usize, usize)> = sides.keys().copied().collect();
        for (i, &(a, b)) in edges.iter().enumerate() {
            for &(c, d) in &edges[i + 1..] {
                if segments_cross(&self.points[a], &self.points[b], &self.points[c], &self.points[d]) {
                    return bad("edges cross".into());
                }
            }
            // No point may lie in the relative interior of an edge.
            let (p, q) = (self.points[a], self.points[b]);
            if let Some(r) = self.points.iter().find(|r| {
                **r != p && **r != q && orient(&p, &q, r) == 0 && (**r - p).dot(&(**r - q)) < 0
            }) {
                return bad(format!("point {r} lies inside edge {p}-{q}"));
            }
        }
        Ok(())
    }

    pub fn edges(&self) -> EdgePartition {
        let mut incident: BTreeMap<(usize, usize), Vec<usize>> = BTreeMap::new();
        for (ti, t) in self.triangles.iter().enumerate() {
            for (a, b) in [(t[0], t[1]), (t[0], t[2]), (t[1], t[2])] {
                incident.entry((a, b)).or_default().push(ti);
            }
        }
        let mut out = EdgePartition::default();
        for ((a, b), ts) in incident {
            match ts.as_slice() {
                [t] => out.boundary.push(BoundaryEdge { a, b, triangle: *t }),
                [t0, t1] => out.interior.push(InteriorEdge { a, b, triangles: [*t0, *t1] }),
                _ => unreachable!("validated triangulation"),
            }
        }
        out
    }

    /// Every triangle has area 1/2.
    pub fn is_unimodular(&self) -> bool {
        self.triangles
            .iter()
            .all(|t| orient(&self.points[t[0]], &self.points[t[1]], &self.points[t[2]]).abs() == 1)
    }

    /// Sorted neighbour indices of every point.
    pub fn adjacency(&self) -> Vec<BTreeSet<usize>> {
        let mut adj = vec![BTreeSet::new(); self.points.len()];
        for t in &self.triangles {
            for (a, b) in [(t[0], t[1]), (t[0], t[2]), (t[1], t[2])] {
                adj[a].insert(b);
                adj[b].insert(a);
            }
        }
        adj
    }

    pub fn has_edge(&self, p: &LatticePoint, q: &LatticePoint) -> bool {
        let (Some(a), Some(b)) = (self.index_of(p), self.index_of(q)) else { return false };
        self.triangles.iter().any(|t| t.contains(&a) && t.contains(&b))
    }

    /// Image under a unimodular map, with points re-sorted lexicographically.
    pub fn apply(&self, map: &UnimodularMap) -> Triangulation {
        let images: Vec<LatticePoint> = self.points.iter().map(|p| map.apply(p)).collect();
        let mut order: Vec<usize> = (0..images.len()).collect();
        order.sort_by_key(|&i| images[i]);
        let mut new_index = vec![0; images.len()];
        for (k, &i) in order.iter().enumerate() {
            new_index[i] = k;
        }
        let points = order.iter().map(|&i| images[i]).collect();
        let triangles = self.triangles.iter().map(|t| t.map(|i| new_index[i])).collect();
        Triangulation::from_parts(points, triangles)
    }

    /// Sub-triangulation on the triangles accepted by `keep_triangle`.
    pub(crate) fn restrict(&self, keep_triangle: impl Fn(&[usize; 3]) -> bool) -> Triangulation {
        let kept: Vec<[usize; 3]> = self.triangles.iter().copied().filter(|t| keep_triangle(t)).collect();
        let mut used: Vec<usize> = kept.iter().flatten().copied().collect();
        used.sort_unstable();
        used.dedup();
        let mut new_index = vec![usize::MAX; self.points.len()];
        for (k, &i) in used.iter().enumerate() {
            new_index[i] = k;
        }
        let points = used.iter().map(|&i| self.points[i]).collect();
        let triangles = kept.iter().map(|t| t.map(|i| new_index[i])).collect();
        Triangulation::from_parts(points, triangles)
    }

    /// Tests whether the lower hull of `heights` projects onto this
    /// triangulation: every point off a triangle lies strictly above the
    /// plane through that triangle's lifted vertices.
    pub fn is_induced_by(&self, heights: &HeightFunction) -> bool {
        let h = &heights.heights;
        if h.len() != self.points.len() {
            return false;
        }
        let q = |v: i64| Rational::from_i64(v);
        self.triangles.iter().all(|t| {
            let (a, b, c) = (self.points[t[0]], self.points[t[1]], self.points[t[2]]);
            let d = orient(&a, &b, &c);
            let (u, w) = (b - a, c - a);
            let (hu, hw) = (h[t[1]].clone() - h[t[0]].clone(), h[t[2]].clone() - h[t[0]].clone());
            (0..self.points.len()).filter(|i| !t.contains(i)).all(|i| {
                let p = self.points[i] - a;
                let hp = h[i].clone() - h[t[0]].clone();
                // 3x3 determinant with rows (u, hu), (w, hw), (p, hp).
                let det = q(u.x) * (q(w.y) * hp.clone() - hw.clone() * q(p.y))
                    - q(u.y) * (q(w.x) * hp.clone() - hw.clone() * q(p.x))
                    + hu.clone() * q(w.x * p.y - w.y * p.x);
                (det * q(d)).is_positive()
            })
        })
    }

    /// The fine unimodular triangulation induced by lifting the lattice
    /// points of `poly` to `heights` and projecting the lower hull. Fails if
    /// the heights are not generic enough to induce one.
    pub fn from_heights(poly: &LatticePolygon, heights: &[Rational]) -> Result<Triangulation> {
        let points = poly.lattice_points();
        if heights.len() != points.len() {
            return Err(Error::Precondition("one height per lattice point is required".into()));
        }
        let n = points.len();
        let mut tris = Vec::new();
        for a in 0..n {
            for b in a + 1..n {
                for c in b + 1..n {
                    if orient(&points[a], &points[b], &points[c]).abs() != 1 {
                        continue;
                    }
                    let probe = Triangulation::from_parts(points.clone(), vec![[a, b, c]]);
                    if probe.is_induced_by(&HeightFunction::new(points.clone(), heights.to_vec())) {
                        tris.push([a, b, c]);
                    }
                }
            }
        }
        let t = Triangulation::new(points, tris)
            .map_err(|e| Error::InvalidTriangulation(format!("heights do not induce a fine unimodular triangulation: {e}")))?;
        Ok(t)
    }

    /// One fold functional per interior edge: positive exactly when the
    /// lifted quadrilateral around the edge is convex from below.
    pub fn secondary_cone(&self) -> SecondaryCone {
        let edges = self.edges();
        let inequalities = edges
            .interior
            .iter()
            .map(|e| {
                let opp = |ti: usize| {
                    *self.triangles[ti].iter().find(|&&v| v != e.a && v != e.b).expect("triangle has a third vertex")
                };
                let (r, s) = (opp(e.triangles[0]), opp(e.triangles[1]));
                FoldInequality { edge: (e.a, e.b), coefficients: fold_coefficients(&self.points, e.a, e.b, r, s) }
            })
            .collect();
        SecondaryCone { dimension: self.points.len(), inequalities }
    }

    /// Decides regularity by maximizing a common slack `t` of all fold
    /// inequalities over heights in a box; regular iff the optimum is
    /// positive. The returned heights satisfy every fold strictly.
    pub fn regularity_witness(&self) -> Option<HeightFunction> {
        let cone = self.secondary_cone();
        let n = self.points.len();
        if cone.inequalities.is_empty() {
            return Some(HeightFunction::new(self.points.clone(), vec![Rational::zero(); n]));
        }
        let q = |v: i64| Rational::from_i64(v);
        // Variables: shifted heights w_0..w_{n-1} in [0, 2], slack t in [0, 1].
        // Folds are invariant under adding a constant, so shifting is free.
        let mut objective = vec![Rational::zero(); n + 1];
        objective[n] = q(1);
        let mut lp = LinearProgram::new(objective);
        for ineq in &cone.inequalities {
            let mut row: Vec<Rational> = ineq.coefficients.iter().map(|&c| q(-c)).collect();
            row.push(q(1));
            lp.add_le(row, q(0));
        }
        for i in 0..n {
            let mut row = vec![Rational::zero(); n + 1];
            row[i] = q(1);
            lp.add_le(row, q(2));
        }
        let mut row = vec![Rational::zero(); n + 1];
        row[n] = q(1);
        lp.add_le(row, q(1));
        match lp.solve() {
            LpOutcome::Optimal { x, value } if value.is_positive() => {
                Some(HeightFunction::new(self.points.clone(), x[..n].to_vec()))
            }
            _ => None,
        }
    }

    pub fn is_regular(&self) -> bool {
        self.regularity_witness().is_some()
    }
}

/// Affine dependence among `p, q, r, s` scaled to content one, signed so the
/// coefficients on the two apexes `r`, `s` are positive.
fn fold_coefficients(points: &[LatticePoint], p: usize, q: usize, r: usize, s: usize) -> Vec<i64> {
    let (pp, pq, pr, ps) = (points[p], points[q], points[r], points[s]);
    let mut lam = [
        orient(&pq, &pr, &ps),
        -orient(&pp, &pr, &ps),
        orient(&pp, &pq, &ps),
        -orient(&pp, &pq, &pr),
    ];
    let g = lam.iter().fold(0i64, |acc, v| acc.gcd(v)) * lam[2].signum();
    for v in &mut lam {
        *v /= g;
    }
    let mut coeffs = vec![0i64; points.len()];
    for (idx, v) in [p, q, r, s].into_iter().zip(lam) {
        coeffs[idx] += v;
    }
    coeffs
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FoldInequality {
    /// The interior edge as point indices.
    pub edge: (usize, usize),
    /// Integer coefficients over the point list.
    pub coefficients: Vec<i64>,
}

impl FoldInequality {
    pub fn evaluate(&self, heights: &[Rational]) -> Rational {
        self.coefficients
            .iter()
            .zip(heights)
            .filter(|(c, _)| **c != 0)
            .map(|(c, h)| Rational::from_i64(*c) * h.clone())
            .fold(Rational::zero(), |a, b| a + b)
    }
}

/// Cone of height functions inducing a fixed triangulation, given by one
/// fold inequality per interior edge.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SecondaryCone {
    pub dimension: usize,
    pub inequalities: Vec<FoldInequality>,
}

impl SecondaryCone {
    pub fn contains_strictly(&self, heights: &[Rational]) -> bool {
        self.inequalities.iter().all(|f| f.evaluate(heights).is_positive())
    }
}

/// Rational heights over the lattice points of a polygon.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HeightFunction {
    pub points: Vec<LatticePoint>,
    pub heights: Vec<Rational>,
}

impl HeightFunction {
    pub fn new(points: Vec<LatticePoint>, heights: Vec<Rational>) -> Self {
        assert_eq!(points.len(), heights.len());
        Self { points, heights }
    }

    pub fn get(&self, p: &LatticePoint) -> Option<&Rational> {
        self.points.iter().position(|q| q == p).map(|i| &self.heights[i])
    }

    pub fn scaled(&self, c: &Rational) -> HeightFunction {
        HeightFunction::new(self.points.clone(), self.heights.iter().map(|h| h.clone() * c.clone()).collect())
    }
}

#[derive(Clone, Copy, Debug)]
pub struct EnumerationOptions {
    pub max_points: usize,
    pub max_triangulations: usize,
}

impl Default for EnumerationOptions {
    fn default() -> Self {
        Self { max_points: DEFAULT_MAX_POINTS, max_triangulations: DEFAULT_MAX_TRIANGULATIONS }
    }
}

const WORDS: usize = 4;

#[derive(Clone, Copy, Default, PartialEq, Eq)]
struct EdgeSet([u64; WORDS]);

impl EdgeSet {
    fn insert(&mut self, e: usize) {
        self.0[e / 64] |= 1 << (e % 64);
    }
    fn contains(&self, e: usize) -> bool {
        self.0[e / 64] >> (e % 64) & 1 == 1
    }
    fn intersects(&self, other: &EdgeSet) -> bool {
        self.0.iter().zip(&other.0).any(|(a, b)| a & b != 0)
    }
    fn first_of(f: impl Fn(usize) -> u64) -> Option<usize> {
        (0..WORDS).find_map(|w| {
            let bits = f(w);
            (bits != 0).then(|| w * 64 + bits.trailing_zeros() as usize)
        })
    }
}

/// Precomputed combinatorics of a point set for the frontier search.
struct Frontier {
    points: Vec<LatticePoint>,
    edge_id: Vec<Vec<usize>>,
    edge_ends: Vec<(usize, usize)>,
    crossing: Vec<EdgeSet>,
    on_hull: EdgeSet,
    /// `apex[e]` = (left, right) apexes of unimodular triangles on each side
    /// of edge `e` oriented from low to high index.
    apexes: Vec<(Vec<usize>, Vec<usize>)>,
    target: usize,
}

#[derive(Clone, Copy)]
struct State {
    used: EdgeSet,
    left: EdgeSet,
    right: EdgeSet,
}

impl Frontier {
    fn new(poly: &LatticePolygon, opts: &EnumerationOptions) -> Result<Self> {
        let points = poly.lattice_points();
        let n = points.len();
        if n > opts.max_points {
            return Err(Error::ResourceCap { what: "lattice point count", limit: opts.max_points });
        }
        let mut edge_id = vec![vec![usize::MAX; n]; n];
        let mut edge_ends = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                let d = points[j] - points[i];
                if d.x.gcd(&d.y) == 1 {
                    edge_id[i][j] = edge_ends.len();
                    edge_id[j][i] = edge_ends.len();
                    edge_ends.push((i, j));
                }
            }
        }
        if edge_ends.len() > WORDS * 64 {
            return Err(Error::ResourceCap { what: "primitive edge count", limit: WORDS * 64 });
        }
        let mut crossing = vec![EdgeSet::default(); edge_ends.len()];
        for (e, &(a, b)) in edge_ends.iter().enumerate() {
            for (f, &(c, d)) in edge_ends.iter().enumerate().skip(e + 1) {
                if segments_cross(&points[a], &points[b], &points[c], &points[d]) {
                    crossing[e].insert(f);
                    crossing[f].insert(e);
                }
            }
        }
        let cycle = poly.boundary_cycle();
        let mut on_hull = EdgeSet::default();
        let index = |p: &LatticePoint| points.binary_search(p).expect("boundary point is a lattice point");
        for k in 0..cycle.len() {
            let (a, b) = (index(&cycle[k]), index(&cycle[(k + 1) % cycle.len()]));
            on_hull.insert(edge_id[a][b]);
        }
        let mut apexes = vec![(Vec::new(), Vec::new()); edge_ends.len()];
        for (e, &(a, b)) in edge_ends.iter().enumerate() {
            for c in 0..n {
                match orient(&points[a], &points[b], &points[c]) {
                    1 => apexes[e].0.push(c),
                    -1 => apexes[e].1.push(c),
                    _ => {}
                }
            }
        }
        let target = poly.area2() as usize;
        Ok(Self { points, edge_id, edge_ends, crossing, on_hull, apexes, target })
    }

    /// Marks triangle `(a, b, c)` if it fits; returns the new state.
    fn place(&self, st: &State, tri: [usize; 3]) -> Option<State> {
        let mut next = *st;
        for (u, v, w) in [(tri[0], tri[1], tri[2]), (tri[1], tri[2], tri[0]), (tri[0], tri[2], tri[1])] {
            let e = self.edge_id[u][v];
            let (lo, hi) = self.edge_ends[e];
            let on_left = orient(&self.points[lo], &self.points[hi], &self.points[w]) > 0;
            if st.used.contains(e) {
                let side = if on_left { &st.left } else { &st.right };
                if side.contains(e) {
                    return None;
                }
            } else if self.crossing[e].intersects(&st.used) {
                return None;
            }
            next.used.insert(e);
            if on_left {
                next.left.insert(e);
            } else {
                next.right.insert(e);
            }
        }
        Some(next)
    }

    fn open_edge(&self, st: &State) -> Option<(usize, bool)> {
        EdgeSet::first_of(|w| st.used.0[w] & !self.on_hull.0[w] & (st.left.0[w] ^ st.right.0[w]))
            .map(|e| (e, st.left.contains(e)))
    }

    fn search(&self, st: State, tris: &mut Vec<[usize; 3]>, visit: &mut dyn FnMut(&[[usize; 3]]) -> bool) -> bool {
        let Some((e, left_taken)) = self.open_edge(&st) else {
            if tris.len() == self.target {
                return visit(tris);
            }
            return true;
        };
        let (a, b) = self.edge_ends[e];
        let candidates = if left_taken { &self.apexes[e].1 } else { &self.apexes[e].0 };
        for &c in candidates {
            let tri = [a, b, c];
            if let Some(next) = self.place(&st, tri) {
                tris.push(tri);
                let keep_going = self.search(next, tris, visit);
                tris.pop();
                if !keep_going {
                    return false;
                }
            }
        }
        true
    }

    fn roots(&self) -> Vec<(State, [usize; 3])> {
        // A hull edge has every other point on one side.
        let e = EdgeSet::first_of(|w| self.on_hull.0[w]).expect("polygon has hull edges");
        let (a, b) = self.edge_ends[e];
        let cands = if self.apexes[e].0.is_empty() { &self.apexes[e].1 } else { &self.apexes[e].0 };
        let empty = State { used: EdgeSet::default(), left: EdgeSet::default(), right: EdgeSet::default() };
        cands.iter().filter_map(|&c| self.place(&empty, [a, b, c]).map(|st| (st, [a, b, c]))).collect()
    }
}

/// Calls `visit` on every fine unimodular triangulation of `poly`, in
/// search order, until it returns `false`. Returns the number visited.
pub fn for_each_unimodular_triangulation(
    poly: &LatticePolygon,
    opts: &EnumerationOptions,
    mut visit: impl FnMut(&Triangulation) -> bool,
) -> Result<usize> {
    let frontier = Frontier::new(poly, opts)?;
    let mut count = 0usize;
    let mut capped = false;
    for (st, tri) in frontier.roots() {
        let mut tris = vec![tri];
        let cont = frontier.search(st, &mut tris, &mut |ts| {
            count += 1;
            if count > opts.max_triangulations {
                capped = true;
                return false;
            }
            visit(&Triangulation::from_parts(frontier.points.clone(), ts.to_vec()))
        });
        if !cont {
            break;
        }
    }
    if capped {
        return Err(Error::ResourceCap { what: "triangulation count", limit: opts.max_triangulations });
    }
    Ok(count)
}

/// All fine unimodular triangulations of `poly`, sorted canonically.
/// Independent subtrees of the search are explored in parallel.
pub fn enumerate_unimodular_triangulations(
    poly: &LatticePolygon,
    opts: &EnumerationOptions,
) -> Result<Vec<Triangulation>> {
    let frontier = Frontier::new(poly, opts)?;
    let roots = frontier.roots();
    // Second-level split gives enough parallel slack for small polygons.
    let mut tasks = Vec::new();
    for (st, tri) in roots {
        match frontier.open_edge(&st) {
            None => tasks.push((st, vec![tri])),
            Some((e, left_taken)) => {
                let (a, b) = frontier.edge_ends[e];
                let cands = if left_taken { &frontier.apexes[e].1 } else { &frontier.apexes[e].0 };
                for &c in cands {
                    if let Some(next) = frontier.place(&st, [a, b, c]) {
                        tasks.push((next, vec![tri, [a, b, c]]));
                    }
                }
            }
        }
    }
    let limit = opts.max_triangulations;
    let found = std::sync::atomic::AtomicUsize::new(0);
    let results: Vec<Vec<Vec<[usize; 3]>>> = tasks
        .into_par_iter()
        .map(|(st, mut tris)| {
            let mut local = Vec::new();
            frontier.search(st, &mut tris, &mut |ts| {
                if found.fetch_add(1, std::sync::atomic::Ordering::Relaxed) >= limit {
                    return false;
                }
                local.push(ts.to_vec());
                true
            });
            local
        })
        .collect();
    if found.load(std::sync::atomic::Ordering::Relaxed) > limit {
        return Err(Error::ResourceCap { what: "triangulation count", limit });
    }
    let mut out: Vec<Triangulation> = results
        .into_iter()
        .flatten()
        .map(|ts| Triangulation::from_parts(frontier.points.clone(), ts))
        .collect();
    out.sort();
    Ok(out)
}

pub fn count_unimodular_triangulations(poly: &LatticePolygon, opts: &EnumerationOptions) -> Result<usize> {
    for_each_unimodular_triangulation(poly, opts, |_| true)
}

/// Completes a set of constraint edges to a fine unimodular triangulation of
/// `poly`, greedily adding the shortest non-crossing primitive segments.
/// Constraint edges through lattice points are split at those points.
pub fn refine_to_unimodular(poly: &LatticePolygon, constraints: &[(LatticePoint, LatticePoint)]) -> Result<Triangulation> {
    let points = poly.lattice_points();
    let n = points.len();
    let index = |p: &LatticePoint| {
        points
            .binary_search(p)
            .map_err(|_| Error::InvalidTriangulation(format!("constraint endpoint {p} is not a lattice point of the polygon")))
    };
    let mut chosen: Vec<(usize, usize)> = Vec::new();
    let crosses_any = |chosen: &[(usize, usize)], a: usize, b: usize| {
        chosen.iter().any(|&(c, d)| segments_cross(&points[a], &points[b], &points[c], &points[d]))
    };
    let add = |chosen: &mut Vec<(usize, usize)>, a: usize, b: usize| {
        let e = (a.min(b), a.max(b));
        if !chosen.contains(&e) {
            chosen.push(e);
        }
    };
    for (p, q) in constraints {
        let (ia, ib) = (index(p)?, index(q)?);
        if ia == ib {
            return Err(Error::InvalidTriangulation("constraint edge has equal endpoints".into()));
        }
        let d = *q - *p;
        let g = d.x.gcd(&d.y);
        let step = crate::Point::new(d.x / g, d.y / g);
        for k in 0..g {
            let (a, b) = (index(&(*p + step * k))?, index(&(*p + step * (k + 1)))?);
            if crosses_any(&chosen, a, b) {
                return Err(Error::InvalidTriangulation(format!("constraint edges cross near {p}-{q}")));
            }
            add(&mut chosen, a, b);
        }
    }
    let mut candidates: Vec<(i64, usize, usize)> = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            let d = points[j] - points[i];
            if d.x.gcd(&d.y) == 1 {
                candidates.push((d.dot(&d), i, j));
            }
        }
    }
    candidates.sort_unstable();
    for (_, a, b) in candidates {
        if !crosses_any(&chosen, a, b) {
            add(&mut chosen, a, b);
        }
    }
    let edge_set: BTreeSet<(usize, usize)> = chosen.iter().copied().collect();
    let mut triangles = Vec::new();
    for &(a, b) in &edge_set {
        for c in b + 1..n {
            if edge_set.contains(&(a, c)) && edge_set.contains(&(b, c)) && orient(&points[a], &points[b], &points[c]).abs() == 1 {
                triangles.push([a, b, c]);
            }
        }
    }
    Triangulation::new(points, triangles)
}
