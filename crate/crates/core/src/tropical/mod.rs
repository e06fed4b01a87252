//! Dual tropical curves of unimodular triangulations, their skeletons, and the
//! rank oracle for the dimension of realizable skeleton edge lengths.

pub mod chain;

use std::collections::BTreeMap;

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::lattice::LatticePoint;
use crate::linalg::rank_int;
use crate::scalar::Field;
use crate::triangulation::{HeightFunction, Triangulation};
use crate::{Point, Rational};

pub use chain::{end_form, hyperelliptic_length_constraints, ChainLabel, ConstraintSystem, EndForm, Side};

/// Integer linear functional on the height vector.
pub type LinearForm = Vec<i64>;

fn evaluate(form: &[i64], heights: &[Rational]) -> Rational {
    form.iter()
        .zip(heights)
        .filter(|(c, _)| **c != 0)
        .fold(Rational::zero(), |acc, (c, h)| acc + Rational::from_i64(*c) * h.clone())
}

fn add_forms(a: &[i64], b: &[i64]) -> LinearForm {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

/// Position of a curve vertex as a pair of linear forms in the heights.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CurveVertex {
    pub triangle: usize,
    pub x: LinearForm,
    pub y: LinearForm,
}

/// Bounded edge of the curve, dual to an interior edge of the triangulation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CurveEdge {
    /// Curve vertices (triangle indices) at the two ends.
    pub ends: [usize; 2],
    /// The dual triangulation edge as point indices.
    pub dual: (usize, usize),
    /// Primitive direction from `ends[0]` to `ends[1]`.
    pub direction: LatticePoint,
    /// Lattice length as a functional; positive on the secondary cone.
    pub length: LinearForm,
}

/// Unbounded ray, dual to a boundary edge.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Ray {
    pub vertex: usize,
    pub dual: (usize, usize),
    pub direction: LatticePoint,
}

/// Combinatorial tropical curve dual to a regular unimodular triangulation,
/// with vertex positions and edge lengths linear in the heights
/// (min convention).
#[derive(Clone, Debug)]
pub struct TropicalCurveModel {
    pub points: Vec<LatticePoint>,
    pub vertices: Vec<CurveVertex>,
    pub edges: Vec<CurveEdge>,
    pub rays: Vec<Ray>,
    pub genus: usize,
    pub witness: HeightFunction,
}

impl TropicalCurveModel {
    pub fn vertex_position(&self, v: usize, heights: &[Rational]) -> Point<Rational> {
        Point::new(evaluate(&self.vertices[v].x, heights), evaluate(&self.vertices[v].y, heights))
    }

    pub fn edge_lengths(&self, heights: &[Rational]) -> Vec<Rational> {
        self.edges.iter().map(|e| evaluate(&e.length, heights)).collect()
    }
}

fn unit(n: usize, i: usize) -> LinearForm {
    let mut v = vec![0; n];
    v[i] = 1;
    v
}

pub fn dual_curve(t: &Triangulation) -> Result<TropicalCurveModel> {
    if !t.is_unimodular() {
        return Err(Error::Precondition("dual curves are built for unimodular triangulations".into()));
    }
    let witness = t.regularity_witness().ok_or(Error::NotRegular)?;
    let pts = t.points();
    let n = pts.len();
    let vertices: Vec<CurveVertex> = t
        .triangles()
        .iter()
        .enumerate()
        .map(|(ti, tri)| {
            let (p, q, r) = (pts[tri[0]], pts[tri[1]], pts[tri[2]]);
            let (u, w) = (q - p, r - p);
            let d = u.det(&w);
            // (q-p).X = c_p - c_q and (r-p).X = c_p - c_r, solved by Cramer.
            let b1 = add_forms(&unit(n, tri[0]), &unit(n, tri[1]).iter().map(|v| -v).collect::<Vec<_>>());
            let b2 = add_forms(&unit(n, tri[0]), &unit(n, tri[2]).iter().map(|v| -v).collect::<Vec<_>>());
            let x = b1.iter().zip(&b2).map(|(a, b)| (w.y * a - u.y * b) * d).collect();
            let y = b1.iter().zip(&b2).map(|(a, b)| (u.x * b - w.x * a) * d).collect();
            CurveVertex { triangle: ti, x, y }
        })
        .collect();
    let parts = t.edges();
    let edges = parts
        .interior
        .iter()
        .map(|e| {
            let dir = pts[e.b] - pts[e.a];
            let mut direction = Point::new(-dir.y, dir.x);
            let [v0, v1] = e.triangles;
            let dx: LinearForm = vertices[v1].x.iter().zip(&vertices[v0].x).map(|(a, b)| a - b).collect();
            let dy: LinearForm = vertices[v1].y.iter().zip(&vertices[v0].y).map(|(a, b)| a - b).collect();
            let norm = direction.dot(&direction);
            let mut length: LinearForm = dx.iter().zip(&dy).map(|(a, b)| (a * direction.x + b * direction.y) / norm).collect();
            if evaluate(&length, &witness.heights).is_negative() {
                length.iter_mut().for_each(|c| *c = -*c);
                direction = Point::new(-direction.x, -direction.y);
            }
            CurveEdge { ends: [v0, v1], dual: (e.a, e.b), direction, length }
        })
        .collect();
    let rays = parts
        .boundary
        .iter()
        .map(|e| {
            let dir = pts[e.b] - pts[e.a];
            let third = t.triangles()[e.triangle].iter().copied().find(|&v| v != e.a && v != e.b).unwrap();
            // The ray points along the inner normal of its boundary edge.
            let mut direction = Point::new(-dir.y, dir.x);
            if direction.dot(&(pts[third] - pts[e.a])) < 0 {
                direction = Point::new(dir.y, -dir.x);
            }
            Ray { vertex: e.triangle, dual: (e.a, e.b), direction }
        })
        .collect();
    let genus = t.polygon().genus();
    Ok(TropicalCurveModel { points: pts.to_vec(), vertices, edges, rays, genus, witness })
}

/// Edge of a skeleton: a maximal chain of curve edges.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SkeletonEdge {
    pub u: usize,
    pub v: usize,
    /// Sum of the length functionals of its curve edges.
    pub kappa: LinearForm,
    /// Indices into the curve's bounded edges.
    pub curve_edges: Vec<usize>,
}

/// Metric multigraph left after removing rays and leaves and smoothing
/// degree-2 nodes. Loops and parallel edges are allowed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Skeleton {
    pub nodes: usize,
    pub edges: Vec<SkeletonEdge>,
    pub genus: usize,
}

impl Skeleton {
    pub fn degrees(&self) -> Vec<usize> {
        let mut deg = vec![0; self.nodes];
        for e in &self.edges {
            deg[e.u] += 1;
            deg[e.v] += 1;
        }
        deg
    }

    /// First Betti number, computed from components by union-find.
    pub fn betti_number(&self) -> usize {
        let mut parent: Vec<usize> = (0..self.nodes).collect();
        fn find(p: &mut [usize], x: usize) -> usize {
            let mut r = x;
            while p[r] != r {
                r = p[r];
            }
            p[x] = r;
            r
        }
        let mut components = self.nodes;
        for e in &self.edges {
            let (a, b) = (find(&mut parent, e.u), find(&mut parent, e.v));
            if a != b {
                parent[a] = b;
                components -= 1;
            }
        }
        self.edges.len() + components - self.nodes
    }

    pub fn is_trivalent(&self) -> bool {
        self.degrees().iter().all(|&d| d == 3)
    }

    pub fn lengths(&self, heights: &[Rational]) -> Vec<Rational> {
        self.edges.iter().map(|e| evaluate(&e.kappa, heights)).collect()
    }
}

pub fn skeletonize(c: &TropicalCurveModel) -> Result<Skeleton> {
    if c.genus <= 1 {
        return Err(Error::Precondition(format!("skeletons need genus at least 2, got {}", c.genus)));
    }
    let mut live: BTreeMap<usize, SkeletonEdge> = c
        .edges
        .iter()
        .enumerate()
        .map(|(i, e)| (i, SkeletonEdge { u: e.ends[0], v: e.ends[1], kappa: e.length.clone(), curve_edges: vec![i] }))
        .collect();
    let n = c.vertices.len();
    let incident = |live: &BTreeMap<usize, SkeletonEdge>, v: usize| -> Vec<usize> {
        let mut out = Vec::new();
        for (&k, e) in live {
            if e.u == v {
                out.push(k);
            }
            if e.v == v {
                out.push(k);
            }
        }
        out
    };
    // Rays are never part of the bounded graph, so pruning starts at leaves.
    loop {
        let leaf = (0..n).find_map(|v| match incident(&live, v).as_slice() {
            [k] => Some(*k),
            _ => None,
        });
        match leaf {
            Some(k) => {
                live.remove(&k);
            }
            None => break,
        }
    }
    let mut next_id = c.edges.len();
    loop {
        let smooth = (0..n).find_map(|v| match incident(&live, v).as_slice() {
            [a, b] if a != b => Some((v, *a, *b)),
            _ => None,
        });
        let Some((v, a, b)) = smooth else { break };
        let ea = live.remove(&a).unwrap();
        let eb = live.remove(&b).unwrap();
        let far = |e: &SkeletonEdge| if e.u == v { e.v } else { e.u };
        let mut curve_edges = ea.curve_edges.clone();
        curve_edges.extend(&eb.curve_edges);
        curve_edges.sort_unstable();
        live.insert(
            next_id,
            SkeletonEdge { u: far(&ea), v: far(&eb), kappa: add_forms(&ea.kappa, &eb.kappa), curve_edges },
        );
        next_id += 1;
    }
    let mut used: Vec<usize> = live.values().flat_map(|e| [e.u, e.v]).collect();
    used.sort_unstable();
    used.dedup();
    let renumber = |v: usize| used.binary_search(&v).unwrap();
    let mut edges: Vec<SkeletonEdge> = live
        .into_values()
        .map(|e| {
            let (u, v) = (renumber(e.u), renumber(e.v));
            SkeletonEdge { u: u.min(v), v: u.max(v), ..e }
        })
        .collect();
    edges.sort_by(|a, b| (a.u, a.v, &a.curve_edges).cmp(&(b.u, b.v, &b.curve_edges)));
    Ok(Skeleton { nodes: used.len(), edges, genus: c.genus })
}

pub fn skeleton_of(t: &Triangulation) -> Result<Skeleton> {
    skeletonize(&dual_curve(t)?)
}

/// Dimension of the set of realizable skeleton edge-length vectors: the rank
/// of the skeleton length functionals. The secondary cone of a regular
/// triangulation is open, so the image of the cone spans the row space.
pub fn moduli_dim_oracle(t: &Triangulation) -> Result<usize> {
    let s = skeleton_of(t)?;
    let rows: Vec<LinearForm> = s.edges.iter().map(|e| e.kappa.clone()).collect();
    Ok(rank_int(&rows))
}

/// Skeleton edge lengths at heights strictly inside the secondary cone.
pub fn sample_metric_graph(t: &Triangulation, heights: &HeightFunction) -> Result<Vec<Rational>> {
    if heights.points.as_slice() != t.points() {
        return Err(Error::Precondition("height function is over a different point set".into()));
    }
    if !t.secondary_cone().contains_strictly(&heights.heights) {
        return Err(Error::Precondition("heights are not strictly inside the secondary cone".into()));
    }
    Ok(skeleton_of(t)?.lengths(&heights.heights))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::LatticePolygon;
    use crate::scalar::{int, rational};
    use crate::triangulation::{enumerate_unimodular_triangulations, EnumerationOptions};

    fn triangulations(c: &[(i64, i64)]) -> Vec<Triangulation> {
        let p = LatticePolygon::from_coords(c).unwrap();
        enumerate_unimodular_triangulations(&p, &EnumerationOptions::default()).unwrap()
    }

    #[test]
    fn single_triangle_curve() {
        let t = &triangulations(&[(0, 0), (1, 0), (0, 1)])[0];
        let c = dual_curve(t).unwrap();
        assert_eq!((c.vertices.len(), c.edges.len(), c.rays.len()), (1, 0, 3));
        assert_eq!(c.vertex_position(0, &[int(0), int(0), int(0)]), Point::new(int(0), int(0)));
        assert!(skeletonize(&c).is_err());
        // Rays point along inner normals of the dual edges.
        let dirs: Vec<LatticePoint> = c.rays.iter().map(|r| r.direction).collect();
        assert!(dirs.contains(&Point::new(0, 1)) && dirs.contains(&Point::new(1, 0)) && dirs.contains(&Point::new(-1, -1)));
    }

    #[test]
    fn unit_square_edge_length() {
        // Points are sorted: (0,0),(0,1),(1,0),(1,1).
        let p = LatticePolygon::from_coords(&[(0, 0), (1, 0), (1, 1), (0, 1)]).unwrap();
        let t = Triangulation::new(p.lattice_points(), vec![[0, 1, 2], [1, 2, 3]]).unwrap();
        let h = [int(0), int(0), int(0), int(1)];
        assert!(t.is_induced_by(&HeightFunction::new(p.lattice_points(), h.to_vec())));
        let c = dual_curve(&t).unwrap();
        assert_eq!(c.edge_lengths(&h), vec![int(1)]);
        let a = c.vertex_position(0, &h);
        let b = c.vertex_position(1, &h);
        assert_eq!(a, Point::new(int(0), int(0)));
        assert_eq!(b, Point::new(int(-1), int(-1)));
    }

    #[test]
    fn lengths_are_fold_functionals() {
        for t in triangulations(&[(0, 0), (3, 0), (0, 3)]) {
            let c = dual_curve(&t).unwrap();
            let cone = t.secondary_cone();
            for (e, f) in c.edges.iter().zip(&cone.inequalities) {
                assert_eq!(e.dual, f.edge);
                assert_eq!(e.length, f.coefficients);
                let dual = t.points()[e.dual.1] - t.points()[e.dual.0];
                assert_eq!(e.direction.dot(&dual), 0);
            }
            assert!(c.edge_lengths(&c.witness.heights).iter().all(Signed::is_positive));
        }
    }

    #[test]
    fn skeleton_invariants_genus_three() {
        let ts = triangulations(&[(0, 0), (4, 0), (0, 4)]);
        let mut saw_k4 = false;
        for t in ts.iter().step_by(37) {
            let s = skeleton_of(t).unwrap();
            assert_eq!(s.betti_number(), 3);
            assert!(s.degrees().iter().all(|&d| d >= 3));
            assert!(s.edges.len() <= 6);
            if s.is_trivalent() {
                assert_eq!(s.edges.len(), 6);
            }
            let simple = s.edges.iter().all(|e| e.u != e.v)
                && s.edges.windows(2).all(|w| (w[0].u, w[0].v) != (w[1].u, w[1].v));
            let r = moduli_dim_oracle(t).unwrap();
            if s.nodes == 4 && s.edges.len() == 6 && simple && r == 6 {
                saw_k4 = true;
            }
            assert!(r <= 6 && r <= s.edges.len());
        }
        assert!(saw_k4);
    }

    #[test]
    fn sampling_is_linear() {
        let p = LatticePolygon::from_coords(&[(0, 0), (4, 0), (0, 4)]).unwrap();
        let t = &crate::triangulation::refine_to_unimodular(&p, &[]).unwrap();
        let w = t.regularity_witness().unwrap();
        let a = sample_metric_graph(t, &w).unwrap();
        let c = rational(7, 3);
        let b = sample_metric_graph(t, &w.scaled(&c)).unwrap();
        assert!(a.iter().all(Signed::is_positive));
        assert_eq!(a.iter().map(|x| x.clone() * c.clone()).collect::<Vec<_>>(), b);
        let zero = HeightFunction::new(t.points().to_vec(), vec![int(0); t.points().len()]);
        assert!(sample_metric_graph(t, &zero).is_err());
    }

    #[test]
    fn non_regular_is_rejected() {
        let p = |x, y| Point::new(x, y);
        let pts = vec![p(0, 0), p(12, 0), p(0, 12), p(3, 3), p(6, 3), p(3, 6)];
        let mut tris = vec![[3, 4, 5]];
        for k in 0..3 {
            tris.extend([[k, (k + 1) % 3, 3 + (k + 1) % 3], [k, 3 + (k + 1) % 3, 3 + k]]);
        }
        let t = Triangulation::new(pts, tris).unwrap();
        assert!(matches!(dual_curve(&t), Err(Error::Precondition(_)) | Err(Error::NotRegular)));
    }
}
