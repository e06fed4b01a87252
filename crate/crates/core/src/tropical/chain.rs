//! Chain skeletons of hyperelliptic triangulations: edge labels, end forms and
//! the linear constraints among the labelled lengths.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::lattice::LatticePoint;
use crate::linalg::rank_int;
use crate::lp::{LinearProgram, LpOutcome};
use crate::scalar::Field;
use crate::triangulation::Triangulation;
use crate::Rational;

use super::{skeleton_of, Skeleton};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ChainLabel {
    E,
    F,
    U(usize),
    L(usize),
    /// Shared edge between cycles `i` and `i + 1`.
    H(usize),
    /// Bridge between cycles `i` and `i + 1`.
    B(usize),
}

impl fmt::Display for ChainLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ChainLabel::E => write!(f, "e"),
            ChainLabel::F => write!(f, "f"),
            ChainLabel::U(i) => write!(f, "u_{i}"),
            ChainLabel::L(i) => write!(f, "l_{i}"),
            ChainLabel::H(i) => write!(f, "h_{},{}", i, i + 1),
            ChainLabel::B(i) => write!(f, "b_{},{}", i, i + 1),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EndForm {
    A(usize),
    B { k: i64, m: usize },
}

impl fmt::Display for EndForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EndForm::A(m) => write!(f, "A({m})"),
            EndForm::B { k, m } => write!(f, "B_{k}({m})"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Relation {
    Eq,
    Le,
}

/// `sum coefficients[i] * label[i]  (= or <=)  0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearConstraint {
    pub coefficients: Vec<i64>,
    pub relation: Relation,
}

/// Linear constraints on the labelled chain edge lengths. All labels are
/// also required to be positive.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConstraintSystem {
    pub genus: usize,
    pub labels: Vec<ChainLabel>,
    pub constraints: Vec<LinearConstraint>,
    pub left: EndForm,
    pub right: EndForm,
}

impl ConstraintSystem {
    pub fn position(&self, l: ChainLabel) -> Option<usize> {
        self.labels.iter().position(|&m| m == l)
    }

    /// Checks the constraints and positivity for lengths listed in label order.
    pub fn is_satisfied(&self, values: &[Rational]) -> bool {
        values.len() == self.labels.len()
            && values.iter().all(Signed::is_positive)
            && self.constraints.iter().all(|c| {
                let v = c
                    .coefficients
                    .iter()
                    .zip(values)
                    .fold(Rational::zero(), |acc, (a, x)| acc + Rational::from_i64(*a) * x.clone());
                match c.relation {
                    Relation::Eq => v.is_zero(),
                    Relation::Le => !v.is_positive(),
                }
            })
    }

    /// Dimension of the cone of nonnegative solutions: the label count minus
    /// the rank of all explicit and implied equalities.
    pub fn dimension(&self) -> usize {
        let n = self.labels.len();
        let mut candidates: Vec<Vec<i64>> = Vec::new();
        let mut equalities: Vec<Vec<i64>> = Vec::new();
        for c in &self.constraints {
            match c.relation {
                Relation::Eq => equalities.push(c.coefficients.clone()),
                Relation::Le => candidates.push(c.coefficients.clone()),
            }
        }
        for i in 0..n {
            let mut row = vec![0; n];
            row[i] = -1;
            candidates.push(row);
        }
        let q = |v: i64| Rational::from_i64(v);
        let base = {
            let mut lp = LinearProgram::new(vec![Rational::zero(); n]);
            for row in candidates.iter().chain(&equalities) {
                lp.add_le(row.iter().map(|&v| q(v)).collect(), q(0));
            }
            for row in &equalities {
                lp.add_le(row.iter().map(|&v| q(-v)).collect(), q(0));
            }
            for i in 0..n {
                let mut row = vec![q(0); n];
                row[i] = q(1);
                lp.add_le(row, q(1));
            }
            lp
        };
        for row in &candidates {
            let mut lp = base.clone();
            lp.objective = row.iter().map(|&v| q(-v)).collect();
            let tight = match lp.solve() {
                LpOutcome::Optimal { value, .. } => !value.is_positive(),
                LpOutcome::Unbounded => false,
            };
            if tight {
                equalities.push(row.clone());
            }
        }
        n - rank_int(&equalities)
    }

    pub fn render(&self) -> Vec<String> {
        self.constraints
            .iter()
            .map(|c| {
                let mut lhs = String::new();
                for (a, l) in c.coefficients.iter().zip(&self.labels).filter(|(a, _)| **a != 0) {
                    let sign = if *a < 0 { "-" } else { "+" };
                    if lhs.is_empty() {
                        lhs.push_str(if *a < 0 { "-" } else { "" });
                    } else {
                        lhs.push_str(&format!(" {sign} "));
                    }
                    if a.abs() != 1 {
                        lhs.push_str(&format!("{} ", a.abs()));
                    }
                    lhs.push_str(&l.to_string());
                }
                let rel = if c.relation == Relation::Eq { "=" } else { "<=" };
                format!("{lhs} {rel} 0")
            })
            .collect()
    }
}

/// Removes triangles cut off by boundary-to-boundary edges until none remain.
pub fn pare(t: &Triangulation) -> Triangulation {
    let mut cur = t.clone();
    loop {
        let parts = cur.edges();
        let mut hull_edges = vec![0usize; cur.triangles().len()];
        for e in &parts.boundary {
            hull_edges[e.triangle] += 1;
        }
        let Some(ear) = (0..hull_edges.len()).find(|&i| hull_edges[i] == 2) else { return cur };
        cur = cur.restrict(|tri| *tri != cur.triangles()[ear]);
    }
}

/// A pared triangulation with interior points at `(1,1), ..., (g,1)`.
struct Frame {
    t: Triangulation,
    genus: usize,
    neighbours: Vec<Vec<LatticePoint>>,
}

fn frame(t: &Triangulation) -> Result<Frame> {
    let poly = t.polygon();
    if poly.genus() == 0 || !poly.is_hyperelliptic()? {
        return Err(Error::Precondition("chain constraints need a hyperelliptic polygon".into()));
    }
    let genus = poly.genus();
    if genus < 2 {
        return Err(Error::Precondition("chain constraints need genus at least 2".into()));
    }
    if !t.is_unimodular() {
        return Err(Error::Precondition("triangulation is not unimodular".into()));
    }
    let pared = pare(t);
    let map = pared.polygon().hyperelliptic_frame()?;
    let t = pared.apply(&map);
    let adj = t.adjacency();
    let neighbours = (1..=genus as i64)
        .map(|i| {
            let v = t.index_of(&LatticePoint::new(i, 1)).expect("interior point present");
            adj[v].iter().map(|&w| t.points()[w]).collect()
        })
        .collect();
    Ok(Frame { t, genus, neighbours })
}

impl Frame {
    fn nbrs(&self, i: usize) -> &[LatticePoint] {
        &self.neighbours[i - 1]
    }

    fn is_shared(&self, i: usize) -> bool {
        self.nbrs(i).contains(&LatticePoint::new(i as i64 + 1, 1))
    }

    fn boundary_neighbours(&self, i: usize) -> usize {
        self.nbrs(i).iter().filter(|p| p.y != 1 || p.x < 1 || p.x > self.genus as i64).count()
    }

    fn extent(&self, i: usize, y: i64) -> (i64, i64) {
        let xs = self.nbrs(i).iter().filter(|p| p.y == y).map(|p| p.x);
        xs.fold((i64::MAX, i64::MIN), |(lo, hi), x| (lo.min(x), hi.max(x)))
    }

    fn end_form(&self, side: Side) -> Result<EndForm> {
        let g1 = self.genus as i64 + 1;
        // Reflect the right end onto the left.
        let flip = |x: i64| match side {
            Side::Left => x,
            Side::Right => g1 - x,
        };
        let pts = self.t.points();
        let at = |y: i64| pts.iter().filter(|p| p.y == y).map(|p| flip(p.x)).min().expect("polygon meets every height");
        let (bottom, top) = (at(0), at(2));
        let end = match side {
            Side::Left => 1,
            Side::Right => self.genus,
        };
        let m = self.boundary_neighbours(end);
        let has_mid = pts.iter().any(|p| p.y == 1 && flip(p.x) == 0);
        // Shearing about y = 1 moves the bottom corner to x = 0 and the top
        // corner to x = top + bottom.
        let k = top + bottom;
        if has_mid {
            Ok(EndForm::B { k, m })
        } else if k == 1 {
            Ok(EndForm::A(m))
        } else {
            Err(Error::Precondition(format!("unrecognized end shape with corner offset {k}")))
        }
    }
}

pub fn end_form(t: &Triangulation, side: Side) -> Result<EndForm> {
    frame(t)?.end_form(side)
}

fn label_order(f: &Frame) -> Vec<ChainLabel> {
    let g = f.genus;
    let mut labels = vec![ChainLabel::E];
    for i in 2..g {
        labels.push(ChainLabel::U(i));
        labels.push(ChainLabel::L(i));
    }
    labels.push(ChainLabel::F);
    for i in 1..g {
        labels.push(if f.is_shared(i) { ChainLabel::H(i) } else { ChainLabel::B(i) });
    }
    labels
}

fn end_constraints(form: EndForm, loop_label: usize, h: Option<usize>, n: usize, out: &mut Vec<LinearConstraint>) {
    // A loop at a bridge is unconstrained.
    let Some(h) = h else { return };
    let row = |pairs: &[(usize, i64)]| {
        let mut c = vec![0; n];
        for &(i, v) in pairs {
            c[i] += v;
        }
        c
    };
    let (e, eq, le) = (loop_label, Relation::Eq, Relation::Le);
    let mut push = |pairs: &[(usize, i64)], relation| out.push(LinearConstraint { coefficients: row(pairs), relation });
    match form {
        EndForm::A(2) => push(&[(e, 1), (h, -2)], eq),
        EndForm::B { k: 0, m: 3 } => push(&[(e, 1), (h, -1)], eq),
        EndForm::B { k: 0, m: 4 } | EndForm::B { k: 1, m: 3 } => {
            push(&[(h, 1), (e, -1)], le);
            push(&[(e, 1), (h, -2)], le);
        }
        _ => push(&[(h, 1), (e, -1)], le),
    }
}

pub fn hyperelliptic_length_constraints(t: &Triangulation) -> Result<ConstraintSystem> {
    let f = frame(t)?;
    let g = f.genus;
    let labels = label_order(&f);
    let n = labels.len();
    let idx = |l: ChainLabel| labels.iter().position(|&m| m == l).expect("label present");
    let h = |i: usize| (f.is_shared(i)).then(|| idx(ChainLabel::H(i)));
    let mut constraints = Vec::new();
    for i in 2..g {
        let (u, l) = (idx(ChainLabel::U(i)), idx(ChainLabel::L(i)));
        let mut c = vec![0; n];
        c[u] = 1;
        c[l] = -1;
        constraints.push(LinearConstraint { coefficients: c, relation: Relation::Eq });
        let (nw, ne) = f.extent(i, 2);
        let (sw, se) = f.extent(i, 0);
        let two_i = 2 * i as i64;
        let (lo, hi) = (two_i - ne - se, two_i - nw - sw);
        // diff = h_{i,i+1} - h_{i-1,i}
        let mut diff = vec![0; n];
        if let Some(k) = h(i - 1) {
            diff[k] -= 1;
        }
        if let Some(k) = h(i) {
            diff[k] += 1;
        }
        let with_u = |sign: i64, coeff: i64| {
            let mut c: Vec<i64> = diff.iter().map(|d| sign * d).collect();
            c[u] += coeff;
            c
        };
        if lo == hi {
            constraints.push(LinearConstraint { coefficients: with_u(1, -lo), relation: Relation::Eq });
        } else {
            constraints.push(LinearConstraint { coefficients: with_u(-1, lo), relation: Relation::Le });
            constraints.push(LinearConstraint { coefficients: with_u(1, -hi), relation: Relation::Le });
        }
    }
    let left = f.end_form(Side::Left)?;
    let right = f.end_form(Side::Right)?;
    end_constraints(left, idx(ChainLabel::E), h(1), n, &mut constraints);
    end_constraints(right, idx(ChainLabel::F), h(g - 1), n, &mut constraints);
    Ok(ConstraintSystem { genus: g, labels, constraints, left, right })
}

enum Piece {
    Shared(usize),
    Bridge(usize),
    Upper(usize),
    Lower(usize),
    Side(usize),
}

/// Skeleton of the pared, framed triangulation with a chain label per edge.
pub fn labelled_skeleton(t: &Triangulation) -> Result<(Triangulation, Skeleton, Vec<ChainLabel>)> {
    let f = frame(t)?;
    let g = f.genus;
    let s = skeleton_of(&f.t)?;
    let curve = super::dual_curve(&f.t)?;
    let interior = |p: &LatticePoint| p.y == 1 && (1..=g as i64).contains(&p.x);
    let piece = |e: usize| {
        let (a, b) = curve.edges[e].dual;
        let (p, q) = (curve.points[a], curve.points[b]);
        match (interior(&p), interior(&q)) {
            (true, true) => Piece::Shared(p.x.min(q.x) as usize),
            (false, false) => Piece::Bridge(((p.x + q.x - 1).div_euclid(2)) as usize),
            (ip, _) => {
                let (i, o) = if ip { (p, q) } else { (q, p) };
                match o.y {
                    2 => Piece::Upper(i.x as usize),
                    0 => Piece::Lower(i.x as usize),
                    _ => Piece::Side(i.x as usize),
                }
            }
        }
    };
    let label_of = |i: usize, inner: fn(usize) -> ChainLabel| match i {
        1 => ChainLabel::E,
        i if i == g => ChainLabel::F,
        i => inner(i),
    };
    let mut labels = Vec::new();
    for e in &s.edges {
        let mut found: Vec<ChainLabel> = e
            .curve_edges
            .iter()
            .map(|&c| match piece(c) {
                Piece::Shared(i) => ChainLabel::H(i),
                Piece::Bridge(i) => ChainLabel::B(i),
                Piece::Upper(i) => label_of(i, ChainLabel::U),
                Piece::Lower(i) => label_of(i, ChainLabel::L),
                Piece::Side(i) => label_of(i, |_| ChainLabel::E),
            })
            .collect();
        found.sort();
        found.dedup();
        match found.as_slice() {
            [l] => labels.push(*l),
            _ => return Err(Error::Precondition(format!("skeleton edge mixes chain labels {found:?}"))),
        }
    }
    let mut seen = BTreeMap::new();
    for l in &labels {
        *seen.entry(*l).or_insert(0) += 1;
    }
    if seen.values().any(|&c| c > 1) || seen.len() != label_order(&f).len() {
        return Err(Error::Precondition(format!("skeleton is not a labelled chain: {labels:?}")));
    }
    Ok((f.t, s, labels))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::LatticePolygon;
    use crate::triangulation::{enumerate_unimodular_triangulations, EnumerationOptions};
    use crate::tropical::moduli_dim_oracle;

    fn triangulations(c: &[(i64, i64)]) -> Vec<Triangulation> {
        let p = LatticePolygon::from_coords(c).unwrap();
        enumerate_unimodular_triangulations(&p, &EnumerationOptions::default()).unwrap()
    }

    #[test]
    fn paring_keeps_genus_and_skeleton() {
        for t in triangulations(&[(0, 0), (6, 0), (0, 2)]).iter().step_by(7) {
            let pared = pare(t);
            assert_eq!(pared.polygon().genus(), 2);
            assert!(pared.triangles().len() <= t.triangles().len());
            assert_eq!(moduli_dim_oracle(&pared).unwrap(), moduli_dim_oracle(t).unwrap());
        }
    }

    #[test]
    fn genus_two_constraints_only_touch_ends() {
        for t in triangulations(&[(0, 0), (3, 0), (3, 2), (0, 2)]).iter().step_by(5) {
            let sys = hyperelliptic_length_constraints(t).unwrap();
            assert_eq!(sys.labels.len(), 3);
            assert!(sys.labels.iter().all(|l| matches!(l, ChainLabel::E | ChainLabel::F | ChainLabel::H(1) | ChainLabel::B(1))));
        }
    }

    #[test]
    fn constraint_dimension_matches_oracle() {
        for c in [&[(0, 0), (3, 0), (3, 2), (0, 2)][..], &[(0, 0), (6, 0), (0, 2)][..], &[(0, 0), (4, 0), (3, 2), (1, 2)][..]] {
            for t in triangulations(c).iter().filter(|t| t.is_regular()).step_by(3) {
                let sys = hyperelliptic_length_constraints(t).unwrap();
                assert_eq!(sys.dimension(), moduli_dim_oracle(t).unwrap(), "{:?} {:?}", t, sys.render());
            }
        }
    }

    #[test]
    fn sampled_chains_satisfy_constraints() {
        for t in triangulations(&[(0, 0), (4, 0), (3, 2), (1, 2)]).iter().filter(|t| t.is_regular()).step_by(4) {
            let sys = hyperelliptic_length_constraints(t).unwrap();
            let (framed, skel, labels) = labelled_skeleton(t).unwrap();
            let w = framed.regularity_witness().unwrap();
            let lengths = skel.lengths(&w.heights);
            let mut values = vec![Rational::zero(); sys.labels.len()];
            for (l, v) in labels.iter().zip(lengths) {
                values[sys.position(*l).unwrap()] = v;
            }
            assert!(sys.is_satisfied(&values), "{:?} {:?}", sys.render(), values);
        }
    }

    #[test]
    fn end_forms_of_small_ends() {
        // Triangle-ish left end: (1,1) sees only (0,0) and (1,2) besides (2,1).
        let ts = triangulations(&[(0, 0), (3, 0), (2, 2), (1, 2)]);
        let forms: Vec<EndForm> = ts.iter().map(|t| end_form(t, Side::Left).unwrap()).collect();
        assert!(forms.iter().all(|f| matches!(f, EndForm::A(_))));
        assert!(forms.contains(&EndForm::A(2)));
        let ts = triangulations(&[(0, 0), (3, 0), (3, 2), (0, 2)]);
        let forms: Vec<EndForm> = ts.iter().map(|t| end_form(t, Side::Left).unwrap()).collect();
        assert!(forms.contains(&EndForm::B { k: 0, m: 3 }));
    }

    #[test]
    fn rendering() {
        let t = &triangulations(&[(0, 0), (3, 0), (2, 2), (1, 2)])[0];
        let sys = hyperelliptic_length_constraints(t).unwrap();
        assert!(sys.render().iter().all(|r| r.ends_with("<= 0") || r.ends_with("= 0")));
        assert_eq!(ChainLabel::H(2).to_string(), "h_2,3");
        assert_eq!(EndForm::B { k: 1, m: 3 }.to_string(), "B_1(3)");
    }
}
