use std::collections::{BTreeSet, VecDeque};

use proptest::prelude::*;

use tropmoduli::geometry::orient;
use tropmoduli::moduli::{dim_formula, dim_polygon};
use tropmoduli::triangulation::{enumerate_unimodular_triangulations, EnumerationOptions};
use tropmoduli::tropical::{moduli_dim_oracle, skeleton_of};
use tropmoduli::{LatticePolygon, Triangulation};

fn arb_polygon(size: i64) -> impl Strategy<Value = LatticePolygon> {
    prop::collection::vec((0..=size, 0..=size), 3..7)
        .prop_filter_map("degenerate", |c| LatticePolygon::from_coords(&c).ok())
        .prop_filter("too large", |p| p.lattice_points().len() <= 10)
}

/// Triangulations reached by flipping each diagonal of a convex quadrilateral.
fn flips(t: &Triangulation) -> Vec<Triangulation> {
    let pts = t.points();
    let tris = t.triangles();
    let mut out = Vec::new();
    for e in t.edges().interior {
        let other = |k: usize| tris[k].iter().copied().find(|&v| v != e.a && v != e.b).unwrap();
        let (c, d) = (other(e.triangles[0]), other(e.triangles[1]));
        let sa = orient(&pts[c], &pts[d], &pts[e.a]);
        let sb = orient(&pts[c], &pts[d], &pts[e.b]);
        if sa * sb >= 0 {
            continue;
        }
        let mut next: Vec<[usize; 3]> =
            tris.iter().enumerate().filter(|(k, _)| !e.triangles.contains(k)).map(|(_, t)| *t).collect();
        next.push([e.a, c, d]);
        next.push([e.b, c, d]);
        out.push(Triangulation::new(pts.to_vec(), next).unwrap());
    }
    out
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn enumeration_is_the_flip_component(p in arb_polygon(4)) {
        let all: BTreeSet<Triangulation> =
            enumerate_unimodular_triangulations(&p, &EnumerationOptions::default()).unwrap().into_iter().collect();
        prop_assert!(!all.is_empty());
        for t in &all {
            prop_assert!(t.is_unimodular());
            for f in flips(t) {
                prop_assert!(all.contains(&f));
            }
        }
        let start = all.iter().next().unwrap().clone();
        let mut seen = BTreeSet::from([start.clone()]);
        let mut queue = VecDeque::from([start]);
        while let Some(t) = queue.pop_front() {
            for f in flips(&t) {
                if seen.insert(f.clone()) {
                    queue.push_back(f);
                }
            }
        }
        prop_assert_eq!(seen, all);
    }

    #[test]
    fn euler_and_skeleton(p in arb_polygon(4)) {
        let ts = enumerate_unimodular_triangulations(&p, &EnumerationOptions::default()).unwrap();
        let (i, b) = (p.genus(), p.boundary_point_count());
        for t in &ts {
            prop_assert_eq!(t.triangles().len(), 2 * i + b - 2);
            let e = t.edges();
            prop_assert_eq!(e.boundary.len(), b);
            prop_assert_eq!(e.interior.len(), 3 * i + b - 3);
            if i >= 2 && t.is_regular() {
                let s = skeleton_of(t).unwrap();
                prop_assert_eq!(s.betti_number(), i);
                prop_assert!(moduli_dim_oracle(t).unwrap() <= 3 * i - 3);
            }
        }
    }

    #[test]
    fn polygon_dimension_bounds_triangulations(p in arb_polygon(4)) {
        prop_assume!(p.genus() >= 2 && matches!(p.is_hyperelliptic(), Ok(false)));
        let d = dim_polygon(&p).unwrap().dimension;
        let ts = enumerate_unimodular_triangulations(&p, &EnumerationOptions::default()).unwrap();
        let best = ts.iter().filter(|t| t.is_regular()).map(|t| dim_formula(t).unwrap()).max().unwrap();
        prop_assert_eq!(d, best);
    }
}
