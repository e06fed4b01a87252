use super::*;
use crate::geometry::Point;
use crate::triangulation::{enumerate_unimodular_triangulations, refine_to_unimodular};
use crate::tropical::moduli_dim_oracle;

fn poly(c: &[(i64, i64)]) -> LatticePolygon {
    LatticePolygon::from_coords(c).unwrap()
}

fn dim(c: &[(i64, i64)]) -> ModuliReport {
    dim_polygon(&poly(c)).unwrap()
}

#[test]
fn formula_arithmetic() {
    let p = poly(&[(0, 0), (4, 0), (0, 4)]);
    let ts = enumerate_unimodular_triangulations(&p, &EnumerationOptions::default()).unwrap();
    let mut seen = std::collections::BTreeSet::new();
    for t in &ts {
        let c = classify_types(t).unwrap();
        assert_eq!(c.b1 + c.b2 + c.b3, 3);
        let d = dim_formula(t).unwrap();
        assert_eq!(d, c.b2 + 2 * c.b3);
        seen.insert((c.b2, c.b3, d));
    }
    assert!(seen.contains(&(0, 3, 6)));
    assert!(seen.contains(&(1, 2, 5)));
}

#[test]
fn three_boundary_point_triangle() {
    let r = dim(&[(1, 0), (0, 3), (3, 1)]);
    assert_eq!((r.genus, r.dimension), (3, 3));
    assert!(r.exhaustive);
    let w = r.witness.unwrap();
    let c = classify_types(&w).unwrap();
    assert_eq!((c.b2, c.b3), (3, 0));
}

#[test]
fn rectangle_and_q() {
    let r = dim(&[(0, 0), (0, 3), (3, 0), (3, 3)]);
    assert_eq!(r.dimension, 9);
    let q = dim(&[(1, 0), (0, 3), (3, 1), (3, 2)]);
    assert_eq!(q.dimension, 5);
    for rep in [r, q] {
        let w = rep.witness.unwrap();
        assert!(w.is_regular());
        assert_eq!(moduli_dim_oracle(&w).unwrap(), rep.dimension);
    }
}

#[test]
fn auto_strategy_cross_checks() {
    let opts = DimOptions { strategy: Strategy::Auto, ..Default::default() };
    let r = dim_polygon_with(&poly(&[(0, 0), (4, 0), (0, 4)]), &opts).unwrap();
    assert_eq!((r.dimension, r.oracle), (6, Some(6)));
    let opts = DimOptions { strategy: Strategy::Oracle, ..Default::default() };
    let r = dim_polygon_with(&poly(&[(1, 0), (0, 3), (3, 1)]), &opts).unwrap();
    assert_eq!(r.dimension, 3);
}

#[test]
fn radial_edges_of_a_fan() {
    // One interior point: every edge at (1,1) is radial, but the polygon is
    // genus 1 so use a genus-3 triangle with a starred interior.
    let p = poly(&[(0, 0), (4, 0), (0, 4)]);
    let t = refine_to_unimodular(&p, &[]).unwrap();
    let radial = radial_edges(&t).unwrap();
    let interior = p.interior_points();
    assert!(radial.iter().all(|(v, w)| interior.contains(v) && !interior.contains(w)));
    assert!(radial_edges(&refine_to_unimodular(&poly(&[(0, 0), (3, 0), (3, 2), (0, 2)]), &[]).unwrap()).is_err());
}

#[test]
fn hyperelliptic_formula_and_polygon() {
    let p = poly(&[(0, 0), (3, 0), (3, 2), (0, 2)]);
    let r = dim_polygon(&p).unwrap();
    assert_eq!(r.dimension, 3);
    let w = r.witness.unwrap();
    assert_eq!(dim_formula_hyperelliptic(&w).unwrap(), 3);
    assert_eq!(moduli_dim_oracle(&w).unwrap(), 3);
    assert!(dim_formula(&w).is_err());
}

#[test]
fn koelman_example_and_round_trip() {
    let p = poly(&[(0, 0), (2, 0), (4, 1), (2, 2), (1, 2)]);
    let (f, map) = koelman_classify(&p).unwrap();
    assert_eq!(f, HyperellipticForm::new(KoelmanClass::TwoA, 2, Some(1), None));
    assert_eq!(p.apply(&map), f.template(3).unwrap());
    assert_eq!(dim_hyperelliptic_closed_form(&f, 3).unwrap(), 5);
    for g in 2..=4 {
        let forms = HyperellipticForm::all(g);
        let mut nfs = std::collections::BTreeSet::new();
        for f in &forms {
            let t = f.template(g).unwrap();
            assert_eq!(t.genus() as i64, g);
            assert!(t.is_hyperelliptic().unwrap());
            assert!(nfs.insert(t.normal_form()), "{f} duplicates another form");
            let moved = t.apply(&UnimodularMapFixture::shear());
            assert_eq!(koelman_classify(&moved).unwrap().0, *f);
        }
    }
    assert!(HyperellipticForm::new(KoelmanClass::TwoA, 1, Some(2), None).template(3).is_err());
}

struct UnimodularMapFixture;

impl UnimodularMapFixture {
    fn shear() -> crate::lattice::UnimodularMap {
        crate::lattice::UnimodularMap::new([[2, 1], [1, 1]], Point::new(5, -3)).unwrap()
    }
}

#[test]
fn closed_form_values() {
    let f = |c, i, j, k| HyperellipticForm::new(c, i, j, k);
    assert_eq!(dim_hyperelliptic_closed_form(&f(KoelmanClass::TwoA, 0, Some(0), None), 5).unwrap(), 5);
    assert_eq!(dim_hyperelliptic_closed_form(&f(KoelmanClass::One, 4, None, None), 3).unwrap(), 5);
    assert!(dim_hyperelliptic_closed_form(&f(KoelmanClass::One, 1, None, None), 3).is_err());
}

#[test]
fn trapezoids() {
    assert!(maximal_trapezoid_dim(0, 5).is_err());
    let r = relaxed_trapezoid(2, 3).unwrap();
    assert_eq!(r, poly(&[(-1, -1), (-1, 2), (5, -1), (2, 2)]));
    assert_eq!(r.genus(), 7);
    assert_eq!(maximal_trapezoid_dim(2, 3).unwrap(), 15);
    // The 3x3 square is the relaxed unit square and reaches 2g + 1.
    assert_eq!(maximal_trapezoid_dim(1, 1).unwrap(), 9);
    assert_eq!(maximal_trapezoid_dim(0, 1).unwrap(), 6);
    let s20 = achievable_dims_maximal_g1zero(20).unwrap();
    assert_eq!(s20.into_iter().collect::<Vec<_>>(), vec![36, 38, 40, 41]);
    let s21 = achievable_dims_maximal_g1zero(21).unwrap();
    assert!(!s21.contains(&42) && s21.contains(&43));
    assert!(achievable_dims_maximal_g1zero(6).is_err());
}
