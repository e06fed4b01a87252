//! Polygon families from the constructive proofs, and the verifier for the
//! range of non-hyperelliptic moduli dimensions.

use std::collections::{BTreeMap, BTreeSet};

use num_integer::Integer;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::lattice::{LatticePoint, LatticePolygon, RationalPolygon};
use crate::moduli::{dim_polygon_with, relaxed_trapezoid, trapezoid, trapezoid_is_interior, DimOptions, HyperellipticForm, KoelmanClass};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RangeBounds {
    pub g: i64,
    pub lower: i64,
    pub upper: i64,
}

/// `l(g) <= d <= u(g)` for non-hyperelliptic polygons of genus `g`.
pub fn bounds(g: i64) -> Result<RangeBounds> {
    if g < 3 {
        return Err(Error::Range(format!("non-hyperelliptic polygons need genus at least 3, got {g}")));
    }
    let lower = if g == 4 || g == 7 { g + 1 } else { g };
    let upper = match g {
        3 => 2 * g,
        7 => 2 * g + 2,
        _ => 2 * g + 1,
    };
    Ok(RangeBounds { g, lower, upper })
}

/// Genus-`g` triangle `conv((0,0),(0,1),(2g+1,b))`, which has exactly three
/// boundary points when both long edges are primitive.
fn thin_triangle(g: i64, b: i64) -> LatticePolygon {
    LatticePolygon::from_coords(&[(0, 0), (0, 1), (2 * g + 1, b)]).expect("nondegenerate triangle")
}

/// Every lattice triangle with three boundary points and genus `g` is
/// equivalent to `conv((0,0),(0,1),(2g+1,b))` with `0 <= b < 2g+1` and both
/// gcd conditions. Returns each admissible `b` with its triangle.
pub fn three_point_triangles(g: i64) -> Vec<(i64, LatticePolygon)> {
    let a = 2 * g + 1;
    (0..a).filter(|b| b.gcd(&a) == 1 && (b - 1).gcd(&a) == 1).map(|b| (b, thin_triangle(g, b))).collect()
}

/// A non-hyperelliptic triangle of genus `g` with three boundary points.
pub fn dim_g_triangle(g: i64) -> Result<LatticePolygon> {
    if g < 3 {
        return Err(Error::Range(format!("genus must be at least 3, got {g}")));
    }
    if g == 4 || g == 7 {
        return Err(Error::Range(format!("no non-hyperelliptic triangle with three boundary points exists for g = {g}")));
    }
    let k = g / 3;
    let p = match g % 3 {
        0 => LatticePolygon::from_coords(&[(1, 0), (0, 3), (2 * k + 1, 1)])?,
        2 => LatticePolygon::from_coords(&[(0, 0), (1, 3), (2 * k + 2, 1)])?,
        _ => (4..=(2 * g + 1) / 2)
            .filter(|b| b.gcd(&(2 * g + 1)) == 1 && (b - 1).gcd(&(2 * g + 1)) == 1)
            .map(|b| thin_triangle(g, b))
            .find(|t| matches!(t.is_hyperelliptic(), Ok(false)))
            .ok_or_else(|| Error::Range(format!("no admissible triangle found for g = {g}")))?,
    };
    debug_assert_eq!(p.genus() as i64, g);
    if p.genus() as i64 != g || p.boundary_point_count() != 3 || p.is_hyperelliptic()? {
        return Err(Error::Range(format!("generated triangle {p} fails validation for g = {g}")));
    }
    Ok(p)
}

/// Lattice-point removal chain from the rectangle or trapezoid of genus `g`
/// (dimension `2g+1`) down to the polygon `Q` (dimension `g+1`). Consecutive
/// polygons differ by one lattice point and share their interior hull.
pub fn interpolation_chain(g: i64) -> Result<Vec<LatticePolygon>> {
    if g < 3 {
        return Err(Error::Range(format!("genus must be at least 3, got {g}")));
    }
    let h = g / 2;
    let (start, end) = if g % 2 == 0 {
        (
            LatticePolygon::from_coords(&[(0, 0), (0, 3), (h + 1, 0), (h + 1, 3)])?,
            LatticePolygon::from_coords(&[(1, 0), (0, 3), (h + 1, 1), (h + 1, 2)])?,
        )
    } else {
        (
            LatticePolygon::from_coords(&[(0, 0), (0, 3), (h + 3, 0), (h, 3)])?,
            LatticePolygon::from_coords(&[(1, 0), (0, 3), (h + 2, 1), (h + 1, 2)])?,
        )
    };
    let interior = start.interior_hull();
    if end.interior_hull() != interior || !start.contains_polygon(&end) {
        return Err(Error::Range(format!("chain endpoints for g = {g} do not nest")));
    }
    let keep: BTreeSet<LatticePoint> = end.lattice_points().into_iter().collect();
    let mut chain = vec![start.clone()];
    let mut cur = start;
    while cur != end {
        let next = cur
            .vertices()
            .iter()
            .filter(|v| !keep.contains(v))
            .copied()
            .collect::<BTreeSet<_>>()
            .into_iter()
            .find_map(|v| {
                let rest: Vec<LatticePoint> = cur.lattice_points().into_iter().filter(|p| *p != v).collect();
                let p = LatticePolygon::new(&rest).ok()?;
                (p.interior_hull() == interior).then_some(p)
            })
            .ok_or_else(|| Error::Range(format!("chain for g = {g} is stuck at {cur}")))?;
        chain.push(next.clone());
        cur = next;
    }
    Ok(chain)
}

pub fn koelman_generate(class: KoelmanClass, i: i64, j: Option<i64>, k: Option<i64>, g: i64) -> Result<LatticePolygon> {
    let form = HyperellipticForm::new(class, i, j, k);
    let p = form.template(g)?;
    if p.genus() as i64 != g || !p.is_hyperelliptic()? {
        return Err(Error::NoTemplate(format!("{form} template fails validation")));
    }
    Ok(p)
}

#[derive(Clone, Debug)]
pub struct TrapezoidFamily {
    pub trapezoid: LatticePolygon,
    pub relaxation: RationalPolygon,
    /// Whether `T_{a,b}` is the interior polygon of its relaxation.
    pub is_interior: bool,
}

pub fn trapezoid_family(a: i64, b: i64) -> Result<TrapezoidFamily> {
    let t = trapezoid(a, b)?;
    let relaxation = t.relaxed();
    let is_interior = trapezoid_is_interior(a, b) && relaxed_trapezoid(a, b).is_ok();
    Ok(TrapezoidFamily { trapezoid: t, relaxation, is_interior })
}

#[derive(Clone, Debug)]
pub struct Witness {
    pub family: String,
    pub polygon: LatticePolygon,
    pub dimension: usize,
    pub exhaustive: bool,
}

#[derive(Clone, Debug)]
pub struct RangeReport {
    pub bounds: RangeBounds,
    pub achieved: BTreeSet<i64>,
    pub missing: BTreeSet<i64>,
    pub witnesses: BTreeMap<i64, Witness>,
    /// Every three-boundary-point triangle of genus `g` up to equivalence,
    /// with its hyperelliptic flag.
    pub three_point_triangles: Vec<(i64, bool)>,
    /// Values below `l(g)` shown to be impossible.
    pub unachievable: BTreeSet<i64>,
    pub notes: Vec<String>,
}

pub fn verify_range(g: i64, opts: &DimOptions) -> Result<RangeReport> {
    let b = bounds(g)?;
    let mut candidates: Vec<(String, LatticePolygon)> = Vec::new();
    if let Ok(t) = dim_g_triangle(g) {
        candidates.push(("three-point-triangle".into(), t));
    }
    for (k, p) in interpolation_chain(g)?.into_iter().enumerate() {
        candidates.push((format!("interpolation-chain[{k}]"), p));
    }
    let results: Vec<Result<Witness>> = candidates
        .into_par_iter()
        .map(|(family, polygon)| {
            let r = dim_polygon_with(&polygon, opts)?;
            Ok(Witness { family, polygon, dimension: r.dimension, exhaustive: r.exhaustive })
        })
        .collect();
    let mut witnesses: BTreeMap<i64, Witness> = BTreeMap::new();
    for w in results {
        let w = w?;
        witnesses.entry(w.dimension as i64).or_insert(w);
    }
    let achieved: BTreeSet<i64> = witnesses.keys().copied().collect();
    let missing: BTreeSet<i64> = (b.lower..=b.upper).filter(|d| !achieved.contains(d)).collect();
    let triangles: Vec<(i64, bool)> = three_point_triangles(g)
        .into_iter()
        .map(|(bb, t)| Ok((bb, t.is_hyperelliptic()?)))
        .collect::<Result<_>>()?;
    let mut unachievable = BTreeSet::new();
    let mut notes = Vec::new();
    if triangles.iter().all(|(_, hyp)| *hyp) {
        // Non-hyperelliptic polygons have dimension g exactly when they have
        // three boundary points, and every such triangle is hyperelliptic.
        unachievable.insert(g);
        notes.push(format!("d = {g} is unachievable: every genus-{g} triangle with three boundary points is hyperelliptic"));
    }
    if g == 7 && missing.contains(&16) {
        notes.push("d = 16 for g = 7 needs an external construction and is not generated here".into());
    }
    Ok(RangeReport { bounds: b, achieved, missing, witnesses, three_point_triangles: triangles, unachievable, notes })
}

#[derive(Clone, Debug)]
pub struct AtlasRecord {
    pub genus: usize,
    pub dimension: usize,
    pub polygon: LatticePolygon,
    pub family: String,
}

/// Witness polygons for every achieved dimension in genus `g`: the
/// non-hyperelliptic range and the hyperelliptic Class 2(a), `j = 0` family.
pub fn atlas(g: i64, opts: &DimOptions) -> Result<Vec<AtlasRecord>> {
    let mut out = Vec::new();
    if g >= 3 {
        for (d, w) in verify_range(g, opts)?.witnesses {
            out.push(AtlasRecord { genus: g as usize, dimension: d as usize, polygon: w.polygon, family: w.family });
        }
    }
    if g >= 2 {
        for i in 0..g {
            let p = koelman_generate(KoelmanClass::TwoA, i, Some(0), None, g)?;
            let d = crate::moduli::dim_hyperelliptic_closed_form(&HyperellipticForm::new(KoelmanClass::TwoA, i, Some(0), None), g)?;
            out.push(AtlasRecord { genus: g as usize, dimension: d as usize, polygon: p, family: format!("koelman-2(a) i={i} j=0") });
        }
    }
    Ok(out)
}
