//! Moduli dimensions of triangulations and polygons.

mod koelman;
mod nice;
mod types;

use std::fmt;

use crate::error::{Error, Result};
use crate::lattice::LatticePolygon;
use crate::triangulation::{for_each_unimodular_triangulation, EnumerationOptions, Triangulation};
use crate::tropical::moduli_dim_oracle;

pub use koelman::{
    achievable_dims_maximal_g1zero, dim_hyperelliptic_closed_form, koelman_classify, maximal_trapezoid_dim,
    relaxed_trapezoid, trapezoid, trapezoid_is_interior, HyperellipticForm, KoelmanClass,
};
pub use types::{
    classify_types, dim_formula, dim_formula_hyperelliptic, radial_edges, PointType, TypeClassification,
};

use nice::Annulus;
use types::HyperellipticContext;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Method {
    Formula,
    Oracle,
    ClosedForm,
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Method::Formula => "formula",
            Method::Oracle => "oracle",
            Method::ClosedForm => "closed-form",
        })
    }
}

/// How `dim_polygon` should search.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Strategy {
    /// Maximize the counting formula.
    Formula,
    /// Maximize the rank oracle over all regular triangulations.
    Oracle,
    /// Formula search, then require the oracle to agree on the witness.
    Auto,
}

#[derive(Clone, Copy, Debug)]
pub struct DimOptions {
    pub strategy: Strategy,
    /// Exhaustive triangulation search runs only up to this many points.
    pub max_points: usize,
    pub max_triangulations: usize,
}

impl Default for DimOptions {
    fn default() -> Self {
        let e = EnumerationOptions::default();
        Self { strategy: Strategy::Formula, max_points: e.max_points, max_triangulations: e.max_triangulations }
    }
}

impl DimOptions {
    fn enumeration(&self) -> EnumerationOptions {
        EnumerationOptions { max_points: self.max_points, max_triangulations: self.max_triangulations }
    }
}

#[derive(Clone, Debug)]
pub struct ModuliReport {
    pub polygon: LatticePolygon,
    pub genus: usize,
    pub dimension: usize,
    pub method: Method,
    pub witness: Option<Triangulation>,
    /// Oracle value on the witness, when computed.
    pub oracle: Option<usize>,
    /// Whether an exhaustive search confirmed the value.
    pub exhaustive: bool,
    pub notes: Vec<String>,
}

pub fn dim_polygon(poly: &LatticePolygon) -> Result<ModuliReport> {
    dim_polygon_with(poly, &DimOptions::default())
}

pub fn dim_polygon_with(poly: &LatticePolygon, opts: &DimOptions) -> Result<ModuliReport> {
    let g = poly.genus();
    if g <= 1 {
        return Err(Error::Precondition(format!("moduli dimension needs genus at least 2, got {g}")));
    }
    let mut report = match opts.strategy {
        Strategy::Oracle => oracle_search(poly, opts)?,
        _ if poly.is_hyperelliptic()? => hyperelliptic_search(poly, opts)?,
        _ => nice_search(poly, opts)?,
    };
    if opts.strategy == Strategy::Auto {
        let w = report.witness.as_ref().ok_or_else(|| {
            Error::Disagreement(format!("no witness triangulation to cross-check the value {}", report.dimension))
        })?;
        if !w.is_regular() {
            return Err(Error::Disagreement("witness triangulation is not regular; the oracle cannot check it".into()));
        }
        let o = moduli_dim_oracle(w)?;
        report.oracle = Some(o);
        if o != report.dimension {
            return Err(Error::Disagreement(format!(
                "formula gives {} but the oracle gives {} on witness {:?}",
                report.dimension,
                o,
                w.triangles()
            )));
        }
    }
    Ok(report)
}

fn nice_search(poly: &LatticePolygon, opts: &DimOptions) -> Result<ModuliReport> {
    let g = poly.genus();
    let annulus = Annulus::new(poly)?;
    let (best, configs) = annulus
        .optimum(64)
        .ok_or_else(|| Error::Precondition("no triangulation of the annulus exists".into()))?;
    let mut notes = Vec::new();
    let fills = annulus.fills()?;
    let mut witness = None;
    'outer: for c in &configs {
        for fill in &fills {
            let t = annulus.build(poly, c, fill)?;
            if witness.is_none() {
                witness = Some(t.clone());
            }
            if t.is_regular() {
                witness = Some(t);
                break 'outer;
            }
        }
    }
    let witness = witness.expect("an optimal configuration exists");
    debug_assert_eq!(annulus.context().classify(&witness)?.weight(), best);
    if !witness.is_regular() {
        notes.push("no regular witness found among optimal radial configurations".into());
    }
    let mut dimension = g - 3 + best;
    let mut exhaustive = false;
    if poly.lattice_points().len() <= opts.max_points {
        let ctx = annulus.context();
        let mut max = 0usize;
        let mut failure = None;
        let res = for_each_unimodular_triangulation(poly, &opts.enumeration(), |t| {
            match ctx.classify(t) {
                Ok(c) => max = max.max(c.weight()),
                Err(e) => failure = Some(e),
            }
            failure.is_none()
        });
        if let Some(e) = failure {
            return Err(e);
        }
        match res {
            Ok(_) => {
                exhaustive = true;
                if max != best {
                    notes.push(format!("exhaustive search found b2+2b3 = {max} beyond the radial optimum {best}"));
                    dimension = g - 3 + max;
                } else {
                    notes.push("confirmed by exhaustive triangulation search".into());
                }
            }
            Err(e) if e.is_resource_cap() => notes.push(format!("not exhaustively confirmed: {e}")),
            Err(e) => return Err(e),
        }
    } else {
        notes.push(format!(
            "not exhaustively confirmed: {} lattice points exceed the cap of {}",
            poly.lattice_points().len(),
            opts.max_points
        ));
    }
    Ok(ModuliReport {
        polygon: poly.clone(),
        genus: g,
        dimension,
        method: Method::Formula,
        witness: Some(witness),
        oracle: None,
        exhaustive,
        notes,
    })
}

/// Maximizes `score` over all triangulations; returns the value and the
/// maximizers in canonical order.
fn maximize(
    poly: &LatticePolygon,
    opts: &DimOptions,
    mut score: impl FnMut(&Triangulation) -> Result<Option<usize>>,
) -> Result<Option<(usize, Vec<Triangulation>)>> {
    let mut best: Option<(usize, Vec<Triangulation>)> = None;
    let mut failure = None;
    for_each_unimodular_triangulation(poly, &opts.enumeration(), |t| {
        match score(t) {
            Ok(Some(v)) => match &mut best {
                Some((b, list)) if *b == v => list.push(t.clone()),
                Some((b, _)) if *b > v => {}
                _ => best = Some((v, vec![t.clone()])),
            },
            Ok(None) => {}
            Err(e) => failure = Some(e),
        }
        failure.is_none()
    })?;
    if let Some(e) = failure {
        return Err(e);
    }
    if let Some((_, list)) = &mut best {
        list.sort();
    }
    Ok(best)
}

fn hyperelliptic_search(poly: &LatticePolygon, opts: &DimOptions) -> Result<ModuliReport> {
    let g = poly.genus();
    let ctx = HyperellipticContext::new(poly)?;
    let points = poly.lattice_points().len();
    if points > opts.max_points {
        let (form, _) = koelman_classify(poly)?;
        let d = dim_hyperelliptic_closed_form(&form, g as i64)? as usize;
        return Ok(ModuliReport {
            polygon: poly.clone(),
            genus: g,
            dimension: d,
            method: Method::ClosedForm,
            witness: None,
            oracle: None,
            exhaustive: false,
            notes: vec![
                format!("{form}"),
                format!("{points} lattice points exceed the search cap of {}; closed form used", opts.max_points),
            ],
        });
    }
    let (value, maximizers) = maximize(poly, opts, |t| ctx.formula(t).map(Some))?.expect("a triangulation exists");
    let regular = maximizers.iter().find(|t| t.is_regular()).cloned();
    let mut notes = vec!["maximized over all fine unimodular triangulations".to_string()];
    if regular.is_none() {
        notes.push("no maximizing triangulation is regular".into());
    }
    Ok(ModuliReport {
        polygon: poly.clone(),
        genus: g,
        dimension: value,
        method: Method::Formula,
        witness: regular.or_else(|| maximizers.into_iter().next()),
        oracle: None,
        exhaustive: true,
        notes,
    })
}

fn oracle_search(poly: &LatticePolygon, opts: &DimOptions) -> Result<ModuliReport> {
    let g = poly.genus();
    let best = maximize(poly, opts, |t| if t.is_regular() { moduli_dim_oracle(t).map(Some) } else { Ok(None) })?;
    let (value, maximizers) = best.ok_or_else(|| Error::Precondition("no regular triangulation found".into()))?;
    Ok(ModuliReport {
        polygon: poly.clone(),
        genus: g,
        dimension: value,
        method: Method::Oracle,
        witness: maximizers.into_iter().next(),
        oracle: Some(value),
        exhaustive: true,
        notes: vec!["maximized the rank oracle over all regular triangulations".into()],
    })
}

/// The per-triangulation formula that applies to the polygon.
pub fn dim_formula_auto(t: &Triangulation) -> Result<usize> {
    if t.polygon().is_hyperelliptic()? {
        dim_formula_hyperelliptic(t)
    } else {
        dim_formula(t)
    }
}

#[cfg(test)]
mod tests;
