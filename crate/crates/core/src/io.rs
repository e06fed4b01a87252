//! Text and JSON formats for polygons, triangulations, skeletons and reports.

use serde::{Deserialize, Serialize};

use crate::catalog::{AtlasRecord, RangeReport};
use crate::error::{Error, Result};
use crate::lattice::{LatticePoint, LatticePolygon};
use crate::moduli::ModuliReport;
use crate::triangulation::Triangulation;
use crate::tropical::Skeleton;
use crate::Rational;

fn pair(p: &LatticePoint) -> [i64; 2] {
    [p.x, p.y]
}

fn point([x, y]: [i64; 2]) -> LatticePoint {
    LatticePoint::new(x, y)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolygonJson {
    pub vertices: Vec<[i64; 2]>,
}

impl From<&LatticePolygon> for PolygonJson {
    fn from(p: &LatticePolygon) -> Self {
        Self { vertices: p.vertices().iter().map(pair).collect() }
    }
}

impl PolygonJson {
    pub fn to_polygon(&self) -> Result<LatticePolygon> {
        LatticePolygon::new(&self.vertices.iter().copied().map(point).collect::<Vec<_>>())
    }
}

/// Parses either the `x,y x,y ...` literal or `{"vertices": [[x,y], ...]}`.
pub fn parse_polygon(text: &str) -> Result<LatticePolygon> {
    let t = text.trim();
    if t.starts_with('{') {
        let j: PolygonJson = serde_json::from_str(t).map_err(|e| Error::Parse(e.to_string()))?;
        j.to_polygon()
    } else {
        LatticePolygon::parse(t)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TriangulationJson {
    pub points: Vec<[i64; 2]>,
    pub triangles: Vec<[usize; 3]>,
}

impl From<&Triangulation> for TriangulationJson {
    fn from(t: &Triangulation) -> Self {
        Self { points: t.points().iter().map(pair).collect(), triangles: t.triangles().to_vec() }
    }
}

impl TriangulationJson {
    /// Validates and re-indexes with points in lexicographic order.
    pub fn to_triangulation(&self) -> Result<Triangulation> {
        let t = Triangulation::new(self.points.iter().copied().map(point).collect(), self.triangles.clone())?;
        Ok(t.apply(&crate::lattice::UnimodularMap::identity()))
    }
}

pub fn parse_triangulation(text: &str) -> Result<Triangulation> {
    let j: TriangulationJson = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    j.to_triangulation()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SkeletonJson {
    pub nodes: usize,
    pub edges: Vec<[usize; 2]>,
    pub genus: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lengths: Option<Vec<String>>,
}

impl SkeletonJson {
    pub fn new(s: &Skeleton, lengths: Option<&[Rational]>) -> Self {
        Self {
            nodes: s.nodes,
            edges: s.edges.iter().map(|e| [e.u, e.v]).collect(),
            genus: s.genus,
            lengths: lengths.map(|l| l.iter().map(|q| q.to_string()).collect()),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModuliReportJson {
    pub polygon: PolygonJson,
    pub genus: usize,
    pub dimension: usize,
    pub method: String,
    pub witness: Option<TriangulationJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub oracle: Option<usize>,
    pub exhaustive: bool,
    pub notes: Vec<String>,
}

impl From<&ModuliReport> for ModuliReportJson {
    fn from(r: &ModuliReport) -> Self {
        Self {
            polygon: (&r.polygon).into(),
            genus: r.genus,
            dimension: r.dimension,
            method: r.method.to_string(),
            witness: r.witness.as_ref().map(Into::into),
            oracle: r.oracle,
            exhaustive: r.exhaustive,
            notes: r.notes.clone(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessJson {
    pub family: String,
    pub polygon: PolygonJson,
    pub exhaustive: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ThreePointTriangleJson {
    pub b: i64,
    pub hyperelliptic: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RangeReportJson {
    pub genus: i64,
    pub lower: i64,
    pub upper: i64,
    pub achieved: Vec<i64>,
    pub missing: Vec<i64>,
    pub unachievable: Vec<i64>,
    pub witnesses: std::collections::BTreeMap<String, WitnessJson>,
    pub three_point_triangles: Vec<ThreePointTriangleJson>,
    pub notes: Vec<String>,
}

impl From<&RangeReport> for RangeReportJson {
    fn from(r: &RangeReport) -> Self {
        Self {
            genus: r.bounds.g,
            lower: r.bounds.lower,
            upper: r.bounds.upper,
            achieved: r.achieved.iter().copied().collect(),
            missing: r.missing.iter().copied().collect(),
            unachievable: r.unachievable.iter().copied().collect(),
            witnesses: r
                .witnesses
                .iter()
                .map(|(d, w)| {
                    (d.to_string(), WitnessJson { family: w.family.clone(), polygon: (&w.polygon).into(), exhaustive: w.exhaustive })
                })
                .collect(),
            three_point_triangles: r
                .three_point_triangles
                .iter()
                .map(|&(b, hyperelliptic)| ThreePointTriangleJson { b, hyperelliptic })
                .collect(),
            notes: r.notes.clone(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AtlasJson {
    pub genus: usize,
    pub dimension: usize,
    pub polygon: Vec<[i64; 2]>,
    pub family: String,
}

impl From<&AtlasRecord> for AtlasJson {
    fn from(r: &AtlasRecord) -> Self {
        Self {
            genus: r.genus,
            dimension: r.dimension,
            polygon: r.polygon.vertices().iter().map(pair).collect(),
            family: r.family.clone(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::triangulation::refine_to_unimodular;

    #[test]
    fn polygon_formats_agree() {
        let a = parse_polygon("1,0 0,3 3,1").unwrap();
        let b = parse_polygon(r#"{"vertices": [[1,0],[0,3],[3,1]]}"#).unwrap();
        assert_eq!(a, b);
        let text = serde_json::to_string(&PolygonJson::from(&a)).unwrap();
        assert_eq!(parse_polygon(&text).unwrap(), a);
        assert!(parse_polygon(r#"{"vertices": [[0,0],[1,1]]}"#).is_err());
        assert!(parse_polygon("{oops").is_err());
    }

    #[test]
    fn triangulation_round_trip() {
        let p = parse_polygon("0,0 3,0 0,3").unwrap();
        let t = refine_to_unimodular(&p, &[]).unwrap();
        let text = serde_json::to_string(&TriangulationJson::from(&t)).unwrap();
        assert_eq!(parse_triangulation(&text).unwrap(), t);
        // Point order in the file does not matter.
        let mut j = TriangulationJson::from(&t);
        j.points.reverse();
        let n = j.points.len();
        for tri in &mut j.triangles {
            *tri = tri.map(|i| n - 1 - i);
        }
        assert_eq!(j.to_triangulation().unwrap(), t);
    }

    #[test]
    fn skeleton_json() {
        let p = parse_polygon("0,0 4,0 0,4").unwrap();
        let t = refine_to_unimodular(&p, &[]).unwrap();
        let w = t.regularity_witness().unwrap();
        let s = crate::tropical::skeleton_of(&t).unwrap();
        let lengths = s.lengths(&w.heights);
        let j = SkeletonJson::new(&s, Some(&lengths));
        let back: SkeletonJson = serde_json::from_str(&serde_json::to_string(&j).unwrap()).unwrap();
        assert_eq!(back, j);
        assert_eq!(back.genus, 3);
        let bare = serde_json::to_string(&SkeletonJson::new(&s, None)).unwrap();
        assert!(!bare.contains("lengths"));
    }
}
