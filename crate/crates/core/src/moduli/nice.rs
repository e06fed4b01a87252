//! Maximizing `b2 + 2 b3` over triangulations that contain the boundary of
//! `P_int` and whose exterior edges are all radial.
//!
//! Such a triangulation restricted to the annulus between the two boundary
//! cycles is a cyclic merge: each interior boundary point `v_i` sees a run of
//! consecutive outer points, and neighbouring runs share their end point.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::geometry::{all_collinear, orient};
use crate::lattice::{InteriorHull, LatticePoint, LatticePolygon};
use crate::triangulation::{refine_to_unimodular, Triangulation};

use super::types::TypeContext;

pub(crate) struct Annulus {
    outer: Vec<LatticePoint>,
    inner: Vec<LatticePoint>,
    inner_polygon: LatticePolygon,
    ctx: TypeContext,
}

/// Run boundaries `0 = j_0 <= ... <= j_n = m` relative to outer start `s`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct Configuration {
    pub start: usize,
    pub cuts: Vec<usize>,
}

impl Annulus {
    pub fn new(poly: &LatticePolygon) -> Result<Self> {
        let InteriorHull::Polygon(inner_polygon) = poly.interior_hull() else {
            return Err(Error::Precondition("expected a non-hyperelliptic polygon".into()));
        };
        Ok(Self {
            outer: poly.boundary_cycle(),
            inner: inner_polygon.boundary_cycle(),
            ctx: TypeContext::new(poly)?,
            inner_polygon,
        })
    }

    fn w(&self, s: usize, j: usize) -> LatticePoint {
        self.outer[(s + j) % self.outer.len()]
    }

    /// Score of giving `v_i` the outer run `j..=j2` from start `s`, if the
    /// run and the following inner step are valid.
    fn step(&self, s: usize, i: usize, j: usize, j2: usize) -> Option<usize> {
        let (n, m) = (self.inner.len(), self.outer.len());
        if i == n - 1 && j2 != m {
            return None;
        }
        let v = self.inner[i];
        for t in j..j2 {
            if orient(&self.w(s, t), &self.w(s, t + 1), &v) != 1 {
                return None;
            }
        }
        if (j..=j2).any(|t| !self.ctx.is_radial(&v, &self.w(s, t))) {
            return None;
        }
        if orient(&v, &self.inner[(i + 1) % n], &self.w(s, j2)) != -1 {
            return None;
        }
        let targets: Vec<LatticePoint> = (j..=j2).map(|t| self.w(s, t)).collect();
        Some(if targets.len() == 1 {
            0
        } else if all_collinear(&targets) {
            1
        } else {
            2
        })
    }

    /// `best[i][j]`: best score for `v_0..v_{i-1}` with `v_i` starting at `j`.
    fn table(&self, s: usize) -> Vec<Vec<Option<usize>>> {
        let (n, m) = (self.inner.len(), self.outer.len());
        let mut best = vec![vec![None; m + 1]; n + 1];
        best[0][0] = Some(0);
        for i in 0..n {
            for j in 0..=m {
                let Some(base) = best[i][j] else { continue };
                for j2 in j..=m {
                    // Outer steps only get harder as the run grows.
                    if j2 > j && orient(&self.w(s, j2 - 1), &self.w(s, j2), &self.inner[i]) != 1 {
                        break;
                    }
                    if let Some(sc) = self.step(s, i, j, j2) {
                        let cell = &mut best[i + 1][j2];
                        if cell.is_none_or(|c| c < base + sc) {
                            *cell = Some(base + sc);
                        }
                    }
                }
            }
        }
        best
    }

    /// Maximum of `b2 + 2 b3` and up to `limit` optimal configurations.
    pub fn optimum(&self, limit: usize) -> Option<(usize, Vec<Configuration>)> {
        let (n, m) = (self.inner.len(), self.outer.len());
        let tables: Vec<_> = (0..m).map(|s| self.table(s)).collect();
        let value = tables.iter().filter_map(|t| t[n][m]).max()?;
        let mut configs = Vec::new();
        for (s, best) in tables.iter().enumerate() {
            if best[n][m] != Some(value) {
                continue;
            }
            let mut cuts = vec![m];
            self.backtrack(s, best, n, m, &mut cuts, &mut configs, limit);
            if configs.len() >= limit {
                break;
            }
        }
        Some((value, configs))
    }

    #[allow(clippy::too_many_arguments)]
    fn backtrack(
        &self,
        s: usize,
        best: &[Vec<Option<usize>>],
        i: usize,
        j2: usize,
        cuts: &mut Vec<usize>,
        out: &mut Vec<Configuration>,
        limit: usize,
    ) {
        if out.len() >= limit {
            return;
        }
        if i == 0 {
            if j2 == 0 {
                let mut c = cuts.clone();
                c.reverse();
                out.push(Configuration { start: s, cuts: c });
            }
            return;
        }
        let target = best[i][j2].expect("reachable state");
        for j in 0..=j2 {
            if let (Some(base), Some(sc)) = (best[i - 1][j], self.step(s, i - 1, j, j2)) {
                if base + sc == target {
                    cuts.push(j);
                    self.backtrack(s, best, i - 1, j, cuts, out, limit);
                    cuts.pop();
                }
            }
        }
    }

    /// Annulus triangles of a configuration plus a fill of `P_int`.
    pub fn build(&self, poly: &LatticePolygon, c: &Configuration, fill: &Triangulation) -> Result<Triangulation> {
        let n = self.inner.len();
        let mut tris: Vec<[LatticePoint; 3]> = Vec::new();
        for i in 0..n {
            let (j, j2) = (c.cuts[i], c.cuts[i + 1]);
            for t in j..j2 {
                tris.push([self.w(c.start, t), self.w(c.start, t + 1), self.inner[i]]);
            }
            tris.push([self.inner[i], self.inner[(i + 1) % n], self.w(c.start, j2)]);
        }
        for tri in fill.triangles() {
            tris.push(tri.map(|k| fill.points()[k]));
        }
        let points = poly.lattice_points();
        let index: BTreeMap<LatticePoint, usize> = points.iter().enumerate().map(|(i, p)| (*p, i)).collect();
        let triangles = tris.iter().map(|t| t.map(|p| index[&p])).collect();
        Triangulation::new(points, triangles)
    }

    pub fn fills(&self) -> Result<Vec<Triangulation>> {
        let mut out = vec![refine_to_unimodular(&self.inner_polygon, &[])?];
        // A second fill through a different diagonal family gives the
        // regularity search another chance.
        let pts = self.inner_polygon.lattice_points();
        if let (Some(a), Some(b)) = (pts.first(), pts.last()) {
            if let Ok(t) = refine_to_unimodular(&self.inner_polygon, &[(*a, *b)]) {
                if !out.contains(&t) {
                    out.push(t);
                }
            }
        }
        Ok(out)
    }

    pub fn context(&self) -> &TypeContext {
        &self.ctx
    }
}
