//! Koelman's classification of hyperelliptic polygons and the closed-form
//! moduli dimensions of each class.

use std::fmt;

use crate::error::{Error, Result};
use crate::lattice::{LatticePoint, LatticePolygon, UnimodularMap};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum KoelmanClass {
    One,
    TwoA,
    TwoB,
    ThreeA,
    ThreeB,
}

impl KoelmanClass {
    pub const ALL: [KoelmanClass; 5] =
        [KoelmanClass::One, KoelmanClass::TwoA, KoelmanClass::TwoB, KoelmanClass::ThreeA, KoelmanClass::ThreeB];

    pub fn name(self) -> &'static str {
        match self {
            KoelmanClass::One => "1",
            KoelmanClass::TwoA => "2(a)",
            KoelmanClass::TwoB => "2(b)",
            KoelmanClass::ThreeA => "3(a)",
            KoelmanClass::ThreeB => "3(b)",
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        let t = s.trim().to_ascii_lowercase().replace(['(', ')'], "");
        Ok(match t.as_str() {
            "1" => KoelmanClass::One,
            "2a" => KoelmanClass::TwoA,
            "2b" => KoelmanClass::TwoB,
            "3a" => KoelmanClass::ThreeA,
            "3b" => KoelmanClass::ThreeB,
            _ => return Err(Error::Parse(format!("unknown Koelman class {s:?}"))),
        })
    }
}

/// A class with its parameters; `j` and `k` are absent where unused.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct HyperellipticForm {
    pub class: KoelmanClass,
    pub i: i64,
    pub j: Option<i64>,
    pub k: Option<i64>,
}

impl fmt::Display for HyperellipticForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Class {} i={}", self.class.name(), self.i)?;
        if let Some(j) = self.j {
            write!(f, " j={j}")?;
        }
        if let Some(k) = self.k {
            write!(f, " k={k}")?;
        }
        Ok(())
    }
}

impl HyperellipticForm {
    pub fn new(class: KoelmanClass, i: i64, j: Option<i64>, k: Option<i64>) -> Self {
        Self { class, i, j, k }
    }

    /// Checks the parameter ranges of the classification theorem. Class 3(b)
    /// also accepts `j = 2g + 2 - i - 2k`, which the stated range misses.
    pub fn validate(&self, g: i64) -> Result<()> {
        let bad = || Err(Error::Range(format!("{self} is not a valid genus-{g} form")));
        if g < 2 {
            return Err(Error::Range(format!("hyperelliptic classes need genus at least 2, got {g}")));
        }
        let i = self.i;
        let ok = match (self.class, self.j, self.k) {
            (KoelmanClass::One, None, None) => g <= i && i <= 2 * g,
            (KoelmanClass::TwoA, Some(j), None) => (0..=g).contains(&i) && (0..=i).contains(&j),
            (KoelmanClass::TwoB, Some(j), None) => g < i && i <= 2 * g + 1 && (0..=2 * g - i + 1).contains(&j),
            (KoelmanClass::ThreeA, Some(j), Some(k)) => {
                (0..=g + 1).contains(&k) && (0..=g + 1 - k).contains(&i) && (0..=i).contains(&j)
            }
            (KoelmanClass::ThreeB, Some(j), Some(k)) => {
                (0..=g + 1).contains(&k) && g + 1 - k < i && i <= 2 * g + 2 - 2 * k && (0..=2 * g - i - 2 * k + 2).contains(&j)
            }
            _ => false,
        };
        if ok {
            Ok(())
        } else {
            bad()
        }
    }

    /// Whether the form lies in the range stated by the classification
    /// theorem (without the extra Class 3(b) boundary).
    pub fn is_stated(&self, g: i64) -> bool {
        match (self.class, self.j, self.k) {
            (KoelmanClass::ThreeB, Some(j), Some(k)) => self.validate(g).is_ok() && j <= 2 * g - self.i - 2 * k + 1,
            _ => self.validate(g).is_ok(),
        }
    }

    pub fn template(&self, g: i64) -> Result<LatticePolygon> {
        self.validate(g)?;
        let p = LatticePoint::new;
        let i = self.i;
        let pts = match self.class {
            KoelmanClass::One => vec![p(0, 0), p(i, 0), p(2 * g + 1 - i, 2), p(1, 2)],
            KoelmanClass::TwoA | KoelmanClass::TwoB => {
                let j = self.j.unwrap();
                vec![p(0, 0), p(i, 0), p(g + 1, 1), p(1 + j, 2), p(1, 2)]
            }
            KoelmanClass::ThreeA | KoelmanClass::ThreeB => {
                let (j, k) = (self.j.unwrap(), self.k.unwrap());
                vec![p(0, 0), p(i, 0), p(g + 1, 1), p(k + j, 2), p(k, 2), p(0, 1)]
            }
        };
        let poly = LatticePolygon::new(&pts)?;
        let expected: Vec<LatticePoint> = (1..=g).map(|x| p(x, 1)).collect();
        if poly.interior_points() != expected {
            return Err(Error::NoTemplate(format!("template for {self} has interior {:?}", poly.interior_points())));
        }
        Ok(poly)
    }

    /// Every valid form of genus `g`, including the Class 3(b) boundary.
    pub fn all(g: i64) -> Vec<HyperellipticForm> {
        let mut out = Vec::new();
        for i in 0..=2 * g + 2 {
            out.push(Self::new(KoelmanClass::One, i, None, None));
            for j in 0..=2 * g + 2 {
                out.push(Self::new(KoelmanClass::TwoA, i, Some(j), None));
                out.push(Self::new(KoelmanClass::TwoB, i, Some(j), None));
                for k in 0..=g + 1 {
                    out.push(Self::new(KoelmanClass::ThreeA, i, Some(j), Some(k)));
                    out.push(Self::new(KoelmanClass::ThreeB, i, Some(j), Some(k)));
                }
            }
        }
        out.retain(|f| f.validate(g).is_ok());
        out.sort();
        out
    }
}

/// Finds the form of a hyperelliptic polygon, with a map sending it onto the
/// form's template.
pub fn koelman_classify(poly: &LatticePolygon) -> Result<(HyperellipticForm, UnimodularMap)> {
    let g = poly.genus() as i64;
    if g < 2 || !poly.is_hyperelliptic()? {
        return Err(Error::Precondition("Koelman classification needs a hyperelliptic polygon of genus at least 2".into()));
    }
    let (nf, to_nf) = poly.normal_form_with_map();
    for form in HyperellipticForm::all(g) {
        let tpl = form.template(g)?;
        let (tnf, t_to_nf) = tpl.normal_form_with_map();
        if tnf == nf {
            let map = t_to_nf.inverse().compose(&to_nf);
            debug_assert_eq!(poly.apply(&map), tpl);
            return Ok((form, map));
        }
    }
    Err(Error::NoTemplate(poly.to_string()))
}

pub fn dim_hyperelliptic_closed_form(form: &HyperellipticForm, g: i64) -> Result<i64> {
    form.validate(g)?;
    let cap = 2 * g - 1;
    let (i, j, k) = (form.i, form.j.unwrap_or(0), form.k.unwrap_or(0));
    Ok(match form.class {
        KoelmanClass::One | KoelmanClass::TwoB => cap,
        KoelmanClass::TwoA => (g + i + j).min(cap),
        KoelmanClass::ThreeA if k == 0 => (g + i + j).min(cap),
        KoelmanClass::ThreeA | KoelmanClass::ThreeB => (g + i + j + 1).min(cap),
    })
}

/// `T_{a,b} = conv((0,0),(0,1),(b,0),(a,1))`.
pub fn trapezoid(a: i64, b: i64) -> Result<LatticePolygon> {
    if !(0 <= a && a <= b && b >= 1) {
        return Err(Error::Range(format!("trapezoid needs 0 <= a <= b and b >= 1, got a={a}, b={b}")));
    }
    LatticePolygon::from_coords(&[(0, 0), (0, 1), (b, 0), (a, 1)])
}

/// Whether `T_{a,b}` is the interior polygon of its relaxation.
pub fn trapezoid_is_interior(a: i64, b: i64) -> bool {
    2 * a >= b - 2
}

/// Relaxation of `T_{a,b}`, checked to be a lattice polygon with interior
/// polygon `T_{a,b}`.
pub fn relaxed_trapezoid(a: i64, b: i64) -> Result<LatticePolygon> {
    let t = trapezoid(a, b)?;
    if !trapezoid_is_interior(a, b) {
        return Err(Error::Range(format!("T_{{{a},{b}}} is not an interior polygon (needs a >= b/2 - 1)")));
    }
    let relaxed = t
        .relaxed()
        .to_lattice()
        .ok_or_else(|| Error::Range(format!("relaxation of T_{{{a},{b}}} is not a lattice polygon")))?;
    match relaxed.interior_hull() {
        crate::lattice::InteriorHull::Polygon(q) if q == t => Ok(relaxed),
        _ => Err(Error::Range(format!("T_{{{a},{b}}} is not the interior polygon of its relaxation"))),
    }
}

/// Moduli dimension of the relaxation of `T_{a,b}`, which has genus `a + b + 2`.
pub fn maximal_trapezoid_dim(a: i64, b: i64) -> Result<i64> {
    let g = relaxed_trapezoid(a, b)?.genus() as i64;
    Ok((2 * g + 1).min(g + 2 * a + 4).min(3 * g - 3))
}

/// Dimensions realized by maximal polygons of genus `g` whose interior
/// polygon has genus zero, i.e. relaxed trapezoids `T_{a, g-a-2}`.
pub fn achievable_dims_maximal_g1zero(g: i64) -> Result<std::collections::BTreeSet<i64>> {
    if g < 7 {
        return Err(Error::Range(format!("the trapezoid description needs g >= 7, got {g}")));
    }
    (0..=(g - 2) / 2)
        .filter(|&a| trapezoid_is_interior(a, g - a - 2))
        .map(|a| maximal_trapezoid_dim(a, g - a - 2))
        .collect()
}
