//! Generic planar primitives: points, orientation, convex hulls.

use std::fmt;
use std::ops::{Add, Mul, Sub};

use num_traits::Num;

/// A point in the plane with coordinates in `T`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Point<T> {
    pub x: T,
    pub y: T,
}

impl<T> Point<T> {
    pub const fn new(x: T, y: T) -> Self {
        Self { x, y }
    }
}

impl<T: Clone + Num> Point<T> {
    pub fn dot(&self, other: &Self) -> T {
        self.x.clone() * other.x.clone() + self.y.clone() * other.y.clone()
    }

    /// z-component of the cross product of the two vectors.
    pub fn det(&self, other: &Self) -> T {
        self.x.clone() * other.y.clone() - self.y.clone() * other.x.clone()
    }
}

impl<T: Clone + Num> Add for Point<T> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        Point::new(self.x + rhs.x, self.y + rhs.y)
    }
}

impl<T: Clone + Num> Sub for Point<T> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        Point::new(self.x - rhs.x, self.y - rhs.y)
    }
}

impl<T: Clone + Num> Mul<T> for Point<T> {
    type Output = Self;
    fn mul(self, k: T) -> Self {
        Point::new(self.x * k.clone(), self.y * k)
    }
}

impl<T: fmt::Display> fmt::Display for Point<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.x, self.y)
    }
}

/// Twice the signed area of the triangle `o, a, b`; positive when counterclockwise.
pub fn orient<T: Clone + Num>(o: &Point<T>, a: &Point<T>, b: &Point<T>) -> T {
    (a.clone() - o.clone()).det(&(b.clone() - o.clone()))
}

/// Strictly convex hull in counterclockwise order, starting from the
/// lexicographically smallest point. Collinear boundary points are dropped.
pub fn convex_hull<T: Clone + Num + Ord>(points: &[Point<T>]) -> Vec<Point<T>> {
    let mut pts: Vec<Point<T>> = points.to_vec();
    pts.sort();
    pts.dedup();
    if pts.len() < 3 {
        return pts;
    }
    let mut lower: Vec<Point<T>> = Vec::new();
    for p in &pts {
        while lower.len() >= 2 && orient(&lower[lower.len() - 2], &lower[lower.len() - 1], p) <= T::zero() {
            lower.pop();
        }
        lower.push(p.clone());
    }
    let mut upper: Vec<Point<T>> = Vec::new();
    for p in pts.iter().rev() {
        while upper.len() >= 2 && orient(&upper[upper.len() - 2], &upper[upper.len() - 1], p) <= T::zero() {
            upper.pop();
        }
        upper.push(p.clone());
    }
    lower.pop();
    upper.pop();
    lower.extend(upper);
    lower
}

/// Twice the signed area enclosed by a closed vertex sequence (shoelace).
pub fn shoelace2<T: Clone + Num>(vertices: &[Point<T>]) -> T {
    let n = vertices.len();
    let mut acc = T::zero();
    for i in 0..n {
        acc = acc + vertices[i].det(&vertices[(i + 1) % n]);
    }
    acc
}

/// True when all points lie on a common line (vacuously for fewer than three).
pub fn all_collinear<T: Clone + Num>(points: &[Point<T>]) -> bool {
    let Some(first) = points.first() else { return true };
    let Some(second) = points.iter().find(|p| *p != first) else { return true };
    points.iter().all(|p| orient(first, second, p).is_zero())
}

/// True when the open segments `ab` and `cd` cross at a single interior point.
pub fn segments_cross<T: Clone + Num + Ord>(a: &Point<T>, b: &Point<T>, c: &Point<T>, d: &Point<T>) -> bool {
    let sign = |v: T| -> i8 {
        if v > T::zero() {
            1
        } else if v < T::zero() {
            -1
        } else {
            0
        }
    };
    let d1 = sign(orient(a, b, c));
    let d2 = sign(orient(a, b, d));
    let d3 = sign(orient(c, d, a));
    let d4 = sign(orient(c, d, b));
    d1 * d2 < 0 && d3 * d4 < 0
}

#[cfg(test)]
mod tests {
    use super::*;

    type P = Point<i64>;

    #[test]
    fn hull_drops_interior_and_collinear_points() {
        let pts = [P::new(0, 0), P::new(1, 0), P::new(2, 0), P::new(1, 1), P::new(0, 2), P::new(2, 2)];
        assert_eq!(convex_hull(&pts), vec![P::new(0, 0), P::new(2, 0), P::new(2, 2), P::new(0, 2)]);
    }

    #[test]
    fn shoelace_and_crossing() {
        let sq = [P::new(0, 0), P::new(1, 0), P::new(1, 1), P::new(0, 1)];
        assert_eq!(shoelace2(&sq), 2);
        assert!(segments_cross(&sq[0], &sq[2], &sq[1], &sq[3]));
        assert!(!segments_cross(&sq[0], &sq[1], &sq[1], &sq[2]));
        assert!(all_collinear(&[P::new(0, 0), P::new(2, 2), P::new(5, 5)]));
        assert!(!all_collinear(&[P::new(0, 0), P::new(2, 2), P::new(5, 4)]));
    }
}
