//! Scalar abstractions shared by the exact linear-algebra and LP kernels.

use std::fmt::Debug;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::{BigRational, Ratio};
use num_traits::{One, Signed};

/// An ordered field with exact arithmetic.
///
/// Everything numeric in the crate (rank, LP, relaxations) is written against
/// this trait. `Rational` is the production instantiation; `Ratio<i64>` and
/// `Ratio<i128>` work for small inputs.
pub trait Field:
    Clone + Debug + PartialOrd + Signed + num_traits::Num + for<'a> std::ops::AddAssign<&'a Self>
{
    fn from_i64(v: i64) -> Self;
}

impl Field for BigRational {
    fn from_i64(v: i64) -> Self {
        BigRational::from_integer(BigInt::from(v))
    }
}

impl Field for Ratio<i64> {
    fn from_i64(v: i64) -> Self {
        Ratio::from_integer(v)
    }
}

impl Field for Ratio<i128> {
    fn from_i64(v: i64) -> Self {
        Ratio::from_integer(v as i128)
    }
}

/// Integer coordinate arithmetic used by lattice geometry.
pub trait Coord: Copy + Ord + Debug + Integer + Signed {}

impl<T: Copy + Ord + Debug + Integer + Signed> Coord for T {}

pub fn is_integral(q: &BigRational) -> bool {
    q.denom().is_one()
}

pub fn rational(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}
