//! Determinant-one 2x2 integer matrices with arbitrary-precision entries.
//!
//! Entries grow exponentially under powering (Fibonacci-like for
//! `[[2,1],[1,1]]`), so fixed-width integers are never used here.

use core::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::{GroupElement, GroupError, Order};

/// An element of the group of 2x2 integer matrices with determinant one.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Mat2 {
    a: BigInt,
    b: BigInt,
    c: BigInt,
    d: BigInt,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Mat2Error {
    pub det: BigInt,
}

impl fmt::Display for Mat2Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "determinant is {}, expected 1", self.det)
    }
}

impl core::error::Error for Mat2Error {}

impl Mat2 {
    pub fn new(a: BigInt, b: BigInt, c: BigInt, d: BigInt) -> Result<Self, Mat2Error> {
        let det = &a * &d - &b * &c;
        if !det.is_one() {
            return Err(Mat2Error { det });
        }
        Ok(Mat2 { a, b, c, d })
    }

    pub fn from_i64(a: i64, b: i64, c: i64, d: i64) -> Result<Self, Mat2Error> {
        Mat2::new(a.into(), b.into(), c.into(), d.into())
    }

    pub fn identity() -> Self {
        Mat2::from_i64(1, 0, 0, 1).unwrap()
    }

    pub fn neg_identity() -> Self {
        Mat2::from_i64(-1, 0, 0, -1).unwrap()
    }

    /// `S = [[0,-1],[1,0]]`, order 4.
    pub fn s() -> Self {
        Mat2::from_i64(0, -1, 1, 0).unwrap()
    }

    /// `T = [[1,1],[0,1]]`, the standard parabolic.
    pub fn t() -> Self {
        Mat2::from_i64(1, 1, 0, 1).unwrap()
    }

    /// `U = S*T = [[0,-1],[1,1]]`, order 6.
    pub fn u() -> Self {
        Mat2::from_i64(0, -1, 1, 1).unwrap()
    }

    pub fn a(&self) -> &BigInt {
        &self.a
    }
    pub fn b(&self) -> &BigInt {
        &self.b
    }
    pub fn c(&self) -> &BigInt {
        &self.c
    }
    pub fn d(&self) -> &BigInt {
        &self.d
    }

    pub fn trace(&self) -> BigInt {
        &self.a + &self.d
    }

    pub fn neg(&self) -> Self {
        Mat2 {
            a: -&self.a,
            b: -&self.b,
            c: -&self.c,
            d: -&self.d,
        }
    }

    pub(crate) fn mul_unchecked(&self, rhs: &Mat2) -> Mat2 {
        Mat2 {
            a: &self.a * &rhs.a + &self.b * &rhs.c,
            b: &self.a * &rhs.b + &self.b * &rhs.d,
            c: &self.c * &rhs.a + &self.d * &rhs.c,
            d: &self.c * &rhs.b + &self.d * &rhs.d,
        }
    }

    /// Order predicted by the trace classification alone, without powering.
    fn order_by_trace(&self) -> Order {
        let t = self.trace();
        if *self == Mat2::identity() {
            Order::Finite(1)
        } else if *self == Mat2::neg_identity() {
            Order::Finite(2)
        } else if t == BigInt::from(-1) {
            Order::Finite(3)
        } else if t.is_zero() {
            Order::Finite(4)
        } else if t.is_one() {
            Order::Finite(6)
        } else {
            Order::Infinite
        }
    }
}

impl GroupElement for Mat2 {
    fn identity_like(&self) -> Self {
        Mat2::identity()
    }

    fn inverse(&self) -> Self {
        Mat2 {
            a: self.d.clone(),
            b: -&self.b,
            c: -&self.c,
            d: self.a.clone(),
        }
    }

    fn mul(&self, rhs: &Self) -> Result<Self, GroupError> {
        Ok(self.mul_unchecked(rhs))
    }

    fn order(&self) -> Order {
        let predicted = self.order_by_trace();
        // Cross-check against direct powering bounded by 12. A disagreement
        // means the arithmetic itself is broken and certificates would be
        // meaningless, so it is a hard error.
        let mut by_powering = Order::Infinite;
        let mut p = self.clone();
        for k in 1..=12u64 {
            if k > 1 {
                p = p.mul_unchecked(self);
            }
            if p == Mat2::identity() {
                by_powering = Order::Finite(k);
                break;
            }
        }
        assert_eq!(
            predicted, by_powering,
            "trace classification disagrees with direct powering for {self}"
        );
        predicted
    }
}

impl fmt::Display for Mat2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[[{},{}],[{},{}]]", self.a, self.b, self.c, self.d)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(a: i64, b: i64, c: i64, d: i64) -> Mat2 {
        Mat2::from_i64(a, b, c, d).unwrap()
    }

    #[test]
    fn example_product() {
        // [[0,1],[-1,0]] * [[-1,-1],[2,1]] = [[2,1],[1,1]]
        let x = m(0, 1, -1, 0);
        let y = m(-1, -1, 2, 1);
        assert_eq!(x.mul(&y).unwrap(), m(2, 1, 1, 1));
    }

    #[test]
    fn determinant_enforced() {
        assert!(Mat2::from_i64(1, 0, 0, 2).is_err());
        assert!(Mat2::from_i64(1, 2, 3, 4).is_err());
    }

    #[test]
    fn power_examples() {
        let g = m(2, 1, 1, 1);
        assert_eq!(g.power(2), m(5, 3, 3, 2));
        assert_eq!(g.power(0), Mat2::identity());
        assert_eq!(Mat2::t().power(10), m(1, 10, 0, 1));
        assert_eq!(g.power(-1), g.inverse());
    }

    #[test]
    fn orders() {
        assert_eq!(m(0, 1, -1, 0).order(), Order::Finite(4));
        assert_eq!(m(-1, -1, 2, 1).order(), Order::Finite(4));
        assert_eq!(Mat2::identity().order(), Order::Finite(1));
        assert_eq!(Mat2::neg_identity().order(), Order::Finite(2));
        assert_eq!(Mat2::u().order(), Order::Finite(6));
        assert_eq!(Mat2::u().power(2).order(), Order::Finite(3));
        assert_eq!(m(2, 1, 1, 1).order(), Order::Infinite);
        assert_eq!(Mat2::t().order(), Order::Infinite);
    }

    #[test]
    fn inverse_is_adjugate() {
        let g = m(2, 1, 1, 1);
        assert!(g.mul(&g.inverse()).unwrap().is_identity());
    }
}
