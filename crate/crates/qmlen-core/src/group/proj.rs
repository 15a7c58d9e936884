//! Projective classes of determinant-one integer matrices.

use core::fmt;

use num_bigint::Sign;
use num_traits::Zero;

use super::{GroupElement, GroupError, Mat2, Order};

/// An element of the projective matrix group, stored as a sign-canonical
/// representative: the first nonzero entry in the order a, b, c, d is
/// positive. Two classes are equal iff their representatives are equal.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ProjMat2 {
    rep: Mat2,
}

impl ProjMat2 {
    pub fn new(m: Mat2) -> Self {
        let negate = match [m.a(), m.b(), m.c(), m.d()].iter().find(|e| !e.is_zero()) {
            Some(e) => e.sign() == Sign::Minus,
            None => unreachable!("determinant-one matrix is nonzero"),
        };
        ProjMat2 {
            rep: if negate { m.neg() } else { m },
        }
    }

    pub fn identity() -> Self {
        ProjMat2::new(Mat2::identity())
    }

    /// Image of `S`, an involution.
    pub fn s() -> Self {
        ProjMat2::new(Mat2::s())
    }

    /// Image of `T`.
    pub fn t() -> Self {
        ProjMat2::new(Mat2::t())
    }

    /// Image of `U = S*T`, of order 3.
    pub fn u() -> Self {
        ProjMat2::new(Mat2::u())
    }

    pub fn rep(&self) -> &Mat2 {
        &self.rep
    }

    fn order_by_trace(&self) -> Order {
        let t = self.rep.trace();
        if self.rep == Mat2::identity() {
            Order::Finite(1)
        } else if t.is_zero() {
            Order::Finite(2)
        } else if t == 1.into() || t == (-1).into() {
            Order::Finite(3)
        } else {
            Order::Infinite
        }
    }
}

impl GroupElement for ProjMat2 {
    fn identity_like(&self) -> Self {
        ProjMat2::identity()
    }

    fn inverse(&self) -> Self {
        ProjMat2::new(self.rep.inverse())
    }

    fn mul(&self, rhs: &Self) -> Result<Self, GroupError> {
        Ok(ProjMat2::new(self.rep.mul_unchecked(&rhs.rep)))
    }

    fn order(&self) -> Order {
        let predicted = self.order_by_trace();
        // Cross-check by direct powering bounded by 6.
        let mut by_powering = Order::Infinite;
        let mut p = self.clone();
        for k in 1..=6u64 {
            if k > 1 {
                p = p.mul(self).unwrap();
            }
            if p == ProjMat2::identity() {
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

impl fmt::Display for ProjMat2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.rep)
    }
}
