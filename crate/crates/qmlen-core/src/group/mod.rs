//! Canonical-form elements of the supported concrete groups.
//!
//! Every element type is immutable after construction and keeps itself in
//! canonical form, so structural equality is group equality.

use alloc::string::String;
use core::fmt;

mod free;
mod mat2;
mod perm;
mod proj;
mod syllable;

pub use free::{FreeWord, WordError};
pub use mat2::{Mat2, Mat2Error};
pub use perm::{Perm, PermError};
pub use proj::ProjMat2;
pub use syllable::{psl_normal_form, Syllable, SyllableWord};

/// Error raised when two elements from different group instances
/// (different rank, degree, ...) are combined.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupError {
    pub left: String,
    pub right: String,
}

impl fmt::Display for GroupError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "mismatched group instances: {} vs {}",
            self.left, self.right
        )
    }
}

impl core::error::Error for GroupError {}

/// Order of a group element.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Order {
    Finite(u64),
    Infinite,
}

impl Order {
    pub fn is_finite(self) -> bool {
        matches!(self, Order::Finite(_))
    }

    pub fn finite(self) -> Option<u64> {
        match self {
            Order::Finite(m) => Some(m),
            Order::Infinite => None,
        }
    }
}

/// A canonical-form element of one of the supported groups.
///
/// `mul` fails only on mismatched group instances; products within one
/// instance always succeed, which `power` and `commutator` rely on.
pub trait GroupElement: Clone + Eq + Ord + fmt::Debug + fmt::Display + Sized {
    /// The identity of the instance this element belongs to.
    fn identity_like(&self) -> Self;

    fn inverse(&self) -> Self;

    fn mul(&self, rhs: &Self) -> Result<Self, GroupError>;

    /// Exact order, `Infinite` for elements of infinite order.
    fn order(&self) -> Order;

    fn is_identity(&self) -> bool {
        *self == self.identity_like()
    }

    /// `g^n` by repeated squaring; `n` may be negative or zero.
    fn power(&self, n: i64) -> Self {
        if n < 0 {
            return self.inverse().power(n.checked_neg().expect("exponent overflow"));
        }
        let mut acc = self.identity_like();
        let mut base = self.clone();
        let mut e = n as u64;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base).expect("same instance");
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base).expect("same instance");
            }
        }
        acc
    }

    /// `x y x^-1 y^-1`.
    fn commutator(&self, y: &Self) -> Result<Self, GroupError> {
        self.mul(y)?.mul(&self.inverse())?.mul(&y.inverse())
    }
}
