//! Upper-bound factorization witnesses and lower-bound certificates.
//!
//! Witnesses are verified by exact recomputation, never trusted: the factor
//! product must reproduce the target and every per-factor claim is checked
//! against the group arithmetic. Lower-bound certificates store every input
//! needed to re-derive the bound.

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

mod bounds;
mod witnesses;

pub use bounds::{
    bound_from_qm, mcg_dehn_bounds, stable_bound_from_qm, wbg_residual, BoundCertificate,
    BoundInputs, Inequality, Quantity,
};
pub use witnesses::{
    involution_power_witness, sl2z_example_witness, sl2z_example_witness_projective,
    sl2z_torsion_witness, twist_commutator_witness,
};

use crate::group::{GroupElement, Order};

/// The property claimed for one factor of a witness.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Claim<G> {
    TorsionOfOrder(u64),
    CommutatorOf(G, G),
}

/// An ordered factorization of `target` with a checkable claim per factor.
/// A verified witness is an upper-bound certificate: `target` is a product
/// of `factors.len()` elements of the claimed kind.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FactorizationWitness<G> {
    pub target: G,
    pub factors: Vec<(G, Claim<G>)>,
}

impl<G> FactorizationWitness<G> {
    pub fn new(target: G, factors: Vec<(G, Claim<G>)>) -> Self {
        FactorizationWitness { target, factors }
    }

    pub fn factor_count(&self) -> u32 {
        self.factors.len() as u32
    }
}

/// Why a witness failed to verify. Claim failures carry the index of the
/// first offending factor.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum WitnessFailure {
    OrderClaim {
        index: usize,
        claimed: u64,
        actual: Order,
    },
    CommutatorClaim {
        index: usize,
    },
    ProductMismatch,
}

impl fmt::Display for WitnessFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            WitnessFailure::OrderClaim {
                index,
                claimed,
                actual,
            } => {
                let actual = match actual {
                    Order::Finite(m) => alloc::format!("{m}"),
                    Order::Infinite => String::from("infinite"),
                };
                write!(
                    f,
                    "order claim failed at index {index}: claimed {claimed}, actual {actual}"
                )
            }
            WitnessFailure::CommutatorClaim { index } => {
                write!(f, "commutator claim failed at index {index}")
            }
            WitnessFailure::ProductMismatch => write!(f, "product mismatch"),
        }
    }
}

impl core::error::Error for WitnessFailure {}

/// Checks every claim (in factor order) and then the product, all by exact
/// arithmetic. Verification failure is a diagnostic return, not a panic.
pub fn verify_witness<G: GroupElement>(w: &FactorizationWitness<G>) -> Result<(), WitnessFailure> {
    for (index, (element, claim)) in w.factors.iter().enumerate() {
        match claim {
            Claim::TorsionOfOrder(m) => {
                let actual = element.order();
                if actual != Order::Finite(*m) {
                    return Err(WitnessFailure::OrderClaim {
                        index,
                        claimed: *m,
                        actual,
                    });
                }
            }
            Claim::CommutatorOf(x, y) => {
                let expected = x
                    .commutator(y)
                    .map_err(|_| WitnessFailure::CommutatorClaim { index })?;
                if expected != *element {
                    return Err(WitnessFailure::CommutatorClaim { index });
                }
            }
        }
    }
    let mut product = w.target.identity_like();
    for (element, _) in &w.factors {
        product = product
            .mul(element)
            .map_err(|_| WitnessFailure::ProductMismatch)?;
    }
    if product != w.target {
        return Err(WitnessFailure::ProductMismatch);
    }
    Ok(())
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CertError {
    Domain(String),
    /// The quasimorphism value interval contains zero: the method gives no
    /// bound for this element.
    NoCertificate,
    Internal(String),
}

impl fmt::Display for CertError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CertError::Domain(msg) => write!(f, "domain error: {msg}"),
            CertError::NoCertificate => {
                write!(f, "quasimorphism value interval contains zero; no bound")
            }
            CertError::Internal(msg) => write!(f, "internal invariant violated: {msg}"),
        }
    }
}

impl core::error::Error for CertError {}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{Mat2, Perm};

    #[test]
    fn example_witness_verifies() {
        let target = Mat2::from_i64(2, 1, 1, 1).unwrap();
        let f1 = Mat2::from_i64(0, 1, -1, 0).unwrap();
        let f2 = Mat2::from_i64(-1, -1, 2, 1).unwrap();
        let w = FactorizationWitness::new(
            target,
            alloc::vec![
                (f1, Claim::TorsionOfOrder(4)),
                (f2, Claim::TorsionOfOrder(4)),
            ],
        );
        assert!(verify_witness(&w).is_ok());
    }

    #[test]
    fn empty_witness_for_identity_verifies() {
        let w: FactorizationWitness<Mat2> =
            FactorizationWitness::new(Mat2::identity(), Vec::new());
        assert!(verify_witness(&w).is_ok());
    }

    #[test]
    fn wrong_order_claim_reports_first_index() {
        let target = Mat2::from_i64(2, 1, 1, 1).unwrap();
        let f1 = Mat2::from_i64(0, 1, -1, 0).unwrap();
        let f2 = Mat2::from_i64(-1, -1, 2, 1).unwrap();
        let w = FactorizationWitness::new(
            target,
            alloc::vec![
                (f1, Claim::TorsionOfOrder(2)),
                (f2, Claim::TorsionOfOrder(2)),
            ],
        );
        match verify_witness(&w) {
            Err(WitnessFailure::OrderClaim { index: 0, claimed: 2, .. }) => {}
            other => panic!("unexpected result {other:?}"),
        }
    }

    #[test]
    fn tampered_product_detected() {
        let target = Mat2::from_i64(2, 1, 1, 1).unwrap();
        let f1 = Mat2::from_i64(0, 1, -1, 0).unwrap();
        let w = FactorizationWitness::new(
            target,
            alloc::vec![(f1, Claim::TorsionOfOrder(4))],
        );
        assert_eq!(verify_witness(&w), Err(WitnessFailure::ProductMismatch));
    }

    #[test]
    fn commutator_claims_checked() {
        let x = Perm::transposition(3, 0, 1).unwrap();
        let y = Perm::transposition(3, 1, 2).unwrap();
        let c = x.commutator(&y).unwrap();
        let good = FactorizationWitness::new(
            c.clone(),
            alloc::vec![(c.clone(), Claim::CommutatorOf(x.clone(), y.clone()))],
        );
        assert!(verify_witness(&good).is_ok());
        let bad = FactorizationWitness::new(
            c.clone(),
            alloc::vec![(c, Claim::CommutatorOf(y, x))],
        );
        assert_eq!(
            verify_witness(&bad),
            Err(WitnessFailure::CommutatorClaim { index: 0 })
        );
    }
}
