//! Witness generators: explicit short factorizations that verify.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use super::{Claim, FactorizationWitness};
use crate::cert::CertError;
use crate::group::{psl_normal_form, GroupElement, Mat2, Order, ProjMat2};

/// Two-torsion-factor witness for `(s t)^n` when `s` and `t` are involutions:
///
/// ```text
/// g^{2m}   = (a t a^-1) t          with a = g^{m-1} s
/// g^{2m+1} = (a t a^-1) (t s t^-1)
/// ```
///
/// Negative exponents are handled through `(s t)^-1 = t s`. Both factors are
/// conjugates of involutions, so every power has torsion length at most 2.
pub fn involution_power_witness<G: GroupElement>(
    s: &G,
    t: &G,
    n: i64,
) -> Result<FactorizationWitness<G>, CertError> {
    if n == 0 {
        return Err(CertError::Domain(String::from("exponent must be nonzero")));
    }
    for (name, x) in [("s", s), ("t", t)] {
        if x.order() != Order::Finite(2) {
            return Err(CertError::Domain(format!("{name} is not an involution")));
        }
    }
    if n < 0 {
        // (s t)^n = (t s)^(-n)
        return involution_power_witness(t, s, -n);
    }
    let g = s.mul(t).map_err(|e| CertError::Domain(format!("{e}")))?;
    let target = g.power(n);
    let alpha = g.power(n / 2 - 1).mul(s).expect("same instance");
    let first = alpha
        .mul(t)
        .and_then(|x| x.mul(&alpha.inverse()))
        .expect("same instance");
    let second = if n % 2 == 0 {
        t.clone()
    } else {
        t.mul(s).and_then(|x| x.mul(&t.inverse())).expect("same instance")
    };
    Ok(FactorizationWitness::new(
        target,
        alloc::vec![
            (first, Claim::TorsionOfOrder(2)),
            (second, Claim::TorsionOfOrder(2)),
        ],
    ))
}

/// Projective part of the worked hyperbolic example: the image of
/// `[[2,1],[1,1]]^n` written as at most 2 involutions, using the involution
/// factors that the order-4 matrices `[[0,1],[-1,0]]` and `[[-1,-1],[2,1]]`
/// project to.
pub fn sl2z_example_witness_projective(
    n: i64,
) -> Result<FactorizationWitness<ProjMat2>, CertError> {
    let p = ProjMat2::new(Mat2::from_i64(0, 1, -1, 0).expect("det 1"));
    let q = ProjMat2::new(Mat2::from_i64(-1, -1, 2, 1).expect("det 1"));
    involution_power_witness(&p, &q, n)
}

/// Torsion witness with at most 3 factors for `[[2,1],[1,1]]^n` in the
/// matrix group: the projective 2-involution witness is lifted factor by
/// factor (each lift has order 4), and a `-identity` factor of order 2 is
/// appended when the lifted product lands on `-g^n`.
pub fn sl2z_example_witness(n: i64) -> Result<FactorizationWitness<Mat2>, CertError> {
    let g = Mat2::from_i64(2, 1, 1, 1).expect("det 1");
    let target = g.power(n);
    let projective = sl2z_example_witness_projective(n)?;
    lift_projective_witness(target, &projective)
}

/// General torsion-length upper bound witness in the matrix group: lifts the
/// syllables of the projective normal form (orders 4 and 6 upstairs) and
/// appends `-identity` when needed. Factor count = syllables + at most 1.
pub fn sl2z_torsion_witness(m: &Mat2) -> Result<FactorizationWitness<Mat2>, CertError> {
    let projective = ProjMat2::new(m.clone());
    if projective.is_identity() {
        // m is +-identity; -identity is itself torsion of order 2.
        if m.is_identity() {
            return Ok(FactorizationWitness::new(m.clone(), Vec::new()));
        }
        return Ok(FactorizationWitness::new(
            m.clone(),
            alloc::vec![(Mat2::neg_identity(), Claim::TorsionOfOrder(2))],
        ));
    }
    let word = psl_normal_form(&projective);
    let factors: Vec<(ProjMat2, Claim<ProjMat2>)> = word
        .syllables()
        .iter()
        .map(|syl| {
            (
                ProjMat2::new(syl.matrix()),
                Claim::TorsionOfOrder(syl.order()),
            )
        })
        .collect();
    lift_projective_witness(
        m.clone(),
        &FactorizationWitness::new(projective, factors),
    )
}

/// Lifts each projective factor to its sign-canonical matrix representative
/// and fixes the overall sign with a trailing `-identity` factor.
fn lift_projective_witness(
    target: Mat2,
    projective: &FactorizationWitness<ProjMat2>,
) -> Result<FactorizationWitness<Mat2>, CertError> {
    let mut factors: Vec<(Mat2, Claim<Mat2>)> = Vec::with_capacity(projective.factors.len() + 1);
    let mut product = Mat2::identity();
    for (p, claim) in &projective.factors {
        let lift = p.rep().clone();
        let order = match lift.order() {
            Order::Finite(m) => m,
            Order::Infinite => {
                return Err(CertError::Internal(format!(
                    "lift {lift} of a projective torsion factor has infinite order"
                )))
            }
        };
        if let Claim::CommutatorOf(_, _) = claim {
            return Err(CertError::Domain(String::from(
                "only torsion factors can be lifted",
            )));
        }
        product = product.mul_unchecked(&lift);
        factors.push((lift, Claim::TorsionOfOrder(order)));
    }
    if product != target {
        if product.neg() != target {
            return Err(CertError::Internal(format!(
                "lifted product {product} matches neither {target} nor its negative"
            )));
        }
        factors.push((Mat2::neg_identity(), Claim::TorsionOfOrder(2)));
    }
    Ok(FactorizationWitness::new(target, factors))
}

/// Single-commutator witness for `g^n` with `g = (f^-1 t f) t^-1`, valid
/// whenever `f^-1 t f` commutes with `t` (the algebraic form of twisting
/// along disjoint curves):
///
/// ```text
/// g^n = (f^-1 t f)^n t^-n = [f^-1, t^n]
/// ```
pub fn twist_commutator_witness<G: GroupElement>(
    f: &G,
    t: &G,
    n: i64,
) -> Result<FactorizationWitness<G>, CertError> {
    if n < 1 {
        return Err(CertError::Domain(String::from("exponent must be positive")));
    }
    let conj = f
        .inverse()
        .mul(t)
        .and_then(|x| x.mul(f))
        .map_err(|e| CertError::Domain(format!("{e}")))?;
    if !conj.commutator(t).expect("same instance").is_identity() {
        return Err(CertError::Domain(String::from(
            "f^-1 t f does not commute with t",
        )));
    }
    let g = conj.mul(&t.inverse()).expect("same instance");
    let target = g.power(n);
    Ok(FactorizationWitness::new(
        target.clone(),
        alloc::vec![(target, Claim::CommutatorOf(f.inverse(), t.power(n)))],
    ))
}
