//! The Dedekind Phi quasimorphism on the matrix group and its
//! homogenization, the integer-valued Rademacher function.

use alloc::string::String;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use super::{dedekind_sum, homogenize, CertifiedValue, Quasimorphism};
use crate::group::{Mat2, ProjMat2};

/// Raw Dedekind Phi:
///
/// ```text
/// Phi(M) = (a+d)/c - 12 sign(c) s(d, |c|)   if c != 0
/// Phi(M) = b/d                              if c == 0
/// ```
///
/// An exact-rational quasimorphism with defect 3; its coboundary only takes
/// the values -3, 0, 3 (see [`phi_cocycle_defect`]).
pub fn dedekind_phi(m: &Mat2) -> BigRational {
    if m.c().is_zero() {
        // c = 0 forces d = +-1, so b/d is an integer.
        return BigRational::new(m.b().clone(), m.d().clone());
    }
    let s = dedekind_sum(m.d(), &m.c().abs()).expect("|c| >= 1");
    let twelve_sign = BigRational::from(BigInt::from(if m.c().is_positive() {
        12
    } else {
        -12
    }));
    BigRational::new(m.trace(), m.c().clone()) - twelve_sign * s
}

/// `Phi(AB) - Phi(A) - Phi(B)`, asserted to lie in `{-3, 0, 3}`.
///
/// Any other value means the Phi implementation is broken, which would
/// invalidate every certificate built on it, so that is a hard error.
pub fn phi_cocycle_defect(a: &Mat2, b: &Mat2) -> BigRational {
    let ab = a.mul_unchecked(b);
    let dev = dedekind_phi(&ab) - dedekind_phi(a) - dedekind_phi(b);
    let three = BigRational::from(BigInt::from(3));
    assert!(
        dev.is_zero() || dev == three || dev == -&three,
        "Phi coboundary {dev} outside {{-3,0,3}} at A={a}, B={b}"
    );
    dev
}

/// The raw Dedekind Phi as a registered quasimorphism (not homogeneous).
#[derive(Debug, Clone, Copy, Default)]
pub struct DedekindPhi;

impl Quasimorphism for DedekindPhi {
    type Elt = Mat2;

    fn id(&self) -> String {
        String::from("dedekind-phi")
    }

    fn evaluate(&self, g: &Mat2) -> BigRational {
        dedekind_phi(g)
    }

    fn defect_upper(&self) -> BigRational {
        BigRational::from(BigInt::from(3))
    }

    fn is_homogeneous(&self) -> bool {
        false
    }
}

/// The Rademacher function: homogenization of Phi, rounded to the unique
/// integer in a certified interval of width < 1.
///
/// Classically integer-valued; that is asserted at runtime rather than
/// assumed, and a violation aborts certificate emission.
pub fn rademacher(m: &Mat2) -> BigInt {
    let width = BigRational::new(BigInt::from(1), BigInt::from(2));
    let interval = homogenize(&DedekindPhi, m, &width).expect("positive width");
    unique_integer(&interval, m)
}

/// Rademacher on projective classes; Phi takes equal values on `M` and `-M`,
/// so it is evaluated on the canonical representative.
pub fn rademacher_proj(p: &ProjMat2) -> BigInt {
    rademacher(p.rep())
}

fn unique_integer(interval: &CertifiedValue, m: &Mat2) -> BigInt {
    let ints = interval.integers_contained();
    match ints.as_slice() {
        [k] => k.clone(),
        _ => panic!(
            "certified interval [{}, {}] for {m} contains {} integers, expected exactly one; \
             the defect bound or the Phi implementation is broken",
            interval.lo(),
            interval.hi(),
            ints.len()
        ),
    }
}

/// The Rademacher function as a homogeneous quasimorphism on the matrix
/// group.
///
/// Defect upper bound 6 = twice the raw Phi defect, the general bound for a
/// homogenization. It is attained: the coboundary at
/// A = [[-3,1],[-1,0]], B = [[0,-1],[1,2]] is exactly 6 (see the unit test),
/// so 6 cannot be lowered.
#[derive(Debug, Clone, Copy, Default)]
pub struct Rademacher;

impl Quasimorphism for Rademacher {
    type Elt = Mat2;

    fn id(&self) -> String {
        String::from("rademacher")
    }

    fn evaluate(&self, g: &Mat2) -> BigRational {
        BigRational::from(rademacher(g))
    }

    fn defect_upper(&self) -> BigRational {
        BigRational::from(BigInt::from(6))
    }

    fn is_homogeneous(&self) -> bool {
        true
    }
}

/// The Rademacher function on projective classes.
#[derive(Debug, Clone, Copy, Default)]
pub struct RademacherProj;

impl Quasimorphism for RademacherProj {
    type Elt = ProjMat2;

    fn id(&self) -> String {
        String::from("rademacher")
    }

    fn evaluate(&self, g: &ProjMat2) -> BigRational {
        BigRational::from(rademacher_proj(g))
    }

    fn defect_upper(&self) -> BigRational {
        // same bound as on matrices: the function descends unchanged
        BigRational::from(BigInt::from(6))
    }

    fn is_homogeneous(&self) -> bool {
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::GroupElement;

    fn m(a: i64, b: i64, c: i64, d: i64) -> Mat2 {
        Mat2::from_i64(a, b, c, d).unwrap()
    }

    #[test]
    fn phi_examples() {
        assert_eq!(dedekind_phi(&Mat2::t()), BigRational::from(BigInt::from(1)));
        assert_eq!(dedekind_phi(&Mat2::s()), BigRational::zero());
        assert_eq!(dedekind_phi(&Mat2::identity()), BigRational::zero());
        // second factor of the worked example
        assert_eq!(dedekind_phi(&m(-1, -1, 2, 1)), BigRational::zero());
    }

    #[test]
    fn phi_parabolic_powers_are_additive() {
        for n in 1..=20i64 {
            assert_eq!(
                dedekind_phi(&Mat2::t().power(n)),
                BigRational::from(BigInt::from(n))
            );
        }
    }

    #[test]
    fn cocycle_defect_examples() {
        assert_eq!(
            phi_cocycle_defect(&Mat2::identity(), &Mat2::identity()),
            BigRational::zero()
        );
        // asserts membership in {-3,0,3} internally
        phi_cocycle_defect(&Mat2::s(), &Mat2::t());
    }

    #[test]
    fn rademacher_values() {
        for n in 1..=20i64 {
            assert_eq!(rademacher(&Mat2::t().power(n)), BigInt::from(n));
        }
        assert_eq!(rademacher(&Mat2::s()), BigInt::zero());
        assert_eq!(rademacher(&Mat2::u()), BigInt::zero());
        // conjugate to its own inverse, so every homogeneous qm vanishes
        assert_eq!(rademacher(&m(2, 1, 1, 1)), BigInt::zero());
    }

    #[test]
    fn rademacher_antisymmetry_and_conjugation() {
        let test_set = [m(2, 1, 1, 1), Mat2::t().power(5), m(5, 3, 3, 2)];
        let h = m(1, 2, 1, 3).mul_unchecked(&Mat2::s());
        for g in &test_set {
            assert_eq!(rademacher(&g.inverse()), -rademacher(g));
            let conj = h.mul_unchecked(g).mul_unchecked(&h.inverse());
            assert_eq!(rademacher(&conj), rademacher(g));
        }
    }

    #[test]
    fn rademacher_defect_bound_is_attained() {
        // the homogenization doubles the raw defect here, so 6 is sharp
        let a = m(-3, 1, -1, 0);
        let b = m(0, -1, 1, 2);
        let dev = rademacher(&a.mul_unchecked(&b)) - rademacher(&a) - rademacher(&b);
        assert_eq!(dev.abs(), BigInt::from(6));
    }

    #[test]
    fn rademacher_is_homogeneous_on_test_set() {
        for g in [Mat2::t(), m(2, 1, 1, 1), m(1, 0, 4, 1)] {
            let base = rademacher(&g);
            for n in 1..=20i64 {
                assert_eq!(rademacher(&g.power(n)), &base * BigInt::from(n));
            }
        }
    }
}
