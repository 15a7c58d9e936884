//! Lower-bound certificates from homogeneous quasimorphisms.
//!
//! Every certificate stores the inequality tag and all numeric inputs, and
//! the stored bound must be bit-identical to recomputation from those inputs.
//! Formulas consume the pessimistic ends: the LOW end of the certified
//! `|phi(g)|` interval and the declared defect UPPER bound.

use alloc::string::String;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use super::CertError;
use crate::group::GroupElement;
use crate::qm::{big_rational_int, CertifiedValue, Quasimorphism};

/// Which lower-bound inequality produced a certificate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Inequality {
    /// `l(g^n) >= (n |phi(g)| + D) / (C + D)`
    PowerWordLength,
    /// `||g||_S >= |phi(g)| / (C + D)`
    StableWordLength,
    /// `c(g^n) >= (n |phi(g)| / D + 1) / 2`, using `C = D` on commutators
    PowerCommutatorLength,
    /// `||g||_C >= |phi(g)| / (2D)`
    StableCommutatorLength,
    /// `t(g^n) >= n |phi(g)| / D + 1`, using `C = 0` on torsion
    PowerTorsionLength,
    /// `||g||_T >= |phi(g)| / D`
    StableTorsionLength,
    /// `c(g^n) >= 1 + nk / (6(3h - 1))` for k twists on genus h
    DehnTwistCommutator,
    /// `||g||_T >= k / (3(3h - 1))` for k twists on genus h
    DehnTwistStableTorsion,
}

impl Inequality {
    pub fn is_stable(self) -> bool {
        matches!(
            self,
            Inequality::StableWordLength
                | Inequality::StableCommutatorLength
                | Inequality::StableTorsionLength
                | Inequality::DehnTwistStableTorsion
        )
    }

    /// The formula as written, for reports.
    pub fn formula(self) -> &'static str {
        match self {
            Inequality::PowerWordLength => "(n*|phi(g)| + D) / (C + D)",
            Inequality::StableWordLength => "|phi(g)| / (C + D)",
            Inequality::PowerCommutatorLength => "(n*|phi(g)|/D + 1) / 2",
            Inequality::StableCommutatorLength => "|phi(g)| / (2D)",
            Inequality::PowerTorsionLength => "n*|phi(g)|/D + 1",
            Inequality::StableTorsionLength => "|phi(g)| / D",
            Inequality::DehnTwistCommutator => "1 + n*k/(6*(3h-1))",
            Inequality::DehnTwistStableTorsion => "k/(3*(3h-1))",
        }
    }
}

/// What quantity the bound constrains.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Quantity {
    WordLengthOfPower { n: i64 },
    CommutatorLengthOfPower { n: i64 },
    TorsionLengthOfPower { n: i64 },
    StableWordLength,
    StableCommutatorLength,
    StableTorsionLength,
}

/// The inputs a certificate was derived from, sufficient for independent
/// re-derivation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BoundInputs {
    Quasimorphism {
        qm_id: String,
        phi_g: CertifiedValue,
        defect_upper: BigRational,
        /// The generator bound `C(phi, S)` actually used (already forced to
        /// `D` on commutators and `0` on torsion).
        generator_bound: BigRational,
        /// Power, absent for stable bounds.
        n: Option<i64>,
    },
}

/// A lower bound on a length quantity, with full provenance. `ceiling` is
/// populated for integer-valued (non-stable) quantities.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundCertificate {
    pub quantity: Quantity,
    pub inequality: Inequality,
    pub bound: BigRational,
    pub ceiling: Option<BigInt>,
    pub inputs: BoundInputs,
}

impl BoundCertificate {
    /// Re-derives the bound from the stored inputs by the tagged formula.
    /// Must be bit-identical to `self.bound`; any divergence means the
    /// certificate was tampered with or the implementation drifted.
    pub fn recompute(&self) -> Result<BigRational, CertError> {
        let BoundInputs::Quasimorphism {
            phi_g,
            defect_upper,
            generator_bound,
            n,
            ..
        } = &self.inputs;
        evaluate_formula(self.inequality, phi_g, defect_upper, generator_bound, *n)
    }
}

fn evaluate_formula(
    inequality: Inequality,
    phi_g: &CertifiedValue,
    defect_upper: &BigRational,
    generator_bound: &BigRational,
    n: Option<i64>,
) -> Result<BigRational, CertError> {
    if phi_g.contains_zero() {
        return Err(CertError::NoCertificate);
    }
    let abs_lo = phi_g.abs().lo().clone();
    let d = defect_upper.clone();
    if d.is_negative() {
        return Err(CertError::Domain(String::from(
            "defect upper bound must be nonnegative",
        )));
    }
    let n_rat = |n: Option<i64>| -> Result<BigRational, CertError> {
        match n {
            Some(n) if n >= 1 => Ok(big_rational_int(n)),
            _ => Err(CertError::Domain(String::from(
                "power must be a positive integer",
            ))),
        }
    };
    let positive_defect = || -> Result<(), CertError> {
        if d.is_positive() {
            Ok(())
        } else {
            Err(CertError::Domain(String::from(
                "this inequality divides by the defect, which must be positive",
            )))
        }
    };
    match inequality {
        Inequality::PowerWordLength | Inequality::StableWordLength => {
            let denom = generator_bound + &d;
            if !denom.is_positive() {
                return Err(CertError::Domain(String::from(
                    "generator bound plus defect must be positive",
                )));
            }
            match inequality {
                Inequality::PowerWordLength => Ok((n_rat(n)? * &abs_lo + &d) / denom),
                _ => Ok(abs_lo / denom),
            }
        }
        Inequality::PowerCommutatorLength => {
            positive_defect()?;
            Ok((n_rat(n)? * &abs_lo / &d + big_rational_int(1)) / big_rational_int(2))
        }
        Inequality::StableCommutatorLength => {
            positive_defect()?;
            Ok(abs_lo / (big_rational_int(2) * &d))
        }
        Inequality::PowerTorsionLength => {
            positive_defect()?;
            Ok(n_rat(n)? * &abs_lo / &d + big_rational_int(1))
        }
        Inequality::StableTorsionLength => {
            positive_defect()?;
            Ok(abs_lo / &d)
        }
        Inequality::DehnTwistCommutator | Inequality::DehnTwistStableTorsion => Err(
            CertError::Domain(String::from(
                "surface twist inequalities take (h, k, n), not quasimorphism data",
            )),
        ),
    }
}

/// Lower bound on the length of `g^n` from a homogeneous quasimorphism.
///
/// `inequality` selects among the power forms; the word-length form uses the
/// caller's `C(phi, S)` bound, the commutator form forces `C = D`, and the
/// torsion form forces `C = 0` (homogeneous quasimorphisms vanish on
/// torsion). A `phi(g)` interval containing zero yields `NoCertificate`:
/// the method gives nothing for such elements.
pub fn bound_from_qm<Q: Quasimorphism + ?Sized>(
    f: &Q,
    phi_g: &CertifiedValue,
    n: i64,
    inequality: Inequality,
    c_upper: &BigRational,
) -> Result<BoundCertificate, CertError> {
    if !f.is_homogeneous() {
        return Err(CertError::Domain(String::from(
            "lower bounds need a homogeneous quasimorphism",
        )));
    }
    if inequality.is_stable() {
        return Err(CertError::Domain(String::from(
            "stable inequality passed to the power-bound constructor",
        )));
    }
    if c_upper.is_negative() {
        return Err(CertError::Domain(String::from(
            "generator bound must be nonnegative",
        )));
    }
    let d = f.defect_upper();
    let (quantity, generator_bound) = match inequality {
        Inequality::PowerWordLength => (Quantity::WordLengthOfPower { n }, c_upper.clone()),
        Inequality::PowerCommutatorLength => (Quantity::CommutatorLengthOfPower { n }, d.clone()),
        Inequality::PowerTorsionLength => (Quantity::TorsionLengthOfPower { n }, BigRational::zero()),
        _ => {
            return Err(CertError::Domain(String::from(
                "unsupported inequality for quasimorphism power bounds",
            )))
        }
    };
    let bound = evaluate_formula(inequality, phi_g, &d, &generator_bound, Some(n))?;
    let ceiling = Some(bound.ceil().to_integer());
    Ok(BoundCertificate {
        quantity,
        inequality,
        bound,
        ceiling,
        inputs: BoundInputs::Quasimorphism {
            qm_id: f.id(),
            phi_g: phi_g.clone(),
            defect_upper: d,
            generator_bound,
            n: Some(n),
        },
    })
}

/// Stable (per-power, in the limit) lower bound from a homogeneous
/// quasimorphism. Same conventions as [`bound_from_qm`].
pub fn stable_bound_from_qm<Q: Quasimorphism + ?Sized>(
    f: &Q,
    phi_g: &CertifiedValue,
    inequality: Inequality,
    c_upper: &BigRational,
) -> Result<BoundCertificate, CertError> {
    if !f.is_homogeneous() {
        return Err(CertError::Domain(String::from(
            "lower bounds need a homogeneous quasimorphism",
        )));
    }
    if c_upper.is_negative() {
        return Err(CertError::Domain(String::from(
            "generator bound must be nonnegative",
        )));
    }
    let d = f.defect_upper();
    let (quantity, generator_bound) = match inequality {
        Inequality::StableWordLength => (Quantity::StableWordLength, c_upper.clone()),
        Inequality::StableCommutatorLength => (Quantity::StableCommutatorLength, d.clone()),
        Inequality::StableTorsionLength => (Quantity::StableTorsionLength, BigRational::zero()),
        _ => {
            return Err(CertError::Domain(String::from(
                "non-stable inequality passed to the stable-bound constructor",
            )))
        }
    };
    let bound = evaluate_formula(inequality, phi_g, &d, &generator_bound, None)?;
    Ok(BoundCertificate {
        quantity,
        inequality,
        bound,
        ceiling: None,
        inputs: BoundInputs::Quasimorphism {
            qm_id: f.id(),
            phi_g: phi_g.clone(),
            defect_upper: d,
            generator_bound,
            n: None,
        },
    })
}

/// Lower bounds for a product of `k` right-handed twists on a closed genus-`h`
/// surface (`h >= 2`): commutator-length bound for the `n`-th power and the
/// stable torsion-length bound, as exact rationals:
///
/// ```text
/// c(g^n)  >= 1 + n k / (6 (3h - 1))
/// ||g||_T >= k / (3 (3h - 1))
/// ```
pub fn mcg_dehn_bounds(h: u64, k: u64, n: u64) -> Result<(BigRational, BigRational), CertError> {
    if h < 2 {
        return Err(CertError::Domain(String::from("genus must be at least 2")));
    }
    if k < 1 || n < 1 {
        return Err(CertError::Domain(String::from(
            "twist count and power must be positive",
        )));
    }
    let h = BigRational::from(BigInt::from(h));
    let k = BigRational::from(BigInt::from(k));
    let n = BigRational::from(BigInt::from(n));
    let three_h_minus_1 = big_rational_int(3) * &h - big_rational_int(1);
    let comm = big_rational_int(1) + &n * &k / (big_rational_int(6) * &three_h_minus_1);
    let stable_torsion = &k / (big_rational_int(3) * &three_h_minus_1);
    Ok((comm, stable_torsion))
}

/// Residual of an approximate-decomposition family: given `g^n` written as
/// `h_1^a_1 ... h_N^a_N` (verified by exact multiplication), returns
///
/// ```text
/// ( |phi(g) - sum_i (a_i / n) phi(h_i)| ,  (N - 1) D(phi) / n )
/// ```
///
/// and asserts the residual is within the bound — a violation falsifies the
/// declared defect bound and must abort.
pub fn wbg_residual<Q: Quasimorphism>(
    f: &Q,
    g: &Q::Elt,
    family: &[(Q::Elt, i64)],
    n: u64,
) -> Result<(BigRational, BigRational), CertError> {
    if !f.is_homogeneous() {
        return Err(CertError::Domain(String::from(
            "residual bound needs a homogeneous quasimorphism",
        )));
    }
    if n < 1 {
        return Err(CertError::Domain(String::from("power must be positive")));
    }
    if family.is_empty() {
        return Err(CertError::Domain(String::from("family must be nonempty")));
    }
    let mut product = g.identity_like();
    for (h, a) in family {
        product = product
            .mul(&h.power(*a))
            .map_err(|e| CertError::Domain(alloc::format!("{e}")))?;
    }
    if product != g.power(n as i64) {
        return Err(CertError::Domain(String::from(
            "family product does not equal the required power",
        )));
    }
    let n_rat = big_rational_int(n as i64);
    let mut sum = BigRational::zero();
    for (h, a) in family {
        sum += big_rational_int(*a) / &n_rat * f.evaluate(h);
    }
    let residual = (f.evaluate(g) - sum).abs();
    let bound = big_rational_int(family.len() as i64 - 1) * f.defect_upper() / &n_rat;
    assert!(
        residual <= bound,
        "residual {residual} exceeds its certified bound {bound}; \
         the declared defect bound is falsified"
    );
    Ok((residual, bound))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::Mat2;
    use crate::qm::Rademacher;

    fn rat(p: i64, q: i64) -> BigRational {
        BigRational::new(BigInt::from(p), BigInt::from(q))
    }

    fn phi_one() -> CertifiedValue {
        CertifiedValue::exact(rat(1, 1))
    }

    #[test]
    fn torsion_power_bound_for_parabolic() {
        let cert = bound_from_qm(
            &Rademacher,
            &phi_one(),
            9,
            Inequality::PowerTorsionLength,
            &BigRational::zero(),
        )
        .unwrap();
        assert_eq!(cert.bound, rat(5, 2));
        assert_eq!(cert.ceiling, Some(BigInt::from(3)));
        assert_eq!(cert.recompute().unwrap(), cert.bound);
    }

    #[test]
    fn commutator_power_bound_for_parabolic() {
        let cert = bound_from_qm(
            &Rademacher,
            &phi_one(),
            1,
            Inequality::PowerCommutatorLength,
            &BigRational::zero(),
        )
        .unwrap();
        assert_eq!(cert.bound, rat(7, 12));
        assert_eq!(cert.ceiling, Some(BigInt::from(1)));
        assert_eq!(cert.recompute().unwrap(), cert.bound);
    }

    #[test]
    fn stable_bounds_and_exact_doubling() {
        let torsion = stable_bound_from_qm(
            &Rademacher,
            &phi_one(),
            Inequality::StableTorsionLength,
            &BigRational::zero(),
        )
        .unwrap();
        assert_eq!(torsion.bound, rat(1, 6));
        let comm = stable_bound_from_qm(
            &Rademacher,
            &phi_one(),
            Inequality::StableCommutatorLength,
            &BigRational::zero(),
        )
        .unwrap();
        assert_eq!(comm.bound, rat(1, 12));
        assert_eq!(torsion.bound, rat(2, 1) * &comm.bound);
    }

    #[test]
    fn power_bounds_strictly_increase_in_n() {
        let mut prev = BigRational::zero();
        for n in 1..=20 {
            let cert = bound_from_qm(
                &Rademacher,
                &phi_one(),
                n,
                Inequality::PowerTorsionLength,
                &BigRational::zero(),
            )
            .unwrap();
            assert!(cert.bound > prev, "not increasing at n={n}");
            prev = cert.bound;
        }
    }

    #[test]
    fn vanishing_value_gives_no_certificate() {
        // phi of any torsion element is exactly 0
        let zero = CertifiedValue::exact(BigRational::zero());
        assert_eq!(
            bound_from_qm(
                &Rademacher,
                &zero,
                5,
                Inequality::PowerTorsionLength,
                &BigRational::zero()
            ),
            Err(CertError::NoCertificate)
        );
        // and so is any interval straddling 0
        let straddle = CertifiedValue::new(
            rat(-1, 8),
            rat(1, 8),
            crate::qm::Provenance::LimitEstimate { n: 24 },
        );
        assert_eq!(
            stable_bound_from_qm(
                &Rademacher,
                &straddle,
                Inequality::StableTorsionLength,
                &BigRational::zero()
            ),
            Err(CertError::NoCertificate)
        );
    }

    #[test]
    fn inequality_kind_mismatches_rejected() {
        assert!(bound_from_qm(
            &Rademacher,
            &phi_one(),
            2,
            Inequality::StableTorsionLength,
            &BigRational::zero()
        )
        .is_err());
        assert!(stable_bound_from_qm(
            &Rademacher,
            &phi_one(),
            Inequality::PowerTorsionLength,
            &BigRational::zero()
        )
        .is_err());
    }

    #[test]
    fn surface_twist_calculator_values() {
        assert_eq!(mcg_dehn_bounds(2, 1, 30).unwrap(), (rat(2, 1), rat(1, 15)));
        assert_eq!(mcg_dehn_bounds(3, 8, 6).unwrap(), (rat(2, 1), rat(1, 3)));
        assert_eq!(mcg_dehn_bounds(2, 1, 1).unwrap(), (rat(31, 30), rat(1, 15)));
        assert!(mcg_dehn_bounds(1, 1, 1).is_err());
        assert!(mcg_dehn_bounds(2, 0, 1).is_err());
    }

    #[test]
    fn residual_trivial_single_family() {
        let t = Mat2::t();
        for n in [1u64, 4, 9] {
            let (residual, bound) = wbg_residual(&Rademacher, &t, &[(t.clone(), n as i64)], n).unwrap();
            assert_eq!(residual, BigRational::zero());
            assert_eq!(bound, BigRational::zero());
        }
    }

    #[test]
    fn residual_two_element_family() {
        let t = Mat2::t();
        let (residual, bound) =
            wbg_residual(&Rademacher, &t, &[(t.clone(), 3), (t.clone(), 5)], 8).unwrap();
        assert_eq!(bound, rat(3, 4));
        assert!(residual <= bound);
    }

    #[test]
    fn residual_rejects_bad_family() {
        let t = Mat2::t();
        assert!(wbg_residual(&Rademacher, &t, &[(t.clone(), 3)], 8).is_err());
        assert!(wbg_residual(&Rademacher, &t, &[], 8).is_err());
    }
}
