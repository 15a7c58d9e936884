//! Quasimorphisms: evaluation, certified homogenization, defect search.
//!
//! All values are exact rationals. A quasimorphism declares an upper bound on
//! its defect; every downstream certificate is sound conditional on that
//! declaration, which `defect_search` stress-tests from below.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::group::GroupElement;

mod brooks;
mod dedekind;
mod phi;

pub use brooks::{brooks_value, Brooks};
pub use dedekind::dedekind_sum;
pub use phi::{
    dedekind_phi, phi_cocycle_defect, rademacher, rademacher_proj, DedekindPhi, Rademacher,
    RademacherProj,
};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum QmError {
    Domain(String),
    /// A declared invariant of the implementation failed; certificates from
    /// this quasimorphism must not be trusted.
    Internal(String),
}

impl fmt::Display for QmError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            QmError::Domain(msg) => write!(f, "domain error: {msg}"),
            QmError::Internal(msg) => write!(f, "internal invariant violated: {msg}"),
        }
    }
}

impl core::error::Error for QmError {}

/// How a certified value was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Provenance {
    ExactFormula,
    /// Homogenization limit estimated at the given power.
    LimitEstimate { n: u64 },
}

/// An exact rational interval guaranteed to contain the true value whenever
/// the declared defect upper bound is valid.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CertifiedValue {
    lo: BigRational,
    hi: BigRational,
    provenance: Provenance,
}

impl CertifiedValue {
    pub fn new(lo: BigRational, hi: BigRational, provenance: Provenance) -> Self {
        assert!(lo <= hi, "certified interval with lo > hi");
        CertifiedValue { lo, hi, provenance }
    }

    pub fn exact(v: BigRational) -> Self {
        CertifiedValue {
            lo: v.clone(),
            hi: v,
            provenance: Provenance::ExactFormula,
        }
    }

    pub fn lo(&self) -> &BigRational {
        &self.lo
    }

    pub fn hi(&self) -> &BigRational {
        &self.hi
    }

    pub fn provenance(&self) -> Provenance {
        self.provenance
    }

    pub fn width(&self) -> BigRational {
        &self.hi - &self.lo
    }

    pub fn contains(&self, v: &BigRational) -> bool {
        self.lo <= *v && *v <= self.hi
    }

    pub fn contains_zero(&self) -> bool {
        !self.lo.is_positive() && !self.hi.is_negative()
    }

    /// Interval enclosing the absolute value.
    pub fn abs(&self) -> CertifiedValue {
        let (lo, hi) = if !self.lo.is_negative() {
            (self.lo.clone(), self.hi.clone())
        } else if !self.hi.is_positive() {
            (-self.hi.clone(), -self.lo.clone())
        } else {
            let m = if -&self.lo > self.hi {
                -self.lo.clone()
            } else {
                self.hi.clone()
            };
            (BigRational::zero(), m)
        };
        CertifiedValue {
            lo,
            hi,
            provenance: self.provenance,
        }
    }

    /// The integers inside the interval, smallest first.
    pub fn integers_contained(&self) -> Vec<BigInt> {
        let mut out = Vec::new();
        let mut k = self.lo.ceil().to_integer();
        while BigRational::from(k.clone()) <= self.hi {
            out.push(k.clone());
            k += 1;
        }
        out
    }
}

/// An evaluable quasimorphism with a declared defect upper bound.
pub trait Quasimorphism {
    type Elt: GroupElement;

    /// Registry id, e.g. `dedekind-phi` or `brooks:a1 a2`.
    fn id(&self) -> String;

    fn evaluate(&self, g: &Self::Elt) -> BigRational;

    /// Declared upper bound for the defect `D(f)`.
    fn defect_upper(&self) -> BigRational;

    fn is_homogeneous(&self) -> bool;
}

/// Certified evaluation at a fixed power: `f(g^n)/n` with two-sided error
/// `D(f)/n`, from the standard bound on the homogenization limit.
pub fn homogenize_at<Q: Quasimorphism>(f: &Q, g: &Q::Elt, n: u64) -> CertifiedValue {
    assert!(n >= 1, "homogenization power must be positive");
    let gn = g.power(n as i64);
    let n_rat = BigRational::from(BigInt::from(n));
    let center = f.evaluate(&gn) / &n_rat;
    let err = f.defect_upper() / &n_rat;
    CertifiedValue::new(&center - &err, &center + &err, Provenance::LimitEstimate { n })
}

/// Certified homogenized value with interval width at most `target_width`.
///
/// Picks the smallest power `n` with `2 D(f)/n <= target_width`; a single
/// large power suffices because the error bound is explicit.
pub fn homogenize<Q: Quasimorphism>(
    f: &Q,
    g: &Q::Elt,
    target_width: &BigRational,
) -> Result<CertifiedValue, QmError> {
    if !target_width.is_positive() {
        return Err(QmError::Domain(String::from(
            "target width must be positive",
        )));
    }
    let d = f.defect_upper();
    let n = if d.is_zero() {
        1u64
    } else {
        let needed = (BigRational::from(BigInt::from(2)) * &d / target_width)
            .ceil()
            .to_integer();
        needed.to_u64().ok_or_else(|| {
            QmError::Domain(String::from("target width requires an impractical power"))
        })?
        .max(1)
    };
    Ok(homogenize_at(f, g, n))
}

/// Largest cocycle deviation `|f(xy) - f(x) - f(y)|` over all pairs from the
/// ball of products of at most `radius` generators.
///
/// The result is a certified lower bound for the true defect `D(f)`. The
/// search is deterministic; `cap` bounds the number of stored ball elements.
pub fn defect_search<Q: Quasimorphism + ?Sized>(
    f: &Q,
    generators: &[Q::Elt],
    radius: u32,
    cap: usize,
) -> Result<BigRational, DefectSearchError> {
    assert!(radius >= 1, "radius must be positive");
    let first = generators
        .first()
        .expect("defect search needs at least one generator");
    let mut ball: BTreeSet<Q::Elt> = BTreeSet::new();
    ball.insert(first.identity_like());
    let mut frontier: Vec<Q::Elt> = alloc::vec![first.identity_like()];
    let mut truncated_at = None;
    'bfs: for layer in 1..=radius {
        let mut next = Vec::new();
        for x in &frontier {
            for s in generators {
                let p = x.mul(s).expect("generators from one instance");
                if ball.insert(p.clone()) {
                    if ball.len() > cap {
                        truncated_at = Some(layer - 1);
                        break 'bfs;
                    }
                    next.push(p);
                }
            }
        }
        frontier = next;
    }

    let values: BTreeMap<&Q::Elt, BigRational> =
        ball.iter().map(|x| (x, f.evaluate(x))).collect();
    let mut max = BigRational::zero();
    for (x, fx) in &values {
        for (y, fy) in &values {
            let fxy = f.evaluate(&x.mul(y).expect("same instance"));
            let dev = (&fxy - fx - fy).abs();
            if dev > max {
                max = dev;
            }
        }
    }
    match truncated_at {
        None => Ok(max),
        Some(radius_reached) => Err(DefectSearchError {
            partial_lower_bound: max,
            radius_reached,
        }),
    }
}

/// Memory cap exceeded during defect search. The partial maximum is still a
/// valid lower bound for the defect.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DefectSearchError {
    pub partial_lower_bound: BigRational,
    pub radius_reached: u32,
}

impl fmt::Display for DefectSearchError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "defect search exceeded memory cap at radius {}; partial lower bound {}",
            self.radius_reached, self.partial_lower_bound
        )
    }
}

impl core::error::Error for DefectSearchError {}

pub(crate) fn big_rational_int(n: i64) -> BigRational {
    BigRational::from(BigInt::from(n))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::Mat2;
    use num_traits::One;

    #[test]
    fn certified_interval_abs_and_integers() {
        let v = CertifiedValue::new(
            big_rational_int(-3) / big_rational_int(4),
            big_rational_int(5) / big_rational_int(4),
            Provenance::ExactFormula,
        );
        assert!(v.contains_zero());
        let a = v.abs();
        assert_eq!(*a.lo(), BigRational::zero());
        assert_eq!(*a.hi(), big_rational_int(5) / big_rational_int(4));
        assert_eq!(v.integers_contained(), alloc::vec![BigInt::from(0), BigInt::from(1)]);
    }

    #[test]
    fn homogenize_width_contract() {
        let phi = DedekindPhi;
        let g = Mat2::t();
        let w = big_rational_int(1) / big_rational_int(4);
        let v = homogenize(&phi, &g, &w).unwrap();
        assert!(v.width() <= w);
        assert!(v.contains(&BigRational::one()));
        match v.provenance() {
            Provenance::LimitEstimate { n } => assert_eq!(n, 24),
            p => panic!("unexpected provenance {p:?}"),
        }
    }

    #[test]
    fn homogenize_rejects_bad_width() {
        assert!(homogenize(&DedekindPhi, &Mat2::t(), &BigRational::zero()).is_err());
    }

    #[test]
    fn homogenize_identity_contains_zero() {
        let v = homogenize(&DedekindPhi, &Mat2::identity(), &big_rational_int(1)).unwrap();
        assert!(v.contains(&BigRational::zero()));
    }

    #[test]
    fn interval_width_halves_when_power_doubles() {
        let phi = DedekindPhi;
        let g = Mat2::from_i64(2, 1, 1, 1).unwrap();
        for n in [1u64, 2, 4, 8, 16, 32] {
            let w1 = homogenize_at(&phi, &g, n).width();
            let w2 = homogenize_at(&phi, &g, 2 * n).width();
            assert_eq!(w2 * big_rational_int(2), w1);
        }
    }
}
