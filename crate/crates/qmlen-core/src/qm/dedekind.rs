//! Dedekind sums by the Euclid-style reciprocity recursion.

use alloc::string::String;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use super::QmError;

/// The Dedekind sum `s(d, c)` for `c >= 1`.
///
/// Runs in `O(log c)` arithmetic steps via the generalized reciprocity law
///
/// ```text
/// s(h,k) + s(k,h) = -1/4 + (h^2 + k^2 + gcd(h,k)^2) / (12 h k)
/// ```
///
/// applied along the Euclidean remainder sequence, so non-coprime arguments
/// are handled too. Agrees with the direct `O(c)` sawtooth summation.
pub fn dedekind_sum(d: &BigInt, c: &BigInt) -> Result<BigRational, QmError> {
    if !c.is_positive() {
        return Err(QmError::Domain(String::from(
            "dedekind sum needs a positive denominator",
        )));
    }
    let twelve = BigInt::from(12);
    let quarter = BigRational::new(BigInt::from(1), BigInt::from(4));

    let mut h = d.mod_floor(c);
    let mut k = c.clone();
    let mut acc = BigRational::zero();
    let mut sign = true;
    while !h.is_zero() {
        let g = h.gcd(&k);
        let num = &h * &h + &k * &k + &g * &g;
        let den = &twelve * &h * &k;
        let term = BigRational::new(num, den) - &quarter;
        if sign {
            acc += term;
        } else {
            acc -= term;
        }
        sign = !sign;
        let r = k.mod_floor(&h);
        k = h;
        h = r;
    }
    Ok(acc)
}
