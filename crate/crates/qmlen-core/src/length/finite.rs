//! Exact commutator/torsion lengths in fully enumerable finite groups, and
//! syllable-based torsion-length upper bounds in the projective group.

use alloc::format;
use alloc::vec::Vec;

use super::{ball, length_exact, GeneratingSet, LengthError, LengthResult};
use crate::cert::{Claim, FactorizationWitness};
use crate::group::{psl_normal_form, GroupElement, Perm, ProjMat2};

/// Largest degree for which the full symmetric group is enumerated (8! =
/// 40320 elements keeps brute-force oracles fast).
pub const DEFAULT_DEGREE_CAP: u8 = 8;

/// All permutations of the given degree, via ball saturation over the
/// adjacent transpositions.
pub fn enumerate_symmetric_group(degree: u8) -> Result<Vec<Perm>, LengthError> {
    if degree > DEFAULT_DEGREE_CAP {
        return Err(LengthError::TooLarge(format!(
            "degree {degree} exceeds enumeration cap {DEFAULT_DEGREE_CAP}"
        )));
    }
    if degree < 2 {
        return Ok(alloc::vec![Perm::identity(degree)]);
    }
    let gens: Vec<Perm> = (0..degree - 1)
        .map(|i| Perm::transposition(degree, i, i + 1).expect("valid points"))
        .collect();
    let s = GeneratingSet::new("adjacent transpositions", gens)?;
    // Diameter of S_n over adjacent transpositions is n(n-1)/2.
    let radius = (degree as u32) * (degree as u32 - 1) / 2;
    let b = ball(&s, radius, super::DEFAULT_MEMORY_CAP)?;
    Ok(b.into_keys().collect())
}

/// The set of commutators `{x y x^-1 y^-1}` of the listed elements, deduped.
pub fn commutator_set(group: &[Perm]) -> Vec<Perm> {
    let mut out: alloc::collections::BTreeSet<Perm> = alloc::collections::BTreeSet::new();
    for x in group {
        for y in group {
            out.insert(x.commutator(y).expect("same degree"));
        }
    }
    out.into_iter().collect()
}

/// Exact commutator length of `g` in the full symmetric group of its degree.
///
/// Enumerates the whole group and the whole commutator set, then searches.
/// Exact by finiteness; elements outside the subgroup generated by the
/// commutators come back as `AtLeast`.
pub fn commutator_length_finite(g: &Perm) -> Result<LengthResult, LengthError> {
    let group = enumerate_symmetric_group(g.degree())?;
    if g.is_identity() {
        return Ok(LengthResult::exact(0, 0));
    }
    let commutators: Vec<Perm> = commutator_set(&group)
        .into_iter()
        .filter(|c| !c.is_identity())
        .collect();
    let s = GeneratingSet::new("commutators", commutators)?;
    let max_radius = group.len() as u32;
    length_exact(g, &s, max_radius, super::DEFAULT_MEMORY_CAP)
}

/// Exact torsion length of `g` in the full symmetric group of its degree.
///
/// Every element of a finite group is torsion, so this is 0 for the identity
/// and 1 otherwise; it is still computed as a degenerate length search over
/// `T` = all nonidentity elements and checked against that expectation.
pub fn torsion_length_finite(g: &Perm) -> Result<LengthResult, LengthError> {
    let group = enumerate_symmetric_group(g.degree())?;
    if g.is_identity() {
        return Ok(LengthResult::exact(0, 0));
    }
    let torsion: Vec<Perm> = group.into_iter().filter(|p| !p.is_identity()).collect();
    let s = GeneratingSet::new("all nonidentity elements", torsion)?;
    let result = length_exact(g, &s, 2, super::DEFAULT_MEMORY_CAP)?;
    assert_eq!(
        result.kind,
        super::LengthKind::Exact(1),
        "nonidentity element of a finite group must have torsion length 1"
    );
    Ok(result)
}

/// Torsion-length upper bound for a nonidentity projective class: the
/// syllable count of its free-product normal form, with the syllables (each
/// of order 2 or 3) as a verifiable witness.
pub fn torsion_length_upper_projective(
    g: &ProjMat2,
) -> Result<(u32, FactorizationWitness<ProjMat2>), LengthError> {
    if g.is_identity() {
        return Err(LengthError::Domain(alloc::string::String::from(
            "torsion-length witness needs a nonidentity element",
        )));
    }
    let word = psl_normal_form(g);
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
    let count = factors.len() as u32;
    Ok((count, FactorizationWitness::new(g.clone(), factors)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cert::verify_witness;
    use crate::group::Mat2;
    use crate::length::LengthKind;

    #[test]
    fn symmetric_group_sizes() {
        assert_eq!(enumerate_symmetric_group(3).unwrap().len(), 6);
        assert_eq!(enumerate_symmetric_group(4).unwrap().len(), 24);
        assert!(enumerate_symmetric_group(9).is_err());
    }

    #[test]
    fn commutator_length_in_s4() {
        let id = Perm::identity(4);
        assert_eq!(commutator_length_finite(&id).unwrap().kind, LengthKind::Exact(0));
        // commutators of S4 form A4; every nonidentity element of A4 is a
        // commutator
        let three_cycle = Perm::from_cycles(4, &[alloc::vec![0, 1, 2]]).unwrap();
        assert_eq!(
            commutator_length_finite(&three_cycle).unwrap().kind,
            LengthKind::Exact(1)
        );
        // odd permutations are unreachable
        let odd = Perm::transposition(4, 0, 1).unwrap();
        assert!(matches!(
            commutator_length_finite(&odd).unwrap().kind,
            LengthKind::AtLeast(_)
        ));
    }

    #[test]
    fn torsion_length_in_finite_groups() {
        assert_eq!(
            torsion_length_finite(&Perm::identity(5)).unwrap().kind,
            LengthKind::Exact(0)
        );
        let t = Perm::transposition(5, 0, 1).unwrap();
        assert_eq!(torsion_length_finite(&t).unwrap().kind, LengthKind::Exact(1));
        let five_cycle = Perm::from_cycles(5, &[alloc::vec![0, 1, 2, 3, 4]]).unwrap();
        assert_eq!(
            torsion_length_finite(&five_cycle).unwrap().kind,
            LengthKind::Exact(1)
        );
    }

    #[test]
    fn projective_torsion_witnesses() {
        let s = ProjMat2::s();
        let (k, w) = torsion_length_upper_projective(&s).unwrap();
        assert_eq!(k, 1);
        assert!(verify_witness(&w).is_ok());

        let t = ProjMat2::t();
        let (k, w) = torsion_length_upper_projective(&t).unwrap();
        assert!(k >= 2);
        assert!(verify_witness(&w).is_ok());

        assert!(torsion_length_upper_projective(&ProjMat2::identity()).is_err());
    }

    #[test]
    fn projective_witness_counts_nondecreasing_for_parabolic_powers() {
        let t = ProjMat2::t();
        let mut prev = 0;
        for n in 1..=50i64 {
            let (k, w) = torsion_length_upper_projective(&t.power(n)).unwrap();
            assert!(verify_witness(&w).is_ok());
            assert!(k >= prev, "witness count dropped at n={n}");
            prev = k;
        }
    }

    #[test]
    fn hyperbolic_witness_verifies() {
        let g = ProjMat2::new(Mat2::from_i64(2, 1, 1, 1).unwrap());
        let (k, w) = torsion_length_upper_projective(&g.power(3)).unwrap();
        assert!(k >= 2);
        assert!(verify_witness(&w).is_ok());
    }
}
