//! Brooks counting quasimorphisms on free groups.

use alloc::format;
use alloc::string::String;

use num_bigint::BigInt;
use num_rational::BigRational;

use super::{QmError, Quasimorphism};
use crate::group::{FreeWord, GroupElement};

/// Signed count of occurrences of `w` as a subword of `g`: occurrences of `w`
/// minus occurrences of `w^-1`, counting overlaps. Both words must be reduced
/// (guaranteed by construction) and over the same rank.
pub fn brooks_value(w: &FreeWord, g: &FreeWord) -> Result<i64, QmError> {
    if w.is_empty() {
        return Err(QmError::Domain(String::from(
            "brooks pattern must be nonempty",
        )));
    }
    if w.rank() != g.rank() {
        return Err(QmError::Domain(format!(
            "pattern rank {} differs from argument rank {}",
            w.rank(),
            g.rank()
        )));
    }
    Ok(count_subword(w.letters(), g.letters())
        - count_subword(w.inverse().letters(), g.letters()))
}

fn count_subword(pattern: &[i32], text: &[i32]) -> i64 {
    if pattern.len() > text.len() {
        return 0;
    }
    text.windows(pattern.len())
        .filter(|win| *win == pattern)
        .count() as i64
}

/// A Brooks counting quasimorphism with its declared defect upper bound.
///
/// The default bound is `max(0, 2(2|w| - 3))`; a single letter counts a
/// homomorphism, hence defect 0.
#[derive(Debug, Clone)]
pub struct Brooks {
    pattern: FreeWord,
    defect_upper: BigRational,
}

impl Brooks {
    pub fn new(pattern: FreeWord) -> Result<Self, QmError> {
        if pattern.is_empty() {
            return Err(QmError::Domain(String::from(
                "brooks pattern must be nonempty",
            )));
        }
        let formula = 2 * (2 * pattern.len() as i64 - 3);
        let defect_upper = BigRational::from(BigInt::from(formula.max(0)));
        Ok(Brooks {
            pattern,
            defect_upper,
        })
    }

    pub fn with_defect(pattern: FreeWord, defect_upper: BigRational) -> Result<Self, QmError> {
        let mut qm = Brooks::new(pattern)?;
        qm.defect_upper = defect_upper;
        Ok(qm)
    }

    pub fn pattern(&self) -> &FreeWord {
        &self.pattern
    }
}

impl Quasimorphism for Brooks {
    type Elt = FreeWord;

    fn id(&self) -> String {
        format!("brooks:{}", self.pattern)
    }

    fn evaluate(&self, g: &FreeWord) -> BigRational {
        BigRational::from(BigInt::from(
            brooks_value(&self.pattern, g).expect("validated pattern and rank"),
        ))
    }

    fn defect_upper(&self) -> BigRational {
        self.defect_upper.clone()
    }

    fn is_homogeneous(&self) -> bool {
        false
    }
}
