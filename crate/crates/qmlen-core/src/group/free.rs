//! Freely reduced words in a free group of fixed rank.

use alloc::format;
use alloc::vec::Vec;
use core::fmt;

use super::{GroupElement, GroupError, Order};

/// A freely reduced word. Letters are nonzero integers: `i` is the `i`-th
/// generator, `-i` its inverse, with `1 <= |i| <= rank`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FreeWord {
    rank: u32,
    letters: Vec<i32>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum WordError {
    ZeroLetter,
    LetterOutOfRange { letter: i32, rank: u32 },
}

impl fmt::Display for WordError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            WordError::ZeroLetter => write!(f, "letter 0 is not a generator"),
            WordError::LetterOutOfRange { letter, rank } => {
                write!(f, "letter {letter} out of range for rank {rank}")
            }
        }
    }
}

impl core::error::Error for WordError {}

impl FreeWord {
    pub fn identity(rank: u32) -> Self {
        FreeWord {
            rank,
            letters: Vec::new(),
        }
    }

    /// The `index`-th generator, `1 <= index <= rank`.
    pub fn generator(rank: u32, index: u32) -> Result<Self, WordError> {
        Self::from_letters(rank, &[index as i32])
    }

    /// Builds a word from raw letters, reducing adjacent inverse pairs.
    pub fn from_letters(rank: u32, letters: &[i32]) -> Result<Self, WordError> {
        let mut reduced: Vec<i32> = Vec::with_capacity(letters.len());
        for &l in letters {
            if l == 0 {
                return Err(WordError::ZeroLetter);
            }
            if l.unsigned_abs() > rank {
                return Err(WordError::LetterOutOfRange { letter: l, rank });
            }
            push_reduced(&mut reduced, l);
        }
        Ok(FreeWord {
            rank,
            letters: reduced,
        })
    }

    pub fn rank(&self) -> u32 {
        self.rank
    }

    pub fn letters(&self) -> &[i32] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }
}

fn push_reduced(buf: &mut Vec<i32>, letter: i32) {
    if buf.last() == Some(&-letter) {
        buf.pop();
    } else {
        buf.push(letter);
    }
}

impl GroupElement for FreeWord {
    fn identity_like(&self) -> Self {
        FreeWord::identity(self.rank)
    }

    fn inverse(&self) -> Self {
        FreeWord {
            rank: self.rank,
            letters: self.letters.iter().rev().map(|&l| -l).collect(),
        }
    }

    fn mul(&self, rhs: &Self) -> Result<Self, GroupError> {
        if self.rank != rhs.rank {
            return Err(GroupError {
                left: format!("free group of rank {}", self.rank),
                right: format!("free group of rank {}", rhs.rank),
            });
        }
        let mut letters = self.letters.clone();
        for &l in &rhs.letters {
            push_reduced(&mut letters, l);
        }
        Ok(FreeWord {
            rank: self.rank,
            letters,
        })
    }

    fn order(&self) -> Order {
        if self.letters.is_empty() {
            Order::Finite(1)
        } else {
            Order::Infinite
        }
    }
}

impl fmt::Display for FreeWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return write!(f, "e");
        }
        for (i, &l) in self.letters.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            if l > 0 {
                write!(f, "a{l}")?;
            } else {
                write!(f, "a{}'", -l)?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reduction_cancels_inverse_pairs() {
        let w = FreeWord::from_letters(2, &[1, 2, -2, -1, 1]).unwrap();
        assert_eq!(w.letters(), &[1]);
    }

    #[test]
    fn word_times_inverse_is_identity() {
        let w = FreeWord::from_letters(2, &[1, 2, 1, -2]).unwrap();
        assert!(w.mul(&w.inverse()).unwrap().is_identity());
        assert!(w.inverse().mul(&w).unwrap().is_identity());
    }

    #[test]
    fn commutator_of_generators_has_length_four() {
        let a = FreeWord::generator(2, 1).unwrap();
        let b = FreeWord::generator(2, 2).unwrap();
        let c = a.commutator(&b).unwrap();
        assert_eq!(c.letters(), &[1, 2, -1, -2]);
    }

    #[test]
    fn letters_out_of_range_rejected() {
        assert!(FreeWord::from_letters(2, &[3]).is_err());
        assert!(FreeWord::from_letters(2, &[0]).is_err());
    }

    #[test]
    fn rank_mismatch_is_domain_error() {
        let a = FreeWord::generator(2, 1).unwrap();
        let b = FreeWord::generator(3, 1).unwrap();
        assert!(a.mul(&b).is_err());
    }

    #[test]
    fn order_is_infinite_except_identity() {
        let a = FreeWord::generator(2, 1).unwrap();
        assert_eq!(a.order(), Order::Infinite);
        assert_eq!(FreeWord::identity(2).order(), Order::Finite(1));
    }
}
