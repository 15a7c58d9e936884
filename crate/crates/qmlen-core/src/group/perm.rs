//! Permutations of `{0, ..., degree-1}`, the finite-group testbed.

use alloc::format;
use alloc::vec::Vec;
use core::fmt;

use num_integer::Integer;

use super::{GroupElement, GroupError, Order};

/// A permutation stored as its image table: `images[i]` is the image of `i`.
/// Products compose right-to-left: `(x*y)(i) = x(y(i))`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Perm {
    images: Vec<u8>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PermError {
    NotABijection,
    PointOutOfRange { point: u8, degree: u8 },
}

impl fmt::Display for PermError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PermError::NotABijection => write!(f, "image table is not a bijection"),
            PermError::PointOutOfRange { point, degree } => {
                write!(f, "point {point} out of range for degree {degree}")
            }
        }
    }
}

impl core::error::Error for PermError {}

impl Perm {
    pub fn identity(degree: u8) -> Self {
        Perm {
            images: (0..degree).collect(),
        }
    }

    pub fn from_images(images: Vec<u8>) -> Result<Self, PermError> {
        let degree = images.len() as u8;
        let mut seen = [false; 256];
        for &i in &images {
            if i >= degree {
                return Err(PermError::PointOutOfRange { point: i, degree });
            }
            if seen[i as usize] {
                return Err(PermError::NotABijection);
            }
            seen[i as usize] = true;
        }
        Ok(Perm { images })
    }

    /// Builds a permutation from disjoint cycles.
    pub fn from_cycles(degree: u8, cycles: &[Vec<u8>]) -> Result<Self, PermError> {
        let mut images: Vec<u8> = (0..degree).collect();
        let mut moved = [false; 256];
        for cycle in cycles {
            for (k, &p) in cycle.iter().enumerate() {
                if p >= degree {
                    return Err(PermError::PointOutOfRange { point: p, degree });
                }
                if moved[p as usize] {
                    return Err(PermError::NotABijection);
                }
                moved[p as usize] = true;
                images[p as usize] = cycle[(k + 1) % cycle.len()];
            }
        }
        Perm::from_images(images)
    }

    pub fn transposition(degree: u8, i: u8, j: u8) -> Result<Self, PermError> {
        Perm::from_cycles(degree, &[alloc::vec![i, j]])
    }

    pub fn degree(&self) -> u8 {
        self.images.len() as u8
    }

    pub fn images(&self) -> &[u8] {
        &self.images
    }

    pub fn apply(&self, point: u8) -> u8 {
        self.images[point as usize]
    }

    /// Cycle decomposition, fixed points omitted, each cycle starting at its
    /// smallest point, cycles ordered by that point.
    pub fn cycles(&self) -> Vec<Vec<u8>> {
        let n = self.images.len();
        let mut seen = alloc::vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] || self.images[start] as usize == start {
                continue;
            }
            let mut cycle = Vec::new();
            let mut p = start;
            while !seen[p] {
                seen[p] = true;
                cycle.push(p as u8);
                p = self.images[p] as usize;
            }
            out.push(cycle);
        }
        out
    }

    pub fn is_even(&self) -> bool {
        self.cycles().iter().map(|c| c.len() - 1).sum::<usize>() % 2 == 0
    }
}

impl GroupElement for Perm {
    fn identity_like(&self) -> Self {
        Perm::identity(self.degree())
    }

    fn inverse(&self) -> Self {
        let mut images = alloc::vec![0u8; self.images.len()];
        for (i, &img) in self.images.iter().enumerate() {
            images[img as usize] = i as u8;
        }
        Perm { images }
    }

    fn mul(&self, rhs: &Self) -> Result<Self, GroupError> {
        if self.degree() != rhs.degree() {
            return Err(GroupError {
                left: format!("permutations of degree {}", self.degree()),
                right: format!("permutations of degree {}", rhs.degree()),
            });
        }
        Ok(Perm {
            images: rhs.images.iter().map(|&i| self.images[i as usize]).collect(),
        })
    }

    fn order(&self) -> Order {
        let mut m: u64 = 1;
        for cycle in self.cycles() {
            m = m.lcm(&(cycle.len() as u64));
        }
        Order::Finite(m)
    }
}

impl fmt::Display for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return write!(f, "()");
        }
        for cycle in cycles {
            write!(f, "(")?;
            for (k, p) in cycle.iter().enumerate() {
                if k > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{p}")?;
            }
            write!(f, ")")?;
        }
        Ok(())
    }
}
