//! Free-product normal forms in the projective matrix group.
//!
//! The projective group is the free product of the cyclic groups generated by
//! `S` (order 2) and `U = S*T` (order 3), so every element has a unique
//! alternating word in the syllables `S`, `U`, `U^2`. Each syllable is itself
//! a torsion element, which is what makes these words useful as torsion-length
//! upper-bound witnesses.

use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};

use super::{Mat2, ProjMat2};

/// One syllable of the free-product normal form. `V` denotes `U^2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Syllable {
    S,
    U,
    V,
}

impl Syllable {
    pub fn matrix(self) -> Mat2 {
        match self {
            Syllable::S => Mat2::s(),
            Syllable::U => Mat2::u(),
            Syllable::V => Mat2::u().mul_unchecked(&Mat2::u()),
        }
    }

    /// Order of the syllable in the projective group.
    pub fn order(self) -> u64 {
        match self {
            Syllable::S => 2,
            Syllable::U | Syllable::V => 3,
        }
    }

    fn same_factor(self, other: Syllable) -> bool {
        matches!(
            (self, other),
            (Syllable::S, Syllable::S)
                | (Syllable::U | Syllable::V, Syllable::U | Syllable::V)
        )
    }
}

/// An alternating word over `{S, U, V}`: no two adjacent syllables come from
/// the same free factor.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SyllableWord {
    syllables: Vec<Syllable>,
}

impl SyllableWord {
    pub fn empty() -> Self {
        SyllableWord {
            syllables: Vec::new(),
        }
    }

    /// Builds a word from raw syllables, reducing within each free factor
    /// (`S S` cancels, `U`-powers add mod 3) until the result alternates.
    pub fn from_syllables<I: IntoIterator<Item = Syllable>>(syllables: I) -> Self {
        let mut stack: Vec<Syllable> = Vec::new();
        for syl in syllables {
            push_reduced(&mut stack, syl);
        }
        SyllableWord { syllables: stack }
    }

    pub fn syllables(&self) -> &[Syllable] {
        &self.syllables
    }

    pub fn len(&self) -> usize {
        self.syllables.len()
    }

    pub fn is_empty(&self) -> bool {
        self.syllables.is_empty()
    }

    pub fn is_alternating(&self) -> bool {
        self.syllables
            .windows(2)
            .all(|w| !w[0].same_factor(w[1]))
    }

    /// Multiplies the syllables out in the projective group.
    pub fn evaluate(&self) -> ProjMat2 {
        let mut acc = Mat2::identity();
        for syl in &self.syllables {
            acc = acc.mul_unchecked(&syl.matrix());
        }
        ProjMat2::new(acc)
    }
}

fn push_reduced(stack: &mut Vec<Syllable>, syl: Syllable) {
    match (stack.last().copied(), syl) {
        (Some(Syllable::S), Syllable::S) => {
            stack.pop();
        }
        (Some(top @ (Syllable::U | Syllable::V)), incoming @ (Syllable::U | Syllable::V)) => {
            let e = (u_exponent(top) + u_exponent(incoming)) % 3;
            stack.pop();
            match e {
                0 => {}
                1 => stack.push(Syllable::U),
                _ => stack.push(Syllable::V),
            }
        }
        _ => stack.push(syl),
    }
}

fn u_exponent(s: Syllable) -> u32 {
    match s {
        Syllable::U => 1,
        Syllable::V => 2,
        Syllable::S => unreachable!(),
    }
}

impl fmt::Display for SyllableWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.syllables.is_empty() {
            return write!(f, "e");
        }
        for syl in &self.syllables {
            let c = match syl {
                Syllable::S => 'S',
                Syllable::U => 'U',
                Syllable::V => 'V',
            };
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

/// The unique alternating word in `S` and `U` whose evaluation equals `g`.
///
/// The matrix is first written as `T^{q_1} S T^{q_2} S ... S T^{q_r}` by a
/// continued-fraction reduction of the bottom-left entry (each step replaces
/// `g` by `S T^{-q} g` with `q` the nearest integer to `a/c`, which at least
/// halves `|c|`), and the parabolic blocks are then rewritten through
/// `T = S U` and `T^{-1} = U^2 S` and reduced in the free product.
pub fn psl_normal_form(g: &ProjMat2) -> SyllableWord {
    let mut raw: Vec<Syllable> = Vec::new();
    let mut m = g.rep().clone();
    // |c| at least halves each step, so this terminates for every input.
    while !m.c().is_zero() {
        let q = BigRational::new(m.a().clone(), m.c().clone())
            .round()
            .to_integer();
        push_t_power(&mut raw, &q);
        raw.push(Syllable::S);
        // m <- S * T^{-q} * m
        let a2 = m.a() - &q * m.c();
        let b2 = m.b() - &q * m.d();
        m = Mat2::new(-m.c().clone(), -m.d().clone(), a2, b2)
            .expect("determinant preserved by row operations");
    }
    // c = 0 forces a = d = +-1, so the residue is T^(b*d) up to sign.
    let e = m.b() * m.d();
    push_t_power(&mut raw, &e);
    let word = SyllableWord::from_syllables(raw);
    debug_assert!(word.is_alternating());
    word
}

fn push_t_power(out: &mut Vec<Syllable>, q: &BigInt) {
    let reps = q
        .abs()
        .to_u64()
        .expect("parabolic exponent exceeds expansion limit");
    if q.is_positive() {
        for _ in 0..reps {
            out.push(Syllable::S);
            out.push(Syllable::U);
        }
    } else {
        for _ in 0..reps {
            out.push(Syllable::V);
            out.push(Syllable::S);
        }
    }
}
