//! Exact S-length computation by exhaustive ball search.
//!
//! Search is only ever run over finite generating sets (or fully enumerable
//! finite groups). Infinite S in infinite groups is handled exclusively by
//! the certificate system, never here.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

mod finite;

pub use finite::{
    commutator_length_finite, commutator_set, enumerate_symmetric_group, torsion_length_finite,
    torsion_length_upper_projective,
};

use crate::group::{GroupElement, GroupError};

/// Default cap on stored canonical forms during ball search.
pub const DEFAULT_MEMORY_CAP: usize = 1 << 22;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LengthError {
    EmptyGeneratingSet,
    Group(GroupError),
    /// Memory cap hit; `completed_radius` layers were fully explored.
    Resource { completed_radius: u32 },
    TooLarge(String),
    Domain(String),
}

impl fmt::Display for LengthError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LengthError::EmptyGeneratingSet => write!(f, "generating set is empty"),
            LengthError::Group(e) => write!(f, "{e}"),
            LengthError::Resource { completed_radius } => write!(
                f,
                "memory cap exceeded after completing radius {completed_radius}"
            ),
            LengthError::TooLarge(msg) => write!(f, "{msg}"),
            LengthError::Domain(msg) => write!(f, "{msg}"),
        }
    }
}

impl core::error::Error for LengthError {}

impl From<GroupError> for LengthError {
    fn from(e: GroupError) -> Self {
        LengthError::Group(e)
    }
}

/// A finite generating (or factor) set. Duplicated canonical forms are
/// dropped at construction; the `symmetric` flag records closure under
/// inverses.
#[derive(Debug, Clone)]
pub struct GeneratingSet<G: GroupElement> {
    elements: Vec<G>,
    symmetric: bool,
    label: String,
}

impl<G: GroupElement> GeneratingSet<G> {
    pub fn new(label: impl Into<String>, elements: Vec<G>) -> Result<Self, LengthError> {
        if elements.is_empty() {
            return Err(LengthError::EmptyGeneratingSet);
        }
        let mut dedup: Vec<G> = Vec::with_capacity(elements.len());
        for e in elements {
            if !dedup.contains(&e) {
                dedup.push(e);
            }
        }
        let symmetric = dedup.iter().all(|e| dedup.contains(&e.inverse()));
        Ok(GeneratingSet {
            elements: dedup,
            symmetric,
            label: label.into(),
        })
    }

    /// Adds any missing inverses.
    pub fn symmetrized(label: impl Into<String>, elements: Vec<G>) -> Result<Self, LengthError> {
        let mut all = elements.clone();
        all.extend(elements.iter().map(GroupElement::inverse));
        let s = GeneratingSet::new(label, all)?;
        debug_assert!(s.symmetric);
        Ok(s)
    }

    pub fn elements(&self) -> &[G] {
        &self.elements
    }

    pub fn is_symmetric(&self) -> bool {
        self.symmetric
    }

    pub fn label(&self) -> &str {
        &self.label
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LengthKind {
    /// A factorization of this length exists and none shorter does.
    Exact(u32),
    /// Exhaustive search proved no factorization with fewer factors exists.
    AtLeast(u32),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LengthResult {
    pub kind: LengthKind,
    /// Layers fully explored; smaller than the requested radius only when the
    /// search was truncated by the memory cap or by saturation.
    pub radius_searched: u32,
}

impl LengthResult {
    pub fn exact(k: u32, radius_searched: u32) -> Self {
        LengthResult {
            kind: LengthKind::Exact(k),
            radius_searched,
        }
    }

    pub fn at_least(k: u32, radius_searched: u32) -> Self {
        LengthResult {
            kind: LengthKind::AtLeast(k),
            radius_searched,
        }
    }
}

impl fmt::Display for LengthResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            LengthKind::Exact(k) => write!(f, "Exact({k})"),
            LengthKind::AtLeast(k) => write!(f, "AtLeast({k})"),
        }
    }
}

/// Breadth-first enumeration of all products of at most `radius` elements of
/// `s`, mapped to the minimal factor count. The identity maps to 0.
pub fn ball<G: GroupElement>(
    s: &GeneratingSet<G>,
    radius: u32,
    cap: usize,
) -> Result<BTreeMap<G, u32>, LengthError> {
    let identity = s.elements()[0].identity_like();
    let mut lengths: BTreeMap<G, u32> = BTreeMap::new();
    lengths.insert(identity.clone(), 0);
    let mut frontier = alloc::vec![identity];
    for layer in 1..=radius {
        let mut next = Vec::new();
        for x in &frontier {
            for gen in s.elements() {
                let p = x.mul(gen)?;
                if !lengths.contains_key(&p) {
                    if lengths.len() >= cap {
                        return Err(LengthError::Resource {
                            completed_radius: layer - 1,
                        });
                    }
                    lengths.insert(p.clone(), layer);
                    next.push(p);
                }
            }
        }
        if next.is_empty() {
            break;
        }
        frontier = next;
    }
    Ok(lengths)
}

/// Minimal number of factors from `s` whose product is `g`, by breadth-first
/// search up to `max_radius`.
///
/// `Exact(k)` when found at depth `k`; otherwise `AtLeast(max_radius + 1)`
/// (sound even when the search saturated early, since then no factorization
/// of any length exists). A memory-cap hit downgrades the result to
/// `AtLeast(completed + 1)` with `radius_searched` recording the truncation.
pub fn length_exact<G: GroupElement>(
    g: &G,
    s: &GeneratingSet<G>,
    max_radius: u32,
    cap: usize,
) -> Result<LengthResult, LengthError> {
    let identity = s.elements()[0].identity_like();
    if *g == identity {
        return Ok(LengthResult::exact(0, 0));
    }
    let mut seen: BTreeMap<G, u32> = BTreeMap::new();
    seen.insert(identity.clone(), 0);
    let mut frontier = alloc::vec![identity];
    for layer in 1..=max_radius {
        let mut next = Vec::new();
        for x in &frontier {
            for gen in s.elements() {
                let p = x.mul(gen)?;
                if p == *g {
                    return Ok(LengthResult::exact(layer, layer));
                }
                if !seen.contains_key(&p) {
                    if seen.len() >= cap {
                        return Ok(LengthResult::at_least(layer, layer - 1));
                    }
                    seen.insert(p.clone(), layer);
                    next.push(p);
                }
            }
        }
        if next.is_empty() {
            // Saturated: g is not a product of elements of s at all.
            return Ok(LengthResult::at_least(max_radius + 1, layer));
        }
        frontier = next;
    }
    Ok(LengthResult::at_least(max_radius + 1, max_radius))
}

/// Meet-in-the-middle variant of [`length_exact`]: grows one ball from the
/// identity and one from `g` (by right-dividing generators) and meets them.
/// Must return identical results to the single-ball search.
pub fn length_exact_mitm<G: GroupElement>(
    g: &G,
    s: &GeneratingSet<G>,
    max_radius: u32,
    cap: usize,
) -> Result<LengthResult, LengthError> {
    if g.is_identity() {
        return Ok(LengthResult::exact(0, 0));
    }
    let forward_radius = max_radius / 2 + max_radius % 2;
    let backward_radius = max_radius / 2;

    let forward = ball(s, forward_radius, cap)?;
    // backward[x] = min factors needed to finish from x to g, i.e. lengths of
    // g * (s_i1 ... s_ik)^-1 walks.
    let mut backward: BTreeMap<G, u32> = BTreeMap::new();
    backward.insert(g.clone(), 0);
    let mut frontier = alloc::vec![g.clone()];
    for layer in 1..=backward_radius {
        let mut next = Vec::new();
        for x in &frontier {
            for gen in s.elements() {
                let p = x.mul(&gen.inverse())?;
                if !backward.contains_key(&p) {
                    if backward.len() >= cap {
                        return Err(LengthError::Resource {
                            completed_radius: layer - 1,
                        });
                    }
                    backward.insert(p.clone(), layer);
                    next.push(p);
                }
            }
        }
        if next.is_empty() {
            break;
        }
        frontier = next;
    }

    let mut best: Option<u32> = None;
    for (x, lf) in &forward {
        if let Some(lb) = backward.get(x) {
            let total = lf + lb;
            if total <= max_radius && best.map_or(true, |b| total < b) {
                best = Some(total);
            }
        }
    }
    match best {
        Some(k) => Ok(LengthResult::exact(k, max_radius)),
        None => Ok(LengthResult::at_least(max_radius + 1, max_radius)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{FreeWord, Mat2, Perm};

    fn free_gen_set() -> GeneratingSet<FreeWord> {
        let a = FreeWord::generator(1, 1).unwrap();
        GeneratingSet::new("a,a'", alloc::vec![a.clone(), a.inverse()]).unwrap()
    }

    #[test]
    fn rank_one_ball_is_a_line() {
        let b = ball(&free_gen_set(), 3, DEFAULT_MEMORY_CAP).unwrap();
        assert_eq!(b.len(), 7);
        let a = FreeWord::generator(1, 1).unwrap();
        for k in -3i64..=3 {
            assert_eq!(b.get(&a.power(k)), Some(&(k.unsigned_abs() as u32)));
        }
    }

    #[test]
    fn transposition_ball_covers_s3() {
        let gens: Vec<Perm> = alloc::vec![
            Perm::transposition(3, 0, 1).unwrap(),
            Perm::transposition(3, 0, 2).unwrap(),
            Perm::transposition(3, 1, 2).unwrap(),
        ];
        let s = GeneratingSet::new("transpositions", gens).unwrap();
        assert!(s.is_symmetric());
        let b = ball(&s, 2, DEFAULT_MEMORY_CAP).unwrap();
        assert_eq!(b.len(), 6);
    }

    #[test]
    fn matrix_ball_radius_two() {
        let s = GeneratingSet::new(
            "S,T,T'",
            alloc::vec![Mat2::s(), Mat2::t(), Mat2::t().inverse()],
        )
        .unwrap();
        let b = ball(&s, 2, DEFAULT_MEMORY_CAP).unwrap();
        let ones = b.values().filter(|&&l| l == 1).count();
        let twos = b.values().filter(|&&l| l == 2).count();
        assert_eq!(ones, 3);
        assert!(twos <= 9);
        assert_eq!(b.values().filter(|&&l| l == 0).count(), 1);
    }

    #[test]
    fn length_examples() {
        let s = free_gen_set();
        let a = FreeWord::generator(1, 1).unwrap();
        let r = length_exact(&FreeWord::identity(1), &s, 3, DEFAULT_MEMORY_CAP).unwrap();
        assert_eq!(r.kind, LengthKind::Exact(0));
        let r = length_exact(&a.power(4), &s, 3, DEFAULT_MEMORY_CAP).unwrap();
        assert_eq!(r.kind, LengthKind::AtLeast(4));
        let r = length_exact(&a.power(2), &s, 3, DEFAULT_MEMORY_CAP).unwrap();
        assert_eq!(r.kind, LengthKind::Exact(2));
    }

    #[test]
    fn three_cycle_over_transpositions() {
        let gens: Vec<Perm> = alloc::vec![
            Perm::transposition(3, 0, 1).unwrap(),
            Perm::transposition(3, 0, 2).unwrap(),
            Perm::transposition(3, 1, 2).unwrap(),
        ];
        let s = GeneratingSet::new("transpositions", gens).unwrap();
        let g = Perm::from_cycles(3, &[alloc::vec![0, 1, 2]]).unwrap();
        let r = length_exact(&g, &s, 4, DEFAULT_MEMORY_CAP).unwrap();
        assert_eq!(r.kind, LengthKind::Exact(2));
    }

    #[test]
    fn saturation_detects_unreachable_elements() {
        // Ball over the 3-cycles of S3 saturates inside A3; a transposition
        // is never reached.
        let three_cycle = Perm::from_cycles(3, &[alloc::vec![0, 1, 2]]).unwrap();
        let s = GeneratingSet::symmetrized("3-cycles", alloc::vec![three_cycle]).unwrap();
        let g = Perm::transposition(3, 0, 1).unwrap();
        let r = length_exact(&g, &s, 10, DEFAULT_MEMORY_CAP).unwrap();
        assert_eq!(r.kind, LengthKind::AtLeast(11));
        assert!(r.radius_searched < 10);
    }

    #[test]
    fn memory_cap_reports_partial_radius() {
        let s = GeneratingSet::symmetrized(
            "free2",
            alloc::vec![
                FreeWord::generator(2, 1).unwrap(),
                FreeWord::generator(2, 2).unwrap()
            ],
        )
        .unwrap();
        match ball(&s, 6, 10) {
            Err(LengthError::Resource { completed_radius }) => assert!(completed_radius <= 2),
            other => panic!("expected resource error, got {other:?}"),
        }
    }

    #[test]
    fn mitm_matches_single_ball_on_random_words() {
        use rand::{rngs::StdRng, Rng, SeedableRng};
        let mut rng = StdRng::seed_from_u64(7);
        let s = GeneratingSet::symmetrized(
            "free2",
            alloc::vec![
                FreeWord::generator(2, 1).unwrap(),
                FreeWord::generator(2, 2).unwrap()
            ],
        )
        .unwrap();
        for _ in 0..40 {
            let len = rng.gen_range(0..=6);
            let letters: Vec<i32> = (0..len)
                .map(|_| {
                    let l = rng.gen_range(1..=2);
                    if rng.gen_bool(0.5) {
                        l
                    } else {
                        -l
                    }
                })
                .collect();
            let g = FreeWord::from_letters(2, &letters).unwrap();
            let single = length_exact(&g, &s, 6, DEFAULT_MEMORY_CAP).unwrap();
            let mitm = length_exact_mitm(&g, &s, 6, DEFAULT_MEMORY_CAP).unwrap();
            assert_eq!(single.kind, mitm.kind, "word {g}");
        }
    }

    #[test]
    fn bfs_exactness_on_random_words() {
        use rand::{rngs::StdRng, Rng, SeedableRng};
        let mut rng = StdRng::seed_from_u64(11);
        let s = GeneratingSet::symmetrized(
            "free2",
            alloc::vec![
                FreeWord::generator(2, 1).unwrap(),
                FreeWord::generator(2, 2).unwrap()
            ],
        )
        .unwrap();
        for _ in 0..60 {
            let len = rng.gen_range(0..=6usize);
            let mut g = FreeWord::identity(2);
            for _ in 0..len {
                let pick = rng.gen_range(0..s.elements().len());
                g = g.mul(&s.elements()[pick]).unwrap();
            }
            match length_exact(&g, &s, 6, DEFAULT_MEMORY_CAP).unwrap().kind {
                LengthKind::Exact(k) => assert!(k as usize <= len),
                LengthKind::AtLeast(_) => panic!("word of length {len} not found"),
            }
        }
    }
}
