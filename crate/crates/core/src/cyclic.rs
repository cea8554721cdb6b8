//! The admissible class of cyclic unary automata, modeled exactly.
//!
//! Index `g >= 1` stands for the g-state cycle; index 0 stands for the
//! infinite chain, which accepts only the empty word and is never
//! materialized as a concrete automaton.
//!
//! The divisibility convention is fixed once: `d | n  iff  n = k*d` for some
//! `k >= 0`. Hence every d divides 0, and 0 divides only 0. Under the
//! fragment order `[a] <= [b] iff b | a`, the class is a complete lattice
//! with join = gcd, meet = lcm, top [1] and bottom [0].
//!
//! Arithmetic is unbounded so meets never overflow, whatever the
//! verification bounds.

use std::fmt;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::Result;
use crate::relations::RelationSet;
use crate::word::Word;

/// An element of the cyclic class: `[g]` for `g >= 1`, or the infinite
/// chain `[0]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CyclicIndex(BigUint);

impl CyclicIndex {
    pub fn new(g: u64) -> Self {
        CyclicIndex(BigUint::from(g))
    }

    pub fn from_biguint(g: BigUint) -> Self {
        CyclicIndex(g)
    }

    pub fn value(&self) -> &BigUint {
        &self.0
    }

    pub fn to_u64(&self) -> Option<u64> {
        u64::try_from(&self.0).ok()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    /// The fixed divisibility convention: `self | n`, with `d | 0` for all
    /// `d` and `0 | n` only for `n = 0`.
    pub fn divides(&self, n: &CyclicIndex) -> bool {
        if self.0.is_zero() {
            n.0.is_zero()
        } else {
            (&n.0 % &self.0).is_zero()
        }
    }
}

impl From<u64> for CyclicIndex {
    fn from(g: u64) -> Self {
        CyclicIndex::new(g)
    }
}

impl fmt::Display for CyclicIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// The admissible closure of a unary relation set: the gcd of all length
/// differences `|n - m|`. The empty gcd is 0, so the empty relation closes
/// to the infinite chain.
pub fn closure_unary(rel: &RelationSet) -> Result<CyclicIndex> {
    let pairs = rel.length_pairs()?;
    let mut g: u64 = 0;
    for (n, m) in pairs {
        g = gcd_u64(g, n.abs_diff(m) as u64);
    }
    Ok(CyclicIndex::new(g))
}

fn gcd_u64(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd_u64(b, a % b)
    }
}

/// Language membership for `[g]`: the word `a^k` is accepted iff `g | k`.
/// The infinite chain accepts only the empty word.
pub fn accepts(g: &CyclicIndex, k: u64) -> bool {
    g.divides(&CyclicIndex::new(k))
}

/// The fragment order: `[a] <= [b]` iff `b | a`. `[0]` is the bottom and
/// `[1]` the top.
pub fn le(a: &CyclicIndex, b: &CyclicIndex) -> bool {
    b.divides(a)
}

/// Least upper bound: gcd, with `gcd(x, 0) = x`.
pub fn join(a: &CyclicIndex, b: &CyclicIndex) -> CyclicIndex {
    CyclicIndex(a.0.gcd(&b.0))
}

/// Greatest lower bound: lcm, with `lcm(x, 0) = 0`.
pub fn meet(a: &CyclicIndex, b: &CyclicIndex) -> CyclicIndex {
    if a.0.is_zero() || b.0.is_zero() {
        return CyclicIndex(BigUint::zero());
    }
    CyclicIndex(a.0.lcm(&b.0))
}

/// gcd over a finite set; the empty supremum is the bottom `[0]`.
pub fn sup_set<'a>(items: impl IntoIterator<Item = &'a CyclicIndex>) -> CyclicIndex {
    items
        .into_iter()
        .fold(CyclicIndex(BigUint::zero()), |acc, x| join(&acc, x))
}

/// lcm over a finite set; the empty infimum is the top `[1]`.
pub fn inf_set<'a>(items: impl IntoIterator<Item = &'a CyclicIndex>) -> CyclicIndex {
    items
        .into_iter()
        .fold(CyclicIndex(BigUint::one()), |acc, x| meet(&acc, x))
}

/// Composite relation for the supremum: the pair-set union. Its closure is
/// the join of the operands' closures.
pub fn compose_sup(r1: &RelationSet, r2: &RelationSet) -> Result<RelationSet> {
    if r1.alphabet() != r2.alphabet() {
        return Err(r1.alphabet().mismatch(r2.alphabet()));
    }
    RelationSet::new(
        r1.alphabet().clone(),
        r1.pairs().cloned().chain(r2.pairs().cloned()),
    )
}

/// Composite relation for the infimum of two unary relation sets: a single
/// defining pair for the meet (lcm) of the closures, so that the co-fragment
/// class of the composite is the intersection of the operands' co-fragment
/// classes.
pub fn compose_inf(r1: &RelationSet, r2: &RelationSet) -> Result<RelationSet> {
    if r1.alphabet() != r2.alphabet() {
        return Err(r1.alphabet().mismatch(r2.alphabet()));
    }
    let m = meet(&closure_unary(r1)?, &closure_unary(r2)?);
    let len = m
        .to_u64()
        .and_then(|v| usize::try_from(v).ok())
        .ok_or_else(|| crate::error::Error::TooLarge(format!("meet {m} as a word length")))?;
    RelationSet::new(
        r1.alphabet().clone(),
        [(Word::unary(len), Word::empty())],
    )
}
