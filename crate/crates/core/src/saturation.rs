//! Rule saturation: an oracle for congruence closures, independent of the
//! union-find folding engine.
//!
//! The generic rule set has four inference rules over word pairs:
//! transitivity, symmetry, reflexivity, and right extension by a symbol.
//! Over a unary alphabet a fifth rule is added, `n = m  ⊢  |n-m| = 0`,
//! which captures that unary cycles return to their initial state.
//!
//! Saturation computes the least fixpoint of the selected rules over the
//! words of length at most `bound`; a derivable pair is discarded whenever
//! either word would exceed the bound, which keeps the fixpoint finite and
//! well-defined.

use std::collections::HashMap;

use crate::error::Result;
use crate::relations::RelationSet;
use crate::word::Word;

/// Which inference rules saturation applies.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RuleSet {
    /// Transitivity, symmetry, reflexivity, right extension.
    FourRule,
    /// The four generic rules plus the unary difference rule.
    FiveRuleUnary,
}

/// Dense square bit matrix; rows and columns are word indices.
#[derive(Debug, Clone)]
struct BitMatrix {
    n: usize,
    stride: usize,
    bits: Vec<u64>,
}

impl BitMatrix {
    fn new(n: usize) -> Self {
        let stride = n.div_ceil(64);
        BitMatrix {
            n,
            stride,
            bits: vec![0; stride * n],
        }
    }

    fn get(&self, r: usize, c: usize) -> bool {
        self.bits[r * self.stride + c / 64] & (1u64 << (c % 64)) != 0
    }

    /// Sets a bit; reports whether it was previously clear.
    fn set(&mut self, r: usize, c: usize) -> bool {
        let slot = &mut self.bits[r * self.stride + c / 64];
        let mask = 1u64 << (c % 64);
        let fresh = *slot & mask == 0;
        *slot |= mask;
        fresh
    }

    /// `row[dst] |= row[src]`; reports whether anything changed.
    fn or_row(&mut self, dst: usize, src: usize) -> bool {
        if dst == src {
            return false;
        }
        let (d, s) = (dst * self.stride, src * self.stride);
        let mut changed = false;
        for i in 0..self.stride {
            let merged = self.bits[d + i] | self.bits[s + i];
            if merged != self.bits[d + i] {
                self.bits[d + i] = merged;
                changed = true;
            }
        }
        changed
    }

    fn row_columns(&self, r: usize) -> Vec<usize> {
        let base = r * self.stride;
        let mut out = Vec::new();
        for i in 0..self.stride {
            let mut block = self.bits[base + i];
            while block != 0 {
                let bit = block.trailing_zeros() as usize;
                let c = i * 64 + bit;
                if c < self.n {
                    out.push(c);
                }
                block &= block - 1;
            }
        }
        out
    }

    fn count(&self) -> usize {
        self.bits.iter().map(|b| b.count_ones() as usize).sum()
    }
}

/// The saturated pair set: all pairs derivable by the selected rules among
/// words of length at most `bound`.
#[derive(Debug, Clone)]
pub struct DerivationSet {
    bound: usize,
    words: Vec<Word>,
    index: HashMap<Word, usize>,
    mat: BitMatrix,
    unary: bool,
}

impl DerivationSet {
    pub fn bound(&self) -> usize {
        self.bound
    }

    /// Number of derived pairs.
    pub fn len(&self) -> usize {
        self.mat.count()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Whether `(u, v)` was derived. Words beyond the bound are never
    /// derived, by the bound semantics.
    pub fn contains(&self, u: &Word, v: &Word) -> bool {
        match (self.index.get(u), self.index.get(v)) {
            (Some(&i), Some(&j)) => self.mat.get(i, j),
            _ => false,
        }
    }

    /// Unary convenience for `contains(a^p, a^q)`.
    pub fn contains_lengths(&self, p: usize, q: usize) -> bool {
        self.unary && p <= self.bound && q <= self.bound && self.mat.get(p, q)
    }

    /// Index of a word in the saturation universe. Indices follow the
    /// `Alphabet::words_up_to` enumeration (length, then lexicographic).
    pub fn word_index(&self, w: &Word) -> Option<usize> {
        self.index.get(w).copied()
    }

    /// Pair membership by word indices.
    pub fn contains_by_index(&self, i: usize, j: usize) -> bool {
        i < self.words.len() && j < self.words.len() && self.mat.get(i, j)
    }

    /// Derived pairs in deterministic order (left word by length then lex,
    /// then right word likewise).
    pub fn pairs(&self) -> Vec<(Word, Word)> {
        let mut out = Vec::new();
        for r in 0..self.words.len() {
            for c in self.mat.row_columns(r) {
                out.push((self.words[r].clone(), self.words[c].clone()));
            }
        }
        out
    }

    /// The gcd of all derived length differences: the period of the cyclic
    /// automaton the saturated relation describes. None for non-unary sets.
    pub fn unary_period(&self) -> Option<u64> {
        if !self.unary {
            return None;
        }
        let mut g: u64 = 0;
        for p in 0..self.words.len() {
            for q in self.mat.row_columns(p) {
                g = gcd_u64(g, p.abs_diff(q) as u64);
            }
        }
        Some(g)
    }
}

fn gcd_u64(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd_u64(b, a % b)
    }
}

/// Least fixpoint of the selected rules over words of length <= `length_bound`.
///
/// `FiveRuleUnary` requires a unary alphabet.
pub fn saturate_rules(
    rel: &RelationSet,
    length_bound: usize,
    rules: RuleSet,
) -> Result<DerivationSet> {
    let alphabet = rel.alphabet();
    let unary = alphabet.is_unary();
    if rules == RuleSet::FiveRuleUnary && !unary {
        return Err(alphabet.non_unary());
    }

    let words = alphabet.words_up_to(length_bound);
    let n = words.len();
    let index: HashMap<Word, usize> = words
        .iter()
        .enumerate()
        .map(|(i, w)| (w.clone(), i))
        .collect();

    // Successor table for the right-extension rule; None once the extension
    // would exceed the bound.
    let k = alphabet.len();
    let ext: Vec<Vec<Option<usize>>> = words
        .iter()
        .map(|w| {
            alphabet
                .symbols()
                .iter()
                .map(|&s| {
                    if w.len() < length_bound {
                        Some(index[&w.extended(s)])
                    } else {
                        None
                    }
                })
                .collect()
        })
        .collect();

    let mut mat = BitMatrix::new(n);
    // reflexivity
    for i in 0..n {
        mat.set(i, i);
    }
    // axioms: the relation pairs that survive the bound
    for (u, v) in rel.pairs() {
        if u.len() <= length_bound && v.len() <= length_bound {
            mat.set(index[u], index[v]);
        }
    }

    loop {
        let mut changed = false;
        // symmetry
        for r in 0..n {
            for c in mat.row_columns(r) {
                changed |= mat.set(c, r);
            }
        }
        // right extension and the unary difference rule
        for r in 0..n {
            for c in mat.row_columns(r) {
                for i in 0..k {
                    if let (Some(r2), Some(c2)) = (ext[r][i], ext[c][i]) {
                        changed |= mat.set(r2, c2);
                    }
                }
                if rules == RuleSet::FiveRuleUnary {
                    changed |= mat.set(r.abs_diff(c), 0);
                }
            }
        }
        // transitivity
        for mid in 0..n {
            for r in 0..n {
                if mat.get(r, mid) {
                    changed |= mat.or_row(r, mid);
                }
            }
        }
        if !changed {
            break;
        }
    }

    Ok(DerivationSet {
        bound: length_bound,
        words,
        index,
        mat,
        unary,
    })
}
