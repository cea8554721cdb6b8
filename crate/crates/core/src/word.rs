//! Words over a declared finite alphabet.
//!
//! Symbols are single characters. The unary shorthand `a^n` is written as a
//! bare decimal integer in the relation file format; [`Word::unary`] builds it
//! directly.

use std::fmt;

use crate::error::{Error, Result};

/// A finite, deduplicated symbol set with a fixed (sorted) symbol order.
///
/// The sorted order is what "fixed symbol order" means everywhere canonical
/// numbering is involved.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Alphabet {
    symbols: Vec<char>,
}

impl Alphabet {
    pub fn new(symbols: impl IntoIterator<Item = char>) -> Self {
        let mut symbols: Vec<char> = symbols.into_iter().collect();
        symbols.sort_unstable();
        symbols.dedup();
        Alphabet { symbols }
    }

    /// The one-symbol alphabet {a}.
    pub fn unary() -> Self {
        Alphabet { symbols: vec!['a'] }
    }

    pub fn symbols(&self) -> &[char] {
        &self.symbols
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    pub fn is_unary(&self) -> bool {
        self.symbols.len() == 1
    }

    pub fn contains(&self, symbol: char) -> bool {
        self.symbols.binary_search(&symbol).is_ok()
    }

    /// Index of a symbol in the fixed order.
    pub fn index_of(&self, symbol: char) -> Option<usize> {
        self.symbols.binary_search(&symbol).ok()
    }

    /// All words of length at most `bound`, ordered by length then
    /// lexicographically in the fixed symbol order.
    pub fn words_up_to(&self, bound: usize) -> Vec<Word> {
        let mut out = vec![Word::empty()];
        let mut layer = vec![Word::empty()];
        for _ in 0..bound {
            let mut next = Vec::with_capacity(layer.len() * self.symbols.len());
            for w in &layer {
                for &s in &self.symbols {
                    next.push(w.extended(s));
                }
            }
            out.extend(next.iter().cloned());
            layer = next;
        }
        out
    }

    fn render(&self) -> String {
        self.symbols.iter().collect()
    }

    pub(crate) fn mismatch(&self, other: &Alphabet) -> Error {
        Error::AlphabetMismatch {
            left: self.render(),
            right: other.render(),
        }
    }

    pub(crate) fn non_unary(&self) -> Error {
        Error::NonUnaryAlphabet {
            alphabet: self.render(),
        }
    }
}

impl fmt::Display for Alphabet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render())
    }
}

/// A finite word. The empty word is valid.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word {
    symbols: Vec<char>,
}

impl Word {
    pub fn new(symbols: impl IntoIterator<Item = char>) -> Self {
        Word {
            symbols: symbols.into_iter().collect(),
        }
    }

    pub fn empty() -> Self {
        Word { symbols: Vec::new() }
    }

    /// The unary word `a^n`.
    pub fn unary(n: usize) -> Self {
        Word {
            symbols: vec!['a'; n],
        }
    }

    pub fn symbols(&self) -> &[char] {
        &self.symbols
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    /// This word with one more symbol appended.
    pub fn extended(&self, symbol: char) -> Word {
        let mut symbols = self.symbols.clone();
        symbols.push(symbol);
        Word { symbols }
    }

    /// Concatenation `self · other`.
    pub fn concat(&self, other: &Word) -> Word {
        let mut symbols = self.symbols.clone();
        symbols.extend_from_slice(&other.symbols);
        Word { symbols }
    }

    /// Checks every symbol against the alphabet.
    pub fn check_alphabet(&self, alphabet: &Alphabet) -> Result<()> {
        for &s in &self.symbols {
            if !alphabet.contains(s) {
                return Err(Error::SymbolOutsideAlphabet {
                    symbol: s,
                    alphabet: alphabet.to_string(),
                });
            }
        }
        Ok(())
    }
}

impl fmt::Display for Word {
    /// The empty word prints as `e`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.symbols.is_empty() {
            write!(f, "e")
        } else {
            write!(f, "{}", self.symbols.iter().collect::<String>())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn alphabet_sorts_and_dedups() {
        let ab = Alphabet::new(['b', 'a', 'b']);
        assert_eq!(ab.symbols(), &['a', 'b']);
        assert_eq!(ab.index_of('b'), Some(1));
        assert!(!ab.contains('c'));
    }

    #[test]
    fn unary_shorthand() {
        assert_eq!(Word::unary(3).symbols(), &['a', 'a', 'a']);
        assert_eq!(Word::unary(0), Word::empty());
    }

    #[test]
    fn word_enumeration_is_ordered() {
        let ab = Alphabet::new(['a', 'b']);
        let words = ab.words_up_to(2);
        let rendered: Vec<String> = words.iter().map(|w| w.to_string()).collect();
        assert_eq!(rendered, vec!["e", "a", "b", "aa", "ab", "ba", "bb"]);
        assert_eq!(Alphabet::unary().words_up_to(4).len(), 5);
    }

    #[test]
    fn alphabet_check() {
        let ab = Alphabet::new(['a', 'b']);
        assert!(Word::new(['a', 'b']).check_alphabet(&ab).is_ok());
        assert!(matches!(
            Word::new(['c']).check_alphabet(&ab),
            Err(Error::SymbolOutsideAlphabet { symbol: 'c', .. })
        ));
    }
}
