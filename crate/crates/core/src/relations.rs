//! Defining relations: finite sets of word pairs and their file format.
//!
//! The file format is line oriented:
//!
//! ```text
//! # comment
//! alphabet: ab      (optional header, default unary {a})
//! LHS = RHS         one relation per line
//! ```
//!
//! A bare decimal integer `n` denotes the unary word `a^n`; `e` denotes the
//! empty word (unless `e` itself is a declared symbol).

use std::collections::BTreeSet;
use std::fmt;

use crate::automaton::Automaton;
use crate::error::{Error, Result};
use crate::word::{Alphabet, Word};

/// A finite, deduplicated set of ordered word pairs over one alphabet.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RelationSet {
    alphabet: Alphabet,
    pairs: BTreeSet<(Word, Word)>,
}

impl RelationSet {
    pub fn new(alphabet: Alphabet, pairs: impl IntoIterator<Item = (Word, Word)>) -> Result<Self> {
        let pairs: BTreeSet<(Word, Word)> = pairs.into_iter().collect();
        for (u, v) in &pairs {
            u.check_alphabet(&alphabet)?;
            v.check_alphabet(&alphabet)?;
        }
        Ok(RelationSet { alphabet, pairs })
    }

    pub fn empty(alphabet: Alphabet) -> Self {
        RelationSet {
            alphabet,
            pairs: BTreeSet::new(),
        }
    }

    /// Unary relation set from length pairs: `{(a^n, a^m), ...}`.
    pub fn unary(pairs: impl IntoIterator<Item = (usize, usize)>) -> Self {
        RelationSet {
            alphabet: Alphabet::unary(),
            pairs: pairs
                .into_iter()
                .map(|(n, m)| (Word::unary(n), Word::unary(m)))
                .collect(),
        }
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn pairs(&self) -> impl Iterator<Item = &(Word, Word)> {
        self.pairs.iter()
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    /// Length pairs of a unary relation set.
    pub fn length_pairs(&self) -> Result<Vec<(usize, usize)>> {
        if !self.alphabet.is_unary() {
            return Err(self.alphabet.non_unary());
        }
        Ok(self.pairs.iter().map(|(u, v)| (u.len(), v.len())).collect())
    }

    /// True iff every pair of the set is congruent in `automaton`.
    pub fn holds_in(&self, automaton: &Automaton) -> Result<bool> {
        if automaton.alphabet() != &self.alphabet {
            return Err(self.alphabet.mismatch(automaton.alphabet()));
        }
        for (u, v) in &self.pairs {
            if !automaton.congruent(u, v)? {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

impl fmt::Display for RelationSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "alphabet: {}", self.alphabet)?;
        for (u, v) in &self.pairs {
            writeln!(f, "{u} = {v}")?;
        }
        Ok(())
    }
}

/// True iff every pair of `rel` is congruent in `automaton`.
pub fn relations_hold(automaton: &Automaton, rel: &RelationSet) -> Result<bool> {
    rel.holds_in(automaton)
}

/// Parses the relation file format. Comments start with `#`; an optional
/// `alphabet:` header may precede the relations.
pub fn parse_relations(text: &str) -> Result<RelationSet> {
    let mut alphabet: Option<Alphabet> = None;
    let mut raw: Vec<(usize, String, String)> = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = match line.find('#') {
            Some(pos) => &line[..pos],
            None => line,
        };
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        if let Some(rest) = line.strip_prefix("alphabet:") {
            if alphabet.is_some() || !raw.is_empty() {
                return Err(Error::RelationSyntax {
                    line: lineno + 1,
                    message: "alphabet header must appear once, before any relation".into(),
                });
            }
            let symbols: Vec<char> = rest.split_whitespace().flat_map(|s| s.chars()).collect();
            if symbols.is_empty() {
                return Err(Error::RelationSyntax {
                    line: lineno + 1,
                    message: "empty alphabet".into(),
                });
            }
            alphabet = Some(Alphabet::new(symbols));
            continue;
        }
        let mut sides = line.splitn(2, '=');
        let lhs = sides.next().unwrap_or("").trim();
        let rhs = sides.next().map(str::trim);
        let rhs = match rhs {
            Some(r) if !r.is_empty() && !lhs.is_empty() => r,
            _ => {
                return Err(Error::RelationSyntax {
                    line: lineno + 1,
                    message: format!("expected `LHS = RHS`, got {line:?}"),
                })
            }
        };
        raw.push((lineno + 1, lhs.to_string(), rhs.to_string()));
    }
    let alphabet = alphabet.unwrap_or_else(Alphabet::unary);
    let mut pairs = BTreeSet::new();
    for (lineno, lhs, rhs) in raw {
        let u = parse_word(&lhs, &alphabet, lineno)?;
        let v = parse_word(&rhs, &alphabet, lineno)?;
        pairs.insert((u, v));
    }
    Ok(RelationSet { alphabet, pairs })
}

/// A word token: a bare integer `n` for `a^n`, `e` for the empty word, or a
/// run of alphabet symbols.
fn parse_word(token: &str, alphabet: &Alphabet, line: usize) -> Result<Word> {
    if token.chars().all(|c| c.is_ascii_digit()) {
        let n: usize = token.parse().map_err(|_| Error::RelationSyntax {
            line,
            message: format!("integer {token:?} too large"),
        })?;
        if n > 0 && !alphabet.contains('a') {
            return Err(Error::RelationSyntax {
                line,
                message: format!("integer shorthand needs symbol 'a' in alphabet {{{alphabet}}}"),
            });
        }
        return Ok(Word::unary(n));
    }
    if token == "e" && !alphabet.contains('e') {
        return Ok(Word::empty());
    }
    let word = Word::new(token.chars());
    word.check_alphabet(alphabet).map_err(|e| Error::RelationSyntax {
        line,
        message: e.to_string(),
    })?;
    Ok(word)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::automaton::make_cyclic_automaton;

    #[test]
    fn unary_shorthand_expands() {
        let rel = parse_relations("6 = 0").unwrap();
        assert_eq!(rel.alphabet(), &Alphabet::unary());
        let pairs: Vec<_> = rel.pairs().cloned().collect();
        assert_eq!(pairs, vec![(Word::unary(6), Word::empty())]);
    }

    #[test]
    fn explicit_alphabet_and_epsilon() {
        let rel = parse_relations("alphabet: ab\nab = e\n").unwrap();
        assert_eq!(rel.alphabet(), &Alphabet::new(['a', 'b']));
        let pairs: Vec<_> = rel.pairs().cloned().collect();
        assert_eq!(pairs, vec![(Word::new(['a', 'b']), Word::empty())]);
    }

    #[test]
    fn empty_input_is_empty_set() {
        let rel = parse_relations("").unwrap();
        assert!(rel.is_empty());
        assert_eq!(rel.alphabet(), &Alphabet::unary());
    }

    #[test]
    fn comments_and_blank_lines() {
        let rel = parse_relations("# header\n\n7 = 3  # trailing\n7=3\n").unwrap();
        assert_eq!(rel.len(), 1); // deduplicated
    }

    #[test]
    fn syntax_errors_carry_line_numbers() {
        let err = parse_relations("6 = 0\nnonsense\n").unwrap_err();
        assert!(matches!(err, Error::RelationSyntax { line: 2, .. }));

        let err = parse_relations("alphabet: ab\nac = e\n").unwrap_err();
        assert!(matches!(err, Error::RelationSyntax { line: 2, .. }));

        let err = parse_relations("= 3\n").unwrap_err();
        assert!(matches!(err, Error::RelationSyntax { line: 1, .. }));
    }

    #[test]
    fn relations_hold_on_cycles() {
        let rel = parse_relations("6 = 0").unwrap();
        let three = make_cyclic_automaton(3).unwrap();
        let four = make_cyclic_automaton(4).unwrap();
        assert!(relations_hold(&three, &rel).unwrap());
        assert!(!relations_hold(&four, &rel).unwrap());
        assert!(relations_hold(&four, &RelationSet::empty(Alphabet::unary())).unwrap());
    }

    #[test]
    fn relations_hold_checks_alphabet() {
        let rel = parse_relations("alphabet: ab\nab = e\n").unwrap();
        let three = make_cyclic_automaton(3).unwrap();
        assert!(matches!(
            relations_hold(&three, &rel),
            Err(Error::AlphabetMismatch { .. })
        ));
    }
}
