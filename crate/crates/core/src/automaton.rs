//! Deterministic connected initial automata without output.
//!
//! States are indexed `0..state_count` with the initial state fixed at 0.
//! [`Automaton`] is total and connected by construction; [`PartialAutomaton`]
//! is the shape returned by prefix-tree folding, where some transitions may
//! be missing.
//!
//! Structural comparisons are all rooted: an automaton here is a pointed
//! graph, so isomorphism reduces to equality of canonical breadth-first
//! renumberings with the fixed symbol order.

use std::collections::VecDeque;
use std::fmt;

use crate::error::{Error, Result};
use crate::word::{Alphabet, Word};

/// A deterministic, complete, connected automaton with initial state 0.
///
/// `accepting` is optional and only consulted by language queries; the
/// convention for cyclic automata is that state 0 accepts.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Automaton {
    alphabet: Alphabet,
    /// `transitions[state][symbol_index]` = successor state.
    transitions: Vec<Vec<usize>>,
    accepting: Option<usize>,
}

impl Automaton {
    /// Validates totality, target ranges and connectivity from state 0.
    pub fn new(
        alphabet: Alphabet,
        transitions: Vec<Vec<usize>>,
        accepting: Option<usize>,
    ) -> Result<Self> {
        let n = transitions.len();
        if n == 0 {
            return Err(Error::InvalidAutomaton("no states".into()));
        }
        for (s, row) in transitions.iter().enumerate() {
            if row.len() != alphabet.len() {
                return Err(Error::InvalidAutomaton(format!(
                    "state {s} has {} transitions, alphabet has {} symbols",
                    row.len(),
                    alphabet.len()
                )));
            }
            for &t in row {
                if t >= n {
                    return Err(Error::InvalidAutomaton(format!(
                        "state {s} has transition to missing state {t}"
                    )));
                }
            }
        }
        if let Some(acc) = accepting {
            if acc >= n {
                return Err(Error::InvalidAutomaton(format!(
                    "accepting state {acc} out of range"
                )));
            }
        }
        let auto = Automaton {
            alphabet,
            transitions,
            accepting,
        };
        if auto.reachable_count() != n {
            return Err(Error::InvalidAutomaton(
                "not all states reachable from the initial state".into(),
            ));
        }
        Ok(auto)
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn state_count(&self) -> usize {
        self.transitions.len()
    }

    pub fn accepting(&self) -> Option<usize> {
        self.accepting
    }

    pub fn step(&self, state: usize, symbol_index: usize) -> usize {
        self.transitions[state][symbol_index]
    }

    fn reachable_count(&self) -> usize {
        let n = self.transitions.len();
        let mut seen = vec![false; n];
        seen[0] = true;
        let mut queue = VecDeque::from([0usize]);
        let mut count = 1;
        while let Some(s) = queue.pop_front() {
            for &t in &self.transitions[s] {
                if !seen[t] {
                    seen[t] = true;
                    count += 1;
                    queue.push_back(t);
                }
            }
        }
        count
    }

    /// The state reached from the initial state by `word`.
    pub fn run(&self, word: &Word) -> Result<usize> {
        word.check_alphabet(&self.alphabet)?;
        let mut state = 0;
        for &s in word.symbols() {
            let idx = self.alphabet.index_of(s).expect("checked above");
            state = self.transitions[state][idx];
        }
        Ok(state)
    }

    /// Membership of `(u, v)` in the right congruence of this automaton:
    /// true iff both words lead to the same state.
    pub fn congruent(&self, u: &Word, v: &Word) -> Result<bool> {
        Ok(self.run(u)? == self.run(v)?)
    }

    /// Language membership under the accepting-state convention. With no
    /// accepting state the language is empty.
    pub fn accepts(&self, word: &Word) -> Result<bool> {
        let end = self.run(word)?;
        Ok(self.accepting == Some(end))
    }

    /// Canonical renumbering: breadth-first from the initial state with the
    /// fixed symbol order. Two automata over the same alphabet are isomorphic
    /// iff their canonical forms are equal.
    pub fn canonical(&self) -> Automaton {
        let n = self.state_count();
        let mut new_id = vec![usize::MAX; n];
        new_id[0] = 0;
        let mut order = vec![0usize];
        let mut queue = VecDeque::from([0usize]);
        while let Some(s) = queue.pop_front() {
            for &t in &self.transitions[s] {
                if new_id[t] == usize::MAX {
                    new_id[t] = order.len();
                    order.push(t);
                    queue.push_back(t);
                }
            }
        }
        let transitions = order
            .iter()
            .map(|&old| self.transitions[old].iter().map(|&t| new_id[t]).collect())
            .collect();
        Automaton {
            alphabet: self.alphabet.clone(),
            transitions,
            accepting: self.accepting.map(|a| new_id[a]),
        }
    }

    /// Serializes to the line-oriented text format used by the CLI.
    pub fn to_text(&self) -> String {
        let mut out = format!("states {} alphabet {}\n", self.state_count(), self.alphabet);
        for (s, row) in self.transitions.iter().enumerate() {
            for (i, &t) in row.iter().enumerate() {
                out.push_str(&format!("{} {} {}\n", s, self.alphabet.symbols()[i], t));
            }
        }
        if let Some(acc) = self.accepting {
            out.push_str(&format!("accept {acc}\n"));
        }
        out
    }

    /// Parses the text format back; requires a total connected automaton.
    pub fn from_text(text: &str) -> Result<Self> {
        let parsed = parse_text(text)?;
        let mut transitions = Vec::with_capacity(parsed.states);
        for s in 0..parsed.states {
            let mut row = Vec::with_capacity(parsed.alphabet.len());
            for (i, &sym) in parsed.alphabet.symbols().iter().enumerate() {
                match parsed.table[s][i] {
                    Some(t) => row.push(t),
                    None => {
                        return Err(Error::InvalidAutomaton(format!(
                            "missing transition from state {s} on '{sym}'"
                        )))
                    }
                }
            }
            transitions.push(row);
        }
        Automaton::new(parsed.alphabet, transitions, parsed.accepting)
    }
}

/// Result of quotienting a finite prefix tree: reachable and deterministic,
/// but transitions may be missing.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PartialAutomaton {
    alphabet: Alphabet,
    transitions: Vec<Vec<Option<usize>>>,
    accepting: Option<usize>,
}

impl PartialAutomaton {
    pub(crate) fn from_parts(
        alphabet: Alphabet,
        transitions: Vec<Vec<Option<usize>>>,
        accepting: Option<usize>,
    ) -> Self {
        PartialAutomaton {
            alphabet,
            transitions,
            accepting,
        }
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn state_count(&self) -> usize {
        self.transitions.len()
    }

    pub fn accepting(&self) -> Option<usize> {
        self.accepting
    }

    pub fn step(&self, state: usize, symbol_index: usize) -> Option<usize> {
        self.transitions[state][symbol_index]
    }

    /// True iff every (state, symbol) pair has an image.
    pub fn is_complete(&self) -> bool {
        self.transitions
            .iter()
            .all(|row| row.iter().all(|t| t.is_some()))
    }

    /// The state reached by `word`, or None if the run falls off a missing
    /// transition.
    pub fn run(&self, word: &Word) -> Result<Option<usize>> {
        word.check_alphabet(&self.alphabet)?;
        let mut state = 0;
        for &s in word.symbols() {
            let idx = self.alphabet.index_of(s).expect("checked above");
            match self.transitions[state][idx] {
                Some(t) => state = t,
                None => return Ok(None),
            }
        }
        Ok(Some(state))
    }

    /// Conversion to a total automaton; fails unless complete. The quotient's
    /// initial class becomes the accepting state (initial = final is the
    /// convention for language queries on closures).
    pub fn to_complete(&self) -> Result<Automaton> {
        if !self.is_complete() {
            return Err(Error::InvalidAutomaton(
                "partial automaton is not complete".into(),
            ));
        }
        let transitions = self
            .transitions
            .iter()
            .map(|row| row.iter().map(|t| t.unwrap()).collect())
            .collect();
        Automaton::new(self.alphabet.clone(), transitions, Some(0))
    }

    /// Canonical breadth-first renumbering over defined transitions.
    pub fn canonical(&self) -> PartialAutomaton {
        let n = self.state_count();
        let mut new_id = vec![usize::MAX; n];
        new_id[0] = 0;
        let mut order = vec![0usize];
        let mut queue = VecDeque::from([0usize]);
        while let Some(s) = queue.pop_front() {
            for t in self.transitions[s].iter().flatten() {
                if new_id[*t] == usize::MAX {
                    new_id[*t] = order.len();
                    order.push(*t);
                    queue.push_back(*t);
                }
            }
        }
        let transitions = order
            .iter()
            .map(|&old| {
                self.transitions[old]
                    .iter()
                    .map(|t| t.map(|t| new_id[t]))
                    .collect()
            })
            .collect();
        PartialAutomaton {
            alphabet: self.alphabet.clone(),
            transitions,
            accepting: self.accepting.map(|a| new_id[a]),
        }
    }

    /// Isomorphism of rooted partial automata via canonical forms.
    pub fn isomorphic(&self, other: &PartialAutomaton) -> bool {
        self.canonical() == other.canonical()
    }

    /// Same text format as [`Automaton::to_text`]; missing transitions are
    /// simply absent.
    pub fn to_text(&self) -> String {
        let mut out = format!("states {} alphabet {}\n", self.state_count(), self.alphabet);
        for (s, row) in self.transitions.iter().enumerate() {
            for (i, t) in row.iter().enumerate() {
                if let Some(t) = t {
                    out.push_str(&format!("{} {} {}\n", s, self.alphabet.symbols()[i], t));
                }
            }
        }
        if let Some(acc) = self.accepting {
            out.push_str(&format!("accept {acc}\n"));
        }
        out
    }

    pub fn from_text(text: &str) -> Result<Self> {
        let parsed = parse_text(text)?;
        Ok(PartialAutomaton {
            alphabet: parsed.alphabet,
            transitions: parsed.table,
            accepting: parsed.accepting,
        })
    }
}

impl fmt::Display for Automaton {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_text())
    }
}

impl fmt::Display for PartialAutomaton {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_text())
    }
}

struct ParsedText {
    alphabet: Alphabet,
    states: usize,
    table: Vec<Vec<Option<usize>>>,
    accepting: Option<usize>,
}

fn parse_text(text: &str) -> Result<ParsedText> {
    let mut lines = text.lines().enumerate();
    let (_, header) = lines
        .next()
        .ok_or_else(|| Error::InvalidAutomaton("empty automaton text".into()))?;
    let fields: Vec<&str> = header.split_whitespace().collect();
    if fields.len() != 4 || fields[0] != "states" || fields[2] != "alphabet" {
        return Err(Error::InvalidAutomaton(format!(
            "bad header line: {header:?}"
        )));
    }
    let states: usize = fields[1]
        .parse()
        .map_err(|_| Error::InvalidAutomaton(format!("bad state count {:?}", fields[1])))?;
    let alphabet = Alphabet::new(fields[3].chars());
    let mut table = vec![vec![None; alphabet.len()]; states];
    let mut accepting = None;
    for (lineno, line) in lines {
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split_whitespace().collect();
        if fields[0] == "accept" {
            if fields.len() != 2 {
                return Err(Error::InvalidAutomaton(format!(
                    "line {}: bad accept line",
                    lineno + 1
                )));
            }
            accepting = Some(fields[1].parse().map_err(|_| {
                Error::InvalidAutomaton(format!("line {}: bad accept state", lineno + 1))
            })?);
            continue;
        }
        if fields.len() != 3 {
            return Err(Error::InvalidAutomaton(format!(
                "line {}: expected `src symbol dst`",
                lineno + 1
            )));
        }
        let src: usize = fields[0].parse().map_err(|_| {
            Error::InvalidAutomaton(format!("line {}: bad source state", lineno + 1))
        })?;
        let dst: usize = fields[2].parse().map_err(|_| {
            Error::InvalidAutomaton(format!("line {}: bad target state", lineno + 1))
        })?;
        let mut chars = fields[1].chars();
        let sym = chars.next().ok_or_else(|| {
            Error::InvalidAutomaton(format!("line {}: missing symbol", lineno + 1))
        })?;
        if chars.next().is_some() {
            return Err(Error::InvalidAutomaton(format!(
                "line {}: symbols are single characters",
                lineno + 1
            )));
        }
        let idx = alphabet.index_of(sym).ok_or_else(|| {
            Error::InvalidAutomaton(format!("line {}: symbol '{sym}' not in alphabet", lineno + 1))
        })?;
        if src >= states || dst >= states {
            return Err(Error::InvalidAutomaton(format!(
                "line {}: state out of range",
                lineno + 1
            )));
        }
        table[src][idx] = Some(dst);
    }
    Ok(ParsedText {
        alphabet,
        states,
        table,
        accepting,
    })
}

/// The g-state unary cycle with transitions `i -> i+1 (mod g)` and
/// initial = accepting state 0.
pub fn make_cyclic_automaton(g: u64) -> Result<Automaton> {
    if g == 0 {
        return Err(Error::ZeroCycle);
    }
    let g: usize = g
        .try_into()
        .map_err(|_| Error::TooLarge(format!("cycle of {g} states")))?;
    let transitions = (0..g).map(|i| vec![(i + 1) % g]).collect();
    Automaton::new(Alphabet::unary(), transitions, Some(0))
}

/// Inclusion of right congruences: true iff every pair congruent in `a` is
/// congruent in `b`.
///
/// Explores the reachable pairs `(run(a, w), run(b, w))` breadth-first;
/// inclusion fails exactly when some `a`-state gets paired with two distinct
/// `b`-states.
pub fn rho_subset(a: &Automaton, b: &Automaton) -> Result<bool> {
    if a.alphabet() != b.alphabet() {
        return Err(a.alphabet().mismatch(b.alphabet()));
    }
    let mut image: Vec<Option<usize>> = vec![None; a.state_count()];
    image[0] = Some(0);
    let mut queue = VecDeque::from([(0usize, 0usize)]);
    while let Some((s, t)) = queue.pop_front() {
        for i in 0..a.alphabet().len() {
            let (s2, t2) = (a.step(s, i), b.step(t, i));
            match image[s2] {
                None => {
                    image[s2] = Some(t2);
                    queue.push_back((s2, t2));
                }
                Some(prev) if prev != t2 => return Ok(false),
                Some(_) => {}
            }
        }
    }
    Ok(true)
}

/// Existence of an initial-state-preserving, transition-preserving map
/// from `a` to `b`.
///
/// The candidate map is forced: the image of each state is determined along
/// a breadth-first traversal, and the map exists iff no state is forced to
/// two different images. For connected complete deterministic automata this
/// coincides with [`rho_subset`].
pub fn hom_exists(a: &Automaton, b: &Automaton) -> Result<bool> {
    if a.alphabet() != b.alphabet() {
        return Err(a.alphabet().mismatch(b.alphabet()));
    }
    let mut hom: Vec<Option<usize>> = vec![None; a.state_count()];
    hom[0] = Some(0);
    let mut queue = VecDeque::from([0usize]);
    while let Some(s) = queue.pop_front() {
        let hs = hom[s].expect("enqueued states have images");
        for i in 0..a.alphabet().len() {
            let s2 = a.step(s, i);
            let target = b.step(hs, i);
            match hom[s2] {
                None => {
                    hom[s2] = Some(target);
                    queue.push_back(s2);
                }
                Some(prev) if prev != target => return Ok(false),
                Some(_) => {}
            }
        }
    }
    Ok(true)
}

/// Equality of canonical breadth-first renumberings. Automata over different
/// alphabets are simply not isomorphic.
pub fn isomorphic(a: &Automaton, b: &Automaton) -> bool {
    if a.alphabet() != b.alphabet() {
        return false;
    }
    a.canonical() == b.canonical()
}
