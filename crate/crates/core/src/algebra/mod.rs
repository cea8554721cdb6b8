//! The algebra of represented classes over the cyclic admissible class.
//!
//! An atom names one of the four classes a unary relation set `ρ` with
//! closure `[g]` carves out of the universe:
//!
//! * `Fr(ρ)`: automata containing ρ as a fragment — `m | g`;
//! * `coFr(ρ)`: automata permitted by ρ as a cofragment — `g | m`;
//! * `contraFr(ρ)`, `cocontraFr(ρ)`: their complements within the class.
//!
//! Index 0 stands for the infinite chain and is decided symbolically by the
//! same divisibility convention: it belongs to every `coFr` and to `Fr(ρ)`
//! only when the closure is itself `[0]`.
//!
//! Expressions combine atoms with intersection, union and complement.
//! Bounded evaluation produces a bitset over `{0..N}`; conjunctions of atoms
//! are additionally classified exactly over the whole class by solving the
//! divisor/multiple constraint system.

mod parser;

pub use parser::parse_expr;

use std::fmt;

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

use crate::cyclic::{self, closure_unary, CyclicIndex};
use crate::error::Result;
use crate::relations::RelationSet;

/// How many members an open-ended listing carries.
const EXAMPLE_LIMIT: usize = 8;

/// The four atom kinds.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AtomKind {
    Fr,
    CoFr,
    ContraFr,
    CoContraFr,
}

impl AtomKind {
    /// The complement kind within the admissible class.
    pub fn complement(self) -> AtomKind {
        match self {
            AtomKind::Fr => AtomKind::ContraFr,
            AtomKind::ContraFr => AtomKind::Fr,
            AtomKind::CoFr => AtomKind::CoContraFr,
            AtomKind::CoContraFr => AtomKind::CoFr,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            AtomKind::Fr => "Fr",
            AtomKind::CoFr => "coFr",
            AtomKind::ContraFr => "contraFr",
            AtomKind::CoContraFr => "cocontraFr",
        }
    }
}

/// One atom: a kind applied to a unary relation set, with the closure cached.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassAtom {
    kind: AtomKind,
    rel: RelationSet,
    g: CyclicIndex,
}

impl ClassAtom {
    pub fn new(kind: AtomKind, rel: RelationSet) -> Result<Self> {
        let g = closure_unary(&rel)?;
        Ok(ClassAtom { kind, rel, g })
    }

    pub fn kind(&self) -> AtomKind {
        self.kind
    }

    pub fn relation(&self) -> &RelationSet {
        &self.rel
    }

    /// The cached closure of the relation set.
    pub fn closure(&self) -> &CyclicIndex {
        &self.g
    }

    /// The complementary atom over the same relation set.
    pub fn complemented(&self) -> ClassAtom {
        ClassAtom {
            kind: self.kind.complement(),
            rel: self.rel.clone(),
            g: self.g.clone(),
        }
    }

    /// Exact membership of `[m]`, including the symbolic `[0]`.
    pub fn member(&self, m: &CyclicIndex) -> bool {
        match self.kind {
            AtomKind::Fr => m.divides(&self.g),
            AtomKind::ContraFr => !m.divides(&self.g),
            AtomKind::CoFr => self.g.divides(m),
            AtomKind::CoContraFr => !self.g.divides(m),
        }
    }
}

impl fmt::Display for ClassAtom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}[g={}]", self.kind.name(), self.g)
    }
}

/// A set expression over atoms. Complement is taken within the admissible
/// class; bounded evaluation restricts it to the bounded universe.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ClassExpr {
    Atom(ClassAtom),
    And(Box<ClassExpr>, Box<ClassExpr>),
    Or(Box<ClassExpr>, Box<ClassExpr>),
    Not(Box<ClassExpr>),
}

impl ClassExpr {
    /// Exact pointwise membership.
    pub fn member(&self, m: &CyclicIndex) -> bool {
        match self {
            ClassExpr::Atom(a) => a.member(m),
            ClassExpr::And(l, r) => l.member(m) && r.member(m),
            ClassExpr::Or(l, r) => l.member(m) || r.member(m),
            ClassExpr::Not(x) => !x.member(m),
        }
    }

    /// If the expression is equivalent to a conjunction of atoms (negations
    /// absorbed into complementary kinds), returns those atoms.
    fn conjunction_atoms(&self) -> Option<Vec<ClassAtom>> {
        fn walk(expr: &ClassExpr, negated: bool, out: &mut Vec<ClassAtom>) -> bool {
            match expr {
                ClassExpr::Atom(a) => {
                    out.push(if negated { a.complemented() } else { a.clone() });
                    true
                }
                ClassExpr::Not(x) => walk(x, !negated, out),
                ClassExpr::And(l, r) if !negated => {
                    walk(l, false, out) && walk(r, false, out)
                }
                ClassExpr::Or(l, r) if negated => walk(l, true, out) && walk(r, true, out),
                _ => false,
            }
        }
        let mut atoms = Vec::new();
        walk(self, false, &mut atoms).then_some(atoms)
    }
}

/// Bounded member set: a bitset over `{0..bound}` where index `m` stands for
/// the automaton `[m]` (index 0 for the infinite chain).
///
/// `exact` records whether the listed members are the complete volume of the
/// expression that produced the set, rather than just its restriction to the
/// bounded universe.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "ClassSetRepr", into = "ClassSetRepr")]
pub struct ClassSet {
    bound: usize,
    bits: Vec<u64>,
    exact: bool,
}

#[derive(Serialize, Deserialize)]
struct ClassSetRepr {
    bound: u64,
    members: Vec<u64>,
    exact: bool,
}

impl From<ClassSet> for ClassSetRepr {
    fn from(set: ClassSet) -> Self {
        ClassSetRepr {
            bound: set.bound as u64,
            members: set.members(),
            exact: set.exact,
        }
    }
}

impl TryFrom<ClassSetRepr> for ClassSet {
    type Error = String;

    fn try_from(repr: ClassSetRepr) -> std::result::Result<Self, String> {
        let bound = usize::try_from(repr.bound).map_err(|_| "bound too large".to_string())?;
        let mut set = ClassSet::empty(bound, repr.exact);
        for m in repr.members {
            let m = usize::try_from(m).map_err(|_| "member too large".to_string())?;
            if m > bound {
                return Err(format!("member {m} exceeds bound {bound}"));
            }
            set.insert(m);
        }
        Ok(set)
    }
}

impl ClassSet {
    fn empty(bound: usize, exact: bool) -> Self {
        ClassSet {
            bound,
            bits: vec![0; (bound + 1).div_ceil(64)],
            exact,
        }
    }

    fn insert(&mut self, m: usize) {
        self.bits[m / 64] |= 1u64 << (m % 64);
    }

    pub fn bound(&self) -> usize {
        self.bound
    }

    pub fn exact(&self) -> bool {
        self.exact
    }

    pub fn contains(&self, m: usize) -> bool {
        m <= self.bound && self.bits[m / 64] & (1u64 << (m % 64)) != 0
    }

    pub fn len(&self) -> usize {
        self.bits.iter().map(|b| b.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.iter().all(|&b| b == 0)
    }

    /// Sorted member indices.
    pub fn members(&self) -> Vec<u64> {
        let mut out = Vec::new();
        for (i, &block) in self.bits.iter().enumerate() {
            let mut block = block;
            while block != 0 {
                let bit = block.trailing_zeros() as usize;
                out.push((i * 64 + bit) as u64);
                block &= block - 1;
            }
        }
        out
    }

    fn intersect(mut self, other: &ClassSet) -> ClassSet {
        for (a, b) in self.bits.iter_mut().zip(&other.bits) {
            *a &= b;
        }
        self
    }

    fn union(mut self, other: &ClassSet) -> ClassSet {
        for (a, b) in self.bits.iter_mut().zip(&other.bits) {
            *a |= b;
        }
        self
    }

    /// Complement within `{0..bound}`.
    fn complement(mut self) -> ClassSet {
        for b in self.bits.iter_mut() {
            *b = !*b;
        }
        let used = (self.bound + 1) % 64;
        if used != 0 {
            *self.bits.last_mut().expect("nonempty") &= (1u64 << used) - 1;
        }
        self
    }
}

/// Members of a single atom within `{0..bound}`.
pub fn atom_members(atom: &ClassAtom, bound: usize) -> ClassSet {
    let expr = ClassExpr::Atom(atom.clone());
    eval_expr(&expr, bound)
}

fn eval_bits(expr: &ClassExpr, bound: usize) -> ClassSet {
    match expr {
        ClassExpr::Atom(atom) => {
            let mut set = ClassSet::empty(bound, false);
            for m in 0..=bound {
                if atom.member(&CyclicIndex::new(m as u64)) {
                    set.insert(m);
                }
            }
            set
        }
        ClassExpr::And(l, r) => eval_bits(l, bound).intersect(&eval_bits(r, bound)),
        ClassExpr::Or(l, r) => eval_bits(l, bound).union(&eval_bits(r, bound)),
        ClassExpr::Not(x) => eval_bits(x, bound).complement(),
    }
}

/// Bitset evaluation over the bounded universe. The `exact` flag of the
/// result is true when the exact decision procedure applies and the full
/// volume lies within the bound.
pub fn eval_expr(expr: &ClassExpr, bound: usize) -> ClassSet {
    let mut set = eval_bits(expr, bound);
    set.exact = match try_exact(expr) {
        Some(ExactVolume::Finite(members)) => members
            .iter()
            .all(|m| m.to_u64().is_some_and(|v| v <= bound as u64)),
        Some(ExactVolume::Infinite(_)) => false,
        None => false,
    };
    set
}

/// The exactly-determined volume of a conjunction of atoms.
#[derive(Debug, Clone, PartialEq, Eq)]
enum ExactVolume {
    /// The complete, finite volume in ascending order.
    Finite(Vec<CyclicIndex>),
    /// The volume is infinite; the listed members are its smallest elements.
    Infinite(Vec<CyclicIndex>),
}

fn divisors_u64(n: u64) -> Vec<u64> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut i = 1;
    while i * i <= n {
        if n % i == 0 {
            small.push(i);
            if i != n / i {
                large.push(n / i);
            }
        }
        i += 1;
    }
    large.reverse();
    small.extend(large);
    small
}

fn gcd_u64(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd_u64(b, a % b)
    }
}

/// Solves a conjunction of divisor/multiple constraints exactly.
fn classify_conjunction(atoms: &[ClassAtom]) -> ExactVolume {
    let member_of_all = |m: &CyclicIndex| atoms.iter().all(|a| a.member(m));

    // contraFr over the empty closure excludes everything.
    if atoms
        .iter()
        .any(|a| a.kind() == AtomKind::ContraFr && a.closure().is_zero())
    {
        return ExactVolume::Finite(Vec::new());
    }

    // Positive fragment constraints bound the volume by the divisors of the
    // gcd of their closures.
    let fr_gs: Vec<u64> = atoms
        .iter()
        .filter(|a| a.kind() == AtomKind::Fr && !a.closure().is_zero())
        .map(|a| a.closure().to_u64().expect("closures are word-length gcds"))
        .collect();
    if !fr_gs.is_empty() {
        let g = fr_gs.iter().copied().fold(0, gcd_u64);
        let volume = divisors_u64(g)
            .into_iter()
            .map(CyclicIndex::new)
            .filter(|m| member_of_all(m))
            .collect();
        return ExactVolume::Finite(volume);
    }

    // Only multiple-type constraints remain. A cofragment of the empty
    // closure pins the volume to the infinite chain alone.
    let zero = CyclicIndex::new(0);
    if atoms
        .iter()
        .any(|a| a.kind() == AtomKind::CoFr && a.closure().is_zero())
    {
        let volume = if member_of_all(&zero) { vec![zero] } else { Vec::new() };
        return ExactVolume::Finite(volume);
    }

    // Base progression: multiples of the lcm of the cofragment closures.
    let base = cyclic::inf_set(
        atoms
            .iter()
            .filter(|a| a.kind() == AtomKind::CoFr)
            .map(|a| a.closure()),
    );

    // A co-counter-fragment whose closure divides the base excludes the
    // entire progression.
    if atoms.iter().any(|a| {
        a.kind() == AtomKind::CoContraFr
            && !a.closure().is_zero()
            && a.closure().divides(&base)
    }) {
        let volume = if member_of_all(&zero) { vec![zero] } else { Vec::new() };
        return ExactVolume::Finite(volume);
    }

    // Otherwise the volume is infinite: the progression escapes every
    // remaining exclusion (each excluded multiple set is proper, and the
    // divisor exclusions of counter-fragments are finite). List the
    // smallest members.
    let mut examples = Vec::new();
    if member_of_all(&zero) {
        examples.push(zero);
    }
    let mut k = BigUint::from(1u32);
    while examples.len() < EXAMPLE_LIMIT {
        let m = CyclicIndex::from_biguint(base.value() * &k);
        if member_of_all(&m) {
            examples.push(m);
        }
        k += 1u32;
    }
    ExactVolume::Infinite(examples)
}

fn try_exact(expr: &ClassExpr) -> Option<ExactVolume> {
    expr.conjunction_atoms()
        .map(|atoms| classify_conjunction(&atoms))
}

/// Whether a classification is valid over the whole admissible class or
/// only over the bounded universe it was evaluated in.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Exactness {
    Exact,
    Bounded,
}

/// The volume classification of a representation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum VerdictKind {
    /// Empty volume.
    Contradictory,
    /// Exactly one compatible automaton.
    Complete(CyclicIndex),
    /// More than one compatible automaton; `full` is true when `examples`
    /// is the entire volume.
    Ambiguous {
        examples: Vec<CyclicIndex>,
        full: bool,
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Verdict {
    pub kind: VerdictKind,
    pub exactness: Exactness,
}

impl Verdict {
    pub fn to_json(&self) -> serde_json::Value {
        let mut obj = serde_json::Map::new();
        let index_json = |m: &CyclicIndex| -> serde_json::Value {
            match m.to_u64() {
                Some(v) => serde_json::Value::from(v),
                None => serde_json::Value::from(m.to_string()),
            }
        };
        match &self.kind {
            VerdictKind::Contradictory => {
                obj.insert("kind".into(), "contradictory".into());
            }
            VerdictKind::Complete(witness) => {
                obj.insert("kind".into(), "complete".into());
                obj.insert("witness".into(), index_json(witness));
            }
            VerdictKind::Ambiguous { examples, full } => {
                obj.insert("kind".into(), "ambiguous".into());
                obj.insert(
                    "examples".into(),
                    serde_json::Value::from(
                        examples.iter().map(index_json).collect::<Vec<_>>(),
                    ),
                );
                obj.insert("full".into(), (*full).into());
            }
        }
        obj.insert(
            "exact".into(),
            (self.exactness == Exactness::Exact).into(),
        );
        serde_json::Value::Object(obj)
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let scope = match self.exactness {
            Exactness::Exact => "exact",
            Exactness::Bounded => "bounded",
        };
        match &self.kind {
            VerdictKind::Contradictory => write!(f, "contradictory ({scope})"),
            VerdictKind::Complete(w) => write!(f, "complete: [{w}] ({scope})"),
            VerdictKind::Ambiguous { examples, full } => {
                let list = examples
                    .iter()
                    .map(|m| format!("[{m}]"))
                    .collect::<Vec<_>>()
                    .join(", ");
                if *full {
                    write!(f, "ambiguous: {{{list}}} ({scope})")
                } else {
                    write!(f, "ambiguous: {{{list}, ...}} ({scope})")
                }
            }
        }
    }
}

/// Classifies the volume of a representation.
///
/// Conjunctions of atoms are decided exactly over the whole class; other
/// expressions fall back to the bounded evaluation and say so.
pub fn classify(expr: &ClassExpr, bound: usize) -> Verdict {
    if let Some(volume) = try_exact(expr) {
        let kind = match volume {
            ExactVolume::Finite(ms) => match ms.len() {
                0 => VerdictKind::Contradictory,
                1 => VerdictKind::Complete(ms.into_iter().next().expect("one")),
                _ => VerdictKind::Ambiguous {
                    examples: ms,
                    full: true,
                },
            },
            ExactVolume::Infinite(examples) => VerdictKind::Ambiguous {
                examples,
                full: false,
            },
        };
        return Verdict {
            kind,
            exactness: Exactness::Exact,
        };
    }
    let set = eval_bits(expr, bound);
    let members = set.members();
    let kind = match members.len() {
        0 => VerdictKind::Contradictory,
        1 => VerdictKind::Complete(CyclicIndex::new(members[0])),
        _ => VerdictKind::Ambiguous {
            examples: members
                .iter()
                .take(EXAMPLE_LIMIT)
                .map(|&m| CyclicIndex::new(m))
                .collect(),
            full: false,
        },
    };
    Verdict {
        kind,
        exactness: Exactness::Bounded,
    }
}

/// The lattice operation a closure check runs under.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LatticeOp {
    Join,
    Meet,
}

impl LatticeOp {
    fn apply(self, a: &CyclicIndex, b: &CyclicIndex) -> CyclicIndex {
        match self {
            LatticeOp::Join => cyclic::join(a, b),
            LatticeOp::Meet => cyclic::meet(a, b),
        }
    }
}

/// Outcome of a closure check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ClosureCheck {
    Closed,
    Counterexample {
        a: CyclicIndex,
        b: CyclicIndex,
        combined: CyclicIndex,
    },
}

/// Tests whether the expression's members within `{0..bound}` are closed
/// under the given operation.
///
/// Pairs are drawn from the bounded universe, but membership of the
/// combined value is decided exactly, so results beyond the bound never
/// corrupt the verdict. The first counterexample in lexicographic order is
/// reported.
pub fn check_closure_property(expr: &ClassExpr, bound: usize, op: LatticeOp) -> ClosureCheck {
    let members: Vec<CyclicIndex> = (0..=bound as u64)
        .map(CyclicIndex::new)
        .filter(|m| expr.member(m))
        .collect();
    for a in &members {
        for b in &members {
            let combined = op.apply(a, b);
            if !expr.member(&combined) {
                return ClosureCheck::Counterexample {
                    a: a.clone(),
                    b: b.clone(),
                    combined,
                };
            }
        }
    }
    ClosureCheck::Closed
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::automaton::{make_cyclic_automaton, rho_subset};
    use crate::relations::parse_relations;

    fn atom(kind: AtomKind, text: &str) -> ClassAtom {
        ClassAtom::new(kind, parse_relations(text).unwrap()).unwrap()
    }

    fn expr_atom(kind: AtomKind, text: &str) -> ClassExpr {
        ClassExpr::Atom(atom(kind, text))
    }

    fn and(l: ClassExpr, r: ClassExpr) -> ClassExpr {
        ClassExpr::And(Box::new(l), Box::new(r))
    }

    #[test]
    fn contra_fr_of_top_excludes_only_top() {
        let set = atom_members(&atom(AtomKind::ContraFr, "1 = 0"), 6);
        assert_eq!(set.members(), vec![0, 2, 3, 4, 5, 6]);
    }

    #[test]
    fn fragment_of_bottom_is_everything() {
        let set = atom_members(&atom(AtomKind::Fr, "0 = 0"), 10);
        assert_eq!(set.members(), (0..=10).collect::<Vec<u64>>());
    }

    /// Brute-force oracle for cofragment membership: ρ_[m] ⊆ ρ_[2] checked
    /// by enumerating unary word pairs up to 2·lcm(m, 2) on the concrete
    /// automata, with [0] handled symbolically (its congruence is the
    /// identity, a subset of everything).
    #[test]
    fn co_fr_matches_rho_subset_oracle() {
        let two = make_cyclic_automaton(2).unwrap();
        let set = atom_members(&atom(AtomKind::CoFr, "2 = 0"), 10);
        for m in 0..=10u64 {
            let expected = if m == 0 {
                true
            } else {
                let am = make_cyclic_automaton(m).unwrap();
                // brute-force word-pair enumeration
                let bound = 2 * ((m as usize) * 2 / gcd_u64(m, 2) as usize);
                let words = crate::word::Alphabet::unary().words_up_to(bound);
                let mut ok = true;
                'outer: for u in &words {
                    for v in &words {
                        if am.congruent(u, v).unwrap() && !two.congruent(u, v).unwrap() {
                            ok = false;
                            break 'outer;
                        }
                    }
                }
                assert_eq!(ok, rho_subset(&am, &two).unwrap());
                ok
            };
            assert_eq!(set.contains(m as usize), expected, "m = {m}");
        }
        assert_eq!(set.members(), vec![0, 2, 4, 6, 8, 10]);
    }

    #[test]
    fn third_worked_example() {
        let expr = and(
            and(
                expr_atom(AtomKind::CoFr, "1 = 0"),
                expr_atom(AtomKind::ContraFr, "1 = 0"),
            ),
            and(
                expr_atom(AtomKind::Fr, "6 = 0"),
                expr_atom(AtomKind::CoContraFr, "6 = 0"),
            ),
        );
        let set = eval_expr(&expr, 100);
        assert_eq!(set.members(), vec![2, 3]);
        assert!(set.exact());

        let verdict = classify(&expr, 100);
        assert_eq!(verdict.exactness, Exactness::Exact);
        assert_eq!(
            verdict.kind,
            VerdictKind::Ambiguous {
                examples: vec![CyclicIndex::new(2), CyclicIndex::new(3)],
                full: true,
            }
        );
    }

    #[test]
    fn fragment_members_are_divisors() {
        let set = eval_expr(&expr_atom(AtomKind::Fr, "6 = 0"), 10);
        assert_eq!(set.members(), vec![1, 2, 3, 6]);
        assert!(set.exact());

        // Volume not fully inside the bound: not exact.
        let set = eval_expr(&expr_atom(AtomKind::Fr, "6 = 0"), 5);
        assert_eq!(set.members(), vec![1, 2, 3]);
        assert!(!set.exact());
    }

    #[test]
    fn contradiction_evaluates_empty() {
        let x = expr_atom(AtomKind::Fr, "6 = 0");
        let expr = and(x.clone(), ClassExpr::Not(Box::new(x)));
        for bound in [0, 1, 17, 100] {
            let set = eval_expr(&expr, bound);
            assert!(set.is_empty());
            assert!(set.exact());
        }
    }

    #[test]
    fn classify_complete() {
        let expr = and(
            expr_atom(AtomKind::Fr, "2 = 0"),
            expr_atom(AtomKind::CoFr, "2 = 0"),
        );
        let verdict = classify(&expr, 100);
        assert_eq!(verdict.kind, VerdictKind::Complete(CyclicIndex::new(2)));
        assert_eq!(verdict.exactness, Exactness::Exact);
    }

    #[test]
    fn classify_contradictory() {
        let expr = and(
            expr_atom(AtomKind::Fr, "2 = 0"),
            expr_atom(AtomKind::CoFr, "3 = 0"),
        );
        let verdict = classify(&expr, 100);
        assert_eq!(verdict.kind, VerdictKind::Contradictory);
        assert_eq!(verdict.exactness, Exactness::Exact);
    }

    #[test]
    fn classify_infinite_volume() {
        let expr = and(
            expr_atom(AtomKind::CoFr, "2 = 0"),
            expr_atom(AtomKind::ContraFr, "1 = 0"),
        );
        let verdict = classify(&expr, 100);
        assert_eq!(verdict.exactness, Exactness::Exact);
        match verdict.kind {
            VerdictKind::Ambiguous { examples, full } => {
                assert!(!full);
                let expected: Vec<CyclicIndex> =
                    [0u64, 2, 4, 6, 8, 10, 12, 14].map(CyclicIndex::new).into();
                assert_eq!(examples, expected);
            }
            other => panic!("expected ambiguous, got {other:?}"),
        }
    }

    #[test]
    fn classify_falls_back_to_bounded_for_unions() {
        let expr = ClassExpr::Or(
            Box::new(expr_atom(AtomKind::Fr, "4 = 0")),
            Box::new(expr_atom(AtomKind::Fr, "6 = 0")),
        );
        let verdict = classify(&expr, 100);
        assert_eq!(verdict.exactness, Exactness::Bounded);
        match verdict.kind {
            VerdictKind::Ambiguous { examples, full } => {
                assert!(!full);
                // divisors of 4 union divisors of 6
                let expected: Vec<CyclicIndex> =
                    [1u64, 2, 3, 4, 6].map(CyclicIndex::new).into();
                assert_eq!(examples, expected);
            }
            other => panic!("expected ambiguous, got {other:?}"),
        }
    }

    #[test]
    fn fr_and_cofr_pin_the_closure() {
        for g in 1..=30u64 {
            let text = format!("{g} = 0");
            let expr = and(
                expr_atom(AtomKind::Fr, &text),
                expr_atom(AtomKind::CoFr, &text),
            );
            let verdict = classify(&expr, 10);
            assert_eq!(verdict.kind, VerdictKind::Complete(CyclicIndex::new(g)));
            assert_eq!(verdict.exactness, Exactness::Exact);
        }
    }

    /// Independent lexicographic search for the first closure counterexample.
    fn brute_first_counterexample(
        expr: &ClassExpr,
        bound: usize,
        op: LatticeOp,
    ) -> Option<(u64, u64)> {
        let members: Vec<u64> = (0..=bound as u64)
            .filter(|&m| expr.member(&CyclicIndex::new(m)))
            .collect();
        for &a in &members {
            for &b in &members {
                let combined = op.apply(&CyclicIndex::new(a), &CyclicIndex::new(b));
                if !expr.member(&combined) {
                    return Some((a, b));
                }
            }
        }
        None
    }

    #[test]
    fn fragment_classes_are_closed() {
        let expr = expr_atom(AtomKind::Fr, "6 = 0");
        assert_eq!(
            check_closure_property(&expr, 30, LatticeOp::Join),
            ClosureCheck::Closed
        );
        assert_eq!(
            check_closure_property(&expr, 30, LatticeOp::Meet),
            ClosureCheck::Closed
        );
        assert_eq!(brute_first_counterexample(&expr, 30, LatticeOp::Join), None);
        assert_eq!(brute_first_counterexample(&expr, 30, LatticeOp::Meet), None);
    }

    #[test]
    fn contra_fragment_join_counterexample() {
        let expr = expr_atom(AtomKind::ContraFr, "6 = 0");
        assert_eq!(
            check_closure_property(&expr, 30, LatticeOp::Meet),
            ClosureCheck::Closed
        );
        let check = check_closure_property(&expr, 30, LatticeOp::Join);
        match &check {
            ClosureCheck::Counterexample { a, b, combined } => {
                assert!(expr.member(a) && expr.member(b));
                assert!(!expr.member(combined));
                let brute = brute_first_counterexample(&expr, 30, LatticeOp::Join).unwrap();
                assert_eq!((a.to_u64().unwrap(), b.to_u64().unwrap()), brute);
                // 4 and 5 both fail to divide 6, and gcd(4,5) = 1 divides it.
                assert_eq!(brute, (4, 5));
            }
            ClosureCheck::Closed => panic!("expected a counterexample"),
        }
    }

    #[test]
    fn combined_contra_cocontra_is_neither() {
        let expr = and(
            expr_atom(AtomKind::ContraFr, "1 = 0"),
            expr_atom(AtomKind::CoContraFr, "6 = 0"),
        );
        let join = check_closure_property(&expr, 30, LatticeOp::Join);
        let meet = check_closure_property(&expr, 30, LatticeOp::Meet);
        let cex = |check: &ClosureCheck| match check {
            ClosureCheck::Counterexample { a, b, .. } => {
                (a.to_u64().unwrap(), b.to_u64().unwrap())
            }
            ClosureCheck::Closed => panic!("expected a counterexample"),
        };
        // gcd(2,3) = 1 leaves the class; lcm(2,3) = 6 leaves the class.
        assert_eq!(cex(&join), (2, 3));
        assert_eq!(cex(&meet), (2, 3));
        assert_eq!(
            brute_first_counterexample(&expr, 30, LatticeOp::Join),
            Some((2, 3))
        );
        assert_eq!(
            brute_first_counterexample(&expr, 30, LatticeOp::Meet),
            Some((2, 3))
        );
    }

    #[test]
    fn class_set_json_round_trip() {
        let set = eval_expr(&expr_atom(AtomKind::Fr, "6 = 0"), 10);
        let json = serde_json::to_string(&set).unwrap();
        let back: ClassSet = serde_json::from_str(&json).unwrap();
        assert_eq!(back, set);
        assert!(json.contains("\"bound\":10"));
        assert!(json.contains("\"exact\":true"));
    }

    #[test]
    fn verdict_json_shape() {
        let expr = and(
            expr_atom(AtomKind::Fr, "2 = 0"),
            expr_atom(AtomKind::CoFr, "2 = 0"),
        );
        let json = classify(&expr, 10).to_json();
        assert_eq!(json["kind"], "complete");
        assert_eq!(json["witness"], 2);
        assert_eq!(json["exact"], true);
    }

    mod properties {
        use super::*;
        use proptest::prelude::*;

        proptest! {
            // Complement duality at every bound.
            #[test]
            fn complement_duality(g in 0u64..40, m in 0u64..40) {
                let rel = format!("{g} = 0");
                let fr = atom(AtomKind::Fr, &rel);
                let contra = atom(AtomKind::ContraFr, &rel);
                let cofr = atom(AtomKind::CoFr, &rel);
                let cocontra = atom(AtomKind::CoContraFr, &rel);
                let m = CyclicIndex::new(m);
                prop_assert_eq!(contra.member(&m), !fr.member(&m));
                prop_assert_eq!(cocontra.member(&m), !cofr.member(&m));
            }

            // Membership duality: m ∈ Fr(g) ⇔ g ∈ coFr(m).
            #[test]
            fn membership_duality(g in 0u64..100, m in 0u64..100) {
                let fr = atom(AtomKind::Fr, &format!("{g} = 0"));
                let cofr = atom(AtomKind::CoFr, &format!("{m} = 0"));
                prop_assert_eq!(
                    fr.member(&CyclicIndex::new(m)),
                    cofr.member(&CyclicIndex::new(g))
                );
            }

            // Monotonicity: g | g' implies Fr(g) ⊆ Fr(g').
            #[test]
            fn fragment_monotonicity(g in 1u64..30, k in 1u64..8, bound in 0usize..60) {
                let small = atom(AtomKind::Fr, &format!("{g} = 0"));
                let large = atom(AtomKind::Fr, &format!("{} = 0", g * k));
                let sm = atom_members(&small, bound);
                let lg = atom_members(&large, bound);
                for m in sm.members() {
                    prop_assert!(lg.contains(m as usize));
                }
            }

            // Composite-fragment law: members of Fr over a pair-set union are
            // the intersection of the members.
            #[test]
            fn composite_fragment_law(
                pairs1 in proptest::collection::vec((0usize..=20, 0usize..=20), 1..3),
                pairs2 in proptest::collection::vec((0usize..=20, 0usize..=20), 1..3),
            ) {
                let r1 = RelationSet::unary(pairs1);
                let r2 = RelationSet::unary(pairs2);
                let combined = cyclic::compose_sup(&r1, &r2).unwrap();
                let bound = 40;
                let fr = |rel: &RelationSet| {
                    atom_members(&ClassAtom::new(AtomKind::Fr, rel.clone()).unwrap(), bound)
                };
                let lhs = fr(&combined);
                let rhs: Vec<u64> = fr(&r1)
                    .members()
                    .into_iter()
                    .filter(|&m| fr(&r2).contains(m as usize))
                    .collect();
                prop_assert_eq!(lhs.members(), rhs);
            }

            // The exact classifier agrees with bounded evaluation inside the
            // bound for conjunctions.
            #[test]
            fn exact_agrees_with_bounded(
                g1 in 0u64..25,
                g2 in 0u64..25,
                k1 in 0usize..4,
                k2 in 0usize..4,
            ) {
                let kinds = [
                    AtomKind::Fr,
                    AtomKind::CoFr,
                    AtomKind::ContraFr,
                    AtomKind::CoContraFr,
                ];
                let expr = and(
                    expr_atom(kinds[k1], &format!("{g1} = 0")),
                    expr_atom(kinds[k2], &format!("{g2} = 0")),
                );
                let bound = 80usize;
                let set = eval_bits(&expr, bound);
                for m in 0..=bound as u64 {
                    prop_assert_eq!(
                        set.contains(m as usize),
                        expr.member(&CyclicIndex::new(m))
                    );
                }
            }
        }
    }
}
