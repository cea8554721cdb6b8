//! Synthesis of automata from systems of defining relations, and the
//! set algebra of the classes those relations represent.
//!
//! The library has four layers:
//!
//! * [`automaton`]: deterministic connected initial automata without output,
//!   their right congruences, and structural comparisons (congruence
//!   inclusion, homomorphism, canonical-form isomorphism);
//! * [`relations`] and [`folding`]: defining relations and their
//!   right-congruence closure by prefix-tree folding, with [`saturation`]
//!   as an independent rule-application oracle;
//! * [`cyclic`]: the admissible class of cyclic unary automata, where
//!   closure is a gcd, the fragment order is divisibility, and join/meet
//!   are gcd/lcm;
//! * [`algebra`]: fragment, cofragment, counter-fragment and
//!   co-counter-fragment atoms over relations, set expressions over them,
//!   bounded and exact evaluation, and volume classification.
//!
//! [`verify`] packages the invariant and theorem checks the CLI exposes.

pub mod algebra;
pub mod automaton;
pub mod cyclic;
pub mod error;
pub mod folding;
pub mod relations;
pub mod saturation;
pub mod verify;
pub mod word;

pub use algebra::{
    atom_members, check_closure_property, classify, eval_expr, parse_expr, AtomKind, ClassAtom,
    ClassExpr, ClassSet, ClosureCheck, Exactness, LatticeOp, Verdict, VerdictKind,
};
pub use automaton::{
    hom_exists, isomorphic, make_cyclic_automaton, rho_subset, Automaton, PartialAutomaton,
};
pub use cyclic::{
    accepts, closure_unary, compose_inf, compose_sup, inf_set, join, le, meet, sup_set,
    CyclicIndex,
};
pub use error::{Error, Result};
pub use folding::fold_closure;
pub use relations::{parse_relations, relations_hold, RelationSet};
pub use saturation::{saturate_rules, DerivationSet, RuleSet};
pub use word::{Alphabet, Word};
