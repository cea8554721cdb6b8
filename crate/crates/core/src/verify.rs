//! Named property checks behind the CLI `verify` subcommand.
//!
//! Every check is pure and parameterized by the universe bound; failures
//! carry the first counterexample found. Degenerate bounds make the closure
//! checks vacuous, which counts as a pass.

use crate::algebra::{
    check_closure_property, eval_expr, AtomKind, ClassAtom, ClassExpr, ClosureCheck, LatticeOp,
};
use crate::automaton::{hom_exists, isomorphic, make_cyclic_automaton, rho_subset};
use crate::cyclic::{self, closure_unary, CyclicIndex};
use crate::folding::fold_closure;
use crate::relations::RelationSet;
use crate::saturation::{saturate_rules, RuleSet};

/// Outcome of one named check.
#[derive(Debug, Clone)]
pub struct PropertyReport {
    pub name: &'static str,
    pub passed: bool,
    pub details: String,
}

impl PropertyReport {
    fn pass(name: &'static str, details: impl Into<String>) -> Self {
        PropertyReport {
            name,
            passed: true,
            details: details.into(),
        }
    }

    fn fail(name: &'static str, details: impl Into<String>) -> Self {
        PropertyReport {
            name,
            passed: false,
            details: details.into(),
        }
    }
}

/// Runs the whole suite at the given bound.
pub fn run_suite(bound: usize) -> Vec<PropertyReport> {
    vec![
        lattice_laws(bound),
        order_compatibility(bound),
        lattice_units(bound),
        no_complements(bound),
        structure_consistency(bound),
        defining_relations(bound),
        oracle_agreement(),
        atom_duality(bound),
        theorem_fragment_classes(bound),
        theorem_contra_fragment(bound),
        theorem_cocontra_fragment(bound),
        theorem_combined_class(bound),
        worked_class_expressions(bound),
    ]
}

fn c(n: u64) -> CyclicIndex {
    CyclicIndex::new(n)
}

fn lattice_laws(bound: usize) -> PropertyReport {
    let name = "lattice-laws";
    let n = bound as u64;
    for a in 0..=n {
        for b in 0..=n {
            let (ca, cb) = (c(a), c(b));
            if cyclic::join(&ca, &cb) != cyclic::join(&cb, &ca)
                || cyclic::meet(&ca, &cb) != cyclic::meet(&cb, &ca)
            {
                return PropertyReport::fail(name, format!("commutativity fails at ({a}, {b})"));
            }
            if cyclic::join(&ca, &cyclic::meet(&ca, &cb)) != ca
                || cyclic::meet(&ca, &cyclic::join(&ca, &cb)) != ca
            {
                return PropertyReport::fail(name, format!("absorption fails at ({a}, {b})"));
            }
        }
        if cyclic::join(&c(a), &c(a)) != c(a) || cyclic::meet(&c(a), &c(a)) != c(a) {
            return PropertyReport::fail(name, format!("idempotence fails at {a}"));
        }
    }
    let assoc_bound = n.min(64);
    for a in 0..=assoc_bound {
        for b in 0..=assoc_bound {
            for x in 0..=assoc_bound {
                let (ca, cb, cx) = (c(a), c(b), c(x));
                if cyclic::join(&ca, &cyclic::join(&cb, &cx))
                    != cyclic::join(&cyclic::join(&ca, &cb), &cx)
                    || cyclic::meet(&ca, &cyclic::meet(&cb, &cx))
                        != cyclic::meet(&cyclic::meet(&ca, &cb), &cx)
                {
                    return PropertyReport::fail(
                        name,
                        format!("associativity fails at ({a}, {b}, {x})"),
                    );
                }
            }
        }
    }
    PropertyReport::pass(
        name,
        format!("pairs <= {n}, associativity triples <= {assoc_bound}"),
    )
}

fn order_compatibility(bound: usize) -> PropertyReport {
    let name = "order-compatibility";
    let n = bound as u64;
    for a in 0..=n {
        for b in 0..=n {
            let (ca, cb) = (c(a), c(b));
            let le = cyclic::le(&ca, &cb);
            if le != (cyclic::join(&ca, &cb) == cb) || le != (cyclic::meet(&ca, &cb) == ca) {
                return PropertyReport::fail(name, format!("mismatch at ({a}, {b})"));
            }
        }
    }
    PropertyReport::pass(name, format!("le/join/meet agree on pairs <= {n}"))
}

fn lattice_units(bound: usize) -> PropertyReport {
    let name = "lattice-units";
    if cyclic::sup_set([]) != c(0) || cyclic::inf_set([]) != c(1) {
        return PropertyReport::fail(name, "empty sup/inf are not [0]/[1]".to_string());
    }
    for n in 0..=bound as u64 {
        let cn = c(n);
        if cyclic::join(&cn, &c(1)) != c(1)
            || cyclic::meet(&cn, &c(1)) != cn
            || cyclic::join(&cn, &c(0)) != cn
            || cyclic::meet(&cn, &c(0)) != c(0)
        {
            return PropertyReport::fail(name, format!("unit law fails at {n}"));
        }
    }
    PropertyReport::pass(name, format!("top/bottom laws hold for n <= {bound}"))
}

fn no_complements(bound: usize) -> PropertyReport {
    let name = "no-complements";
    let a_max = (bound as u64).min(30);
    let b_max = 10_000u64;
    for a in 0..=a_max {
        for b in 0..=b_max {
            let complementary = cyclic::join(&c(a), &c(b)) == c(1)
                && cyclic::meet(&c(a), &c(b)) == c(0);
            let trivial = (a == 0 && b == 1) || (a == 1 && b == 0);
            if complementary && !trivial {
                return PropertyReport::fail(name, format!("({a}, {b}) are complements"));
            }
        }
    }
    PropertyReport::pass(
        name,
        format!("only ([0], [1]) are complementary for a <= {a_max}, b <= {b_max}"),
    )
}

fn structure_consistency(bound: usize) -> PropertyReport {
    let name = "structure-consistency";
    let n_max = (bound as u64).min(50).max(1);
    let automata: Vec<_> = (1..=n_max)
        .map(|n| make_cyclic_automaton(n).expect("positive"))
        .collect();
    for n in 1..=n_max {
        for m in 1..=n_max {
            let by_order = cyclic::le(&c(n), &c(m));
            let by_rho = rho_subset(&automata[(n - 1) as usize], &automata[(m - 1) as usize])
                .expect("same alphabet");
            let by_hom = hom_exists(&automata[(n - 1) as usize], &automata[(m - 1) as usize])
                .expect("same alphabet");
            if by_order != by_rho || by_order != by_hom {
                return PropertyReport::fail(
                    name,
                    format!("divergence at ([{n}], [{m}]): le={by_order} rho={by_rho} hom={by_hom}"),
                );
            }
        }
    }
    PropertyReport::pass(
        name,
        format!("divisibility, congruence inclusion and homomorphism agree for n, m <= {n_max}"),
    )
}

fn defining_relations(bound: usize) -> PropertyReport {
    let name = "defining-relations";
    let close_max = bound as u64;
    for n in 1..=close_max {
        let rel = RelationSet::unary([(n as usize, 0)]);
        if closure_unary(&rel).expect("unary") != c(n) {
            return PropertyReport::fail(name, format!("closure of {{({n}, 0)}} is not {n}"));
        }
    }
    let fold_max = close_max.min(30);
    for n in 1..=fold_max {
        let rel = RelationSet::unary([(n as usize, 0)]);
        let quotient = fold_closure(&rel);
        let ok = quotient.is_complete()
            && isomorphic(
                &quotient.to_complete().expect("complete"),
                &make_cyclic_automaton(n).expect("positive"),
            );
        if !ok {
            return PropertyReport::fail(name, format!("folding {{({n}, 0)}} is not the {n}-cycle"));
        }
    }
    PropertyReport::pass(
        name,
        format!("closures for n <= {close_max}, foldings for n <= {fold_max}"),
    )
}

fn oracle_agreement() -> PropertyReport {
    let name = "oracle-agreement";
    let entries = 8usize;
    let sat_bound = 16usize;
    let mut sets = vec![RelationSet::unary([])];
    for n in 0..=entries {
        for m in 0..=entries {
            sets.push(RelationSet::unary([(n, m)]));
            for p in 0..=entries {
                for q in 0..=entries {
                    if (n, m) < (p, q) {
                        sets.push(RelationSet::unary([(n, m), (p, q)]));
                    }
                }
            }
        }
    }
    for rel in &sets {
        let g = closure_unary(rel).expect("unary");
        let sat = saturate_rules(rel, sat_bound, RuleSet::FiveRuleUnary).expect("unary");
        if sat.unary_period() != g.to_u64() {
            return PropertyReport::fail(
                name,
                format!("period mismatch for {rel:?}: closure {g}"),
            );
        }
        let gv = g.to_u64().expect("small");
        for p in 0..=sat_bound {
            for q in 0..=sat_bound {
                let derived = sat.contains_lengths(p, q);
                let divides = if gv == 0 {
                    p == q
                } else {
                    p.abs_diff(q) as u64 % gv == 0
                };
                if derived != divides {
                    return PropertyReport::fail(
                        name,
                        format!("characterization fails for {rel:?} at ({p}, {q})"),
                    );
                }
            }
        }
    }
    PropertyReport::pass(
        name,
        format!(
            "five-rule saturation matches closures on {} relation sets (entries <= {entries})",
            sets.len()
        ),
    )
}

fn atom_duality(bound: usize) -> PropertyReport {
    let name = "atom-duality";
    let g_max = (bound as u64).min(100);
    for g in 0..=g_max {
        let rel = RelationSet::unary([(g as usize, 0)]);
        let fr = ClassAtom::new(AtomKind::Fr, rel.clone()).expect("unary");
        let cofr = ClassAtom::new(AtomKind::CoFr, rel.clone()).expect("unary");
        let contra = ClassAtom::new(AtomKind::ContraFr, rel.clone()).expect("unary");
        let cocontra = ClassAtom::new(AtomKind::CoContraFr, rel).expect("unary");
        for m in 0..=g_max {
            let cm = c(m);
            if contra.member(&cm) != !fr.member(&cm)
                || cocontra.member(&cm) != !cofr.member(&cm)
            {
                return PropertyReport::fail(name, format!("complement duality fails at ({g}, {m})"));
            }
            let cofr_m = ClassAtom::new(
                AtomKind::CoFr,
                RelationSet::unary([(m as usize, 0)]),
            )
            .expect("unary");
            if fr.member(&cm) != cofr_m.member(&c(g)) {
                return PropertyReport::fail(name, format!("membership duality fails at ({g}, {m})"));
            }
        }
    }
    PropertyReport::pass(name, format!("dualities hold for g, m <= {g_max}"))
}

fn atom_expr(kind: AtomKind, g: u64) -> ClassExpr {
    ClassExpr::Atom(ClassAtom::new(kind, RelationSet::unary([(g as usize, 0)])).expect("unary"))
}

/// Independent search for the lexicographically first closure violation.
fn brute_counterexample(
    expr: &ClassExpr,
    bound: usize,
    op: LatticeOp,
) -> Option<(u64, u64)> {
    let members: Vec<u64> = (0..=bound as u64)
        .filter(|&m| expr.member(&c(m)))
        .collect();
    let apply = |a: u64, b: u64| match op {
        LatticeOp::Join => cyclic::join(&c(a), &c(b)),
        LatticeOp::Meet => cyclic::meet(&c(a), &c(b)),
    };
    for &a in &members {
        for &b in &members {
            if !expr.member(&apply(a, b)) {
                return Some((a, b));
            }
        }
    }
    None
}

/// Validates a closure check against the brute search: same verdict, same
/// first counterexample.
fn closure_check_consistent(
    expr: &ClassExpr,
    bound: usize,
    op: LatticeOp,
) -> std::result::Result<Option<(u64, u64)>, String> {
    let reported = check_closure_property(expr, bound, op);
    let brute = brute_counterexample(expr, bound, op);
    match (&reported, &brute) {
        (ClosureCheck::Closed, None) => Ok(None),
        (ClosureCheck::Counterexample { a, b, combined }, Some((ba, bb))) => {
            let pair = (a.to_u64().unwrap_or(u64::MAX), b.to_u64().unwrap_or(u64::MAX));
            if pair != (*ba, *bb) {
                return Err(format!("reported {pair:?}, brute search found {brute:?}"));
            }
            if expr.member(combined) || !expr.member(a) || !expr.member(b) {
                return Err(format!("reported counterexample {pair:?} is not valid"));
            }
            Ok(Some(pair))
        }
        _ => Err(format!("verdict mismatch: {reported:?} vs brute {brute:?}")),
    }
}

fn theorem_fragment_classes(bound: usize) -> PropertyReport {
    let name = "theorem-fr-cofr-lattices";
    let g_max = (bound as u64).min(50);
    for g in 1..=g_max {
        for kind in [AtomKind::Fr, AtomKind::CoFr] {
            let expr = atom_expr(kind, g);
            for op in [LatticeOp::Join, LatticeOp::Meet] {
                match closure_check_consistent(&expr, bound, op) {
                    Ok(None) => {}
                    Ok(Some(cex)) => {
                        return PropertyReport::fail(
                            name,
                            format!("{}(g={g}) not closed: counterexample {cex:?}", kind.name()),
                        )
                    }
                    Err(msg) => return PropertyReport::fail(name, msg),
                }
            }
        }
    }
    PropertyReport::pass(
        name,
        format!("Fr and coFr closed under join and meet for g <= {g_max}"),
    )
}

fn theorem_contra_fragment(bound: usize) -> PropertyReport {
    let name = "theorem-contra-semilattice";
    let g_max = (bound as u64).min(50);
    let mut join_cexs = 0usize;
    for g in 1..=g_max {
        let expr = atom_expr(AtomKind::ContraFr, g);
        match closure_check_consistent(&expr, bound, LatticeOp::Meet) {
            Ok(None) => {}
            Ok(Some(cex)) => {
                return PropertyReport::fail(
                    name,
                    format!("contraFr(g={g}) not meet-closed: {cex:?}"),
                )
            }
            Err(msg) => return PropertyReport::fail(name, msg),
        }
        match closure_check_consistent(&expr, bound, LatticeOp::Join) {
            Ok(Some(_)) => join_cexs += 1,
            Ok(None) => {}
            Err(msg) => return PropertyReport::fail(name, msg),
        }
    }
    // g = 6 must exhibit a join counterexample once 4 and 5 are in range.
    if bound >= 5 && g_max >= 6 {
        let expr = atom_expr(AtomKind::ContraFr, 6);
        match check_closure_property(&expr, bound, LatticeOp::Join) {
            ClosureCheck::Counterexample { .. } => {}
            ClosureCheck::Closed => {
                return PropertyReport::fail(name, "contraFr(g=6) join unexpectedly closed")
            }
        }
    }
    PropertyReport::pass(
        name,
        format!("meet-closed for g <= {g_max}; join counterexamples at {join_cexs} values of g"),
    )
}

fn theorem_cocontra_fragment(bound: usize) -> PropertyReport {
    let name = "theorem-cocontra-semilattice";
    let g_max = (bound as u64).min(50);
    let mut meet_cexs = 0usize;
    for g in 1..=g_max {
        let expr = atom_expr(AtomKind::CoContraFr, g);
        match closure_check_consistent(&expr, bound, LatticeOp::Join) {
            Ok(None) => {}
            Ok(Some(cex)) => {
                return PropertyReport::fail(
                    name,
                    format!("cocontraFr(g={g}) not join-closed: {cex:?}"),
                )
            }
            Err(msg) => return PropertyReport::fail(name, msg),
        }
        match closure_check_consistent(&expr, bound, LatticeOp::Meet) {
            Ok(Some(_)) => meet_cexs += 1,
            Ok(None) => {}
            Err(msg) => return PropertyReport::fail(name, msg),
        }
    }
    if bound >= 3 && g_max >= 6 {
        let expr = atom_expr(AtomKind::CoContraFr, 6);
        match check_closure_property(&expr, bound, LatticeOp::Meet) {
            ClosureCheck::Counterexample { .. } => {}
            ClosureCheck::Closed => {
                return PropertyReport::fail(name, "cocontraFr(g=6) meet unexpectedly closed")
            }
        }
    }
    PropertyReport::pass(
        name,
        format!("join-closed for g <= {g_max}; meet counterexamples at {meet_cexs} values of g"),
    )
}

fn theorem_combined_class(bound: usize) -> PropertyReport {
    let name = "theorem-combined-neither";
    let expr = ClassExpr::And(
        Box::new(atom_expr(AtomKind::ContraFr, 1)),
        Box::new(atom_expr(AtomKind::CoContraFr, 6)),
    );
    if bound < 3 {
        return PropertyReport::pass(name, "vacuous below bound 3".to_string());
    }
    let mut cexs = Vec::new();
    for op in [LatticeOp::Join, LatticeOp::Meet] {
        match closure_check_consistent(&expr, bound, op) {
            Ok(Some(cex)) => cexs.push(cex),
            Ok(None) => {
                return PropertyReport::fail(
                    name,
                    format!("contraFr(1=0)&cocontraFr(6=0) closed under {op:?}"),
                )
            }
            Err(msg) => return PropertyReport::fail(name, msg),
        }
    }
    PropertyReport::pass(
        name,
        format!("join counterexample {:?}, meet counterexample {:?}", cexs[0], cexs[1]),
    )
}

fn worked_class_expressions(bound: usize) -> PropertyReport {
    let name = "worked-class-expressions";
    // Per the definitions: coFr(1=0) & contraFr(1=0) is everything but [1].
    let first = ClassExpr::And(
        Box::new(atom_expr(AtomKind::CoFr, 1)),
        Box::new(atom_expr(AtomKind::ContraFr, 1)),
    );
    let set = eval_expr(&first, bound);
    for m in 0..=bound as u64 {
        if set.contains(m as usize) != (m != 1) {
            return PropertyReport::fail(name, format!("first expression wrong at {m}"));
        }
    }
    // coFr(2=0) & contraFr(1=0): the even indices together with [0].
    let second = ClassExpr::And(
        Box::new(atom_expr(AtomKind::CoFr, 2)),
        Box::new(atom_expr(AtomKind::ContraFr, 1)),
    );
    let set = eval_expr(&second, bound);
    for m in 0..=bound as u64 {
        if set.contains(m as usize) != (m % 2 == 0) {
            return PropertyReport::fail(name, format!("second expression wrong at {m}"));
        }
    }
    // The third expression pins {[2], [3]}.
    let third = ClassExpr::And(
        Box::new(ClassExpr::And(
            Box::new(atom_expr(AtomKind::CoFr, 1)),
            Box::new(atom_expr(AtomKind::ContraFr, 1)),
        )),
        Box::new(ClassExpr::And(
            Box::new(atom_expr(AtomKind::Fr, 6)),
            Box::new(atom_expr(AtomKind::CoContraFr, 6)),
        )),
    );
    let set = eval_expr(&third, bound);
    let expected: Vec<u64> = [2u64, 3].into_iter().filter(|&m| m <= bound as u64).collect();
    if set.members() != expected {
        return PropertyReport::fail(
            name,
            format!("third expression evaluated to {:?}", set.members()),
        );
    }
    PropertyReport::pass(
        name,
        "definition-faithful volumes for the three worked expressions".to_string(),
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn full_suite_passes_at_fifty() {
        let reports = run_suite(50);
        for r in &reports {
            assert!(r.passed, "{}: {}", r.name, r.details);
        }
        assert_eq!(reports.len(), 13);
    }

    #[test]
    fn degenerate_bound_is_vacuously_green() {
        for r in run_suite(1) {
            assert!(r.passed, "{}: {}", r.name, r.details);
        }
    }
}
