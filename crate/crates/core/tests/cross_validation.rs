//! Cross-validation of the two closure engines: union-find folding against
//! rule saturation. The engines share no code paths, so agreement here is
//! the strongest internal evidence that both implement the same congruence.

use fragments_core::{
    closure_unary, fold_closure, relations_hold, make_cyclic_automaton, parse_relations,
    saturate_rules, Alphabet, RelationSet, RuleSet, Word,
};

/// xorshift64; fixed seeds keep the sampled relation sets reproducible.
struct Rng(u64);

impl Rng {
    fn next(&mut self) -> u64 {
        self.0 ^= self.0 << 13;
        self.0 ^= self.0 >> 7;
        self.0 ^= self.0 << 17;
        self.0
    }

    fn below(&mut self, n: u64) -> u64 {
        self.next() % n
    }
}

/// The relation set extended with the reflexive pair of every word of the
/// universe. This does not change the congruence, but forces the prefix
/// tree to cover all words up to the bound, so every word has a quotient
/// state.
fn augmented(rel: &RelationSet, bound: usize) -> RelationSet {
    let words = rel.alphabet().words_up_to(bound);
    RelationSet::new(
        rel.alphabet().clone(),
        rel.pairs()
            .cloned()
            .chain(words.into_iter().map(|w| (w.clone(), w))),
    )
    .expect("same alphabet")
}

/// Four-rule saturation must derive (u, v) exactly when u and v fold to the
/// same quotient state.
fn assert_four_rule_matches_fold(rel: &RelationSet, bound: usize) {
    let sat = saturate_rules(rel, bound, RuleSet::FourRule).expect("four-rule is total");
    let quotient = fold_closure(&augmented(rel, bound));
    let words = rel.alphabet().words_up_to(bound);
    let states: Vec<usize> = words
        .iter()
        .map(|w| {
            quotient
                .run(w)
                .expect("in alphabet")
                .expect("tree covers all words")
        })
        .collect();
    for i in 0..words.len() {
        for j in 0..words.len() {
            assert_eq!(
                sat.contains_by_index(i, j),
                states[i] == states[j],
                "disagreement on ({}, {}) for {rel}",
                words[i],
                words[j],
            );
        }
    }
}

fn random_word(rng: &mut Rng, alphabet: &Alphabet, max_len: usize) -> Word {
    let len = rng.below(max_len as u64 + 1) as usize;
    Word::new(
        (0..len).map(|_| alphabet.symbols()[rng.below(alphabet.len() as u64) as usize]),
    )
}

#[test]
fn four_rule_matches_fold_on_unary_sets() {
    // Exhaustive over one- and two-pair unary sets with words up to length 6.
    let mut sets = vec![RelationSet::unary([])];
    for n in 0..=6 {
        for m in 0..=6 {
            sets.push(RelationSet::unary([(n, m)]));
            for p in 0..=6 {
                for q in 0..=6 {
                    if (n, m) < (p, q) {
                        sets.push(RelationSet::unary([(n, m), (p, q)]));
                    }
                }
            }
        }
    }
    for rel in &sets {
        assert_four_rule_matches_fold(rel, 6);
    }
}

#[test]
fn four_rule_matches_fold_on_sampled_binary_sets() {
    let alphabet = Alphabet::new(['a', 'b']);
    let mut rng = Rng(0x5eed_cafe_f00d_0001);
    for _ in 0..48 {
        let pair_count = 1 + rng.below(4) as usize;
        let pairs: Vec<(Word, Word)> = (0..pair_count)
            .map(|_| {
                (
                    random_word(&mut rng, &alphabet, 8),
                    random_word(&mut rng, &alphabet, 8),
                )
            })
            .collect();
        let rel = RelationSet::new(alphabet.clone(), pairs).expect("in alphabet");
        assert_four_rule_matches_fold(&rel, 8);
    }
}

#[test]
fn four_rule_matches_fold_on_structured_sets() {
    for text in [
        "alphabet: ab\nab = e",
        "alphabet: ab\nab = e\naa = b",
        "alphabet: ab\naba = b\nbb = e\na = aaa",
        "alphabet: ab\naaaa = e\nbb = aa",
        "3 = 0",
        "7 = 3",
    ] {
        let rel = parse_relations(text).expect("valid");
        assert_four_rule_matches_fold(&rel, 6);
    }
}

#[test]
fn five_rule_matches_closure_on_small_sets() {
    // Exhaustive over <= 2-pair unary sets with entries <= 10, at saturation
    // bound 16.
    let bound = 16usize;
    let mut sets = vec![RelationSet::unary([])];
    for n in 0..=10 {
        for m in 0..=10 {
            sets.push(RelationSet::unary([(n, m)]));
            for p in 0..=10 {
                for q in 0..=10 {
                    if (n, m) < (p, q) {
                        sets.push(RelationSet::unary([(n, m), (p, q)]));
                    }
                }
            }
        }
    }
    for rel in &sets {
        let g = closure_unary(rel).expect("unary").to_u64().expect("small");
        let sat = saturate_rules(rel, bound, RuleSet::FiveRuleUnary).expect("unary");
        assert_eq!(sat.unary_period(), Some(g), "period mismatch for {rel}");
        for p in 0..=bound {
            for q in 0..=bound {
                let divides = if g == 0 {
                    p == q
                } else {
                    p.abs_diff(q) as u64 % g == 0
                };
                assert_eq!(
                    sat.contains_lengths(p, q),
                    divides,
                    "characterization fails for {rel} at ({p}, {q})"
                );
            }
        }
    }
}

#[test]
fn fold_soundness_on_sampled_sets() {
    // Every input pair lands on one quotient state.
    let mut rng = Rng(0xfeed_0002);
    for symbols in [1usize, 2] {
        let alphabet = if symbols == 1 {
            Alphabet::unary()
        } else {
            Alphabet::new(['a', 'b'])
        };
        for _ in 0..40 {
            let pair_count = 1 + rng.below(4) as usize;
            let pairs: Vec<(Word, Word)> = (0..pair_count)
                .map(|_| {
                    (
                        random_word(&mut rng, &alphabet, 8),
                        random_word(&mut rng, &alphabet, 8),
                    )
                })
                .collect();
            let rel = RelationSet::new(alphabet.clone(), pairs).expect("in alphabet");
            let quotient = fold_closure(&rel);
            for (u, v) in rel.pairs() {
                let su = quotient.run(u).expect("in alphabet");
                let sv = quotient.run(v).expect("in alphabet");
                assert!(su.is_some() && su == sv, "pair ({u}, {v}) split in {rel}");
            }
        }
    }
}

#[test]
fn maximality_of_unary_closures_at_small_scale() {
    // For closure g >= 1, the cycles satisfying the relations are exactly
    // the divisors of g.
    let automata: Vec<_> = (1u64..=60)
        .map(|m| make_cyclic_automaton(m).expect("positive"))
        .collect();
    let mut checked = 0usize;
    for n in 0..=12usize {
        for m in 0..=12usize {
            for p in 0..=12usize {
                for q in 0..=12usize {
                    if (n, m) > (p, q) {
                        continue;
                    }
                    let rel = RelationSet::unary([(n, m), (p, q)]);
                    let g = closure_unary(&rel).expect("unary").to_u64().expect("small");
                    if g == 0 {
                        continue;
                    }
                    checked += 1;
                    for (idx, automaton) in automata.iter().enumerate() {
                        let m = idx as u64 + 1;
                        let holds = relations_hold(automaton, &rel).expect("unary");
                        assert_eq!(
                            holds,
                            g % m == 0,
                            "maximality fails for {rel} at m={m}"
                        );
                    }
                }
            }
        }
    }
    assert!(checked > 5_000, "expected a substantial sweep, got {checked}");
}
