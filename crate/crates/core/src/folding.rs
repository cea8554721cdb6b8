//! Right-congruence closure by prefix-tree folding.
//!
//! The words occurring in a relation set span a prefix tree. Folding merges
//! the two nodes of each relation pair and propagates merges by right
//! extension: whenever two classes coincide, their successors on each symbol
//! must coincide as well. The reachable quotient of the tree under the final
//! partition is the closure's automaton, returned partial because the tree
//! is finite.
//!
//! Termination is immediate: every effective merge decreases the number of
//! classes of a finite tree.

use crate::automaton::PartialAutomaton;
use crate::relations::RelationSet;
use crate::word::Word;

/// Union-find with path compression and union by size.
#[derive(Debug)]
struct UnionFind {
    parent: Vec<usize>,
    size: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
            size: vec![1; n],
        }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            // path halving
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    /// Returns `(kept_root, absorbed_root)`, or None when already joined.
    fn union(&mut self, x: usize, y: usize) -> Option<(usize, usize)> {
        let rx = self.find(x);
        let ry = self.find(y);
        if rx == ry {
            return None;
        }
        let (keep, absorb) = if self.size[rx] >= self.size[ry] {
            (rx, ry)
        } else {
            (ry, rx)
        };
        self.parent[absorb] = keep;
        self.size[keep] += self.size[absorb];
        Some((keep, absorb))
    }
}

/// Prefix tree over the fixed symbol order; node 0 is the empty word.
struct PrefixTree {
    children: Vec<Vec<Option<usize>>>,
    symbols: usize,
}

impl PrefixTree {
    fn new(symbols: usize) -> Self {
        PrefixTree {
            children: vec![vec![None; symbols]],
            symbols,
        }
    }

    fn insert(&mut self, word: &Word, index_of: impl Fn(char) -> usize) -> usize {
        let mut node = 0;
        for &s in word.symbols() {
            let i = index_of(s);
            node = match self.children[node][i] {
                Some(child) => child,
                None => {
                    let child = self.children.len();
                    self.children.push(vec![None; self.symbols]);
                    self.children[node][i] = Some(child);
                    child
                }
            };
        }
        node
    }
}

/// Folds the prefix tree of `rel` and returns the reachable quotient, with
/// states numbered breadth-first from the initial class in symbol order.
///
/// Every pair of `rel` maps to a single quotient state, and the quotient's
/// word-to-state map is the least right congruence containing `rel`,
/// restricted to the words of the tree.
pub fn fold_closure(rel: &RelationSet) -> PartialAutomaton {
    let alphabet = rel.alphabet().clone();
    let k = alphabet.len();
    let index_of = |c: char| alphabet.index_of(c).expect("relation words are checked");

    let mut tree = PrefixTree::new(k);
    let mut seeds = Vec::with_capacity(rel.len());
    for (u, v) in rel.pairs() {
        let nu = tree.insert(u, index_of);
        let nv = tree.insert(v, index_of);
        seeds.push((nu, nv));
    }

    let n = tree.children.len();
    let mut uf = UnionFind::new(n);
    // Per-root successor table; entries name arbitrary class members, so
    // reads go through find().
    let mut succ: Vec<Vec<Option<usize>>> = tree.children.clone();

    let mut worklist = seeds;
    while let Some((x, y)) = worklist.pop() {
        let rx = uf.find(x);
        let ry = uf.find(y);
        if rx == ry {
            continue;
        }
        let (keep, absorb) = uf.union(rx, ry).expect("distinct roots");
        for i in 0..k {
            match (succ[keep][i], succ[absorb][i]) {
                (Some(a), Some(b)) => {
                    if uf.find(a) != uf.find(b) {
                        worklist.push((a, b));
                    }
                }
                (None, Some(b)) => succ[keep][i] = Some(b),
                _ => {}
            }
        }
    }

    // Number the classes breadth-first from the class of the empty word.
    let root = uf.find(0);
    let mut id: Vec<Option<usize>> = vec![None; n];
    id[root] = Some(0);
    let mut order = vec![root];
    let mut head = 0;
    while head < order.len() {
        let class = order[head];
        head += 1;
        for i in 0..k {
            if let Some(t) = succ[class][i] {
                let rt = uf.find(t);
                if id[rt].is_none() {
                    id[rt] = Some(order.len());
                    order.push(rt);
                }
            }
        }
    }

    let transitions = order
        .iter()
        .map(|&class| {
            (0..k)
                .map(|i| succ[class][i].map(|t| id[uf.find(t)].expect("reachable")))
                .collect()
        })
        .collect();
    PartialAutomaton::from_parts(alphabet, transitions, None)
}
