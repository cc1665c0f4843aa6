//! Enumeration of the normal closure of a set of relators.
//!
//! Candidates are processed smallest first (length, then shortlex). Each new
//! consequence spawns its inverse, its conjugates by single letters, and its
//! products with every consequence found so far. Once a single letter is
//! shown trivial, that generator is deleted from every later candidate; this
//! is sound because deleting a trivial letter does not change the element.

use std::cmp::Ordering;
use std::collections::{BinaryHeap, HashMap};

use crate::verdict::{ConjugateFactor, Derivation, Fuel};
use crate::words::{alphabet, Letter, Word};

#[derive(Clone, Debug)]
enum Origin {
    Relator,
    Inverse(usize),
    Conjugate(usize, Letter),
    Product(usize, usize),
    /// `word` is `raw` with the generators `deleted` removed.
    Simplified { raw: Word, deleted: Vec<usize>, base: Box<Origin> },
}

struct Node {
    word: Word,
    origin: Origin,
}

struct Pending {
    word: Word,
    origin: Origin,
    seq: u64,
}

impl PartialEq for Pending {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for Pending {}

impl PartialOrd for Pending {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Pending {
    // reversed: BinaryHeap is a max-heap
    fn cmp(&self, other: &Self) -> Ordering {
        other.word.shortlex_cmp(&self.word).then_with(|| other.seq.cmp(&self.seq))
    }
}

pub type RelatorStream = Box<dyn Iterator<Item = Word> + Send>;

/// Incremental normal-closure enumerator. Every generated candidate costs
/// one unit of fuel.
pub struct Engine {
    rank: usize,
    relators: Vec<Word>,
    stream: Option<RelatorStream>,
    nodes: Vec<Node>,
    known: HashMap<Word, usize>,
    heap: BinaryHeap<Pending>,
    seq: u64,
    /// `killer[g-1]` is the node whose word is `s_g^{±1}`.
    killer: Vec<Option<usize>>,
    spent: u64,
}

impl Engine {
    pub fn new(rank: usize, relators: &[Word]) -> Self {
        let mut e = Engine::empty(rank);
        for r in relators {
            assert_eq!(r.rank(), rank, "relator of the wrong rank");
            e.add_relator(r.clone());
        }
        e
    }

    /// An engine fed one relator per step from a (possibly infinite) stream.
    pub fn from_stream(rank: usize, stream: RelatorStream) -> Self {
        let mut e = Engine::empty(rank);
        e.stream = Some(stream);
        e
    }

    fn empty(rank: usize) -> Self {
        Engine {
            rank,
            relators: Vec::new(),
            stream: None,
            nodes: Vec::new(),
            known: HashMap::new(),
            heap: BinaryHeap::new(),
            seq: 0,
            killer: vec![None; rank],
            spent: 0,
        }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// Relators seen so far (given up front or pulled from the stream).
    pub fn relators(&self) -> &[Word] {
        &self.relators
    }

    pub fn spent(&self) -> u64 {
        self.spent
    }

    /// Consequences found so far, in discovery order (ε excluded).
    pub fn found(&self) -> impl Iterator<Item = &Word> {
        self.nodes.iter().map(|n| &n.word)
    }

    pub fn killed(&self, generator: usize) -> bool {
        self.killer[generator - 1].is_some()
    }

    fn add_relator(&mut self, r: Word) {
        if !self.relators.contains(&r) {
            self.relators.push(r.clone());
        }
        self.push(r, Origin::Relator);
    }

    fn simplify(&self, w: &Word) -> Word {
        if w.letters().iter().any(|l| self.killed(l.generator())) {
            Word::reduce_unchecked(w.letters().iter().copied().filter(|l| !self.killed(l.generator())), self.rank)
        } else {
            w.clone()
        }
    }

    fn killed_set(&self) -> Vec<usize> {
        (1..=self.rank).filter(|&g| self.killed(g)).collect()
    }

    fn simplified(&self, raw: Word, base: Origin) -> Origin {
        Origin::Simplified { raw, deleted: self.killed_set(), base: Box::new(base) }
    }

    fn push(&mut self, raw: Word, origin: Origin) {
        let word = self.simplify(&raw);
        if word.is_empty() || self.known.contains_key(&word) {
            return;
        }
        let origin = if word == raw { origin } else { self.simplified(raw, origin) };
        self.seq += 1;
        self.heap.push(Pending { word, origin, seq: self.seq });
    }

    fn charge(&mut self, fuel: &mut Fuel) -> bool {
        if fuel.tick() {
            self.spent += 1;
            true
        } else {
            false
        }
    }

    /// Pulls one relator from the stream (if any) and settles one candidate.
    /// Returns false when fuel ran out or nothing is left to do.
    pub fn step(&mut self, fuel: &mut Fuel) -> bool {
        let mut progressed = false;
        if let Some(stream) = self.stream.as_mut() {
            match stream.next() {
                Some(r) => {
                    if !self.charge(fuel) {
                        return false;
                    }
                    assert_eq!(r.rank(), self.rank, "streamed relator of the wrong rank");
                    if !r.is_empty() {
                        self.add_relator(r);
                    }
                    progressed = true;
                }
                None => self.stream = None,
            }
        }
        let Some(p) = self.heap.pop() else { return progressed };
        // killed generators may have grown since the push
        let word = self.simplify(&p.word);
        let origin = if word == p.word { p.origin } else { self.simplified(p.word, p.origin) };
        if word.is_empty() || self.known.contains_key(&word) {
            return true;
        }
        let i = self.nodes.len();
        self.known.insert(word.clone(), i);
        self.nodes.push(Node { word: word.clone(), origin });
        if word.len() == 1 {
            let g = word.letters()[0].generator();
            self.killer[g - 1] = Some(i);
            // pending candidates shrink; reorder them by their simplified form
            for p in std::mem::take(&mut self.heap).into_vec() {
                self.push(p.word, p.origin);
            }
        }
        if !self.charge(fuel) {
            return false;
        }
        self.push(word.inverse(), Origin::Inverse(i));
        for l in alphabet(self.rank) {
            if !self.charge(fuel) {
                return false;
            }
            self.push(word.conjugate_by(&Word::letter(self.rank, l)), Origin::Conjugate(i, l));
        }
        for j in 0..=i {
            if !self.charge(fuel) {
                return false;
            }
            let other = self.nodes[j].word.clone();
            self.push(other.mul(&word), Origin::Product(j, i));
            if j != i {
                if !self.charge(fuel) {
                    return false;
                }
                self.push(word.mul(&other), Origin::Product(i, j));
            }
        }
        true
    }

    /// Steps until the fuel is gone or the engine has nothing left to do.
    pub fn run(&mut self, fuel: &mut Fuel) {
        while self.step(fuel) {}
    }

    /// Whether `w` is known to lie in the normal closure.
    pub fn contains(&self, w: &Word) -> bool {
        let s = self.simplify(w);
        s.is_empty() || self.known.contains_key(&s)
    }

    /// A product-of-conjugates certificate for a word accepted by
    /// [`Engine::contains`].
    pub fn certify(&self, w: &Word) -> Option<Derivation> {
        if !self.contains(w) {
            return None;
        }
        let mut memo = HashMap::new();
        if let Some(&i) = self.known.get(w) {
            return Some(Derivation { target: w.clone(), factors: self.node_factors(i, &mut memo) });
        }
        let s = self.simplify(w);
        let base = if s.is_empty() { Vec::new() } else { self.node_factors(self.known[&s], &mut memo) };
        // w = correction · s, where the correction is what deletion strips off
        let mut factors = invert(self.deletion_factors(w, &self.killed_set(), Vec::new(), &mut memo));
        factors.extend(base);
        Some(Derivation { target: w.clone(), factors })
    }

    fn node_factors(&self, i: usize, memo: &mut HashMap<usize, Vec<ConjugateFactor>>) -> Vec<ConjugateFactor> {
        if let Some(f) = memo.get(&i) {
            return f.clone();
        }
        let out = self.origin_factors(&self.nodes[i].word, &self.nodes[i].origin, memo);
        memo.insert(i, out.clone());
        out
    }

    fn origin_factors(
        &self,
        word: &Word,
        origin: &Origin,
        memo: &mut HashMap<usize, Vec<ConjugateFactor>>,
    ) -> Vec<ConjugateFactor> {
        match origin {
            Origin::Relator => {
                vec![ConjugateFactor { conjugator: Word::identity(self.rank), relator: word.clone(), inverse: false }]
            }
            Origin::Inverse(j) => invert(self.node_factors(*j, memo)),
            Origin::Conjugate(j, l) => {
                let g = Word::letter(self.rank, *l);
                conjugate(self.node_factors(*j, memo), &g)
            }
            Origin::Product(j, k) => {
                let mut f = self.node_factors(*j, memo);
                f.extend(self.node_factors(*k, memo));
                f
            }
            Origin::Simplified { raw, deleted, base } => {
                let raw_factors = self.origin_factors(raw, base, memo);
                self.deletion_factors(raw, deleted, raw_factors, memo)
            }
        }
    }

    /// Given factors multiplying to `raw`, factors multiplying to `raw` with
    /// killed letters removed: `raw = Π_j P_j ℓ_j P_j⁻¹ · simplified`.
    fn deletion_factors(
        &self,
        raw: &Word,
        deleted: &[usize],
        raw_factors: Vec<ConjugateFactor>,
        memo: &mut HashMap<usize, Vec<ConjugateFactor>>,
    ) -> Vec<ConjugateFactor> {
        let mut correction = Vec::new();
        let mut prefix = Word::identity(self.rank);
        for &l in raw.letters() {
            match self.killer[l.generator() - 1].filter(|_| deleted.contains(&l.generator())) {
                Some(k) => {
                    let f = self.node_factors(k, memo);
                    let f = if self.nodes[k].word.letters()[0] == l { f } else { invert(f) };
                    correction.extend(conjugate(f, &prefix));
                }
                None => prefix = prefix.mul_letter(l),
            }
        }
        let mut out = invert(correction);
        out.extend(raw_factors);
        out
    }
}

fn invert(factors: Vec<ConjugateFactor>) -> Vec<ConjugateFactor> {
    factors.into_iter().rev().map(|f| ConjugateFactor { inverse: !f.inverse, ..f }).collect()
}

fn conjugate(factors: Vec<ConjugateFactor>, g: &Word) -> Vec<ConjugateFactor> {
    factors.into_iter().map(|f| ConjugateFactor { conjugator: g.mul(&f.conjugator), ..f }).collect()
}

/// Consequences of `relators` found within the fuel budget, ε first.
pub fn consequences(rank: usize, relators: &[Word], fuel: u64) -> Vec<Word> {
    let mut e = Engine::new(rank, relators);
    e.run(&mut Fuel::new(fuel));
    std::iter::once(Word::identity(rank)).chain(e.found().cloned()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::catalog::{cyclic, dihedral, free_abelian, integers, symmetric};
    use crate::oracle::MarkedGroup;

    fn w(rank: usize, s: &str) -> Word {
        Word::parse(rank, s).unwrap()
    }

    #[test]
    fn examples() {
        assert!(consequences(2, &[w(2, "ab")], 10_000).contains(&w(2, "ba")));
        assert_eq!(consequences(2, &[], 1000), vec![Word::identity(2)]);
        assert!(consequences(1, &[w(1, "a^2")], 1000).contains(&w(1, "a^4")));
    }

    #[test]
    fn certificates_check() {
        let rels = [w(2, "ab"), w(2, "a^3"), w(2, "b^5")];
        let mut e = Engine::new(2, &rels);
        e.run(&mut Fuel::new(20_000));
        let mut checked = 0;
        for word in e.found().cloned().collect::<Vec<_>>().iter().take(300) {
            let d = e.certify(word).unwrap();
            assert!(d.check(&rels), "{word}");
            checked += 1;
        }
        assert!(checked > 50);
        // the group is trivial; words with deleted letters still certify
        assert!(e.killed(1) && e.killed(2));
        let d = e.certify(&w(2, "abaabABBa")).unwrap();
        assert!(d.check(&rels));
    }

    /// Every consequence is a relation of any group satisfying the relators.
    #[test]
    fn soundness_against_catalog() {
        let cases: Vec<(MarkedGroup, Vec<Word>)> = vec![
            (cyclic(4), vec![w(1, "a^4")]),
            (cyclic(2), vec![w(1, "a^4"), w(1, "a^6")]),
            (integers(), vec![]),
            (free_abelian(2), vec![w(2, "[a,b]")]),
            (symmetric(3), vec![w(2, "a^2"), w(2, "b^3"), w(2, "(ab)^2")]),
            (dihedral(4), vec![w(2, "a^4"), w(2, "b^2")]),
            (dihedral(3), vec![w(2, "(ab)^2"), w(2, "b^2")]),
            (cyclic(6), vec![w(1, "a^12")]),
            (free_abelian(3), vec![w(3, "[a,b]"), w(3, "[b,c]")]),
            (dihedral(2), vec![w(2, "a^2"), w(2, "b^2"), w(2, "(ab)^2")]),
        ];
        for (g, rels) in cases {
            for r in &rels {
                assert!(g.is_relation(r));
            }
            for c in consequences(g.rank(), &rels, 20_000) {
                assert!(g.is_relation(&c), "{} {c}", g.name());
            }
        }
    }

    #[test]
    fn deterministic() {
        let rels = [w(2, "aab"), w(2, "[a,b]")];
        assert_eq!(consequences(2, &rels, 5000), consequences(2, &rels, 5000));
        let short = consequences(2, &rels, 2000);
        let long = consequences(2, &rels, 5000);
        assert_eq!(&long[..short.len() - 1], &short[..short.len() - 1]);
    }
}
