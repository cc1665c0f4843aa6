//! Marked groups as values carrying a total word-problem oracle.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::words::{alphabet, Letter, Shortlex, Word};

pub mod catalog;
pub mod combine;
pub mod explore;
pub mod markings;
pub mod mr;
pub mod sequence;

pub use catalog::{catalog, CatalogSpec};
pub use combine::{direct, free, subgroup_marking};
pub use markings::{enumerate_markings, express, generates_semidecide};
pub use mr::{from_mr_model, to_mr_model, MrModel};
pub use sequence::{limit, GroupSequence};

/// Canonical encoding of a group element: two words represent the same
/// element exactly when their keys are equal.
pub type Key = Vec<i64>;

/// A decision procedure for the word problem of a marked group.
pub trait WordProblem: Send + Sync {
    fn rank(&self) -> usize;

    fn is_relation(&self, w: &Word) -> bool;

    /// `is_relation` for a caller that already knows `n = w.shortlex_index()`.
    fn is_relation_at(&self, w: &Word, n: u64) -> bool {
        let _ = n;
        self.is_relation(w)
    }

    /// Exact element arithmetic, when the implementation has one.
    fn elements(&self) -> Option<&dyn ElementModel> {
        None
    }
}

/// Right multiplication by letters on canonical element keys.
pub trait ElementModel: Send + Sync {
    fn identity(&self) -> Key;
    fn step(&self, x: &Key, l: Letter) -> Key;

    /// In-place `step`; models override it to avoid reallocating keys.
    fn apply(&self, x: &mut Key, l: Letter) {
        *x = self.step(x, l);
    }

    fn eval(&self, w: &Word) -> Key {
        let mut x = self.identity();
        for &l in w.letters() {
            self.apply(&mut x, l);
        }
        x
    }
}

/// A word problem given by element arithmetic.
pub(crate) struct ModelOracle<M> {
    pub rank: usize,
    pub model: M,
}

impl<M: ElementModel> WordProblem for ModelOracle<M> {
    fn rank(&self) -> usize {
        self.rank
    }

    fn is_relation(&self, w: &Word) -> bool {
        self.model.eval(w) == self.model.identity()
    }

    fn elements(&self) -> Option<&dyn ElementModel> {
        Some(&self.model)
    }
}

struct FnOracle<F> {
    rank: usize,
    f: F,
}

impl<F: Fn(&Word) -> bool + Send + Sync> WordProblem for FnOracle<F> {
    fn rank(&self) -> usize {
        self.rank
    }

    fn is_relation(&self, w: &Word) -> bool {
        (self.f)(w)
    }
}

/// Caches answers of an inner oracle. Entries are only ever inserted with
/// the inner oracle's answer, so the cache cannot change results.
struct Memo {
    inner: Arc<dyn WordProblem>,
    cache: Mutex<HashMap<Word, bool>>,
}

impl WordProblem for Memo {
    fn rank(&self) -> usize {
        self.inner.rank()
    }

    fn is_relation(&self, w: &Word) -> bool {
        if let Some(&v) = self.cache.lock().unwrap().get(w) {
            return v;
        }
        let v = self.inner.is_relation(w);
        self.cache.lock().unwrap().insert(w.clone(), v);
        v
    }

    fn elements(&self) -> Option<&dyn ElementModel> {
        self.inner.elements()
    }
}

/// A rank together with a word-problem oracle.
#[derive(Clone)]
pub struct MarkedGroup {
    oracle: Arc<dyn WordProblem>,
    name: String,
}

impl fmt::Debug for MarkedGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MarkedGroup({}, rank {})", self.name, self.rank())
    }
}

impl MarkedGroup {
    pub fn new(name: impl Into<String>, oracle: Arc<dyn WordProblem>) -> Self {
        MarkedGroup { oracle, name: name.into() }
    }

    /// Wraps a closure as an oracle. The caller vouches that it describes a
    /// normal subgroup of the free group.
    pub fn from_fn(
        name: impl Into<String>,
        rank: usize,
        f: impl Fn(&Word) -> bool + Send + Sync + 'static,
    ) -> Self {
        MarkedGroup::new(name, Arc::new(FnOracle { rank, f }))
    }

    pub fn rank(&self) -> usize {
        self.oracle.rank()
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn renamed(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn oracle(&self) -> &Arc<dyn WordProblem> {
        &self.oracle
    }

    /// Panics when the word's rank differs from the group's.
    pub fn is_relation(&self, w: &Word) -> bool {
        assert_eq!(w.rank(), self.rank(), "word of rank {} queried in a rank-{} group", w.rank(), self.rank());
        self.oracle.is_relation(w)
    }

    pub fn check_rank(&self, w: &Word) -> Result<()> {
        if w.rank() == self.rank() {
            Ok(())
        } else {
            Err(Error::rank(self.rank(), w.rank()))
        }
    }

    pub fn equal(&self, u: &Word, v: &Word) -> bool {
        self.is_relation(&u.inverse().mul(v))
    }

    /// `1` iff the `n`-th shortlex word is a relation.
    pub fn bit(&self, n: u64) -> u8 {
        u8::from(self.oracle.is_relation_at(&Word::from_shortlex(self.rank(), n), n))
    }

    /// `bit(n)` for a word already known to have shortlex index `n`. The index
    /// is trusted, not rechecked.
    pub fn bit_of(&self, w: &Word, n: u64) -> u8 {
        u8::from(self.oracle.is_relation_at(w, n))
    }

    pub fn elements(&self) -> Option<&dyn ElementModel> {
        self.oracle.elements()
    }

    /// Canonical key of the element, when element arithmetic is available.
    pub fn key(&self, w: &Word) -> Option<Key> {
        self.elements().map(|m| m.eval(w))
    }

    pub fn memoized(self) -> Self {
        let name = self.name.clone();
        MarkedGroup::new(name, Arc::new(Memo { inner: self.oracle, cache: Mutex::new(HashMap::new()) }))
    }

    pub fn generator(&self, i: usize) -> Word {
        Word::generator(self.rank(), i)
    }

    pub fn generators(&self) -> Vec<Word> {
        (1..=self.rank()).map(|i| self.generator(i)).collect()
    }
}

/// Sampling parameters for the normal-subgroup axiom check.
#[derive(Clone, Debug)]
pub struct LawConfig {
    pub seed: u64,
    pub pairs: usize,
    pub conjugators: usize,
    pub max_len: usize,
    /// Shortlex words scanned for relations to seed the sample pool.
    pub scan: u64,
}

impl Default for LawConfig {
    fn default() -> Self {
        LawConfig { seed: 0x5eed, pairs: 500, conjugators: 20, max_len: 8, scan: 2000 }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LawReport {
    pub relations_in_pool: usize,
    pub pairs_checked: usize,
    pub conjugations_checked: usize,
}

fn random_word(rng: &mut ChaCha8Rng, rank: usize, max_len: usize) -> Word {
    let letters = alphabet(rank);
    let len = rng.gen_range(0..=max_len);
    let raw: Vec<Letter> = (0..len).map(|_| letters[rng.gen_range(0..letters.len())]).collect();
    Word::reduce_unchecked(raw, rank)
}

/// Spot-checks that the oracle's relations form a normal subgroup: closure
/// under products, inverses and conjugation, and that multiplying by a
/// relation never changes the answer.
pub fn check_lawful(g: &MarkedGroup, cfg: &LawConfig) -> Result<LawReport> {
    let rank = g.rank();
    let fail = |msg: String| Err(Error::Model(format!("{}: {}", g.name(), msg)));
    if !g.is_relation(&Word::identity(rank)) {
        return fail("the empty word is not a relation".into());
    }
    if rank == 0 {
        return Ok(LawReport { relations_in_pool: 1, pairs_checked: 0, conjugations_checked: 0 });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut pool: Vec<Word> = Shortlex::new(rank).take(cfg.scan as usize).filter(|w| g.is_relation(w)).collect();
    for _ in 0..cfg.pairs {
        let w = random_word(&mut rng, rank, cfg.max_len);
        if g.is_relation(&w) {
            pool.push(w);
        }
    }
    let mut pairs = 0;
    let mut conj = 0;
    for _ in 0..cfg.pairs {
        let u = pool[rng.gen_range(0..pool.len())].clone();
        let v = pool[rng.gen_range(0..pool.len())].clone();
        if !g.is_relation(&u.mul(&v)) {
            return fail(format!("{u} and {v} are relations but their product is not"));
        }
        if !g.is_relation(&u.inverse()) {
            return fail(format!("{u} is a relation but its inverse is not"));
        }
        let x = random_word(&mut rng, rank, cfg.max_len);
        if g.is_relation(&x.mul(&u)) != g.is_relation(&x) {
            return fail(format!("multiplying {x} by the relation {u} changes the answer"));
        }
        if g.is_relation(&x) != g.is_relation(&x.inverse()) {
            return fail(format!("{x} and its inverse disagree"));
        }
        pairs += 1;
        for _ in 0..cfg.conjugators {
            let h = random_word(&mut rng, rank, cfg.max_len);
            if !g.is_relation(&u.conjugate_by(&h)) {
                return fail(format!("{u} is a relation but its conjugate by {h} is not"));
            }
            conj += 1;
        }
    }
    Ok(LawReport { relations_in_pool: pool.len(), pairs_checked: pairs, conjugations_checked: conj })
}
