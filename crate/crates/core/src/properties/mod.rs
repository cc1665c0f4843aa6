//! Group properties: decidable checks, and fuel-bounded searches for
//! oracle-checkable witnesses of the semi-decidable ones.
//!
//! Every search walks its candidates in a fixed order (shortlex on words,
//! Cantor order on tuples), so a verdict found with some fuel is found again,
//! with the same witness, with any larger fuel.

use std::collections::HashMap;

use crate::oracle::explore::Explorer;
use crate::oracle::{express, subgroup_marking, MarkedGroup};
use crate::verdict::{CommutatorProduct, Fuel, SignedProduct, Verdict, Witness};
use crate::words::{alphabet, cantor_unpair, unpair_tuple, words_of_length, words_shorter_than, Word};

mod check;
mod hyperbolic;
mod virtually;

pub use check::check_witness;
pub use hyperbolic::not_delta_hyperbolic;
pub use virtually::virtually_cyclic_semidecide;

/// The nontrivial-as-a-word candidate with index `i` (shortlex index `i+1`).
fn candidate(rank: usize, i: u64) -> Word {
    Word::from_shortlex(rank, i + 1)
}

/// A generator commutator `[s_i, s_j]` that is not a relation.
pub fn noncommuting_pair(g: &MarkedGroup) -> Option<Word> {
    let gens = g.generators();
    for i in 0..gens.len() {
        for j in i + 1..gens.len() {
            let c = gens[i].commutator(&gens[j]);
            if !g.is_relation(&c) {
                return Some(c);
            }
        }
    }
    None
}

pub fn is_abelian(g: &MarkedGroup) -> bool {
    noncommuting_pair(g).is_none()
}

/// Left-normed commutators `[x₁, …, x_n]` of positive generators, in
/// lexicographic order of the index tuples.
fn left_normed(g: &MarkedGroup, weight: usize) -> impl Iterator<Item = Word> + '_ {
    let k = g.rank();
    let total = (k as u64).pow(weight as u32);
    (0..total).map(move |mut code| {
        let mut idx = vec![0usize; weight];
        for slot in idx.iter_mut().rev() {
            *slot = (code % k as u64) as usize;
            code /= k as u64;
        }
        let mut c = g.generator(idx[0] + 1);
        for &i in &idx[1..] {
            c = c.commutator(&g.generator(i + 1));
        }
        c
    })
}

/// A nontrivial left-normed commutator of weight `c+1`, if any.
pub fn nilpotency_obstruction(g: &MarkedGroup, c: usize) -> Option<Word> {
    assert!(c >= 1, "nilpotency class is at least 1");
    if g.rank() == 0 {
        return None;
    }
    left_normed(g, c + 1).find(|w| !g.is_relation(w))
}

/// Whether every left-normed commutator of weight `c+1` in the generators is
/// trivial.
pub fn nilpotent_class_at_most(g: &MarkedGroup, c: usize) -> bool {
    nilpotency_obstruction(g, c).is_none()
}

/// Enumerates normal forms until more than `n` are found or the group closes.
/// `Ok` carries the whole group, `Err` carries `n+1` distinct elements.
pub fn cardinality_bound(g: &MarkedGroup, n: u64) -> std::result::Result<Explorer, Vec<Word>> {
    let mut e = Explorer::new(g);
    loop {
        if e.len() as u64 > n {
            return Err((0..=n as usize).map(|i| e.word(i)).collect());
        }
        if !e.grow() {
            return Ok(e);
        }
    }
}

pub fn card_at_most(g: &MarkedGroup, n: u64) -> bool {
    cardinality_bound(g, n).is_ok()
}

fn order_witness(e: &Explorer) -> Witness {
    let rank = e.group().rank();
    let elements: Vec<Word> = (0..e.len()).map(|i| e.word(i)).collect();
    let letters = &alphabet(rank)[..rank];
    let table = (0..e.len())
        .map(|i| letters.iter().map(|&l| e.neighbour(i, l).expect("closed explorations are complete")).collect())
        .collect();
    Witness::Order { order: elements.len() as u64, elements, table }
}

/// Decides a property and reports it as a verdict: Verified when it holds
/// (with a closure table for cardinality), Refuted with a witness otherwise.
pub fn decide_abelian(g: &MarkedGroup) -> Verdict {
    let queries = (g.rank() * g.rank().saturating_sub(1) / 2) as u64;
    match noncommuting_pair(g) {
        None => Verdict::holds(queries),
        Some(word) => Verdict::refuted(Witness::Word { word }, queries),
    }
}

pub fn decide_nilpotent(g: &MarkedGroup, c: usize) -> Verdict {
    let queries = (g.rank() as u64).pow(c as u32 + 1);
    match nilpotency_obstruction(g, c) {
        None => Verdict::holds(queries),
        Some(word) => Verdict::refuted(Witness::Word { word }, queries),
    }
}

pub fn decide_card(g: &MarkedGroup, n: u64) -> Verdict {
    match cardinality_bound(g, n) {
        Ok(e) => Verdict::verified(order_witness(&e), e.len() as u64),
        Err(elements) => Verdict::refuted(Witness::Distinct { elements }, n + 1),
    }
}

/// Finiteness is semi-decidable: grow balls until one is closed under the
/// generators. Each candidate product costs one unit of fuel.
pub fn is_finite_semidecide(g: &MarkedGroup, fuel: u64) -> Verdict {
    let mut fuel = Fuel::new(fuel);
    let mut e = Explorer::new(g);
    loop {
        let cost = (e.layer(e.radius()).len() * 2 * g.rank()) as u64;
        if !fuel.take(cost) {
            return fuel.unknown();
        }
        if !e.grow() {
            return Verdict::verified(order_witness(&e), fuel.spent());
        }
    }
}

/// Oracle answers charged to a fuel tank, with per-word memoisation so a
/// repeated question is free.
struct Queries<'a> {
    g: &'a MarkedGroup,
    trivial: HashMap<Word, bool>,
}

impl<'a> Queries<'a> {
    fn new(g: &'a MarkedGroup) -> Self {
        Queries { g, trivial: HashMap::new() }
    }

    fn is_relation(&mut self, w: &Word, fuel: &mut Fuel) -> Option<bool> {
        if let Some(&b) = self.trivial.get(w) {
            return Some(b);
        }
        if !fuel.tick() {
            return None;
        }
        let b = self.g.is_relation(w);
        self.trivial.insert(w.clone(), b);
        Some(b)
    }
}

/// Searches `(w, m)` with `w ≠ 1` and `w^m = 1`, dovetailing word index and
/// exponent `m ≥ 2` in Cantor order.
pub fn torsion_semidecide(g: &MarkedGroup, fuel: u64) -> Verdict {
    let mut fuel = Fuel::new(fuel);
    let mut q = Queries::new(g);
    for code in 0u64.. {
        let (i, j) = cantor_unpair(code);
        let w = candidate(g.rank(), i);
        let m = j + 2;
        let Some(trivial) = q.is_relation(&w, &mut fuel) else { return fuel.unknown() };
        if trivial {
            continue;
        }
        match q.is_relation(&w.pow(m as i64), &mut fuel) {
            None => return fuel.unknown(),
            Some(true) => return Verdict::verified(Witness::Torsion { element: w, order: m }, fuel.spent()),
            Some(false) => {}
        }
    }
    unreachable!()
}

/// Searches `w ≠ 1` commuting with every generator.
pub fn center_nontrivial_semidecide(g: &MarkedGroup, fuel: u64) -> Verdict {
    let mut fuel = Fuel::new(fuel);
    let gens = g.generators();
    for i in 0u64.. {
        let w = candidate(g.rank(), i);
        let mut central = true;
        for s in &gens {
            if !fuel.tick() {
                return fuel.unknown();
            }
            if !g.is_relation(&w.commutator(s)) {
                central = false;
                break;
            }
        }
        if central {
            if !fuel.tick() {
                return fuel.unknown();
            }
            if !g.is_relation(&w) {
                return Verdict::verified(Witness::Central { element: w }, fuel.spent());
            }
        }
    }
    unreachable!()
}

/// Tuples of `parts` nonempty words whose lengths add up to `total`, by
/// length composition and then shortlex within each length.
fn word_tuples(rank: usize, parts: usize, total: usize) -> Box<dyn Iterator<Item = Vec<Word>>> {
    if parts == 0 {
        return if total == 0 { Box::new(std::iter::once(Vec::new())) } else { Box::new(std::iter::empty()) };
    }
    if total < parts {
        return Box::new(std::iter::empty());
    }
    Box::new((1..=total - (parts - 1)).flat_map(move |len| {
        let start = words_shorter_than(rank, len as u32);
        (start..start + words_of_length(rank, len as u32)).flat_map(move |i| {
            let head = Word::from_shortlex(rank, i);
            word_tuples(rank, parts - 1, total - len).map(move |mut rest| {
                rest.insert(0, head.clone());
                rest
            })
        })
    }))
}

/// Searches, for each generator, a product of commutators `[u₁,v₁]⋯[u_m,v_m]`
/// equal to it. Candidates are ordered by the total length of the `u_i, v_i`,
/// then by `m`; each (candidate, unresolved generator) query costs one unit
/// of fuel.
pub fn perfect_semidecide(g: &MarkedGroup, fuel: u64) -> Verdict {
    let mut fuel = Fuel::new(fuel);
    let rank = g.rank();
    let targets = g.generators();
    let mut found: Vec<Option<Vec<(Word, Word)>>> = vec![None; targets.len()];
    let mut open = targets.len();
    let candidates = (2usize..).flat_map(move |total| (1..=total / 2).flat_map(move |m| word_tuples(rank, 2 * m, total)));
    if rank > 0 {
        for tuple in candidates {
            let commutators: Vec<(Word, Word)> = tuple.chunks(2).map(|p| (p[0].clone(), p[1].clone())).collect();
            let value = commutators.iter().fold(Word::identity(rank), |acc, (u, v)| acc.mul(&u.commutator(v)));
            for (slot, t) in found.iter_mut().zip(&targets) {
                if slot.is_some() {
                    continue;
                }
                if !fuel.tick() {
                    return fuel.unknown();
                }
                if g.equal(&value, t) {
                    *slot = Some(commutators.clone());
                    open -= 1;
                }
            }
            if open == 0 {
                break;
            }
        }
    }
    let products = found
        .into_iter()
        .zip(targets)
        .map(|(c, target)| CommutatorProduct { target, commutators: c.unwrap() })
        .collect();
    Verdict::verified(Witness::Perfect { products }, fuel.spent())
}

/// Dovetails `j`-tuples of words against generation searches: stage `t`
/// tries tuple codes `0..=t`, each with `t+1` units of fuel.
pub fn rank_at_most_semidecide(g: &MarkedGroup, j: usize, fuel: u64) -> Verdict {
    let mut fuel = Fuel::new(fuel);
    let rank = g.rank();
    for t in 0u64.. {
        for code in 0..=t {
            let tuple: Vec<Word> = unpair_tuple(code, j).into_iter().map(|i| Word::from_shortlex(rank, i)).collect();
            let mut budget = Fuel::new((t + 1).min(fuel.remaining()));
            let hit = express(g, &tuple, &g.generators(), &mut budget);
            fuel.take(budget.spent());
            if let Some(expressions) = hit {
                return Verdict::verified(Witness::Generation { tuple, expressions }, fuel.spent());
            }
            if fuel.exhausted() {
                return fuel.unknown();
            }
        }
    }
    unreachable!()
}

/// A conjugacy class closure that can be resumed with a larger size cap.
struct ClassClosure {
    class: Vec<Word>,
    next: usize,
    letter: usize,
    complete: bool,
}

impl ClassClosure {
    fn new(w: Word) -> Self {
        ClassClosure { class: vec![w], next: 0, letter: 0, complete: false }
    }

    /// Continues closing under conjugation by generators while the class has
    /// at most `cap` elements. Each oracle comparison costs one unit of fuel;
    /// `None` means the fuel ran out.
    fn extend(&mut self, g: &MarkedGroup, cap: usize, fuel: &mut Fuel) -> Option<()> {
        let letters = alphabet(g.rank());
        while self.next < self.class.len() {
            while self.letter < letters.len() {
                let s = Word::letter(g.rank(), letters[self.letter]);
                let y = self.class[self.next].conjugate_by(&s.inverse());
                let mut known = false;
                for x in &self.class {
                    if !fuel.tick() {
                        return None;
                    }
                    if g.equal(x, &y) {
                        known = true;
                        break;
                    }
                }
                if !known {
                    if self.class.len() >= cap {
                        return Some(());
                    }
                    self.class.push(y);
                }
                self.letter += 1;
            }
            self.letter = 0;
            self.next += 1;
        }
        self.complete = true;
        Some(())
    }
}

/// Refutes the ICC property by finding `g ≠ 1` with a finite conjugacy
/// class. Candidate `i` and class-size cap `c+1` are dovetailed in Cantor
/// order; each candidate's closure is resumed rather than restarted.
pub fn icc_refute(g: &MarkedGroup, fuel: u64) -> Verdict {
    let mut fuel = Fuel::new(fuel);
    let mut q = Queries::new(g);
    let mut closures: Vec<Option<ClassClosure>> = Vec::new();
    for code in 0u64.. {
        let (i, c) = cantor_unpair(code);
        let i = i as usize;
        if i == closures.len() {
            let w = candidate(g.rank(), i as u64);
            match q.is_relation(&w, &mut fuel) {
                None => return fuel.unknown(),
                Some(true) => closures.push(None),
                Some(false) => closures.push(Some(ClassClosure::new(w))),
            }
        }
        let Some(closure) = closures[i].as_mut() else { continue };
        if closure.extend(g, c as usize + 1, &mut fuel).is_none() {
            return fuel.unknown();
        }
        if closure.complete {
            let element = closure.class[0].clone();
            return Verdict::verified(Witness::FiniteClass { element, class: closure.class.clone() }, fuel.spent());
        }
    }
    unreachable!()
}

/// Positive words over `n` letters with length in `1..=max_len`, shortest
/// first, as index lists.
fn positive_words(n: usize, max_len: usize) -> impl Iterator<Item = Vec<usize>> {
    (1..=max_len).flat_map(move |len| {
        let total = (n as u64).pow(len as u32);
        (0..total).map(move |mut code| {
            let mut out = vec![0; len];
            for slot in out.iter_mut().rev() {
                *slot = (code % n as u64) as usize;
                code /= n as u64;
            }
            out
        })
    })
}

/// Refutes left-orderability: finds nontrivial elements `a₁, …, a_n` such
/// that for every choice of signs some nonempty product of the `a_i^{±1}` is
/// trivial. Sets (bit patterns over word indices) and product lengths are
/// dovetailed in Cantor order.
pub fn orderability_refute(g: &MarkedGroup, fuel: u64) -> Verdict {
    let mut fuel = Fuel::new(fuel);
    let mut q = Queries::new(g);
    let rank = g.rank();
    'codes: for code in 0u64.. {
        let (set, len) = cantor_unpair(code);
        let set = set + 1;
        let elements: Vec<Word> =
            (0..64).filter(|b| set & (1 << b) != 0).map(|b| candidate(rank, b as u64)).collect();
        if elements.len() > 4 {
            continue;
        }
        for w in &elements {
            match q.is_relation(w, &mut fuel) {
                None => return fuel.unknown(),
                Some(true) => continue 'codes,
                Some(false) => {}
            }
        }
        let n = elements.len();
        let mut products = Vec::new();
        for mask in 0u32..(1 << n) {
            let signs: Vec<bool> = (0..n).map(|i| mask & (1 << i) != 0).collect();
            let signed: Vec<Word> =
                elements.iter().zip(&signs).map(|(w, &inv)| if inv { w.inverse() } else { w.clone() }).collect();
            let mut hit = None;
            for p in positive_words(n, len as usize + 1) {
                if !fuel.tick() {
                    return fuel.unknown();
                }
                let value = p.iter().fold(Word::identity(rank), |acc, &i| acc.mul(&signed[i]));
                match q.is_relation(&value, &mut fuel) {
                    None => return fuel.unknown(),
                    Some(true) => {
                        hit = Some(p);
                        break;
                    }
                    Some(false) => {}
                }
            }
            match hit {
                Some(product) => products.push(SignedProduct { signs, product }),
                None => continue 'codes,
            }
        }
        return Verdict::verified(Witness::NotOrderable { elements, products }, fuel.spent());
    }
    unreachable!()
}

/// A `j`-generated subgroup given by words, re-marked: used by the
/// virtually-cyclic search.
pub(crate) fn rank_of_subgroup_at_most(g: &MarkedGroup, tuple: &[Word], j: usize, fuel: u64) -> Verdict {
    rank_at_most_semidecide(&subgroup_marking(g, tuple), j, fuel)
}

/// Named properties for uniform dispatch.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Property {
    Abelian,
    NilpotentClass(usize),
    CardAtMost(u64),
    Finite,
    Torsion,
    Center,
    Perfect,
    RankAtMost(usize),
    VirtuallyCyclic,
    NotIcc,
    NotOrderable,
    NotHyperbolic { delta: u64, radius: usize },
}

impl Property {
    pub fn names() -> &'static [&'static str] {
        &[
            "abelian",
            "nilpotent",
            "card",
            "finite",
            "torsion",
            "center",
            "perfect",
            "rank",
            "virtually-cyclic",
            "not-icc",
            "not-orderable",
            "not-hyperbolic",
        ]
    }
}

/// Runs a property check. Decidable properties ignore the fuel.
pub fn evaluate(g: &MarkedGroup, p: &Property, fuel: u64) -> crate::Result<Verdict> {
    Ok(match *p {
        Property::Abelian => decide_abelian(g),
        Property::NilpotentClass(c) => {
            if c == 0 {
                return Err(crate::Error::Spec("nilpotency class must be at least 1".into()));
            }
            decide_nilpotent(g, c)
        }
        Property::CardAtMost(n) => {
            if n == 0 {
                return Err(crate::Error::Spec("cardinality bound must be at least 1".into()));
            }
            decide_card(g, n)
        }
        Property::Finite => is_finite_semidecide(g, fuel),
        Property::Torsion => torsion_semidecide(g, fuel),
        Property::Center => center_nontrivial_semidecide(g, fuel),
        Property::Perfect => perfect_semidecide(g, fuel),
        Property::RankAtMost(j) => rank_at_most_semidecide(g, j, fuel),
        Property::VirtuallyCyclic => virtually_cyclic_semidecide(g, fuel),
        Property::NotIcc => icc_refute(g, fuel),
        Property::NotOrderable => orderability_refute(g, fuel),
        Property::NotHyperbolic { delta, radius } => not_delta_hyperbolic(g, delta, radius)?,
    })
}

#[cfg(test)]
mod tests;
