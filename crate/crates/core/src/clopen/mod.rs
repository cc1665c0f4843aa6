//! Basic clopen sets `Ω_{R;S}` of marked groups and the semi-decision
//! procedures built on normal-closure enumeration.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::oracle::{MarkedGroup, WordProblem};
use crate::verdict::{AtomReason, AtomWitness, Derivation, Fuel, Verdict, Witness};
use crate::words::{alphabet, Alphabet, Shortlex, Word};

pub mod engine;

pub use engine::{consequences, Engine, RelatorStream};

/// Marked groups of rank `k` in which every word of `relations` is trivial
/// and no word of `irrelations` is.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BasicClopenSet {
    rank: usize,
    relations: Vec<Word>,
    irrelations: Vec<Word>,
}

fn dedup(words: Vec<Word>) -> Vec<Word> {
    let mut out: Vec<Word> = Vec::new();
    for w in words {
        if !out.contains(&w) {
            out.push(w);
        }
    }
    out
}

impl BasicClopenSet {
    pub fn new(rank: usize, relations: Vec<Word>, irrelations: Vec<Word>) -> Result<Self> {
        for w in relations.iter().chain(&irrelations) {
            if w.rank() != rank {
                return Err(Error::rank(rank, w.rank()));
            }
        }
        Ok(BasicClopenSet { rank, relations: dedup(relations), irrelations: dedup(irrelations) })
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn relations(&self) -> &[Word] {
        &self.relations
    }

    pub fn irrelations(&self) -> &[Word] {
        &self.irrelations
    }

    /// Parses `{R: ab, b^2 | S: ba}`; either part may be empty or omitted.
    pub fn parse(rank: usize, text: &str) -> Result<Self> {
        let t = text.trim();
        let inner = t
            .strip_prefix('{')
            .and_then(|s| s.strip_suffix('}'))
            .ok_or_else(|| Error::Parse { pos: 0, msg: "expected {R: … | S: …}".into() })?;
        let alphabet = Alphabet::standard(rank);
        let mut relations = Vec::new();
        let mut irrelations = Vec::new();
        for part in split_top(inner, '|') {
            let part = part.trim();
            if part.is_empty() {
                continue;
            }
            let (tag, body) = part
                .split_once(':')
                .ok_or_else(|| Error::Parse { pos: 0, msg: format!("missing R: or S: in {part:?}") })?;
            let target = match tag.trim() {
                "R" => &mut relations,
                "S" => &mut irrelations,
                other => return Err(Error::Parse { pos: 0, msg: format!("unknown part {other:?}") }),
            };
            for item in split_top(body, ',') {
                if !item.trim().is_empty() {
                    target.push(alphabet.parse(item)?);
                }
            }
        }
        BasicClopenSet::new(rank, relations, irrelations)
    }
}

/// Splits on `sep` outside brackets.
pub(crate) fn split_top(s: &str, sep: char) -> Vec<&str> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (i, c) in s.char_indices() {
        match c {
            '(' | '[' | '<' => depth += 1,
            ')' | ']' | '>' => depth -= 1,
            c if c == sep && depth == 0 => {
                out.push(&s[start..i]);
                start = i + c.len_utf8();
            }
            _ => {}
        }
    }
    out.push(&s[start..]);
    out
}

impl fmt::Display for BasicClopenSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |ws: &[Word]| ws.iter().map(|w| w.to_string()).collect::<Vec<_>>().join(", ");
        match (self.relations.is_empty(), self.irrelations.is_empty()) {
            (false, false) => write!(f, "{{R: {} | S: {}}}", join(&self.relations), join(&self.irrelations)),
            (false, true) => write!(f, "{{R: {}}}", join(&self.relations)),
            (true, false) => write!(f, "{{S: {}}}", join(&self.irrelations)),
            (true, true) => write!(f, "{{}}"),
        }
    }
}

pub fn member(g: &MarkedGroup, omega: &BasicClopenSet) -> Result<bool> {
    if g.rank() != omega.rank {
        return Err(Error::rank(omega.rank, g.rank()));
    }
    Ok(omega.relations.iter().all(|r| g.is_relation(r)) && !omega.irrelations.iter().any(|s| g.is_relation(s)))
}

/// Searches a consequence of the relations among the irrelations. Never
/// refutes: coherence is not semi-decidable.
pub fn incoherent_semidecide(omega: &BasicClopenSet, fuel: u64) -> Verdict {
    let mut fuel = Fuel::new(fuel);
    let mut e = Engine::new(omega.rank, &omega.relations);
    match incoherence_search(&mut e, &omega.irrelations, &mut fuel) {
        Some(d) => Verdict::verified(Witness::Derivation { derivation: d }, fuel.spent()),
        None => fuel.unknown(),
    }
}

fn incoherence_search(e: &mut Engine, irrelations: &[Word], fuel: &mut Fuel) -> Option<Derivation> {
    loop {
        if let Some(s) = irrelations.iter().find(|s| e.contains(s)) {
            return e.certify(s);
        }
        if !e.step(fuel) {
            // one last look after the final step
            return irrelations.iter().find(|s| e.contains(s)).and_then(|s| e.certify(s));
        }
    }
}

/// An atom over a support: each support word is either a relation or an
/// irrelation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Atom {
    pub set: BasicClopenSet,
    /// Index of a set of the left union containing the atom.
    pub in_left: Option<usize>,
    /// Index of a set of the right union containing the atom.
    pub in_right: Option<usize>,
}

/// The words occurring in either union, in order of first appearance.
pub fn support(left: &[BasicClopenSet], right: &[BasicClopenSet]) -> Vec<Word> {
    let mut out: Vec<Word> = Vec::new();
    for set in left.iter().chain(right) {
        for w in set.relations.iter().chain(&set.irrelations) {
            if !out.contains(w) {
                out.push(w.clone());
            }
        }
    }
    out
}

fn uniform_rank(left: &[BasicClopenSet], right: &[BasicClopenSet]) -> Result<usize> {
    let rank = left.iter().chain(right).map(|s| s.rank).next().unwrap_or(0);
    for s in left.iter().chain(right) {
        if s.rank != rank {
            return Err(Error::rank(rank, s.rank));
        }
    }
    Ok(rank)
}

/// Splits both unions into the disjoint atoms over their total support and
/// records which atoms fall inside each side. Only atoms inside the left
/// union are returned.
pub fn atom_decomposition(left: &[BasicClopenSet], right: &[BasicClopenSet]) -> Result<Vec<Atom>> {
    let rank = uniform_rank(left, right)?;
    let support = support(left, right);
    assert!(support.len() < 24, "support too large for atom decomposition");
    let inside = |set: &BasicClopenSet, rel: &[bool]| {
        let polarity = |w: &Word| support.iter().position(|v| v == w).map(|i| rel[i]).unwrap();
        set.relations.iter().all(&polarity) && set.irrelations.iter().all(|w| !polarity(w))
    };
    let mut atoms = Vec::new();
    for mask in 0..(1u64 << support.len()) {
        // bit i set: support word i is an irrelation
        let rel: Vec<bool> = (0..support.len()).map(|i| mask & (1 << i) == 0).collect();
        let in_left = left.iter().position(|s| inside(s, &rel));
        if in_left.is_none() {
            continue;
        }
        let in_right = right.iter().position(|s| inside(s, &rel));
        let (r, s): (Vec<_>, Vec<_>) = support.iter().cloned().zip(&rel).partition(|(_, &is_rel)| is_rel);
        let set = BasicClopenSet::new(rank, r.into_iter().map(|x| x.0).collect(), s.into_iter().map(|x| x.0).collect())?;
        atoms.push(Atom { set, in_left, in_right });
    }
    Ok(atoms)
}

/// Semi-decides `⋃ left ⊆ ⋃ right`: every atom of the left union outside
/// the right union must be shown incoherent. Residual atoms are searched
/// round-robin, one engine step each.
pub fn inclusion_semidecide(left: &[BasicClopenSet], right: &[BasicClopenSet], fuel: u64) -> Result<Verdict> {
    let atoms = atom_decomposition(left, right)?;
    let mut fuel = Fuel::new(fuel);
    let mut proofs: Vec<Option<Derivation>> = vec![None; atoms.len()];
    let mut engines: Vec<Option<Engine>> = atoms
        .iter()
        .map(|a| a.in_right.is_none().then(|| Engine::new(a.set.rank, &a.set.relations)))
        .collect();
    loop {
        let mut open = false;
        for (i, slot) in engines.iter_mut().enumerate() {
            let Some(e) = slot else { continue };
            if let Some(s) = atoms[i].set.irrelations.iter().find(|s| e.contains(s)) {
                proofs[i] = e.certify(s);
                *slot = None;
                continue;
            }
            open = true;
            if !e.step(&mut fuel) {
                // out of fuel, or a saturated engine that can never succeed
                return Ok(fuel.unknown());
            }
        }
        if !open {
            break;
        }
        if fuel.exhausted() {
            return Ok(fuel.unknown());
        }
    }
    let witnesses = atoms
        .iter()
        .zip(proofs)
        .map(|(a, proof)| AtomWitness {
            relations: a.set.relations.clone(),
            irrelations: a.set.irrelations.clone(),
            reason: match (a.in_right, proof) {
                (Some(by), _) => AtomReason::Covered { by },
                (None, Some(derivation)) => AtomReason::Incoherent { derivation },
                (None, None) => unreachable!("open atoms keep the loop running"),
            },
        })
        .collect();
    Ok(Verdict::verified(Witness::Inclusion { atoms: witnesses }, fuel.spent()))
}

type StreamFactory = Arc<dyn Fn() -> RelatorStream + Send + Sync>;

/// A recursive presentation: a rank and a replayable relator enumeration.
#[derive(Clone)]
pub struct RecPresentation {
    rank: usize,
    factory: StreamFactory,
}

impl fmt::Debug for RecPresentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RecPresentation(rank {})", self.rank)
    }
}

impl RecPresentation {
    pub fn new(rank: usize, factory: impl Fn() -> RelatorStream + Send + Sync + 'static) -> Self {
        RecPresentation { rank, factory: Arc::new(factory) }
    }

    pub fn finite(rank: usize, relators: Vec<Word>) -> Self {
        RecPresentation::new(rank, move || Box::new(relators.clone().into_iter()))
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// A fresh run of the relator enumeration.
    pub fn stream(&self) -> RelatorStream {
        (self.factory)()
    }

    pub fn engine(&self) -> Engine {
        Engine::from_stream(self.rank, self.stream())
    }
}

/// An enumeration of nontrivial words, replayable like a presentation.
pub type Discriminator = RecPresentation;

struct Kuznetsov {
    pres: RecPresentation,
    disc: Discriminator,
}

impl WordProblem for Kuznetsov {
    fn rank(&self) -> usize {
        self.pres.rank
    }

    /// Round-robin between proving `w = 1` from the presentation and proving
    /// that `w = 1` would kill some discriminating element.
    fn is_relation(&self, w: &Word) -> bool {
        if w.is_empty() {
            return true;
        }
        let mut a = self.pres.engine();
        let extra = self.pres.stream();
        let with_w: RelatorStream = Box::new(std::iter::once(w.clone()).chain(extra));
        let mut b = Engine::from_stream(self.pres.rank, with_w);
        let mut disc = self.disc.stream();
        let mut seen: Vec<Word> = Vec::new();
        let mut fuel = Fuel::new(u64::MAX);
        loop {
            a.step(&mut fuel);
            if a.contains(w) {
                return true;
            }
            b.step(&mut fuel);
            if let Some(d) = disc.next() {
                seen.push(d);
            }
            if seen.iter().any(|d| b.contains(d)) {
                return false;
            }
        }
    }
}

/// The word problem of a recursively presented group from a discriminating
/// family. May diverge on inputs that do not satisfy that contract.
pub fn kuznetsov_wp(pres: &RecPresentation, disc: &Discriminator) -> MarkedGroup {
    assert_eq!(pres.rank, disc.rank, "presentation and discriminating family of different ranks");
    MarkedGroup::new("kuznetsov", Arc::new(Kuznetsov { pres: pres.clone(), disc: disc.clone() })).memoized()
}

/// A presentation of `G/⟨⟨normal_gens⟩⟩`: the stream interleaves the
/// normal generators with `G`'s relations in shortlex order (non-relations
/// are replaced by ε so each pull does bounded work).
pub fn quotient_recpres(g: &MarkedGroup, normal_gens: &[Word]) -> RecPresentation {
    let g = g.clone();
    let gens = normal_gens.to_vec();
    let rank = g.rank();
    RecPresentation::new(rank, move || {
        let g = g.clone();
        let gens = gens.clone();
        let relations = Shortlex::new(rank).map(move |w| if g.is_relation(&w) { w } else { Word::identity(rank) });
        let mut gens_iter = gens.into_iter();
        let mut relations = relations;
        let mut turn = 0u64;
        Box::new(std::iter::from_fn(move || {
            turn += 1;
            if turn % 2 == 1 {
                if let Some(x) = gens_iter.next() {
                    return Some(x);
                }
            }
            relations.next()
        }))
    })
}

/// Semi-decides finiteness of a presented group: round `r` runs the
/// consequence engine further and then looks for a transversal of at most
/// `r` words, closed under right multiplication by generators up to proven
/// equalities. Verified with the closure table; the order is at most the
/// transversal size.
pub fn finite_from_recpres_semidecide(pres: &RecPresentation, fuel: u64) -> Verdict {
    let mut fuel = Fuel::new(fuel);
    let mut e = pres.engine();
    let letters = alphabet(pres.rank);
    let gens: Vec<_> = letters[..pres.rank].to_vec();
    for round in 1u64.. {
        let target = e.spent() + 64 * round;
        while e.spent() < target {
            if !e.step(&mut fuel) {
                break;
            }
        }
        if fuel.exhausted() {
            return fuel.unknown();
        }
        // transversal search with proven equalities only
        let limit = round as usize;
        let mut elements = vec![Word::identity(pres.rank)];
        let mut table: Vec<Vec<usize>> = Vec::new();
        let mut proofs = Vec::new();
        let mut ok = true;
        let mut i = 0;
        'outer: while i < elements.len() {
            let mut row = Vec::new();
            for &l in &gens {
                let cand = elements[i].mul_letter(l);
                let mut hit = None;
                for (j, t) in elements.iter().enumerate() {
                    if !fuel.tick() {
                        return fuel.unknown();
                    }
                    if e.contains(&cand.inverse().mul(t)) {
                        hit = Some(j);
                        break;
                    }
                }
                match hit {
                    Some(j) => row.push(j),
                    None if elements.len() < limit => {
                        row.push(elements.len());
                        elements.push(cand);
                    }
                    None => {
                        ok = false;
                        break 'outer;
                    }
                }
            }
            table.push(row);
            i += 1;
        }
        if ok {
            for (i, row) in table.iter().enumerate() {
                for (l, &j) in row.iter().enumerate() {
                    let eq = elements[i].mul_letter(gens[l]).inverse().mul(&elements[j]);
                    proofs.push(e.certify(&eq).expect("table entries are proven"));
                }
            }
            let order = elements.len() as u64;
            return Verdict::verified(Witness::PresentedOrder { order, elements, table, proofs }, fuel.spent());
        }
    }
    unreachable!()
}
