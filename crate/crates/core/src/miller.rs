//! Miller's gadget: a finite presentation `L³` built from a base presentation
//! and a word `w`, trivial as soon as `w` is, and with solvable word problem
//! whenever the base has one (it is an amalgamated product).

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use crate::clopen::{BasicClopenSet, Engine, RecPresentation};
use crate::error::{Error, Result};
use crate::machines::Enumerator;
use crate::oracle::{MarkedGroup, WordProblem};
use crate::verdict::{Fuel, SignedIndex, Verdict, Witness};
use crate::words::{Alphabet, Letter, Word};

/// A finite presentation with named generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Presentation {
    alphabet: Alphabet,
    relators: Vec<Word>,
}

impl Presentation {
    pub fn new(alphabet: Alphabet, relators: Vec<Word>) -> Result<Self> {
        if let Some(r) = relators.iter().find(|r| r.rank() != alphabet.rank()) {
            return Err(Error::rank(alphabet.rank(), r.rank()));
        }
        Ok(Presentation { alphabet, relators })
    }

    pub fn free(alphabet: Alphabet) -> Self {
        Presentation { alphabet, relators: Vec::new() }
    }

    /// Parses `<a,b | a^2, [a,b]>`. The relator part may be empty or absent.
    pub fn parse(text: &str) -> Result<Self> {
        let t = text.trim();
        let inner = t
            .strip_prefix('<')
            .and_then(|s| s.strip_suffix('>'))
            .ok_or_else(|| Error::Malformed(format!("presentation {t:?} must be enclosed in < >")))?;
        let (gens, rels) = inner.split_once('|').unwrap_or((inner, ""));
        let mut names = Vec::new();
        for g in gens.split(',').map(str::trim).filter(|g| !g.is_empty()) {
            let mut chars = g.chars();
            match (chars.next(), chars.next()) {
                (Some(c), None) => names.push(c),
                _ => return Err(Error::Malformed(format!("generator name {g:?} must be a single letter"))),
            }
        }
        let alphabet = Alphabet::new(names)?;
        let relators = split_top_level(rels)
            .into_iter()
            .filter(|r| !r.trim().is_empty())
            .map(|r| alphabet.parse(r))
            .collect::<Result<Vec<_>>>()?;
        Presentation::new(alphabet, relators)
    }

    pub fn rank(&self) -> usize {
        self.alphabet.rank()
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn relators(&self) -> &[Word] {
        &self.relators
    }

    pub fn parse_word(&self, text: &str) -> Result<Word> {
        self.alphabet.parse(text)
    }

    pub fn format_word(&self, w: &Word) -> String {
        self.alphabet.format(w)
    }

    pub fn to_recpres(&self) -> RecPresentation {
        RecPresentation::finite(self.rank(), self.relators.clone())
    }
}

/// Splits on commas outside brackets and parentheses.
fn split_top_level(s: &str) -> Vec<&str> {
    let mut out = Vec::new();
    let (mut depth, mut start) = (0i32, 0);
    for (i, c) in s.char_indices() {
        match c {
            '[' | '(' => depth += 1,
            ']' | ')' => depth -= 1,
            ',' if depth == 0 => {
                out.push(&s[start..i]);
                start = i + 1;
            }
            _ => {}
        }
    }
    out.push(&s[start..]);
    out
}

impl fmt::Display for Presentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let gens: Vec<String> = self.alphabet.names().iter().map(char::to_string).collect();
        let rels: Vec<String> = self.relators.iter().map(|r| self.alphabet.format(r)).collect();
        write!(f, "<{} | {}>", gens.join(","), rels.join(", "))
    }
}

/// `⟨e₀, e₁, … | e₀ = e_i (i ∈ P), e₁ = e_j (j ∈ Q)⟩`, kept as index pairs
/// since it has infinitely many generators.
#[derive(Clone, Debug)]
pub struct Step1 {
    p: Enumerator,
    q: Enumerator,
}

/// The first-step presentation for r.e. sets `P ∋ 0` and `Q ∋ 1`.
pub fn step1_relations(p: &Enumerator, q: &Enumerator) -> Step1 {
    Step1 { p: p.clone(), q: q.clone() }
}

impl Step1 {
    /// Per stage, the identifications `(0, i)` and `(1, j)` emitted then.
    /// The trivial ones `(0, 0)` and `(1, 1)` are dropped.
    pub fn stages(&self) -> impl Iterator<Item = Vec<(u64, u64)>> + Send {
        self.p.stages().zip(self.q.stages()).map(|(ps, qs)| {
            let left = ps.into_iter().filter(|&i| i != 0).map(|i| (0, i));
            let right = qs.into_iter().filter(|&j| j != 1).map(|j| (1, j));
            left.chain(right).collect()
        })
    }

    pub fn prefix(&self, stages: usize) -> Vec<(u64, u64)> {
        self.stages().take(stages).flatten().collect()
    }

    /// The relators `e_s e_t⁻¹` among `e₀ … e_{rank-1}` (generator `i + 1`
    /// is `e_i`). Stages without such a relator emit ε, so the stream never
    /// stalls.
    pub fn restrict(&self, rank: usize) -> RecPresentation {
        let me = self.clone();
        RecPresentation::new(rank, move || {
            let r = rank as u64;
            Box::new(me.stages().flat_map(move |pairs| {
                let mut out: Vec<Word> = pairs
                    .into_iter()
                    .filter(|&(s, t)| s < r && t < r)
                    .map(|(s, t)| {
                        Word::generator(rank, s as usize + 1).mul(&Word::generator(rank, t as usize + 1).inverse())
                    })
                    .collect();
                if out.is_empty() {
                    out.push(Word::identity(rank));
                }
                out
            }))
        })
    }
}

/// The gadget: `l3` on generators `x₁ … x_k, a, b, c` (base names first, then
/// three unused letters) and `Π`, its relators with `w` as sole irrelation.
#[derive(Clone, Debug)]
pub struct MillerOutput {
    pub base: Presentation,
    pub w: Word,
    pub l3: Presentation,
    pub pi: BasicClopenSet,
}

impl MillerOutput {
    pub fn a(&self) -> usize {
        self.base.rank() + 1
    }

    pub fn b(&self) -> usize {
        self.base.rank() + 2
    }

    pub fn c(&self) -> usize {
        self.base.rank() + 3
    }
}

/// Left and right sides of the relations (1)–(4), as words over
/// `x₁ … x_k, a, b, c`.
fn templates(k: usize, w: &Word) -> (Vec<Word>, Vec<Word>) {
    let rank = k + 3;
    let g = |i: usize| Word::generator(rank, i);
    let (a, b, c) = (g(k + 1), g(k + 2), g(k + 3));
    let conj = |x: &Word, t: &Word, e: i64| x.conjugate_by(&t.pow(-e)); // t^-e x t^e
    let r1 = c.inverse().mul(&b.inverse()).mul(&c).mul(&b).mul(&c);
    let w = w.embed(rank, 0);
    let mut lhs = vec![
        conj(&b, &a, 1),
        conj(&b.inverse().mul(&a).mul(&b), &a, 2),
        conj(&w.commutator(&b), &a, 3),
    ];
    let mut rhs = vec![r1.clone(), conj(&r1, &c, 1), conj(&b, &c, 3)];
    for i in 1..=k {
        let e = 3 + i as i64;
        lhs.push(conj(&g(i).mul(&b), &a, e));
        rhs.push(conj(&b, &c, e));
    }
    (lhs, rhs)
}

fn fresh_names(base: &Alphabet) -> Result<Vec<char>> {
    let names: Vec<char> = ('a'..='z').filter(|c| !base.names().contains(c)).take(3).collect();
    if names.len() < 3 || base.rank() + 3 > 26 {
        return Err(Error::Spec("base presentation leaves no room for three new generators".into()));
    }
    Ok(names)
}

/// Adds `a, b, c` with the relations (1)–(4) to `base`; relation (3) uses
/// `[w, b] = w⁻¹b⁻¹wb`. Relators are listed (1), (2), (3), (4)ᵢ, then the
/// base relators.
pub fn step3_presentation(base: &Presentation, w: &Word) -> Result<MillerOutput> {
    let k = base.rank();
    if w.rank() != k {
        return Err(Error::rank(k, w.rank()));
    }
    let mut names = base.alphabet().names().to_vec();
    names.extend(fresh_names(base.alphabet())?);
    let alphabet = Alphabet::new(names)?;
    let (lhs, rhs) = templates(k, w);
    let mut relators: Vec<Word> = lhs.iter().zip(&rhs).map(|(l, r)| l.mul(&r.inverse())).collect();
    relators.extend(base.relators().iter().map(|r| r.embed(k + 3, 0)));
    let pi = BasicClopenSet::new(k + 3, relators.clone(), vec![w.embed(k + 3, 0)])?;
    Ok(MillerOutput { base: base.clone(), w: w.clone(), l3: Presentation::new(alphabet, relators)?, pi })
}

/// A letter of the free part, or a nontrivial syllable of the base factor.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
enum Tok {
    Free(Letter),
    Base(Word),
}

/// The free product of a base group (generators `1..=base_rank`) with the
/// free group on the remaining generators, or just a free group.
#[derive(Clone)]
pub struct Ambient {
    rank: usize,
    base: Option<MarkedGroup>,
}

impl Ambient {
    pub fn free(rank: usize) -> Self {
        Ambient { rank, base: None }
    }

    pub fn free_product(base: &MarkedGroup, rank: usize) -> Self {
        assert!(base.rank() <= rank, "base does not fit in the ambient rank");
        Ambient { rank, base: Some(base.clone()) }
    }

    fn base_rank(&self) -> usize {
        self.base.as_ref().map_or(0, |g| g.rank())
    }

    fn trivial_in_base(&self, s: &Word) -> bool {
        self.base.as_ref().is_some_and(|g| g.is_relation(s))
    }

    fn push(&self, nf: &mut Vec<Tok>, t: Tok) {
        match t {
            Tok::Free(l) => {
                if nf.last() == Some(&Tok::Free(l.inverse())) {
                    nf.pop();
                } else {
                    nf.push(Tok::Free(l));
                }
            }
            Tok::Base(s) => {
                if let Some(Tok::Base(prev)) = nf.last() {
                    let merged = prev.mul(&s);
                    nf.pop();
                    if !self.trivial_in_base(&merged) {
                        nf.push(Tok::Base(merged));
                    }
                } else if !self.trivial_in_base(&s) {
                    nf.push(Tok::Base(s));
                }
            }
        }
    }

    fn token(&self, l: Letter) -> Tok {
        let k = self.base_rank();
        if l.generator() <= k {
            Tok::Base(Word::letter(k, l))
        } else {
            Tok::Free(l)
        }
    }

    fn normal_form(&self, w: &Word) -> Vec<Tok> {
        assert_eq!(w.rank(), self.rank, "word of the wrong rank for the ambient group");
        let mut nf = Vec::new();
        for &l in w.letters() {
            self.push(&mut nf, self.token(l));
        }
        nf
    }

    /// Normal form of `x⁻¹ · y` for normal forms `x`, `y`.
    fn left_divide(&self, x: &[Tok], y: &[Tok]) -> Vec<Tok> {
        let mut out = Vec::with_capacity(x.len() + y.len());
        for t in x.iter().rev() {
            let inv = match t {
                Tok::Free(l) => Tok::Free(l.inverse()),
                Tok::Base(s) => Tok::Base(s.inverse()),
            };
            self.push(&mut out, inv);
        }
        for t in y {
            self.push(&mut out, t.clone());
        }
        out
    }

    fn same(&self, x: &Tok, y: &Tok) -> bool {
        match (x, y) {
            (Tok::Free(l), Tok::Free(m)) => l == m,
            (Tok::Base(s), Tok::Base(t)) => self.trivial_in_base(&s.inverse().mul(t)),
            _ => false,
        }
    }

    /// Length of the free-product normal form, base syllables counting one.
    pub fn length(&self, w: &Word) -> usize {
        self.normal_form(w).len()
    }

    pub fn is_trivial(&self, w: &Word) -> bool {
        self.normal_form(w).is_empty()
    }
}

struct Search<'a> {
    ambient: &'a Ambient,
    /// Signed generators: normal form, and the length of the prefix that
    /// must survive in any reduced product starting with it.
    gens: Vec<(SignedIndex, Vec<Tok>, usize)>,
    /// Largest remaining factor budget already tried from a state.
    tried: HashMap<Vec<Tok>, usize>,
    fuel: Fuel,
}

impl Search<'_> {
    /// `Some(true)` on success (factors pushed in order), `Some(false)` on
    /// exhaustion, `None` when fuel ran out.
    fn dfs(&mut self, rem: Vec<Tok>, budget: usize, factors: &mut Vec<SignedIndex>) -> Option<bool> {
        if rem.is_empty() {
            return Some(true);
        }
        if budget == 0 || self.tried.get(&rem).is_some_and(|&b| b >= budget) {
            return Some(false);
        }
        self.tried.insert(rem.clone(), budget);
        for g in 0..self.gens.len() {
            if !self.fuel.tick() {
                return None;
            }
            let (signed, nf, keep) = &self.gens[g];
            if rem.len() < *keep || !nf[..*keep].iter().zip(&rem).all(|(x, y)| self.ambient.same(x, y)) {
                continue;
            }
            let signed = *signed;
            let next = self.ambient.left_divide(&self.gens[g].1, &rem);
            factors.push(signed);
            match self.dfs(next, budget - 1, factors)? {
                true => return Some(true),
                false => {
                    factors.pop();
                }
            }
        }
        Some(false)
    }
}

/// Membership of `u` in the subgroup generated by a Nielsen-reduced
/// `family`: in a reduced product every factor keeps more than half of its
/// normal form, and a product of `n` factors has length at least `n`, so the
/// search only tries factors matching a prefix of what is left and stops at
/// `length(u)` factors. Each tried factor costs one unit of `bound`. A
/// finished search without a hit is reported as Unknown with a
/// `SearchExhausted` witness, which certifies non-membership for
/// Nielsen-reduced families.
pub fn nielsen_membership(u: &Word, family: &[Word], ambient: &Ambient, bound: u64) -> Verdict {
    let target = ambient.normal_form(u);
    let mut gens = Vec::new();
    for (index, f) in family.iter().enumerate() {
        for inverse in [false, true] {
            let nf = ambient.normal_form(&if inverse { f.inverse() } else { f.clone() });
            let keep = nf.len() / 2;
            gens.push((SignedIndex { index, inverse }, nf, keep));
        }
    }
    let max = target.len();
    let mut search = Search { ambient, gens, tried: HashMap::new(), fuel: Fuel::new(bound) };
    let mut factors = Vec::new();
    match search.dfs(target, max, &mut factors) {
        Some(true) => Verdict::verified(Witness::Factorization { factors }, search.fuel.spent()),
        Some(false) => Verdict::unknown_with(Witness::SearchExhausted { bound: max as u64 }, search.fuel.spent()),
        None => search.fuel.unknown(),
    }
}

/// Evaluates a factorization over a family.
pub fn factorization_value(rank: usize, family: &[Word], factors: &[SignedIndex]) -> Word {
    factors.iter().fold(Word::identity(rank), |acc, f| {
        let g = &family[f.index];
        acc.mul(&if f.inverse { g.inverse() } else { g.clone() })
    })
}

struct L3 {
    k: usize,
    left: Ambient,
    right: Ambient,
    /// Generators of `A` (left factor) and `B` (right factor), matched by
    /// position.
    fam_a: Vec<Word>,
    fam_b: Vec<Word>,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
enum Side {
    Left,
    Right,
}

impl L3 {
    fn side(&self, l: Letter) -> Side {
        if l.generator() == self.k + 3 {
            Side::Right
        } else {
            Side::Left
        }
    }

    fn syllables(&self, w: &Word) -> Vec<(Side, Word)> {
        let rank = self.k + 3;
        let mut out: Vec<(Side, Vec<Letter>)> = Vec::new();
        for &l in w.letters() {
            let s = self.side(l);
            match out.last_mut() {
                Some((t, ls)) if *t == s => ls.push(l),
                _ => out.push((s, vec![l])),
            }
        }
        out.into_iter().map(|(s, ls)| (s, Word::reduce_unchecked(ls, rank))).collect()
    }

    /// Rewrites the syllable into the other factor if it lies in the
    /// amalgamated subgroup.
    fn transfer(&self, side: Side, w: &Word) -> Option<Word> {
        let (ambient, from, to) = match side {
            Side::Left => (&self.left, &self.fam_a, &self.fam_b),
            Side::Right => (&self.right, &self.fam_b, &self.fam_a),
        };
        let v = nielsen_membership(w, from, ambient, u64::MAX);
        match v.witness {
            Some(Witness::Factorization { factors }) => Some(factorization_value(self.k + 3, to, &factors)),
            _ => None,
        }
    }
}

impl WordProblem for L3 {
    fn rank(&self) -> usize {
        self.k + 3
    }

    fn is_relation(&self, w: &Word) -> bool {
        let mut syl = self.syllables(w);
        loop {
            match syl.len() {
                0 => return true,
                1 => {
                    let (side, w) = &syl[0];
                    let ambient = if *side == Side::Left { &self.left } else { &self.right };
                    return ambient.is_trivial(w);
                }
                _ => {}
            }
            // leftmost syllable in the amalgamated subgroup
            let Some((i, image)) = syl.iter().enumerate().find_map(|(i, (s, w))| self.transfer(*s, w).map(|im| (i, im)))
            else {
                return false;
            };
            let other = if syl[i].0 == Side::Left { Side::Right } else { Side::Left };
            let mut merged = image;
            let mut lo = i;
            if i > 0 {
                merged = syl[i - 1].1.mul(&merged);
                lo = i - 1;
            }
            let hi = if i + 1 < syl.len() {
                merged = merged.mul(&syl[i + 1].1);
                i + 2
            } else {
                i + 1
            };
            syl.splice(lo..hi, [(other, merged)]);
        }
    }
}

/// Word problem of `L³` as the amalgamated product
/// `(L² * F(a,b)) *_{A=B} F(b,c)`, with `L²` given by `base`. Errors when `w`
/// is trivial in the base, where the decomposition breaks down.
pub fn l3_wp(base: &MarkedGroup, w: &Word) -> Result<MarkedGroup> {
    let k = base.rank();
    base.check_rank(w)?;
    if base.is_relation(w) {
        return Err(Error::Degenerate(format!("w = {w} is trivial in {}", base.name())));
    }
    let b = Word::generator(k + 3, k + 2);
    let (lhs, rhs) = templates(k, w);
    let fam_a: Vec<Word> = std::iter::once(b.clone()).chain(lhs).collect();
    let fam_b: Vec<Word> = std::iter::once(b).chain(rhs).collect();
    let l3 = L3 { k, left: Ambient::free_product(base, k + 3), right: Ambient::free(k + 3), fam_a, fam_b };
    Ok(MarkedGroup::new(format!("L3({}, {w})", base.name()), Arc::new(l3)))
}

/// The generators of `A` (left) and `B` (right) for the gadget on a base of
/// rank `k`.
pub fn amalgam_families(k: usize, w: &Word) -> (Vec<Word>, Vec<Word>) {
    let b = Word::generator(k + 3, k + 2);
    let (lhs, rhs) = templates(k, w);
    (std::iter::once(b.clone()).chain(lhs).collect(), std::iter::once(b).chain(rhs).collect())
}

/// Searches consequences of the gadget's relators plus `extra` until `b`,
/// `c`, `a` and every `xᵢ` are trivial; the witness holds one derivation per
/// generator in that order.
pub fn trivializes(out: &MillerOutput, extra: &Word, fuel: u64) -> Result<Verdict> {
    let rank = out.l3.rank();
    if extra.rank() != rank {
        return Err(Error::rank(rank, extra.rank()));
    }
    let mut relators = out.l3.relators().to_vec();
    relators.push(extra.clone());
    let mut engine = Engine::new(rank, &relators);
    let order: Vec<usize> = [out.b(), out.c(), out.a()].into_iter().chain(1..=out.base.rank()).collect();
    let mut fuel = Fuel::new(fuel);
    while !order.iter().all(|&g| engine.killed(g)) {
        if !engine.step(&mut fuel) {
            return Ok(fuel.unknown());
        }
    }
    let steps = order
        .iter()
        .map(|&g| engine.certify(&Word::generator(rank, g)).expect("killed generators are certified"))
        .collect();
    Ok(Verdict::verified(Witness::Cascade { steps }, fuel.spent()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::clopen::member;
    use crate::machines::{pq_halting_family, Program};
    use crate::oracle::catalog::{cyclic, free_group, integers};
    use crate::oracle::{check_lawful, LawConfig};

    fn z_instance() -> (MillerOutput, MarkedGroup) {
        let base = Presentation::parse("<x>").unwrap();
        let x = base.parse_word("x").unwrap();
        (step3_presentation(&base, &x).unwrap(), l3_wp(&integers(), &x).unwrap())
    }

    #[test]
    fn presentations_round_trip() {
        let p = Presentation::parse("<a,b | a^2, [a,b]>").unwrap();
        assert_eq!(p.rank(), 2);
        assert_eq!(p.to_string(), "<a,b | aa, ABab>");
        assert_eq!(Presentation::parse(&p.to_string()).unwrap(), p);
        assert_eq!(Presentation::parse("<x | >").unwrap().relators().len(), 0);
        assert!(Presentation::parse("a,b | a").is_err());
    }

    #[test]
    fn step1_streams() {
        let s = step1_relations(&Enumerator::recursive(|n| n % 2 == 0), &Enumerator::recursive(|n| n % 2 == 1));
        assert_eq!(&s.prefix(4), &[(0, 2), (1, 3)]);
        let trivial = step1_relations(&Enumerator::finite(vec![0]), &Enumerator::finite(vec![1]));
        assert!(trivial.prefix(50).is_empty());
        let pres = s.restrict(4);
        let words: Vec<Word> = pres.stream().take(4).filter(|w| !w.is_empty()).collect();
        assert_eq!(words, vec![Word::parse(4, "aC").unwrap(), Word::parse(4, "bD").unwrap()]);
    }

    #[test]
    fn step1_from_halting_family_freezes() {
        let (p, q) = pq_halting_family(&Program::halting_at(3));
        let s = step1_relations(&p, &q);
        assert_eq!(s.prefix(50), s.prefix(500));
    }

    #[test]
    fn z_instance_templates() {
        let (out, _) = z_instance();
        assert_eq!(out.l3.relators().len(), 4);
        assert_eq!(out.l3.relators()[2], out.l3.parse_word("a^-3 [x,b] a^3 c^-3 b^-1 c^3").unwrap());
        assert_eq!(out.l3.relators()[3], out.l3.parse_word("a^-4 x b a^4 c^-4 b^-1 c^4").unwrap());
        assert_eq!(out.l3.relators()[0], out.l3.parse_word("a^-1 b a (c^-1 b^-1 c b c)^-1").unwrap());
        assert_eq!(out.l3.relators()[1], out.l3.parse_word("a^-2 b^-1 a b a^2 (c^-2 b^-1 c b c^2)^-1").unwrap());
        assert_eq!(out.pi.irrelations(), &[out.l3.parse_word("x").unwrap()]);
        let base = Presentation::parse("<x,y | xxx, [x,y]>").unwrap();
        let out = step3_presentation(&base, &base.parse_word("xy").unwrap()).unwrap();
        assert_eq!(out.l3.relators().len(), 7);
    }

    #[test]
    fn nielsen_examples() {
        let f = Ambient::free(2);
        let (b, c) = (Word::generator(2, 1), Word::generator(2, 2));
        let gen = c.inverse().mul(&b.inverse()).mul(&c).mul(&b).mul(&c);
        let family = vec![b.clone(), gen.clone()];
        let v = nielsen_membership(&gen, &family, &f, 1000);
        assert_eq!(v.witness, Some(Witness::Factorization { factors: vec![SignedIndex { index: 1, inverse: false }] }));
        let v = nielsen_membership(&c, &family, &f, 1000);
        assert!(v.is_unknown());
        assert_eq!(v.witness, Some(Witness::SearchExhausted { bound: 1 }));
        let v = nielsen_membership(&b.mul(&gen), &family, &f, 1000);
        let Some(Witness::Factorization { factors }) = v.witness else { panic!() };
        assert_eq!(factors.len(), 2);
        assert_eq!(factorization_value(2, &family, &factors), b.mul(&gen));
    }

    #[test]
    fn l3_word_problem() {
        let (out, g) = z_instance();
        let x = out.l3.parse_word("x").unwrap();
        let b = out.l3.parse_word("b").unwrap();
        assert!(!g.is_relation(&x));
        assert!(!g.is_relation(&b));
        for r in out.l3.relators() {
            assert!(g.is_relation(r), "{}", out.l3.format_word(r));
            assert!(g.is_relation(&r.conjugate_by(&out.l3.parse_word("xcAb").unwrap())));
        }
        assert!(member(&g, &out.pi).unwrap());
        for s in ["a", "c", "ab", "xc", "[a,c]", "b^a"] {
            assert!(!g.is_relation(&out.l3.parse_word(s).unwrap()), "{s}");
        }
        assert!(g.is_relation(&out.l3.parse_word("[b^a, c^-1 b^-1 c b c]").unwrap()));
        assert!(matches!(l3_wp(&cyclic(3), &Word::parse(1, "a^3").unwrap()), Err(Error::Degenerate(_))));
    }

    #[test]
    fn base_embeds() {
        let base = free_group(2);
        let w = Word::parse(2, "[a,b]").unwrap();
        let g = l3_wp(&base, &w).unwrap();
        for n in 0..200u64 {
            let u = Word::from_shortlex(2, n);
            assert_eq!(g.is_relation(&u.embed(5, 0)), base.is_relation(&u));
        }
        let out = step3_presentation(&Presentation::free(Alphabet::standard(2)), &w).unwrap();
        for r in out.l3.relators() {
            assert!(g.is_relation(r));
        }
    }

    #[test]
    fn cascade() {
        let (out, _) = z_instance();
        let x = out.l3.parse_word("x").unwrap();
        let v = trivializes(&out, &x, 1_000_000).unwrap();
        let Some(Witness::Cascade { steps }) = &v.witness else { panic!("{v:?}") };
        assert_eq!(steps.len(), 4);
        let mut rels = out.l3.relators().to_vec();
        rels.push(x);
        for (d, g) in steps.iter().zip([out.b(), out.c(), out.a(), 1]) {
            assert_eq!(d.target, Word::generator(4, g));
            assert!(d.check(&rels));
        }
        assert!(trivializes(&out, &Word::identity(4), 5_000).unwrap().is_unknown());
        let base = Presentation::parse("<x | x^5>").unwrap();
        let out = step3_presentation(&base, &base.parse_word("x^2").unwrap()).unwrap();
        let w = out.l3.parse_word("x^2").unwrap();
        assert!(trivializes(&out, &w, 1_000_000).unwrap().is_verified());
    }

    #[test]
    fn lawful() {
        let (_, g) = z_instance();
        check_lawful(&g, &LawConfig { pairs: 100, ..LawConfig::default() }).unwrap();
    }
}
