//! Generation of a group by a tuple of words, and the enumeration of all
//! markings of a group.

use std::collections::HashSet;

use super::combine::subgroup_marking;
use super::MarkedGroup;
use crate::verdict::{Expression, Fuel, Verdict, Witness};
use crate::words::{unpair_tuple, Shortlex, Word};

/// Searches, for every generator `s_i` of `G`, a word over the tuple whose
/// image equals `s_i`. Never refutes.
pub fn generates_semidecide(g: &MarkedGroup, tuple: &[Word], fuel: u64) -> Verdict {
    let mut fuel = Fuel::new(fuel);
    match express(g, tuple, &g.generators(), &mut fuel) {
        Some(expressions) => {
            Verdict::verified(Witness::Generation { tuple: tuple.to_vec(), expressions }, fuel.spent())
        }
        None => fuel.unknown(),
    }
}

/// Writes every target as a word over the tuple. Candidate words are tried
/// in shortlex order; each (candidate, unresolved target) query costs one
/// unit of fuel.
pub fn express(g: &MarkedGroup, tuple: &[Word], targets: &[Word], fuel: &mut Fuel) -> Option<Vec<Expression>> {
    let mut found: Vec<Option<Word>> = vec![None; targets.len()];
    let mut open = targets.len();
    if open == 0 {
        return Some(Vec::new());
    }
    // rank-0 tuples have a single candidate
    let candidates: Box<dyn Iterator<Item = Word>> =
        if tuple.is_empty() { Box::new(std::iter::once(Word::identity(0))) } else { Box::new(Shortlex::new(tuple.len())) };
    for candidate in candidates {
        let image = candidate.substitute_into(g.rank(), tuple);
        for (i, slot) in found.iter_mut().enumerate() {
            if slot.is_some() {
                continue;
            }
            if !fuel.tick() {
                return None;
            }
            if g.equal(&image, &targets[i]) {
                *slot = Some(candidate.clone());
                open -= 1;
            }
        }
        if open == 0 {
            return Some(
                found
                    .into_iter()
                    .zip(targets)
                    .map(|(e, target)| Expression { target: target.clone(), over_tuple: e.unwrap() })
                    .collect(),
            );
        }
    }
    None
}

/// Re-checks a generation witness against `G`'s oracle.
pub fn check_generation(g: &MarkedGroup, w: &Witness) -> bool {
    let Witness::Generation { tuple, expressions } = w else { return false };
    expressions.len() == g.rank()
        && expressions.iter().enumerate().all(|(i, e)| {
            e.target == g.generator(i + 1)
                && e.over_tuple.rank() == tuple.len()
                && g.equal(&e.over_tuple.substitute_into(g.rank(), tuple), &e.target)
        })
}

impl Word {
    /// Substitution that also handles the empty tuple (rank-0 words).
    pub(crate) fn substitute_into(&self, rank: usize, images: &[Word]) -> Word {
        if images.is_empty() {
            Word::identity(rank)
        } else {
            self.substitute(images)
        }
    }
}

/// A `j`-marking of `G` together with the tuple that defines it.
#[derive(Clone, Debug)]
pub struct Marking {
    pub tuple: Vec<Word>,
    pub group: MarkedGroup,
}

/// Stream of every generating `j`-tuple of `G`. Stage `t` revisits tuple
/// codes `0..=t` with fuel `t + 1`; a tuple is emitted the first time its
/// generation search succeeds.
pub struct Markings {
    group: MarkedGroup,
    j: usize,
    stage: u64,
    code: u64,
    emitted: HashSet<u64>,
}

impl Iterator for Markings {
    type Item = Marking;

    fn next(&mut self) -> Option<Marking> {
        loop {
            if self.code > self.stage {
                self.stage += 1;
                self.code = 0;
            }
            let code = self.code;
            self.code += 1;
            if self.emitted.contains(&code) {
                continue;
            }
            let tuple: Vec<Word> = unpair_tuple(code, self.j)
                .into_iter()
                .map(|i| Word::from_shortlex(self.group.rank(), i))
                .collect();
            if generates_semidecide(&self.group, &tuple, self.stage + 1).is_verified() {
                self.emitted.insert(code);
                let group = subgroup_marking(&self.group, &tuple);
                return Some(Marking { tuple, group });
            }
        }
    }
}

pub fn enumerate_markings(g: &MarkedGroup, j: usize) -> Markings {
    assert!(j >= 1, "markings need at least one generator");
    Markings { group: g.clone(), j, stage: 0, code: 0, emitted: HashSet::new() }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::catalog::{cyclic, integers, symmetric};
    use crate::verdict::Status;

    fn w(rank: usize, s: &str) -> Word {
        Word::parse(rank, s).unwrap()
    }

    #[test]
    fn generation_examples() {
        let z = integers();
        let v = generates_semidecide(&z, &[w(1, "a^3"), w(1, "a^5")], 1000);
        assert_eq!(v.status, Status::Verified);
        let Some(Witness::Generation { expressions, .. }) = &v.witness else { panic!() };
        assert_eq!(expressions[0].over_tuple, w(2, "aaB"));
        assert!(check_generation(&z, v.witness.as_ref().unwrap()));

        let s = symmetric(4);
        let own = generates_semidecide(&s, &s.generators(), 100);
        assert!(own.is_verified());
        // ε fails for both generators, then a and b resolve
        assert_eq!(own.fuel_spent, 2 + 2 + 1);

        let half = generates_semidecide(&z, &[w(1, "a^2")], 5000);
        assert_eq!(half.status, Status::Unknown);
        assert_eq!(half.fuel_spent, 5000);
    }

    #[test]
    fn fuel_monotone() {
        let z = integers();
        let t = [w(1, "a^3"), w(1, "a^5")];
        let first = generates_semidecide(&z, &t, 1000);
        for f in [first.fuel_spent, first.fuel_spent + 1, 5000] {
            assert_eq!(generates_semidecide(&z, &t, f), first);
        }
        assert!(generates_semidecide(&z, &t, first.fuel_spent - 1).is_unknown());
    }

    #[test]
    fn markings_of_z() {
        let first: Vec<Vec<Word>> = enumerate_markings(&integers(), 1).take(2).map(|m| m.tuple).collect();
        assert_eq!(first, vec![vec![w(1, "a")], vec![w(1, "A")]]);
        let z = integers();
        for m in enumerate_markings(&z, 2).take(5) {
            assert!(m.group.is_relation(&w(2, "[a,b]")));
            assert!(generates_semidecide(&z, &m.tuple, 1 << 20).is_verified());
        }
    }

    #[test]
    fn markings_of_z2_agree() {
        let g = cyclic(2);
        let ms: Vec<Marking> = enumerate_markings(&g, 1).take(4).collect();
        for m in &ms {
            for n in 0..64 {
                assert_eq!(m.group.bit(n), ms[0].group.bit(n));
            }
        }
    }
}
