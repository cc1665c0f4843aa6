//! Regulated sequences of marked groups and passage to the limit.

use std::sync::Arc;

use super::catalog::{cyclic, integers};
use super::combine::subgroup_marking;
use super::{MarkedGroup, WordProblem};
use crate::words::Word;

pub type Member = Arc<dyn Fn(u64) -> MarkedGroup + Send + Sync>;
pub type Regulator = Arc<dyn Fn(u64) -> u64 + Send + Sync>;

/// An indexed family of marked groups of one rank with a convergence
/// regulator: for every `n ≥ regulator(m)`, `at(n)` agrees with the limit on
/// bits `0..m`.
#[derive(Clone)]
pub struct GroupSequence {
    rank: usize,
    name: String,
    at: Member,
    regulator: Regulator,
}

impl std::fmt::Debug for GroupSequence {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "GroupSequence({}, rank {})", self.name, self.rank)
    }
}

impl GroupSequence {
    pub fn new(
        name: impl Into<String>,
        rank: usize,
        at: impl Fn(u64) -> MarkedGroup + Send + Sync + 'static,
        regulator: impl Fn(u64) -> u64 + Send + Sync + 'static,
    ) -> Self {
        GroupSequence { rank, name: name.into(), at: Arc::new(at), regulator: Arc::new(regulator) }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn at(&self, n: u64) -> MarkedGroup {
        let g = (self.at)(n);
        assert_eq!(g.rank(), self.rank, "sequence member of the wrong rank");
        g
    }

    pub fn regulator(&self, precision: u64) -> u64 {
        (self.regulator)(precision)
    }

    /// `ℤ/(n+1)` at index `n`, regulated by `m ↦ m + 1`; converges to `ℤ`.
    pub fn cyclic() -> Self {
        GroupSequence::new("cyclic", 1, |n| cyclic(n + 1), |m| m + 1)
    }

    /// `ℤ` marked by `(a, a^{n+1})` at index `n`; converges to `ℤ²`. A word
    /// of length `L` has exponent sums at most `L`, so index `L` already agrees
    /// with `ℤ²` on it and the regulator maps `m` to the length of word `m-1`.
    pub fn powers() -> Self {
        GroupSequence::new(
            "powers",
            2,
            |n| {
                let a = Word::generator(1, 1);
                subgroup_marking(&integers(), &[a.clone(), a.pow(n as i64 + 1)])
            },
            |m| Word::from_shortlex(2, m.saturating_sub(1)).len() as u64,
        )
    }

    pub fn constant(g: MarkedGroup) -> Self {
        let rank = g.rank();
        GroupSequence::new(format!("constant({})", g.name()), rank, move |_| g.clone(), |_| 0)
    }
}

struct Limit {
    seq: GroupSequence,
}

impl WordProblem for Limit {
    fn rank(&self) -> usize {
        self.seq.rank
    }

    fn is_relation(&self, w: &Word) -> bool {
        self.is_relation_at(w, w.shortlex_index())
    }

    fn is_relation_at(&self, w: &Word, n: u64) -> bool {
        self.seq.at(self.seq.regulator(n + 1)).bit_of(w, n) == 1
    }
}

/// The limit oracle: bit `n` is read off `at(regulator(n+1))`. Honest
/// regulators give the metric limit; a dishonest one still yields a total
/// oracle, just not the limit.
pub fn limit(seq: &GroupSequence) -> MarkedGroup {
    MarkedGroup::new(format!("limit({})", seq.name), Arc::new(Limit { seq: seq.clone() }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::catalog::{free_abelian, symmetric};

    #[test]
    fn cyclic_limit_is_z() {
        let l = limit(&GroupSequence::cyclic());
        let z = integers();
        for n in 0..200 {
            assert_eq!(l.bit(n), z.bit(n), "bit {n}");
        }
    }

    #[test]
    fn powers_limit_is_z2() {
        let l = limit(&GroupSequence::powers());
        let z2 = free_abelian(2);
        for n in 0..64 {
            assert_eq!(l.bit(n), z2.bit(n), "bit {n}");
        }
    }

    #[test]
    fn constant_limit() {
        let g = symmetric(3);
        let l = limit(&GroupSequence::constant(g.clone()));
        for n in 0..300 {
            assert_eq!(l.bit(n), g.bit(n));
        }
    }

    #[test]
    fn limit_locality() {
        // replacing members beyond regulator(m+1) leaves bits 0..=m alone
        let m = 40;
        let base = GroupSequence::cyclic();
        let cut = base.regulator(m + 1);
        let altered = GroupSequence::new(
            "altered",
            1,
            move |n| if n > cut { cyclic(2) } else { cyclic(n + 1) },
            |m| m + 1,
        );
        let (a, b) = (limit(&base), limit(&altered));
        for n in 0..=m {
            assert_eq!(a.bit(n), b.bit(n));
        }
    }
}
