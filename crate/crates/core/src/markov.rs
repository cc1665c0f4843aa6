//! The diagonal construction behind undecidability results for marked
//! groups: a machine-controlled group that equals the limit of a sequence
//! exactly when the machine never halts.

use std::sync::{Arc, Mutex};

use crate::error::{Error, Result};
use crate::machines::{Machine, Program, Run};
use crate::oracle::{limit, GroupSequence, MarkedGroup, WordProblem};
use crate::verdict::{Fuel, Verdict, Witness};
use crate::words::Word;

struct Diagonal {
    seq: GroupSequence,
    limit: MarkedGroup,
    /// Shared run of the machine on input 0, advanced on demand. Only ever
    /// moves forward, so answers do not depend on query order.
    machine: Mutex<Machine>,
}

impl Diagonal {
    /// The step at which the machine halts, if that is at most `n`.
    fn halted_by(&self, n: u64) -> Option<u64> {
        let mut m = self.machine.lock().unwrap();
        if m.steps() < n {
            m.run_to(n);
        }
        match m.state() {
            Run::Halted { steps, .. } if steps <= n => Some(steps),
            _ => None,
        }
    }
}

impl WordProblem for Diagonal {
    fn rank(&self) -> usize {
        self.seq.rank()
    }

    fn is_relation(&self, w: &Word) -> bool {
        self.is_relation_at(w, w.shortlex_index())
    }

    fn is_relation_at(&self, w: &Word, n: u64) -> bool {
        let bit = match self.halted_by(n) {
            None => self.limit.bit_of(w, n),
            Some(p) => self.seq.at(self.seq.regulator(p)).bit_of(w, n),
        };
        bit == 1
    }
}

/// `Γ_l`: bit `n` is the limit's bit while `l` (on input 0) is still running
/// after `n` steps, and otherwise the bit of `seq.at(regulator(p))`, where `p`
/// is the halting step. That member agrees with the limit on bits `0..p`, so
/// `Γ_l` is the limit if `l` never halts and exactly that member if it does.
pub fn diagonal_group(seq: &GroupSequence, l: &Program) -> MarkedGroup {
    let d = Diagonal { seq: seq.clone(), limit: limit(seq), machine: Mutex::new(Machine::new(l.clone(), 0)) };
    MarkedGroup::new(format!("diag({}, {})", seq.name(), l), Arc::new(d))
}

/// `Γ_i` for the machine with Gödel number `i`.
pub fn diagonal_group_at(seq: &GroupSequence, index: u64) -> MarkedGroup {
    diagonal_group(seq, &Program::decode(index))
}

/// Searches a bit where the two groups differ, two oracle queries per bit.
/// Never refutes: equality of marked groups is not semi-decidable.
pub fn distinguish_semidecide(g: &MarkedGroup, h: &MarkedGroup, fuel: u64) -> Result<Verdict> {
    if g.rank() != h.rank() {
        return Err(Error::rank(g.rank(), h.rank()));
    }
    let mut fuel = Fuel::new(fuel);
    for index in 0u64.. {
        if !fuel.take(2) {
            return Ok(fuel.unknown());
        }
        let w = Word::from_shortlex(g.rank(), index);
        let (left, right) = (g.bit_of(&w, index) == 1, h.bit_of(&w, index) == 1);
        if left != right {
            return Ok(Verdict::verified(Witness::Bit { index, left, right }, fuel.spent()));
        }
    }
    unreachable!()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::catalog::{cyclic, integers, symmetric};
    use crate::oracle::check_lawful;
    use crate::oracle::LawConfig;

    #[test]
    fn looping_machines_give_the_limit() {
        let z = integers();
        let g = diagonal_group(&GroupSequence::cyclic(), &Program::looping(3));
        for n in 0..500 {
            assert_eq!(g.bit(n), z.bit(n));
        }
    }

    #[test]
    fn halting_machines_give_a_member() {
        let seq = GroupSequence::cyclic();
        for p in 1..6 {
            let g = diagonal_group(&seq, &Program::halting_at(p));
            let member = seq.at(seq.regulator(p));
            for n in 0..300 {
                assert_eq!(g.bit(n), member.bit(n), "p={p} n={n}");
            }
            // the member is Z/(p+2)
            assert_eq!(member.bit(2 * (p + 2) - 1), 1);
        }
    }

    #[test]
    fn constant_sequences() {
        let s3 = symmetric(3);
        let seq = GroupSequence::constant(s3.clone());
        for l in [Program::looping(0), Program::halting_at(2)] {
            let g = diagonal_group(&seq, &l);
            for n in 0..200 {
                assert_eq!(g.bit(n), s3.bit(n));
            }
        }
    }

    #[test]
    fn distinguishing() {
        let z = integers();
        let v = distinguish_semidecide(&cyclic(2), &z, 100).unwrap();
        assert_eq!(v.witness, Some(Witness::Bit { index: 3, left: true, right: false }));
        assert!(distinguish_semidecide(&z, &z, 1000).unwrap().is_unknown());
        let g = diagonal_group(&GroupSequence::cyclic(), &Program::halting_at(2));
        let Some(Witness::Bit { index, .. }) = distinguish_semidecide(&g, &z, 1000).unwrap().witness else { panic!() };
        assert!(index >= 2);
        assert!(distinguish_semidecide(&z, &symmetric(3), 10).is_err());
    }

    #[test]
    fn query_order_does_not_matter() {
        let seq = GroupSequence::cyclic();
        let forward = diagonal_group(&seq, &Program::halting_at(4));
        let backward = diagonal_group(&seq, &Program::halting_at(4));
        let a: Vec<u8> = (0..100).map(|n| forward.bit(n)).collect();
        let mut b: Vec<u8> = (0..100).rev().map(|n| backward.bit(n)).collect();
        b.reverse();
        assert_eq!(a, b);
    }

    #[test]
    fn lawful() {
        let cfg = LawConfig { pairs: 100, ..LawConfig::default() };
        for l in [Program::looping(1), Program::halting_at(3)] {
            let g = diagonal_group(&GroupSequence::cyclic(), &l);
            check_lawful(&g, &cfg).unwrap();
        }
    }
}
