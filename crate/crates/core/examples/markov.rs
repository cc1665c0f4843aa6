//! The diagonal group of a machine: equal to the limit of a sequence when
//! the machine runs forever, equal to a member of the sequence otherwise.
//! Equality with the limit can therefore only ever be refuted.

use marked_groups::machines::Program;
use marked_groups::markov::{diagonal_group, distinguish_semidecide};
use marked_groups::oracle::catalog::integers;
use marked_groups::oracle::GroupSequence;

fn main() -> marked_groups::Result<()> {
    let seq = GroupSequence::cyclic();
    let z = integers();
    for l in [Program::looping(0), Program::halting_at(1), Program::halting_at(4), Program::halting_at(9)] {
        let g = diagonal_group(&seq, &l);
        let v = distinguish_semidecide(&g, &z, 20_000)?;
        let bits: String = (0..30).map(|n| char::from(b'0' + g.bit(n))).collect();
        println!("{:<28} {bits}  vs Z: {:?} {:?}", l.to_string(), v.status, v.witness);
    }
    Ok(())
}
