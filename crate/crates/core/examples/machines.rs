//! Counter machines, their Gödel numbers, and the recursively inseparable
//! pair P (self-output 0) and Q (self-output 1).

use marked_groups::machines::{inseparable_pq, pq_nct_family, run_bounded, Program};

fn main() -> marked_groups::Result<()> {
    let add2 = Program::parse("INC 0 / INC 0 / HALT")?;
    println!("{add2} on 5: {:?}", run_bounded(&add2, 5, 100));
    for p in [Program::constant_zero(), Program::constant_one(), Program::looping(0), Program::halting_at(3)] {
        println!("{:<40} index {:?}, on 0: {:?}", p.to_string(), p.encode(), run_bounded(&p, 0, 1000));
    }

    let (p, q) = inseparable_pq();
    println!("P: {:?}", p.prefix(900).into_iter().take(12).collect::<Vec<_>>());
    println!("Q: {:?}", q.prefix(2100).into_iter().take(12).collect::<Vec<_>>());

    // while the gating machine runs, the thinned copies come out in increasing order
    let (p, _) = pq_nct_family(&Program::looping(0));
    println!("P thinned: {:?}", p.prefix(6));
    Ok(())
}
