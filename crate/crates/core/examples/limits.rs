//! Passage to the limit: regulated sequences and the oracles of their limits.

use marked_groups::metric::distance;
use marked_groups::oracle::catalog::{free_abelian, integers, symmetric};
use marked_groups::oracle::{limit, GroupSequence, MarkedGroup};

fn main() {
    let cyc = GroupSequence::cyclic();
    let z = integers();
    for n in [0, 2, 8, 30] {
        println!("d({}, Z) = {}", cyc.at(n).name(), distance(&cyc.at(n), &z, 200));
    }
    println!("d(limit(cyclic), Z) <= {}", distance(&limit(&cyc), &z, 200));

    let powers = GroupSequence::powers();
    println!("d(limit(powers), Z^2) <= {}", distance(&limit(&powers), &free_abelian(2), 500));

    // a hand-rolled sequence: S3 from index 5 on, with a regulator that knows it
    let seq = GroupSequence::new(
        "eventually S3",
        2,
        |n| if n < 5 { MarkedGroup::from_fn("F2-ish", 2, |w| w.is_empty()) } else { symmetric(3) },
        |_| 5,
    );
    println!("d(limit, S3) <= {}", distance(&limit(&seq), &symmetric(3), 300));
}
