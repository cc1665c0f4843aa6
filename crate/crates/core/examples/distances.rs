//! Distances between marked groups, read off their binary expansions.

use marked_groups::metric::distance;
use marked_groups::oracle::catalog::{cyclic, free_abelian, free_group, integers};
use marked_groups::oracle::subgroup_marking;
use marked_groups::Word;

fn main() {
    let z = integers();
    for n in 2..=6 {
        println!("d(Z/{n}, Z) = {}", distance(&cyclic(n), &z, 63));
    }

    // first bits of each expansion, one column per shortlex word
    let bits = |g: &marked_groups::MarkedGroup| (0..24).map(|n| char::from(b'0' + g.bit(n))).collect::<String>();
    println!("{:>6} {}", "Z", bits(&z));
    println!("{:>6} {}", "Z/2", bits(&cyclic(2)));

    let a = Word::generator(1, 1);
    let marked = subgroup_marking(&z, &[a.clone(), a.pow(3)]);
    println!("d((Z; a, a^3), Z^2) = {}", distance(&marked, &free_abelian(2), 200));
    println!("d(F2, Z^2) = {}", distance(&free_group(2), &free_abelian(2), 200));
    println!("d(Z, F2) = {}", distance(&z, &free_group(2), 200));
}
