//! Word problems rebuilt from a recursive presentation plus a finite or
//! recursively enumerable discriminating family.

use marked_groups::clopen::{kuznetsov_wp, RecPresentation};
use marked_groups::oracle::catalog::{cyclic, integers, symmetric};
use marked_groups::{MarkedGroup, Word};

fn agree(g: &MarkedGroup, h: &MarkedGroup, bits: u64) -> bool {
    (0..bits).all(|n| g.bit(n) == h.bit(n))
}

fn main() {
    let w = |rank, s| Word::parse(rank, s).unwrap();

    let z2 = kuznetsov_wp(&RecPresentation::finite(1, vec![w(1, "a^2")]), &RecPresentation::finite(1, vec![w(1, "a")]));
    println!("<a | a^2> with {{a}}: matches Z/2 on 100 bits: {}", agree(&z2, &cyclic(2), 100));

    let powers = RecPresentation::new(1, || Box::new((1..).map(|n| Word::generator(1, 1).pow(n))));
    let z = kuznetsov_wp(&RecPresentation::finite(1, vec![]), &powers);
    println!("<a | > with {{a^n}}: matches Z on 100 bits: {}", agree(&z, &integers(), 100));

    // S3 is finitely discriminated by one transposition-product
    let s3 = kuznetsov_wp(
        &RecPresentation::finite(2, vec![w(2, "a^2"), w(2, "b^3"), w(2, "(ab)^2")]),
        &RecPresentation::finite(2, vec![w(2, "[a,b]")]),
    );
    let s3_ref = symmetric(3);
    println!("<a,b | a^2, b^3, (ab)^2> with {{[a,b]}}: matches {} on 200 bits: {}", s3_ref.name(), agree(&s3, &s3_ref, 200));
}
