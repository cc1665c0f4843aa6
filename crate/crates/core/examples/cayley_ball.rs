//! Balls in labelled Cayley graphs and the Cayley distance.
//!
//! `cargo run --example cayley_ball > ball.dot` writes the radius-2 ball of
//! `S 3` as Graphviz on stdout; the summary goes to stderr.

use marked_groups::metric::{ball, cayley_distance};
use marked_groups::oracle::catalog::{cyclic, free_abelian, free_group, integers, symmetric};

fn main() {
    for (g, r) in [(free_group(2), 3), (free_abelian(2), 5), (cyclic(5), 2), (symmetric(3), 4)] {
        let b = ball(&g, r);
        eprintln!("ball({}, {r}): {} vertices, {} edges, closed: {}", g.name(), b.len(), b.edges.len(), b.closed);
    }
    eprintln!("cayley_distance(Z/10, Z, 8) = {}", cayley_distance(&cyclic(10), &integers(), 8));
    print!("{}", ball(&symmetric(3), 2).to_dot());
}
