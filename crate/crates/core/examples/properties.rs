//! Group properties: the decidable ones answered exactly, the rest searched
//! with a fuel budget. Every certificate is re-checked against the oracle.

use marked_groups::oracle::catalog::{alternating, cyclic, free_abelian, free_group, heisenberg, lamplighter, symmetric};
use marked_groups::oracle::free;
use marked_groups::properties::{check_witness, evaluate, not_delta_hyperbolic, Property};
use marked_groups::{MarkedGroup, Verdict};

fn show(g: &MarkedGroup, what: &str, v: &Verdict) {
    let ok = v.witness.as_ref().is_none_or(|w| check_witness(g, w));
    println!("{:<16} {:<24} {:?} (fuel {}, certificate ok: {ok})", g.name(), what, v.status, v.fuel_spent);
}

fn main() -> marked_groups::Result<()> {
    let fuel = 1_000_000;
    let cases = [
        (heisenberg(), Property::Abelian),
        (heisenberg(), Property::NilpotentClass(2)),
        (symmetric(4), Property::CardAtMost(24)),
        (lamplighter(), Property::Torsion),
        (heisenberg(), Property::Center),
        (alternating(5), Property::Perfect),
        (free(&cyclic(2), &cyclic(2)), Property::VirtuallyCyclic),
        (heisenberg(), Property::NotIcc),
        (symmetric(3), Property::NotOrderable),
    ];
    for (g, p) in &cases {
        show(g, &format!("{p:?}"), &evaluate(g, p, fuel)?);
    }
    // negatives: the searches just run out of fuel
    for p in [Property::Torsion, Property::Center, Property::NotIcc] {
        show(&free_group(2), &format!("{p:?}"), &evaluate(&free_group(2), &p, 20_000)?);
    }
    for g in [free_abelian(2), free_group(2)] {
        show(&g, "not 1-hyperbolic (r=8)", &not_delta_hyperbolic(&g, 1, 8)?);
    }
    Ok(())
}
