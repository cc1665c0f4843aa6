//! Virtually cyclic groups: a finitely generated normal subgroup that is
//! cyclic, with finite quotient.

use crate::clopen::{finite_from_recpres_semidecide, quotient_recpres};
use super::rank_of_subgroup_at_most;
use crate::oracle::{express, MarkedGroup};
use crate::verdict::{Expression, Fuel, Verdict, Witness};
use crate::words::{alphabet, Word};

/// Fuel of a candidate's first attempt; attempt `m` gets `BASE·2^m`.
const BASE: u64 = 64;

/// The finite word set with code `n ≥ 1`: bit `b` selects the word with
/// shortlex index `b+1`.
fn word_set(rank: usize, n: u64) -> Vec<Word> {
    (0..64).filter(|b| n & (1u64 << b) != 0).map(|b| Word::from_shortlex(rank, b as u64 + 1)).collect()
}

/// One attempt at certifying that `⟨A⟩` is a normal cyclic subgroup with
/// finite quotient, every sub-search limited to `budget`.
fn attempt(g: &MarkedGroup, subgroup: &[Word], budget: u64, fuel: &mut Fuel) -> Option<Witness> {
    let rank = g.rank();
    let mut run = |f: &mut dyn FnMut(&mut Fuel) -> bool| {
        let mut local = Fuel::new(budget.min(fuel.remaining()));
        let ok = f(&mut local);
        fuel.take(local.spent());
        ok
    };
    let targets: Vec<Word> = subgroup
        .iter()
        .flat_map(|a| alphabet(rank).into_iter().map(move |l| a.conjugate_by(&Word::letter(rank, l))))
        .collect();
    let mut normality = Vec::new();
    if !run(&mut |f| express(g, subgroup, &targets, f).map(|e| normality = e).is_some()) {
        return None;
    }
    // a single word whose powers give every element of A
    let mut cyclic: Option<(Word, Vec<Expression>)> = None;
    let found = run(&mut |f| {
        let v = rank_of_subgroup_at_most(g, subgroup, 1, f.remaining());
        f.take(v.fuel_spent);
        if let Some(Witness::Generation { tuple, expressions }) = v.into_verified() {
            let c = tuple[0].substitute(subgroup);
            let exprs = expressions
                .into_iter()
                .zip(subgroup)
                .map(|(e, a)| Expression { target: a.clone(), over_tuple: e.over_tuple })
                .collect();
            cyclic = Some((c, exprs));
        }
        cyclic.is_some()
    });
    if !found {
        return None;
    }
    let (cyclic_generator, cyclic) = cyclic.unwrap();
    let mut quotient = None;
    let found = run(&mut |f| {
        let v = finite_from_recpres_semidecide(&quotient_recpres(g, subgroup), f.remaining());
        f.take(v.fuel_spent);
        quotient = v.into_verified();
        quotient.is_some()
    });
    if !found {
        return None;
    }
    let quotient = quotient.unwrap();
    let Witness::PresentedOrder { order, .. } = quotient else { unreachable!() };
    Some(Witness::VirtuallyCyclic {
        subgroup: subgroup.to_vec(),
        normality,
        cyclic_generator,
        cyclic,
        quotient_order: order,
        quotient: Box::new(quotient),
    })
}

/// Searches a finite set `A` of words such that `⟨A⟩` is normal, cyclic and
/// of finite index. Stage `t` revisits every set code `n ≤ t` whose age
/// `t−n+1` is a power of two, with fuel proportional to the age, so each
/// candidate's budget doubles while the total stays quadratic in `t`.
pub fn virtually_cyclic_semidecide(g: &MarkedGroup, fuel: u64) -> Verdict {
    let mut fuel = Fuel::new(fuel);
    for t in 1u64.. {
        for n in 1..=t {
            let age = t - n + 1;
            if !age.is_power_of_two() {
                continue;
            }
            let subgroup = word_set(g.rank(), n);
            if let Some(w) = attempt(g, &subgroup, BASE * age, &mut fuel) {
                return Verdict::verified(w, fuel.spent());
            }
            if fuel.exhausted() {
                return fuel.unknown();
            }
        }
    }
    unreachable!()
}
