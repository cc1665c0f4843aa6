//! Re-validation of property witnesses using nothing but oracle queries.

use crate::oracle::markings::check_generation;
use crate::oracle::MarkedGroup;
use crate::verdict::Witness;
use crate::words::{alphabet, Shortlex, Word};

fn pairwise_distinct(g: &MarkedGroup, elements: &[Word]) -> bool {
    elements.iter().enumerate().all(|(i, u)| elements[..i].iter().all(|v| !g.equal(u, v)))
}

/// No word shorter than `w` represents the same element.
fn is_geodesic(g: &MarkedGroup, w: &Word) -> bool {
    Shortlex::new(g.rank()).take_while(|v| v.len() < w.len()).all(|v| !g.equal(&v, w))
}

/// `|w| > δ` in the word metric.
fn longer_than(g: &MarkedGroup, w: &Word, delta: usize) -> bool {
    Shortlex::new(g.rank()).take_while(|v| v.len() <= delta).all(|v| !g.equal(&v, w))
}

fn path(start: &Word, w: &Word) -> Vec<Word> {
    let mut out = vec![start.clone()];
    for i in 1..=w.len() {
        out.push(start.mul(&Word::reduce_unchecked(w.letters()[..i].iter().copied(), w.rank())));
    }
    out
}

fn check_table(g: &MarkedGroup, elements: &[Word], table: &[Vec<usize>]) -> bool {
    let gens = g.generators();
    table.len() == elements.len()
        && table.iter().enumerate().all(|(i, row)| {
            row.len() == gens.len()
                && row.iter().zip(&gens).all(|(&j, s)| j < elements.len() && g.equal(&elements[i].mul(s), &elements[j]))
        })
}

/// Re-checks a presented-order witness for `G/⟨⟨normal⟩⟩`: every relator
/// used must be a relation of `G` or one of the normal generators.
fn check_quotient(g: &MarkedGroup, normal: &[Word], w: &Witness) -> bool {
    let Witness::PresentedOrder { order, elements, table, proofs } = w else { return false };
    let gens = g.generators();
    if elements.first().is_none_or(|e| !e.is_empty()) || *order != elements.len() as u64 {
        return false;
    }
    if table.len() != elements.len() || proofs.len() != elements.len() * gens.len() {
        return false;
    }
    let mut k = 0;
    for (i, row) in table.iter().enumerate() {
        if row.len() != gens.len() {
            return false;
        }
        for (l, &j) in row.iter().enumerate() {
            let Some(target) = elements.get(j) else { return false };
            let want = elements[i].mul(&gens[l]).inverse().mul(target);
            let proof = &proofs[k];
            k += 1;
            let relators: Vec<Word> = proof.factors.iter().map(|f| f.relator.clone()).collect();
            let allowed = relators.iter().all(|r| normal.contains(r) || g.is_relation(r));
            if proof.target != want || !allowed || !proof.check(&relators) {
                return false;
            }
        }
    }
    true
}

/// Whether a witness produced by one of the property searches is valid for
/// `G`. Witness kinds that are not property witnesses are rejected.
pub fn check_witness(g: &MarkedGroup, w: &Witness) -> bool {
    let rank = g.rank();
    match w {
        Witness::Word { word } => !g.is_relation(word),
        Witness::Distinct { elements } => pairwise_distinct(g, elements),
        Witness::Order { order, elements, table } => {
            elements.first().is_some_and(|e| g.is_relation(e))
                && *order == elements.len() as u64
                && pairwise_distinct(g, elements)
                && check_table(g, elements, table)
        }
        Witness::Generation { .. } => check_generation(g, w),
        Witness::Torsion { element, order } => {
            *order >= 2 && !g.is_relation(element) && g.is_relation(&element.pow(*order as i64))
        }
        Witness::Central { element } => {
            !g.is_relation(element) && g.generators().iter().all(|s| g.is_relation(&element.commutator(s)))
        }
        Witness::Perfect { products } => {
            products.len() == rank
                && products.iter().zip(g.generators()).all(|(p, s)| {
                    let value =
                        p.commutators.iter().fold(Word::identity(rank), |acc, (u, v)| acc.mul(&u.commutator(v)));
                    p.target == s && g.equal(&value, &s)
                })
        }
        Witness::VirtuallyCyclic { subgroup, normality, cyclic_generator, cyclic, quotient_order, quotient } => {
            let conjugates: Vec<Word> = subgroup
                .iter()
                .flat_map(|a| alphabet(rank).into_iter().map(move |l| a.conjugate_by(&Word::letter(rank, l))))
                .collect();
            let normal = normality.len() == conjugates.len()
                && normality.iter().zip(&conjugates).all(|(e, t)| {
                    e.target == *t
                        && e.over_tuple.rank() == subgroup.len()
                        && g.equal(&e.over_tuple.substitute(subgroup), t)
                });
            let is_cyclic = cyclic.len() == subgroup.len()
                && cyclic.iter().zip(subgroup).all(|(e, a)| {
                    e.target == *a
                        && e.over_tuple.rank() == 1
                        && g.equal(&e.over_tuple.substitute(std::slice::from_ref(cyclic_generator)), a)
                });
            let order_matches = matches!(**quotient, Witness::PresentedOrder { order, .. } if order == *quotient_order);
            !subgroup.is_empty() && normal && is_cyclic && order_matches && check_quotient(g, subgroup, quotient)
        }
        Witness::FiniteClass { element, class } => {
            !g.is_relation(element)
                && class.iter().any(|x| g.equal(x, element))
                && class.iter().all(|x| {
                    alphabet(rank).into_iter().all(|l| {
                        let y = x.conjugate_by(&Word::letter(rank, l).inverse());
                        class.iter().any(|c| g.equal(c, &y))
                    })
                })
        }
        Witness::NotOrderable { elements, products } => {
            let n = elements.len();
            let signings: std::collections::HashSet<&Vec<bool>> = products.iter().map(|p| &p.signs).collect();
            n > 0
                && elements.iter().all(|e| !g.is_relation(e))
                && signings.len() == 1 << n
                && products.iter().all(|p| {
                    p.signs.len() == n
                        && !p.product.is_empty()
                        && p.product.iter().all(|&i| i < n)
                        && g.is_relation(&p.product.iter().fold(Word::identity(rank), |acc, &i| {
                            acc.mul(&if p.signs[i] { elements[i].inverse() } else { elements[i].clone() })
                        }))
                })
        }
        Witness::FatTriangle { delta, vertices: [x, y, z], sides: [xy, yz, xz], point } => {
            let ends = g.equal(&x.mul(xy), y) && g.equal(&y.mul(yz), z) && g.equal(&x.mul(xz), z);
            if !ends || *point > xy.len() || ![xy, yz, xz].iter().all(|s| is_geodesic(g, s)) {
                return false;
            }
            let p = &path(x, xy)[*point];
            path(y, yz).iter().chain(&path(x, xz)).all(|q| longer_than(g, &p.inverse().mul(q), *delta as usize))
        }
        _ => false,
    }
}
