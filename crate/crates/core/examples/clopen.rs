//! Basic clopen sets: membership, incoherence and inclusion.

use marked_groups::clopen::{atom_decomposition, incoherent_semidecide, inclusion_semidecide, member, BasicClopenSet};
use marked_groups::oracle::catalog::{baumslag_solitar, dihedral, free_group};

fn main() -> marked_groups::Result<()> {
    // a left inverse is a right inverse
    let omega = BasicClopenSet::parse(2, "{R: ab | S: ba}")?;
    let v = incoherent_semidecide(&omega, 10_000);
    println!("{omega} empty? {:?} after {} fuel", v.status, v.fuel_spent);

    let left = [BasicClopenSet::parse(2, "{S: (ab)^2}")?];
    let right = [BasicClopenSet::parse(2, "{R: b^2}")?];
    for atom in atom_decomposition(&left, &right)? {
        println!("atom {} covered by right side: {:?}", atom.set, atom.in_right);
    }
    println!("F2 lies in the uncovered atom: {}", member(&free_group(2), &BasicClopenSet::parse(2, "{S: (ab)^2, b^2}")?)?);
    println!("D4 in {}: {}", right[0], member(&dihedral(4), &right[0])?);

    let ab = [BasicClopenSet::parse(2, "{R: ab}")?];
    let ba = [BasicClopenSet::parse(2, "{R: ba}")?];
    println!("Omega_ab inside Omega_ba: {:?}", inclusion_semidecide(&ab, &ba, 10_000)?.status);

    // nonempty, so the search can only run out of fuel
    let bs = BasicClopenSet::parse(2, "{R: baBA^5 | S: aB}")?;
    println!("{bs}: {:?}, BS(1,5) a member: {}", incoherent_semidecide(&bs, 100_000).status, member(&baumslag_solitar(5), &bs)?);
    Ok(())
}
