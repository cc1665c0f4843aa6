//! Miller's gadget: from a presentation and a word `w`, a finitely
//! presented group in which `w = 1` forces every generator to die, with an
//! amalgam-based word problem when the base has one.

use marked_groups::miller::{l3_wp, step3_presentation, trivializes, Presentation};
use marked_groups::oracle::catalog::integers;
use marked_groups::Witness;

fn main() -> marked_groups::Result<()> {
    let base = Presentation::parse("<x>")?;
    let w = base.parse_word("x")?;
    let out = step3_presentation(&base, &w)?;
    println!("L3 = {}", out.l3);
    println!("Pi = {}", out.pi);

    let g = l3_wp(&integers(), &w)?;
    for q in ["x", "b", "a^-1 b a", "[a, c]", "a^-1 b a (c^-1 b^-1 c b c)^-1"] {
        println!("{q:<32} trivial in L3: {}", g.is_relation(&out.l3.parse_word(q)?));
    }

    let v = trivializes(&out, &out.l3.parse_word("x")?, 1_000_000)?;
    if let Some(Witness::Cascade { steps }) = &v.witness {
        for d in steps {
            println!("killed {} with {} conjugate factors", out.l3.format_word(&d.target), d.factors.len());
        }
    }
    println!("{:?} after {} fuel", v.status, v.fuel_spent);
    Ok(())
}
