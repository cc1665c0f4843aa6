//! Direct products, free products and re-markings by tuples of words.

use std::sync::Arc;

use super::{ElementModel, Key, MarkedGroup, WordProblem};
use crate::words::{Letter, Word};

struct Direct {
    left: MarkedGroup,
    right: MarkedGroup,
    keyed: bool,
}

impl WordProblem for Direct {
    fn rank(&self) -> usize {
        self.left.rank() + self.right.rank()
    }

    fn is_relation(&self, w: &Word) -> bool {
        let k = self.left.rank();
        self.left.is_relation(&w.project(1, k)) && self.right.is_relation(&w.project(k + 1, self.rank()))
    }

    fn elements(&self) -> Option<&dyn ElementModel> {
        self.keyed.then_some(self as &dyn ElementModel)
    }
}

// keys are [len(left key), left key…, right key…]
impl ElementModel for Direct {
    fn identity(&self) -> Key {
        let l = self.left.elements().unwrap().identity();
        let r = self.right.elements().unwrap().identity();
        let mut key = vec![l.len() as i64];
        key.extend(l);
        key.extend(r);
        key
    }

    fn step(&self, x: &Key, l: Letter) -> Key {
        let split = 1 + x[0] as usize;
        let (lk, rk) = (&x[1..split], &x[split..]);
        let k = self.left.rank();
        let (lk, rk) = if l.generator() <= k {
            (self.left.elements().unwrap().step(&lk.to_vec(), l), rk.to_vec())
        } else {
            let shifted = Letter::new(l.generator() - k, l.is_inverse());
            (lk.to_vec(), self.right.elements().unwrap().step(&rk.to_vec(), shifted))
        };
        let mut key = vec![lk.len() as i64];
        key.extend(lk);
        key.extend(rk);
        key
    }
}

/// `G × H` marked by the generators of `G` followed by those of `H`.
pub fn direct(g: &MarkedGroup, h: &MarkedGroup) -> MarkedGroup {
    let keyed = g.elements().is_some() && h.elements().is_some();
    MarkedGroup::new(
        format!("direct({},{})", g.name(), h.name()),
        Arc::new(Direct { left: g.clone(), right: h.clone(), keyed }),
    )
}

struct Free {
    factors: [MarkedGroup; 2],
    keyed: bool,
}

impl Free {
    fn locate(&self, l: Letter) -> (usize, Letter) {
        let k = self.factors[0].rank();
        if l.generator() <= k {
            (0, l)
        } else {
            (1, Letter::new(l.generator() - k, l.is_inverse()))
        }
    }
}

impl WordProblem for Free {
    fn rank(&self) -> usize {
        self.factors[0].rank() + self.factors[1].rank()
    }

    /// Reduced syllable form: a stack of nontrivial syllables from
    /// alternating factors. A new letter extends the top syllable of its
    /// factor (popping it when it becomes trivial) or opens a new one.
    fn is_relation(&self, w: &Word) -> bool {
        let mut stack: Vec<(usize, Word)> = Vec::new();
        for &l in w.letters() {
            let (f, local) = self.locate(l);
            let factor = &self.factors[f];
            match stack.last_mut() {
                Some((top, syl)) if *top == f => {
                    *syl = syl.mul_letter(local);
                    if factor.is_relation(syl) {
                        stack.pop();
                    }
                }
                _ => {
                    let syl = Word::letter(factor.rank(), local);
                    if !factor.is_relation(&syl) {
                        stack.push((f, syl));
                    }
                }
            }
        }
        stack.is_empty()
    }

    fn elements(&self) -> Option<&dyn ElementModel> {
        self.keyed.then_some(self as &dyn ElementModel)
    }
}

// keys are concatenated syllables [factor, len, factor key…]
impl ElementModel for Free {
    fn identity(&self) -> Key {
        Vec::new()
    }

    fn step(&self, x: &Key, l: Letter) -> Key {
        let (f, local) = self.locate(l);
        let model = self.factors[f].elements().unwrap();
        let one = model.identity();
        // find the last syllable
        let mut pos = 0;
        let mut last = None;
        while pos < x.len() {
            last = Some(pos);
            pos += 2 + x[pos + 1] as usize;
        }
        let mut y = x.clone();
        match last {
            Some(p) if x[p] as usize == f => {
                let key = model.step(&x[p + 2..].to_vec(), local);
                y.truncate(p);
                if key != one {
                    y.push(f as i64);
                    y.push(key.len() as i64);
                    y.extend(key);
                }
            }
            _ => {
                let key = model.step(&one, local);
                if key != one {
                    y.push(f as i64);
                    y.push(key.len() as i64);
                    y.extend(key);
                }
            }
        }
        y
    }
}

/// `G * H` marked by the generators of `G` followed by those of `H`.
pub fn free(g: &MarkedGroup, h: &MarkedGroup) -> MarkedGroup {
    let keyed = g.elements().is_some() && h.elements().is_some();
    MarkedGroup::new(
        format!("free({},{})", g.name(), h.name()),
        Arc::new(Free { factors: [g.clone(), h.clone()], keyed }),
    )
}

struct Sub {
    group: MarkedGroup,
    tuple: Vec<Word>,
}

impl WordProblem for Sub {
    fn rank(&self) -> usize {
        self.tuple.len()
    }

    fn is_relation(&self, w: &Word) -> bool {
        self.group.is_relation(&w.substitute(&self.tuple))
    }

    fn elements(&self) -> Option<&dyn ElementModel> {
        self.group.elements().is_some().then_some(self as &dyn ElementModel)
    }
}

impl ElementModel for Sub {
    fn identity(&self) -> Key {
        self.group.elements().unwrap().identity()
    }

    fn step(&self, x: &Key, l: Letter) -> Key {
        let model = self.group.elements().unwrap();
        let img = &self.tuple[l.generator() - 1];
        let img = if l.is_inverse() { img.inverse() } else { img.clone() };
        img.letters().iter().fold(x.clone(), |acc, &m| model.step(&acc, m))
    }
}

/// The subgroup of `G` generated by `tuple`, marked by the tuple.
pub fn subgroup_marking(g: &MarkedGroup, tuple: &[Word]) -> MarkedGroup {
    for w in tuple {
        assert_eq!(w.rank(), g.rank(), "tuple word of the wrong rank");
    }
    let names: Vec<String> = tuple.iter().map(|w| w.to_string()).collect();
    MarkedGroup::new(
        format!("mark({}; {})", g.name(), names.join(", ")),
        Arc::new(Sub { group: g.clone(), tuple: tuple.to_vec() }),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::catalog::{cyclic, free_abelian, free_group, heisenberg, integers, symmetric, trivial};
    use crate::oracle::{check_lawful, LawConfig};
    use crate::words::{Shortlex, Word};
    use rand::{Rng, SeedableRng};

    fn w(rank: usize, s: &str) -> Word {
        Word::parse(rank, s).unwrap()
    }

    /// Independent ℤ^k oracle: every exponent sum vanishes.
    fn exponent_sums_vanish(word: &Word) -> bool {
        let mut sums = vec![0i64; word.rank()];
        for l in word.letters() {
            sums[l.generator() - 1] += if l.is_inverse() { -1 } else { 1 };
        }
        sums.iter().all(|&s| s == 0)
    }

    #[test]
    fn direct_matches_free_abelian() {
        let g = direct(&integers(), &integers());
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(1);
        for _ in 0..200 {
            let len = rng.gen_range(0..12);
            let raw: Vec<i32> = (0..len).map(|_| [1, 2, -1, -2][rng.gen_range(0..4)]).collect();
            let word = Word::from_signed(2, &raw).unwrap();
            assert_eq!(g.is_relation(&word), exponent_sums_vanish(&word));
            assert_eq!(g.is_relation(&word), free_abelian(2).is_relation(&word));
        }
    }

    #[test]
    fn free_product_examples() {
        let d = free(&cyclic(2), &cyclic(2));
        assert!(!d.is_relation(&w(2, "(ab)^3")));
        assert!(d.is_relation(&w(2, "aa")));
        assert!(d.is_relation(&w(2, "abba")));
        assert!(d.is_relation(&w(2, "(ab)^2(BA)^2")));
        let g = symmetric(3);
        let with_trivial = free(&g, &trivial(1));
        for word in Shortlex::new(2).take(500) {
            assert_eq!(with_trivial.is_relation(&word.embed(3, 0)), g.is_relation(&word));
        }
    }

    #[test]
    fn free_product_keys_agree_with_oracle() {
        let g = free(&cyclic(3), &heisenberg());
        let model = g.elements().unwrap();
        for word in Shortlex::new(3).take(3000) {
            assert_eq!(model.eval(&word) == model.identity(), g.is_relation(&word), "{word}");
        }
        let h = direct(&cyclic(3), &heisenberg());
        let model = h.elements().unwrap();
        for word in Shortlex::new(3).take(3000) {
            assert_eq!(model.eval(&word) == model.identity(), h.is_relation(&word), "{word}");
        }
    }

    #[test]
    fn subgroup_marking_examples() {
        let z = integers();
        let m = subgroup_marking(&z, &[w(1, "a"), w(1, "a^3")]);
        assert!(m.is_relation(&w(2, "a^3B")));
        let s = symmetric(3);
        let same = subgroup_marking(&s, &s.generators());
        for word in Shortlex::new(2).take(500) {
            assert_eq!(same.is_relation(&word), s.is_relation(&word));
        }
        let f = subgroup_marking(&free_group(2), &[w(2, "a^2"), w(2, "b^2")]);
        assert!(!f.is_relation(&w(2, "[a,b]")));
    }

    #[test]
    fn combinators_are_lawful() {
        let cfg = LawConfig { pairs: 100, conjugators: 5, ..LawConfig::default() };
        check_lawful(&free(&cyclic(2), &cyclic(3)), &cfg).unwrap();
        check_lawful(&direct(&heisenberg(), &integers()), &cfg).unwrap();
        check_lawful(&subgroup_marking(&integers(), &[w(1, "a"), w(1, "a^3")]), &cfg).unwrap();
    }
}
