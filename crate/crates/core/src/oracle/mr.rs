//! Malcev–Rabin models: groups given by multiplication and inversion
//! tables on `ℕ` or on `{0, …, card−1}`, with 0 as the identity.

use std::sync::{Arc, Mutex};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::explore::Explorer;
use super::{ElementModel, Key, MarkedGroup, WordProblem};
use crate::error::{Error, Result};
use crate::words::{Letter, Word};

pub trait MrOps: Send + Sync {
    /// Whether `n` belongs to the domain.
    fn contains(&self, n: u64) -> bool;
    fn mult(&self, x: u64, y: u64) -> u64;
    fn inv(&self, x: u64) -> u64;
}

#[derive(Clone)]
pub struct MrModel {
    ops: Arc<dyn MrOps>,
    generators: Vec<u64>,
    /// Known cardinality for explicitly finite models.
    card: Option<u64>,
}

impl std::fmt::Debug for MrModel {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "MrModel(card {:?}, generators {:?})", self.card, self.generators)
    }
}

struct Tables<M, I> {
    card: Option<u64>,
    mult: M,
    inv: I,
}

impl<M, I> MrOps for Tables<M, I>
where
    M: Fn(u64, u64) -> u64 + Send + Sync,
    I: Fn(u64) -> u64 + Send + Sync,
{
    fn contains(&self, n: u64) -> bool {
        self.card.is_none_or(|c| n < c)
    }

    fn mult(&self, x: u64, y: u64) -> u64 {
        (self.mult)(x, y)
    }

    fn inv(&self, x: u64) -> u64 {
        (self.inv)(x)
    }
}

impl MrModel {
    /// A model on `{0, …, card−1}`.
    pub fn finite(
        card: u64,
        generators: Vec<u64>,
        mult: impl Fn(u64, u64) -> u64 + Send + Sync + 'static,
        inv: impl Fn(u64) -> u64 + Send + Sync + 'static,
    ) -> Self {
        MrModel { ops: Arc::new(Tables { card: Some(card), mult, inv }), generators, card: Some(card) }
    }

    /// A model on all of `ℕ`.
    pub fn infinite(
        generators: Vec<u64>,
        mult: impl Fn(u64, u64) -> u64 + Send + Sync + 'static,
        inv: impl Fn(u64) -> u64 + Send + Sync + 'static,
    ) -> Self {
        MrModel { ops: Arc::new(Tables { card: None, mult, inv }), generators, card: None }
    }

    pub fn contains(&self, n: u64) -> bool {
        self.ops.contains(n)
    }

    pub fn mult(&self, x: u64, y: u64) -> u64 {
        self.ops.mult(x, y)
    }

    pub fn inv(&self, x: u64) -> u64 {
        self.ops.inv(x)
    }

    pub fn generators(&self) -> &[u64] {
        &self.generators
    }

    /// Cardinality when the model declares a finite domain.
    pub fn declared_card(&self) -> Option<u64> {
        self.card
    }

    /// Number of domain elements, found by probing `contains` up to `limit`.
    pub fn card_up_to(&self, limit: u64) -> Option<u64> {
        (0..=limit).find(|&n| !self.contains(n))
    }

    pub fn eval(&self, w: &Word) -> u64 {
        w.letters().iter().fold(0, |acc, &l| self.mult(acc, self.letter(l)))
    }

    fn letter(&self, l: Letter) -> u64 {
        let g = self.generators[l.generator() - 1];
        if l.is_inverse() {
            self.inv(g)
        } else {
            g
        }
    }
}

/// Normal forms of a marked group, numbered in shortlex order.
struct NormalForms {
    explorer: Mutex<Explorer>,
}

impl MrOps for NormalForms {
    /// Extends the enumeration until `n` is listed or the group closes.
    fn contains(&self, n: u64) -> bool {
        let mut e = self.explorer.lock().unwrap();
        e.grow_past(n as usize);
        (n as usize) < e.len()
    }

    fn mult(&self, x: u64, y: u64) -> u64 {
        let mut e = self.explorer.lock().unwrap();
        e.grow_past(x.max(y) as usize);
        let w = e.word(x as usize).mul(&e.word(y as usize));
        e.locate(&w) as u64
    }

    fn inv(&self, x: u64) -> u64 {
        let mut e = self.explorer.lock().unwrap();
        e.grow_past(x as usize);
        let w = e.word(x as usize).inverse();
        e.locate(&w) as u64
    }
}

/// The model whose element `n` is the `n`-th shortlex normal form of `G`
/// (shortlex words with oracle-equal duplicates deleted). Tables are built
/// lazily; the domain is finite exactly when `G` is.
pub fn to_mr_model(g: &MarkedGroup) -> MrModel {
    let forms = NormalForms { explorer: Mutex::new(Explorer::new(g)) };
    let generators = {
        let mut e = forms.explorer.lock().unwrap();
        g.generators().iter().map(|s| e.locate(s) as u64).collect()
    };
    MrModel { ops: Arc::new(forms), generators, card: None }
}

struct ModelGroup {
    model: MrModel,
}

impl WordProblem for ModelGroup {
    fn rank(&self) -> usize {
        self.model.generators.len()
    }

    fn is_relation(&self, w: &Word) -> bool {
        self.model.eval(w) == 0
    }

    fn elements(&self) -> Option<&dyn ElementModel> {
        Some(self)
    }
}

impl ElementModel for ModelGroup {
    fn identity(&self) -> Key {
        vec![0]
    }

    fn step(&self, x: &Key, l: Letter) -> Key {
        vec![self.model.mult(x[0] as u64, self.model.letter(l)) as i64]
    }
}

/// Samples used to validate a model before turning it into an oracle.
const EXHAUSTIVE_LIMIT: u64 = 24;
const SAMPLES: usize = 2000;

/// The marked group presented by a model. The group axioms are checked
/// exhaustively on small finite domains and by seeded sampling otherwise.
pub fn from_mr_model(model: &MrModel) -> Result<MarkedGroup> {
    let bad = |msg: String| Err(Error::Model(msg));
    for &g in &model.generators {
        if !model.contains(g) {
            return bad(format!("generator image {g} outside the domain"));
        }
    }
    if !model.contains(0) {
        return bad("domain is empty".into());
    }
    let small = model.card_up_to(EXHAUSTIVE_LIMIT);
    let points: Vec<u64> = match small {
        Some(c) => (0..c).collect(),
        None => {
            let mut rng = ChaCha8Rng::seed_from_u64(7);
            let mut pts: Vec<u64> = (0..EXHAUSTIVE_LIMIT).collect();
            pts.extend(model.generators.iter().copied());
            // products of generators reach elements far from 0
            for _ in 0..64 {
                let mut x = 0;
                for _ in 0..rng.gen_range(1..8) {
                    let g = model.generators.get(rng.gen_range(0..model.generators.len().max(1))).copied().unwrap_or(0);
                    x = model.mult(x, g);
                }
                pts.push(x);
            }
            pts
        }
    };
    for &x in &points {
        if model.mult(0, x) != x || model.mult(x, 0) != x {
            return bad(format!("0 is not a two-sided identity at {x}"));
        }
        let i = model.inv(x);
        if !model.contains(i) || model.mult(x, i) != 0 || model.mult(i, x) != 0 {
            return bad(format!("inverse of {x} fails"));
        }
    }
    let check = |x: u64, y: u64, z: u64| {
        let xy = model.mult(x, y);
        if !model.contains(xy) {
            return Err(Error::Model(format!("product {x}*{y} leaves the domain")));
        }
        if model.mult(xy, z) != model.mult(x, model.mult(y, z)) {
            return Err(Error::Model(format!("associativity fails at ({x},{y},{z})")));
        }
        Ok(())
    };
    if small.is_some() {
        for &x in &points {
            for &y in &points {
                for &z in &points {
                    check(x, y, z)?;
                }
            }
        }
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..SAMPLES {
            let pick = |r: &mut ChaCha8Rng| points[r.gen_range(0..points.len())];
            let (x, y, z) = (pick(&mut rng), pick(&mut rng), pick(&mut rng));
            check(x, y, z)?;
        }
    }
    Ok(MarkedGroup::new("mr-model", Arc::new(ModelGroup { model: model.clone() })))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::catalog::{alternating, cyclic, dihedral, integers, symmetric, trivial};

    #[test]
    fn cyclic_three() {
        let m = to_mr_model(&cyclic(3));
        assert!(m.contains(2));
        assert!(!m.contains(3));
        assert_eq!(m.card_up_to(10), Some(3));
        assert_eq!(m.mult(1, 2), 0);
    }

    #[test]
    fn integers_model() {
        let m = to_mr_model(&integers());
        assert_eq!(m.inv(1), 2);
        assert!(m.contains(1000));
        assert_eq!(m.mult(1, 1), 3);
    }

    #[test]
    fn round_trip_finite() {
        for g in [cyclic(5), dihedral(4), symmetric(3), alternating(4), trivial(1)] {
            let h = from_mr_model(&to_mr_model(&g)).unwrap();
            for n in 0..64 {
                assert_eq!(g.bit(n), h.bit(n), "{} bit {n}", g.name());
            }
        }
    }

    #[test]
    fn round_trip_infinite() {
        let g = integers();
        let h = from_mr_model(&to_mr_model(&g)).unwrap();
        for n in 0..64 {
            assert_eq!(g.bit(n), h.bit(n));
        }
    }

    #[test]
    fn explicit_models() {
        let z5 = MrModel::finite(5, vec![1], |x, y| (x + y) % 5, |x| (5 - x) % 5);
        let g = from_mr_model(&z5).unwrap();
        for n in 0..64 {
            assert_eq!(g.bit(n), cyclic(5).bit(n));
        }
        let broken = MrModel::finite(5, vec![1], |x, y| (x + 2 * y) % 5, |x| (5 - x) % 5);
        assert!(matches!(from_mr_model(&broken), Err(Error::Model(_))));
        // ℕ with zig-zag numbering of ℤ
        let to_z = |n: u64| if n % 2 == 1 { n.div_ceil(2) as i64 } else { -((n / 2) as i64) };
        let from_z = |z: i64| if z > 0 { 2 * z as u64 - 1 } else { 2 * z.unsigned_abs() };
        let zz = MrModel::infinite(vec![1], move |x, y| from_z(to_z(x) + to_z(y)), move |x| from_z(-to_z(x)));
        let g = from_mr_model(&zz).unwrap();
        for n in 0..64 {
            assert_eq!(g.bit(n), integers().bit(n));
        }
    }
}
