//! Hand-written exact oracles for the standard examples.

use std::sync::Arc;

use num_bigint::{BigInt, Sign};
use num_traits::{One, Signed, Zero};

use super::{ElementModel, Key, MarkedGroup, ModelOracle};
use crate::error::{Error, Result};
use crate::words::{Letter, Word};

/// Catalog entries with their parameters.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CatalogSpec {
    /// `ℤ^k`.
    FreeAbelian(usize),
    /// `ℤ/n`, with `n = 1` the trivial group.
    Cyclic(u64),
    /// Product of cyclic factors; modulus 0 stands for `ℤ`.
    Abelian(Vec<u64>),
    Free(usize),
    BaumslagSolitar(i64),
    Dihedral(u64),
    Symmetric(usize),
    Alternating(usize),
    Heisenberg,
    Lamplighter,
}

pub fn catalog(spec: &CatalogSpec) -> Result<MarkedGroup> {
    use CatalogSpec::*;
    let bad = |msg: &str| Err(Error::Spec(msg.to_string()));
    Ok(match spec {
        FreeAbelian(k) => abelian(vec![0; *k]).renamed(if *k == 1 { "Z".to_string() } else { format!("Z^{k}") }),
        Cyclic(0) => return bad("Z/0 is not allowed; use Z"),
        Cyclic(n) => abelian(vec![*n]).renamed(format!("Z/{n}")),
        Abelian(moduli) => abelian(moduli.clone()),
        Free(k) => free_group(*k),
        BaumslagSolitar(0) => return bad("BS(1,0) is not a group"),
        BaumslagSolitar(m) => baumslag_solitar(*m),
        Dihedral(0) => return bad("D n needs n >= 1"),
        Dihedral(n) => dihedral(*n),
        Symmetric(0) => return bad("S n needs n >= 1"),
        Symmetric(n) => symmetric(*n),
        Alternating(n) if *n < 3 => return bad("A n needs n >= 3"),
        Alternating(n) => alternating(*n),
        Heisenberg => heisenberg(),
        Lamplighter => lamplighter(),
    })
}

pub fn integers() -> MarkedGroup {
    abelian(vec![0]).renamed("Z")
}

pub fn free_abelian(k: usize) -> MarkedGroup {
    catalog(&CatalogSpec::FreeAbelian(k)).unwrap()
}

pub fn cyclic(n: u64) -> MarkedGroup {
    catalog(&CatalogSpec::Cyclic(n)).unwrap()
}

pub fn trivial(rank: usize) -> MarkedGroup {
    abelian(vec![1; rank]).renamed(if rank == 1 { "Z/1".to_string() } else { format!("1^{rank}") })
}

struct AbelianModel {
    moduli: Vec<u64>,
}

impl ElementModel for AbelianModel {
    fn identity(&self) -> Key {
        vec![0; self.moduli.len()]
    }

    fn step(&self, x: &Key, l: Letter) -> Key {
        let mut y = x.clone();
        self.apply(&mut y, l);
        y
    }

    fn apply(&self, y: &mut Key, l: Letter) {
        let i = l.generator() - 1;
        let d = if l.is_inverse() { -1 } else { 1 };
        y[i] += d;
        let n = self.moduli[i] as i64;
        if n > 0 {
            y[i] = y[i].rem_euclid(n);
        }
    }

    fn eval(&self, w: &Word) -> Key {
        let mut y = self.identity();
        if let [c] = y.as_mut_slice() {
            *c = w.letters().iter().map(|l| l.signed().signum() as i64).sum();
        } else {
            for &l in w.letters() {
                y[l.generator() - 1] += if l.is_inverse() { -1 } else { 1 };
            }
        }
        for (c, &n) in y.iter_mut().zip(&self.moduli) {
            if n > 0 {
                *c = c.rem_euclid(n as i64);
            }
        }
        y
    }
}

pub fn abelian(moduli: Vec<u64>) -> MarkedGroup {
    let name = moduli
        .iter()
        .map(|&n| if n == 0 { "Z".to_string() } else { format!("Z/{n}") })
        .collect::<Vec<_>>()
        .join(" x ");
    let rank = moduli.len();
    MarkedGroup::new(name, Arc::new(ModelOracle { rank, model: AbelianModel { moduli } }))
}

struct FreeModel;

impl ElementModel for FreeModel {
    fn identity(&self) -> Key {
        Vec::new()
    }

    fn step(&self, x: &Key, l: Letter) -> Key {
        let mut y = x.clone();
        let v = l.signed() as i64;
        if y.last() == Some(&-v) {
            y.pop();
        } else {
            y.push(v);
        }
        y
    }
}

pub fn free_group(k: usize) -> MarkedGroup {
    MarkedGroup::new(format!("F {k}"), Arc::new(ModelOracle { rank: k, model: FreeModel }))
}

/// `r^k f^e` stored as `[k mod n, e mod 2]`; generators `r`, `f`.
struct DihedralModel {
    n: i64,
}

impl ElementModel for DihedralModel {
    fn identity(&self) -> Key {
        vec![0, 0]
    }

    fn step(&self, x: &Key, l: Letter) -> Key {
        let (k, e) = (x[0], x[1]);
        if l.generator() == 1 {
            let d = if l.is_inverse() { -1 } else { 1 };
            let d = if e == 0 { d } else { -d };
            vec![(k + d).rem_euclid(self.n), e]
        } else {
            vec![k, 1 - e]
        }
    }
}

pub fn dihedral(n: u64) -> MarkedGroup {
    MarkedGroup::new(format!("D {n}"), Arc::new(ModelOracle { rank: 2, model: DihedralModel { n: n as i64 } }))
}

/// Permutations of `0..n` as image arrays; a word acts by composing its
/// letters left to right.
struct PermModel {
    gens: Vec<Vec<i64>>,
    invs: Vec<Vec<i64>>,
}

impl PermModel {
    fn new(gens: Vec<Vec<i64>>) -> Self {
        let invs = gens
            .iter()
            .map(|p| {
                let mut q = vec![0; p.len()];
                for (i, &j) in p.iter().enumerate() {
                    q[j as usize] = i as i64;
                }
                q
            })
            .collect();
        PermModel { gens, invs }
    }
}

impl ElementModel for PermModel {
    fn identity(&self) -> Key {
        (0..self.gens[0].len() as i64).collect()
    }

    fn step(&self, x: &Key, l: Letter) -> Key {
        let g = if l.is_inverse() { &self.invs[l.generator() - 1] } else { &self.gens[l.generator() - 1] };
        x.iter().map(|&i| g[i as usize]).collect()
    }
}

/// Permutation of `0..n` given by one cycle (0-based points).
fn cycle(n: usize, points: &[usize]) -> Vec<i64> {
    let mut p: Vec<i64> = (0..n as i64).collect();
    for (i, &a) in points.iter().enumerate() {
        p[a] = points[(i + 1) % points.len()] as i64;
    }
    p
}

/// `S_n` marked by `(1 2)` and `(1 2 … n)`.
pub fn symmetric(n: usize) -> MarkedGroup {
    let t = if n >= 2 { cycle(n, &[0, 1]) } else { cycle(n, &[]) };
    let c = cycle(n, &(0..n).collect::<Vec<_>>());
    MarkedGroup::new(format!("S {n}"), Arc::new(ModelOracle { rank: 2, model: PermModel::new(vec![t, c]) }))
}

/// `A_n` marked by `(1 2 3)` and `(1 2 … n)` for odd `n`, `(2 3 … n)` for
/// even `n`.
pub fn alternating(n: usize) -> MarkedGroup {
    let t = cycle(n, &[0, 1, 2]);
    let c = if n % 2 == 1 { cycle(n, &(0..n).collect::<Vec<_>>()) } else { cycle(n, &(1..n).collect::<Vec<_>>()) };
    MarkedGroup::new(format!("A {n}"), Arc::new(ModelOracle { rank: 2, model: PermModel::new(vec![t, c]) }))
}

/// Upper unitriangular integer matrices `[[1,x,z],[0,1,y],[0,0,1]]`, keyed
/// by `[x, y, z]`.
struct HeisenbergModel;

impl ElementModel for HeisenbergModel {
    fn identity(&self) -> Key {
        vec![0, 0, 0]
    }

    fn step(&self, x: &Key, l: Letter) -> Key {
        let d = if l.is_inverse() { -1 } else { 1 };
        if l.generator() == 1 {
            vec![x[0] + d, x[1], x[2]]
        } else {
            vec![x[0], x[1] + d, x[2] + d * x[0]]
        }
    }
}

pub fn heisenberg() -> MarkedGroup {
    MarkedGroup::new("Heis", Arc::new(ModelOracle { rank: 2, model: HeisenbergModel }))
}

/// `ℤ/2 ≀ ℤ` marked by the lamp at the lighter's position and the shift,
/// keyed by `[position, lit lamps in increasing order…]`.
struct LamplighterModel;

impl ElementModel for LamplighterModel {
    fn identity(&self) -> Key {
        vec![0]
    }

    fn step(&self, x: &Key, l: Letter) -> Key {
        let mut y = x.clone();
        if l.generator() == 1 {
            let pos = y[0];
            match y[1..].binary_search(&pos) {
                Ok(i) => {
                    y.remove(i + 1);
                }
                Err(i) => y.insert(i + 1, pos),
            }
        } else {
            y[0] += if l.is_inverse() { -1 } else { 1 };
        }
        y
    }
}

pub fn lamplighter() -> MarkedGroup {
    MarkedGroup::new("Lamp", Arc::new(ModelOracle { rank: 2, model: LamplighterModel }))
}

/// `BS(1,m) = ⟨a, b | b a b⁻¹ = a^m⟩` as matrices `[[m^t, c],[0,1]]` with
/// `a = [[1,1],[0,1]]`, `b = [[m,0],[0,1]]`. The translation part `c` lies in
/// `ℤ[1/m]` and is stored as `num / m^den` in lowest terms.
struct BsModel {
    m: BigInt,
    unit: bool,
}

#[derive(Clone)]
struct Affine {
    t: i64,
    den: u32,
    num: BigInt,
}

impl BsModel {
    fn decode(&self, x: &Key) -> Affine {
        let sign = if x[2] < 0 { Sign::Minus } else { Sign::Plus };
        let digits: Vec<u32> = x[3..].iter().map(|&d| d as u32).collect();
        Affine { t: x[0], den: x[1] as u32, num: BigInt::from_slice(sign, &digits) }
    }

    fn encode(&self, a: &Affine) -> Key {
        let (sign, digits) = a.num.to_u32_digits();
        let mut key = vec![a.t, a.den as i64, if sign == Sign::Minus { -1 } else { 1 }];
        key.extend(digits.into_iter().map(i64::from));
        key
    }

    fn m_pow(&self, e: u32) -> BigInt {
        num_traits::pow(self.m.clone(), e as usize)
    }
}

impl ElementModel for BsModel {
    fn identity(&self) -> Key {
        self.encode(&Affine { t: 0, den: 0, num: BigInt::zero() })
    }

    fn step(&self, x: &Key, l: Letter) -> Key {
        let mut a = self.decode(x);
        if l.generator() == 2 {
            a.t += if l.is_inverse() { -1 } else { 1 };
            return self.encode(&a);
        }
        // c ± m^t
        let sign = if l.is_inverse() { -BigInt::one() } else { BigInt::one() };
        if self.unit {
            let mt = if self.m.is_negative() && a.t.rem_euclid(2) == 1 { -BigInt::one() } else { BigInt::one() };
            a.num += sign * mt;
            return self.encode(&a);
        }
        if a.t >= 0 {
            a.num += sign * self.m_pow(a.t as u32) * self.m_pow(a.den);
        } else {
            let need = (-a.t) as u32;
            if need > a.den {
                a.num *= self.m_pow(need - a.den);
                a.den = need;
            }
            a.num += sign * self.m_pow(a.den - need);
        }
        while a.den > 0 && (&a.num % &self.m).is_zero() {
            a.num /= &self.m;
            a.den -= 1;
        }
        if a.num.is_zero() {
            a.den = 0;
        }
        self.encode(&a)
    }
}

pub fn baumslag_solitar(m: i64) -> MarkedGroup {
    assert!(m != 0, "BS(1,0) is not a group");
    MarkedGroup::new(
        format!("BS(1,{m})"),
        Arc::new(ModelOracle { rank: 2, model: BsModel { m: BigInt::from(m), unit: m.abs() == 1 } }),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::{check_lawful, LawConfig};
    use crate::words::Word;

    fn rel(g: &MarkedGroup, s: &str) -> bool {
        g.is_relation(&Word::parse(g.rank(), s).unwrap())
    }

    #[test]
    fn catalog_examples() {
        assert!(rel(&cyclic(2), "a^2"));
        let bs = baumslag_solitar(5);
        assert!(rel(&bs, "bab^-1a^-5"));
        assert!(!rel(&bs, "aB"));
        assert!(rel(&heisenberg(), "[[a,b],a]"));
        assert!(rel(&heisenberg(), "[[a,b],b]"));
        assert!(!rel(&heisenberg(), "[a,b]"));
    }

    #[test]
    fn bit_examples() {
        assert_eq!(integers().bit(0), 1);
        assert_eq!(integers().bit(3), 0);
        assert_eq!(cyclic(2).bit(3), 1);
    }

    /// Brute-force order of a finite group by closing the set of keys.
    fn order(g: &MarkedGroup) -> usize {
        let m = g.elements().unwrap();
        let mut seen = std::collections::HashSet::new();
        let mut stack = vec![m.identity()];
        seen.insert(m.identity());
        while let Some(x) = stack.pop() {
            for l in crate::words::alphabet(g.rank()) {
                let y = m.step(&x, l);
                if seen.insert(y.clone()) {
                    stack.push(y);
                }
            }
        }
        seen.len()
    }

    #[test]
    fn finite_orders() {
        assert_eq!(order(&dihedral(4)), 8);
        assert_eq!(order(&dihedral(1)), 2);
        assert_eq!(order(&symmetric(3)), 6);
        assert_eq!(order(&symmetric(4)), 24);
        assert_eq!(order(&alternating(4)), 12);
        assert_eq!(order(&alternating(5)), 60);
        assert_eq!(order(&alternating(6)), 360);
        assert_eq!(order(&trivial(2)), 1);
    }

    #[test]
    fn dihedral_relations() {
        let d = dihedral(5);
        assert!(rel(&d, "a^5"));
        assert!(rel(&d, "b^2"));
        assert!(rel(&d, "(ab)^2"));
        assert!(!rel(&d, "ab"));
    }

    #[test]
    fn bs_relations() {
        for m in [-3i64, -1, 1, 2, 5] {
            let g = baumslag_solitar(m);
            let w = Word::parse(2, "bab^-1").unwrap().mul(&Word::parse(2, "a").unwrap().pow(-m));
            assert!(g.is_relation(&w), "m={m}");
            assert!(!rel(&g, "b"));
            assert!(!rel(&g, "a^7"));
        }
        // b^-1 a b = a^(1/2) in BS(1,2): its square is a
        let g = baumslag_solitar(2);
        assert!(rel(&g, "(Bab)^2A"));
        assert!(!rel(&g, "BabA"));
        assert!(rel(&g, "[BBabb, BBBabbb]"));
    }

    #[test]
    fn lamplighter_relations() {
        let l = lamplighter();
        assert!(rel(&l, "a^2"));
        assert!(rel(&l, "[a, Bab]"));
        assert!(!rel(&l, "b^3"));
        assert!(!rel(&l, "ab"));
    }

    #[test]
    fn catalog_is_lawful() {
        let cfg = LawConfig { pairs: 100, conjugators: 5, ..LawConfig::default() };
        for g in [integers(), free_abelian(3), cyclic(6), free_group(2), baumslag_solitar(2), dihedral(4),
                  symmetric(4), alternating(5), heisenberg(), lamplighter()] {
            check_lawful(&g, &cfg).unwrap();
        }
    }
}
