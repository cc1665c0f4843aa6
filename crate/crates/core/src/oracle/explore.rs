//! Breadth-first enumeration of group elements by shortlex normal form.
//!
//! Layer `d` holds the elements at word-metric distance `d` from the
//! identity, each represented by its shortlex-least word. Layers are built
//! by extending the previous layer's normal forms letter by letter in
//! alphabet order, so discovery order is shortlex order of normal forms.

use std::collections::HashMap;

use super::{Key, MarkedGroup};
use crate::words::{alphabet, Letter, Word};

pub struct Explorer {
    group: MarkedGroup,
    parent: Vec<Option<(usize, Letter)>>,
    keys: Vec<Key>,
    index: HashMap<Key, usize>,
    /// `layers[d]` is the first index of layer `d`; the last entry is the
    /// current length.
    layers: Vec<usize>,
    closed: bool,
}

impl Explorer {
    pub fn new(group: &MarkedGroup) -> Self {
        let mut e = Explorer {
            group: group.clone(),
            parent: vec![None],
            keys: Vec::new(),
            index: HashMap::new(),
            layers: vec![0, 1],
            closed: false,
        };
        if let Some(m) = group.elements() {
            let id = m.identity();
            e.index.insert(id.clone(), 0);
            e.keys.push(id);
        }
        e
    }

    pub fn group(&self) -> &MarkedGroup {
        &self.group
    }

    /// Number of elements found so far.
    pub fn len(&self) -> usize {
        self.parent.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Radius of the completed part: every element at distance ≤ radius has
    /// been found.
    pub fn radius(&self) -> usize {
        self.layers.len() - 2
    }

    /// True once a layer came out empty: the whole group has been listed.
    pub fn is_closed(&self) -> bool {
        self.closed
    }

    pub fn depth(&self, i: usize) -> usize {
        self.layers.partition_point(|&s| s <= i) - 1
    }

    pub fn layer(&self, d: usize) -> std::ops::Range<usize> {
        if d + 1 >= self.layers.len() {
            return self.len()..self.len();
        }
        self.layers[d]..self.layers[d + 1]
    }

    pub fn word(&self, i: usize) -> Word {
        let mut letters = Vec::new();
        let mut cur = i;
        while let Some((p, l)) = self.parent[cur] {
            letters.push(l);
            cur = p;
        }
        letters.reverse();
        Word::reduce_unchecked(letters, self.group.rank())
    }

    pub fn key(&self, i: usize) -> Option<&Key> {
        self.keys.get(i)
    }

    fn keyed(&self) -> bool {
        !self.keys.is_empty()
    }

    /// Finds an already listed element equal to `w`, scanning only layers in
    /// `depths` when no keys are available.
    fn find_among(&self, w: &Word, key: Option<&Key>, depths: std::ops::RangeInclusive<usize>) -> Option<usize> {
        if let Some(k) = key {
            return self.index.get(k).copied();
        }
        for d in depths {
            for i in self.layer(d) {
                if self.group.equal(&self.word(i), w) {
                    return Some(i);
                }
            }
        }
        None
    }

    /// Builds the next layer. Returns false when it is empty (closure).
    pub fn grow(&mut self) -> bool {
        if self.closed {
            return false;
        }
        let d = self.radius();
        let rank = self.group.rank();
        let letters = alphabet(rank);
        let model = self.group.elements();
        let start = self.len();
        for x in self.layer(d) {
            let last = self.parent[x].map(|(_, l)| l);
            let xw = if model.is_none() { Some(self.word(x)) } else { None };
            for &l in &letters {
                if last == Some(l.inverse()) {
                    continue;
                }
                let key = model.map(|m| m.step(&self.keys[x], l));
                let found = match &key {
                    Some(k) => self.index.get(k).copied(),
                    None => {
                        let cand = xw.as_ref().unwrap().mul_letter(l);
                        self.find_among(&cand, None, d.saturating_sub(1)..=d).or_else(|| {
                            (start..self.len()).find(|&i| self.group.equal(&self.word(i), &cand))
                        })
                    }
                };
                if found.is_none() {
                    let i = self.len();
                    self.parent.push(Some((x, l)));
                    if let Some(k) = key {
                        self.index.insert(k.clone(), i);
                        self.keys.push(k);
                    }
                }
            }
        }
        let end = self.len();
        if end == start {
            self.closed = true;
            return false;
        }
        self.layers.push(end);
        true
    }

    /// Grows until the ball of the given radius is complete or the group
    /// closes.
    pub fn grow_to(&mut self, radius: usize) {
        while self.radius() < radius && self.grow() {}
    }

    /// Grows until more than `n` elements are known or the group closes.
    pub fn grow_past(&mut self, n: usize) {
        while self.len() <= n && self.grow() {}
    }

    /// Index of the normal form equal to `w`, growing as needed.
    pub fn locate(&mut self, w: &Word) -> usize {
        self.grow_to(w.len());
        let key = self.group.key(w);
        let top = self.radius().min(w.len());
        self.find_among(w, key.as_ref(), 0..=top).expect("every word has a normal form within its length")
    }

    /// Index of `x·l` if it lies in the completed part.
    pub fn neighbour(&self, x: usize, l: Letter) -> Option<usize> {
        if self.keyed() {
            let m = self.group.elements().unwrap();
            return self.index.get(&m.step(&self.keys[x], l)).copied();
        }
        let d = self.depth(x);
        let cand = self.word(x).mul_letter(l);
        let hi = (d + 1).min(self.radius());
        self.find_among(&cand, None, d.saturating_sub(1)..=hi)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::catalog::{cyclic, free_abelian, free_group, symmetric};

    /// Hides element keys so the oracle-only path is exercised.
    fn keyless(g: &MarkedGroup) -> MarkedGroup {
        let h = g.clone();
        MarkedGroup::from_fn(g.name(), g.rank(), move |w| h.is_relation(w))
    }

    #[test]
    fn sphere_sizes() {
        for g in [free_group(2), keyless(&free_group(2))] {
            let mut e = Explorer::new(&g);
            e.grow_to(3);
            assert_eq!(e.len(), 53);
        }
        for g in [free_abelian(2), keyless(&free_abelian(2))] {
            let mut e = Explorer::new(&g);
            e.grow_to(5);
            assert_eq!(e.len(), 61);
        }
    }

    #[test]
    fn closure_and_normal_forms() {
        for g in [symmetric(3), keyless(&symmetric(3))] {
            let mut e = Explorer::new(&g);
            e.grow_to(100);
            assert!(e.is_closed());
            assert_eq!(e.len(), 6);
            let words: Vec<Word> = (0..6).map(|i| e.word(i)).collect();
            for pair in words.windows(2) {
                assert_eq!(pair[0].shortlex_cmp(&pair[1]), std::cmp::Ordering::Less);
            }
        }
        let mut e = Explorer::new(&cyclic(3));
        let w = Word::parse(1, "a^2").unwrap();
        assert_eq!(e.locate(&w), 2);
    }
}
