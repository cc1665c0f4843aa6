//! The ultrametric on marked groups, Cayley balls and the Cayley distance.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::oracle::explore::Explorer;
use crate::oracle::MarkedGroup;
use crate::words::{Letter, Word};

/// Distances between marked groups take values in `{0} ∪ {2^-n} ∪ {2}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Dyadic {
    Zero,
    /// Groups of different ranks.
    Two,
    /// Exactly `2^-n`.
    PowerOf2(u32),
    /// Somewhere in `[0, 2^-n]`.
    AtMost(u32),
}

impl Dyadic {
    pub fn is_exact(self) -> bool {
        !matches!(self, Dyadic::AtMost(_))
    }

    /// Upper end of the value as a float (for display and comparisons).
    pub fn upper(self) -> f64 {
        match self {
            Dyadic::Zero => 0.0,
            Dyadic::Two => 2.0,
            Dyadic::PowerOf2(n) | Dyadic::AtMost(n) => 2f64.powi(-(n as i32)),
        }
    }
}

impl fmt::Display for Dyadic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Dyadic::Zero => write!(f, "0"),
            Dyadic::Two => write!(f, "2"),
            Dyadic::PowerOf2(n) | Dyadic::AtMost(n) => write!(f, "2^-{n}"),
        }
    }
}

/// Distance from binary expansions: the first disagreeing bit `n₀` gives
/// `2^-n₀`; agreement on bits `0..=precision` only bounds the distance by
/// `2^-(precision+1)`.
pub fn distance(g: &MarkedGroup, h: &MarkedGroup, precision: u64) -> Dyadic {
    if g.rank() != h.rank() {
        return Dyadic::Two;
    }
    for n in 0..=precision {
        if g.bit(n) != h.bit(n) {
            return Dyadic::PowerOf2(n as u32);
        }
    }
    Dyadic::AtMost(precision as u32 + 1)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Edge {
    pub from: usize,
    /// 1-based generator index.
    pub generator: usize,
    pub to: usize,
}

/// The ball of radius `r` in the labelled Cayley graph. Vertices are
/// shortlex normal forms in discovery order; edges are labelled by positive
/// generators.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CayleyBall {
    pub rank: usize,
    pub radius: usize,
    pub vertices: Vec<Word>,
    pub distances: Vec<usize>,
    pub edges: Vec<Edge>,
    /// The ball is stable under multiplication by every generator, so it is
    /// the whole group.
    pub closed: bool,
}

fn ball_edges(e: &Explorer, count: usize) -> Vec<Edge> {
    let rank = e.group().rank();
    let mut edges = Vec::new();
    for from in 0..count {
        for generator in 1..=rank {
            if let Some(to) = e.neighbour(from, Letter::pos(generator)) {
                if to < count {
                    edges.push(Edge { from, generator, to });
                }
            }
        }
    }
    edges
}

fn vertices_within(e: &Explorer, r: usize) -> usize {
    if r >= e.radius() {
        e.len()
    } else {
        e.layer(r + 1).start
    }
}

pub fn ball(g: &MarkedGroup, r: usize) -> CayleyBall {
    let mut e = Explorer::new(g);
    e.grow_to(r);
    let count = vertices_within(&e, r);
    let closed = e.is_closed()
        || (e.layer(r).all(|x| crate::words::alphabet(g.rank()).into_iter().all(|l| e.neighbour(x, l).is_some())));
    CayleyBall {
        rank: g.rank(),
        radius: r,
        vertices: (0..count).map(|i| e.word(i)).collect(),
        distances: (0..count).map(|i| e.depth(i)).collect(),
        edges: ball_edges(&e, count),
        closed,
    }
}

impl CayleyBall {
    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn to_dot(&self) -> String {
        let mut s = String::from("digraph ball {\n");
        for (i, v) in self.vertices.iter().enumerate() {
            s.push_str(&format!("  n{i} [label=\"{v}\"];\n"));
        }
        for e in &self.edges {
            s.push_str(&format!("  n{} -> n{} [label=\"s_{}\"];\n", e.from, e.to, e.generator));
        }
        s.push_str("}\n");
        s
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("balls always serialize")
    }
}

/// Compares canonically labelled balls of growing radius. If the balls of
/// radius `r₀ − 1` agree and those of radius `r₀` differ the distance is
/// `2^-(r₀−1)`; if all balls up to `max_r` agree it is at most `2^-max_r`.
pub fn cayley_distance(g: &MarkedGroup, h: &MarkedGroup, max_r: usize) -> Dyadic {
    if g.rank() != h.rank() {
        return Dyadic::Two;
    }
    let mut eg = Explorer::new(g);
    let mut eh = Explorer::new(h);
    eg.grow_to(max_r);
    eh.grow_to(max_r);
    let (cg, ch) = (vertices_within(&eg, max_r), vertices_within(&eh, max_r));
    let (edges_g, edges_h) = (ball_edges(&eg, cg), ball_edges(&eh, ch));
    for r in 1..=max_r {
        let (ng, nh) = (vertices_within(&eg, r), vertices_within(&eh, r));
        if ng != nh {
            return Dyadic::PowerOf2(r as u32 - 1);
        }
        let inside = |e: &&Edge| e.from < ng && e.to < ng;
        if !edges_g.iter().filter(inside).eq(edges_h.iter().filter(inside)) {
            return Dyadic::PowerOf2(r as u32 - 1);
        }
    }
    Dyadic::AtMost(max_r as u32)
}
