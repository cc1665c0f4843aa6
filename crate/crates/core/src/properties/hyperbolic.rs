//! Refuting δ-hyperbolicity with a fat geodesic triangle found in a ball.

use std::collections::HashSet;

use crate::error::{Error, Result};
use crate::oracle::explore::Explorer;
use crate::oracle::{Key, MarkedGroup};
use crate::verdict::{Verdict, Witness};
use crate::words::{alphabet, Word};

/// Geodesic words per element are capped to keep the search bounded.
const MAX_GEODESICS: usize = 4096;

/// Decides `|w| ≤ δ` for group elements, from the ball of radius δ.
struct Near {
    group: MarkedGroup,
    delta: usize,
    keys: Option<HashSet<Key>>,
    ball: Vec<Word>,
}

impl Near {
    fn new(e: &Explorer, delta: usize) -> Self {
        let group = e.group().clone();
        let count = if delta >= e.radius() { e.len() } else { e.layer(delta + 1).start };
        let ball: Vec<Word> = (0..count).map(|i| e.word(i)).collect();
        let keys = group.elements().map(|_| (0..count).map(|i| e.key(i).unwrap().clone()).collect());
        Near { group, delta, keys, ball }
    }

    fn within(&self, w: &Word) -> bool {
        if w.len() <= self.delta {
            return true;
        }
        match &self.keys {
            Some(keys) => keys.contains(&self.group.key(w).unwrap()),
            None => self.ball.iter().any(|b| self.group.equal(b, w)),
        }
    }
}

/// All geodesic words for element `h` of a completed exploration.
fn geodesics(e: &Explorer, h: usize) -> Vec<Word> {
    let d = e.depth(h);
    if d == 0 {
        return vec![Word::identity(e.group().rank())];
    }
    let mut out = Vec::new();
    for l in alphabet(e.group().rank()) {
        if let Some(p) = e.neighbour(h, l.inverse()) {
            if e.depth(p) + 1 == d {
                for w in geodesics(e, p) {
                    out.push(w.mul_letter(l));
                    if out.len() == MAX_GEODESICS {
                        return out;
                    }
                }
            }
        }
    }
    out
}

/// Vertices visited by the path `start·w`.
fn vertices(start: &Word, w: &Word) -> Vec<Word> {
    let mut out = vec![start.clone()];
    let mut cur = start.clone();
    for &l in w.letters() {
        cur = cur.mul_letter(l);
        out.push(cur.clone());
    }
    out
}

/// Searches a geodesic triangle `(1, y, z)` with `|y|, |z| ≤ radius/2` and a
/// point on the side from 1 to y at distance more than δ from the other two
/// sides. Vertices within half the radius keep every distance needed inside
/// the ball, so distances measured there are global.
pub fn not_delta_hyperbolic(g: &MarkedGroup, delta: u64, radius: usize) -> Result<Verdict> {
    if (radius as u64) < 2 * delta {
        return Err(Error::Spec(format!("radius {radius} is below twice delta {delta}")));
    }
    let mut e = Explorer::new(g);
    e.grow_to(radius);
    let near = Near::new(&e, delta as usize);
    let half = radius / 2;
    let points: Vec<usize> = (0..e.len()).filter(|&i| e.depth(i) <= half).collect();
    let one = Word::identity(g.rank());
    let mut work = 0u64;
    let far = |p: &Word, path: &[Word], work: &mut u64| {
        path.iter().all(|q| {
            *work += 1;
            !near.within(&p.inverse().mul(q))
        })
    };
    for &y in &points {
        let yw = e.word(y);
        let sides_xy = geodesics(&e, y);
        for &z in &points {
            if z == y {
                continue;
            }
            let zw = e.word(z);
            let sides_xz = geodesics(&e, z);
            let h = e.locate(&yw.inverse().mul(&zw));
            let sides_yz = geodesics(&e, h);
            let paths_xz: Vec<Vec<Word>> = sides_xz.iter().map(|s| vertices(&one, s)).collect();
            let paths_yz: Vec<Vec<Word>> = sides_yz.iter().map(|s| vertices(&yw, s)).collect();
            for side in &sides_xy {
                for (point, p) in vertices(&one, side).iter().enumerate() {
                    let Some(a) = paths_yz.iter().position(|path| far(p, path, &mut work)) else { continue };
                    let Some(b) = paths_xz.iter().position(|path| far(p, path, &mut work)) else { continue };
                    let witness = Witness::FatTriangle {
                        delta,
                        vertices: [one.clone(), yw.clone(), zw.clone()],
                        sides: [side.clone(), sides_yz[a].clone(), sides_xz[b].clone()],
                        point,
                    };
                    return Ok(Verdict::verified(witness, work));
                }
            }
        }
    }
    Ok(Verdict::unknown(work))
}
