//! The monoid `E(M)` of MV-endomorphisms with `(f ⊡ g)(a) = g(f(a))`.

use crate::error::Result;
use crate::mv::FiniteMvAlgebra;
use crate::par::Config;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EndoMonoid {
    maps: Vec<Vec<usize>>,
    identity: usize,
}

impl EndoMonoid {
    /// Endomorphisms in lexicographic order.
    pub fn maps(&self) -> &[Vec<usize>] {
        &self.maps
    }

    pub fn len(&self) -> usize {
        self.maps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.maps.is_empty()
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn index_of(&self, f: &[usize]) -> Option<usize> {
        self.maps.binary_search_by(|g| g.as_slice().cmp(f)).ok()
    }

    /// Index of `f ⊡ g`, first `f` then `g`.
    pub fn compose_box(&self, f: usize, g: usize) -> usize {
        let h: Vec<usize> = self.maps[f].iter().map(|&a| self.maps[g][a]).collect();
        self.index_of(&h).expect("endomorphisms are closed under composition")
    }
}

/// Extends a partial map by every value forced by `0`, `*` and `⊕`;
/// `false` on a conflict.
fn propagate(m: &FiniteMvAlgebra, map: &mut [Option<usize>], mut queue: Vec<usize>) -> bool {
    let n = m.size();
    let set = |map: &mut [Option<usize>], x: usize, v: usize, queue: &mut Vec<usize>| match map[x] {
        Some(w) => w == v,
        None => {
            map[x] = Some(v);
            queue.push(x);
            true
        }
    };
    while let Some(x) = queue.pop() {
        let fx = map[x].expect("queued values are assigned");
        if !set(map, m.neg(x), m.neg(fx), &mut queue) {
            return false;
        }
        for y in 0..n {
            if let Some(fy) = map[y] {
                if !set(map, m.oplus(x, y), m.oplus(fx, fy), &mut queue) {
                    return false;
                }
            }
        }
    }
    true
}

fn search(m: &FiniteMvAlgebra, map: Vec<Option<usize>>, out: &mut Vec<Vec<usize>>) {
    let Some(x) = map.iter().position(Option::is_none) else {
        out.push(map.into_iter().map(|v| v.expect("total")).collect());
        return;
    };
    for v in 0..m.size() {
        let mut next = map.clone();
        next[x] = Some(v);
        if propagate(m, &mut next, vec![x]) {
            search(m, next, out);
        }
    }
}

/// Every MV-endomorphism of `m`, by backtracking with propagation.
pub fn endo_monoid(m: &FiniteMvAlgebra, cfg: &Config) -> Result<EndoMonoid> {
    cfg.check_size("endomorphism search", m.size() as u128)?;
    let mut map = vec![None; m.size()];
    map[m.zero()] = Some(m.zero());
    let mut maps = Vec::new();
    if propagate(m, &mut map, vec![m.zero()]) {
        search(m, map, &mut maps);
    }
    maps.sort_unstable();
    let id: Vec<usize> = (0..m.size()).collect();
    let identity = maps
        .binary_search(&id)
        .map_err(|_| crate::Error::Invariant("identity is not an endomorphism".into()))?;
    Ok(EndoMonoid { maps, identity })
}
