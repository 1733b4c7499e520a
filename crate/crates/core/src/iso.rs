//! Isomorphism search between small finite structures given by tables.
//!
//! Candidates for each element are restricted to elements of the other
//! structure with the same invariant label; partial maps are pruned as soon
//! as a fully-mapped operation instance disagrees.

/// A finite structure: binary tables (flat, row-major), unary tables,
/// distinguished constants, and one invariant label per element.
#[derive(Clone, Debug)]
pub struct Structure {
    pub size: usize,
    pub binary: Vec<Vec<usize>>,
    pub unary: Vec<Vec<usize>>,
    pub constants: Vec<usize>,
    pub labels: Vec<u64>,
}

impl Structure {
    fn bin(&self, op: usize, x: usize, y: usize) -> usize {
        self.binary[op][x * self.size + y]
    }
}

struct Search<'a> {
    a: &'a Structure,
    b: &'a Structure,
    map: Vec<Option<usize>>,
    used: Vec<bool>,
    nodes: u64,
    max_nodes: u64,
}

impl Search<'_> {
    fn consistent(&self) -> bool {
        let n = self.a.size;
        let m = |x: usize| self.map[x];
        for (op, table) in self.a.unary.iter().enumerate() {
            for x in 0..n {
                if let (Some(fx), Some(fy)) = (m(x), m(table[x])) {
                    if self.b.unary[op][fx] != fy {
                        return false;
                    }
                }
            }
        }
        for op in 0..self.a.binary.len() {
            for x in 0..n {
                let Some(fx) = m(x) else { continue };
                for y in 0..n {
                    let Some(fy) = m(y) else { continue };
                    if let Some(fr) = m(self.a.bin(op, x, y)) {
                        if self.b.bin(op, fx, fy) != fr {
                            return false;
                        }
                    }
                }
            }
        }
        true
    }

    fn assign(&mut self, x: usize, y: usize) -> bool {
        match self.map[x] {
            Some(v) => v == y,
            None if self.used[y] => false,
            None => {
                self.map[x] = Some(y);
                self.used[y] = true;
                true
            }
        }
    }

    fn unassign(&mut self, x: usize) {
        if let Some(y) = self.map[x].take() {
            self.used[y] = false;
        }
    }

    fn extend(&mut self, from: usize) -> bool {
        self.nodes += 1;
        if self.nodes > self.max_nodes {
            return false;
        }
        let n = self.a.size;
        let Some(x) = (from..n).find(|&x| self.map[x].is_none()) else {
            return true;
        };
        for y in 0..n {
            if self.used[y] || self.a.labels[x] != self.b.labels[y] {
                continue;
            }
            self.assign(x, y);
            if self.consistent() && self.extend(x + 1) {
                return true;
            }
            self.unassign(x);
        }
        false
    }
}

/// A bijection `f` with `f(op_a(x, y)) = op_b(f(x), f(y))` for every table,
/// or `None` (also when the node budget runs out).
pub fn find_isomorphism(a: &Structure, b: &Structure, max_nodes: u64) -> Option<Vec<usize>> {
    if a.size != b.size
        || a.binary.len() != b.binary.len()
        || a.unary.len() != b.unary.len()
        || a.constants.len() != b.constants.len()
    {
        return None;
    }
    let mut la = a.labels.clone();
    let mut lb = b.labels.clone();
    la.sort_unstable();
    lb.sort_unstable();
    if la != lb {
        return None;
    }
    let mut s = Search {
        a,
        b,
        map: vec![None; a.size],
        used: vec![false; a.size],
        nodes: 0,
        max_nodes,
    };
    for (&ca, &cb) in a.constants.iter().zip(&b.constants) {
        if a.labels[ca] != b.labels[cb] || !s.assign(ca, cb) {
            return None;
        }
    }
    if !s.consistent() || !s.extend(0) {
        return None;
    }
    Some(s.map.into_iter().map(|v| v.expect("total map")).collect())
}

/// Folds a small tuple of counts into one label.
pub(crate) fn label(parts: &[u64]) -> u64 {
    parts
        .iter()
        .fold(0xcbf2_9ce4_8422_2325u64, |h, &p| (h ^ p).wrapping_mul(0x0100_0000_01b3))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cyclic(n: usize, shift: usize) -> Structure {
        // Z_n addition relabelled by x ↦ (x + shift) mod n
        let r = |x: usize| (x + shift) % n;
        let inv = |x: usize| (x + n - shift % n) % n;
        let mut t = vec![0; n * n];
        for x in 0..n {
            for y in 0..n {
                t[r(x) * n + r(y)] = r((inv(r(x)) + inv(r(y))) % n);
            }
        }
        Structure {
            size: n,
            binary: vec![t],
            unary: vec![],
            constants: vec![r(0)],
            labels: vec![0; n],
        }
    }

    #[test]
    fn relabelled_groups_are_isomorphic() {
        let a = cyclic(5, 0);
        let b = cyclic(5, 2);
        let f = find_isomorphism(&a, &b, 10_000).unwrap();
        assert_eq!(f[0], 2);
    }

    #[test]
    fn different_sizes() {
        assert!(find_isomorphism(&cyclic(4, 0), &cyclic(5, 0), 100).is_none());
    }
}
