//! Finite MV-algebras as validated operation tables.
//!
//! Elements are dense indices `0..size`; names are labels for presentation.
//! Every constructor either runs the exhaustive axiom scan or builds the
//! tables from an algebra that is already known to be valid (products,
//! subalgebras, quotients).

mod catalog;
mod ideal;

pub use catalog::{chain_product_shapes, mv_catalog, mv_isomorphic, search_mv_tables};
pub(crate) use catalog::mv_structure;
pub(crate) use ideal::quotient_indexing;
pub use ideal::{
    check_mv_ideal, congruence_classes, enumerate_mv_ideals, ideal_generated, is_mv_congruence,
    quotient_mv, radical_and_perfect, IdealFailure, MvIdeal, MvQuotient, RadicalReport,
};

use serde::{Deserialize, Serialize};

use crate::error::{Error, MvAxiom, Result};
use crate::ops::MvOps;
use crate::par::{Config, Exec};
use crate::rational::Rational;
use crate::subset::Subset;

/// Raw, unvalidated tables for an MV-algebra.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MvTables {
    #[serde(default)]
    pub names: Vec<String>,
    pub zero: usize,
    pub neg: Vec<usize>,
    pub oplus: Vec<Vec<usize>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteMvAlgebra {
    names: Vec<String>,
    oplus: Vec<usize>,
    neg: Vec<usize>,
    zero: usize,
    one: usize,
}

/// All derived binary operations as tables, plus the order relation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DerivedTables {
    pub odot: Vec<Vec<usize>>,
    pub implies: Vec<Vec<usize>>,
    pub ominus: Vec<Vec<usize>>,
    pub join: Vec<Vec<usize>>,
    pub meet: Vec<Vec<usize>>,
    pub dist: Vec<Vec<usize>>,
    pub leq: Vec<Vec<bool>>,
}

impl FiniteMvAlgebra {
    /// Checks shape and all six MV equations exhaustively.
    pub fn validate(raw: MvTables) -> Result<Self> {
        Self::validate_with(raw, Exec::default())
    }

    pub fn validate_with(raw: MvTables, exec: Exec) -> Result<Self> {
        let n = raw.neg.len();
        if n == 0 {
            return Err(Error::Malformed("empty carrier".into()));
        }
        if raw.oplus.len() != n || raw.oplus.iter().any(|row| row.len() != n) {
            return Err(Error::Malformed(format!("oplus must be a {n}x{n} table")));
        }
        if raw.zero >= n {
            return Err(Error::Malformed(format!("zero index {} out of range", raw.zero)));
        }
        if let Some(k) = raw.neg.iter().position(|&v| v >= n) {
            return Err(Error::Malformed(format!("neg[{k}] out of range")));
        }
        for (x, row) in raw.oplus.iter().enumerate() {
            if let Some(y) = row.iter().position(|&v| v >= n) {
                return Err(Error::Malformed(format!("oplus[{x}][{y}] out of range")));
            }
        }
        let names = if raw.names.is_empty() {
            (0..n).map(|k| k.to_string()).collect()
        } else if raw.names.len() == n {
            raw.names
        } else {
            return Err(Error::Malformed(format!(
                "{} names for {n} elements",
                raw.names.len()
            )));
        };
        let flat = raw.oplus.into_iter().flatten().collect();
        let alg = FiniteMvAlgebra::from_parts(names, flat, raw.neg, raw.zero);
        if let Some((axiom, witness)) = alg.first_violation(exec) {
            return Err(Error::MvAxiom { axiom, witness });
        }
        Ok(alg)
    }

    /// Builds an algebra without running the axiom scan. Callers guarantee
    /// the tables come from a valid construction.
    pub(crate) fn from_parts(
        names: Vec<String>,
        oplus: Vec<usize>,
        neg: Vec<usize>,
        zero: usize,
    ) -> Self {
        let one = neg[zero];
        FiniteMvAlgebra {
            names,
            oplus,
            neg,
            zero,
            one,
        }
    }

    /// First violated axiom, scanning axioms in order and witnesses in
    /// lexicographic order.
    pub fn first_violation(&self, exec: Exec) -> Option<(MvAxiom, Vec<usize>)> {
        let n = self.size();
        let assoc = exec.find_first(n, |x| {
            for y in 0..n {
                let xy = self.oplus(x, y);
                for z in 0..n {
                    if self.oplus(xy, z) != self.oplus(x, self.oplus(y, z)) {
                        return Some(vec![x, y, z]);
                    }
                }
            }
            None
        });
        if let Some(w) = assoc {
            return Some((MvAxiom::Associativity, w));
        }
        let comm = exec.find_first(n, |x| {
            (0..n)
                .find(|&y| self.oplus(x, y) != self.oplus(y, x))
                .map(|y| vec![x, y])
        });
        if let Some(w) = comm {
            return Some((MvAxiom::Commutativity, w));
        }
        if let Some(x) = (0..n).find(|&x| self.oplus(x, self.zero) != x) {
            return Some((MvAxiom::ZeroNeutral, vec![x]));
        }
        if let Some(x) = (0..n).find(|&x| self.neg(self.neg(x)) != x) {
            return Some((MvAxiom::Involution, vec![x]));
        }
        let one = self.neg(self.zero);
        if let Some(x) = (0..n).find(|&x| self.oplus(x, one) != one) {
            return Some((MvAxiom::OneAbsorbing, vec![x]));
        }
        let luk = exec.find_first(n, |x| {
            (0..n)
                .find(|&y| {
                    let l = self.oplus(self.neg(self.oplus(self.neg(x), y)), y);
                    let r = self.oplus(self.neg(self.oplus(self.neg(y), x)), x);
                    l != r
                })
                .map(|y| vec![x, y])
        });
        luk.map(|w| (MvAxiom::Lukasiewicz, w))
    }

    /// The one-element algebra with `0 = 1`.
    pub fn trivial() -> Self {
        FiniteMvAlgebra::from_parts(vec!["0".into()], vec![0], vec![0], 0)
    }

    pub fn size(&self) -> usize {
        self.neg.len()
    }

    pub fn is_trivial(&self) -> bool {
        self.size() == 1
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, x: usize) -> &str {
        &self.names[x]
    }

    /// Index of the element with the given label.
    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn zero(&self) -> usize {
        self.zero
    }

    pub fn one(&self) -> usize {
        self.one
    }

    #[inline]
    pub fn oplus(&self, x: usize, y: usize) -> usize {
        self.oplus[x * self.size() + y]
    }

    #[inline]
    pub fn neg(&self, x: usize) -> usize {
        self.neg[x]
    }

    pub fn odot(&self, x: usize, y: usize) -> usize {
        self.neg(self.oplus(self.neg(x), self.neg(y)))
    }

    pub fn implies(&self, x: usize, y: usize) -> usize {
        self.oplus(self.neg(x), y)
    }

    pub fn ominus(&self, x: usize, y: usize) -> usize {
        self.odot(x, self.neg(y))
    }

    pub fn join(&self, x: usize, y: usize) -> usize {
        self.oplus(x, self.odot(self.neg(x), y))
    }

    pub fn meet(&self, x: usize, y: usize) -> usize {
        self.odot(x, self.oplus(self.neg(x), y))
    }

    /// Chang distance `(x ⊖ y) ⊕ (y ⊖ x)`.
    pub fn dist(&self, x: usize, y: usize) -> usize {
        self.oplus(self.ominus(x, y), self.ominus(y, x))
    }

    pub fn leq(&self, x: usize, y: usize) -> bool {
        self.implies(x, y) == self.one
    }

    pub fn lt(&self, x: usize, y: usize) -> bool {
        x != y && self.leq(x, y)
    }

    /// `n·x = x ⊕ … ⊕ x` (`0·x = 0`).
    pub fn multiple(&self, x: usize, n: usize) -> usize {
        (0..n).fold(self.zero, |acc, _| self.oplus(acc, x))
    }

    /// `xⁿ = x ⊙ … ⊙ x` (`x⁰ = 1`).
    pub fn pow(&self, x: usize, n: usize) -> usize {
        (0..n).fold(self.one, |acc, _| self.odot(acc, x))
    }

    pub fn derived_ops(&self) -> DerivedTables {
        let n = self.size();
        let table = |f: &dyn Fn(usize, usize) -> usize| -> Vec<Vec<usize>> {
            (0..n).map(|x| (0..n).map(|y| f(x, y)).collect()).collect()
        };
        DerivedTables {
            odot: table(&|x, y| self.odot(x, y)),
            implies: table(&|x, y| self.implies(x, y)),
            ominus: table(&|x, y| self.ominus(x, y)),
            join: table(&|x, y| self.join(x, y)),
            meet: table(&|x, y| self.meet(x, y)),
            dist: table(&|x, y| self.dist(x, y)),
            leq: (0..n)
                .map(|x| (0..n).map(|y| self.leq(x, y)).collect())
                .collect(),
        }
    }

    pub fn tables(&self) -> MvTables {
        let n = self.size();
        MvTables {
            names: self.names.clone(),
            zero: self.zero,
            neg: self.neg.clone(),
            oplus: self.oplus.chunks(n).map(|r| r.to_vec()).collect(),
        }
    }

    /// Idempotent elements `x ⊕ x = x`: the largest Boolean subalgebra.
    pub fn boolean_skeleton(&self) -> Subset {
        (0..self.size())
            .filter(|&x| self.oplus(x, x) == x)
            .collect()
    }

    pub fn is_boolean(&self) -> bool {
        (0..self.size()).all(|x| self.oplus(x, x) == x)
    }

    /// Some pair `(x, y)` with neither `x ≤ y` nor `y ≤ x`.
    pub fn incomparable_pair(&self) -> Option<(usize, usize)> {
        let n = self.size();
        (0..n)
            .flat_map(|x| (x + 1..n).map(move |y| (x, y)))
            .find(|&(x, y)| !self.leq(x, y) && !self.leq(y, x))
    }

    pub fn is_totally_ordered(&self) -> bool {
        self.incomparable_pair().is_none()
    }

    /// Whether `s` contains 0 and is closed under `⊕` and `*`.
    pub fn is_subalgebra(&self, s: &Subset) -> bool {
        self.subalgebra_failure(s).is_none()
    }

    fn subalgebra_failure(&self, s: &Subset) -> Option<String> {
        let n = self.size();
        if let Some(x) = s.iter().find(|&x| x >= n) {
            return Some(format!("index {x} out of range"));
        }
        if !s.contains(self.zero) {
            return Some("missing 0".into());
        }
        if let Some(x) = s.iter().find(|&x| !s.contains(self.neg(x))) {
            return Some(format!("{}* not in subset", self.name(x)));
        }
        for x in s.iter() {
            for y in s.iter() {
                if !s.contains(self.oplus(x, y)) {
                    return Some(format!("{} + {} not in subset", self.name(x), self.name(y)));
                }
            }
        }
        None
    }

    /// Restricts the tables to a subalgebra. The returned vector maps each
    /// new index to its index in `self`.
    pub fn subalgebra(&self, s: &Subset) -> Result<(FiniteMvAlgebra, Vec<usize>)> {
        if let Some(why) = self.subalgebra_failure(s) {
            return Err(Error::NotSubalgebra(why));
        }
        let embed: Vec<usize> = s.iter().collect();
        let pos = |x: usize| embed.binary_search(&x).expect("closed subset");
        let m = embed.len();
        let mut oplus = Vec::with_capacity(m * m);
        for &x in &embed {
            for &y in &embed {
                oplus.push(pos(self.oplus(x, y)));
            }
        }
        let neg = embed.iter().map(|&x| pos(self.neg(x))).collect();
        let names = embed.iter().map(|&x| self.names[x].clone()).collect();
        Ok((
            FiniteMvAlgebra::from_parts(names, oplus, neg, pos(self.zero)),
            embed,
        ))
    }

    /// Whether `map: self → other` preserves `⊕`, `*` and `0`.
    pub fn is_homomorphism_to(&self, other: &FiniteMvAlgebra, map: &[usize]) -> bool {
        let n = self.size();
        map.len() == n
            && map.iter().all(|&v| v < other.size())
            && map[self.zero] == other.zero
            && (0..n).all(|x| map[self.neg(x)] == other.neg(map[x]))
            && (0..n).all(|x| (0..n).all(|y| map[self.oplus(x, y)] == other.oplus(map[x], map[y])))
    }

    pub fn is_endomorphism(&self, map: &[usize]) -> bool {
        self.is_homomorphism_to(self, map)
    }
}

impl MvOps for FiniteMvAlgebra {
    type Elem = usize;

    fn zero(&self) -> usize {
        self.zero
    }

    fn neg(&self, x: &usize) -> usize {
        self.neg[*x]
    }

    fn oplus(&self, x: &usize, y: &usize) -> usize {
        FiniteMvAlgebra::oplus(self, *x, *y)
    }

    fn one(&self) -> usize {
        self.one
    }
}

/// The chain `Łₙ₊₁ = {0, 1/n, …, 1}` with truncated sum and `x* = 1 − x`.
pub fn lukasiewicz_chain(n: usize) -> Result<FiniteMvAlgebra> {
    if n == 0 {
        return Err(Error::InvalidArgument("chain needs n >= 1".into()));
    }
    let size = n + 1;
    let names = (0..size)
        .map(|k| Rational::new(k as i64, n as i64).to_string())
        .collect();
    let mut oplus = Vec::with_capacity(size * size);
    for x in 0..size {
        for y in 0..size {
            oplus.push((x + y).min(n));
        }
    }
    let neg = (0..size).map(|k| n - k).collect();
    Ok(FiniteMvAlgebra::from_parts(names, oplus, neg, 0))
}

/// Direct product with pointwise operations. Tuple `(t₀, …, tₖ₋₁)` has
/// index `((t₀·s₁ + t₁)·s₂ + …)`: the first factor is most significant.
pub fn product_mv(factors: &[&FiniteMvAlgebra], cfg: &Config) -> Result<FiniteMvAlgebra> {
    if factors.is_empty() {
        return Ok(FiniteMvAlgebra::trivial());
    }
    let size = factors
        .iter()
        .try_fold(1u128, |acc, f| acc.checked_mul(f.size() as u128))
        .unwrap_or(u128::MAX);
    cfg.check_size("product algebra", size)?;
    let size = size as usize;
    let radices: Vec<usize> = factors.iter().map(|f| f.size()).collect();
    let decode = |mut idx: usize| -> Vec<usize> {
        let mut t = vec![0; radices.len()];
        for j in (0..radices.len()).rev() {
            t[j] = idx % radices[j];
            idx /= radices[j];
        }
        t
    };
    let encode = |t: &[usize]| -> usize {
        t.iter()
            .zip(&radices)
            .fold(0usize, |acc, (&d, &r)| acc * r + d)
    };
    let tuples: Vec<Vec<usize>> = (0..size).map(decode).collect();
    let names = tuples
        .iter()
        .map(|t| {
            let parts: Vec<&str> = t.iter().zip(factors).map(|(&d, f)| f.name(d)).collect();
            format!("({})", parts.join(","))
        })
        .collect();
    let mut oplus = Vec::with_capacity(size * size);
    let mut buf = vec![0; radices.len()];
    for a in &tuples {
        for b in &tuples {
            for (j, f) in factors.iter().enumerate() {
                buf[j] = f.oplus(a[j], b[j]);
            }
            oplus.push(encode(&buf));
        }
    }
    let neg = tuples
        .iter()
        .map(|a| {
            let t: Vec<usize> = a.iter().zip(factors).map(|(&d, f)| f.neg(d)).collect();
            encode(&t)
        })
        .collect();
    let zero = encode(&factors.iter().map(|f| f.zero()).collect::<Vec<_>>());
    Ok(FiniteMvAlgebra::from_parts(names, oplus, neg, zero))
}

/// `Aᵏ` with pointwise operations.
pub fn power_mv(a: &FiniteMvAlgebra, k: usize, cfg: &Config) -> Result<FiniteMvAlgebra> {
    if k == 0 {
        return Err(Error::InvalidArgument("power needs k >= 1".into()));
    }
    let factors = vec![a; k];
    product_mv(&factors, cfg)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn l(n: usize) -> FiniteMvAlgebra {
        lukasiewicz_chain(n).unwrap()
    }

    #[test]
    fn chain_three_is_valid() {
        let l3 = l(2);
        assert_eq!(l3.names(), ["0", "1/2", "1"]);
        let again = FiniteMvAlgebra::validate(l3.tables()).unwrap();
        assert_eq!(again, l3);
    }

    #[test]
    fn trivial_algebra_validates() {
        let raw = MvTables {
            names: vec!["0".into()],
            zero: 0,
            neg: vec![0],
            oplus: vec![vec![0]],
        };
        let t = FiniteMvAlgebra::validate(raw).unwrap();
        assert!(t.is_trivial());
        assert_eq!(t.zero(), t.one());
    }

    #[test]
    fn broken_chain_reports_witness() {
        let mut raw = l(2).tables();
        raw.oplus[1][1] = 0;
        let err = FiniteMvAlgebra::validate(raw.clone()).unwrap_err();
        let Error::MvAxiom { axiom, witness } = err else {
            panic!("expected axiom violation, got {err}");
        };
        // Re-evaluate the reported equation directly on the raw table.
        let o = |x: usize, y: usize| raw.oplus[x][y];
        let ng = |x: usize| raw.neg[x];
        let violated = match axiom {
            MvAxiom::Associativity => {
                let (x, y, z) = (witness[0], witness[1], witness[2]);
                o(o(x, y), z) != o(x, o(y, z))
            }
            MvAxiom::Commutativity => o(witness[0], witness[1]) != o(witness[1], witness[0]),
            MvAxiom::Lukasiewicz => {
                let (x, y) = (witness[0], witness[1]);
                o(ng(o(ng(x), y)), y) != o(ng(o(ng(y), x)), x)
            }
            other => panic!("unexpected axiom {other:?}"),
        };
        assert!(violated);
    }

    #[test]
    fn malformed_tables() {
        let mut raw = l(2).tables();
        raw.neg[0] = 7;
        assert!(matches!(
            FiniteMvAlgebra::validate(raw),
            Err(Error::Malformed(_))
        ));
        let mut raw = l(2).tables();
        raw.oplus.pop();
        assert!(matches!(
            FiniteMvAlgebra::validate(raw),
            Err(Error::Malformed(_))
        ));
        assert!(lukasiewicz_chain(0).is_err());
    }

    #[test]
    fn derived_operations_on_chains() {
        let l3 = l(2);
        assert_eq!(l3.odot(1, 1), 0);
        let l5 = l(4);
        // 3/4 ⊖ 1/4 = 1/2
        assert_eq!(l5.name(l5.ominus(3, 1)), "1/2");
        for x in 0..l5.size() {
            assert_eq!(l5.meet(x, l5.one()), x);
            assert_eq!(l5.join(x, l5.zero()), x);
        }
        assert_eq!(l5.multiple(1, 3), 3);
        assert_eq!(l5.pow(3, 2), 2);
    }

    #[test]
    fn residuation_and_lattice() {
        for alg in [l(4), power_mv(&l(2), 2, &Config::default()).unwrap()] {
            let n = alg.size();
            for x in 0..n {
                for y in 0..n {
                    for z in 0..n {
                        assert_eq!(
                            alg.leq(alg.odot(x, y), z),
                            alg.leq(x, alg.implies(y, z))
                        );
                    }
                    let j = alg.join(x, y);
                    let m = alg.meet(x, y);
                    assert!(alg.leq(x, j) && alg.leq(y, j));
                    assert!(alg.leq(m, x) && alg.leq(m, y));
                }
                assert!(alg.leq(alg.zero(), x) && alg.leq(x, alg.one()));
            }
        }
    }

    #[test]
    fn powers_and_products() {
        let cfg = Config::default();
        let b4 = power_mv(&l(1), 2, &cfg).unwrap();
        assert_eq!(b4.size(), 4);
        assert!(b4.is_boolean());
        FiniteMvAlgebra::validate(b4.tables()).unwrap();
        let l33 = power_mv(&l(2), 3, &cfg).unwrap();
        assert_eq!(l33.size(), 27);
        assert_eq!(l33.name(5), "(0,1/2,1)");
        FiniteMvAlgebra::validate(l33.tables()).unwrap();
        assert!(power_mv(&l(9), 3, &cfg).is_err());
    }

    #[test]
    fn boolean_skeletons() {
        assert_eq!(l(2).boolean_skeleton(), Subset::new([0, 2]));
        assert_eq!(l(4).boolean_skeleton(), Subset::new([0, 4]));
        let b4 = power_mv(&l(1), 2, &Config::default()).unwrap();
        assert_eq!(b4.boolean_skeleton(), Subset::full(4));
        for alg in [l(4), power_mv(&l(2), 2, &Config::default()).unwrap()] {
            let b = alg.boolean_skeleton();
            assert!(alg.is_subalgebra(&b));
            assert!(b.contains(alg.zero()) && b.contains(alg.one()));
        }
    }

    #[test]
    fn subalgebra_restriction() {
        let l5 = l(4);
        let (sub, embed) = l5.subalgebra(&Subset::new([0, 2, 4])).unwrap();
        assert_eq!(embed, vec![0, 2, 4]);
        assert_eq!(sub, l(2));
        assert!(l5.subalgebra(&Subset::new([0, 1, 4])).is_err());
    }

    #[test]
    fn homomorphisms() {
        let l3 = l(2);
        let l5 = l(4);
        assert!(l3.is_homomorphism_to(&l5, &[0, 2, 4]));
        assert!(!l3.is_homomorphism_to(&l5, &[0, 1, 4]));
        assert!(l5.is_endomorphism(&[0, 1, 2, 3, 4]));
    }
}
