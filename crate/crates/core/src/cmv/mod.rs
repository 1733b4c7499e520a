//! Finite CMV-algebras: an MV-algebra together with a compatible monoid
//! `⟨A, ◇, i⟩`.

mod endo;
mod enumerate;
mod functional;

pub use endo::{endo_monoid, EndoMonoid};
pub use enumerate::{enumerate_cmv, enumerate_cmv_over, search_raw_cmv_tables, CmvEnumeration};
pub use functional::{
    function_cmv, restricted_function_cmv, tilde_closure, FunctionCmv,
};

use serde::{Deserialize, Serialize};

use crate::error::{ActionCondition, CmvLaw, Error, Result};
use crate::iso::{find_isomorphism, label, Structure};
use crate::mv::{mv_structure, FiniteMvAlgebra, MvTables};
use crate::ops::{CmvOps, MvOps};
use crate::par::{Config, Exec};
use crate::subset::Subset;

/// Raw tables for a CMV-algebra: MV tables plus `◇` and the identity `i`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CmvTables {
    #[serde(flatten)]
    pub mv: MvTables,
    pub diamond: Vec<Vec<usize>>,
    pub i: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteCmvAlgebra {
    mv: FiniteMvAlgebra,
    diamond: Vec<usize>,
    identity: usize,
}

impl FiniteCmvAlgebra {
    pub fn validate(mv: FiniteMvAlgebra, diamond: Vec<Vec<usize>>, i: usize) -> Result<Self> {
        Self::validate_with(mv, diamond, i, Exec::default())
    }

    pub fn validate_with(
        mv: FiniteMvAlgebra,
        diamond: Vec<Vec<usize>>,
        i: usize,
        exec: Exec,
    ) -> Result<Self> {
        let n = mv.size();
        if diamond.len() != n || diamond.iter().any(|r| r.len() != n) {
            return Err(Error::Malformed(format!("diamond must be a {n}x{n} table")));
        }
        if i >= n {
            return Err(Error::Malformed(format!("identity index {i} out of range")));
        }
        for (x, row) in diamond.iter().enumerate() {
            if let Some(y) = row.iter().position(|&v| v >= n) {
                return Err(Error::Malformed(format!("diamond[{x}][{y}] out of range")));
            }
        }
        let alg = FiniteCmvAlgebra::from_parts(mv, diamond.concat(), i);
        if let Some((law, witness)) = alg.first_violation(exec) {
            return Err(Error::CmvLaw { law, witness });
        }
        Ok(alg)
    }

    /// Validates both the MV reduct and the monoid.
    pub fn validate_tables(raw: CmvTables) -> Result<Self> {
        let mv = FiniteMvAlgebra::validate(raw.mv)?;
        FiniteCmvAlgebra::validate(mv, raw.diamond, raw.i)
    }

    pub(crate) fn from_parts(mv: FiniteMvAlgebra, diamond: Vec<usize>, identity: usize) -> Self {
        FiniteCmvAlgebra {
            mv,
            diamond,
            identity,
        }
    }

    /// First failing monoid or compatibility law, then the consequences
    /// that every nontrivial CMV-algebra must satisfy.
    pub fn first_violation(&self, exec: Exec) -> Option<(CmvLaw, Vec<usize>)> {
        let n = self.size();
        let a = &self.mv;
        let d = |x, y| self.diamond(x, y);
        let i = self.identity;
        if let Some(x) = (0..n).find(|&x| d(i, x) != x) {
            return Some((CmvLaw::LeftIdentity, vec![x]));
        }
        if let Some(x) = (0..n).find(|&x| d(x, i) != x) {
            return Some((CmvLaw::RightIdentity, vec![x]));
        }
        let assoc = exec.find_first(n, |x| {
            for y in 0..n {
                let xy = d(x, y);
                for z in 0..n {
                    if d(xy, z) != d(x, d(y, z)) {
                        return Some(vec![x, y, z]);
                    }
                }
            }
            None
        });
        if let Some(w) = assoc {
            return Some((CmvLaw::Associativity, w));
        }
        let oplus = exec.find_first(n, |y| {
            for z in 0..n {
                let yz = a.oplus(y, z);
                for x in 0..n {
                    if d(yz, x) != a.oplus(d(y, x), d(z, x)) {
                        return Some(vec![y, z, x]);
                    }
                }
            }
            None
        });
        if let Some(w) = oplus {
            return Some((CmvLaw::OplusCompatible, w));
        }
        let neg = exec.find_first(n, |x| {
            (0..n)
                .find(|&y| d(a.neg(x), y) != a.neg(d(x, y)))
                .map(|y| vec![x, y])
        });
        if let Some(w) = neg {
            return Some((CmvLaw::NegCompatible, w));
        }
        if let Some(x) = (0..n).find(|&x| d(a.zero(), x) != a.zero()) {
            return Some((CmvLaw::ZeroCompatible, vec![x]));
        }
        if self.is_trivial() {
            return None;
        }
        if !(a.lt(a.zero(), i) && a.lt(i, a.one())) {
            return Some((CmvLaw::IdentityStrictlyInside, vec![i]));
        }
        let ni = a.neg(i);
        if ni == i {
            return Some((CmvLaw::IdentityNotFixed, vec![i]));
        }
        if d(ni, ni) != i {
            return Some((CmvLaw::NegIdentitySquare, vec![ni]));
        }
        if n < 4 {
            return Some((CmvLaw::MinimumSize, vec![n]));
        }
        None
    }

    pub fn mv(&self) -> &FiniteMvAlgebra {
        &self.mv
    }

    pub fn size(&self) -> usize {
        self.mv.size()
    }

    pub fn is_trivial(&self) -> bool {
        self.mv.is_trivial()
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn name(&self, x: usize) -> &str {
        self.mv.name(x)
    }

    #[inline]
    pub fn diamond(&self, x: usize, y: usize) -> usize {
        self.diamond[x * self.size() + y]
    }

    pub fn tables(&self) -> CmvTables {
        let n = self.size();
        CmvTables {
            mv: self.mv.tables(),
            diamond: self.diamond.chunks(n).map(|r| r.to_vec()).collect(),
            i: self.identity,
        }
    }

    /// Whether `s` is closed under `⊕, *, ◇` and contains `0` and `i`.
    pub fn is_subalgebra(&self, s: &Subset) -> bool {
        self.mv.is_subalgebra(s)
            && s.contains(self.identity)
            && s.iter().all(|x| s.iter().all(|y| s.contains(self.diamond(x, y))))
    }

    /// Restriction to a CMV-subalgebra; the vector maps new indices to old.
    pub fn subalgebra(&self, s: &Subset) -> Result<(FiniteCmvAlgebra, Vec<usize>)> {
        if !self.is_subalgebra(s) {
            return Err(Error::NotSubalgebra(
                "subset is not closed under the CMV operations".into(),
            ));
        }
        let (mv, embed) = self.mv.subalgebra(s)?;
        let pos = |x: usize| embed.binary_search(&x).expect("closed subset");
        let mut diamond = Vec::with_capacity(embed.len() * embed.len());
        for &x in &embed {
            for &y in &embed {
                diamond.push(pos(self.diamond(x, y)));
            }
        }
        let identity = pos(self.identity);
        Ok((FiniteCmvAlgebra::from_parts(mv, diamond, identity), embed))
    }

    /// Whether `map` preserves `⊕, *, 0, ◇, i`.
    pub fn is_homomorphism_to(&self, other: &FiniteCmvAlgebra, map: &[usize]) -> bool {
        let n = self.size();
        self.mv.is_homomorphism_to(&other.mv, map)
            && map[self.identity] == other.identity
            && (0..n).all(|x| {
                (0..n).all(|y| map[self.diamond(x, y)] == other.diamond(map[x], map[y]))
            })
    }

    /// Some pair of elements that the lattice order does not compare.
    pub fn incomparable_pair(&self) -> Option<(usize, usize)> {
        self.mv.incomparable_pair()
    }

    /// Compatibility of `⊙, ∨, ∧, ⊖` and of the order with right `◇`.
    pub fn derived_compatibility_violation(&self) -> Option<String> {
        let n = self.size();
        let a = &self.mv;
        type Op = fn(&FiniteMvAlgebra, usize, usize) -> usize;
        let ops: [(&str, Op); 4] = [
            ("odot", FiniteMvAlgebra::odot),
            ("join", FiniteMvAlgebra::join),
            ("meet", FiniteMvAlgebra::meet),
            ("ominus", FiniteMvAlgebra::ominus),
        ];
        for y in 0..n {
            for z in 0..n {
                for x in 0..n {
                    for (name, op) in ops {
                        if self.diamond(op(a, y, z), x)
                            != op(a, self.diamond(y, x), self.diamond(z, x))
                        {
                            return Some(format!("{name} at ({y}, {z}, {x})"));
                        }
                    }
                    if a.leq(y, z) && !a.leq(self.diamond(y, x), self.diamond(z, x)) {
                        return Some(format!("order at ({y}, {z}, {x})"));
                    }
                }
            }
        }
        None
    }

    /// `a ◇ x = b ◇ x` for all `x` only when `a = b`.
    pub fn right_cancellation_holds(&self) -> bool {
        let n = self.size();
        (0..n).all(|a| {
            (a + 1..n).all(|b| (0..n).any(|x| self.diamond(a, x) != self.diamond(b, x)))
        })
    }

    /// Constants `a ◇ x = a`, found through the `a ◇ 1 = a` criterion and
    /// cross-checked against the quantified definition and `a ◇ 0 = a`.
    pub fn constants(&self) -> Result<ConstantsReport> {
        let n = self.size();
        let one = self.mv.one();
        let zero = self.mv.zero();
        let constants: Subset = (0..n).filter(|&a| self.diamond(a, one) == a).collect();
        let full: Subset = (0..n)
            .filter(|&a| (0..n).all(|x| self.diamond(a, x) == a))
            .collect();
        let via_zero: Subset = (0..n).filter(|&a| self.diamond(a, zero) == a).collect();
        if constants != full || constants != via_zero {
            return Err(Error::Invariant(
                "constant criteria a<>1 = a, a<>0 = a and the definition disagree".into(),
            ));
        }
        let right_ideal = constants
            .iter()
            .all(|k| (0..n).all(|x| constants.contains(self.diamond(k, x))));
        let left_ideal = constants
            .iter()
            .all(|k| (0..n).all(|x| constants.contains(self.diamond(x, k))));
        Ok(ConstantsReport {
            mv_subalgebra: self.mv.is_subalgebra(&constants),
            right_ideal,
            left_ideal,
            constants,
        })
    }

    /// `μ(a) = f_a` with `f_a(x) = a ◇ x`, verified to be an injective
    /// CMV-homomorphism into the algebra of all self-maps.
    pub fn cayley_embed(&self) -> Result<CayleyEmbedding> {
        let n = self.size();
        let a = &self.mv;
        let images: Vec<Vec<usize>> = (0..n)
            .map(|p| (0..n).map(|x| self.diamond(p, x)).collect())
            .collect();
        let fail = |what: &str| Err(Error::Invariant(format!("Cayley map: {what}")));
        for p in 0..n {
            for q in p + 1..n {
                if images[p] == images[q] {
                    return fail("not injective");
                }
            }
        }
        for p in 0..n {
            for x in 0..n {
                if images[a.neg(p)][x] != a.neg(images[p][x]) {
                    return fail("does not preserve *");
                }
                for q in 0..n {
                    if images[a.oplus(p, q)][x] != a.oplus(images[p][x], images[q][x]) {
                        return fail("does not preserve +");
                    }
                    if images[self.diamond(p, q)][x] != images[p][images[q][x]] {
                        return fail("does not preserve <>");
                    }
                }
            }
        }
        if images[a.zero()].iter().any(|&v| v != a.zero()) {
            return fail("f_0 is not constant 0");
        }
        if images[self.identity].iter().enumerate().any(|(x, &v)| v != x) {
            return fail("f_i is not the identity");
        }
        Ok(CayleyEmbedding { images })
    }

    /// `μ_y(x) = x ◇ y`, verified to be an injective monoid homomorphism
    /// into the endomorphisms under `(f ⊡ g)(a) = g(f(a))`.
    pub fn mu_hom(&self) -> Result<MuHom> {
        let n = self.size();
        let columns: Vec<Vec<usize>> = (0..n)
            .map(|y| (0..n).map(|x| self.diamond(x, y)).collect())
            .collect();
        let fail = |what: String| Err(Error::Invariant(format!("mu: {what}")));
        for (y, col) in columns.iter().enumerate() {
            if !self.mv.is_endomorphism(col) {
                return fail(format!("mu_{y} is not an endomorphism"));
            }
        }
        for y in 0..n {
            for z in y + 1..n {
                if columns[y] == columns[z] {
                    return fail(format!("mu_{y} = mu_{z}"));
                }
            }
        }
        if columns[self.identity].iter().enumerate().any(|(x, &v)| v != x) {
            return fail("mu_i is not the identity".into());
        }
        for y in 0..n {
            for z in 0..n {
                let yz = self.diamond(y, z);
                if (0..n).any(|x| columns[yz][x] != columns[z][columns[y][x]]) {
                    return fail(format!("mu_({y}<>{z}) != mu_{y} then mu_{z}"));
                }
            }
        }
        Ok(MuHom { columns })
    }
}

impl MvOps for FiniteCmvAlgebra {
    type Elem = usize;

    fn zero(&self) -> usize {
        self.mv.zero()
    }

    fn neg(&self, x: &usize) -> usize {
        self.mv.neg(*x)
    }

    fn oplus(&self, x: &usize, y: &usize) -> usize {
        self.mv.oplus(*x, *y)
    }

    fn one(&self) -> usize {
        self.mv.one()
    }
}

impl CmvOps for FiniteCmvAlgebra {
    fn diamond(&self, x: &usize, y: &usize) -> usize {
        FiniteCmvAlgebra::diamond(self, *x, *y)
    }

    fn identity(&self) -> usize {
        self.identity
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConstantsReport {
    pub constants: Subset,
    pub mv_subalgebra: bool,
    pub right_ideal: bool,
    pub left_ideal: bool,
}

/// Images `f_a` of the Cayley map, each a self-map of the carrier.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CayleyEmbedding {
    pub images: Vec<Vec<usize>>,
}

impl CayleyEmbedding {
    /// Positions of the images inside a function algebra over the same carrier.
    pub fn indices_in(&self, target: &FunctionCmv) -> Option<Vec<usize>> {
        self.images.iter().map(|f| target.index_of(f)).collect()
    }
}

/// Columns `μ_y` of the monoid homomorphism into the endomorphism monoid.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MuHom {
    pub columns: Vec<Vec<usize>>,
}

impl MuHom {
    /// Positions of every `μ_y` inside the enumerated endomorphism monoid.
    pub fn indices_in(&self, e: &EndoMonoid) -> Option<Vec<usize>> {
        self.columns.iter().map(|c| e.index_of(c)).collect()
    }
}

/// Builds `x ◇ y := Φ(y)(x)` from an assignment `phi[y] = Φ(y)` of
/// endomorphisms, checking each precondition separately.
pub fn cmv_from_action(mv: &FiniteMvAlgebra, phi: &[Vec<usize>]) -> Result<FiniteCmvAlgebra> {
    let n = mv.size();
    if phi.len() != n || phi.iter().any(|f| f.len() != n || f.iter().any(|&v| v >= n)) {
        return Err(Error::Malformed(format!("action must list {n} maps of length {n}")));
    }
    let err = |condition, witness| Err(Error::Action { condition, witness });
    if let Some(x) = (0..n).find(|&x| !mv.is_endomorphism(&phi[x])) {
        return err(ActionCondition::NotEndomorphism, vec![x]);
    }
    for x in 0..n {
        if let Some(y) = (x + 1..n).find(|&y| phi[x] == phi[y]) {
            return err(ActionCondition::NotInjective, vec![x, y]);
        }
    }
    let id: Vec<usize> = (0..n).collect();
    let Some(i) = phi.iter().position(|f| *f == id) else {
        return err(ActionCondition::MissingIdentity, vec![]);
    };
    // (f ⊡ g)(a) = g(f(a))
    let boxdot = |f: &[usize], g: &[usize]| -> Vec<usize> { f.iter().map(|&a| g[a]).collect() };
    for y in 0..n {
        for z in 0..n {
            let c = boxdot(&phi[y], &phi[z]);
            if !phi.contains(&c) {
                return err(ActionCondition::NotSubmonoid, vec![y, z]);
            }
        }
    }
    for z in 0..n {
        for y in 0..n {
            let lhs = &phi[phi[z][y]];
            let rhs = boxdot(&phi[y], &phi[z]);
            if let Some(x) = (0..n).find(|&x| lhs[x] != rhs[x]) {
                return err(ActionCondition::Composition, vec![x, y, z]);
            }
        }
    }
    if let Some(x) = (0..n).find(|&x| phi[x][i] != x) {
        return err(ActionCondition::IdentityEvaluation, vec![x]);
    }
    let diamond: Vec<Vec<usize>> = (0..n)
        .map(|x| (0..n).map(|y| phi[y][x]).collect())
        .collect();
    FiniteCmvAlgebra::validate(mv.clone(), diamond, i)
}

pub(crate) fn cmv_structure(a: &FiniteCmvAlgebra) -> Structure {
    let mut s = mv_structure(a.mv());
    let n = a.size();
    let one = a.mv().one();
    s.binary.push(a.diamond.clone());
    s.constants.push(a.identity);
    for x in 0..n {
        let sq = (a.diamond(x, x) == x) as u64;
        let constant = (a.diamond(x, one) == x) as u64;
        s.labels[x] = label(&[s.labels[x], sq, constant]);
    }
    debug_assert_eq!(s.size, n);
    s
}

/// An isomorphism of CMV-algebras, if one exists within the search budget.
pub fn cmv_isomorphism(
    a: &FiniteCmvAlgebra,
    b: &FiniteCmvAlgebra,
    cfg: &Config,
) -> Option<Vec<usize>> {
    find_isomorphism(&cmv_structure(a), &cmv_structure(b), cfg.max_search_nodes)
}
