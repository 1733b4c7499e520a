//! CMV-algebras of self-maps of a finite MV-algebra under pointwise MV
//! operations and composition `(f ∘ g)(t) = f(g(t))`.

use std::collections::HashSet;

use super::FiniteCmvAlgebra;
use crate::error::{Error, Result};
use crate::mv::FiniteMvAlgebra;
use crate::par::{Config, Exec};
use crate::subset::Subset;

/// A CMV-algebra whose elements are self-maps of `base`. Element `k` of
/// `algebra` is the map `funcs[k]`, listed in lexicographic order.
#[derive(Clone, Debug)]
pub struct FunctionCmv {
    base: FiniteMvAlgebra,
    funcs: Vec<Vec<usize>>,
    algebra: FiniteCmvAlgebra,
}

impl FunctionCmv {
    /// Builds and validates the algebra on a set of maps closed under the
    /// operations.
    fn build(base: &FiniteMvAlgebra, mut funcs: Vec<Vec<usize>>, exec: Exec) -> Result<Self> {
        funcs.sort_unstable();
        funcs.dedup();
        let m = funcs.len();
        let idx = |f: &[usize]| {
            funcs
                .binary_search_by(|g| g.as_slice().cmp(f))
                .map_err(|_| Error::NotSubalgebra("maps are not closed under the operations".into()))
        };
        let rows = exec.map(m, |a| -> Result<(Vec<usize>, Vec<usize>)> {
            let f = &funcs[a];
            let mut oplus = Vec::with_capacity(m);
            let mut diamond = Vec::with_capacity(m);
            let mut buf = vec![0; f.len()];
            for g in &funcs {
                for (t, b) in buf.iter_mut().enumerate() {
                    *b = base.oplus(f[t], g[t]);
                }
                oplus.push(idx(&buf)?);
                for (t, b) in buf.iter_mut().enumerate() {
                    *b = f[g[t]];
                }
                diamond.push(idx(&buf)?);
            }
            Ok((oplus, diamond))
        });
        let mut oplus = Vec::with_capacity(m * m);
        let mut diamond = Vec::with_capacity(m * m);
        for r in rows {
            let (o, d) = r?;
            oplus.extend(o);
            diamond.extend(d);
        }
        let neg = funcs
            .iter()
            .map(|f| idx(&f.iter().map(|&v| base.neg(v)).collect::<Vec<_>>()))
            .collect::<Result<Vec<_>>>()?;
        let zero = idx(&vec![base.zero(); base.size()])?;
        let identity = idx(&(0..base.size()).collect::<Vec<_>>())?;
        let names = funcs
            .iter()
            .map(|f| {
                let parts: Vec<&str> = f.iter().map(|&v| base.name(v)).collect();
                format!("[{}]", parts.join(","))
            })
            .collect();
        let mv = FiniteMvAlgebra::from_parts(names, oplus, neg, zero);
        if let Some((axiom, witness)) = mv.first_violation(exec) {
            return Err(Error::MvAxiom { axiom, witness });
        }
        let algebra = FiniteCmvAlgebra::from_parts(mv, diamond, identity);
        if let Some((law, witness)) = algebra.first_violation(exec) {
            return Err(Error::CmvLaw { law, witness });
        }
        Ok(FunctionCmv {
            base: base.clone(),
            funcs,
            algebra,
        })
    }

    pub fn base(&self) -> &FiniteMvAlgebra {
        &self.base
    }

    pub fn algebra(&self) -> &FiniteCmvAlgebra {
        &self.algebra
    }

    pub fn into_algebra(self) -> FiniteCmvAlgebra {
        self.algebra
    }

    pub fn functions(&self) -> &[Vec<usize>] {
        &self.funcs
    }

    /// The map `f` with `f[j] = f(mⱼ)` for element `k`.
    pub fn function(&self, k: usize) -> &[usize] {
        &self.funcs[k]
    }

    pub fn index_of(&self, f: &[usize]) -> Option<usize> {
        self.funcs.binary_search_by(|g| g.as_slice().cmp(f)).ok()
    }

    /// Index of the constant map `c_a`, when present.
    pub fn constant(&self, a: usize) -> Option<usize> {
        self.index_of(&vec![a; self.base.size()])
    }
}

/// All maps `f` with `f(s) ∈ allowed(s)` for every `s`, in lexicographic order.
fn maps_with(choices: &[Vec<usize>]) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::with_capacity(choices.len())];
    for opts in choices {
        out = out
            .into_iter()
            .flat_map(|prefix| {
                opts.iter().map(move |&v| {
                    let mut p = prefix.clone();
                    p.push(v);
                    p
                })
            })
            .collect();
    }
    out
}

fn count_maps(choices: &[Vec<usize>]) -> u128 {
    choices
        .iter()
        .try_fold(1u128, |acc, c| acc.checked_mul(c.len() as u128))
        .unwrap_or(u128::MAX)
}

/// `M^M`: every self-map of `M`.
pub fn function_cmv(m: &FiniteMvAlgebra, cfg: &Config) -> Result<FunctionCmv> {
    restricted_function_cmv(m, &Subset::full(m.size()), cfg)
}

/// Maps sending the subalgebra `s` into itself.
pub fn restricted_function_cmv(m: &FiniteMvAlgebra, s: &Subset, cfg: &Config) -> Result<FunctionCmv> {
    if !m.is_subalgebra(s) {
        return Err(Error::NotSubalgebra(format!(
            "{:?} is not an MV-subalgebra",
            s.as_slice()
        )));
    }
    let n = m.size();
    let all: Vec<usize> = (0..n).collect();
    let choices: Vec<Vec<usize>> = (0..n)
        .map(|t| if s.contains(t) { s.as_slice().to_vec() } else { all.clone() })
        .collect();
    cfg.check_size("function algebra", count_maps(&choices))?;
    FunctionCmv::build(m, maps_with(&choices), cfg.exec)
}

/// The CMV-subalgebra of `M^M` generated by the constant maps and the
/// identity, saturated breadth-first.
pub fn tilde_closure(m: &FiniteMvAlgebra, cfg: &Config) -> Result<FunctionCmv> {
    let n = m.size();
    let mut elems: Vec<Vec<usize>> = (0..n).map(|a| vec![a; n]).collect();
    elems.push((0..n).collect());
    let mut seen: HashSet<Vec<usize>> = elems.iter().cloned().collect();
    let mut start = 0;
    while start < elems.len() {
        let known = elems.len();
        // combine each frontier element with everything known so far
        let found: Vec<Vec<Vec<usize>>> = cfg.exec.map(known - start, |k| {
            let f = &elems[start + k];
            let mut out = vec![f.iter().map(|&v| m.neg(v)).collect::<Vec<_>>()];
            for g in &elems[..known] {
                out.push((0..n).map(|t| m.oplus(f[t], g[t])).collect());
                out.push((0..n).map(|t| f[g[t]]).collect());
                out.push((0..n).map(|t| g[f[t]]).collect());
            }
            out
        });
        start = known;
        for h in found.into_iter().flatten() {
            if seen.insert(h.clone()) {
                elems.push(h);
                cfg.check_size("tilde closure", elems.len() as u128)?;
            }
        }
    }
    FunctionCmv::build(m, elems, cfg.exec)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mv::{lukasiewicz_chain, power_mv};

    fn l(n: usize) -> FiniteMvAlgebra {
        lukasiewicz_chain(n).unwrap()
    }

    #[test]
    fn sizes() {
        let cfg = Config::default();
        assert_eq!(function_cmv(&l(1), &cfg).unwrap().algebra().size(), 4);
        assert_eq!(function_cmv(&l(2), &cfg).unwrap().algebra().size(), 27);
        let bool_part = Subset::new([0, 2]);
        let r = restricted_function_cmv(&l(2), &bool_part, &cfg).unwrap();
        assert_eq!(r.algebra().size(), 12);
        let r = restricted_function_cmv(&l(3), &Subset::new([0, 3]), &cfg).unwrap();
        assert_eq!(r.algebra().size(), 64);
        assert_eq!(
            restricted_function_cmv(&l(2), &Subset::full(3), &cfg)
                .unwrap()
                .functions(),
            function_cmv(&l(2), &cfg).unwrap().functions()
        );
    }

    #[test]
    fn restricted_l5_needs_a_larger_bound() {
        let s = Subset::new([0, 4]);
        let err = restricted_function_cmv(&l(4), &s, &Config::default()).unwrap_err();
        assert!(matches!(err, Error::SizeBound { .. }));
        let cfg = Config::default().with_max_cells(500 * 500);
        let r = restricted_function_cmv(&l(4), &s, &cfg).unwrap();
        assert_eq!(r.algebra().size(), 500);
    }

    #[test]
    fn non_subalgebra_rejected() {
        let err = restricted_function_cmv(&l(2), &Subset::new([0, 1]), &Config::default());
        assert!(matches!(err, Err(Error::NotSubalgebra(_))));
    }

    #[test]
    fn composition_is_literal() {
        let fa = function_cmv(&l(2), &Config::default()).unwrap();
        let a = fa.algebra();
        for x in 0..a.size() {
            for y in 0..a.size() {
                let f = fa.function(x);
                let g = fa.function(y);
                let fg: Vec<usize> = g.iter().map(|&t| f[t]).collect();
                assert_eq!(fa.function(a.diamond(x, y)), fg.as_slice());
            }
            assert_eq!(a.diamond(a.identity(), x), x);
            assert_eq!(a.diamond(x, a.identity()), x);
        }
    }

    #[test]
    fn tilde_sizes() {
        let cfg = Config::default();
        assert_eq!(tilde_closure(&l(1), &cfg).unwrap().algebra().size(), 4);
        assert_eq!(tilde_closure(&l(2), &cfg).unwrap().algebra().size(), 27);
        assert_eq!(tilde_closure(&l(3), &cfg).unwrap().algebra().size(), 256);
        assert_eq!(
            tilde_closure(&l(2), &Config::sequential()).unwrap().functions(),
            function_cmv(&l(2), &cfg).unwrap().functions()
        );
    }

    #[test]
    fn tilde_of_boolean_square_is_proper() {
        let cfg = Config::default();
        let b4 = power_mv(&l(1), 2, &cfg).unwrap();
        let t = tilde_closure(&b4, &cfg).unwrap();
        let full = function_cmv(&b4, &cfg).unwrap();
        assert!(t.algebra().size() < full.algebra().size());
        for f in t.functions() {
            assert!(full.index_of(f).is_some());
        }
    }
}
