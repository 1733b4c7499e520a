//! Finite MV-algebras of a given size: the product-of-chains catalog and an
//! exhaustive table search used to cross-check it on small sizes.

use super::{lukasiewicz_chain, product_mv, FiniteMvAlgebra};
use crate::error::{Error, Result};
use crate::iso::{find_isomorphism, label, Structure};
use crate::par::Config;

/// Multisets of chain sizes (each ≥ 2, non-increasing) whose product is `size`.
pub fn chain_product_shapes(size: usize) -> Vec<Vec<usize>> {
    fn go(rest: usize, max: usize, prefix: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if rest == 1 {
            out.push(prefix.clone());
            return;
        }
        for f in (2..=max.min(rest)).rev() {
            if rest.is_multiple_of(f) {
                prefix.push(f);
                go(rest / f, f, prefix, out);
                prefix.pop();
            }
        }
    }
    let mut out = Vec::new();
    if size >= 1 {
        go(size, size, &mut Vec::new(), &mut out);
    }
    out
}

/// One algebra per product-of-chains shape of the given size.
pub fn mv_catalog(size: usize, cfg: &Config) -> Result<Vec<FiniteMvAlgebra>> {
    chain_product_shapes(size)
        .into_iter()
        .map(|shape| {
            let chains = shape
                .iter()
                .map(|&k| lukasiewicz_chain(k - 1))
                .collect::<Result<Vec<_>>>()?;
            let refs: Vec<&FiniteMvAlgebra> = chains.iter().collect();
            if refs.len() == 1 {
                Ok(chains[0].clone())
            } else {
                product_mv(&refs, cfg)
            }
        })
        .collect()
}

pub(crate) fn mv_structure(a: &FiniteMvAlgebra) -> Structure {
    let n = a.size();
    let labels = (0..n)
        .map(|x| {
            let below = (0..n).filter(|&y| a.leq(y, x)).count() as u64;
            let above = (0..n).filter(|&y| a.leq(x, y)).count() as u64;
            let idem = (a.oplus(x, x) == x) as u64;
            label(&[below, above, idem])
        })
        .collect();
    Structure {
        size: n,
        binary: vec![a.tables().oplus.concat()],
        unary: vec![a.tables().neg],
        constants: vec![a.zero()],
        labels,
    }
}

pub fn mv_isomorphic(a: &FiniteMvAlgebra, b: &FiniteMvAlgebra, cfg: &Config) -> bool {
    find_isomorphism(&mv_structure(a), &mv_structure(b), cfg.max_search_nodes).is_some()
}

/// Every MV-algebra with `size` elements up to isomorphism, found by
/// scanning all tables with `0` at index 0, `1` at index `size − 1`, and a
/// commutative `⊕` whose rows for 0 and 1 are forced by the axioms.
pub fn search_mv_tables(size: usize, cfg: &Config) -> Result<Vec<FiniteMvAlgebra>> {
    if size == 0 || size > 5 {
        return Err(Error::InvalidArgument(format!(
            "exhaustive table search supports sizes 1..=5, got {size}"
        )));
    }
    if size == 1 {
        return Ok(vec![FiniteMvAlgebra::trivial()]);
    }
    let top = size - 1;
    let inner: Vec<usize> = (1..top).collect();
    // free cells: unordered pairs of inner elements
    let cells: Vec<(usize, usize)> = inner
        .iter()
        .flat_map(|&x| inner.iter().filter(move |&&y| y >= x).map(move |&y| (x, y)))
        .collect();
    let mut found: Vec<FiniteMvAlgebra> = Vec::new();
    for neg_inner in involutions(&inner) {
        let mut neg = vec![0; size];
        neg[0] = top;
        neg[top] = 0;
        for (&x, &y) in inner.iter().zip(&neg_inner) {
            neg[x] = y;
        }
        let total = size.pow(cells.len() as u32);
        for code in 0..total {
            let mut table = vec![vec![0; size]; size];
            for x in 0..size {
                table[0][x] = x;
                table[x][0] = x;
                table[top][x] = top;
                table[x][top] = top;
            }
            let mut c = code;
            for &(x, y) in &cells {
                let v = c % size;
                c /= size;
                table[x][y] = v;
                table[y][x] = v;
            }
            let raw = super::MvTables {
                names: Vec::new(),
                zero: 0,
                neg: neg.clone(),
                oplus: table,
            };
            if let Ok(alg) = FiniteMvAlgebra::validate_with(raw, crate::par::Exec::Sequential) {
                if !found.iter().any(|f| mv_isomorphic(f, &alg, cfg)) {
                    found.push(alg);
                }
            }
        }
    }
    Ok(found)
}

/// All involutions of `items`, as images listed in the order of `items`.
fn involutions(items: &[usize]) -> Vec<Vec<usize>> {
    fn go(free: &[usize], acc: &mut Vec<(usize, usize)>, out: &mut Vec<Vec<(usize, usize)>>) {
        let Some((&first, rest)) = free.split_first() else {
            out.push(acc.clone());
            return;
        };
        acc.push((first, first));
        go(rest, acc, out);
        acc.pop();
        for (k, &other) in rest.iter().enumerate() {
            let remaining: Vec<usize> = rest
                .iter()
                .enumerate()
                .filter(|&(j, _)| j != k)
                .map(|(_, &v)| v)
                .collect();
            acc.push((first, other));
            acc.push((other, first));
            go(&remaining, acc, out);
            acc.pop();
            acc.pop();
        }
    }
    let mut pairs = Vec::new();
    go(items, &mut Vec::new(), &mut pairs);
    pairs
        .into_iter()
        .map(|p| {
            items
                .iter()
                .map(|x| p.iter().find(|(a, _)| a == x).expect("covered").1)
                .collect()
        })
        .collect()
}
