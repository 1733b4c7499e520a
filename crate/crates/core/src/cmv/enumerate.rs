//! CMV-algebras of a given size up to isomorphism.
//!
//! For each MV-algebra of the size and each candidate identity `i`, the
//! columns `μ_y = (· ◇ y)` are drawn from the endomorphisms `e` with
//! `e(i) = y`, and only the combinations satisfying the monoid laws are
//! validated.

use serde::Serialize;

use super::{cmv_isomorphism, endo_monoid, FiniteCmvAlgebra};
use crate::error::{Error, Result};
use crate::mv::{mv_catalog, search_mv_tables, FiniteMvAlgebra};
use crate::par::Config;

#[derive(Clone, Debug, Serialize)]
pub struct CmvEnumeration {
    pub size: usize,
    /// Number of MV-algebras of this size that were searched.
    pub mv_algebras: usize,
    /// Candidate `◇` tables assembled from endomorphism columns.
    pub candidates: u64,
    #[serde(skip)]
    pub algebras: Vec<FiniteCmvAlgebra>,
    /// Set when `size == 1`; the trivial algebra is kept apart from the
    /// nontrivial ones.
    pub trivial: bool,
}

pub fn enumerate_cmv(size: usize, cfg: &Config) -> Result<CmvEnumeration> {
    if size == 0 {
        return Err(Error::InvalidArgument("size must be positive".into()));
    }
    if size > cfg.max_enum_size {
        return Err(Error::SizeBound {
            what: "CMV enumeration",
            needed: size as u128,
            limit: cfg.max_enum_size as u128,
        });
    }
    let mvs = if size <= 4 {
        search_mv_tables(size, cfg)?
    } else {
        mv_catalog(size, cfg)?
    };
    let mut out = CmvEnumeration {
        size,
        mv_algebras: mvs.len(),
        candidates: 0,
        algebras: Vec::new(),
        trivial: size == 1,
    };
    if size == 1 {
        return Ok(out);
    }
    for mv in &mvs {
        let (found, candidates) = enumerate_cmv_over(mv, cfg)?;
        out.candidates += candidates;
        for a in found {
            if !out
                .algebras
                .iter()
                .any(|b| cmv_isomorphism(b, &a, cfg).is_some())
            {
                out.algebras.push(a);
            }
        }
    }
    Ok(out)
}

/// Every nontrivial CMV structure on `mv`, without deduplication, plus the
/// number of candidate tables examined.
pub fn enumerate_cmv_over(mv: &FiniteMvAlgebra, cfg: &Config) -> Result<(Vec<FiniteCmvAlgebra>, u64)> {
    let n = mv.size();
    let e = endo_monoid(mv, cfg)?;
    let mut found = Vec::new();
    let mut total = 0u64;
    for i in 0..n {
        if !(mv.lt(mv.zero(), i) && mv.lt(i, mv.one())) || mv.neg(i) == i {
            continue;
        }
        let choices: Vec<Vec<usize>> = (0..n)
            .map(|y| {
                (0..e.len())
                    .filter(|&k| e.maps()[k][i] == y && (y != i || k == e.identity()))
                    .collect()
            })
            .collect();
        if choices.iter().any(Vec::is_empty) {
            continue;
        }
        let count = choices
            .iter()
            .try_fold(1u64, |acc, c| acc.checked_mul(c.len() as u64))
            .filter(|&c| c <= cfg.max_search_nodes)
            .ok_or(Error::SizeBound {
                what: "CMV candidate columns",
                needed: u128::MAX,
                limit: cfg.max_search_nodes as u128,
            })?;
        total += count;
        let decode = |mut code: u64| -> Vec<usize> {
            choices
                .iter()
                .map(|c| {
                    let k = c[(code % c.len() as u64) as usize];
                    code /= c.len() as u64;
                    k
                })
                .collect()
        };
        // μ_{y◇z} = μ_y ⊡ μ_z, i.e. column μ_z(y) is μ_y followed by μ_z
        let assoc = |cols: &[usize]| {
            (0..n).all(|y| {
                (0..n).all(|z| {
                    let yz = e.maps()[cols[z]][y];
                    cols[yz] == e.compose_box(cols[y], cols[z])
                })
            })
        };
        let good = cfg
            .exec
            .filter(count as usize, |code| assoc(&decode(code as u64)));
        for code in good {
            let cols = decode(code as u64);
            let diamond: Vec<Vec<usize>> = (0..n)
                .map(|x| (0..n).map(|y| e.maps()[cols[y]][x]).collect())
                .collect();
            if let Ok(a) = FiniteCmvAlgebra::validate_with(mv.clone(), diamond, i, cfg.exec) {
                found.push(a);
            }
        }
    }
    Ok((found, total))
}

/// Exhaustive search over raw `◇` tables on `mv`. Rows of `0`, `1`, `i`
/// and `i*` are forced by the laws; the remaining rows are enumerated in
/// pairs `{x, x*}` since row `x*` is the negation of row `x`. Returns the
/// valid tables found and the number of tables tried.
pub fn search_raw_cmv_tables(mv: &FiniteMvAlgebra, cfg: &Config) -> Result<(Vec<FiniteCmvAlgebra>, u64)> {
    let n = mv.size();
    let mut found = Vec::new();
    let mut tried = 0u64;
    for i in 0..n {
        let mut rows: Vec<Option<Vec<usize>>> = vec![None; n];
        let mut conflict = false;
        let mut fix = |rows: &mut Vec<Option<Vec<usize>>>, x: usize, r: Vec<usize>| match &rows[x] {
            Some(old) if *old != r => conflict = true,
            _ => rows[x] = Some(r),
        };
        fix(&mut rows, mv.zero(), vec![mv.zero(); n]);
        fix(&mut rows, mv.one(), vec![mv.one(); n]);
        fix(&mut rows, i, (0..n).collect());
        fix(&mut rows, mv.neg(i), (0..n).map(|y| mv.neg(y)).collect());
        if conflict {
            continue;
        }
        let free: Vec<usize> = (0..n)
            .filter(|&x| rows[x].is_none() && x <= mv.neg(x))
            .collect();
        let per_row = (n as u64).checked_pow(n as u32);
        let count = per_row
            .and_then(|p| p.checked_pow(free.len() as u32))
            .filter(|&c| c <= cfg.max_search_nodes)
            .ok_or(Error::SizeBound {
                what: "raw CMV table search",
                needed: u128::MAX,
                limit: cfg.max_search_nodes as u128,
            })?;
        tried += count;
        let per_row = per_row.expect("checked above");
        let build = |mut code: u64| -> Vec<Vec<usize>> {
            let mut table = rows.clone();
            for &x in &free {
                let mut row_code = code % per_row;
                code /= per_row;
                let row: Vec<usize> = (0..n)
                    .map(|_| {
                        let v = (row_code % n as u64) as usize;
                        row_code /= n as u64;
                        v
                    })
                    .collect();
                table[mv.neg(x)] = Some(row.iter().map(|&v| mv.neg(v)).collect());
                table[x] = Some(row);
            }
            table.into_iter().map(|r| r.expect("every row fixed")).collect()
        };
        let good = cfg.exec.filter(count as usize, |code| {
            FiniteCmvAlgebra::validate_with(mv.clone(), build(code as u64), i, crate::par::Exec::Sequential)
                .is_ok()
        });
        for code in good {
            found.push(FiniteCmvAlgebra::validate(mv.clone(), build(code as u64), i)?);
        }
    }
    Ok((found, tried))
}
