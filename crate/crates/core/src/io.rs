//! File formats: algebra JSON, module JSON and TSV plots.
//!
//! ```json
//! {"kind": "mv", "size": 3, "names": ["0", "1/2", "1"], "zero": 0,
//!  "neg": [2, 1, 0], "oplus": [[0, 1, 2], [1, 2, 2], [2, 2, 2]]}
//! ```
//!
//! A `"cmv"` file adds `"diamond"` and `"i"`. Algebras of self-maps may
//! carry `"functions"`, the index tuple of each element.

use serde::{Deserialize, Serialize};

use crate::cmv::{CmvTables, FiniteCmvAlgebra, FunctionCmv};
use crate::error::{Error, Result};
use crate::modules::ModuleAction;
use crate::mv::{FiniteMvAlgebra, MvTables};
use crate::par::Exec;
use crate::pwl::PwlFunction;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum AlgebraKind {
    Mv,
    Cmv,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraJson {
    pub kind: AlgebraKind,
    pub size: usize,
    #[serde(default)]
    pub names: Vec<String>,
    pub zero: usize,
    pub neg: Vec<usize>,
    pub oplus: Vec<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub diamond: Option<Vec<Vec<usize>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub i: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub functions: Option<Vec<Vec<usize>>>,
}

/// A validated algebra read from a file.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Algebra {
    Mv(FiniteMvAlgebra),
    Cmv(FiniteCmvAlgebra),
}

impl Algebra {
    pub fn mv(&self) -> &FiniteMvAlgebra {
        match self {
            Algebra::Mv(m) => m,
            Algebra::Cmv(a) => a.mv(),
        }
    }

    pub fn cmv(&self) -> Option<&FiniteCmvAlgebra> {
        match self {
            Algebra::Mv(_) => None,
            Algebra::Cmv(a) => Some(a),
        }
    }
}

impl AlgebraJson {
    pub fn from_mv(m: &FiniteMvAlgebra) -> Self {
        let t = m.tables();
        AlgebraJson {
            kind: AlgebraKind::Mv,
            size: m.size(),
            names: t.names,
            zero: t.zero,
            neg: t.neg,
            oplus: t.oplus,
            diamond: None,
            i: None,
            functions: None,
        }
    }

    pub fn from_cmv(a: &FiniteCmvAlgebra) -> Self {
        let t = a.tables();
        AlgebraJson {
            kind: AlgebraKind::Cmv,
            diamond: Some(t.diamond),
            i: Some(t.i),
            ..AlgebraJson::from_mv(a.mv())
        }
    }

    pub fn from_functions(f: &FunctionCmv) -> Self {
        AlgebraJson {
            functions: Some(f.functions().to_vec()),
            ..AlgebraJson::from_cmv(f.algebra())
        }
    }

    pub fn from_algebra(a: &Algebra) -> Self {
        match a {
            Algebra::Mv(m) => Self::from_mv(m),
            Algebra::Cmv(c) => Self::from_cmv(c),
        }
    }

    fn mv_tables(&self) -> Result<MvTables> {
        if self.neg.len() != self.size || self.oplus.len() != self.size {
            return Err(Error::Malformed(format!(
                "declared size {} does not match the tables",
                self.size
            )));
        }
        Ok(MvTables {
            names: self.names.clone(),
            zero: self.zero,
            neg: self.neg.clone(),
            oplus: self.oplus.clone(),
        })
    }

    /// Validates every axiom; the error carries the first violation.
    pub fn validate(&self, exec: Exec) -> Result<Algebra> {
        let mv = FiniteMvAlgebra::validate_with(self.mv_tables()?, exec)?;
        match self.kind {
            AlgebraKind::Mv => {
                if self.diamond.is_some() || self.i.is_some() {
                    return Err(Error::Malformed("an mv file has no diamond or i".into()));
                }
                Ok(Algebra::Mv(mv))
            }
            AlgebraKind::Cmv => {
                let (Some(diamond), Some(i)) = (self.diamond.clone(), self.i) else {
                    return Err(Error::Malformed("a cmv file needs diamond and i".into()));
                };
                Ok(Algebra::Cmv(FiniteCmvAlgebra::validate_with(mv, diamond, i, exec)?))
            }
        }
    }

    pub fn cmv_tables(&self) -> Result<CmvTables> {
        let (Some(diamond), Some(i)) = (self.diamond.clone(), self.i) else {
            return Err(Error::Malformed("a cmv file needs diamond and i".into()));
        };
        Ok(CmvTables {
            mv: self.mv_tables()?,
            diamond,
            i,
        })
    }
}

pub fn parse_algebra_json(text: &str) -> Result<AlgebraJson> {
    Ok(serde_json::from_str(text)?)
}

/// Parses and validates.
pub fn read_algebra(text: &str) -> Result<Algebra> {
    parse_algebra_json(text)?.validate(Exec::default())
}

pub fn write_algebra(a: &Algebra) -> String {
    serde_json::to_string_pretty(&AlgebraJson::from_algebra(a)).expect("plain data serializes")
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModuleJson {
    pub scalars: AlgebraJson,
    pub carrier: AlgebraJson,
    pub action: Vec<Vec<usize>>,
}

impl ModuleJson {
    pub fn from_action(m: &ModuleAction) -> Self {
        ModuleJson {
            scalars: AlgebraJson::from_cmv(m.scalars()),
            carrier: AlgebraJson::from_mv(m.carrier()),
            action: m.table(),
        }
    }

    /// Validates both algebras and the table shape; the module laws are
    /// left to `validate_module`.
    pub fn into_action(self) -> Result<ModuleAction> {
        let Algebra::Cmv(scalars) = self.scalars.validate(Exec::default())? else {
            return Err(Error::Malformed("module scalars must be a cmv algebra".into()));
        };
        let carrier = self.carrier.validate(Exec::default())?.mv().clone();
        ModuleAction::new(scalars, carrier, self.action)
    }
}

pub fn read_module(text: &str) -> Result<ModuleAction> {
    serde_json::from_str::<ModuleJson>(text)?.into_action()
}

pub fn read_pwl(text: &str) -> Result<PwlFunction> {
    Ok(serde_json::from_str(text)?)
}

/// `x`, `y`, then decimal renderings, one sample per row.
pub fn plot_tsv(f: &PwlFunction, resolution: u32) -> String {
    let mut out = String::from("x\ty\tx_decimal\ty_decimal\n");
    for (x, y) in f.samples(resolution) {
        out.push_str(&format!(
            "{x}\t{y}\t{}\t{}\n",
            x.to_decimal_string(6),
            y.to_decimal_string(6)
        ));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cmv::function_cmv;
    use crate::modules::reduct_module;
    use crate::mv::lukasiewicz_chain;
    use crate::par::Config;

    #[test]
    fn chain_file_round_trips() {
        let l3 = lukasiewicz_chain(2).unwrap();
        let text = write_algebra(&Algebra::Mv(l3.clone()));
        assert!(text.contains("\"kind\": \"mv\""));
        assert_eq!(read_algebra(&text).unwrap(), Algebra::Mv(l3));
    }

    #[test]
    fn documented_example_parses() {
        let text = r#"{"kind":"mv","size":3,"names":["0","1/2","1"],"zero":0,
            "neg":[2,1,0],"oplus":[[0,1,2],[1,2,2],[2,2,2]]}"#;
        let a = read_algebra(text).unwrap();
        assert_eq!(a.mv(), &lukasiewicz_chain(2).unwrap());
    }

    #[test]
    fn cmv_and_module_round_trip() {
        let f = function_cmv(&lukasiewicz_chain(1).unwrap(), &Config::default()).unwrap();
        let j = AlgebraJson::from_functions(&f);
        assert_eq!(j.functions.as_ref().unwrap().len(), 4);
        let text = serde_json::to_string(&j).unwrap();
        let back = read_algebra(&text).unwrap();
        assert_eq!(back.cmv(), Some(f.algebra()));

        let m = reduct_module(f.algebra());
        let text = serde_json::to_string(&ModuleJson::from_action(&m)).unwrap();
        assert_eq!(read_module(&text).unwrap(), m);
    }

    #[test]
    fn bad_files() {
        let broken = r#"{"kind":"mv","size":2,"zero":0,"neg":[1,0],"oplus":[[0,1],[1,0]]}"#;
        assert!(matches!(read_algebra(broken), Err(Error::MvAxiom { .. })));
        let short = r#"{"kind":"mv","size":3,"zero":0,"neg":[1,0],"oplus":[[0,1],[1,1]]}"#;
        assert!(matches!(read_algebra(short), Err(Error::Malformed(_))));
        let missing = r#"{"kind":"cmv","size":2,"zero":0,"neg":[1,0],"oplus":[[0,1],[1,1]]}"#;
        assert!(matches!(read_algebra(missing), Err(Error::Malformed(_))));
        assert!(matches!(read_algebra("{"), Err(Error::Json(_))));
        let extra = r#"{"kind":"mv","size":2,"zero":0,"neg":[1,0],"oplus":[[0,1],[1,1]],"x":1}"#;
        assert!(read_algebra(extra).is_err());
    }

    #[test]
    fn tsv_plot() {
        let t = plot_tsv(&PwlFunction::identity(), 4);
        let lines: Vec<&str> = t.lines().collect();
        assert_eq!(lines.len(), 6);
        assert_eq!(lines[3], "1/2\t1/2\t0.500000\t0.500000");
    }
}
