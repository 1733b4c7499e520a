//! Hilbert-style derivations and their checker.
//!
//! Script syntax, one step per line (blank lines and `#` comments ignored):
//!
//! ```text
//! 1. v -> (v -> v)            ; AX1 {phi=v, psi=v}
//! 2. (v -> (v -> v)) <| !v    ; SUB 1 !v
//! 3. ...                      ; ARR 1 !v
//! 4. ...                      ; MP 1 3
//! ```
//!
//! `MP i j` needs step `j` to be `step i -> this`; step references are
//! 1-based and must point backwards.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::{format_formula, instantiate, match_axiom, parse_formula, AxiomId, Bindings, Formula};
use crate::error::{Error, Result};
use crate::sample::Sampler;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Justification {
    /// `None` bindings are allowed only when binding inference is enabled.
    Axiom(AxiomId, Option<Bindings>),
    Mp(usize, usize),
    Sub(usize, Formula),
    Arr(usize, Formula),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Step {
    pub formula: Formula,
    pub by: Justification,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Proof {
    pub steps: Vec<Step>,
}

impl fmt::Display for Justification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Justification::Axiom(id, None) => write!(f, "AX{}", id.number()),
            Justification::Axiom(id, Some(b)) => {
                write!(f, "AX{} {{", id.number())?;
                for (k, (m, phi)) in b.iter().enumerate() {
                    if k > 0 {
                        f.write_str(", ")?;
                    }
                    write!(f, "{}={phi}", m.name())?;
                }
                f.write_str("}")
            }
            Justification::Mp(i, j) => write!(f, "MP {i} {j}"),
            Justification::Sub(i, b) => write!(f, "SUB {i} {b}"),
            Justification::Arr(i, b) => write!(f, "ARR {i} {b}"),
        }
    }
}

impl fmt::Display for Proof {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, s) in self.steps.iter().enumerate() {
            writeln!(f, "{}. {} ; {}", k + 1, s.formula, s.by)?;
        }
        Ok(())
    }
}

fn line_error(line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        position: line,
        message: format!("line {line}: {}", message.into()),
    }
}

fn formula_at(line: usize, text: &str) -> Result<Formula> {
    parse_formula(text).map_err(|e| match e {
        Error::Parse { position, message } => {
            line_error(line, format!("{message} at column {position} of {text:?}"))
        }
        other => other,
    })
}

fn parse_index(line: usize, s: Option<&str>) -> Result<usize> {
    let s = s.ok_or_else(|| line_error(line, "missing step number"))?;
    s.parse()
        .map_err(|_| line_error(line, format!("bad step number {s:?}")))
}

fn parse_justification(line: usize, text: &str) -> Result<Justification> {
    let text = text.trim();
    let (head, rest) = text.split_once(char::is_whitespace).unwrap_or((text, ""));
    let rest = rest.trim();
    let upper = head.to_ascii_uppercase();
    if let Some(n) = upper.strip_prefix("AX") {
        let n: u8 = n
            .parse()
            .map_err(|_| line_error(line, format!("bad axiom name {head:?}")))?;
        let id = AxiomId::new(n).map_err(|e| line_error(line, e.to_string()))?;
        if rest.is_empty() {
            return Ok(Justification::Axiom(id, None));
        }
        let inner = rest
            .strip_prefix('{')
            .and_then(|r| r.strip_suffix('}'))
            .ok_or_else(|| line_error(line, "bindings must be written {name=formula, ...}"))?;
        let mut b = Bindings::new();
        for part in inner.split(',').filter(|p| !p.trim().is_empty()) {
            let (name, value) = part
                .split_once('=')
                .ok_or_else(|| line_error(line, format!("binding {part:?} has no '='")))?;
            let m = name.trim().parse().map_err(|e: Error| line_error(line, e.to_string()))?;
            if b.insert(m, formula_at(line, value)?).is_some() {
                return Err(line_error(line, format!("{} bound twice", name.trim())));
            }
        }
        return Ok(Justification::Axiom(id, Some(b)));
    }
    let mut words = rest.splitn(2, char::is_whitespace);
    match upper.as_str() {
        "MP" => {
            let i = parse_index(line, words.next())?;
            let j = parse_index(line, words.next())?;
            Ok(Justification::Mp(i, j))
        }
        "SUB" | "ARR" => {
            let i = parse_index(line, words.next())?;
            let beta = formula_at(line, words.next().unwrap_or(""))?;
            Ok(if upper == "SUB" {
                Justification::Sub(i, beta)
            } else {
                Justification::Arr(i, beta)
            })
        }
        _ => Err(line_error(line, format!("unknown rule {head:?}"))),
    }
}

/// Parses a line-oriented proof script.
pub fn parse_proof(text: &str) -> Result<Proof> {
    let mut steps = Vec::new();
    for (k, raw) in text.lines().enumerate() {
        let line = k + 1;
        let content = raw.trim();
        if content.is_empty() || content.starts_with('#') {
            continue;
        }
        let (num, rest) = content
            .split_once('.')
            .ok_or_else(|| line_error(line, "expected 'k. formula ; justification'"))?;
        let num: usize = num
            .trim()
            .parse()
            .map_err(|_| line_error(line, format!("bad step number {:?}", num.trim())))?;
        if num != steps.len() + 1 {
            return Err(line_error(line, format!("expected step {}, found {num}", steps.len() + 1)));
        }
        let (formula, just) = rest
            .split_once(';')
            .ok_or_else(|| line_error(line, "missing ';' before the justification"))?;
        steps.push(Step {
            formula: formula_at(line, formula)?,
            by: parse_justification(line, just)?,
        });
    }
    Ok(Proof { steps })
}

#[derive(Deserialize)]
struct ProofJson {
    steps: Vec<StepJson>,
}

#[derive(Deserialize)]
struct StepJson {
    formula: String,
    #[serde(flatten)]
    by: ByJson,
}

#[derive(Deserialize)]
#[serde(tag = "by", rename_all = "lowercase")]
enum ByJson {
    Axiom {
        axiom: AxiomId,
        #[serde(default)]
        bindings: Option<BTreeMap<String, String>>,
    },
    Mp {
        premise: usize,
        implication: usize,
    },
    Sub {
        premise: usize,
        with: String,
    },
    Arr {
        premise: usize,
        with: String,
    },
}

/// Parses the JSON form: `{"steps":[{"formula":"...","by":"axiom","axiom":1,
/// "bindings":{"phi":"v"}}, {"formula":"...","by":"mp","premise":1,
/// "implication":2}, {"by":"sub"|"arr","premise":1,"with":"!v", ...}]}`.
pub fn parse_proof_json(text: &str) -> Result<Proof> {
    let raw: ProofJson = serde_json::from_str(text)?;
    let mut steps = Vec::new();
    for (k, s) in raw.steps.into_iter().enumerate() {
        let line = k + 1;
        let by = match s.by {
            ByJson::Axiom { axiom, bindings } => {
                let b = bindings
                    .map(|m| {
                        m.into_iter()
                            .map(|(name, value)| {
                                let mv = name.parse().map_err(|e: Error| line_error(line, e.to_string()))?;
                                Ok((mv, formula_at(line, &value)?))
                            })
                            .collect::<Result<Bindings>>()
                    })
                    .transpose()?;
                Justification::Axiom(axiom, b)
            }
            ByJson::Mp { premise, implication } => Justification::Mp(premise, implication),
            ByJson::Sub { premise, with } => Justification::Sub(premise, formula_at(line, &with)?),
            ByJson::Arr { premise, with } => Justification::Arr(premise, formula_at(line, &with)?),
        };
        steps.push(Step {
            formula: formula_at(line, &s.formula)?,
            by,
        });
    }
    Ok(Proof { steps })
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum BindingMode {
    /// Axiom steps must state their bindings.
    #[default]
    Strict,
    /// Missing bindings are found with the axiom matcher.
    Infer,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Verdict {
    pub accepted: bool,
    pub steps: usize,
    /// 1-based step at which checking stopped.
    pub failed_step: Option<usize>,
    pub reason: Option<String>,
    pub conclusion: Option<String>,
}

fn check_step(proof: &Proof, k: usize, mode: BindingMode) -> std::result::Result<(), String> {
    let step = &proof.steps[k];
    let earlier = |i: usize| -> std::result::Result<&Formula, String> {
        if i == 0 || i > k {
            return Err(format!("step {i} is not an earlier step"));
        }
        Ok(&proof.steps[i - 1].formula)
    };
    let here = &step.formula;
    match &step.by {
        Justification::Axiom(id, Some(b)) => {
            let inst = instantiate(*id, b).map_err(|e| e.to_string())?;
            if &inst != here {
                return Err(format!(
                    "{id} with the given bindings is {}, not {}",
                    format_formula(&inst),
                    format_formula(here)
                ));
            }
        }
        Justification::Axiom(id, None) => {
            if mode == BindingMode::Strict {
                return Err(format!("{id} step has no bindings"));
            }
            if !match_axiom(here).iter().any(|(j, _)| j == id) {
                return Err(format!("{} is not an instance of {id}", format_formula(here)));
            }
        }
        Justification::Mp(i, j) => {
            let a = earlier(*i)?;
            let imp = earlier(*j)?;
            let want = Formula::imp(a.clone(), here.clone());
            if *imp != want {
                return Err(format!(
                    "step {j} is {}, expected {}",
                    format_formula(imp),
                    format_formula(&want)
                ));
            }
        }
        Justification::Sub(i, beta) => {
            let want = Formula::subst(earlier(*i)?.clone(), beta.clone());
            if *here != want {
                return Err(format!("substitution rule gives {}", format_formula(&want)));
            }
        }
        Justification::Arr(i, beta) => {
            let a = earlier(*i)?.clone();
            let want = Formula::imp(a.clone(), Formula::subst(a, beta.clone()));
            if *here != want {
                return Err(format!("arrow rule gives {}", format_formula(&want)));
            }
        }
    }
    Ok(())
}

/// Checks every step in order and stops at the first failure. Acceptance
/// means the last formula is a theorem.
pub fn check_proof(proof: &Proof, mode: BindingMode) -> Verdict {
    let n = proof.steps.len();
    if n == 0 {
        return Verdict {
            accepted: false,
            steps: 0,
            failed_step: None,
            reason: Some("empty proof".into()),
            conclusion: None,
        };
    }
    for k in 0..n {
        if let Err(reason) = check_step(proof, k, mode) {
            return Verdict {
                accepted: false,
                steps: n,
                failed_step: Some(k + 1),
                reason: Some(reason),
                conclusion: None,
            };
        }
    }
    Verdict {
        accepted: true,
        steps: n,
        failed_step: None,
        reason: None,
        conclusion: Some(format_formula(&proof.steps[n - 1].formula)),
    }
}

const BUNDLED: [(&str, &str); 5] = [
    ("substitution_rules", include_str!("../../proofs/substitution_rules.prf")),
    ("identity", include_str!("../../proofs/identity.prf")),
    ("arrow_then_mp", include_str!("../../proofs/arrow_then_mp.prf")),
    ("distribute", include_str!("../../proofs/distribute.prf")),
    ("negation", include_str!("../../proofs/negation.prf")),
];

/// The sample derivations shipped with the crate, by name.
pub fn bundled_proofs() -> Vec<(&'static str, Proof)> {
    BUNDLED
        .iter()
        .map(|&(name, text)| (name, parse_proof(text).expect("bundled proofs parse")))
        .collect()
}

/// A one-token edit of one step's formula.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Corruption {
    pub step: usize,
    pub original: String,
    pub corrupted: String,
}

/// Edits a single token in the text of one step's formula: swaps `->` and
/// `<|`, deletes a `!`, or inserts a `!` before a `v`. Retries until the
/// edit parses to a different formula.
pub fn corrupt_proof(proof: &Proof, sampler: &mut Sampler) -> Option<(Proof, Corruption)> {
    if proof.steps.is_empty() {
        return None;
    }
    for _ in 0..1000 {
        let k = sampler.below(proof.steps.len());
        let text = format_formula(&proof.steps[k].formula);
        let sites: Vec<(usize, &str)> = text
            .match_indices("->")
            .chain(text.match_indices("<|"))
            .chain(text.match_indices('!'))
            .chain(text.match_indices('v'))
            .collect();
        let (at, tok) = sites[sampler.below(sites.len())];
        let edited = match tok {
            "->" => format!("{}<|{}", &text[..at], &text[at + 2..]),
            "<|" => format!("{}->{}", &text[..at], &text[at + 2..]),
            "!" => format!("{}{}", &text[..at], &text[at + 1..]),
            _ => format!("{}!{}", &text[..at], &text[at..]),
        };
        let Ok(phi) = parse_formula(&edited) else { continue };
        if phi == proof.steps[k].formula {
            continue;
        }
        let mut out = proof.clone();
        out.steps[k].formula = phi;
        return Some((
            out,
            Corruption {
                step: k + 1,
                original: text,
                corrupted: edited,
            },
        ));
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bundled_proofs_accepted() {
        for (name, p) in bundled_proofs() {
            let v = check_proof(&p, BindingMode::Strict);
            assert!(v.accepted, "{name}: {v:?}");
        }
    }

    #[test]
    fn three_step_example() {
        let (_, p) = &bundled_proofs()[0];
        assert_eq!(p.steps.len(), 3);
        let mut bad = p.clone();
        bad.steps[1].formula = parse_formula("(v -> (v -> v)) <| v").unwrap();
        let v = check_proof(&bad, BindingMode::Strict);
        assert!(!v.accepted);
        assert_eq!(v.failed_step, Some(2));
    }

    #[test]
    fn script_round_trip() {
        for (_, p) in bundled_proofs() {
            assert_eq!(parse_proof(&p.to_string()).unwrap(), p);
        }
    }

    #[test]
    fn json_form() {
        let json = r#"{"steps":[
            {"formula":"v -> (v -> v)","by":"axiom","axiom":1,"bindings":{"phi":"v","psi":"v"}},
            {"formula":"(v -> (v -> v)) <| !v","by":"sub","premise":1,"with":"!v"},
            {"formula":"(v -> (v -> v)) -> ((v -> (v -> v)) <| !v)","by":"arr","premise":1,"with":"!v"}
        ]}"#;
        let p = parse_proof_json(json).unwrap();
        assert_eq!(p, bundled_proofs()[0].1);
    }

    #[test]
    fn binding_modes() {
        let p = parse_proof("1. v -> (v -> v) ; AX1").unwrap();
        assert!(!check_proof(&p, BindingMode::Strict).accepted);
        assert!(check_proof(&p, BindingMode::Infer).accepted);
        let p = parse_proof("1. v -> v ; AX1").unwrap();
        assert!(!check_proof(&p, BindingMode::Infer).accepted);
    }

    #[test]
    fn dangling_and_malformed() {
        let p = parse_proof("1. v -> v ; MP 1 2").unwrap();
        let v = check_proof(&p, BindingMode::Strict);
        assert_eq!(v.failed_step, Some(1));
        assert!(parse_proof("2. v ; AX1").is_err());
        assert!(parse_proof("1. v -> ; AX1").is_err());
        assert!(parse_proof("1. v ; FOO 1").is_err());
        assert!(parse_proof("1. v ; AX1 {phi=v, phi=v}").is_err());
        assert!(!check_proof(&Proof::default(), BindingMode::Strict).accepted);
    }

    #[test]
    fn corruptions_rejected_at_the_edit() {
        let mut s = Sampler::new(5);
        for (_, p) in bundled_proofs() {
            for _ in 0..10 {
                let (bad, c) = corrupt_proof(&p, &mut s).unwrap();
                let v = check_proof(&bad, BindingMode::Strict);
                assert_eq!(v.failed_step, Some(c.step), "{c:?}");
            }
        }
    }
}
