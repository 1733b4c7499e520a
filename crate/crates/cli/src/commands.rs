//! One handler per subcommand. Each parses its inputs, calls into cmvkit
//! and shapes the result as text and JSON.

use std::fmt::Write as _;

use serde_json::{json, Value};

use cmvkit::cmv::{endo_monoid, enumerate_cmv, function_cmv, restricted_function_cmv, search_raw_cmv_tables, tilde_closure, FiniteCmvAlgebra};
use cmvkit::io::{parse_algebra_json, plot_tsv, read_module, AlgebraJson};
use cmvkit::logic::{
    check_proof, evaluate, format_formula, is_tautology, lindenbaum_check, match_axiom, parse_proof,
    parse_proof_json, semantic_equiv, BindingMode, Formula,
};
use cmvkit::modules::{
    admits_a4_module, check_m1_module, constants_module, evaluation_module, m1c_action, power_module,
    reduct_module, restrict_scalars, validate_module, ModuleAction,
};
use cmvkit::mv::{search_mv_tables, FiniteMvAlgebra};
use cmvkit::pwl::{closure_properties_check, McNaughton, PwlFunction, PwlIdeal, PwlOp};
use cmvkit::structure::{
    classify_mv_ideals, classify_subset, enumerate_cmv_ideals, ideal_image_report, is_simple_cmv, quotient_cmv,
    stabilizer_and_annihilator, verify_zero_lemmas,
};
use cmvkit::{Config, Error, Rational, Subset};

use crate::input::{self, usage, CliError, Loaded};
use crate::{Canonical, Cli, Cmd, LogicCmd, McnCmd, ModuleCmd, Outcome, Report};

fn done(text: String, json: Value) -> Outcome {
    Ok(Report {
        text,
        json,
        tsv: None,
        verdict: true,
    })
}

fn verdict(ok: bool, text: String, json: Value) -> Outcome {
    Ok(Report {
        text,
        json,
        tsv: None,
        verdict: ok,
    })
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn names(mv: &FiniteMvAlgebra, s: &Subset) -> String {
    let v: Vec<&str> = s.iter().map(|x| mv.name(x)).collect();
    format!("{{{}}}", v.join(", "))
}

fn to_value<T: serde::Serialize>(t: &T) -> Value {
    serde_json::to_value(t).expect("report types serialize")
}

fn grid(out: &mut String, label: &str, j: &AlgebraJson, rows: &[Vec<usize>]) {
    let name = |k: usize| j.names.get(k).cloned().unwrap_or_else(|| k.to_string());
    let w = (0..j.size).map(|k| name(k).chars().count()).max().unwrap_or(1).max(label.chars().count());
    let _ = write!(out, "{label:>w$} |");
    for k in 0..j.size {
        let _ = write!(out, " {:>w$}", name(k));
    }
    out.push('\n');
    for (r, row) in rows.iter().enumerate() {
        let _ = write!(out, "{:>w$} |", name(r));
        for &v in row {
            let _ = write!(out, " {:>w$}", name(v));
        }
        out.push('\n');
    }
}

fn algebra_text(j: &AlgebraJson) -> String {
    let mut out = format!("{:?} algebra, {} elements\n", j.kind, j.size).to_lowercase();
    let name = |k: usize| j.names.get(k).cloned().unwrap_or_else(|| k.to_string());
    let negs: Vec<String> = (0..j.size).map(|k| format!("{}* = {}", name(k), name(j.neg[k]))).collect();
    let _ = writeln!(out, "{}", negs.join(", "));
    grid(&mut out, "+", j, &j.oplus);
    if let (Some(d), Some(i)) = (&j.diamond, j.i) {
        let _ = writeln!(out, "i = {}", name(i));
        grid(&mut out, "<>", j, d);
    }
    out
}

fn show_algebra(j: AlgebraJson) -> Outcome {
    done(algebra_text(&j), to_value(&j))
}

pub fn run(cli: &Cli, cfg: &Config) -> Outcome {
    match &cli.cmd {
        Cmd::Validate { source } => validate(source, cfg),
        Cmd::Chain { n } => match input::load(&format!("chain:{n}"), cfg)? {
            Loaded::Mv(m) => show_algebra(AlgebraJson::from_mv(&m)),
            _ => unreachable!("chain sources load as MV-algebras"),
        },
        Cmd::Funcalg { base, preserve } => {
            let m = input::load(base, cfg)?.mv().clone();
            let f = match preserve {
                None => function_cmv(&m, cfg)?,
                Some(p) => restricted_function_cmv(&m, &input::subset(p, m.size())?, cfg)?,
            };
            show_algebra(AlgebraJson::from_functions(&f))
        }
        Cmd::Tilde { base } => {
            let m = input::load(base, cfg)?.mv().clone();
            let t = tilde_closure(&m, cfg)?;
            let full = (m.size() as u128).checked_pow(m.size() as u32);
            let is_full = full == Some(t.algebra().size() as u128);
            let mut text = format!(
                "tilde closure: {} of the {} self-maps\n",
                t.algebra().size(),
                full.map_or("many".to_string(), |n| n.to_string())
            );
            let _ = writeln!(text, "equals the full function algebra: {}", yes_no(is_full));
            done(
                text,
                json!({"size": t.algebra().size(), "full": is_full, "algebra": AlgebraJson::from_functions(&t)}),
            )
        }
        Cmd::Cayley { algebra } => cayley(algebra, cfg),
        Cmd::Endos { base } => {
            let m = input::load(base, cfg)?.mv().clone();
            let e = endo_monoid(&m, cfg)?;
            let mut text = format!("{} endomorphisms\n", e.len());
            for f in e.maps() {
                let img: Vec<&str> = f.iter().map(|&v| m.name(v)).collect();
                let _ = writeln!(text, "  [{}]", img.join(", "));
            }
            done(text, json!({"count": e.len(), "identity": e.identity(), "maps": e.maps()}))
        }
        Cmd::Enumerate { size, raw } => enumerate(*size, *raw, cfg),
        Cmd::Ideals { algebra } => {
            let l = input::load_cmv(algebra, cfg)?;
            let a = l.cmv().expect("checked by load_cmv");
            let reports = classify_mv_ideals(a, cfg)?;
            let mut text = String::from("MV-ideal                  diamond  CMV\n");
            for r in &reports {
                let _ = writeln!(
                    text,
                    "{:<25} {:<8} {}",
                    names(a.mv(), &r.subset),
                    yes_no(r.is_diamond_ideal),
                    yes_no(r.is_cmv_ideal)
                );
            }
            let cmv = reports.iter().filter(|r| r.is_cmv_ideal).count();
            let _ = writeln!(text, "{} MV-ideals, {cmv} CMV-ideals", reports.len());
            done(text, json!({"ideals": reports, "mv_ideals": reports.len(), "cmv_ideals": cmv}))
        }
        Cmd::ClassifySubset { algebra, subset } => {
            let l = input::load_cmv(algebra, cfg)?;
            let a = l.cmv().expect("checked by load_cmv");
            let s = input::subset(subset, a.size())?;
            let r = classify_subset(a, &s, cfg.exec);
            let mut text = format!(
                "{}: MV-ideal {}, diamond-ideal {}, CMV-ideal {}\n",
                names(a.mv(), &s),
                yes_no(r.is_mv_ideal),
                yes_no(r.is_diamond_ideal),
                yes_no(r.is_cmv_ideal)
            );
            if let Some(w) = &r.witness {
                let _ = writeln!(text, "fails: {w}");
            }
            verdict(r.is_cmv_ideal, text, to_value(&r))
        }
        Cmd::Quotient { algebra, ideal } => {
            let l = input::load_cmv(algebra, cfg)?;
            let a = l.cmv().expect("checked by load_cmv");
            let q = quotient_cmv(a, &input::subset(ideal, a.size())?)?;
            let j = AlgebraJson::from_cmv(&q.algebra);
            let mut text = algebra_text(&j);
            let proj: Vec<String> = q
                .projection
                .iter()
                .enumerate()
                .map(|(x, &c)| format!("{} -> {}", a.name(x), q.algebra.name(c)))
                .collect();
            let _ = writeln!(text, "projection: {}", proj.join(", "));
            done(text, json!({"algebra": j, "projection": q.projection}))
        }
        Cmd::Simple { algebra } => {
            let l = input::load_cmv(algebra, cfg)?;
            let a = l.cmv().expect("checked by load_cmv");
            let ideals = enumerate_cmv_ideals(a, cfg)?;
            let simple = is_simple_cmv(a, cfg)?;
            let text = format!("{} CMV-ideals; simple: {}\n", ideals.len(), yes_no(simple));
            verdict(simple, text, json!({"simple": simple, "cmv_ideals": ideals}))
        }
        Cmd::Stabilizer { base, b } => stabilizer(base, b, cfg),
        Cmd::Zeros { algebra } => {
            let f = input::load_functions(algebra, cfg)?;
            let z = verify_zero_lemmas(&f, cfg)?;
            let whole = Subset::full(f.algebra().size());
            let img = ideal_image_report(&f, &whole)?;
            let ok = z.holds() && img.holds();
            let text = format!(
                "{} stable subsets, {} proper diamond-ideals ({} with common zeros)\n\
                 zero-set lemmas: {}\nideal image independent of the point: {}\n",
                z.stable_subsets,
                z.proper_diamond_ideals,
                z.with_common_zeros,
                if z.holds() { "hold" } else { "fail" },
                yes_no(img.independent)
            );
            verdict(ok, text, json!({"zero_lemmas": z, "ideal_image": img}))
        }
        Cmd::Mcn { cmd } => mcn(cmd, cli, cfg),
        Cmd::Module { cmd } => module(cmd, cli, cfg),
        Cmd::Logic { cmd } => logic(cmd, cli, cfg),
    }
}

fn validate(source: &str, cfg: &Config) -> Outcome {
    let path = std::path::Path::new(source);
    if !path.exists() {
        let l = input::load(source, cfg)?;
        let j = match &l {
            Loaded::Mv(m) => AlgebraJson::from_mv(m),
            Loaded::Cmv(a) => AlgebraJson::from_cmv(a),
            Loaded::Functions(f) => AlgebraJson::from_cmv(f.algebra()),
        };
        return validated(&j, l.mv(), l.cmv());
    }
    let j = parse_algebra_json(&input::read_file(source)?)
        .map_err(|e| CliError::Usage(format!("{source}: {e}")))?;
    match j.validate(cfg.exec) {
        Ok(a) => validated(&j, a.mv(), a.cmv()),
        Err(e @ (Error::MvAxiom { .. } | Error::CmvLaw { .. } | Error::Malformed(_))) => {
            let witness = match &e {
                Error::MvAxiom { axiom, witness } => json!({"law": axiom.to_string(), "witness": witness}),
                Error::CmvLaw { law, witness } => json!({"law": law.to_string(), "witness": witness}),
                _ => Value::Null,
            };
            verdict(
                false,
                format!("{source}: invalid: {e}\n"),
                json!({"valid": false, "error": e.to_string(), "violation": witness}),
            )
        }
        Err(e) => Err(e.into()),
    }
}

fn validated(j: &AlgebraJson, mv: &FiniteMvAlgebra, cmv: Option<&FiniteCmvAlgebra>) -> Outcome {
    let mut text = format!("valid {} algebra with {} elements\n", format!("{:?}", j.kind).to_lowercase(), j.size);
    let mut out = json!({
        "valid": true,
        "kind": j.kind,
        "size": j.size,
        "boolean": mv.is_boolean(),
        "totally_ordered": mv.is_totally_ordered(),
    });
    if let Some(a) = cmv {
        let pair = a.incomparable_pair();
        out["trivial"] = json!(a.is_trivial());
        out["incomparable_pair"] = json!(pair);
        if let Some((x, y)) = pair {
            let _ = writeln!(text, "incomparable pair: {}, {}", a.name(x), a.name(y));
        }
    }
    done(text, out)
}

fn cayley(source: &str, cfg: &Config) -> Outcome {
    let l = input::load_cmv(source, cfg)?;
    let a = l.cmv().expect("checked by load_cmv");
    let e = a.cayley_embed()?;
    let target = function_cmv(a.mv(), cfg)?;
    let indices = e
        .indices_in(&target)
        .ok_or_else(|| Error::Invariant("a Cayley image is not a self-map".into()))?;
    let hom = a.is_homomorphism_to(target.algebra(), &indices);
    let injective = Subset::new(indices.iter().copied()).len() == indices.len();
    let mut text = String::new();
    for (x, img) in e.images.iter().enumerate() {
        let v: Vec<&str> = img.iter().map(|&y| a.name(y)).collect();
        let _ = writeln!(text, "{} -> [{}]", a.name(x), v.join(", "));
    }
    let _ = writeln!(text, "homomorphism: {}, injective: {}", yes_no(hom), yes_no(injective));
    verdict(
        hom && injective,
        text,
        json!({"images": e.images, "indices": indices, "homomorphism": hom, "injective": injective}),
    )
}

fn enumerate(size: usize, raw: bool, cfg: &Config) -> Outcome {
    let e = enumerate_cmv(size, cfg)?;
    let found = e.algebras.len();
    let mut text = if e.trivial {
        "size 1: only the trivial CMV-algebra\n".to_string()
    } else {
        format!(
            "size {size}: {found} nontrivial CMV-algebra{} up to isomorphism ({} MV-algebras, {} candidate tables)\n",
            if found == 1 { "" } else { "s" },
            e.mv_algebras,
            e.candidates
        )
    };
    let algebras: Vec<AlgebraJson> = e.algebras.iter().map(AlgebraJson::from_cmv).collect();
    for j in &algebras {
        text.push_str(&algebra_text(j));
    }
    let mut out = json!({
        "size": size,
        "trivial": e.trivial,
        "count": found,
        "mv_algebras": e.mv_algebras,
        "candidates": e.candidates,
        "algebras": algebras,
    });
    if raw {
        let mut rows = Vec::new();
        for mv in search_mv_tables(size, cfg)? {
            let (tables, nodes) = search_raw_cmv_tables(&mv, cfg)?;
            let _ = writeln!(text, "raw search over an MV-algebra: {} CMV tables, {nodes} nodes", tables.len());
            rows.push(json!({"tables": tables.len(), "nodes": nodes}));
        }
        out["raw"] = Value::Array(rows);
    }
    done(text, out)
}

fn stabilizer(base: &str, b: &str, cfg: &Config) -> Outcome {
    let f = input::load_functions(base, cfg)?;
    let a = f.algebra();
    let m = f.base();
    let sub = match b {
        "constants" => (0..m.size()).filter_map(|c| f.constant(c)).collect(),
        "boolean" => [m.zero(), m.one()].into_iter().filter_map(|c| f.constant(c)).collect(),
        "all" => Subset::full(a.size()),
        list => {
            let idx: Result<Vec<usize>, _> = list.split(',').map(|s| s.trim().parse::<usize>()).collect();
            let idx = idx.map_err(|_| CliError::Usage(format!("--b: expected constants, boolean, all or indices, got {list:?}")))?;
            input::subset(&idx, a.size())?
        }
    };
    let r = stabilizer_and_annihilator(a, &sub, cfg)?;
    let text = format!(
        "|B| = {}, |S_B| = {}, |J| = {}, |S_B/J| = {}\n",
        sub.len(),
        r.stabilizer.len(),
        r.annihilator.len(),
        r.quotient_size
    );
    done(
        text,
        json!({"b": sub, "report": r, "quotient": AlgebraJson::from_cmv(&r.quotient.algebra)}),
    )
}

fn rational(text: &str) -> Result<Rational, CliError> {
    let q: Rational = text
        .parse()
        .map_err(|e| CliError::Usage(format!("{text:?} is not a rational: {e}")))?;
    Ok(q)
}

fn function_report(f: &PwlFunction) -> Value {
    json!({"function": f, "text": f.to_string(), "membership": f.membership()})
}

fn mcn(cmd: &McnCmd, cli: &Cli, _cfg: &Config) -> Outcome {
    match cmd {
        McnCmd::Eval { f, at } => {
            let f = input::pwl(f)?;
            let q = rational(at)?;
            let y = f.eval(&q).map_err(|e| CliError::Usage(e.to_string()))?;
            done(format!("{y}\n"), json!({"x": q, "y": y}))
        }
        McnCmd::Op { op, f, g } => {
            let op: PwlOp = serde_json::from_value(Value::String(op.clone())).map_err(|_| {
                CliError::Usage(format!("unknown operation {op:?}; use oplus, odot, join, meet, ominus or implies"))
            })?;
            let h = PwlFunction::pointwise(op, &input::pwl(f)?, &input::pwl(g)?);
            done(format!("{h}\n"), function_report(&h))
        }
        McnCmd::Compose { f, g } => {
            let h = PwlFunction::compose(&input::pwl(f)?, &input::pwl(g)?);
            done(format!("{h}\n"), function_report(&h))
        }
        McnCmd::Member { f, ideal } => {
            let f = input::pwl(f)?;
            let class = f.membership();
            match ideal {
                None => verdict(
                    class.in_m1,
                    format!(
                        "integer slopes: {}, in M1: {}, in the rational extension: {}\n",
                        yes_no(class.integer_slopes),
                        yes_no(class.in_m1),
                        yes_no(class.in_tilde_q)
                    ),
                    to_value(&class),
                ),
                Some(i) => {
                    let i: PwlIdeal = (*i).into();
                    let inside = i.contains(&f);
                    verdict(
                        inside,
                        format!("{f} in {i:?}: {}\n", yes_no(inside)),
                        json!({"ideal": i, "member": inside}),
                    )
                }
            }
        }
        McnCmd::Plot { f, resolution } => {
            if *resolution == 0 {
                return usage("--resolution must be positive");
            }
            let f = input::pwl(f)?;
            let tsv = plot_tsv(&f, *resolution);
            let samples: Vec<Value> = f.samples(*resolution).into_iter().map(|(x, y)| json!([x, y])).collect();
            Ok(Report {
                text: tsv.clone(),
                json: json!({"function": f, "samples": samples}),
                tsv: Some(tsv),
                verdict: true,
            })
        }
        McnCmd::Closure { ideal } => {
            let r = closure_properties_check((*ideal).into(), cli.samples, cli.seed);
            let ok = r.is_cmv_ideal_on_samples();
            let rows = [
                ("downward closed", &r.downward_closed),
                ("closed under +", &r.oplus_closed),
                ("right ideal", &r.right_ideal),
                ("left compatible", &r.left_compatible),
                ("prime (sampled)", &r.prime),
            ];
            let mut text = format!("{:?}, {} samples, seed {}\n", r.ideal, r.samples, r.seed);
            for (name, c) in rows {
                let _ = writeln!(text, "  {name:<16} {}", if c.holds() { "holds" } else { "fails" });
            }
            verdict(ok, text, to_value(&r))
        }
    }
}

fn module(cmd: &ModuleCmd, cli: &Cli, cfg: &Config) -> Outcome {
    match cmd {
        ModuleCmd::A4 { base } => {
            let m = input::load(base, cfg)?.mv().clone();
            let r = admits_a4_module(&m, cfg)?;
            if !r.exhausted {
                return Err(Error::SizeBound {
                    what: "module action search",
                    needed: r.nodes as u128,
                    limit: cfg.max_search_nodes as u128,
                }
                .into());
            }
            let text = format!(
                "A4 acts on the {}-element algebra: {} (Boolean: {}, actions found: {})\n",
                r.carrier_size,
                yes_no(r.admits),
                yes_no(r.boolean),
                r.actions_found
            );
            verdict(r.admits, text, to_value(&r))
        }
        ModuleCmd::Check {
            file,
            canonical,
            algebra,
            power,
        } => {
            let m = match (file, canonical, algebra) {
                (Some(path), None, _) => {
                    read_module(&input::read_file(path)?).map_err(|e| match e {
                        Error::Invariant(_) => CliError::Lib(e),
                        other => CliError::Usage(format!("{path}: {other}")),
                    })?
                }
                (None, Some(Canonical::M1), Some(src)) => return m1_module(src, cli, cfg),
                (None, Some(kind), Some(src)) => canonical_module(*kind, src, *power, cfg)?,
                _ => return usage("module check needs a module file or --canonical with --algebra"),
            };
            let r = validate_module(&m, cfg.exec);
            let text = match &r.violation {
                None => format!(
                    "module laws hold: {} scalars, {} carrier elements, {} triples\n",
                    r.scalars, r.carrier, r.triples_checked
                ),
                Some(v) => format!("{v}\n"),
            };
            verdict(r.valid(), text, to_value(&r))
        }
    }
}

fn canonical_module(kind: Canonical, src: &str, power: usize, cfg: &Config) -> Result<ModuleAction, CliError> {
    let l = input::load(src, cfg)?;
    let Some(a) = l.cmv() else {
        return usage(format!("{src} is an MV-algebra; module scalars must be a CMV-algebra"));
    };
    Ok(match kind {
        Canonical::Reduct => reduct_module(a),
        Canonical::Evaluation => match &l {
            Loaded::Functions(f) => evaluation_module(f),
            _ => return usage(format!("{src}: the evaluation module needs an algebra of self-maps")),
        },
        Canonical::Constants => constants_module(a)?,
        Canonical::Power => power_module(&reduct_module(a), power, cfg)?,
        Canonical::Restriction => {
            let big = function_cmv(a.mv(), cfg)?;
            let h = a
                .cayley_embed()?
                .indices_in(&big)
                .ok_or_else(|| Error::Invariant("a Cayley image is not a self-map".into()))?;
            restrict_scalars(a, &h, &evaluation_module(&big))?
        }
        Canonical::M1 => unreachable!("handled by m1_module"),
    })
}

fn m1_module(src: &str, cli: &Cli, cfg: &Config) -> Outcome {
    let m = input::load(src, cfg)?.mv().clone();
    let r = check_m1_module(&m1c_action(&m), cli.samples, cli.seed);
    let mut text = format!(
        "McNaughton action on {} elements: laws {}, well defined {}, evaluation identity {}\n",
        m.size(),
        if r.laws.passed() { "hold" } else { "fail" },
        yes_no(r.well_defined.passed()),
        yes_no(r.evaluation_identity.passed())
    );
    if let Some(law) = r.first_violation {
        let _ = writeln!(text, "first violation: {law}");
    }
    verdict(r.passed(), text, to_value(&r))
}

enum Semantics {
    Finite(Box<Loaded>),
    McNaughton,
}

fn semantics(src: &str, cfg: &Config) -> Result<Semantics, CliError> {
    if src == "mcnaughton" || src == "m1" {
        return Ok(Semantics::McNaughton);
    }
    Ok(Semantics::Finite(Box::new(input::load_cmv(src, cfg)?)))
}

/// Over McNaughton functions a formula denotes one function; it is a
/// tautology when that function is constantly 1.
fn logic(cmd: &LogicCmd, cli: &Cli, cfg: &Config) -> Outcome {
    match cmd {
        LogicCmd::Eval { algebra, formula } => {
            let phi = input::formula(formula)?;
            match semantics(algebra, cfg)? {
                Semantics::McNaughton => {
                    let f = evaluate(&McNaughton, &phi);
                    done(format!("{f}\n"), function_report(&f))
                }
                Semantics::Finite(l) => {
                    let a = l.cmv().expect("checked by load_cmv");
                    let v = evaluate(a, &phi);
                    done(format!("{}\n", a.name(v)), json!({"value": v, "name": a.name(v)}))
                }
            }
        }
        LogicCmd::Taut { algebra, formula } => {
            let phi = input::formula(formula)?;
            let t = match semantics(algebra, cfg)? {
                Semantics::McNaughton => is_tautology(&McNaughton, &phi),
                Semantics::Finite(l) => is_tautology(l.cmv().expect("checked by load_cmv"), &phi),
            };
            verdict(
                t,
                format!("{}: {}\n", format_formula(&phi), if t { "tautology" } else { "not a tautology" }),
                json!({"formula": format_formula(&phi), "tautology": t}),
            )
        }
        LogicCmd::Match { formula } => {
            let phi = input::formula(formula)?;
            let hits = match_axiom(&phi);
            let mut text = String::new();
            let mut rows = Vec::new();
            for (id, b) in &hits {
                let bound: serde_json::Map<String, Value> = b
                    .iter()
                    .map(|(m, f)| (m.name().to_string(), Value::String(format_formula(f))))
                    .collect();
                let shown: Vec<String> = bound.iter().map(|(k, v)| format!("{k} = {}", v.as_str().unwrap_or(""))).collect();
                let _ = writeln!(text, "{id}: {}", shown.join(", "));
                rows.push(json!({"axiom": id.number(), "bindings": bound}));
            }
            if hits.is_empty() {
                text.push_str("no axiom schema matches\n");
            }
            verdict(!hits.is_empty(), text, json!({"matches": rows}))
        }
        LogicCmd::Prove { file, infer } => {
            let body = input::read_file(file)?;
            let parsed = if body.trim_start().starts_with('{') {
                parse_proof_json(&body)
            } else {
                parse_proof(&body)
            };
            let proof = parsed.map_err(|e| CliError::Usage(format!("{file}: {e}")))?;
            let mode = if *infer { BindingMode::Infer } else { BindingMode::Strict };
            let v = check_proof(&proof, mode);
            let text = if v.accepted {
                format!(
                    "accepted, {} steps; theorem: {}\n",
                    v.steps,
                    v.conclusion.as_deref().unwrap_or("")
                )
            } else {
                format!(
                    "rejected at step {}: {}\n",
                    v.failed_step.map_or("-".into(), |s| s.to_string()),
                    v.reason.as_deref().unwrap_or("")
                )
            };
            verdict(v.accepted, text, to_value(&v))
        }
        LogicCmd::Equiv { algebra, lhs, rhs } => {
            let (a, b): (Formula, Formula) = (input::formula(lhs)?, input::formula(rhs)?);
            let eq = match semantics(algebra, cfg)? {
                Semantics::McNaughton => semantic_equiv(&McNaughton, &a, &b),
                Semantics::Finite(l) => semantic_equiv(l.cmv().expect("checked by load_cmv"), &a, &b),
            };
            verdict(
                eq,
                format!("semantically equivalent: {}\n", yes_no(eq)),
                json!({"lhs": format_formula(&a), "rhs": format_formula(&b), "equivalent": eq}),
            )
        }
        LogicCmd::Lindenbaum { algebra } => {
            let r = match semantics(algebra, cfg)? {
                Semantics::McNaughton => lindenbaum_check(&McNaughton, cli.samples, cli.seed),
                Semantics::Finite(l) => lindenbaum_check(l.cmv().expect("checked by load_cmv"), cli.samples, cli.seed),
            };
            let mut text = String::new();
            for l in &r.laws {
                let _ = writeln!(text, "{:<40} {}/{} failed", l.law, l.failed, l.checked);
            }
            verdict(r.passed(), text, to_value(&r))
        }
    }
}
