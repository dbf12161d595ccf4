//! Builds library objects from documents, runs a command and renders the
//! result as a JSON value.

use std::fmt;

use picardkit::abelian::{FgAbGroup, GroupElement, GroupHom};
use picardkit::cocycle::{
    enumerate_h3_sym, h_mu_pair, periodic_sample, quadratic_of, rho_biadditive, CochainTable, QuadraticMap,
    SymCocycle3,
};
use picardkit::cokernel::{
    build_cokernel, cok_homotopy_groups, double_category_check, long_exact_sequence, postnikov_tower,
    CokHomotopy,
};
use picardkit::picard::{
    equivalence_functor, strictify, Constraint, PicFunctor, PicGroupoid, PicMorphism, WitnessSearch,
};
use picardkit::report::ValidationReport;
use picardkit::sphere::{ring_cells, xi, Permutation, SphereAction};
use picardkit::Error;
use serde_json::{json, Map, Value};

use crate::doc::{CocycleDoc, Command, FunctorDoc, GroupDoc, Input, JobSpec, ModelDoc, SchemaError};

/// Reports list at most this many violations; the count is always exact.
const MAX_LISTED: usize = 20;

#[derive(Debug)]
pub enum CliError {
    Io(String),
    Schema(SchemaError),
    Core(Error),
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Io(msg) => write!(f, "{msg}"),
            CliError::Schema(e) => write!(f, "schema error at {e}"),
            CliError::Core(e) => write!(f, "{e}"),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Core(e)
    }
}

impl From<SchemaError> for CliError {
    fn from(e: SchemaError) -> Self {
        CliError::Schema(e)
    }
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Core(Error::InvalidCocycle(_) | Error::InvalidFunctor(_)) => 2,
            CliError::Core(
                Error::InfiniteGroup(_) | Error::SearchTooLarge { .. } | Error::BudgetExceeded { .. },
            ) => 3,
            _ => 1,
        }
    }
}

/// A rendered result; `holds` is false when an axiom or property failed.
pub struct Outcome {
    pub value: Value,
    pub holds: bool,
}

impl Outcome {
    fn ok(value: Value) -> Self {
        Outcome { value, holds: true }
    }
}

type CliResult<T> = Result<T, CliError>;

fn group(d: &GroupDoc) -> CliResult<FgAbGroup> {
    Ok(FgAbGroup::new(d.factors.clone())?)
}

fn element(g: &FgAbGroup, coords: &[i64]) -> CliResult<GroupElement> {
    Ok(g.reduce(coords)?)
}

fn elements(g: &FgAbGroup, rows: &[Vec<i64>]) -> CliResult<Vec<GroupElement>> {
    rows.iter().map(|r| element(g, r)).collect()
}

fn cocycle(d: &ModelDoc) -> CliResult<SymCocycle3> {
    if d.cocycle == CocycleDoc::Sphere {
        return Ok(SymCocycle3::sphere());
    }
    let missing = |k: &str| {
        CliError::Schema(SchemaError {
            location: "$".into(),
            message: format!("model is missing \"{k}\""),
        })
    };
    let g = group(d.g.as_ref().ok_or_else(|| missing("g"))?)?;
    let m = group(d.m.as_ref().ok_or_else(|| missing("m"))?)?;
    let s = match &d.cocycle {
        CocycleDoc::Sphere => unreachable!(),
        CocycleDoc::Zero if g.is_finite() => SymCocycle3::zero(g, m)?,
        CocycleDoc::Zero => SymCocycle3::zero_closed(g, m),
        CocycleDoc::Tables { h, c } => {
            let h = CochainTable::from_values(&g, &m, 3, elements(&m, h)?)?;
            let c = CochainTable::from_values(&g, &m, 2, elements(&m, c)?)?;
            SymCocycle3::from_tables(g, m, h, c)?
        }
        CocycleDoc::HMu { n, mu, a } => {
            if g != FgAbGroup::cyclic(*n) {
                return Err(Error::Mismatch(format!("h_mu lives on Z/{n}, but g is {g}")).into());
            }
            let a = if a.is_empty() { m.zero() } else { element(&m, a)? };
            h_mu_pair(*n, &m, &element(&m, mu)?, &a)?
        }
        CocycleDoc::Rho { values } => {
            let c = rho_biadditive(&g, &m, &elements(&m, values)?)?;
            let h = CochainTable::zero(&g, &m, 3)?;
            SymCocycle3::from_tables(g, m, h, c)?
        }
    };
    Ok(s)
}

fn model(d: &ModelDoc) -> CliResult<PicGroupoid> {
    if d.cocycle == CocycleDoc::Sphere {
        return Ok(PicGroupoid::sphere());
    }
    Ok(PicGroupoid::new(cocycle(d)?)?)
}

/// Builds the functor without checking coherence.
fn functor(d: &FunctorDoc) -> CliResult<PicFunctor> {
    let source = model(&d.source)?;
    let target = model(&d.target)?;
    let f0 = GroupHom::new(source.g().clone(), target.g().clone(), d.f0.clone())?;
    let f1 = GroupHom::new(source.m().clone(), target.m().clone(), d.f1.clone())?;
    let phi = match &d.phi {
        None => Constraint::Zero,
        Some(rows) => Constraint::Table(CochainTable::from_values(
            source.g(),
            target.m(),
            2,
            elements(target.m(), rows)?,
        )?),
    };
    Ok(PicFunctor::new(source, target, f0, f1, phi)?)
}

/// Builds the functor and rejects it with its first violation.
fn coherent_functor(d: &FunctorDoc) -> CliResult<PicFunctor> {
    let f = functor(d)?;
    let report = f.validate()?;
    if let Some(v) = report.violations.first() {
        return Err(Error::InvalidFunctor(format!("{v} ({} violations)", report.violations.len())).into());
    }
    Ok(f)
}

fn el(e: &GroupElement) -> Value {
    json!(e.coords())
}

fn grp(g: &FgAbGroup) -> Value {
    json!({ "factors": g.factors(), "name": g.to_string() })
}

fn hom(h: &GroupHom) -> Value {
    json!(h.rows())
}

fn morphism(f: &PicMorphism) -> Value {
    json!({ "at": el(&f.at), "label": el(&f.label) })
}

fn report(r: &ValidationReport) -> Value {
    let listed: Vec<Value> = r
        .violations
        .iter()
        .take(MAX_LISTED)
        .map(|v| {
            json!({
                "axiom": v.axiom,
                "args": v.args.iter().map(el).collect::<Vec<_>>(),
                "lhs": el(&v.lhs),
                "rhs": el(&v.rhs),
            })
        })
        .collect();
    json!({
        "valid": r.is_valid(),
        "checked": r.checked,
        "violation_count": r.violations.len(),
        "violations": listed,
    })
}

fn sample(g: &FgAbGroup) -> Vec<GroupElement> {
    g.elements().unwrap_or_else(|_| periodic_sample(g, 4))
}

fn quadratic(q: &QuadraticMap) -> Value {
    let values: Vec<Value> = sample(q.g())
        .iter()
        .map(|x| json!({ "x": el(x), "q": el(&q.eval(x)) }))
        .collect();
    Value::Array(values)
}

fn cocycle_value(s: &SymCocycle3) -> Value {
    let mut out = Map::new();
    out.insert("g".into(), grp(s.g()));
    out.insert("m".into(), grp(s.m()));
    out.insert("permutative".into(), json!(s.is_permutative()));
    match s.tables() {
        Some((h, c)) => {
            out.insert("h".into(), json!(h.values().iter().map(el).collect::<Vec<_>>()));
            out.insert("c".into(), json!(c.values().iter().map(el).collect::<Vec<_>>()));
        }
        None => {
            let form = if *s == SymCocycle3::sphere() { "sphere" } else { "zero" };
            out.insert("form".into(), json!(form));
        }
    }
    Value::Object(out)
}

fn functor_value(f: &PicFunctor) -> Value {
    let phi = match f.constraint() {
        Constraint::Zero => json!("zero"),
        Constraint::Table(t) => json!(t.values().iter().map(el).collect::<Vec<_>>()),
    };
    json!({ "f0": hom(f.f0()), "f1": hom(f.f1()), "phi": phi })
}

fn homotopy_value(h: &CokHomotopy) -> CliResult<Value> {
    let (_, _, split_exact) = h.pi1.extension()?;
    Ok(json!({
        "pi0": grp(&h.pi0),
        "pi1": grp(&h.pi1.group),
        "pi1_extension_exact": split_exact,
        "pi2": grp(&h.pi2),
    }))
}

pub fn run(job: &JobSpec, budget: u64) -> CliResult<Outcome> {
    match (&job.command, &job.input) {
        (Command::Validate, Input::Model(d)) => {
            let s = cocycle(d)?;
            let r = s.validate()?;
            Ok(Outcome {
                holds: r.is_valid(),
                value: json!({ "kind": "model", "cocycle": cocycle_value(&s), "report": report(&r) }),
            })
        }
        (Command::Validate, Input::Functor(d)) => {
            let f = functor(d)?;
            let r = f.validate()?;
            Ok(Outcome {
                holds: r.is_valid(),
                value: json!({ "kind": "functor", "report": report(&r) }),
            })
        }
        (Command::Strictify, Input::Model(d)) => {
            let p = model(d)?;
            let s = strictify(&p, budget)?;
            let witness = match &s.witness {
                WitnessSearch::Found(_) => "found".to_string(),
                WitnessSearch::NotFound => "not found".to_string(),
                WitnessSearch::Skipped(why) => format!("skipped: {why}"),
            };
            let equivalence_valid = s.equivalence.validate()?.is_valid();
            Ok(Outcome {
                holds: s.quadratic_match && equivalence_valid && !matches!(s.witness, WitnessSearch::NotFound),
                value: json!({
                    "strict": cocycle_value(s.groupoid.cocycle()),
                    "generator_values": s.generator_values.iter().map(el).collect::<Vec<_>>(),
                    "quadratic_match": s.quadratic_match,
                    "cohomologous_witness": witness,
                    "equivalence": functor_value(&s.equivalence),
                    "equivalence_valid": equivalence_valid,
                }),
            })
        }
        (Command::Qmap, Input::Model(d)) => {
            let p = model(d)?;
            let q = quadratic_of(p.cocycle());
            let r = q.validate()?;
            Ok(Outcome {
                holds: r.is_valid(),
                value: json!({
                    "values": quadratic(&q),
                    "two_torsion": q.is_two_torsion()?,
                    "report": report(&r),
                }),
            })
        }
        (Command::H3sym, Input::Groups { g, m }) => {
            let (g, m) = (group(g)?, group(m)?);
            let h = enumerate_h3_sym(&g, &m, budget)?;
            let reps: Vec<Value> = h
                .representatives
                .iter()
                .map(|s| {
                    json!({
                        "cocycle": cocycle_value(s),
                        "quadratic": quadratic(&quadratic_of(s)),
                    })
                })
                .collect();
            let n = h.class_count();
            Ok(Outcome::ok(json!({
                "classes": n,
                "summary": format!("{n} {}", if n == 1 { "class" } else { "classes" }),
                "cocycles": h.cocycle_count,
                "coboundaries": h.coboundary_count,
                "representatives": reps,
            })))
        }
        (Command::Equiv, Input::Pair { left, right }) => {
            let (p, q) = (model(left)?, model(right)?);
            let f = equivalence_functor(&p, &q)?;
            let mut out = Map::new();
            out.insert("equivalent".into(), json!(f.is_some()));
            if let Some(f) = &f {
                out.insert("functor".into(), functor_value(f));
            }
            Ok(Outcome::ok(Value::Object(out)))
        }
        (Command::Cokernel, Input::Functor(d)) => {
            let k = build_cokernel(&coherent_functor(d)?)?;
            let h = cok_homotopy_groups(&k)?;
            Ok(Outcome::ok(json!({
                "objects": grp(k.objects()),
                "homotopy": homotopy_value(&h)?,
            })))
        }
        (Command::Les, Input::Functor(d)) => {
            let k = build_cokernel(&coherent_functor(d)?)?;
            let les = long_exact_sequence(&k)?;
            let failed: Vec<&str> = les.exactness.iter().filter(|(_, ok)| !ok).map(|(n, _)| *n).collect();
            let summary = if failed.is_empty() {
                "exact at all positions".to_string()
            } else {
                format!("not exact at {}", failed.join(", "))
            };
            let groups: Vec<Value> = les
                .groups
                .iter()
                .map(|(n, g)| json!({ "name": n, "group": grp(g) }))
                .collect();
            let maps: Vec<Value> = les
                .maps
                .iter()
                .map(|(n, h)| json!({ "name": n, "matrix": hom(h) }))
                .collect();
            let exactness: Vec<Value> = les
                .exactness
                .iter()
                .map(|(n, ok)| json!({ "at": n, "exact": ok }))
                .collect();
            Ok(Outcome {
                holds: failed.is_empty(),
                value: json!({
                    "groups": groups,
                    "maps": maps,
                    "exactness": exactness,
                    "summary": summary,
                }),
            })
        }
        (Command::Doublecheck, Input::Functor(d)) => {
            let r = double_category_check(&coherent_functor(d)?, budget)?;
            Ok(Outcome {
                holds: r.is_valid(),
                value: json!({ "report": report(&r) }),
            })
        }
        (Command::Postnikov, Input::Model(d)) => {
            let t = postnikov_tower(&model(d)?, budget)?;
            Ok(Outcome {
                holds: t.report.holds(),
                value: json!({
                    "k0": {
                        "objects": hom(&t.k0.objects),
                        "quadratic": quadratic(&t.k0.quadratic),
                    },
                    "homotopy": homotopy_value(&t.homotopy)?,
                    "pi0_trivial": t.report.pi0_trivial,
                    "pi1_trivial": t.report.pi1_trivial,
                    "pi2_isomorphic": t.report.pi2_isomorphic,
                    "witness": hom(&t.report.witness),
                    "holds": t.report.holds(),
                }),
            })
        }
        (Command::Sphere, Input::Sphere { objects, permutation }) => {
            let mut out = Map::new();
            if let Some((m, n)) = objects {
                let r = ring_cells(*m, *n);
                out.insert(
                    "ring".into(),
                    json!({ "product": r.product, "symmetry": morphism(&r.symmetry) }),
                );
            }
            if let Some(p) = permutation {
                let p = Permutation::new(p.clone())?;
                out.insert(
                    "permutation".into(),
                    json!({
                        "parity": p.parity(),
                        "cycle_type": p.cycle_type(),
                        "sign": morphism(&xi(&p)),
                    }),
                );
            }
            Ok(Outcome::ok(Value::Object(out)))
        }
        (
            Command::Act,
            Input::Act {
                model: d,
                n,
                eta,
                at,
                label,
            },
        ) => {
            let p = model(d)?;
            let action = SphereAction::new(&p)?;
            let f = PicMorphism {
                at: element(p.g(), at)?,
                label: element(p.m(), label)?,
            };
            let eta = FgAbGroup::cyclic(2).reduce(&[*eta])?;
            let image = action.act_morphism(*n, &eta, &f);
            Ok(Outcome::ok(json!({ "image": morphism(&image) })))
        }
        (c, _) => Err(CliError::Io(format!("no input of this shape for {}", c.name()))),
    }
}

/// `key: value` lines with nested keys joined by dots and array positions
/// in brackets.
pub fn render_human(value: &Value) -> String {
    fn scalar(v: &Value) -> bool {
        match v {
            Value::Array(a) => a.iter().all(|x| x.is_number() || (x.is_array() && scalar(x))),
            Value::Object(_) => false,
            _ => true,
        }
    }
    fn walk(prefix: &str, v: &Value, out: &mut String) {
        match v {
            Value::Object(map) => {
                for (k, x) in map {
                    let key = if prefix.is_empty() { k.clone() } else { format!("{prefix}.{k}") };
                    walk(&key, x, out);
                }
            }
            Value::Array(items) if !scalar(v) => {
                for (i, x) in items.iter().enumerate() {
                    walk(&format!("{prefix}[{i}]"), x, out);
                }
            }
            Value::String(s) => out.push_str(&format!("{prefix}: {s}\n")),
            other => out.push_str(&format!("{prefix}: {other}\n")),
        }
    }
    let mut out = String::new();
    walk("", value, &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::doc::{parse_document, Format};

    fn run_text(command: Command, text: &str) -> CliResult<Outcome> {
        run(&parse_document(command, text, Format::Machine)?, picardkit::DEFAULT_BUDGET)
    }

    #[test]
    fn human_rendering_flattens() {
        let v = json!({ "a": { "b": [1, 2] }, "c": [{ "d": "x" }], "e": true });
        assert_eq!(render_human(&v), "a.b: [1,2]\nc[0].d: x\ne: true\n");
    }

    #[test]
    fn h_mu_must_match_g() {
        let err = run_text(
            Command::Qmap,
            r#"{"model":{"g":{"factors":[4]},"m":{"factors":[2]},"cocycle":{"form":"h_mu","n":2,"mu":[0],"a":[1]}}}"#,
        )
        .err()
        .unwrap();
        assert_eq!(err.exit_code(), 1);
    }

    #[test]
    fn invalid_tables_exit_two() {
        // c(1,1) = 1 alone on Z/3 is not additive in either variable.
        let err = run_text(
            Command::Postnikov,
            r#"{"model":{"g":{"factors":[3]},"m":{"factors":[2]},"cocycle":{"form":"tables","h":[[0],[0],[0],[0],[0],[0],[0],[0],[0],[0],[0],[0],[0],[0],[0],[0],[0],[0],[0],[0],[0],[0],[0],[0],[0],[0],[0]],"c":[[0],[0],[0],[0],[1],[0],[0],[0],[0]]}}}"#,
        )
        .err()
        .unwrap();
        assert_eq!(err.exit_code(), 2, "{err}");
    }

    #[test]
    fn sphere_needs_formula_paths() {
        let out = run_text(Command::Qmap, r#"{"model":{"cocycle":{"form":"sphere"}}}"#).unwrap();
        assert!(out.holds);
        let err = run_text(Command::H3sym, r#"{"g":{"factors":[0]},"m":{"factors":[2]}}"#)
            .err()
            .unwrap();
        assert_eq!(err.exit_code(), 3);
    }
}
