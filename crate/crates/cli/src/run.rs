//! Command execution over a parsed session.

use serde_json::{json, Map, Value as Json};

use gorsum_core::{golod_test, minimal_free_resolution, FdAlgebra, FdModule, Field, PrimeField, Rationals};

use crate::ast::{Decl, FieldSpec, Session};
use crate::eval::{Env, EvalError, Limits};
use crate::report::{json_int, json_ints, Record, Report, Status};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Command {
    Analyze,
    Verify,
    Resolve { ring: Option<String>, module: Option<String>, steps: Option<usize> },
    Golod { map: Option<String>, ring: Option<String>, order: Option<usize> },
    Colength { ring: Option<String> },
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Analyze => "analyze",
            Command::Verify => "verify",
            Command::Resolve { .. } => "resolve",
            Command::Golod { .. } => "golod",
            Command::Colength { .. } => "colength",
        }
    }
}

/// Evaluates `session` and runs `command`. `label` names the session in
/// records (`label:line`).
pub fn run(session: &Session, command: &Command, limits: Limits, label: &str) -> Report {
    let mut report = Report::new(command.name(), label);
    let Some(spec) = session.field() else {
        report.error("session", format!("{label}:1"), "the session declares no field");
        return report;
    };
    report.field = Some(spec.to_string());
    match spec {
        FieldSpec::Rationals => run_over(Rationals, session, command, limits, label, report),
        FieldSpec::Prime(p) => match PrimeField::new(p) {
            Ok(f) => run_over(f, session, command, limits, label, report),
            Err(e) => {
                report.error("field", format!("{label}:1"), e.to_string());
                report
            }
        },
    }
}

fn run_over<F: Field>(
    field: F,
    session: &Session,
    command: &Command,
    limits: Limits,
    label: &str,
    mut report: Report,
) -> Report {
    let mut env = Env::new(field, limits);
    let verify = *command == Command::Verify;
    for (decl, pos) in session.decls.iter().zip(&session.positions) {
        let source = format!("{label}:{}", pos.line);
        let is_check = matches!(decl, Decl::Check { .. });
        if is_check && !verify {
            continue;
        }
        let name = match decl {
            Decl::Check { query, expected } => format!("{query} == {expected}"),
            d => format!("{} {}", d.keyword(), d.name().unwrap_or_default()),
        };
        match env.declare(decl) {
            Ok(Some(o)) => report.records.push(Record {
                name,
                status: if o.pass { Status::Pass } else { Status::Fail },
                expected: Some(o.expected.to_string()),
                actual: Some(o.actual.to_string()),
                source,
                message: if o.pass { None } else { o.note },
            }),
            Ok(None) => {}
            Err(e) => report.error(name, source, e.to_string()),
        }
    }
    let data = match command {
        Command::Analyze | Command::Verify => Ok(analyze(&env, verify)),
        Command::Resolve { ring, module, steps } => resolve(&env, ring.as_deref(), module.as_deref(), *steps),
        Command::Golod { map, ring, order } => golod(&env, map.as_deref(), ring.as_deref(), *order),
        Command::Colength { ring } => colength(&env, ring.as_deref()),
    };
    match data {
        Ok(d) => report.data.extend(d),
        Err(e) => report.error(command.name(), label.to_string(), e.to_string()),
    }
    report
}

fn algebra_summary<F: Field>(name: &str, a: &FdAlgebra<F>) -> Json {
    let inv = a.invariants();
    let mut m = Map::new();
    m.insert("name".into(), name.into());
    m.insert("length".into(), inv.length.into());
    m.insert("edim".into(), inv.edim.into());
    m.insert("type".into(), inv.socle_dim.into());
    m.insert("gorenstein".into(), inv.is_gorenstein.into());
    if let Some(h) = inv.hilbert {
        m.insert("hilbert".into(), json_ints(&h.iter().map(|&x| x as i128).collect::<Vec<_>>()));
    }
    if let Some(a) = inv.a_invariant {
        m.insert("a_invariant".into(), a.into());
    }
    Json::Object(m)
}

fn analyze<F: Field>(env: &Env<F>, verify: bool) -> Map<String, Json> {
    let mut out = Map::new();
    if verify {
        return out;
    }
    let algebras: Vec<Json> =
        env.algebra_names().iter().filter_map(|n| env.algebra(n).ok().map(|a| algebra_summary(n, &a))).collect();
    out.insert("algebras".into(), algebras.into());
    let maps: Vec<Json> = env
        .map_names()
        .iter()
        .filter_map(|n| {
            let m = env.map(n).ok()?;
            Some(json!({
                "name": n,
                "source_length": m.source().length(),
                "target_length": m.target().length(),
                "surjective": m.is_surjective(),
            }))
        })
        .collect();
    if !maps.is_empty() {
        out.insert("maps".into(), maps.into());
    }
    out
}

fn default_ring<'a, F: Field>(env: &'a Env<F>, ring: Option<&'a str>) -> Result<&'a str, EvalError> {
    match ring {
        Some(r) => Ok(r),
        None => env
            .algebra_names()
            .last()
            .map(String::as_str)
            .ok_or_else(|| EvalError::Invalid("the session defines no algebra".into())),
    }
}

fn resolve<F: Field>(
    env: &Env<F>,
    ring: Option<&str>,
    module: Option<&str>,
    steps: Option<usize>,
) -> Result<Map<String, Json>, EvalError> {
    let name = default_ring(env, ring)?;
    let a = env.algebra(name)?;
    let mname = module.unwrap_or("k");
    let m = match mname {
        "k" => FdModule::residue_field(&a),
        "regular" => FdModule::regular(&a),
        other => {
            let m = env.module(other)?;
            if !m.algebra().same_structure(&a) {
                return Err(EvalError::Invalid(format!("`{other}` is not a module over `{name}`")));
            }
            m
        }
    };
    let steps = steps.unwrap_or(env.limits.order);
    let t = minimal_free_resolution(&m, steps, env.limits.budget)?;
    let mut out = Map::new();
    out.insert("ring".into(), name.into());
    out.insert("module".into(), mname.into());
    out.insert("steps".into(), steps.into());
    out.insert("betti".into(), json_ints(&t.betti().iter().map(|&b| b as i128).collect::<Vec<_>>()));
    if t.generator_degrees().is_some() {
        let graded: Vec<Json> = (0..=steps)
            .map(|i| {
                let row = t.graded_betti(i).unwrap_or_default();
                Json::Object(row.iter().map(|(d, n)| (d.to_string(), Json::from(*n))).collect())
            })
            .collect();
        out.insert("graded_betti".into(), graded.into());
    }
    Ok(out)
}

fn golod<F: Field>(
    env: &Env<F>,
    map: Option<&str>,
    ring: Option<&str>,
    order: Option<usize>,
) -> Result<Map<String, Json>, EvalError> {
    let (label, kappa) = match map {
        Some(m) => (m.to_string(), env.map(m)?),
        None => {
            let name = default_ring(env, ring)?;
            let a = env.algebra(name)?;
            if a.length() < 2 {
                return Err(EvalError::Invalid(format!("`{name}` is a field")));
            }
            (format!("{name} -> {name}/soc"), FdAlgebra::quotient(&a, &a.socle())?.1)
        }
    };
    let order = order.unwrap_or(env.limits.order);
    let rep = golod_test(&kappa, order, env.limits.budget)?;
    let series = |s: &gorsum_core::TruncatedSeries| json_ints(s.coeffs());
    let mut out = Map::new();
    out.insert("map".into(), label.into());
    out.insert("order".into(), order.into());
    out.insert("golod".into(), rep.verdict.is_golod().into());
    out.insert("verdict".into(), format!("{:?}", rep.verdict).into());
    out.insert("target_series".into(), series(&rep.target_series));
    out.insert("bound".into(), series(&rep.bound));
    out.insert("bound_holds".into(), rep.bound_holds.into());
    if let Some(s) = &rep.special_bound {
        out.insert("special_bound".into(), series(s));
    }
    Ok(out)
}

fn colength<F: Field>(env: &Env<F>, ring: Option<&str>) -> Result<Map<String, Json>, EvalError> {
    let name = default_ring(env, ring)?;
    let rep = env.colength(name)?;
    let mut out = Map::new();
    out.insert("ring".into(), name.into());
    out.insert("length".into(), rep.length.into());
    out.insert("edim".into(), rep.edim.into());
    out.insert("lower".into(), json_int(rep.lower as i128));
    out.insert("upper".into(), json_int(rep.upper as i128));
    out.insert("lower_source".into(), rep.lower_source.to_string().into());
    out.insert("upper_source".into(), rep.upper_source.to_string().into());
    out.insert("witness_length".into(), rep.witness.algebra().length().into());
    out.insert("teter".into(), rep.teter.is_some().into());
    if let Some(fp) = &rep.fiber_product {
        out.insert("fiber_product".into(), json!({ "lower": fp.lower, "upper": fp.upper }));
    }
    if !rep.notes.is_empty() {
        out.insert("notes".into(), rep.notes.clone().into());
    }
    Ok(out)
}
