//! One PASS/FAIL line per acceptance criterion, with counts and timings.
//! Seeds are fixed; every comparison is exact.

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::Arc;
use std::time::Instant;

use gorsum_cli::suite::{run_suite, SuiteResult};
use gorsum_cli::{parse_session, run, Command, Limits, Report, Status};
use gorsum_core::random::DEFAULT_SEED;
use gorsum_core::{gcl_bounds, FdAlgebra, PrimeField};

fn sessions_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("sessions")
}

fn verify(name: &str, command: Command) -> Result<Report, String> {
    let text = fs::read_to_string(sessions_dir().join(name)).map_err(|e| e.to_string())?;
    let session = parse_session(&text).map_err(|e| format!("{name}: {e}"))?;
    let report = run(&session, &command, Limits::default(), name);
    let bad: Vec<String> = report
        .records
        .iter()
        .filter(|r| r.status != Status::Pass)
        .map(|r| format!("{} ({}): {}", r.name, r.source, r.message.clone().unwrap_or_default()))
        .collect();
    if bad.is_empty() {
        Ok(report)
    } else {
        Err(bad.join("; "))
    }
}

fn suite(name: &str, count: usize) -> Result<SuiteResult, String> {
    let res = run_suite(name, count, DEFAULT_SEED).ok_or_else(|| format!("no suite {name}"))?;
    if res.passed() {
        Ok(res)
    } else {
        Err(format!("{name}: {} of {} failed, first: {}", res.failures.len(), count, res.failures[0]))
    }
}

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn criterion_1() -> Result<String, String> {
    let r = verify("fermat.gs", Command::Verify)?;
    let isos = r.records.iter().filter(|x| x.name.starts_with("iso_presentation(Q")).count();
    ensure(isos == 2, || format!("{isos} presentation checks for the sums"))?;
    Ok(format!("{} checks, sum and p = 2 twist certified", r.records.len()))
}

fn criterion_2() -> Result<String, String> {
    let r = verify("nonstandard.gs", Command::Verify)?;
    Ok(format!("{} checks over k[z]/(z^2)", r.records.len()))
}

fn criterion_3() -> Result<String, String> {
    let r = verify("cubics.gs", Command::Verify)?;
    let steps = Command::Resolve { ring: Some("Q".into()), module: Some("k".into()), steps: Some(8) };
    let res = verify("cubics.gs", steps)?;
    let betti = res.data.get("betti").cloned().unwrap_or_default();
    ensure(betti == serde_json::json!([1, 2, 3, 4, 5, 6, 7, 8, 9]), || format!("betti {betti}"))?;
    Ok(format!("betti {betti}, {} checks incl. deviations", r.records.len()))
}

fn criterion_4() -> Result<String, String> {
    let r = suite("dress-kramer", 50)?;
    Ok(format!("50 fiber products, M = k and M = R/soc R ({:.1} s)", r.seconds))
}

fn criterion_5() -> Result<String, String> {
    suite("golod-gorenstein", 50)?;
    let b = suite("golod-bound", 200)?;
    let c = suite("golod-composites", 20)?;
    Ok(format!("50 Gorenstein, 200 surjections ({}), 20 triples ({})", b.notes.join(", "), c.notes.join(", ")))
}

fn criterion_6() -> Result<String, String> {
    suite("connected-sum-poincare", 25)?;
    Ok("25 pairs, both series identities".into())
}

fn criterion_7() -> Result<String, String> {
    let r = suite("identities", 200)?;
    Ok(format!("200 instances; {}", r.notes.join(", ")))
}

fn criterion_8() -> Result<String, String> {
    let f = PrimeField::new(101).map_err(|e| e.to_string())?;
    let q = Arc::new(FdAlgebra::parse(&f, &[("x", 1), ("y", 1)], &["x^2", "x*y", "y^2"]).map_err(|e| e.to_string())?);
    let rep = gcl_bounds(&q, &[]).map_err(|e| e.to_string())?;
    let w = &rep.witness;
    ensure((rep.lower, rep.upper) == (1, 1), || format!("square-zero bounds [{}, {}]", rep.lower, rep.upper))?;
    ensure(w.algebra().is_gorenstein() && w.gap() == 1, || "square-zero witness is not Gorenstein of gap 1".into())?;
    ensure(w.map().is_surjective() && w.algebra().length() == q.length() + 1, || {
        "square-zero witness is not a cover".into()
    })?;
    w.algebra().audit().map_err(|e| e.to_string())?;
    verify("colength.gs", Command::Verify)?;
    verify("squarezero.gs", Command::Verify)?;
    let c = suite("colength", 50)?;
    Ok(format!("witness verified, equality case 1, 50 random: {}", c.notes.join(", ")))
}

fn criterion_9() -> Result<String, String> {
    suite("groebner", 100)?;
    suite("audits", 50)?;
    let mut n = 0;
    for e in fs::read_dir(sessions_dir()).map_err(|e| e.to_string())? {
        let p = e.map_err(|e| e.to_string())?.path();
        if p.extension().is_none_or(|x| x != "gs") {
            continue;
        }
        let text = fs::read_to_string(&p).map_err(|e| e.to_string())?;
        let a = parse_session(&text).map_err(|e| format!("{}: {e}", p.display()))?;
        let b = parse_session(&a.to_string()).map_err(|e| format!("{} reprinted: {e}", p.display()))?;
        ensure(a == b, || format!("{} does not round-trip", p.display()))?;
        n += 1;
    }
    Ok(format!("100 ideals, 50 audit rounds, {n} sessions round-trip"))
}

type Criterion = (u32, &'static str, f64, fn() -> Result<String, String>);

const CRITERIA: [Criterion; 9] = [
    (1, "fermat sum and twist", 30.0, criterion_1),
    (2, "sums over k[z]/(z^2)", 30.0, criterion_2),
    (3, "complete intersection Betti numbers", 10.0, criterion_3),
    (4, "Dress-Kramer series", 300.0, criterion_4),
    (5, "Golod bound and composites", 30.0, criterion_5),
    (6, "connected sum Poincare series", 30.0, criterion_6),
    (7, "length, Hilbert and type identities", 30.0, criterion_7),
    (8, "Gorenstein colength", 30.0, criterion_8),
    (9, "Groebner, audits, round-trip", 30.0, criterion_9),
];

fn main() -> ExitCode {
    let mut failed = 0;
    for (n, title, limit, f) in CRITERIA {
        let t = Instant::now();
        let out = f();
        let secs = t.elapsed().as_secs_f64();
        let line = match (out, secs <= limit) {
            (Ok(detail), true) => format!("PASS criterion {n}: {title}: {detail} [{secs:.2} s <= {limit} s]"),
            (Ok(detail), false) => format!("FAIL criterion {n}: {title}: {detail} [{secs:.2} s > {limit} s]"),
            (Err(e), _) => format!("FAIL criterion {n}: {title}: {e} [{secs:.2} s]"),
        };
        if line.starts_with("FAIL") {
            failed += 1;
        }
        println!("{line}");
    }
    println!("acceptance: {} of {} criteria passed", CRITERIA.len() - failed, CRITERIA.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
