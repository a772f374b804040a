//! Acceptance criteria 1-10. Prints one line per criterion and exits
//! nonzero when any criterion fails.

use std::path::Path;
use std::process::{Command, ExitCode};
use std::time::Instant;

use spheroidal_ga::report::Report;
use spheroidal_ga::suites::{run_suite, RunConfig, Suite};

const SEED: u64 = 42;

struct Outcome {
    pass: bool,
    detail: String,
}

fn suite(s: Suite, samples: Option<usize>) -> Report {
    let cfg = RunConfig {
        samples,
        ..RunConfig::with_seed(SEED)
    };
    run_suite(s, &cfg).expect("valid configuration")
}

fn failing(r: &Report) -> String {
    let names: Vec<String> = r
        .failures()
        .iter()
        .map(|e| format!("{} ({:.2e} > {:.0e})", e.identity_name, e.max_abs_error, e.tolerance))
        .collect();
    names.join("; ")
}

fn verdict(reports: &[&Report], ok: String) -> Outcome {
    let fails: Vec<String> = reports.iter().filter(|r| !r.pass).map(|r| failing(r)).collect();
    if fails.is_empty() {
        Outcome { pass: true, detail: ok }
    } else {
        Outcome {
            pass: false,
            detail: format!("{ok}; failing: {}", fails.join("; ")),
        }
    }
}

fn pick(r: &Report, prefixes: &[&str]) -> Report {
    let mut out = Report::new(r.suite.clone());
    for e in r.entries.iter().filter(|e| prefixes.iter().any(|p| e.identity_name.starts_with(p))) {
        out.push(e.clone());
    }
    assert!(!out.entries.is_empty(), "no entries match {prefixes:?}");
    out
}

fn worst(r: &Report) -> f64 {
    r.entries
        .iter()
        .filter(|e| e.asserted)
        .map(|e| e.max_abs_error)
        .fold(0.0, f64::max)
}

fn criterion_1() -> Outcome {
    let ids = suite(Suite::Identities, Some(1000));
    let grad = suite(Suite::IdentitiesGrad, Some(1000));
    let flagged = [
        "z zbar = cosh 2eta + cos 2theta (table form, no 1/2)",
        "z_phi / z_phieta = tan theta (table form)",
    ];
    for name in flagged {
        let e = ids.entry(name).expect("typo item reported");
        assert!(!e.asserted, "{name} must be informational");
    }
    let n = ids.entries.len() + grad.entries.len();
    verdict(&[&ids, &grad], format!("{n} identities at 1000 points, typo items reported"))
}

fn criterion_2() -> Outcome {
    let r = pick(&suite(Suite::Coordinates, Some(1000)), &["prolate: invert", "prolate: position", "oblate: invert", "oblate: position"]);
    let w = worst(&r);
    verdict(&[&r], format!("max relative error {w:.2e}"))
}

fn criterion_3() -> Outcome {
    let r = pick(
        &suite(Suite::Coordinates, Some(1000)),
        &["prolate: x^i", "oblate: x^i", "prolate: tangents", "oblate: tangents"],
    );
    let samples = r.entries[0].samples;
    verdict(&[&r], format!("{samples} points per case, max deviation {:.2e}", worst(&r)))
}

fn criterion_4() -> Outcome {
    let r = suite(Suite::Projection, Some(1000));
    let ratios: Vec<&str> = r
        .entries
        .iter()
        .filter_map(|e| e.detail.as_deref())
        .collect();
    verdict(&[&r], ratios.join(" | "))
}

fn criterion_5() -> Outcome {
    let r = suite(Suite::LaplacianEquiv, None);
    verdict(&[&r], format!("20 fields, max relative error {:.2e}", worst(&r)))
}

fn criterion_6() -> Outcome {
    let grad = suite(Suite::IdentitiesGrad, Some(100));
    let r = pick(
        &grad,
        &["grad_z z = 3", "grad_z zbar = -1", "mu^2 lap_x f = grad_zbar grad_z f", "mu^2 lap_x f = grad_z grad_zbar f"],
    );
    verdict(&[&r], format!("100 points, max error {:.2e}", worst(&r)))
}

fn criterion_7() -> Outcome {
    let r = suite(Suite::Brackets, None);
    let mixed = r
        .entries
        .iter()
        .find(|e| e.identity_name.starts_with("[J_a, P_b]"))
        .and_then(|e| e.detail.clone())
        .unwrap_or_default();
    verdict(&[&r], format!("exact on degree <= 4, mixed bracket: {mixed}"))
}

fn criterion_8() -> Outcome {
    let r = suite(Suite::Harmonics, None);
    verdict(&[&r], format!("max asserted residual {:.2e}", worst(&r)))
}

fn criterion_9() -> Outcome {
    let r = suite(Suite::Monogenic, Some(100));
    let seq = r
        .entries
        .iter()
        .find(|e| e.identity_name.contains("QM[11]") && e.asserted)
        .map(|e| e.identity_name.clone())
        .unwrap_or_default();
    verdict(&[&r], seq)
}

fn run_cli(out: &Path) -> Option<i32> {
    Command::new(env!("CARGO_BIN_EXE_spheroidal-ga"))
        .args(["verify", "--suite", "all", "--seed", "42", "--out"])
        .arg(out)
        .env_remove("SPHEROIDAL_GA_SEED")
        .output()
        .ok()
        .and_then(|o| o.status.code())
}

fn criterion_10() -> Outcome {
    let dir = tempfile::tempdir().expect("temp dir");
    let (a, b) = (dir.path().join("a.json"), dir.path().join("b.json"));
    let code = run_cli(&a);
    run_cli(&b);
    let same = std::fs::read(&a).ok().zip(std::fs::read(&b).ok()).is_some_and(|(x, y)| x == y);
    Outcome {
        pass: code == Some(0) && same,
        detail: format!("verify --suite all exit {code:?}, reports identical: {same}"),
    }
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 10] = [
        ("identity suites", criterion_1),
        ("coordinate round trips", criterion_2),
        ("frame reciprocity and tangents", criterion_3),
        ("projection", criterion_4),
        ("Laplacian equivalence", criterion_5),
        ("quaternion gradient", criterion_6),
        ("Lie algebra", criterion_7),
        ("harmonics", criterion_8),
        ("monogenic layer", criterion_9),
        ("CLI", criterion_10),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let o = check();
        let secs = t.elapsed().as_secs_f64();
        let tag = if o.pass { "PASS" } else { "FAIL" };
        println!("criterion {:>2} {tag} {name} [{secs:.1}s]: {}", i + 1, o.detail);
        failed += usize::from(!o.pass);
    }
    println!("{} of {} criteria pass", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
