//! Acceptance run: one line per criterion, each with its time limit.
//! Runs without the libtest harness so the lines always reach the output.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use cabelt::khat::{torsion_witness, zz_realization_check};
use cabelt::neumann::{certificate_pattern, even_orders_check};
use cabelt::pointy::{free_orbit_check, lamplighter_action, lamplighter_oracle};
use cabelt::report::{Record, Report};
use cabelt::suites::{afo_suite, belt_suite, wreath_suite, SuiteOptions};
use cabelt::Result;

struct Criterion {
    id: u32,
    name: &'static str,
    limit: Duration,
    run: fn() -> Result<(Report, String)>,
}

fn only(report: Report, prefixes: &[&str]) -> Report {
    Report { records: report.records.into_iter().filter(|r| prefixes.iter().any(|p| r.check.starts_with(p))).collect() }
}

fn afo_fidelity() -> Result<(Report, String)> {
    let r = only(afo_suite(&SuiteOptions::default())?, &["example."]);
    let n = r.records.len();
    Ok((r, format!("mappings={n}")))
}

fn safety() -> Result<(Report, String)> {
    let r = only(afo_suite(&SuiteOptions::default())?, &["safety."]);
    let w = r.find("safety.101.n0=4.unsafe").and_then(|c| c.witness.clone()).unwrap_or_default();
    Ok((r, format!("collision=({w})")))
}

fn belt() -> Result<(Report, String)> {
    let r = belt_suite(&SuiteOptions { period: Some(5), ..Default::default() })?;
    let n = r.records.len();
    Ok((r, format!("checks={n} maps=id,shift,swap periods<=5 random=1000x<=40")))
}

fn zz() -> Result<(Report, String)> {
    let mut r = zz_realization_check(6, 8, 12)?;
    r.extend(zz_realization_check(8, 8, 12)?);
    let n = r.records.len();
    Ok((r, format!("checks={n} word_len=6,8 periods<=8 witnesses<=12")))
}

fn wreath() -> Result<(Report, String)> {
    let r = wreath_suite(&SuiteOptions { period: Some(4), ball: Some(3), ..Default::default() })?;
    let n = r.records.len();
    Ok((r, format!("checks={n} periods<=4")))
}

fn torsion() -> Result<(Report, String)> {
    let t = torsion_witness(2, &(8..=12).collect::<Vec<_>>(), 12)?;
    Ok((t.report, format!("order={} levels={:?}", t.order, t.levels)))
}

fn neumann() -> Result<(Report, String)> {
    let mut r = Report::new();
    for n in 2..=4 {
        r.push(certificate_pattern(n)?);
    }
    r.extend(even_orders_check(8)?);
    let n = r.records.len();
    Ok((r, format!("checks={n}")))
}

fn free_orbit() -> Result<(Report, String)> {
    let p = lamplighter_action(&[2])?;
    let r = free_orbit_check(&p, 8, lamplighter_oracle(&[2]))?;
    let detail = r.records.iter().find_map(|c| c.detail.clone()).unwrap_or_default();
    Ok((r, detail))
}

fn sparsity() -> Result<(Report, String)> {
    let r = only(afo_suite(&SuiteOptions::default())?, &["sparsity.", "retraction."]);
    let detail = r.find("retraction.n6").and_then(|c| c.detail.clone()).unwrap_or_default();
    Ok((r, detail))
}

const CRITERIA: [Criterion; 9] = [
    Criterion { id: 1, name: "afo_fidelity", limit: Duration::from_secs(1), run: afo_fidelity },
    Criterion { id: 2, name: "safety", limit: Duration::from_secs(1), run: safety },
    Criterion { id: 3, name: "belt_soundness", limit: Duration::from_secs(300), run: belt },
    Criterion { id: 4, name: "zz_via_khat2", limit: Duration::from_secs(600), run: zz },
    Criterion { id: 5, name: "zz2z_table", limit: Duration::from_secs(900), run: wreath },
    Criterion { id: 6, name: "khat3_torsion", limit: Duration::from_secs(600), run: torsion },
    Criterion { id: 7, name: "neumann_certificate", limit: Duration::from_secs(300), run: neumann },
    Criterion { id: 8, name: "free_orbit", limit: Duration::from_secs(300), run: free_orbit },
    Criterion { id: 9, name: "afo_sparsity", limit: Duration::from_secs(120), run: sparsity },
];

fn describe(r: &Record) -> String {
    format!("{} {}", r.check, r.witness.as_deref().unwrap_or("-"))
}

fn main() -> ExitCode {
    let mut failed = 0;
    for c in &CRITERIA {
        let t0 = Instant::now();
        let outcome = (c.run)();
        let dt = t0.elapsed();
        let (ok, detail) = match outcome {
            Ok((report, detail)) => {
                let bad: Vec<String> = report.records.iter().filter(|r| !r.passed()).map(describe).collect();
                let empty = report.records.is_empty();
                match (empty, bad.is_empty(), dt <= c.limit) {
                    (true, _, _) => (false, "no checks ran".to_string()),
                    (false, true, true) => (true, detail),
                    (false, true, false) => (false, format!("{detail} over_time_limit")),
                    (false, false, _) => (false, format!("not_passed=[{}]", bad.join("; "))),
                }
            }
            Err(e) => (false, format!("error: {e}")),
        };
        if !ok {
            failed += 1;
        }
        println!(
            "criterion {} {}: {} time={:.2}s limit={}s {}",
            c.id,
            c.name,
            if ok { "PASS" } else { "FAIL" },
            dt.as_secs_f64(),
            c.limit.as_secs(),
            detail
        );
    }
    println!("acceptance: {} of {} criteria passed", CRITERIA.len() - failed, CRITERIA.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
